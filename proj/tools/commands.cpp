#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "fptlat/bounds.hpp"
#include "fptlat/errors.hpp"
#include "fptlat/generator.hpp"
#include "fptlat/hnf.hpp"
#include "fptlat/ilp.hpp"
#include "fptlat/instance_io.hpp"
#include "fptlat/linalg.hpp"
#include "fptlat/snf.hpp"
#include "fptlat/svp.hpp"

namespace fptlat::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json matrix_json(const IntMatrix& m) {
  json data = json::array();
  for (const auto& v : m.entries()) data.push_back(v.get_str());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string output_path;

  std::string read_input(const std::string& path) const {
    if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::parse, "cannot open input '" + path + "'");
    return {std::istreambuf_iterator<char>(f), {}};
  }

  void emit(const std::string& text) const {
    if (output_path.empty() || output_path == "-") {
      out << text;
      return;
    }
    std::ofstream f(output_path);
    if (!f) throw Error(ErrorKind::parse, "cannot open output '" + output_path + "'");
    f << text;
  }

  void emit_json(const json& j) const { emit(j.dump(2) + "\n"); }
};

int exit_for(ErrorKind kind) {
  return kind == ErrorKind::unsupported_shape || kind == ErrorKind::unsupported_norm
             ? kUnsupported
             : kError;
}

// A solver failure after the instance parsed: report it as a result too.
int fail(const Io& io, const std::string& problem, const std::string& method, const Error& e) {
  io.err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  ResultFile r;
  r.problem = problem;
  r.method = method;
  r.status = "error";
  r.message = e.what();
  io.emit(serialize_result(r));
  return exit_for(e.kind());
}

std::string svp_certificate(const SvpSolution& s) {
  std::ostringstream o;
  o << to_string(s.method) << ": t = (";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) o << (i ? ", " : "") << s.coeffs[i];
  o << "), norm^p = " << s.norm_p;
  return o.str();
}

std::optional<long> norm_flag(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  if (is_infinity(*text)) {
    throw Error(ErrorKind::unsupported_norm, "p = infinity is not supported; use a finite p >= 1");
  }
  const Integer v = parse_integer(*text);
  if (v < 1 || !v.fits_slong_p()) throw Error(ErrorKind::parameter, "--p must be an integer >= 1");
  return v.get_si();
}

int cmd_svp(const Io& io, const std::string& input, std::optional<long> p_flag,
            const std::string& method, bool cross_check) {
  const InstanceFile file = parse_instance(io.read_input(input));
  SvpInstance inst{file.h, p_flag.value_or(file.p.value_or(2))};
  SvpOptions opts;
  if (method == "auto") opts.method = SvpOptions::Method::automatic;
  else if (method == "dp") opts.method = SvpOptions::Method::dp;
  else if (method == "fastpath" || method == "fast_path") opts.method = SvpOptions::Method::fast_path;
  else if (method == "brute") opts.method = SvpOptions::Method::brute;
  else throw Error(ErrorKind::parameter, "unknown --method '" + method + "'");

  const auto t0 = Clock::now();
  SvpReport rep;
  try {
    rep = solve_svp(inst, opts);
    if (cross_check) {
      const SvpSolution other = brute_force_svp(inst.h, static_cast<unsigned>(inst.p));
      if (other.norm_p != rep.solution.norm_p) {
        io.err << "cross-check mismatch\n  " << svp_certificate(rep.solution) << "\n  "
               << svp_certificate(other) << "\n";
        throw Error(ErrorKind::internal, "SVP cross-check mismatch");
      }
    }
  } catch (const Error& e) {
    return fail(io, "svp", method, e);
  }
  ResultFile r;
  r.problem = "svp";
  r.method = std::string(to_string(rep.solution.method));
  r.status = "optimal";
  r.objective = rep.solution.norm_p;
  r.solution = rep.solution.coeffs;
  r.vector = rep.solution.vector;
  r.delta = rep.delta;
  r.stats.states = rep.stats.states;
  r.stats.elapsed_ms = ms_since(t0);
  io.emit(serialize_result(r));
  return kOptimal;
}

int cmd_ilp(const Io& io, const std::string& input, const std::string& method,
            bool cross_check, bool fallback) {
  const InstanceFile file = parse_instance(io.read_input(input));
  if (!file.b || !file.c) throw Error(ErrorKind::parse, "ILP instance needs \"b\" and \"c\"");
  IlpInstance inst{file.h, *file.b, *file.c};
  IlpOptions opts;
  opts.cross_check = cross_check;
  opts.allow_brute_fallback = fallback;
  if (method == "auto") opts.method = IlpOptions::Method::automatic;
  else if (method == "group") opts.method = IlpOptions::Method::group;
  else if (method == "brute") opts.method = IlpOptions::Method::brute;
  else throw Error(ErrorKind::parameter, "unknown --method '" + method + "'");

  const auto t0 = Clock::now();
  IlpReport rep;
  try {
    rep = solve_ilp(inst, opts);
  } catch (const Error& e) {
    return fail(io, "ilp", method, e);
  }
  ResultFile r;
  r.problem = "ilp";
  r.method = std::string(to_string(rep.method));
  r.status = std::string(to_string(rep.status));
  r.delta = rep.delta;
  r.stats.states = rep.stats.states;
  if (rep.solution) {
    r.objective = rep.solution->objective;
    r.solution = rep.solution->x;
  }
  r.stats.elapsed_ms = ms_since(t0);
  io.emit(serialize_result(r));
  return rep.solution ? kOptimal : kNoOptimum;
}

int cmd_hnf(const Io& io, const std::string& input) {
  const IntMatrix h = parse_instance(io.read_input(input)).h;
  const HnfForm f = hnf_normalize(h);
  json j = {
      {"k", f.k},
      {"s", f.s},
      {"m", f.m},
      {"block_a", matrix_json(f.block_a)},
      {"block_b", matrix_json(f.block_b)},
      {"block_abar", matrix_json(f.block_abar)},
      {"block_bbar", matrix_json(f.block_bbar)},
      {"row_perm", f.row_perm},
      {"col_perm", f.col_perm},
      {"col_transform", matrix_json(f.col_transform)},
      {"form", matrix_json(f.assemble())},
      {"pivot_product", f.pivot_product().get_str()},
  };
  io.emit_json(j);
  return kOptimal;
}

int cmd_snf(const Io& io, const std::string& input) {
  const IntMatrix b = parse_instance(io.read_input(input)).h;
  const SnfDecomposition dec = snf(b);
  io.emit_json({{"s", matrix_json(dec.s)},
                {"p", matrix_json(dec.p)},
                {"q", matrix_json(dec.q)},
                {"diagonal", vector_json(dec.diagonal())}});
  return kOptimal;
}

int cmd_delta(const Io& io, const std::string& input) {
  const IntMatrix h = parse_instance(io.read_input(input)).h;
  io.emit_json({{"delta", max_rank_minor(h).get_str()},
                {"singular_submatrix", has_singular_rank_submatrix(h)}});
  return kOptimal;
}

json bounds_json(const Integer& delta, std::size_t s, std::size_t m, std::optional<long> p,
                 std::size_t n, std::size_t d) {
  json lemma1 = json::array();
  for (std::size_t i = 0; i <= s; ++i) lemma1.push_back(lemma1_entry_bound(delta, s, i).get_str());
  json j = {{"delta", delta.get_str()},
            {"s", s},
            {"m", m},
            {"lemma1", lemma1},
            {"lemma3_threshold", lemma3_threshold(delta).get_str()},
            {"theorem1_threshold", theorem1_threshold(delta, m).get_str()}};
  if (p) {
    const SvpBounds b = lemma2_bounds(m_constant(delta, m, *p, d, n), delta, s);
    j["svp"] = {{"p", b.p},
                {"mp", b.mp.get_str()},
                {"first_candidate", b.first_candidate.get_str()},
                {"second_candidate", b.second_candidate.get_str()},
                {"mhalf_num", b.mhalf_num.get_str()},
                {"mhalf_den", b.mhalf_den.get_str()},
                {"alpha_l1", b.alpha_l1.get_str()},
                {"beta_abs", vector_json(b.beta_abs)},
                {"total_l1", b.total_l1.get_str()},
                {"v_box", b.v_box.get_str()},
                {"u_box", b.u_box.get_str()}};
  }
  return j;
}

int cmd_bounds(const Io& io, const std::string& input, const std::string& delta_text,
               std::optional<std::size_t> s_flag, std::size_t m, std::optional<long> p,
               std::optional<std::size_t> n_flag, std::optional<std::size_t> d_flag) {
  if (!input.empty()) {
    const InstanceFile file = parse_instance(io.read_input(input));
    const Integer delta = max_rank_minor(file.h);
    const HnfForm f = hnf_normalize(file.h);
    json j = bounds_json(delta, f.s, f.m, p ? p : file.p, f.n(), f.d());
    const Lemma1Report rep = verify_lemma1(f, delta);
    j["lemma1_ok"] = rep.ok;
    if (rep.violation) {
      const auto& v = *rep.violation;
      j["lemma1_violation"] = {{"block", v.in_abar ? "abar" : "bbar"},
                               {"row", v.row},
                               {"col", v.col},
                               {"value", v.value.get_str()},
                               {"bound", v.bound.get_str()}};
    }
    io.emit_json(j);
    return kOptimal;
  }
  if (delta_text.empty() || !s_flag) {
    throw Error(ErrorKind::parameter, "bounds needs --input, or --delta and --s");
  }
  const Integer delta = parse_integer(delta_text);
  if (delta < 1) throw Error(ErrorKind::parameter, "--delta must be >= 1");
  const std::size_t n = n_flag.value_or(std::max<std::size_t>(*s_flag, 1));
  io.emit_json(bounds_json(delta, *s_flag, m, p, n, d_flag.value_or(n + m)));
  return kOptimal;
}

int cmd_gen(const Io& io, const std::string& spec_path, GenSpec spec, bool ilp,
            std::optional<long> p) {
  if (!spec_path.empty()) {
    json j;
    try {
      j = json::parse(io.read_input(spec_path));
      spec.n = j.value("n", spec.n);
      spec.d = j.value("d", spec.d);
      spec.target_delta_max = j.value("target_delta_max", spec.target_delta_max);
      spec.entry_range = j.value("entry_range", spec.entry_range);
      spec.require_nonsingular = j.value("require_nonsingular", spec.require_nonsingular);
      spec.seed = j.value("seed", spec.seed);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse, std::string("bad --spec: ") + e.what());
    }
  }
  InstanceFile file;
  if (ilp) {
    GeneratedIlp g = gen_ilp(spec);
    file.h = std::move(g.instance.h);
    file.b = std::move(g.instance.b);
    file.c = std::move(g.instance.c);
  } else {
    file.h = spec.require_nonsingular ? gen_nonsingular(spec).h : gen_lattice(spec).h;
    file.p = p;
  }
  io.emit(serialize_instance(file));
  return kOptimal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact SVP and ILP solvers for lattices with bounded minors", "fptlat"};
  app.require_subcommand(1);
  Io io{in, out, err, {}};

  std::string input, method = "auto", spec_path, delta_text;
  std::optional<std::string> p_text;
  bool cross_check = false, fallback = false, ilp = false;
  std::optional<std::size_t> s_flag, n_flag, d_flag;
  std::size_t m = 0;
  GenSpec spec;

  auto* svp = app.add_subcommand("svp", "shortest nonzero lattice vector in l_p");
  svp->add_option("--input", input, "instance file, - for stdin")->required();
  svp->add_option("--p", p_text, "norm exponent (overrides the file)");
  svp->add_option("--method", method, "auto|dp|fastpath|brute");
  svp->add_flag("--cross-check", cross_check, "compare against brute force");
  svp->add_option("--output", io.output_path, "result file (default stdout)");

  auto* ilp_cmd = app.add_subcommand("ilp", "max c.x subject to H x <= b, x integer");
  ilp_cmd->add_option("--input", input, "instance file, - for stdin")->required();
  ilp_cmd->add_option("--method", method, "auto|group|brute");
  ilp_cmd->add_flag("--cross-check", cross_check, "compare against brute force");
  ilp_cmd->add_flag("--allow-brute-fallback", fallback, "solve d - n >= 2 by brute force");
  ilp_cmd->add_option("--output", io.output_path, "result file (default stdout)");

  auto* hnf_cmd = app.add_subcommand("hnf", "Hermite normal form with unit pivots first");
  hnf_cmd->add_option("--input", input)->required();
  hnf_cmd->add_option("--output", io.output_path);

  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of a square matrix");
  snf_cmd->add_option("--input", input)->required();
  snf_cmd->add_option("--output", io.output_path);

  auto* delta_cmd = app.add_subcommand("delta", "max rank minor and singular submatrix test");
  delta_cmd->add_option("--input", input)->required();
  delta_cmd->add_option("--output", io.output_path);

  auto* bounds_cmd = app.add_subcommand("bounds", "entry, norm and threshold bounds");
  bounds_cmd->add_option("--input", input, "derive delta, s, m from a matrix");
  bounds_cmd->add_option("--delta", delta_text);
  bounds_cmd->add_option("--s", s_flag);
  bounds_cmd->add_option("--m", m);
  bounds_cmd->add_option("--p", p_text);
  bounds_cmd->add_option("--n", n_flag);
  bounds_cmd->add_option("--d", d_flag);
  bounds_cmd->add_option("--output", io.output_path);

  auto* gen_cmd = app.add_subcommand("gen", "seeded instance generator");
  gen_cmd->add_option("--spec", spec_path, "JSON spec file with any of the fields below");
  gen_cmd->add_option("--n", spec.n);
  gen_cmd->add_option("--d", spec.d);
  gen_cmd->add_option("--delta-max", spec.target_delta_max);
  gen_cmd->add_option("--entry-range", spec.entry_range);
  gen_cmd->add_option("--seed", spec.seed);
  gen_cmd->add_flag("--nonsingular", spec.require_nonsingular);
  gen_cmd->add_flag("--ilp", ilp, "emit b and c as well");
  gen_cmd->add_option("--p", p_text);
  gen_cmd->add_option("--output", io.output_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOptimal : kError;
  }

  try {
    const std::optional<long> p = norm_flag(p_text);
    if (*svp) return cmd_svp(io, input, p, method, cross_check);
    if (*ilp_cmd) return cmd_ilp(io, input, method, cross_check, fallback);
    if (*hnf_cmd) return cmd_hnf(io, input);
    if (*snf_cmd) return cmd_snf(io, input);
    if (*delta_cmd) return cmd_delta(io, input);
    if (*bounds_cmd) return cmd_bounds(io, input, delta_text, s_flag, m, p, n_flag, d_flag);
    if (*gen_cmd) return cmd_gen(io, spec_path, spec, ilp, p);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace fptlat::cli
