#include "fptlat/instance_io.hpp"

#include <json.hpp>

#include <cctype>

#include "fptlat/errors.hpp"

namespace fptlat {

using nlohmann::json;

namespace {

json to_json(const IntVector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(x.get_str());
  return arr;
}

Integer integer_from(const json& j, const std::string& where) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.dump());
  throw Error(ErrorKind::parse, where + ": expected a decimal integer string");
}

IntVector vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::parse, where + ": expected an array");
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(integer_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t count_from(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer() || obj[key].get<long long>() < 1) {
    throw Error(ErrorKind::parse, std::string("\"") + key + "\" must be an integer >= 1");
  }
  return obj[key].get<std::size_t>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

bool is_infinity(std::string_view text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return t == "inf" || t == "infinity" || t == "oo";
}

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw Error(ErrorKind::parse, "empty integer literal");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw Error(ErrorKind::parse, "not a decimal integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

std::string serialize_instance(const InstanceFile& inst) {
  json j;
  j["rows"] = inst.h.rows();
  j["cols"] = inst.h.cols();
  json data = json::array();
  for (const auto& v : inst.h.entries()) data.push_back(v.get_str());
  j["data"] = data;
  if (inst.p) j["p"] = *inst.p;
  if (inst.b) j["b"] = to_json(*inst.b);
  if (inst.c) j["c"] = to_json(*inst.c);
  return dump(j);
}

InstanceFile parse_instance(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorKind::parse, "instance must be a JSON object");
  const std::size_t rows = count_from(j, "rows"), cols = count_from(j, "cols");
  if (!j.contains("data")) throw Error(ErrorKind::parse, "missing \"data\"");
  IntVector data = vector_from(j["data"], "data");
  if (data.size() != rows * cols) {
    throw Error(ErrorKind::parse, "data has " + std::to_string(data.size()) +
                                      " entries, expected rows x cols = " +
                                      std::to_string(rows * cols));
  }
  InstanceFile out;
  out.h = IntMatrix(rows, cols, std::move(data));
  if (j.contains("p")) {
    if (j["p"].is_string() && is_infinity(j["p"].get<std::string>())) {
      throw Error(ErrorKind::unsupported_norm, "p = infinity is not supported; use a finite p >= 1");
    }
    if (!j["p"].is_number_integer() || j["p"].get<long long>() < 1) {
      throw Error(ErrorKind::parse, "\"p\" must be an integer >= 1");
    }
    out.p = j["p"].get<long>();
  }
  if (j.contains("b")) {
    out.b = vector_from(j["b"], "b");
    if (out.b->size() != rows) throw Error(ErrorKind::parse, "\"b\" needs one entry per row");
  }
  if (j.contains("c")) {
    out.c = vector_from(j["c"], "c");
    if (out.c->size() != cols) throw Error(ErrorKind::parse, "\"c\" needs one entry per column");
  }
  return out;
}

std::string serialize_result(const ResultFile& r) {
  json j;
  j["problem"] = r.problem;
  j["method"] = r.method;
  j["status"] = r.status;
  if (r.objective) j["objective"] = r.objective->get_str();
  if (r.solution) j["solution"] = to_json(*r.solution);
  if (r.vector) j["vector"] = to_json(*r.vector);
  if (r.delta) j["delta"] = r.delta->get_str();
  if (r.message) j["message"] = *r.message;
  j["stats"] = {{"states", r.stats.states}, {"elapsed_ms", r.stats.elapsed_ms}};
  return dump(j);
}

ResultFile parse_result(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorKind::parse, "result must be a JSON object");
  ResultFile r;
  try {
    r.problem = j.at("problem").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.status = j.at("status").get<std::string>();
    if (j.contains("message")) r.message = j["message"].get<std::string>();
    if (j.contains("stats")) {
      r.stats.states = j["stats"].at("states").get<std::size_t>();
      r.stats.elapsed_ms = j["stats"].at("elapsed_ms").get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bad result field: ") + e.what());
  }
  if (r.problem != "svp" && r.problem != "ilp") {
    throw Error(ErrorKind::parse, "unknown problem '" + r.problem + "'");
  }
  if (r.status != "optimal" && r.status != "infeasible" && r.status != "unbounded" &&
      r.status != "error") {
    throw Error(ErrorKind::parse, "unknown status '" + r.status + "'");
  }
  if (j.contains("objective")) r.objective = integer_from(j["objective"], "objective");
  if (j.contains("solution")) r.solution = vector_from(j["solution"], "solution");
  if (j.contains("vector")) r.vector = vector_from(j["vector"], "vector");
  if (j.contains("delta")) r.delta = integer_from(j["delta"], "delta");
  if (r.solution.has_value() != (r.status == "optimal")) {
    throw Error(ErrorKind::parse, "solution must be present exactly when status is optimal");
  }
  return r;
}

}  // namespace fptlat
