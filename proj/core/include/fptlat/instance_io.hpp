#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// {"rows", "cols", "data": [decimal strings, row-major], "p"?, "b"?, "c"?}
struct InstanceFile {
  IntMatrix h;
  std::optional<long> p;
  std::optional<IntVector> b;
  std::optional<IntVector> c;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

struct ResultStats {
  std::size_t states = 0;
  double elapsed_ms = 0;

  friend bool operator==(const ResultStats&, const ResultStats&) = default;
};

struct ResultFile {
  std::string problem;  // "svp" | "ilp"
  std::string method;
  std::string status;   // "optimal" | "infeasible" | "unbounded" | "error"
  std::optional<Integer> objective;
  std::optional<IntVector> solution;  // present iff status == "optimal"
  std::optional<IntVector> vector;    // SVP only: H t
  std::optional<Integer> delta;
  std::optional<std::string> message;
  ResultStats stats;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

/// Exact decimal parse; throws ErrorKind::parse on anything else.
Integer parse_integer(std::string_view text);

/// "inf", "infinity" or "oo" in any case: the l_inf norm, which is rejected.
bool is_infinity(std::string_view text);

/// Deterministic JSON: sorted keys, two-space indent, trailing newline.
std::string serialize_instance(const InstanceFile& inst);
InstanceFile parse_instance(std::string_view json);

std::string serialize_result(const ResultFile& result);
ResultFile parse_result(std::string_view json);

}  // namespace fptlat
