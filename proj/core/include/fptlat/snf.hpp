#pragma once

#include <optional>
#include <string>

#include "fptlat/int_matrix.hpp"

namespace fptlat {

/// s == p * b * q with p, q unimodular and s = diag(s_1 | s_2 | ... ).
struct SnfDecomposition {
  IntMatrix s;
  IntMatrix p;
  IntMatrix q;

  IntVector diagonal() const;
};

/// Smith normal form of a nonsingular square matrix. Entries stay exact
/// throughout; throws ErrorKind::singular when det(b) == 0.
SnfDecomposition snf(const IntMatrix& b);

/// First violated invariant of `dec` relative to its source `b`, if any.
std::optional<std::string> check_snf(const IntMatrix& b, const SnfDecomposition& dec);

}  // namespace fptlat
