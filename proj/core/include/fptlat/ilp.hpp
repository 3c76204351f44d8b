#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fptlat/hnf.hpp"
#include "fptlat/int_matrix.hpp"
#include "fptlat/snf.hpp"

namespace fptlat {

/// max c.x subject to H x <= b, x integer.
struct IlpInstance {
  IntMatrix h;
  IntVector b;
  IntVector c;

  /// Shapes and rank n; with `require_nonsingular`, also that no n x n row
  /// submatrix is singular.
  void validate(bool require_nonsingular = true) const;
};

enum class LpStatus { optimal, infeasible, unbounded };
std::string_view to_string(LpStatus s);

struct LpVertex {
  RatVector point;
  std::vector<std::size_t> basis;  // increasing row indices
  Rational objective;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<LpVertex> vertex;
};

/// Exact LP relaxation by enumerating every nonsingular n-row basis.
/// Boundedness is decided by dual feasibility: c must be a nonnegative
/// combination of some basis' rows.
LpResult solve_lp_relaxation(const IlpInstance& inst);

/// Max |det| over square submatrices of every order. Proximity radii use it.
Integer max_subdeterminant(const IntMatrix& h);

/// Gomory group problem
///     min w.x  s.t.  G x = g (mod S),  h x <= h0,  0 <= x_i <= cap_i
/// over x = (alpha~, y), where alpha~ are slacks of the unit-pivot basis rows
/// and y the slacks of the remaining basis rows.
struct GroupProblem {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t m = 0;

  IntMatrix g_matrix;  // s x n, row i reduced into [0, S_ii)
  IntVector g_rhs;     // s
  IntVector modulus;   // SNF diagonal
  std::optional<IntVector> h;  // present when m = 1
  Integer h0;
  IntVector w;
  /// n * Delta with Delta the proximity parameter.
  Integer box_bound;
  /// Upper limit on slack i: box_bound * ||basis row i||_1.
  IntVector caps;
  /// Clamp applied to h0: the largest h.x reachable inside the caps.
  Integer eta_cap;

  // Context for undoing the transformation.
  IntMatrix h_input;
  IntVector b_input;
  IntVector c_input;
  std::vector<std::size_t> row_order;  // input row at reordered position
  std::vector<std::size_t> slack_rows; // input row whose slack is group variable i
  HnfForm form;
  SnfDecomposition snf;
  IntMatrix adj_b;     // B* = delta B^-1
  Integer delta_b;     // det B = |det basis|
  IntVector b_form;    // b in form row order
  IntVector b_hat;     // b_S - A b_K
  Integer b_hat_d;     // b_d - Abar b_K
  Rational offset;     // max c.x = -(w.x / delta_b + offset)

  /// The ILP objective c.x implied by a group solution's value w.x.
  Rational objective_from(const Integer& wx) const;
};

/// Builds the group problem around an optimal LP basis. Throws
/// unsupported_shape when d - n >= 2.
GroupProblem reduce_to_group_problem(const IlpInstance& inst, const LpVertex& vertex);

struct GroupStats {
  std::size_t states = 0;
  Integer max_abs_eta = 0;
};

/// Exact minimizer of the group problem, or nothing when infeasible.
std::optional<IntVector> group_dp_solve(const GroupProblem& gp, GroupStats* stats = nullptr,
                                        std::size_t capacity = 20'000'000);

struct IlpSolution {
  IntVector x;
  Integer objective;
  bool certified = false;  // H x <= b re-checked
};

/// Inverts the transformation chain; throws internal on any inconsistency.
IlpSolution recover_solution(const GroupProblem& gp, const IntVector& group_x);

/// Maps an ILP point to group coordinates (the slacks of the basis rows).
IntVector to_group_coordinates(const GroupProblem& gp, const IntVector& x);

/// Scans every integer x with ||x - center||_inf <= radius. Default center is
/// the LP vertex and default radius n * max_subdeterminant(H).
std::optional<IlpSolution> brute_force_ilp(const IlpInstance& inst, const LpVertex& vertex,
                                           std::optional<Integer> radius = std::nullopt,
                                           std::size_t point_budget = 50'000'000);

enum class IlpMethod { group, brute };
std::string_view to_string(IlpMethod m);

struct IlpOptions {
  enum class Method { automatic, group, brute };
  Method method = Method::automatic;
  bool cross_check = false;
  /// automatic sends d - n >= 2 shapes to brute force instead of failing.
  bool allow_brute_fallback = false;
};

struct IlpReport {
  LpStatus status = LpStatus::infeasible;
  std::optional<LpVertex> vertex;
  std::optional<IlpSolution> solution;
  IlpMethod method = IlpMethod::group;
  Integer delta;
  std::optional<GroupProblem> group;
  GroupStats stats;
};

/// LP relaxation, reduction, group DP, recovery. An infeasible ILP with a
/// feasible LP is reported with status infeasible and no solution.
IlpReport solve_ilp(const IlpInstance& inst, const IlpOptions& options = {});

}  // namespace fptlat
