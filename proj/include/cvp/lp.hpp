#pragma once

// LP relaxation of the CVP with deviation variables:
//
//   min  mu * sum_i (alpha_i + beta_i) + nu * sum_j u_j
//   s.t. sum_j g_ij u_j - alpha_i + beta_i = a_i      for every i
//        0 <= alpha_i, beta_i <= C,  u_j >= 0
//
// solved exactly over the rationals by an upper-bounded primal simplex, so
// the returned optimum is always a vertex.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cvp/core.hpp"

namespace cvp {

struct LpModel {
  CvpInstance instance;
  /// d x (k + 2d), entries in {-1, 0, 1}; columns are u_1..u_k, alpha_1..alpha_d,
  /// beta_1..beta_d.
  std::vector<std::vector<int>> matrix;
  std::vector<std::int64_t> rhs;
  std::vector<Rational> cost;
  /// Upper bound per column; absent means unbounded above. Lower bounds are 0.
  std::vector<std::optional<std::int64_t>> upper;

  std::size_t rows() const { return rhs.size(); }
  std::size_t cols() const { return cost.size(); }
  std::size_t u_col(std::size_t j) const { return j; }
  std::size_t alpha_col(std::size_t i) const { return instance.k() + i; }
  std::size_t beta_col(std::size_t i) const { return instance.k() + instance.d() + i; }
};

LpModel build_lp(const CvpInstance& instance);

enum class LpStatus { kInfeasible, kOptimal };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Rational value{0};
  std::vector<Rational> u_star;
  std::vector<Rational> alpha_star;
  std::vector<Rational> beta_star;
  /// Basic column indices (model column numbering), ascending.
  std::vector<std::size_t> basis;
  std::size_t nonzero_u_count = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
  /// True when u*, alpha* and beta* are all integral.
  bool integral() const;
};

/// Deterministic: Bland's rule with lowest-index ties in both the entering
/// and the leaving choice.
LpOutcome solve_lp(const LpModel& model);

}  // namespace cvp
