#pragma once

// Primal simplex on a dense tableau for
//
//   min c.x  s.t.  A x = b,  0 <= x <= upper   (upper may be absent)
//
// with b >= 0. Nonbasic columns sit at one of their bounds, so the basis has
// exactly one column per row. Rows without a usable unit column get an
// artificial variable; phase 1 minimizes their sum, after which they are
// pivoted out or pinned to zero. Entering and leaving choices follow Bland's
// rule (lowest column index), which rules out cycling.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "checked_rational.hpp"
#include "cvp/core.hpp"

namespace cvp::detail {

template <class Num>
class BoundedSimplex {
 public:
  BoundedSimplex(const std::vector<std::vector<int>>& a, const std::vector<std::int64_t>& b,
                 std::vector<Num> cost, const std::vector<std::optional<std::int64_t>>& upper)
      : rows_(b.size()), cols_(cost.size()), cost_(std::move(cost)) {
    std::vector<std::optional<std::size_t>> unit(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      std::size_t row = rows_;
      bool is_unit = true;
      for (std::size_t i = 0; i < rows_ && is_unit; ++i) {
        if (a[i][j] == 0) continue;
        if (a[i][j] != 1 || row != rows_) is_unit = false;
        row = i;
      }
      if (!is_unit || row == rows_ || unit[row]) continue;
      if (upper[j] && *upper[j] < b[row]) continue;
      unit[row] = j;
    }
    std::size_t artificial = 0;
    for (const auto& u : unit) artificial += u ? 0 : 1;
    total_ = cols_ + artificial;

    tab_.assign(rows_ * total_, Num(0));
    upper_.assign(total_, std::nullopt);
    state_.assign(total_, State::kLower);
    blocked_.assign(total_, false);
    basis_.assign(rows_, 0);
    xb_.assign(rows_, Num(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (upper[j]) upper_[j] = Num(*upper[j]);
    }
    std::size_t next_artificial = cols_;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (b[i] < 0) throw Error(ErrorCode::kInternalError, "simplex expects b >= 0");
      for (std::size_t j = 0; j < cols_; ++j) {
        if (a[i][j] != 0) at(i, j) = Num(a[i][j]);
      }
      const std::size_t basic = unit[i] ? *unit[i] : next_artificial++;
      if (!unit[i]) at(i, basic) = Num(1);
      basis_[i] = basic;
      state_[basic] = State::kBasic;
      xb_[i] = Num(b[i]);
    }
  }

  /// Returns false when the system is infeasible.
  bool solve() {
    if (total_ > cols_) {
      std::vector<Num> phase1(total_, Num(0));
      for (std::size_t j = cols_; j < total_; ++j) phase1[j] = Num(1);
      price(phase1);
      iterate();
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] >= cols_ && sign_of(xb_[i]) != 0) return false;
      }
      expel_artificials();
      for (std::size_t j = cols_; j < total_; ++j) {
        upper_[j] = Num(0);
        blocked_[j] = true;
      }
    }
    std::vector<Num> phase2(total_, Num(0));
    for (std::size_t j = 0; j < cols_; ++j) phase2[j] = cost_[j];
    price(phase2);
    iterate();
    return true;
  }

  /// Column values for the original (non-artificial) columns.
  std::vector<Num> values() const {
    std::vector<Num> x(cols_, Num(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == State::kUpper) x[j] = *upper_[j];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) x[basis_[i]] = xb_[i];
    }
    return x;
  }

  std::vector<std::size_t> basis() const { return basis_; }

 private:
  enum class State : std::uint8_t { kBasic, kLower, kUpper };

  Num& at(std::size_t i, std::size_t j) { return tab_[i * total_ + j]; }
  const Num& at(std::size_t i, std::size_t j) const { return tab_[i * total_ + j]; }

  void price(const std::vector<Num>& cost) {
    reduced_ = cost;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Num& cb = cost[basis_[i]];
      if (sign_of(cb) == 0) continue;
      for (std::size_t j = 0; j < total_; ++j) {
        if (sign_of(at(i, j)) != 0) reduced_[j] -= cb * at(i, j);
      }
    }
  }

  std::optional<std::size_t> entering() const {
    for (std::size_t j = 0; j < total_; ++j) {
      if (blocked_[j] || state_[j] == State::kBasic) continue;
      const int s = sign_of(reduced_[j]);
      if ((state_[j] == State::kLower && s < 0) || (state_[j] == State::kUpper && s > 0)) return j;
    }
    return std::nullopt;
  }

  void iterate() {
    while (auto q = entering()) step(*q);
  }

  void step(std::size_t q) {
    const bool increase = state_[q] == State::kLower;
    std::optional<Num> best;
    std::size_t leave_row = rows_;  // rows_ means the entering column flips bounds
    std::size_t leave_index = q;
    bool leave_to_upper = false;
    if (upper_[q]) best = *upper_[q];
    for (std::size_t i = 0; i < rows_; ++i) {
      Num coef = at(i, q);
      const int s = sign_of(coef) * (increase ? 1 : -1);
      if (s == 0) continue;
      Num t;
      bool to_upper = false;
      if (s > 0) {
        t = xb_[i] / coef;
        if (!increase) t = -t;
      } else {
        const auto& ub = upper_[basis_[i]];
        if (!ub) continue;
        t = (*ub - xb_[i]) / coef;
        if (increase) t = -t;
        to_upper = true;
      }
      if (!best || t < *best || (t == *best && basis_[i] < leave_index)) {
        best = t;
        leave_row = i;
        leave_index = basis_[i];
        leave_to_upper = to_upper;
      }
    }
    if (!best) throw Error(ErrorCode::kInternalError, "LP relaxation reported unbounded");
    const Num t = *best;
    const Num signed_t = increase ? t : -t;
    if (sign_of(t) != 0) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sign_of(at(i, q)) != 0) xb_[i] -= at(i, q) * signed_t;
      }
    }
    if (leave_row == rows_) {
      state_[q] = increase ? State::kUpper : State::kLower;
      return;
    }
    const Num start = increase ? Num(0) : *upper_[q];
    state_[basis_[leave_row]] = leave_to_upper ? State::kUpper : State::kLower;
    xb_[leave_row] = start + signed_t;
    pivot(leave_row, q);
  }

  void pivot(std::size_t r, std::size_t q) {
    const Num piv = at(r, q);
    pivot_cols_.clear();
    for (std::size_t j = 0; j < total_; ++j) {
      if (sign_of(at(r, j)) == 0) continue;
      at(r, j) /= piv;
      pivot_cols_.push_back(j);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sign_of(at(i, q)) == 0) continue;
      const Num f = at(i, q);
      for (std::size_t j : pivot_cols_) at(i, j) -= f * at(r, j);
    }
    if (sign_of(reduced_[q]) != 0) {
      const Num f = reduced_[q];
      for (std::size_t j : pivot_cols_) reduced_[j] -= f * at(r, j);
    }
    basis_[r] = q;
    state_[q] = State::kBasic;
  }

  // Degenerate pivots swapping zero-valued artificial basics for original
  // columns; the current point does not move.
  void expel_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] == State::kBasic || sign_of(at(r, j)) == 0) continue;
        const Num value = state_[j] == State::kUpper ? *upper_[j] : Num(0);
        state_[basis_[r]] = State::kLower;
        xb_[r] = value;
        pivot(r, j);
        break;
      }
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t total_ = 0;
  std::vector<Num> cost_;
  std::vector<Num> tab_;
  std::vector<Num> reduced_;
  std::vector<Num> xb_;
  std::vector<std::size_t> basis_;
  std::vector<State> state_;
  std::vector<std::optional<Num>> upper_;
  std::vector<bool> blocked_;
  std::vector<std::size_t> pivot_cols_;
};

}  // namespace cvp::detail
