#pragma once

// Shared domain types for the closest vector problem over nonnegative integer
// combinations of binary generators, plus exact solution evaluation.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvp {

using Rational = mpq_class;

/// Renders `p/q`, or just `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Accepts `p`, `-p` or `p/q`; the result is canonicalized.
Rational parse_rational(std::string_view text);

enum class ErrorCode {
  kInvalidCoefficients,
  kInvalidInstance,
  kInternalError,
  kNonConsecutiveGenerator,
  kEmptyGenerator,
  kUnbalancedDemands,
  kInvalidLambda,
  kBudgetExceeded,
  kTooManyVariables,
  kMalformedFormula,
  kParseError,
  kUnsupported,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Offending generator/row index, when the error refers to one.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

/// Closed integer interval [lo, hi] with 1-based positions, lo <= hi.
struct Interval {
  int lo = 1;
  int hi = 1;

  int length() const { return hi - lo + 1; }
  bool contains(int position) const { return lo <= position && position <= hi; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& interval);

/// Shape of the ones of a binary vector.
struct OnesPattern {
  enum class Kind { kInterval, kEmpty, kNonContiguous };

  Kind kind = Kind::kEmpty;
  Interval interval{};  // meaningful only for kInterval

  bool is_interval() const { return kind == Kind::kInterval; }
  bool is_empty() const { return kind == Kind::kEmpty; }
  bool is_scattered() const { return kind == Kind::kNonContiguous; }
};

OnesPattern has_consecutive_ones(std::span<const std::uint8_t> g);

/// Indicator vector of `interval` in dimension d.
std::vector<std::uint8_t> interval_indicator(std::size_t d, Interval interval);

/// Deviation bound C: a finite nonnegative integer or the distinguished
/// infinite value. Also used for arc capacities.
class Cap {
 public:
  static Cap infinite() { return Cap(); }
  static Cap finite(std::int64_t value) { return Cap(value); }

  Cap() = default;

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  /// Throws kInternalError when infinite.
  std::int64_t value() const;
  bool admits(std::int64_t deviation) const {
    return is_infinite() || deviation <= *value_;
  }

  friend bool operator==(const Cap&, const Cap&) = default;

 private:
  explicit Cap(std::int64_t value) : value_(value) {}
  std::optional<std::int64_t> value_;
};

std::string to_string(const Cap& cap);

/// Objective mu * total_change + nu * beam_on_time.
struct ObjectiveWeights {
  Rational mu{1};
  Rational nu{0};

  friend bool operator==(const ObjectiveWeights&, const ObjectiveWeights&) = default;
};

struct CvpInstance {
  std::vector<std::int64_t> target;                   // a, length d
  std::vector<std::vector<std::uint8_t>> generators;  // g_1..g_k, each length d
  Cap cap = Cap::infinite();
  ObjectiveWeights weights;

  std::size_t d() const { return target.size(); }
  std::size_t k() const { return generators.size(); }

  friend bool operator==(const CvpInstance&, const CvpInstance&) = default;
};

struct Solution {
  std::vector<std::int64_t> u;
  std::vector<std::int64_t> b;
  std::int64_t tc = 0;
  std::int64_t linf = 0;
  std::int64_t bot = 0;
  Rational objective{0};
  bool within_cap = true;

  friend bool operator==(const Solution&, const Solution&) = default;
};

enum class SolveStatus { kInfeasible, kOptimalExact, kApproximate };

std::string_view status_name(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Solution> solution;
  std::optional<Rational> lp_value;
  std::string method;
  std::optional<std::uint64_t> seed;
};

/// Every violated instance invariant, as a human-readable line naming the
/// field and index. Empty means the instance is well formed.
std::vector<std::string> validate_instance(const CvpInstance& instance);

/// Throws kInvalidInstance carrying the first violation, if any.
void require_valid(const CvpInstance& instance);

Solution evaluate(const CvpInstance& instance, std::span<const std::int64_t> u);

/// mu * tc + nu * bot.
Rational objective_value(const ObjectiveWeights& weights, std::int64_t tc,
                         std::int64_t bot);

}  // namespace cvp
