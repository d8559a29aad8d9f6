#include "cvp/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace cvp {

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] {
    return Error(ErrorCode::kParseError, "not a rational number: '" + s + "'");
  };
  if (s.empty()) throw bad();
  auto valid_integer = [](std::string_view part) {
    if (!part.empty() && (part.front() == '-' || part.front() == '+')) part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(),
                                        [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw bad();
  if (num.front() == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class q(den, 10);
  if (q == 0) throw bad();
  Rational r(n, q);
  r.canonicalize();
  return r;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kInternalError: return "InternalError";
    case ErrorCode::kNonConsecutiveGenerator: return "NonConsecutiveGenerator";
    case ErrorCode::kEmptyGenerator: return "EmptyGenerator";
    case ErrorCode::kUnbalancedDemands: return "UnbalancedDemands";
    case ErrorCode::kInvalidLambda: return "InvalidLambda";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kTooManyVariables: return "TooManyVariables";
    case ErrorCode::kMalformedFormula: return "MalformedFormula";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(message), code_(code), index_(index) {}

std::string to_string(const Interval& interval) {
  return "[" + std::to_string(interval.lo) + "," + std::to_string(interval.hi) + "]";
}

OnesPattern has_consecutive_ones(std::span<const std::uint8_t> g) {
  std::size_t first = g.size();
  std::size_t last = 0;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    ++ones;
    first = std::min(first, i);
    last = i;
  }
  if (ones == 0) return {OnesPattern::Kind::kEmpty, {}};
  if (last - first + 1 != ones) return {OnesPattern::Kind::kNonContiguous, {}};
  return {OnesPattern::Kind::kInterval,
          Interval{static_cast<int>(first) + 1, static_cast<int>(last) + 1}};
}

std::vector<std::uint8_t> interval_indicator(std::size_t d, Interval interval) {
  std::vector<std::uint8_t> g(d, 0);
  for (int p = interval.lo; p <= interval.hi; ++p) g.at(static_cast<std::size_t>(p - 1)) = 1;
  return g;
}

std::int64_t Cap::value() const {
  if (!value_) throw Error(ErrorCode::kInternalError, "infinite cap has no finite value");
  return *value_;
}

std::string to_string(const Cap& cap) {
  return cap.is_infinite() ? "inf" : std::to_string(cap.value());
}

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kOptimalExact: return "optimal";
    case SolveStatus::kApproximate: return "approximate";
  }
  return "unknown";
}

std::vector<std::string> validate_instance(const CvpInstance& instance) {
  std::vector<std::string> violations;
  const std::size_t d = instance.d();
  if (d == 0) violations.emplace_back("target: dimension d must be positive");
  for (std::size_t i = 0; i < d; ++i) {
    if (instance.target[i] < 0)
      violations.push_back("target[" + std::to_string(i) + "]: negative target entry");
  }
  for (std::size_t j = 0; j < instance.k(); ++j) {
    const auto& g = instance.generators[j];
    if (g.size() != d) {
      violations.push_back("generators[" + std::to_string(j) + "]: length " +
                           std::to_string(g.size()) + " differs from d = " + std::to_string(d));
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (g[i] > 1)
        violations.push_back("generators[" + std::to_string(j) + "][" + std::to_string(i) +
                             "]: entry " + std::to_string(g[i]) + " is not binary");
    }
  }
  if (instance.cap.is_finite() && instance.cap.value() < 0)
    violations.emplace_back("cap: negative finite cap");
  if (instance.weights.mu < 0) violations.emplace_back("weights.mu: negative weight");
  if (instance.weights.nu < 0) violations.emplace_back("weights.nu: negative weight");
  return violations;
}

void require_valid(const CvpInstance& instance) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) throw Error(ErrorCode::kInvalidInstance, violations.front());
}

Rational objective_value(const ObjectiveWeights& weights, std::int64_t tc, std::int64_t bot) {
  Rational value = weights.mu * Rational(mpz_class(static_cast<long>(tc))) +
                   weights.nu * Rational(mpz_class(static_cast<long>(bot)));
  value.canonicalize();
  return value;
}

Solution evaluate(const CvpInstance& instance, std::span<const std::int64_t> u) {
  if (u.size() != instance.k())
    throw Error(ErrorCode::kInvalidCoefficients,
                "coefficient vector has length " + std::to_string(u.size()) + ", expected " +
                    std::to_string(instance.k()));
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] < 0)
      throw Error(ErrorCode::kInvalidCoefficients,
                  "coefficient u[" + std::to_string(j) + "] is negative", j);
  }
  Solution s;
  s.u.assign(u.begin(), u.end());
  s.b.assign(instance.d(), 0);
  for (std::size_t j = 0; j < instance.k(); ++j) {
    if (u[j] == 0) continue;
    const auto& g = instance.generators[j];
    for (std::size_t i = 0; i < instance.d(); ++i) s.b[i] += u[j] * g[i];
    s.bot += u[j];
  }
  for (std::size_t i = 0; i < instance.d(); ++i) {
    const std::int64_t dev = std::llabs(instance.target[i] - s.b[i]);
    s.tc += dev;
    s.linf = std::max(s.linf, dev);
  }
  s.objective = objective_value(instance.weights, s.tc, s.bot);
  s.within_cap = instance.cap.admits(s.linf);
  return s;
}

}  // namespace cvp
