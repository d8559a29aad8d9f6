#include "cvp/lp.hpp"

#include <algorithm>
#include <limits>

#include "bounded_simplex.hpp"
#include "checked_rational.hpp"

namespace cvp {

LpModel build_lp(const CvpInstance& instance) {
  require_valid(instance);
  const std::size_t d = instance.d();
  const std::size_t k = instance.k();
  LpModel model;
  model.instance = instance;
  model.matrix.assign(d, std::vector<int>(k + 2 * d, 0));
  model.rhs = instance.target;
  model.cost.assign(k + 2 * d, Rational(0));
  model.upper.assign(k + 2 * d, std::nullopt);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) model.matrix[i][model.u_col(j)] = instance.generators[j][i];
    model.matrix[i][model.alpha_col(i)] = -1;
    model.matrix[i][model.beta_col(i)] = 1;
  }
  for (std::size_t j = 0; j < k; ++j) model.cost[model.u_col(j)] = instance.weights.nu;
  for (std::size_t i = 0; i < d; ++i) {
    model.cost[model.alpha_col(i)] = instance.weights.mu;
    model.cost[model.beta_col(i)] = instance.weights.mu;
    if (instance.cap.is_finite()) {
      model.upper[model.alpha_col(i)] = instance.cap.value();
      model.upper[model.beta_col(i)] = instance.cap.value();
    }
  }
  return model;
}

bool LpOutcome::integral() const {
  auto is_int = [](const Rational& r) { return r.get_den() == 1; };
  return std::all_of(u_star.begin(), u_star.end(), is_int) &&
         std::all_of(alpha_star.begin(), alpha_star.end(), is_int) &&
         std::all_of(beta_star.begin(), beta_star.end(), is_int);
}

namespace {

struct RawResult {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<std::size_t> basis;
};

template <class Num>
RawResult run_simplex(const LpModel& model, std::vector<Num> cost) {
  detail::BoundedSimplex<Num> simplex(model.matrix, model.rhs, std::move(cost), model.upper);
  RawResult raw;
  raw.feasible = simplex.solve();
  if (!raw.feasible) return raw;
  for (const auto& v : simplex.values()) raw.x.push_back(detail::to_mpq(v));
  raw.basis = simplex.basis();
  return raw;
}

// Objective scaled by the common denominator of the costs; the optimal
// vertex is unchanged and the fast path starts from integers.
std::vector<mpz_class> scaled_costs(const std::vector<Rational>& cost) {
  mpz_class lcm = 1;
  for (const auto& c : cost) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(cost.size());
  for (const auto& c : cost) out.push_back(c.get_num() * (lcm / c.get_den()));
  return out;
}

}  // namespace

LpOutcome solve_lp(const LpModel& model) {
  const auto scaled = scaled_costs(model.cost);
  RawResult raw;
  bool done = false;
  const bool small = std::all_of(scaled.begin(), scaled.end(), [](const mpz_class& c) {
    return mpz_sizeinbase(c.get_mpz_t(), 2) < 40;
  });
  if (small) {
    try {
      std::vector<detail::CheckedRational> cost;
      for (const auto& c : scaled) cost.emplace_back(static_cast<std::int64_t>(c.get_si()));
      raw = run_simplex(model, std::move(cost));
      done = true;
    } catch (const detail::CheckedRational::Overflow&) {
    }
  }
  if (!done) {
    std::vector<mpq_class> cost;
    for (const auto& c : scaled) cost.emplace_back(c);
    raw = run_simplex(model, std::move(cost));
  }

  LpOutcome outcome;
  if (!raw.feasible) {
    outcome.status = LpStatus::kInfeasible;
    return outcome;
  }
  const std::size_t d = model.instance.d();
  const std::size_t k = model.instance.k();
  outcome.status = LpStatus::kOptimal;
  outcome.u_star.assign(raw.x.begin(), raw.x.begin() + static_cast<std::ptrdiff_t>(k));
  outcome.alpha_star.assign(raw.x.begin() + static_cast<std::ptrdiff_t>(k),
                            raw.x.begin() + static_cast<std::ptrdiff_t>(k + d));
  outcome.beta_star.assign(raw.x.begin() + static_cast<std::ptrdiff_t>(k + d), raw.x.end());
  outcome.value = 0;
  for (std::size_t j = 0; j < raw.x.size(); ++j) outcome.value += model.cost[j] * raw.x[j];
  outcome.value.canonicalize();
  outcome.basis = raw.basis;
  std::sort(outcome.basis.begin(), outcome.basis.end());
  outcome.nonzero_u_count = static_cast<std::size_t>(
      std::count_if(outcome.u_star.begin(), outcome.u_star.end(),
                    [](const Rational& r) { return sgn(r) != 0; }));
  if (outcome.nonzero_u_count > d)
    throw Error(ErrorCode::kInternalError, "LP vertex has more than d nonzero coefficients");
  return outcome;
}

}  // namespace cvp
