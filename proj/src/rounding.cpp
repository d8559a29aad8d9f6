#include "cvp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <thread>
#include <tuple>

namespace cvp {

Rng::Rng(RngSpec spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(spec.stream),
                    static_cast<std::uint32_t>(spec.stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % bound;
  }
}

namespace {

const mpz_class& two_pow_53() {
  static const mpz_class value = mpz_class(1) << 53;
  return value;
}

// U < num/den * 2^53  <=>  U * den < num * 2^53
class ExactThreshold {
 public:
  explicit ExactThreshold(const Rational& p) : scaled_num_(p.get_num() * two_pow_53()), den_(p.get_den()) {}

  bool accept(std::uint64_t u53) const {
    mpz_class lhs(static_cast<unsigned long>(u53));
    lhs *= den_;
    return lhs < scaled_num_;
  }

 private:
  mpz_class scaled_num_;
  mpz_class den_;
};

}  // namespace

bool Rng::bernoulli(const Rational& p) { return ExactThreshold(p).accept(next53()); }

LatticeRoundingProblem LatticeRoundingProblem::from_fractions(std::vector<Rational> x,
                                                              std::vector<std::int64_t> floor_part) {
  LatticeRoundingProblem problem;
  problem.k = x.size();
  if (floor_part.empty()) floor_part.assign(x.size(), 0);
  problem.floor_part = std::move(floor_part);
  for (std::size_t p = 0; p < x.size(); ++p) problem.columns.push_back(static_cast<std::ptrdiff_t>(p));
  problem.x = std::move(x);
  return problem;
}

LatticeRoundingProblem prepare_lattice(const LpOutcome& outcome, const CvpInstance& instance) {
  if (!outcome.optimal()) throw Error(ErrorCode::kInternalError, "rounding needs an optimal LP vertex");
  const std::size_t d = instance.d();
  const std::size_t k = instance.k();
  std::vector<std::ptrdiff_t> order;
  for (std::size_t j = 0; j < k; ++j) {
    if (sgn(outcome.u_star[j]) != 0) order.push_back(static_cast<std::ptrdiff_t>(j));
  }
  if (order.size() > d)
    throw Error(ErrorCode::kInternalError, "more than d nonzero coordinates in the LP vertex");
  for (std::size_t j = 0; j < k && order.size() < d; ++j) {
    if (sgn(outcome.u_star[j]) == 0) order.push_back(static_cast<std::ptrdiff_t>(j));
  }
  order.resize(d, -1);

  LatticeRoundingProblem problem;
  problem.k = k;
  problem.columns = order;
  problem.h.assign(d, std::vector<std::uint8_t>(d, 0));
  problem.x.assign(d, Rational(0));
  problem.floor_part.assign(d, 0);
  for (std::size_t p = 0; p < d; ++p) {
    if (order[p] < 0) continue;
    const auto j = static_cast<std::size_t>(order[p]);
    for (std::size_t i = 0; i < d; ++i) problem.h[i][p] = instance.generators[j][i];
    const Rational& value = outcome.u_star[j];
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    problem.floor_part[p] = fl.get_si();
    problem.x[p] = value - Rational(fl);
    problem.x[p].canonicalize();
  }
  return problem;
}

namespace {

std::vector<std::int64_t> assemble(const LatticeRoundingProblem& problem,
                                   const std::vector<std::int64_t>& y) {
  std::vector<std::int64_t> u(problem.k, 0);
  for (std::size_t p = 0; p < problem.d(); ++p) {
    if (problem.columns[p] < 0) continue;
    u[static_cast<std::size_t>(problem.columns[p])] = problem.floor_part[p] + y[p];
  }
  return u;
}

}  // namespace

std::vector<std::int64_t> randomized_round(const LatticeRoundingProblem& problem, RngSpec spec) {
  Rng rng(spec);
  std::vector<std::int64_t> y(problem.d(), 0);
  for (std::size_t p = 0; p < problem.d(); ++p) {
    if (sgn(problem.x[p]) == 0) continue;
    y[p] = rng.bernoulli(problem.x[p]) ? 1 : 0;
  }
  return assemble(problem, y);
}

std::vector<std::int64_t> round_sum_preserving(const LatticeRoundingProblem& problem, RngSpec spec) {
  Rng rng(spec);
  const std::size_t d = problem.d();
  std::vector<Rational> value(problem.x.begin(), problem.x.end());
  Rational total = 0;
  for (const auto& v : value) total += v;
  mpz_class ceil_total;
  mpz_cdiv_q(ceil_total.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
  Rational slack = Rational(ceil_total) - total;
  value.push_back(slack);  // auxiliary coordinate makes the sum integral

  std::deque<std::size_t> open;
  for (std::size_t p = 0; p < value.size(); ++p) {
    if (value[p].get_den() != 1) open.push_back(p);
  }
  while (open.size() >= 2) {
    const std::size_t a = open[0];
    const std::size_t b = open[1];
    const Rational up = std::min(Rational(1 - value[a]), value[b]);    // a rises, b falls
    const Rational down = std::min(value[a], Rational(1 - value[b]));  // a falls, b rises
    Rational p_up = down / (up + down);
    if (rng.bernoulli(p_up)) {
      value[a] += up;
      value[b] -= up;
    } else {
      value[a] -= down;
      value[b] += down;
    }
    value[a].canonicalize();
    value[b].canonicalize();
    const bool a_done = value[a].get_den() == 1;
    const bool b_done = value[b].get_den() == 1;
    open.pop_front();
    open.pop_front();
    if (!b_done) open.push_front(b);
    if (!a_done) open.push_front(a);
  }
  if (!open.empty()) throw Error(ErrorCode::kInternalError, "pair rounding left a fractional coordinate");

  std::vector<std::int64_t> y(d, 0);
  for (std::size_t p = 0; p < d; ++p) y[p] = value[p].get_num().get_si();
  return assemble(problem, y);
}

Rational lattice_discrepancy(const LatticeRoundingProblem& problem, std::span<const std::int64_t> rounded) {
  const std::size_t d = problem.d();
  std::vector<Rational> diff(d, Rational(0));
  for (std::size_t p = 0; p < d; ++p) {
    if (problem.columns[p] < 0) continue;
    const std::int64_t y = rounded[static_cast<std::size_t>(problem.columns[p])] - problem.floor_part[p];
    diff[p] = problem.x[p] - Rational(mpz_class(static_cast<long>(y)));
  }
  Rational worst = 0;
  for (std::size_t i = 0; i < problem.h.size(); ++i) {
    Rational row = 0;
    for (std::size_t p = 0; p < d; ++p) {
      if (problem.h[i][p] != 0) row += diff[p];
    }
    worst = std::max(worst, Rational(abs(row)));
  }
  return worst;
}

namespace {

struct Candidate {
  Solution solution;
  std::size_t trial = 0;
};

bool better(const Candidate& x, const Candidate& y) {
  return std::forward_as_tuple(x.solution.objective, x.solution.linf, x.trial) <
         std::forward_as_tuple(y.solution.objective, y.solution.linf, y.trial);
}

}  // namespace

SolveReport approx_solve(const CvpInstance& instance, std::uint64_t seed, std::size_t trials,
                         bool sum_preserving, std::size_t threads) {
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  SolveReport report;
  report.method = sum_preserving ? "round-sum" : "round";
  report.seed = seed;
  const LpOutcome lp = solve_lp(build_lp(instance));
  if (!lp.optimal()) return report;
  report.lp_value = lp.value;
  const LatticeRoundingProblem problem = prepare_lattice(lp, instance);

  threads = std::clamp<std::size_t>(threads, 1, trials);
  std::vector<std::optional<Candidate>> best(threads);
  auto worker = [&](std::size_t w) {
    for (std::size_t t = w; t < trials; t += threads) {
      const RngSpec spec{seed, t};
      const auto u = sum_preserving ? round_sum_preserving(problem, spec) : randomized_round(problem, spec);
      Candidate c{evaluate(instance, u), t};
      if (!best[w] || better(c, *best[w])) best[w] = std::move(c);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  std::optional<Candidate> winner;
  for (auto& b : best) {
    if (b && (!winner || better(*b, *winner))) winner = std::move(b);
  }
  report.solution = std::move(winner->solution);
  const bool certified = report.solution->objective == lp.value && report.solution->within_cap;
  report.status = certified ? SolveStatus::kOptimalExact : SolveStatus::kApproximate;
  return report;
}

DeviationEstimate deviation_estimate(std::span<const double> p, std::size_t trials, RngSpec spec) {
  if (p.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one variable");
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "probabilities must lie in [0, 1]");
  }
  Rng rng(spec);
  double sum = 0;
  double sum_sq = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    double s = 0;
    for (double pj : p) s += rng.bernoulli(pj) ? 1.0 - pj : -pj;
    const double a = std::abs(s);
    sum += a;
    sum_sq += a * a;
  }
  DeviationEstimate est;
  est.trials = trials;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * est.mean) / static_cast<double>(trials - 1));
    est.standard_error = std::sqrt(var / static_cast<double>(trials));
  }
  est.bound = std::sqrt(std::log(2.0) / 2.0) * std::sqrt(static_cast<double>(p.size()));
  return est;
}

}  // namespace cvp
