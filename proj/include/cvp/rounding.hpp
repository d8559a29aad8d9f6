#pragma once

// Randomized rounding of an extremal LP optimum.
//
// Random numbers: every (seed, stream) pair seeds its own std::mt19937_64
// through std::seed_seq{seed_lo, seed_hi, stream_lo, stream_hi}. Both the
// engine and the seeding algorithm are fixed by the C++ standard, so draws are
// reproducible across platforms. A Bernoulli(p) draw with rational p takes the
// top 53 bits U of one engine output and succeeds iff U < p * 2^53, compared
// exactly by cross-multiplication.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cvp/core.hpp"
#include "cvp/lp.hpp"

namespace cvp {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

class Rng {
 public:
  explicit Rng(RngSpec spec);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, 2^53).
  std::uint64_t next53() { return engine_() >> 11; }
  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next53()) * 0x1.0p-53; }
  /// Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability exactly p (0 <= p <= 1) up to the 53-bit grid.
  bool bernoulli(const Rational& p);
  bool bernoulli(double p) { return static_cast<double>(next53()) < p * 0x1.0p53; }

 private:
  std::mt19937_64 engine_;
};

/// Lattice approximation view of an LP vertex: the (at most d) nonzero
/// coordinates of u* are moved to the front, H holds their generators, x their
/// fractional parts.
struct LatticeRoundingProblem {
  std::size_t k = 0;                             // generator count of the instance
  std::vector<std::vector<std::uint8_t>> h;      // d x d, column p = generator columns[p]
  std::vector<Rational> x;                       // fractional parts, in [0, 1)
  std::vector<std::int64_t> floor_part;          // floor(u*) per lattice position
  std::vector<std::ptrdiff_t> columns;           // lattice position -> generator, -1 = zero padding

  std::size_t d() const { return x.size(); }
  /// Problem with given fractional parts, identity placement and no H.
  static LatticeRoundingProblem from_fractions(std::vector<Rational> x,
                                               std::vector<std::int64_t> floor_part = {});
};

LatticeRoundingProblem prepare_lattice(const LpOutcome& outcome, const CvpInstance& instance);

/// Independent rounding: coordinate p becomes floor + 1 with probability x_p.
/// Result is indexed by generator (length k).
std::vector<std::int64_t> randomized_round(const LatticeRoundingProblem& problem, RngSpec rng);

/// Dependent pair rounding that keeps every marginal and the coordinate sum:
/// the result sums to floor or ceil of sum(u*).
std::vector<std::int64_t> round_sum_preserving(const LatticeRoundingProblem& problem, RngSpec rng);

/// ||H (x - y)||_inf for a rounded vector given per generator (as returned by
/// the rounding functions).
Rational lattice_discrepancy(const LatticeRoundingProblem& problem,
                             std::span<const std::int64_t> rounded);

/// LP solve followed by `trials` roundings on substreams 0..trials-1; keeps
/// the best by (objective, linf, trial). `threads` only changes wall time.
SolveReport approx_solve(const CvpInstance& instance, std::uint64_t seed, std::size_t trials,
                         bool sum_preserving, std::size_t threads = 1);

struct DeviationEstimate {
  double mean = 0;
  double standard_error = 0;
  double bound = 0;  // sqrt(ln 2 / 2) * sqrt(q)
  std::size_t trials = 0;
};

/// Monte Carlo estimate of E|X_1 + ... + X_q| where X_j = 1 - p_j with
/// probability p_j and -p_j otherwise.
DeviationEstimate deviation_estimate(std::span<const double> p, std::size_t trials, RngSpec rng);

}  // namespace cvp
