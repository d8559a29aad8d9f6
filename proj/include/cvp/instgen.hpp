#pragma once

// Instance factories: random vector instances, minimum-separation matrices and
// the 3SAT-6 to 2 x n segmentation reduction.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cvp/core.hpp"
#include "cvp/rounding.hpp"
#include "cvp/segmentation.hpp"

namespace cvp {

/// CNF over variables 1..s; literal v > 0 is x_v, v < 0 its negation.
struct Sat36Formula {
  int s = 0;
  std::vector<std::array<int, 3>> clauses;

  std::size_t t() const { return clauses.size(); }

  friend bool operator==(const Sat36Formula&, const Sat36Formula&) = default;
};

/// Every broken 3SAT-6 shape rule, one line each.
std::vector<std::string> validate_formula(const Sat36Formula& formula);
/// Throws kMalformedFormula with the first violation.
void require_valid_formula(const Sat36Formula& formula);

/// "p sat36 s t" header, then t clause lines of three signed integers (an
/// optional trailing 0 is accepted). Lines starting with 'c' are comments.
Sat36Formula parse_sat36(std::string_view text);
std::string write_sat36(const Sat36Formula& formula);

/// assignment[v - 1] is the value of x_v.
int count_satisfied(const Sat36Formula& formula, const std::vector<bool>& assignment);

/// Uniform pairing of the 6s literal occurrences into clauses, redrawn until
/// no clause repeats a variable. Needs s >= 3.
Sat36Formula random_sat36(int s, Rng& rng);

struct GadgetRole {
  enum class Kind { kLiteral, kFiller };

  Kind kind = Kind::kLiteral;
  int clause = 0;      // j, 1-based
  int position = 0;    // alpha (1..3) for literals, gamma (4..10) for fillers
  int literal = 0;     // signed variable, literals only
  int occurrence = 0;  // beta: c_j is the beta-th clause holding the literal

  friend bool operator==(const GadgetRole&, const GadgetRole&) = default;
};

struct ReducedInstance {
  MatrixInstance matrix_instance;  // 2 x 10s, explicit segments, C = inf
  std::vector<Segment> segments;   // clause by clause: 3 literal then 7 filler segments
  std::vector<GadgetRole> provenance;
  int s = 0;
  int t = 0;
};

/// Sub-interval gamma (1..10) of clause j's block [5j-4, 5j].
Interval clause_subinterval(int clause, int gamma);
/// Sub-interval beta (1..3) of the block [6i-5, 6i] for the signed literal.
Interval literal_subinterval(int literal, int beta);
/// Fillers (gammas in 4..10) that complete a clause block given which literal
/// sub-intervals are present (bit alpha-1 of mask). The empty mask gets I_9
/// and leaves one unit uncovered.
std::vector<int> filler_completion(unsigned mask);

ReducedInstance reduce_3sat6(const Sat36Formula& formula);

/// Binary coefficients over reduced.segments for an assignment: the literal
/// segments of the true literals plus the completing fillers of every clause.
std::vector<std::int64_t> assignment_to_coefficients(const ReducedInstance& reduced,
                                                     const std::vector<bool>& assignment);
MatrixPlan assignment_to_plan(const ReducedInstance& reduced, const std::vector<bool>& assignment);

CvpInstance gen_random_instance(std::size_t d, std::size_t k, std::int64_t max_entry, Cap cap,
                                bool consecutive_only, Rng& rng);

struct MscGenOptions {
  int m = 1;
  int n = 1;
  int lambda = 1;
  std::int64_t max_entry = 3;
  Cap cap = Cap::infinite();
  /// Emit the realized matrix of a random MSC plan instead of uniform entries.
  bool decomposable = false;
};

MatrixInstance gen_msc_matrix(const MscGenOptions& options, Rng& rng);

}  // namespace cvp
