#pragma once

// Matrix (IMRT) instances: an m x n target fluence decomposed into segments,
// each segment opening one interval of columns per row.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cvp/core.hpp"

namespace cvp {

/// One leaf opening per row; nullopt is a closed row.
struct Segment {
  std::vector<std::optional<Interval>> rows;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct MinSeparation {
  int lambda = 1;
  friend bool operator==(const MinSeparation&, const MinSeparation&) = default;
};

struct ExplicitSegments {
  std::vector<Segment> segments;
  friend bool operator==(const ExplicitSegments&, const ExplicitSegments&) = default;
};

using SegmentConstraint = std::variant<ExplicitSegments, MinSeparation>;

struct MatrixInstance {
  int m = 0;
  int n = 0;
  std::vector<std::vector<std::int64_t>> a;
  Cap cap = Cap::infinite();
  ObjectiveWeights weights;
  SegmentConstraint constraint = MinSeparation{1};

  friend bool operator==(const MatrixInstance&, const MatrixInstance&) = default;
};

struct PlanTerm {
  Segment segment;
  std::int64_t coefficient = 0;

  friend bool operator==(const PlanTerm&, const PlanTerm&) = default;
};

struct MatrixPlan {
  std::vector<PlanTerm> terms;
  std::vector<std::vector<std::int64_t>> realized;  // B
  std::int64_t tc = 0;
  std::int64_t linf = 0;
  std::int64_t bot = 0;
  Rational objective{0};
  bool within_cap = true;
  /// False when the plan is only optimal row by row (beam-on time weighted);
  /// the matrix-level beam-on time may then be improvable.
  bool matrix_optimal = true;
};

/// Row-wise (interval, coefficient) decomposition.
using RowPlan = std::vector<std::pair<Interval, std::int64_t>>;

std::vector<std::string> validate_matrix_instance(const MatrixInstance& instance);

/// Intervals of length >= lambda inside [1, n], lexicographic by (lo, hi).
std::vector<Interval> msc_row_intervals(int n, int lambda);

bool satisfies_msc(const Segment& segment, int lambda);

/// Exact per-row solve over the given openings via min-cost flow.
SolveReport solve_row(std::span<const std::int64_t> row, std::span<const Interval> intervals,
                      Cap cap, const ObjectiveWeights& weights);

struct MatrixSolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<MatrixPlan> plan;
  std::vector<SolveReport> rows;
  std::optional<std::size_t> infeasible_row;
};

/// Minimum-separation instances only: rows are solved independently and then
/// assembled.
MatrixSolveResult solve_msc(const MatrixInstance& instance);

/// Time-slice assembly: row i is expanded into unit slices (its intervals in
/// lexicographic order, then closed), slice t across rows is one segment, and
/// equal consecutive segments are merged.
std::vector<PlanTerm> assemble_matrix_segments(std::span<const RowPlan> row_plans);

/// B, tc, linf, bot and objective of a list of terms.
MatrixPlan evaluate_plan(const MatrixInstance& instance, std::vector<PlanTerm> terms);

/// Constraint violations of a plan: "MSC violation row i" for openings
/// shorter than lambda, or segments outside the explicit list.
std::vector<std::string> check_plan_constraints(const MatrixInstance& instance,
                                                std::span<const PlanTerm> terms);

/// Row-major flattening of a segment to a length m*n binary vector.
std::vector<std::uint8_t> flatten_segment(const Segment& segment, int n);

/// Explicit-segment instance as a vector CVP instance (d = m * n, row-major).
CvpInstance flatten(const MatrixInstance& instance);

/// Plan from a coefficient vector over the explicit segment list.
MatrixPlan plan_from_coefficients(const MatrixInstance& instance, std::span<const std::int64_t> u);

}  // namespace cvp
