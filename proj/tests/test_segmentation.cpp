#include <gtest/gtest.h>

#include "cvp/instgen.hpp"
#include "cvp/oracle.hpp"
#include "cvp/segmentation.hpp"
#include "support/reference.hpp"

namespace cvp {
namespace {

const std::vector<std::int64_t> kPeak{1, 1, 4, 1, 1};

MatrixInstance single_row(std::vector<std::int64_t> row, int lambda, Cap cap) {
  MatrixInstance mi;
  mi.m = 1;
  mi.n = static_cast<int>(row.size());
  mi.a = {std::move(row)};
  mi.cap = cap;
  mi.constraint = MinSeparation{lambda};
  return mi;
}

CvpInstance row_instance(const std::vector<std::int64_t>& row, int lambda, Cap cap) {
  CvpInstance inst;
  inst.target = row;
  inst.cap = cap;
  for (const auto& iv : msc_row_intervals(static_cast<int>(row.size()), lambda))
    inst.generators.push_back(interval_indicator(row.size(), iv));
  return inst;
}

TEST(MscIntervals, Enumeration) {
  EXPECT_EQ(msc_row_intervals(5, 3),
            (std::vector<Interval>{{1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 5}}));
  EXPECT_EQ(msc_row_intervals(3, 3), (std::vector<Interval>{{1, 3}}));
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(msc_row_intervals(n, 1).size(), static_cast<std::size_t>(n * (n + 1) / 2));
  for (int bad : {0, 6}) {
    try {
      msc_row_intervals(5, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidLambda);
    }
  }
}

TEST(SolveRow, PeakIsInfeasibleWithoutSlack) {
  const auto intervals = msc_row_intervals(5, 3);
  EXPECT_EQ(solve_row(kPeak, intervals, Cap::finite(0), {}).status, SolveStatus::kInfeasible);
}

TEST(SolveRow, PeakCostsTwoWithoutCap) {
  const auto best = ref::exhaustive_opt(row_instance(kPeak, 3, Cap::infinite()), 5);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->value, 2);

  const SolveReport r = solve_row(kPeak, msc_row_intervals(5, 3), Cap::infinite(), {});
  ASSERT_EQ(r.status, SolveStatus::kOptimalExact);
  EXPECT_EQ(r.solution->tc, 2);
  EXPECT_EQ(r.solution->b, (std::vector<std::int64_t>{1, 1, 2, 1, 1}));
  EXPECT_EQ(r.solution->u, (std::vector<std::int64_t>{1, 0, 0, 0, 0, 1}));
}

TEST(SolveRow, ZeroRow) {
  const SolveReport r = solve_row(std::vector<std::int64_t>(4, 0), msc_row_intervals(4, 2), Cap::finite(0), {});
  ASSERT_EQ(r.status, SolveStatus::kOptimalExact);
  EXPECT_EQ(r.solution->tc, 0);
  EXPECT_EQ(r.solution->bot, 0);
}

TEST(SolveMsc, SingleRowPeak) {
  const auto result = solve_msc(single_row(kPeak, 3, Cap::infinite()));
  ASSERT_TRUE(result.plan);
  EXPECT_EQ(result.plan->tc, 2);
  EXPECT_TRUE(result.plan->matrix_optimal);
}

TEST(SolveMsc, AllOnesTwoByTwo) {
  MatrixInstance mi;
  mi.m = 2;
  mi.n = 2;
  mi.a = {{1, 1}, {1, 1}};
  mi.cap = Cap::finite(0);
  mi.constraint = MinSeparation{2};
  const auto result = solve_msc(mi);
  ASSERT_TRUE(result.plan);
  ASSERT_EQ(result.plan->terms.size(), 1u);
  EXPECT_EQ(result.plan->terms[0].segment, (Segment{{Interval{1, 2}, Interval{1, 2}}}));
  EXPECT_EQ(result.plan->terms[0].coefficient, 1);
  EXPECT_EQ(result.plan->tc, 0);
  EXPECT_EQ(result.status, SolveStatus::kOptimalExact);
}

TEST(SolveMsc, GapRowIsInfeasible) {
  const auto best = ref::exhaustive_opt(row_instance({1, 0, 1}, 3, Cap::finite(0)), 1);
  EXPECT_FALSE(best);
  MatrixInstance mi;
  mi.m = 2;
  mi.n = 3;
  mi.a = {{2, 2, 2}, {1, 0, 1}};
  mi.cap = Cap::finite(0);
  mi.constraint = MinSeparation{3};
  const auto result = solve_msc(mi);
  EXPECT_EQ(result.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(result.plan);
  EXPECT_EQ(result.infeasible_row, 1u);
}

TEST(SolveMsc, BeamOnWeightOnlyCertifiesRows) {
  MatrixInstance mi;
  mi.m = 2;
  mi.n = 3;
  mi.a = {{1, 1, 0}, {0, 1, 1}};
  mi.weights = {1, 1};
  mi.constraint = MinSeparation{1};
  const auto result = solve_msc(mi);
  ASSERT_TRUE(result.plan);
  EXPECT_FALSE(result.plan->matrix_optimal);
  EXPECT_EQ(result.status, SolveStatus::kApproximate);
}

TEST(Assemble, SingleRowKeepsItsIntervals) {
  const std::vector<RowPlan> plans{{{Interval{2, 4}, 2}, {Interval{1, 3}, 1}}};
  const auto terms = assemble_matrix_segments(plans);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0], (PlanTerm{Segment{{Interval{1, 3}}}, 1}));
  EXPECT_EQ(terms[1], (PlanTerm{Segment{{Interval{2, 4}}}, 2}));
}

TEST(Assemble, ClosedRow) {
  const std::vector<RowPlan> plans{{{Interval{1, 2}, 1}}, {}};
  const auto terms = assemble_matrix_segments(plans);
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0], (PlanTerm{Segment{{Interval{1, 2}, std::nullopt}}, 1}));
}

TEST(Assemble, ShorterRowClosesInLaterSlices) {
  const std::vector<RowPlan> plans{{{Interval{1, 1}, 1}, {Interval{2, 2}, 1}}, {{Interval{1, 2}, 1}}};
  const auto terms = assemble_matrix_segments(plans);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].segment, (Segment{{Interval{1, 1}, Interval{1, 2}}}));
  EXPECT_EQ(terms[1].segment, (Segment{{Interval{2, 2}, std::nullopt}}));
}

TEST(PlanChecks, MscViolationNamesTheRow) {
  MatrixInstance mi = single_row({1, 1, 1}, 2, Cap::infinite());
  mi.m = 2;
  mi.a.push_back({1, 1, 1});
  const std::vector<PlanTerm> terms{{Segment{{Interval{1, 3}, Interval{2, 2}}}, 1}};
  const auto v = check_plan_constraints(mi, terms);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rfind("MSC violation row 2", 0), 0u);
}

TEST(Flatten, RowMajorVectorInstance) {
  MatrixInstance mi;
  mi.m = 2;
  mi.n = 2;
  mi.a = {{1, 2}, {3, 4}};
  mi.constraint = ExplicitSegments{{Segment{{Interval{2, 2}, std::nullopt}}, Segment{{Interval{1, 2}, Interval{1, 1}}}}};
  const CvpInstance flat = flatten(mi);
  EXPECT_EQ(flat.target, (std::vector<std::int64_t>{1, 2, 3, 4}));
  EXPECT_EQ(flat.generators[0], (std::vector<std::uint8_t>{0, 1, 0, 0}));
  EXPECT_EQ(flat.generators[1], (std::vector<std::uint8_t>{1, 1, 1, 0}));
  const auto u = std::vector<std::int64_t>{1, 2};
  const MatrixPlan plan = plan_from_coefficients(mi, u);
  EXPECT_EQ(plan.tc, evaluate(flat, u).tc);
  EXPECT_EQ(plan.realized, (std::vector<std::vector<std::int64_t>>{{2, 3}, {2, 0}}));
}

// Random MSC matrices: MSC holds on every segment, rows are reproduced
// exactly, tc adds up over rows, beam-on equals the largest row beam-on.
TEST(SegmentationProperty, AssemblyInvariants) {
  Rng rng({31, 0});
  for (int rep = 0; rep < 300; ++rep) {
    MscGenOptions o;
    o.m = 1 + static_cast<int>(rng.below(4));
    o.n = 1 + static_cast<int>(rng.below(6));
    o.lambda = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(o.n)));
    o.max_entry = 4;
    o.cap = rep % 2 ? Cap::infinite() : Cap::finite(2);
    o.decomposable = rep % 3 == 0;
    const MatrixInstance mi = gen_msc_matrix(o, rng);
    const auto result = solve_msc(mi);
    if (!result.plan) {
      ASSERT_TRUE(result.infeasible_row);
      continue;
    }
    const auto& plan = *result.plan;
    EXPECT_TRUE(check_plan_constraints(mi, plan.terms).empty());
    std::int64_t tc = 0;
    std::int64_t bot = 0;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      EXPECT_EQ(plan.realized[i], result.rows[i].solution->b);
      tc += result.rows[i].solution->tc;
      bot = std::max(bot, result.rows[i].solution->bot);
    }
    EXPECT_EQ(plan.tc, tc);
    EXPECT_EQ(plan.bot, bot);
    for (const auto& term : plan.terms) EXPECT_TRUE(satisfies_msc(term.segment, o.lambda));
    if (o.decomposable) {
      EXPECT_EQ(plan.tc, 0);
    }
  }
}

// Exact decomposability of every 1 x n row, n <= 5, entries <= 3, against the
// oracle (and the plain enumeration where it is small enough).
TEST(SegmentationProperty, ExactDecomposabilityMatchesEnumeration) {
  for (int n = 1; n <= 5; ++n) {
    std::size_t rows = 1;
    for (int c = 0; c < n; ++c) rows *= 4;
    for (int lambda = 1; lambda <= n; ++lambda) {
      for (std::size_t code = 0; code < rows; ++code) {
        std::vector<std::int64_t> row;
        for (std::size_t c = 0, x = code; c < static_cast<std::size_t>(n); ++c, x /= 4)
          row.push_back(static_cast<std::int64_t>(x % 4));
        const CvpInstance inst = row_instance(row, lambda, Cap::finite(0));
        const bool exact = brute_force_opt(inst).status != SolveStatus::kInfeasible;
        if (inst.k() <= 6) {
          EXPECT_EQ(ref::exhaustive_opt(inst, 3).has_value(), exact);
        }
        const auto result = solve_msc(single_row(row, lambda, Cap::finite(0)));
        EXPECT_EQ(result.plan.has_value(), exact);
        if (result.plan) {
          EXPECT_EQ(result.plan->tc, 0);
        }
      }
    }
  }
}

}  // namespace
}  // namespace cvp
