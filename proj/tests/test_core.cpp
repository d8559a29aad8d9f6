#include <gtest/gtest.h>

#include "cvp/core.hpp"
#include "cvp/instgen.hpp"
#include "support/reference.hpp"

namespace cvp {
namespace {

TEST(Evaluate, ZeroTargetZeroPlan) {
  CvpInstance inst;
  inst.target = {0, 0};
  inst.generators = {{1, 0}, {1, 1}};
  const Solution s = evaluate(inst, std::vector<std::int64_t>{0, 0});
  EXPECT_EQ(s.tc, 0);
  EXPECT_EQ(s.linf, 0);
  EXPECT_EQ(s.bot, 0);
  EXPECT_EQ(s.b, (std::vector<std::int64_t>{0, 0}));
}

TEST(Evaluate, FullIntervalOnPeakedRow) {
  CvpInstance inst;
  inst.target = {1, 1, 4, 1, 1};
  inst.generators = {{1, 1, 1, 1, 1}};
  const Solution s = evaluate(inst, std::vector<std::int64_t>{1});
  EXPECT_EQ(s.b, (std::vector<std::int64_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(s.tc, 3);
  EXPECT_EQ(s.linf, 3);
  EXPECT_EQ(s.bot, 1);
}

TEST(Evaluate, E1ExactPlan) {
  const CvpInstance inst = ref::e1();
  const auto best = ref::exhaustive_opt(inst, 3);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->value, 0);
  EXPECT_EQ(best->u, (std::vector<std::int64_t>{1, 1}));
  const Solution s = evaluate(inst, best->u);
  EXPECT_EQ(s.b, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(s.tc, 0);
  EXPECT_EQ(s.linf, 0);
  EXPECT_EQ(s.bot, 2);
  EXPECT_TRUE(s.within_cap);
}

TEST(Evaluate, WeightedObjectiveAndCap) {
  CvpInstance inst = ref::e1();
  inst.weights = {Rational(1, 2), Rational(3)};
  inst.cap = Cap::finite(0);
  const Solution s = evaluate(inst, std::vector<std::int64_t>{2, 0});
  EXPECT_EQ(s.tc, 1);
  EXPECT_EQ(s.objective, Rational(1, 2) + 6);
  EXPECT_FALSE(s.within_cap);
}

TEST(Evaluate, RejectsBadCoefficients) {
  const CvpInstance inst = ref::e1();
  try {
    evaluate(inst, std::vector<std::int64_t>{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCoefficients);
  }
  try {
    evaluate(inst, std::vector<std::int64_t>{1, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCoefficients);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Validate, WellFormedE1) { EXPECT_TRUE(validate_instance(ref::e1()).empty()); }

TEST(Validate, NonBinaryEntryNamesGeneratorAndPosition) {
  CvpInstance inst = ref::e1();
  inst.generators[1][0] = 2;
  const auto v = validate_instance(inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("generators[1][0]"), std::string::npos);
}

TEST(Validate, NegativeTarget) {
  CvpInstance inst = ref::e1();
  inst.target[0] = -1;
  const auto v = validate_instance(inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("negative target entry"), std::string::npos);
}

TEST(Validate, LengthCapAndWeights) {
  CvpInstance inst = ref::e1();
  inst.generators.push_back({1});
  inst.cap = Cap::finite(-1);
  inst.weights.nu = -1;
  EXPECT_EQ(validate_instance(inst).size(), 3u);
  EXPECT_THROW(require_valid(inst), Error);
}

TEST(ConsecutiveOnes, Examples) {
  const auto p = has_consecutive_ones(std::vector<std::uint8_t>{0, 1, 1, 1, 0});
  ASSERT_TRUE(p.is_interval());
  EXPECT_EQ(p.interval, (Interval{2, 4}));
  EXPECT_TRUE(has_consecutive_ones(std::vector<std::uint8_t>{0, 0, 0}).is_empty());
  EXPECT_TRUE(has_consecutive_ones(std::vector<std::uint8_t>{1, 0, 1}).is_scattered());
}

TEST(ConsecutiveOnes, RoundTripOverAllBinaryVectors) {
  for (std::size_t d = 1; d <= 8; ++d) {
    for (unsigned bits = 0; bits < (1U << d); ++bits) {
      std::vector<std::uint8_t> g(d);
      for (std::size_t i = 0; i < d; ++i) g[i] = (bits >> i) & 1U;
      const auto p = has_consecutive_ones(g);
      if (p.is_interval()) {
        EXPECT_EQ(interval_indicator(d, p.interval), g);
      } else if (p.is_empty()) {
        EXPECT_EQ(bits, 0u);
      } else {
        for (const auto& iv : ref::all_intervals(static_cast<int>(d))) EXPECT_NE(interval_indicator(d, iv), g);
      }
    }
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3"), 3);
  EXPECT_EQ(parse_rational("-3"), -3);
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.5", "/3", "3/"}) EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(CapValue, InfiniteHasNoValue) {
  EXPECT_TRUE(Cap::infinite().admits(1'000'000));
  EXPECT_FALSE(Cap::finite(2).admits(3));
  EXPECT_THROW(Cap::infinite().value(), Error);
  EXPECT_EQ(to_string(Cap::infinite()), "inf");
  EXPECT_EQ(to_string(Cap::finite(7)), "7");
}

// Solution invariants on random instances and random coefficient vectors.
TEST(EvaluateProperty, NormRelationsAndPurity) {
  Rng rng({11, 0});
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t d = 1 + rng.below(8);
    const std::size_t k = rng.below(6);
    const CvpInstance inst = gen_random_instance(d, k, 5, Cap::finite(static_cast<std::int64_t>(rng.below(4))),
                                                 rep % 2 == 0, rng);
    std::vector<std::int64_t> u(k);
    for (auto& v : u) v = static_cast<std::int64_t>(rng.below(4));
    const Solution s = evaluate(inst, u);
    EXPECT_GE(s.tc, s.linf);
    EXPECT_GE(s.linf, 0);
    EXPECT_LE(s.tc, static_cast<std::int64_t>(d) * s.linf);
    EXPECT_EQ(s, evaluate(inst, u));
    std::vector<std::int64_t> b(d, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) b[i] += u[j] * inst.generators[j][i];
    EXPECT_EQ(s.b, b);

    const Solution zero = evaluate(inst, std::vector<std::int64_t>(k, 0));
    std::int64_t norm = 0;
    for (auto a : inst.target) norm += a;
    EXPECT_EQ(zero.tc, norm);
  }
}

}  // namespace
}  // namespace cvp
