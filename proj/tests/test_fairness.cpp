#include <gtest/gtest.h>

#include "naive.hpp"
#include "tempfair/errors.hpp"
#include "tempfair/fairness.hpp"
#include "tempfair/generators.hpp"
#include "tempfair/oracle.hpp"

namespace tf = tempfair;
using tf::Bundles;
using tf::Rational;

namespace {

// Both agents value the three goods 0, 1, 3 (indices 0, 1, 2).
tf::Valuations zero_one_three() { return naive::valuations({{0, 1, 3}, {0, 1, 3}}); }

// Re-evaluates a violation from its own fields.
bool witness_is_real(const tf::Valuations& v, const Bundles& a, const tf::Violation& w,
                     const Rational& alpha) {
  if (!w.envied || !w.removed_good) return false;
  const Rational own = naive::value(v, w.envious, a[w.envious]);
  return own < alpha * naive::value_without(v, w.envious, a[*w.envied], *w.removed_good);
}

}  // namespace

TEST(Ef1, RemovingTheBigGoodSuffices) {
  const auto v = naive::valuations({{1, 1, 3}, {1, 1, 3}});
  EXPECT_TRUE(tf::is_ef1(v, {{0}, {1, 2}}).holds);
}

TEST(Ef1, EmptyBundlesAreFair) {
  EXPECT_TRUE(tf::is_ef1(zero_one_three(), {{}, {}}).holds);
  EXPECT_TRUE(tf::is_efx(zero_one_three(), {{}, {}}).holds);
}

TEST(Ef1, EverythingToOneAgentFailsBoth) {
  const Bundles a{{}, {0, 1, 2}};
  EXPECT_FALSE(tf::is_ef1(zero_one_three(), a).holds);
  EXPECT_FALSE(tf::is_efx(zero_one_three(), a).holds);
}

TEST(Efx, SplitZeroOneAgainstThreeHolds) {
  EXPECT_TRUE(tf::is_efx(zero_one_three(), {{0, 1}, {2}}).holds);
}

TEST(Efx, ZeroGoodRemovalDoesNotHelp) {
  const Bundles a{{1}, {0, 2}};
  const auto verdict = tf::is_efx(zero_one_three(), a);
  ASSERT_FALSE(verdict.holds);
  ASSERT_TRUE(verdict.witness.has_value());
  EXPECT_EQ(verdict.witness->envious, 0u);
  EXPECT_EQ(verdict.witness->envied, std::optional<tf::AgentIndex>(1));
  EXPECT_EQ(verdict.witness->removed_good, std::optional<tf::GoodIndex>(0));
  EXPECT_TRUE(witness_is_real(zero_one_three(), a, *verdict.witness, Rational(1)));
  // EF1 is happy: dropping the 3 leaves 0 < 1
  EXPECT_TRUE(tf::is_ef1(zero_one_three(), a).holds);
}

TEST(Efx, SingleAgentAlwaysHolds) {
  const auto v = naive::valuations({{5, 0, 2}});
  EXPECT_TRUE(tf::is_efx(v, {{0, 1, 2}}).holds);
  EXPECT_TRUE(tf::is_mms(v, {{0, 1, 2}}).holds);
}

TEST(Efx, ShapeErrors) {
  EXPECT_THROW(tf::is_efx(zero_one_three(), {{0}}), tf::ValidationError);
  EXPECT_THROW(tf::is_efx(zero_one_three(), {{0}, {7}}), tf::InvalidReference);
}

TEST(AlphaEfx, BiValuedTightness) {
  // goods a=1, a=1, b=2; agent 1 ends with {a, b}, agent 2 with {a}
  const auto v = naive::valuations({{1, 1, 2}, {1, 1, 2}});
  const Bundles a{{0, 2}, {1}};
  EXPECT_TRUE(tf::is_alpha_efx(v, a, Rational(1, 2)).holds);
  EXPECT_FALSE(tf::is_alpha_efx(v, a, Rational(1, 2) + Rational(1, 1000)).holds);
}

TEST(AlphaEfx, OneAgainstTwoGoodsOfEqualValue) {
  const auto v = naive::valuations({{4, 4, 4}, {4, 4, 4}});
  EXPECT_TRUE(tf::is_alpha_efx(v, {{0}, {1, 2}}, Rational(1, 2)).holds);
  // Without removal agent 1 has only half of the other bundle.
  EXPECT_FALSE(tf::is_envy_free(v, {{0}, {1, 2}}).holds);
}

TEST(AlphaEfx, RejectsAlphaOutsideUnitInterval) {
  EXPECT_THROW(tf::is_alpha_efx(zero_one_three(), {{}, {}}, Rational(0)), tf::ParameterError);
  EXPECT_THROW(tf::is_alpha_efx(zero_one_three(), {{}, {}}, Rational(3, 2)), tf::ParameterError);
  EXPECT_THROW(tf::FairnessConcept::alpha_efx(Rational(-1)), tf::ParameterError);
}

TEST(AlphaEfx, PerAgentRatiosAreIndependent) {
  // agent 1 holds 1 against {3, 3}: ratio 1/3 after the removal
  const auto v = naive::valuations({{1, 3, 3}, {1, 3, 3}});
  const Bundles a{{0}, {1, 2}};
  EXPECT_TRUE(tf::is_alpha_efx(v, a, std::vector<Rational>{Rational(1, 3), Rational(1)}).holds);
  EXPECT_FALSE(tf::is_alpha_efx(v, a, std::vector<Rational>{Rational(1, 2), Rational(1)}).holds);
  EXPECT_THROW(tf::is_alpha_efx(v, a, std::vector<Rational>{Rational(1)}), tf::ParameterError);
}

TEST(MmsShare, WorkedSplits) {
  const auto v = naive::valuations({{1, 3, 10}});
  const std::vector<tf::GoodIndex> all{0, 1, 2};
  EXPECT_EQ(tf::mms_share(v, all, 0, 2), Rational(4));
  EXPECT_EQ(tf::mms_share(v, all, 0, 1), Rational(14));
  const auto w = naive::valuations({{1, 1, 2}});
  EXPECT_EQ(tf::mms_share(w, all, 0, 2), Rational(2));
  EXPECT_EQ(tf::mms_share(w, all, 0, 4), Rational(0));
}

TEST(MmsShare, RationalValues) {
  std::vector<std::vector<Rational>> rows{{Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
  const tf::Valuations v(rows);
  EXPECT_EQ(tf::mms_share(v, std::vector<tf::GoodIndex>{0, 1, 2}, 0, 2), Rational(1, 2));
}

TEST(MmsShare, CapAndArguments) {
  const auto v = naive::valuations({std::vector<std::int64_t>(20, 1)});
  std::vector<tf::GoodIndex> all(20);
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  EXPECT_THROW(tf::mms_share(v, all, 0, 2), tf::CapacityError);
  EXPECT_EQ(tf::mms_share(v, all, 0, 2, 20), Rational(10));
  EXPECT_THROW(tf::mms_share(v, all, 0, 0, 20), tf::ParameterError);
  EXPECT_THROW(tf::mms_share(v, all, 1, 2, 20), tf::InvalidReference);
}

TEST(MmsShare, AgreesWithUnprunedEnumeration) {
  tf::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(0, 8));
    const auto parts = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto v = naive::random_valuations(rng, 1, m, 12);
    std::vector<tf::GoodIndex> goods(m);
    for (std::size_t k = 0; k < m; ++k) goods[k] = k;
    EXPECT_EQ(tf::mms_share(v, goods, 0, parts), naive::mms_share(v, goods, 0, parts));
  }
}

TEST(Mms, RoundOneOfOneThreeTen) {
  const auto v = naive::valuations({{1, 3, 10}, {1, 3, 10}});
  EXPECT_TRUE(tf::is_mms(v, {{0, 1}, {2}}).holds);
  const auto bad = tf::is_mms(v, {{0}, {1, 2}});
  ASSERT_FALSE(bad.holds);
  EXPECT_EQ(bad.witness->shortfall, std::optional<Rational>(Rational(3)));
  EXPECT_FALSE(bad.witness->envied.has_value());
}

TEST(Mms, RoundTwoOfOneThreeTenNeedsOneCopyEach) {
  // all 2^6 ownerships of two days {1, 3, 10}; the verdicts come from the
  // unpruned enumerator, and only the 8 "one copy of each value" splits pass
  const auto inst = tf::fixtures::identical_days_1_3_10(2);
  const auto& v = inst.valuations();
  int passing = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    Bundles a(2);
    for (tf::GoodIndex g = 0; g < 6; ++g) a[(mask >> g) & 1U].push_back(g);
    const bool expected = naive::mms(v, a);
    EXPECT_EQ(tf::is_mms(v, a).holds, expected) << "mask " << mask;
    passing += expected ? 1 : 0;
  }
  EXPECT_EQ(passing, 8);
}

TEST(Concept, ParsingAndNames) {
  EXPECT_EQ(tf::parse_concept("tef1").kind, tf::ConceptKind::EF1);
  EXPECT_EQ(tf::parse_concept("efx").kind, tf::ConceptKind::EFX);
  EXPECT_EQ(tf::parse_concept("tmms").kind, tf::ConceptKind::MMS);
  const auto a = tf::parse_concept("atefx:2/4");
  EXPECT_EQ(a.kind, tf::ConceptKind::AlphaEFX);
  EXPECT_EQ(a.alpha, Rational(1, 2));
  EXPECT_EQ(a.name(), "atefx:1/2");
  EXPECT_THROW(tf::parse_concept("atefx:0.5"), tf::ParameterError);
  EXPECT_THROW(tf::parse_concept("atefx:3/2"), tf::ParameterError);
  EXPECT_THROW(tf::parse_concept("prop1"), tf::ParameterError);
}

TEST(CheckTemporal, ScheduledSolutionOfTheFourGoodStream) {
  // goods 1, 1, 100, 10 one per round; the second good waits a round
  const auto inst = tf::fixtures::scheduling_comparison(2);
  tf::TemporalAllocation alloc{tf::Schedule::at_arrival(inst), {0, 0, 1, 0}};
  alloc.schedule.placement[1] = 3;
  EXPECT_TRUE(tf::check_temporal(inst, alloc, tf::FairnessConcept::efx()).holds);
  alloc.schedule.placement[1] = 2;
  const auto v = tf::check_temporal(inst, alloc, tf::FairnessConcept::efx());
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->round, 2);
}

TEST(CheckTemporal, EveryAllocationOfZeroOneThreeFailsByRoundThree) {
  const auto inst = tf::fixtures::identical_days_013(3);
  for (unsigned mask = 0; mask < 512; ++mask) {
    tf::TemporalAllocation alloc{tf::Schedule::at_arrival(inst), std::vector<tf::AgentIndex>(9)};
    for (tf::GoodIndex g = 0; g < 9; ++g) alloc.owner[g] = (mask >> g) & 1U;
    const auto v = tf::check_temporal(inst, alloc, tf::FairnessConcept::efx());
    ASSERT_FALSE(v.holds) << "mask " << mask;
    EXPECT_LE(v.witness->round, 3);
  }
}

TEST(CheckTemporal, EmptyInstanceAndInvalidAllocation) {
  const tf::TemporalInstance empty(2, 2, {});
  const tf::TemporalAllocation none{tf::Schedule::at_arrival(empty), {}};
  for (const auto& c : {tf::FairnessConcept::ef1(), tf::FairnessConcept::efx(),
                        tf::FairnessConcept::mms()}) {
    EXPECT_TRUE(tf::check_temporal(empty, none, c).holds);
  }
  const auto inst = tf::fixtures::pair_then_two(3);
  const tf::TemporalAllocation partial{tf::Schedule::at_arrival(inst), {0, 1}};
  EXPECT_THROW(tf::check_temporal(inst, partial, tf::FairnessConcept::efx()), tf::ValidationError);
}

TEST(CheckTemporal, RoundReportMatchesPrefixChecks) {
  const auto inst = tf::fixtures::identical_days_013(3);
  const tf::TemporalAllocation alloc{tf::Schedule::at_arrival(inst), {0, 0, 1, 1, 1, 0, 0, 1, 1}};
  const auto report = tf::round_report(inst, alloc, tf::FairnessConcept::efx());
  ASSERT_EQ(report.size(), 3u);
  for (tf::Round t = 1; t <= 3; ++t) {
    EXPECT_EQ(report[t - 1].holds,
              naive::efx(inst.valuations(), naive::prefix(inst, alloc, t)));
    if (!report[t - 1].holds) EXPECT_EQ(report[t - 1].witness->round, t);
  }
}

TEST(Properties, CheckersAgreeWithDefinitions) {
  tf::Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform(0, 7));
    const auto v = naive::random_valuations(rng, n, m, 6);
    const auto a = naive::random_bundles(rng, n, m);
    EXPECT_EQ(tf::is_ef1(v, a).holds, naive::ef1(v, a));
    EXPECT_EQ(tf::is_efx(v, a).holds, naive::efx(v, a));
    EXPECT_EQ(tf::is_mms(v, a).holds, naive::mms(v, a));
    const Rational alpha(rng.uniform(1, 6), 6);
    EXPECT_EQ(tf::is_alpha_efx(v, a, alpha).holds, naive::alpha_efx(v, a, alpha));
  }
}

TEST(Properties, EfxImpliesEf1) {
  tf::Rng rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(0, 10));
    const auto v = naive::random_valuations(rng, n, m, 5);
    const auto a = naive::random_bundles(rng, n, m);
    if (tf::is_efx(v, a).holds) EXPECT_TRUE(tf::is_ef1(v, a).holds);
  }
}

TEST(Properties, AlphaOneIsEfxAndAlphaIsMonotone) {
  tf::Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(0, 10));
    const auto v = naive::random_valuations(rng, n, m, 7);
    const auto a = naive::random_bundles(rng, n, m);
    EXPECT_EQ(tf::is_alpha_efx(v, a, Rational(1)).holds, tf::is_efx(v, a).holds);
    const Rational hi(rng.uniform(1, 12), 12);
    const Rational lo = hi * Rational(rng.uniform(1, 12), 12);
    if (tf::is_alpha_efx(v, a, hi).holds) EXPECT_TRUE(tf::is_alpha_efx(v, a, lo).holds);
  }
}

TEST(Properties, ZeroGoodNeverRepairsEfx) {
  tf::Rng rng(6);
  int tried = 0;
  while (tried < 1000) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 8));
    auto rows = std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(m + 1, 0));
    for (auto& r : rows) {
      for (std::size_t g = 0; g < m; ++g) r[g] = rng.uniform(0, 6);
    }
    const auto v = naive::valuations(rows);  // good m is the all-zero one
    auto a = naive::random_bundles(rng, n, m);
    if (tf::is_efx(v, a).holds) continue;
    ++tried;
    a[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))].push_back(m);
    EXPECT_FALSE(tf::is_efx(v, a).holds);
  }
}

TEST(Properties, EfxDoesNotImplyMmsForTwoAgents) {
  // identical values 2, 2, 1, 1: {2, 2} | {1, 1} is EFX, yet the maximin share is 3
  const auto v = naive::valuations({{2, 2, 1, 1}, {2, 2, 1, 1}});
  const Bundles a{{0, 1}, {2, 3}};
  EXPECT_TRUE(naive::efx(v, a));
  EXPECT_FALSE(naive::mms(v, a));
  EXPECT_TRUE(tf::is_efx(v, a).holds);
  EXPECT_FALSE(tf::is_mms(v, a).holds);
}

TEST(Properties, WitnessesAreReal) {
  tf::Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 9));
    const auto v = naive::random_valuations(rng, n, m, 9);
    const auto a = naive::random_bundles(rng, n, m);
    const auto verdict = tf::is_efx(v, a);
    EXPECT_EQ(verdict.holds, !verdict.witness.has_value());
    if (!verdict.holds) EXPECT_TRUE(witness_is_real(v, a, *verdict.witness, Rational(1)));
    const auto mms = tf::is_mms(v, a);
    if (!mms.holds) {
      const auto i = mms.witness->envious;
      std::vector<tf::GoodIndex> all;
      for (const auto& b : a) all.insert(all.end(), b.begin(), b.end());
      EXPECT_EQ(*mms.witness->shortfall,
                naive::mms_share(v, all, i, n) - naive::value(v, i, a[i]));
    }
  }
}
