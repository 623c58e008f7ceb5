#include <gtest/gtest.h>

#include "naive.hpp"
#include "tempfair/errors.hpp"
#include "tempfair/generators.hpp"
#include "tempfair/oracle.hpp"

namespace tf = tempfair;
using naive::row;
using naive::same;
using tf::FairnessConcept;
using tf::Rational;

namespace {

tf::SearchOutcome run(const tf::TemporalInstance& inst, const FairnessConcept& c, bool sched,
                      unsigned jobs = 1) {
  tf::SearchOptions o;
  o.jobs = jobs;
  return tf::search(inst, c, sched, o);
}

void expect_sound(const tf::TemporalInstance& inst, const FairnessConcept& c,
                  const tf::SearchOutcome& s, bool sched) {
  if (!s.exists) return;
  ASSERT_TRUE(s.witness.has_value());
  tf::validate(inst, *s.witness);
  EXPECT_TRUE(naive::temporal(inst, *s.witness, c));
  if (!sched) EXPECT_EQ(s.witness->schedule, tf::Schedule::at_arrival(inst));
}

}  // namespace

TEST(Search, ZeroOneThreeIsInfeasibleAtThreeRounds) {
  const auto inst = tf::fixtures::identical_days_013(3);
  const auto s = run(inst, FairnessConcept::efx(), false);
  EXPECT_FALSE(s.exists);
  EXPECT_FALSE(s.witness.has_value());
  EXPECT_LE(s.nodes_visited, 1536u);
  EXPECT_EQ(s.space_bound, 512u);
}

TEST(Search, ZeroOneThreeIsFeasibleAtTwoRounds) {
  const auto inst = tf::fixtures::identical_days_013(2);
  const auto s = run(inst, FairnessConcept::efx(), false);
  EXPECT_TRUE(s.exists);
  expect_sound(inst, FairnessConcept::efx(), s, false);
}

TEST(Search, OneThreeTenMms) {
  EXPECT_FALSE(run(tf::fixtures::identical_days_1_3_10(3), FairnessConcept::mms(), false).exists);
  const auto two = tf::fixtures::identical_days_1_3_10(2);
  const auto s = run(two, FairnessConcept::mms(), false);
  EXPECT_TRUE(s.exists);
  expect_sound(two, FairnessConcept::mms(), s, false);
}

TEST(Search, PairThenTwoWithScheduling) {
  for (tf::Round T : {2, 3}) {
    const auto inst = tf::fixtures::pair_then_two(T);
    EXPECT_EQ(inst.buffer(), T - 1);
    EXPECT_FALSE(run(inst, FairnessConcept::efx(), true).exists) << T;
    EXPECT_FALSE(run(inst, FairnessConcept::mms(), true).exists) << T;
  }
}

TEST(Search, AlphaValueDependence) {
  // k = 1/3: the late good is worth 3, and whoever takes it is 1/2-envied
  const auto three = tf::fixtures::alpha_value_dependence(Rational(1, 3));
  EXPECT_EQ(three.value(0, 2), Rational(3));
  EXPECT_FALSE(run(three, FairnessConcept::alpha_efx(Rational(1, 2)), false).exists);
  EXPECT_TRUE(run(three, FairnessConcept::alpha_efx(Rational(1, 3)), false).exists);
  // k = 1: an ordinary unit good
  const auto unit = tf::fixtures::alpha_value_dependence(Rational(1));
  EXPECT_TRUE(run(unit, FairnessConcept::alpha_efx(Rational(1, 2)), false).exists);
}

TEST(Search, SchedulingMakesTheDifference) {
  const auto with = tf::fixtures::scheduling_comparison(2);
  const auto s = run(with, FairnessConcept::efx(), true);
  ASSERT_TRUE(s.exists);
  expect_sound(with, FairnessConcept::efx(), s, true);
  EXPECT_NE(s.witness->schedule, tf::Schedule::at_arrival(with));
  EXPECT_FALSE(run(with, FairnessConcept::efx(), false).exists);
  EXPECT_FALSE(run(tf::fixtures::scheduling_comparison(1), FairnessConcept::efx(), true).exists);
}

TEST(Search, TrivialInstances) {
  const auto single = naive::build(2, {{row({3, 4})}});
  const auto s = run(single, FairnessConcept::efx(), false);
  EXPECT_TRUE(s.exists);
  expect_sound(single, FairnessConcept::efx(), s, false);
  const auto empty = naive::build(3, {{}, {}});
  EXPECT_TRUE(run(empty, FairnessConcept::mms(), true).exists);
}

TEST(Search, CapsAreEnforced) {
  std::vector<std::vector<std::vector<Rational>>> rounds(1);
  for (int k = 0; k < 19; ++k) rounds[0].push_back(same(2, 1));
  EXPECT_THROW(run(naive::build(2, rounds), FairnessConcept::efx(), false), tf::CapacityError);
  tf::SearchOptions o;
  o.cap_two_agents = 19;
  o.mms_cap = 8;
  EXPECT_THROW(tf::search(naive::build(2, rounds), FairnessConcept::mms(), false, o),
               tf::CapacityError);
}

TEST(Search, AgreesWithFullEnumeration) {
  tf::Rng rng(91);
  const std::vector<FairnessConcept> concepts{
      FairnessConcept::ef1(), FairnessConcept::efx(), FairnessConcept::mms(),
      FairnessConcept::alpha_efx(Rational(1, 2))};
  for (int trial = 0; trial < 250; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto T = static_cast<tf::Round>(rng.uniform(1, 4));
    const std::size_t max_goods = n == 3 ? 6 : 8;
    std::vector<std::vector<std::vector<Rational>>> rounds(T);
    std::size_t m = 0;
    const bool identical = rng.coin();
    for (auto& r : rounds) {
      const auto k = static_cast<std::size_t>(rng.uniform(0, 3));
      for (std::size_t j = 0; j < k && m < max_goods; ++j, ++m) {
        std::vector<Rational> v(n);
        const auto x = rng.uniform(0, 6);
        for (auto& y : v) y = Rational(identical ? x : rng.uniform(0, 6));
        r.push_back(v);
      }
    }
    const bool sched = rng.coin() && m <= 6;
    const auto buffer = static_cast<tf::Round>(rng.uniform(1, T));
    const auto inst = naive::build(n, rounds, buffer);
    const auto& c = concepts[static_cast<std::size_t>(rng.uniform(0, 3))];
    const auto s = run(inst, c, sched);
    EXPECT_EQ(s.exists, naive::exists(inst, c, sched)) << "trial " << trial << " " << c.name();
    expect_sound(inst, c, s, sched);
  }
}

TEST(Search, JobsDoNotChangeTheAnswer) {
  for (const auto& inst : {tf::fixtures::identical_days_013(2), tf::fixtures::identical_days_013(3),
                           tf::fixtures::scheduling_comparison(2)}) {
    const auto one = run(inst, FairnessConcept::efx(), true, 1);
    const auto four = run(inst, FairnessConcept::efx(), true, 4);
    EXPECT_EQ(one.exists, four.exists);
    EXPECT_EQ(one.witness, four.witness);
  }
}

TEST(Search, SymmetryOffGivesSameVerdict) {
  tf::SearchOptions o;
  o.symmetry = false;
  const auto inst = tf::fixtures::identical_days_013(3);
  const auto s = tf::search(inst, FairnessConcept::efx(), false, o);
  EXPECT_FALSE(s.exists);
  EXPECT_GE(s.nodes_visited, run(inst, FairnessConcept::efx(), false).nodes_visited);
}

TEST(Fixtures, Shapes) {
  const auto a = tf::fixtures::identical_days_013(3);
  EXPECT_EQ(a.size(), 9u);
  EXPECT_EQ(a.agents(), 2u);
  EXPECT_TRUE(tf::classify(a).identical_days);
  const auto b = tf::fixtures::genbinary_three_agents();
  EXPECT_EQ(b.size(), 13u);
  EXPECT_EQ(b.agents(), 3u);
  EXPECT_EQ(b.rounds(), 12);
  EXPECT_TRUE(tf::classify(b).generalized_binary);
  const auto g = tf::fixtures::scheduling_comparison(2);
  EXPECT_EQ(g.value(0, 2), Rational(100));
  EXPECT_EQ(g.buffer(), 2);
}

TEST(Fixtures, ListedInOrder) {
  const auto list = tf::known_fixtures();
  std::vector<std::string> names;
  for (const auto& f : list) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g-scheduled",
                                             "g-unscheduled"}));
}

// The 13-good generalized-binary fixture has a TEFX allocation: the owner
// string 1231222312132 (agents 1-based) is checked here independently.
TEST(Fixtures, GenBinaryThreeAgentsHasATefxAllocation) {
  const auto inst = tf::fixtures::genbinary_three_agents();
  const std::string owners = "1231222312132";
  tf::TemporalAllocation alloc{tf::Schedule::at_arrival(inst), {}};
  for (char ch : owners) alloc.owner.push_back(static_cast<tf::AgentIndex>(ch - '1'));
  EXPECT_TRUE(naive::temporal(inst, alloc, FairnessConcept::efx()));
  EXPECT_TRUE(run(inst, FairnessConcept::efx(), false, 4).exists);
}
