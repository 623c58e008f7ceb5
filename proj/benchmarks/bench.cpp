#include <benchmark/benchmark.h>

#include <numeric>

#include "tempfair/fairness.hpp"
#include "tempfair/generators.hpp"
#include "tempfair/oracle.hpp"
#include "tempfair/static_alloc.hpp"
#include "tempfair/temporal.hpp"

namespace tf = tempfair;

namespace {

void BM_SearchGenBinaryThreeAgents(benchmark::State& state) {
  const auto inst = tf::fixtures::genbinary_three_agents();
  tf::SearchOptions o;
  o.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::search(inst, tf::FairnessConcept::efx(), false, o));
  }
}
BENCHMARK(BM_SearchGenBinaryThreeAgents)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SearchZeroOneThree(benchmark::State& state) {
  const auto inst = tf::fixtures::identical_days_013(static_cast<tf::Round>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::search(inst, tf::FairnessConcept::efx(), false));
  }
}
BENCHMARK(BM_SearchZeroOneThree)->DenseRange(2, 4);

void BM_MmsShare(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  tf::Rng rng(11);
  std::vector<std::vector<tf::Rational>> rows(3, std::vector<tf::Rational>(m));
  for (auto& r : rows) {
    for (auto& x : r) x = tf::Rational(rng.uniform(1, 50));
  }
  const tf::Valuations v(rows);
  std::vector<tf::GoodIndex> goods(m);
  std::iota(goods.begin(), goods.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::mms_share(v, goods, 0, 3, 24));
  }
}
BENCHMARK(BM_MmsShare)->DenseRange(8, 16, 4);

void BM_MaxEnvyCycles(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  tf::Rng rng(12);
  std::vector<std::vector<tf::Rational>> rows(4, std::vector<tf::Rational>(m));
  for (auto& r : rows) {
    for (auto& x : r) x = tf::Rational(rng.uniform(1, 100));
  }
  const tf::Valuations v(rows);
  std::vector<tf::GoodIndex> goods(m);
  std::iota(goods.begin(), goods.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::envy_cycle_elimination(v, goods, tf::PickRule::Max));
  }
}
BENCHMARK(BM_MaxEnvyCycles)->RangeMultiplier(4)->Range(16, 256);

void BM_CheckTemporalEfx(benchmark::State& state) {
  tf::SettingRequest r;
  r.bi_valued = true;
  tf::GeneratorParams p;
  p.agents = 4;
  p.rounds = static_cast<tf::Round>(state.range(0));
  p.per_round = 4;
  p.seed = 5;
  const auto inst = tf::generate(r, p);
  const auto alloc = tf::rr_bivalued(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::check_temporal(inst, alloc, tf::FairnessConcept::efx()));
  }
}
BENCHMARK(BM_CheckTemporalEfx)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
BENCHMARK_MAIN();
