#include "tempfair/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <limits>

#include "tempfair/errors.hpp"

namespace tempfair {

std::size_t SearchOptions::cap_for(std::size_t agents) const {
  switch (agents) {
    case 0:
    case 1:
      return cap_one_agent;
    case 2:
      return cap_two_agents;
    case 3:
      return cap_three_agents;
    default:
      return cap_more_agents;
  }
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

Round deadline(const TemporalInstance& instance, GoodIndex g, bool use_scheduling) {
  const Round arrival = instance.good(g).arrival;
  if (!use_scheduling) return arrival;
  return std::min(arrival + instance.buffer() - 1, instance.rounds());
}

// A decision is an agent index, or `agents` for "defer to a later round".
using Choice = std::size_t;

class Searcher {
 public:
  Searcher(const TemporalInstance& instance, const FairnessConcept& concept_, bool use_scheduling,
           const SearchOptions& options)
      : instance_(instance),
        concept_(concept_),
        scheduling_(use_scheduling),
        options_(options),
        n_(instance.agents()),
        bundles_(n_),
        alloc_{Schedule::at_arrival(instance), std::vector<AgentIndex>(instance.size(), 0)} {
    same_row_.assign(n_, std::vector<bool>(n_, false));
    const Valuations& v = instance.valuations();
    for (AgentIndex a = 0; a < n_; ++a) {
      for (AgentIndex b = 0; b < a; ++b) {
        bool same = true;
        for (GoodIndex g = 0; g < instance.size() && same; ++g) same = v.value(a, g) == v.value(b, g);
        same_row_[a][b] = same;
      }
    }
  }

  /// Choices available at the very first decision.
  std::vector<Choice> root_choices() const {
    std::vector<Choice> out;
    if (instance_.size() == 0) return out;
    for (AgentIndex a = 0; a < n_; ++a) {
      if (allowed(a)) out.push_back(a);
    }
    if (deadline(instance_, 0, scheduling_) > instance_.good(0).arrival) out.push_back(n_);
    return out;
  }

  /// Runs the search with the first decision fixed to `root` (or free).
  bool run(std::optional<Choice> root) {
    root_ = root;
    std::vector<GoodIndex> none;
    return round(1, none);
  }

  std::uint64_t nodes() const { return nodes_; }
  const TemporalAllocation& witness() const { return alloc_; }

 private:
  bool allowed(AgentIndex a) const {
    if (!options_.symmetry || !bundles_[a].empty()) return true;
    for (AgentIndex b = 0; b < a; ++b) {
      if (same_row_[a][b] && bundles_[b].empty()) return false;
    }
    return true;
  }

  bool prefix_ok() {
    const Verdict v = check(instance_.valuations(), bundles_, concept_, CheckOptions{options_.mms_cap});
    return v.holds;
  }

  // Processes round t: every pending good is either placed now or deferred.
  bool round(Round t, const std::vector<GoodIndex>& carried) {
    if (t > instance_.rounds()) return true;
    std::vector<GoodIndex> pending = carried;
    for (GoodIndex g : instance_.arrivals(t)) pending.push_back(g);
    std::sort(pending.begin(), pending.end());
    std::vector<GoodIndex> deferred;
    return place(t, pending, 0, deferred, false);
  }

  bool place(Round t, const std::vector<GoodIndex>& pending, std::size_t k,
             std::vector<GoodIndex>& deferred, bool placed_any) {
    if (k == pending.size()) {
      if (placed_any && !prefix_ok()) return false;
      return round(t + 1, deferred);
    }
    const GoodIndex g = pending[k];
    const bool first_decision = decisions_ == 0;
    ++decisions_;
    for (AgentIndex a = 0; a < n_; ++a) {
      if (first_decision && root_ && *root_ != a) continue;
      if (!allowed(a)) continue;
      ++nodes_;
      bundles_[a].push_back(g);
      alloc_.owner[g] = a;
      alloc_.schedule.placement[g] = t;
      const bool found = place(t, pending, k + 1, deferred, true);
      bundles_[a].pop_back();
      if (found) {
        --decisions_;
        return true;
      }
    }
    if (deadline(instance_, g, scheduling_) > t && !(first_decision && root_ && *root_ != n_)) {
      deferred.push_back(g);
      const bool found = place(t, pending, k + 1, deferred, placed_any);
      deferred.pop_back();
      if (found) {
        --decisions_;
        return true;
      }
    }
    --decisions_;
    return false;
  }

  const TemporalInstance& instance_;
  const FairnessConcept& concept_;
  bool scheduling_;
  const SearchOptions& options_;
  std::size_t n_;
  Bundles bundles_;
  TemporalAllocation alloc_;
  std::vector<std::vector<bool>> same_row_;
  std::optional<Choice> root_;
  std::size_t decisions_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchOutcome search(const TemporalInstance& instance, const FairnessConcept& concept_,
                     bool use_scheduling, const SearchOptions& options) {
  const std::size_t m = instance.size();
  const std::size_t n = instance.agents();
  if (m > options.cap_for(n)) {
    throw CapacityError("search over " + std::to_string(m) + " goods exceeds the cap of " +
                        std::to_string(options.cap_for(n)) + " for " + std::to_string(n) +
                        " agents");
  }
  if (concept_.kind == ConceptKind::MMS && m > options.mms_cap) {
    throw CapacityError("maximin share over " + std::to_string(m) + " goods exceeds the cap of " +
                        std::to_string(options.mms_cap));
  }
  SearchOutcome out;
  out.space_bound = 1;
  for (GoodIndex g = 0; g < m; ++g) {
    const Round placements = deadline(instance, g, use_scheduling) - instance.good(g).arrival + 1;
    out.space_bound = saturating_mul(out.space_bound, n);
    out.space_bound = saturating_mul(out.space_bound, static_cast<std::uint64_t>(placements));
  }

  Searcher probe(instance, concept_, use_scheduling, options);
  const std::vector<Choice> roots = probe.root_choices();
  if (roots.empty()) {
    out.exists = probe.run(std::nullopt);
    if (out.exists) out.witness = probe.witness();
    out.nodes_visited = probe.nodes();
    return out;
  }

  struct Branch {
    bool found = false;
    std::uint64_t nodes = 0;
    TemporalAllocation witness;
  };
  auto run_branch = [&](Choice c) {
    Searcher s(instance, concept_, use_scheduling, options);
    Branch b;
    b.found = s.run(c);
    b.nodes = s.nodes();
    if (b.found) b.witness = s.witness();
    return b;
  };

  std::vector<Branch> results;
  if (options.jobs <= 1) {
    for (Choice c : roots) {
      results.push_back(run_branch(c));
      if (results.back().found) break;
    }
  } else {
    for (std::size_t next = 0; next < roots.size(); next += options.jobs) {
      std::vector<std::future<Branch>> batch;
      for (std::size_t k = next; k < std::min(roots.size(), next + options.jobs); ++k) {
        batch.push_back(std::async(std::launch::async, run_branch, roots[k]));
      }
      for (auto& f : batch) results.push_back(f.get());
    }
  }
  for (const Branch& b : results) {
    out.nodes_visited += b.nodes;
    if (b.found) {
      out.exists = true;
      out.witness = b.witness;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

namespace {

Good good(std::string id, Round arrival, std::vector<Rational> values) {
  return Good{std::move(id), arrival, std::move(values)};
}

TemporalInstance identical_days(const std::vector<std::int64_t>& day, Round rounds) {
  std::vector<Good> goods;
  for (Round t = 1; t <= rounds; ++t) {
    for (std::size_t k = 0; k < day.size(); ++k) {
      goods.push_back(good("g" + std::to_string(day[k]) + "_" + std::to_string(t), t,
                           {Rational(day[k]), Rational(day[k])}));
    }
  }
  return TemporalInstance(2, rounds, std::move(goods));
}

}  // namespace

TemporalInstance identical_days_013(Round rounds) { return identical_days({0, 1, 3}, rounds); }

TemporalInstance identical_days_1_3_10(Round rounds) {
  return identical_days({1, 3, 10}, rounds);
}

TemporalInstance genbinary_three_agents() {
  // Values per type: all three agents value it, agents 1-2 only, nobody.
  const std::vector<Rational> all{1, 1, 1};
  const std::vector<Rational> first_two{1, 1, 0};
  const std::vector<Rational> none{0, 0, 0};
  const std::vector<std::vector<Rational>> types{
      first_two, first_two, all, all, none, none, all, all, all, all, first_two, all, first_two};
  std::vector<Good> goods;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const Round arrival = k < 2 ? 1 : static_cast<Round>(k);
    goods.push_back(good("g" + std::to_string(k + 1), arrival, types[k]));
  }
  return TemporalInstance(3, 12, std::move(goods));
}

TemporalInstance pair_then_two(Round rounds) {
  std::vector<Good> goods{good("g1", 1, {1, 1}), good("g2", 1, {1, 1}),
                          good("g3", rounds, {2, 2})};
  return TemporalInstance(2, rounds, std::move(goods), std::max<Round>(rounds - 1, 1));
}

TemporalInstance alpha_value_dependence(const Rational& k) {
  std::vector<Good> goods{good("g1", 1, {1, 1}), good("g2", 1, {1, 1}),
                          good("g3", 2, {1 / k, 1 / k})};
  return TemporalInstance(2, 2, std::move(goods));
}

TemporalInstance scheduling_comparison(Round buffer) {
  std::vector<Good> goods{good("g1", 1, {1, 1}), good("g2", 2, {1, 1}),
                          good("g3", 3, {100, 100}), good("g4", 4, {10, 10})};
  return TemporalInstance(2, 4, std::move(goods), buffer);
}

}  // namespace fixtures

std::vector<Fixture> known_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"a", "no TEFX: two agents, identical days {0,1,3}, T = 3",
                 fixtures::identical_days_013(3), FairnessConcept::efx(), false, false});
  out.push_back({"b", "no TEFX: three agents, generalized binary, 13 goods over 12 rounds",
                 fixtures::genbinary_three_agents(), FairnessConcept::efx(), false, false});
  out.push_back({"c", "no TMMS: two agents, identical days {1,3,10}, T = 3",
                 fixtures::identical_days_1_3_10(3), FairnessConcept::mms(), false, false});
  out.push_back({"d", "no TEFX with scheduling: 1,1 then 2, T = 3, buffer T - 1",
                 fixtures::pair_then_two(3), FairnessConcept::efx(), true, false});
  out.push_back({"e", "no TMMS with scheduling: 1,1 then 2, T = 3, buffer T - 1",
                 fixtures::pair_then_two(3), FairnessConcept::mms(), true, false});
  out.push_back({"f", "no 1/2-TEFX: goods 1,1 then 1/3",
                 fixtures::alpha_value_dependence(Rational(1, 3)),
                 FairnessConcept::alpha_efx(Rational(1, 2)), false, false});
  out.push_back({"g-scheduled", "TEFX exists for 1,1,100,10 with buffer 2",
                 fixtures::scheduling_comparison(2), FairnessConcept::efx(), true, true});
  out.push_back({"g-unscheduled", "no TEFX for 1,1,100,10 without scheduling",
                 fixtures::scheduling_comparison(2), FairnessConcept::efx(), false, false});
  return out;
}

std::vector<FixtureResult> verify_counterexamples(const SearchOptions& options) {
  std::vector<FixtureResult> out;
  for (const Fixture& f : known_fixtures()) {
    FixtureResult r;
    r.name = f.name;
    r.claim = f.claim;
    r.expected_exists = f.expected_exists;
    const auto start = std::chrono::steady_clock::now();
    const SearchOutcome s = search(f.instance, f.concept_, f.use_scheduling, options);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.exists = s.exists;
    r.nodes_visited = s.nodes_visited;
    r.space_bound = s.space_bound;
    if (s.witness) {
      try {
        validate(f.instance, *s.witness);
        if (!f.use_scheduling && s.witness->schedule != Schedule::at_arrival(f.instance)) {
          r.witness_rejected = true;
        }
        const CheckOptions check_options{options.mms_cap};
        if (!check_temporal(f.instance, *s.witness, f.concept_, check_options).holds) {
          r.witness_rejected = true;
        }
      } catch (const Error&) {
        r.witness_rejected = true;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tempfair
