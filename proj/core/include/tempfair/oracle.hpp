#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempfair/fairness.hpp"
#include "tempfair/model.hpp"

namespace tempfair {

struct SearchOptions {
  std::size_t cap_one_agent = 64;
  std::size_t cap_two_agents = 18;
  std::size_t cap_three_agents = 14;
  std::size_t cap_more_agents = 10;
  std::size_t mms_cap = kDefaultMmsCap;
  /// Agents with identical valuation rows whose bundles are both still empty
  /// are interchangeable; only the first of them is tried.
  bool symmetry = true;
  /// Worker threads for the top-level branches. Output does not depend on it.
  unsigned jobs = 1;

  std::size_t cap_for(std::size_t agents) const;
};

struct SearchOutcome {
  bool exists = false;
  std::optional<TemporalAllocation> witness;
  /// Agent assignments tried (one per good-to-agent decision).
  std::uint64_t nodes_visited = 0;
  /// n^m times the number of schedules; saturates at UINT64_MAX.
  std::uint64_t space_bound = 0;
};

/// Depth-first search for an allocation satisfying `concept_` at every round.
/// Goods are assigned in index order and the prefix is checked whenever a
/// round is complete, which is sound because every concept is checked on
/// prefixes only. With `use_scheduling` each good also ranges over its legal
/// placements, earliest first. The first witness in that order is returned.
SearchOutcome search(const TemporalInstance& instance, const FairnessConcept& concept_,
                     bool use_scheduling, const SearchOptions& options = {});

/// A fixed instance together with the verdict the search must reproduce.
struct Fixture {
  std::string name;
  std::string claim;
  TemporalInstance instance;
  FairnessConcept concept_;
  bool use_scheduling = false;
  bool expected_exists = false;
};

struct FixtureResult {
  std::string name;
  std::string claim;
  bool expected_exists = false;
  bool exists = false;
  std::uint64_t nodes_visited = 0;
  std::uint64_t space_bound = 0;
  double seconds = 0.0;
  /// Set when a returned witness failed independent re-checking.
  bool witness_rejected = false;

  bool passed() const { return exists == expected_exists && !witness_rejected; }
};

namespace fixtures {

/// Two agents, identical valuations, each round brings goods worth 0, 1, 3.
TemporalInstance identical_days_013(Round rounds);
/// Three agents, 13 generalized-binary goods over 12 rounds.
TemporalInstance genbinary_three_agents();
/// Two agents, identical valuations, each round brings goods worth 1, 3, 10.
TemporalInstance identical_days_1_3_10(Round rounds);
/// Goods worth 1 and 1 in round 1, empty middle rounds, a good worth 2 in
/// round T; buffer T - 1 (at least 1).
TemporalInstance pair_then_two(Round rounds);
/// Goods worth 1, 1 in round 1 and one good worth 1/k in round 2.
TemporalInstance alpha_value_dependence(const Rational& k);
/// One good per round worth 1, 1, 100, 10 with the given buffer.
TemporalInstance scheduling_comparison(Round buffer);

}  // namespace fixtures

/// The impossibility and comparison fixtures in a fixed order.
std::vector<Fixture> known_fixtures();

/// Runs every fixture through search() and re-checks returned witnesses.
std::vector<FixtureResult> verify_counterexamples(const SearchOptions& options = {});

}  // namespace tempfair
