#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempfair/rational.hpp"

namespace tempfair {

/// Agents are 0-based in the library and 1-based in every text format.
using AgentIndex = std::size_t;
/// Position of a good in TemporalInstance::goods(). Goods are ordered by
/// arrival round, then by their order in the source, so a smaller index is
/// also the "smaller id" used for tie-breaking.
using GoodIndex = std::size_t;
/// Rounds are 1-based. Round 0 is the empty state before anything arrives.
using Round = int;

/// Sorted, duplicate-free list of goods.
using Bundle = std::vector<GoodIndex>;
/// One bundle per agent.
using Bundles = std::vector<Bundle>;

struct Good {
  std::string id;
  Round arrival = 1;
  std::vector<Rational> values;  // one per agent
};

/// Additive valuations of n agents over m goods.
///
/// Next to the exact rationals every agent's row is kept as integers scaled by
/// the lcm of that agent's denominators. Every fairness comparison involves a
/// single agent's valuation and is homogeneous, so the checkers and the
/// exhaustive searches work on the integer rows.
class Valuations {
 public:
  Valuations() = default;
  /// by_agent[i][g] is v_i(g).
  explicit Valuations(std::vector<std::vector<Rational>> by_agent);

  std::size_t agents() const { return agents_; }
  std::size_t goods() const { return goods_; }

  const Rational& value(AgentIndex agent, GoodIndex good) const {
    return values_[agent * goods_ + good];
  }
  std::int64_t scaled(AgentIndex agent, GoodIndex good) const {
    return scaled_[agent * goods_ + good];
  }
  std::int64_t scale(AgentIndex agent) const { return scale_[agent]; }

  Rational bundle_value(AgentIndex agent, std::span<const GoodIndex> bundle) const;
  std::int64_t scaled_bundle_value(AgentIndex agent, std::span<const GoodIndex> bundle) const;

  /// Converts a scaled integer of `agent` back to the exact value.
  Rational unscale(AgentIndex agent, std::int64_t scaled_value) const {
    return Rational(scaled_value, scale_[agent]);
  }

 private:
  std::size_t agents_ = 0;
  std::size_t goods_ = 0;
  std::vector<Rational> values_;
  std::vector<std::int64_t> scaled_;
  std::vector<std::int64_t> scale_;
};

/// Agents, rounds, arriving goods, additive valuations and the scheduling
/// buffer. Buffer 1 is the plain temporal model; buffer T is static division.
class TemporalInstance {
 public:
  TemporalInstance(std::size_t agents, Round rounds, std::vector<Good> goods, Round buffer = 1);

  std::size_t agents() const { return agents_; }
  Round rounds() const { return rounds_; }
  Round buffer() const { return buffer_; }
  std::size_t size() const { return goods_.size(); }

  std::span<const Good> goods() const { return goods_; }
  const Good& good(GoodIndex index) const { return goods_.at(index); }
  const Valuations& valuations() const { return valuations_; }
  const Rational& value(AgentIndex agent, GoodIndex good) const {
    return valuations_.value(agent, good);
  }

  /// Goods arriving in `round`, in index order.
  std::span<const GoodIndex> arrivals(Round round) const;
  std::optional<GoodIndex> find(std::string_view id) const;
  /// Like find() but throws InvalidReference.
  GoodIndex index_of(std::string_view id) const;

  TemporalInstance with_buffer(Round buffer) const;

 private:
  std::size_t agents_;
  Round rounds_;
  Round buffer_;
  std::vector<Good> goods_;
  Valuations valuations_;
  std::vector<std::vector<GoodIndex>> arrivals_;
  std::unordered_map<std::string, GoodIndex> by_id_;
};

/// Placed round of every good.
struct Schedule {
  std::vector<Round> placement;

  /// Every good placed in its arrival round.
  static Schedule at_arrival(const TemporalInstance& instance);
  bool operator==(const Schedule&) const = default;
};

struct TemporalAllocation {
  Schedule schedule;
  std::vector<AgentIndex> owner;

  bool operator==(const TemporalAllocation&) const = default;
};

/// v_i(S) for goods named by id. Throws InvalidReference on an unknown id.
Rational bundle_value(const TemporalInstance& instance, AgentIndex agent,
                      std::span<const std::string> bundle);

/// Throws ValidationError unless `alloc` is a complete partition whose
/// placements respect arrival rounds, the horizon and the buffer.
void validate(const TemporalInstance& instance, const TemporalAllocation& alloc);

/// A^t: for each agent the goods it owns that are placed in rounds <= t.
Bundles prefix(const TemporalInstance& instance, const TemporalAllocation& alloc, Round t);

/// Places `good` at arrival + delay - 1. Delay 1 is the identity.
Schedule apply_delay(const TemporalInstance& instance, const Schedule& schedule, GoodIndex good,
                     Round delay);

struct SettingClass {
  bool identical_days = false;
  bool generalized_binary = false;
  /// The single positive level b; empty when every value is zero.
  std::optional<Rational> binary_level;
  bool bi_valued = false;
  std::optional<Rational> low_value;
  std::optional<Rational> high_value;
  bool identical_valuation = false;
  bool house_allocation_shape = false;
  bool all_positive = false;
  /// No goods at all: every flag holds vacuously.
  bool vacuous = false;
};

SettingClass classify(const TemporalInstance& instance);

/// Day position of each good under identical days: goods of every round are
/// sorted by (value vector, index) and a good's class is its rank. Equal
/// ranks across rounds are value-identical copies. Throws SettingError when
/// the instance is not identical-days.
std::vector<std::size_t> day_positions(const TemporalInstance& instance);

}  // namespace tempfair
