#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tempfair/model.hpp"

namespace tempfair {

/// A permutation of the agents.
class AgentOrder {
 public:
  /// Throws ParameterError unless `sequence` is a permutation of [0, n).
  explicit AgentOrder(std::vector<AgentIndex> sequence);

  static AgentOrder identity(std::size_t agents);
  static AgentOrder reversed(std::size_t agents);

  std::span<const AgentIndex> sequence() const { return sequence_; }
  std::size_t size() const { return sequence_.size(); }
  AgentIndex operator[](std::size_t position) const { return sequence_[position]; }

 private:
  std::vector<AgentIndex> sequence_;
};

/// One pick of a static procedure.
struct TraceStep {
  std::size_t step = 0;
  AgentIndex agent = 0;
  GoodIndex good = 0;
  std::string rule;
};

using Trace = std::vector<TraceStep>;

enum class PickRule {
  Arbitrary,  // smallest remaining good
  Max,        // the picker's most valuable remaining good
};

/// Agents pick in cyclic `order`, each taking its most valuable remaining
/// good (ties: smallest index). In the second overload `first` is the
/// position in `order` that picks first; on return it holds the position of
/// the next picker, so a caller can carry the pointer across rounds.
Bundles round_robin(const Valuations& valuations, std::span<const GoodIndex> goods,
                    const AgentOrder& order, Trace* trace = nullptr);
Bundles round_robin(const Valuations& valuations, std::span<const GoodIndex> goods,
                    const AgentOrder& order, std::size_t& first, Trace* trace = nullptr);

/// Envy-cycle elimination starting from `start` (empty bundles when omitted).
/// While every agent is envied, the bundles rotate along an envy cycle so that
/// each member receives the bundle it envies. The smallest unenvied agent then
/// receives the next good: the smallest remaining one (Arbitrary) or its own
/// argmax (Max). Envy is measured on the bundles being built, so passing empty
/// `start` bundles gives the per-batch variant.
Bundles envy_cycle_elimination(const Valuations& valuations, std::span<const GoodIndex> goods,
                               PickRule rule, Trace* trace = nullptr);
Bundles envy_cycle_elimination(const Valuations& valuations, std::span<const GoodIndex> goods,
                               PickRule rule, Bundles start, Trace* trace = nullptr);

/// What rr_prime does when the agent whose turn it is owns a copy of every
/// remaining class.
enum class StuckPolicy {
  Throw,  // InfeasibleError
  Skip,   // the turn passes to the next agent that can pick
};

/// Round robin in which no agent may take two goods of one copy class.
/// `copy_class` is parallel to `goods`. With StuckPolicy::Skip an
/// InfeasibleError is raised only when no agent at all can pick.
Bundles rr_prime(const Valuations& valuations, std::span<const GoodIndex> goods,
                 std::span<const std::size_t> copy_class, Trace* trace = nullptr,
                 StuckPolicy policy = StuckPolicy::Throw);

/// Valuations in which every agent uses `source`'s row. Cut-and-choose
/// procedures run envy-cycle elimination on this.
Valuations duplicate_agent(const Valuations& valuations, AgentIndex source);

}  // namespace tempfair
