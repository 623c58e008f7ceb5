#include "tempfair/static_alloc.hpp"

#include <algorithm>
#include <optional>

#include "tempfair/errors.hpp"

namespace tempfair {

namespace {

void record(Trace* trace, AgentIndex agent, GoodIndex good, const char* rule) {
  if (trace) trace->push_back({trace->size() + 1, agent, good, rule});
}

// Position in `remaining` of the agent's most valuable good, smallest index on ties.
std::size_t favourite(const Valuations& valuations, AgentIndex agent,
                      const std::vector<GoodIndex>& remaining) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < remaining.size(); ++k) {
    const std::int64_t a = valuations.scaled(agent, remaining[k]);
    const std::int64_t b = valuations.scaled(agent, remaining[best]);
    if (a > b || (a == b && remaining[k] < remaining[best])) best = k;
  }
  return best;
}

void sort_bundles(Bundles& bundles) {
  for (auto& b : bundles) std::sort(b.begin(), b.end());
}

// envies[i][j]: agent i strictly prefers bundle j to its own.
std::vector<std::vector<bool>> envy_graph(const Valuations& valuations, const Bundles& bundles) {
  const std::size_t n = bundles.size();
  std::vector<std::vector<bool>> envies(n, std::vector<bool>(n, false));
  for (AgentIndex i = 0; i < n; ++i) {
    const std::int64_t own = valuations.scaled_bundle_value(i, bundles[i]);
    for (AgentIndex j = 0; j < n; ++j) {
      envies[i][j] = i != j && valuations.scaled_bundle_value(i, bundles[j]) > own;
    }
  }
  return envies;
}

std::optional<AgentIndex> smallest_unenvied(const std::vector<std::vector<bool>>& envies) {
  const std::size_t n = envies.size();
  for (AgentIndex j = 0; j < n; ++j) {
    bool envied = false;
    for (AgentIndex i = 0; i < n && !envied; ++i) envied = envies[i][j];
    if (!envied) return j;
  }
  return std::nullopt;
}

// Every agent is envied. Walk from agent 0 to the smallest agent envying the
// current one until an agent repeats, then hand each cycle member the bundle
// it envies.
void rotate_envy_cycle(const std::vector<std::vector<bool>>& envies, Bundles& bundles) {
  const std::size_t n = envies.size();
  std::vector<std::size_t> seen_at(n, n);
  std::vector<AgentIndex> walk;
  AgentIndex current = 0;
  while (seen_at[current] == n) {
    seen_at[current] = walk.size();
    walk.push_back(current);
    AgentIndex next = n;
    for (AgentIndex i = 0; i < n; ++i) {
      if (envies[i][current]) {
        next = i;
        break;
      }
    }
    if (next == n) throw InternalError("envy cycle search reached an unenvied agent");
    current = next;
  }
  std::vector<AgentIndex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[current]),
                                walk.end());
  // cycle[k + 1] envies cycle[k] and receives its bundle.
  Bundles old(cycle.size());
  for (std::size_t k = 0; k < cycle.size(); ++k) old[k] = std::move(bundles[cycle[k]]);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    bundles[cycle[(k + 1) % cycle.size()]] = std::move(old[k]);
  }
}

}  // namespace

AgentOrder::AgentOrder(std::vector<AgentIndex> sequence) : sequence_(std::move(sequence)) {
  std::vector<bool> seen(sequence_.size(), false);
  for (AgentIndex a : sequence_) {
    if (a >= sequence_.size() || seen[a]) throw ParameterError("agent order is not a permutation");
    seen[a] = true;
  }
}

AgentOrder AgentOrder::identity(std::size_t agents) {
  std::vector<AgentIndex> s(agents);
  for (std::size_t k = 0; k < agents; ++k) s[k] = k;
  return AgentOrder(std::move(s));
}

AgentOrder AgentOrder::reversed(std::size_t agents) {
  std::vector<AgentIndex> s(agents);
  for (std::size_t k = 0; k < agents; ++k) s[k] = agents - 1 - k;
  return AgentOrder(std::move(s));
}

Bundles round_robin(const Valuations& valuations, std::span<const GoodIndex> goods,
                    const AgentOrder& order, Trace* trace) {
  std::size_t first = 0;
  return round_robin(valuations, goods, order, first, trace);
}

Bundles round_robin(const Valuations& valuations, std::span<const GoodIndex> goods,
                    const AgentOrder& order, std::size_t& first, Trace* trace) {
  if (order.size() != valuations.agents()) {
    throw ParameterError("agent order length differs from the number of agents");
  }
  Bundles bundles(order.size());
  std::vector<GoodIndex> remaining(goods.begin(), goods.end());
  while (!remaining.empty()) {
    const AgentIndex agent = order[first];
    const std::size_t pick = favourite(valuations, agent, remaining);
    bundles[agent].push_back(remaining[pick]);
    record(trace, agent, remaining[pick], "rr");
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    first = (first + 1) % order.size();
  }
  sort_bundles(bundles);
  return bundles;
}

Bundles envy_cycle_elimination(const Valuations& valuations, std::span<const GoodIndex> goods,
                               PickRule rule, Trace* trace) {
  return envy_cycle_elimination(valuations, goods, rule, Bundles(valuations.agents()), trace);
}

Bundles envy_cycle_elimination(const Valuations& valuations, std::span<const GoodIndex> goods,
                               PickRule rule, Bundles start, Trace* trace) {
  if (start.size() != valuations.agents()) {
    throw ParameterError("envy-cycle elimination needs one start bundle per agent");
  }
  Bundles bundles = std::move(start);
  std::vector<GoodIndex> remaining(goods.begin(), goods.end());
  std::sort(remaining.begin(), remaining.end());
  const char* name = rule == PickRule::Max ? "max-ece" : "ece";
  while (!remaining.empty()) {
    std::optional<AgentIndex> picker;
    // Each rotation strictly raises the members' values, so this terminates.
    for (;;) {
      const auto envies = envy_graph(valuations, bundles);
      picker = smallest_unenvied(envies);
      if (picker) break;
      rotate_envy_cycle(envies, bundles);
    }
    const std::size_t pick = rule == PickRule::Max ? favourite(valuations, *picker, remaining) : 0;
    bundles[*picker].push_back(remaining[pick]);
    record(trace, *picker, remaining[pick], name);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  sort_bundles(bundles);
  return bundles;
}

Bundles rr_prime(const Valuations& valuations, std::span<const GoodIndex> goods,
                 std::span<const std::size_t> copy_class, Trace* trace, StuckPolicy policy) {
  if (copy_class.size() != goods.size()) {
    throw ParameterError("rr_prime needs one copy class per good");
  }
  const std::size_t n = valuations.agents();
  Bundles bundles(n);
  std::vector<std::vector<std::size_t>> owned(n);
  std::vector<std::size_t> remaining(goods.size());
  for (std::size_t k = 0; k < goods.size(); ++k) remaining[k] = k;

  auto eligible_pick = [&](AgentIndex agent) {
    std::optional<std::size_t> best;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      const std::size_t k = remaining[pos];
      if (std::find(owned[agent].begin(), owned[agent].end(), copy_class[k]) !=
          owned[agent].end()) {
        continue;
      }
      if (!best) {
        best = pos;
        continue;
      }
      const std::size_t b = remaining[*best];
      const std::int64_t vk = valuations.scaled(agent, goods[k]);
      const std::int64_t vb = valuations.scaled(agent, goods[b]);
      if (vk > vb || (vk == vb && goods[k] < goods[b])) best = pos;
    }
    return best;
  };

  AgentIndex agent = 0;
  while (!remaining.empty()) {
    std::optional<std::size_t> best = eligible_pick(agent);
    if (!best && policy == StuckPolicy::Skip) {
      for (std::size_t tries = 1; tries < n && !best; ++tries) {
        agent = (agent + 1) % n;
        best = eligible_pick(agent);
      }
    }
    if (!best) {
      throw InfeasibleError("agent " + std::to_string(agent + 1) +
                            " already holds a copy of every remaining good");
    }
    const std::size_t k = remaining[*best];
    bundles[agent].push_back(goods[k]);
    owned[agent].push_back(copy_class[k]);
    record(trace, agent, goods[k], "rr-prime");
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*best));
    agent = (agent + 1) % n;
  }
  sort_bundles(bundles);
  return bundles;
}

Valuations duplicate_agent(const Valuations& valuations, AgentIndex source) {
  if (source >= valuations.agents()) throw InvalidReference("agent index out of range");
  std::vector<Rational> row(valuations.goods());
  for (GoodIndex g = 0; g < valuations.goods(); ++g) row[g] = valuations.value(source, g);
  return Valuations(std::vector<std::vector<Rational>>(valuations.agents(), row));
}

}  // namespace tempfair
