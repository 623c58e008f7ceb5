#include "tempfair/temporal.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <queue>

#include "tempfair/errors.hpp"

namespace tempfair {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw SettingError(message);
}

void record(Trace* trace, AgentIndex agent, GoodIndex good, const char* rule) {
  if (trace) trace->push_back({trace->size() + 1, agent, good, rule});
}

// Appends `local` to `trace`, renumbering steps and mapping good indices.
void merge_trace(Trace* trace, const Trace& local, std::span<const GoodIndex> to_global) {
  if (!trace) return;
  for (const TraceStep& s : local) {
    trace->push_back({trace->size() + 1, s.agent, to_global[s.good], s.rule});
  }
}

TemporalAllocation unassigned(const TemporalInstance& instance) {
  return {Schedule::at_arrival(instance), std::vector<AgentIndex>(instance.size(), 0)};
}

void give(TemporalAllocation& alloc, const Bundles& bundles) {
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    for (GoodIndex g : bundles[i]) alloc.owner[g] = i;
  }
}

std::vector<GoodIndex> arrivals_between(const TemporalInstance& instance, Round from, Round to) {
  std::vector<GoodIndex> out;
  for (Round t = std::max(from, 1); t <= std::min(to, instance.rounds()); ++t) {
    auto a = instance.arrivals(t);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

void place_all(TemporalAllocation& alloc, std::span<const GoodIndex> goods, Round round) {
  for (GoodIndex g : goods) alloc.schedule.placement[g] = round;
}

bool is_positive(const Rational& v) { return v > Rational(0); }

// Valuations restricted to `goods`, column k being goods[k].
Valuations restrict_columns(const TemporalInstance& instance, std::span<const GoodIndex> goods) {
  std::vector<std::vector<Rational>> rows(instance.agents(), std::vector<Rational>(goods.size()));
  for (AgentIndex i = 0; i < instance.agents(); ++i) {
    for (std::size_t k = 0; k < goods.size(); ++k) rows[i][k] = instance.value(i, goods[k]);
  }
  return Valuations(std::move(rows));
}

Bundles to_global(const Bundles& local, std::span<const GoodIndex> goods) {
  Bundles out(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (GoodIndex k : local[i]) out[i].push_back(goods[k]);
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

// Goods of `round` ordered by day position, so every day is processed alike.
std::vector<GoodIndex> by_position(const TemporalInstance& instance, Round round,
                                   const std::vector<std::size_t>& position) {
  auto a = instance.arrivals(round);
  std::vector<GoodIndex> goods(a.begin(), a.end());
  std::sort(goods.begin(), goods.end(),
            [&](GoodIndex x, GoodIndex y) { return position[x] < position[y]; });
  return goods;
}

std::int64_t scaled_sum(const Valuations& v, AgentIndex agent, const Bundle& bundle) {
  return v.scaled_bundle_value(agent, bundle);
}

}  // namespace

// ---------------------------------------------------------------------------
// House allocation, T = 3

TemporalAllocation tef1_house_t3(const TemporalInstance& instance, Trace* trace) {
  const SettingClass s = classify(instance);
  require(instance.rounds() == 3, "house allocation solver needs exactly T = 3 rounds");
  require(s.house_allocation_shape, "house allocation: every round must bring exactly n goods");
  require(s.identical_days, "identical days: rounds must carry the same multiset of values");
  const std::size_t n = instance.agents();
  const auto position = day_positions(instance);
  TemporalAllocation alloc = unassigned(instance);

  const auto pool = arrivals_between(instance, 1, 2);
  const Bundles pairs = round_robin(instance.valuations(), pool, AgentOrder::identity(n), trace);

  // Vertices are the 2n pooled goods. Each has one pair edge (the other good
  // of its holder) and one copy edge (the same day position on the other day).
  std::vector<GoodIndex> partner_pair(instance.size());
  std::vector<AgentIndex> holder(instance.size());
  for (AgentIndex i = 0; i < n; ++i) {
    if (pairs[i].size() != 2) throw InternalError("round robin did not hand out pairs");
    partner_pair[pairs[i][0]] = pairs[i][1];
    partner_pair[pairs[i][1]] = pairs[i][0];
    holder[pairs[i][0]] = holder[pairs[i][1]] = i;
  }
  std::vector<GoodIndex> copy_of(instance.size());
  std::vector<GoodIndex> first_day_at(n);
  for (GoodIndex g : instance.arrivals(1)) first_day_at[position[g]] = g;
  for (GoodIndex g : instance.arrivals(2)) {
    copy_of[g] = first_day_at[position[g]];
    copy_of[first_day_at[position[g]]] = g;
  }

  std::vector<int> colour(instance.size(), -1);
  std::vector<GoodIndex> sorted_pool = pool;
  std::sort(sorted_pool.begin(), sorted_pool.end());
  for (GoodIndex root : sorted_pool) {
    if (colour[root] != -1) continue;
    colour[root] = 0;
    std::queue<GoodIndex> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const GoodIndex g = frontier.front();
      frontier.pop();
      for (GoodIndex h : {partner_pair[g], copy_of[g]}) {
        if (h == g) continue;
        if (colour[h] == -1) {
          colour[h] = 1 - colour[g];
          frontier.push(h);
        } else if (colour[h] == colour[g]) {
          throw InternalError("pair/copy graph is not bipartite");
        }
      }
    }
  }

  // Colour 0 holds one good per agent and one per copy pair. Its holder takes
  // the round-1 copy, the other holder the round-2 copy.
  for (GoodIndex x : instance.arrivals(1)) {
    const GoodIndex y = copy_of[x];
    const GoodIndex chosen = colour[x] == 0 ? x : y;
    const GoodIndex other = chosen == x ? y : x;
    alloc.owner[x] = holder[chosen];
    alloc.owner[y] = holder[other];
  }
  for (AgentIndex i = 0; i < n; ++i) {
    std::size_t first_round = 0;
    for (GoodIndex g : instance.arrivals(1)) first_round += alloc.owner[g] == i ? 1 : 0;
    if (first_round != 1) throw InternalError("round-1 selection is not one good per agent");
  }

  const auto last = instance.arrivals(3);
  give(alloc, round_robin(instance.valuations(), last, AgentOrder::reversed(n), trace));
  return alloc;
}

// ---------------------------------------------------------------------------
// Generalized binary

TemporalAllocation tefx_genbinary_two(const TemporalInstance& instance, Trace* trace) {
  require(instance.agents() == 2, "this solver needs exactly two agents");
  const SettingClass s = classify(instance);
  require(s.generalized_binary, "generalized binary: every value must be 0 or one common b");
  TemporalAllocation alloc = unassigned(instance);
  const Round never = instance.rounds() + 1;
  std::array<Round, 2> first_exclusive{never, never};
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    const bool a = is_positive(instance.value(0, g));
    const bool b = is_positive(instance.value(1, g));
    if (a && !b && first_exclusive[0] == never) first_exclusive[0] = instance.good(g).arrival;
    if (!a && b && first_exclusive[1] == never) first_exclusive[1] = instance.good(g).arrival;
  }
  AgentIndex next_shared = 0;
  AgentIndex zero_sink = 1;
  if (first_exclusive[0] < first_exclusive[1]) {
    next_shared = 1;
    zero_sink = 0;
  }
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    const bool a = is_positive(instance.value(0, g));
    const bool b = is_positive(instance.value(1, g));
    AgentIndex to = 0;
    const char* rule = "";
    if (!a && !b) {
      to = zero_sink;
      rule = "zero";
    } else if (a != b) {
      to = a ? 0 : 1;
      rule = "exclusive";
    } else {
      to = next_shared;
      next_shared = 1 - next_shared;
      rule = "alternate";
    }
    alloc.owner[g] = to;
    record(trace, to, g, rule);
  }
  return alloc;
}

TemporalAllocation tefx_genbinary_identical(const TemporalInstance& instance, Trace* trace) {
  const SettingClass s = classify(instance);
  require(s.generalized_binary, "generalized binary: every value must be 0 or one common b");
  require(s.identical_valuation, "identical valuation: every agent must value each good alike");
  const std::size_t n = instance.agents();
  TemporalAllocation alloc = unassigned(instance);
  AgentIndex next = 0;
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    if (is_positive(instance.value(0, g))) {
      alloc.owner[g] = next;
      record(trace, next, g, "cycle");
      next = (next + 1) % n;
    } else {
      alloc.owner[g] = n - 1;
      record(trace, n - 1, g, "zero");
    }
  }
  return alloc;
}

namespace {

// Poorest-valuer assignment for generalized binary values. The procedure
// leaves ties open; they are settled by a bounded depth-first search that
// tries the safest tied agent first and backtracks when a completed round
// breaks 1/2-EFX. The first leaf is the plain greedy run, which is returned
// when the budget runs out.
class PoorestValuer {
 public:
  static constexpr std::uint64_t kBudget = 200000;

  explicit PoorestValuer(const TemporalInstance& instance)
      : instance_(instance),
        v_(instance.valuations()),
        n_(instance.agents()),
        own_(n_, 0),
        bundles_(n_),
        owner_(instance.size(), 0),
        concept_(FairnessConcept::alpha_efx(Rational(1, 2))) {
    auto fans = [&](GoodIndex g) {
      std::size_t count = 0;
      for (AgentIndex i = 0; i < n_; ++i) count += v_.scaled(i, g) > 0 ? 1 : 0;
      return count;
    };
    for (Round t = 1; t <= instance.rounds(); ++t) {
      auto a = instance.arrivals(t);
      std::vector<GoodIndex> goods(a.begin(), a.end());
      // Goods that fewer agents value go first.
      std::stable_sort(goods.begin(), goods.end(),
                       [&](GoodIndex x, GoodIndex y) { return fans(x) < fans(y); });
      order_.insert(order_.end(), goods.begin(), goods.end());
      round_end_.push_back(order_.size());
    }
  }

  TemporalAllocation run(Trace* trace) {
    greedy_ = true;
    descend(0, 0);
    const std::vector<AgentIndex> plain = owner_;
    const std::vector<std::optional<std::size_t>> plain_served = first_served_;
    greedy_ = false;
    visited_ = 0;
    std::fill(first_served_.begin(), first_served_.end(), std::nullopt);
    if (descend(0, 0)) return finish(owner_, first_served_, trace);
    return finish(plain, plain_served, trace);
  }

 private:
  // Giving g to i is unsafe when an agent that owns nothing it values would
  // then envy i while i holds a good worth zero to it.
  bool unsafe(AgentIndex i, GoodIndex g) const {
    for (AgentIndex j = 0; j < n_; ++j) {
      if (j == i || own_[j] > 0) continue;
      bool has_zero = v_.scaled(j, g) == 0;
      std::int64_t seen = v_.scaled(j, g);
      for (GoodIndex h : bundles_[i]) {
        seen += v_.scaled(j, h);
        has_zero = has_zero || v_.scaled(j, h) == 0;
      }
      if (seen > 0 && has_zero) return true;
    }
    return false;
  }

  std::vector<AgentIndex> candidates(GoodIndex g) const {
    std::optional<std::int64_t> least;
    for (AgentIndex i = 0; i < n_; ++i) {
      if (v_.scaled(i, g) > 0 && (!least || own_[i] < *least)) least = own_[i];
    }
    std::vector<AgentIndex> safe;
    std::vector<AgentIndex> risky;
    if (!least) return safe;
    for (AgentIndex i = 0; i < n_; ++i) {
      if (v_.scaled(i, g) == 0 || own_[i] != *least) continue;
      (unsafe(i, g) ? risky : safe).push_back(i);
    }
    safe.insert(safe.end(), risky.begin(), risky.end());
    return safe;
  }

  bool descend(std::size_t k, std::size_t round) {
    while (round < round_end_.size() && round_end_[round] == k) {
      // Zero goods join later; they cannot repair a failing prefix.
      if (!greedy_ && !check(v_, bundles_, concept_).holds) return false;
      ++round;
    }
    if (k == order_.size()) return true;
    const GoodIndex g = order_[k];
    const std::vector<AgentIndex> options = candidates(g);
    if (options.empty()) {
      owner_[g] = kZeroGood;
      return descend(k + 1, round);
    }
    for (AgentIndex i : options) {
      if (visited_ >= kBudget) break;
      ++visited_;
      owner_[g] = i;
      const bool fresh = !first_served_[i].has_value();
      if (fresh) first_served_[i] = k;
      own_[i] += v_.scaled(i, g);
      bundles_[i].push_back(g);
      const bool found = descend(k + 1, round);
      bundles_[i].pop_back();
      own_[i] -= v_.scaled(i, g);
      if (found) return true;
      if (fresh) first_served_[i].reset();
    }
    return false;
  }

  TemporalAllocation finish(const std::vector<AgentIndex>& owner,
                            const std::vector<std::optional<std::size_t>>& first_served,
                            Trace* trace) const {
    TemporalAllocation alloc = unassigned(instance_);
    // `last`: the agent served most recently for the first time, replaced by
    // the largest agent never served.
    std::optional<AgentIndex> last;
    std::optional<std::size_t> latest;
    for (AgentIndex i = 0; i < n_; ++i) {
      if (first_served[i] && (!latest || *first_served[i] > *latest)) {
        latest = first_served[i];
        last = i;
      }
    }
    for (AgentIndex i = 0; i < n_; ++i) {
      if (!first_served[i]) last = i;
    }
    std::vector<GoodIndex> zeros;
    for (GoodIndex g : order_) {
      if (owner[g] == kZeroGood) {
        zeros.push_back(g);
        continue;
      }
      alloc.owner[g] = owner[g];
      record(trace, owner[g], g, "poorest");
    }
    for (GoodIndex g : zeros) {
      alloc.owner[g] = last.value_or(0);
      record(trace, alloc.owner[g], g, "zero-to-last");
    }
    return alloc;
  }

  static constexpr AgentIndex kZeroGood = static_cast<AgentIndex>(-1);

  const TemporalInstance& instance_;
  const Valuations& v_;
  std::size_t n_;
  std::vector<std::int64_t> own_;
  Bundles bundles_;
  std::vector<AgentIndex> owner_;
  std::vector<std::optional<std::size_t>> first_served_ = std::vector<std::optional<std::size_t>>(n_);
  bool greedy_ = false;
  std::vector<GoodIndex> order_;
  std::vector<std::size_t> round_end_;
  FairnessConcept concept_;
  std::uint64_t visited_ = 0;
};

}  // namespace

TemporalAllocation half_tefx_genbinary(const TemporalInstance& instance, Trace* trace) {
  const SettingClass s = classify(instance);
  require(s.generalized_binary, "generalized binary: every value must be 0 or one common b");
  return PoorestValuer(instance).run(trace);
}

// ---------------------------------------------------------------------------
// Positive values, per-round MAX-ECE

namespace {

// The first n goods form one batch in which every agent gets exactly one
// good. Every later round is divided by its own MAX-ECE run, envy and
// rotations involving only the parts handed out in that round. Any unenvied
// agent may pick; the choice is made by a bounded depth-first search that
// backtracks when a completed round breaks the per-agent bound. Agents that
// nobody envies cumulatively are tried first. The first leaf is returned when
// the budget runs out.
class RoundwiseMaxEce {
 public:
  static constexpr std::uint64_t kBudget = 200000;

  explicit RoundwiseMaxEce(const TemporalInstance& instance)
      : instance_(instance),
        v_(instance.valuations()),
        n_(instance.agents()),
        concept_(FairnessConcept::alpha_efx_per_agent(alpha_general_bound(instance))) {}

  TemporalAllocation run(Trace* trace) {
    std::vector<TraceStep> steps;
    std::size_t missing = n_;
    batch_.assign(static_cast<std::size_t>(instance_.rounds()) + 1, {});
    // Batch: agents without a good pick their favourite in index order.
    for (Round t = 1; t <= instance_.rounds(); ++t) {
      auto a = instance_.arrivals(t);
      std::vector<GoodIndex> rest(a.begin(), a.end());
      while (missing > 0 && !rest.empty()) {
        const AgentIndex picker = n_ - missing;
        const std::size_t best = favourite(picker, rest);
        batch_[static_cast<std::size_t>(t)].push_back({picker, rest[best]});
        steps.push_back({0, picker, rest[best], "batch"});
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
        --missing;
      }
      leftovers_.push_back(std::move(rest));
    }
    path_ = steps;
    greedy_ = true;
    descend(1, with_batch(Bundles(n_), 1), Bundles(n_), leftovers_[0]);
    const auto plain = result_;
    const auto plain_steps = result_steps_;
    greedy_ = false;
    visited_ = 0;
    path_ = steps;
    const bool found = descend(1, with_batch(Bundles(n_), 1), Bundles(n_), leftovers_[0]);
    const Bundles& final_bundles = found ? result_ : plain;
    const std::vector<TraceStep>& final_steps = found ? result_steps_ : plain_steps;

    TemporalAllocation alloc = unassigned(instance_);
    give(alloc, final_bundles);
    if (trace) {
      for (const TraceStep& s : final_steps) record(trace, s.agent, s.good, s.rule.c_str());
    }
    return alloc;
  }

 private:
  std::size_t favourite(AgentIndex agent, const std::vector<GoodIndex>& goods) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < goods.size(); ++k) {
      if (v_.scaled(agent, goods[k]) > v_.scaled(agent, goods[best])) best = k;
    }
    return best;
  }

  Bundles with_batch(Bundles b, Round t) const {
    for (const auto& [agent, good] : batch_[static_cast<std::size_t>(t)]) b[agent].push_back(good);
    return b;
  }

  bool envies(const Bundles& b, AgentIndex i, AgentIndex j) const {
    return v_.scaled_bundle_value(i, b[j]) > v_.scaled_bundle_value(i, b[i]);
  }

  bool envied(const Bundles& b, AgentIndex j) const {
    for (AgentIndex i = 0; i < n_; ++i) {
      if (i != j && envies(b, i, j)) return true;
    }
    return false;
  }

  // Rotates round parts along envy cycles until some part is unenvied. The
  // cycle is found by walking from agent 0 to the smallest agent envying the
  // current one.
  void settle(Bundles& parts) const {
    for (;;) {
      for (AgentIndex j = 0; j < n_; ++j) {
        if (!envied(parts, j)) return;
      }
      std::vector<std::size_t> seen(n_, n_);
      std::vector<AgentIndex> walk;
      AgentIndex cur = 0;
      while (seen[cur] == n_) {
        seen[cur] = walk.size();
        walk.push_back(cur);
        AgentIndex next = n_;
        for (AgentIndex i = 0; i < n_ && next == n_; ++i) {
          if (i != cur && envies(parts, i, cur)) next = i;
        }
        cur = next;
      }
      std::vector<AgentIndex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen[cur]),
                                    walk.end());
      Bundles old(cycle.size());
      for (std::size_t k = 0; k < cycle.size(); ++k) old[k] = parts[cycle[k]];
      for (std::size_t k = 0; k < cycle.size(); ++k) parts[cycle[(k + 1) % cycle.size()]] = old[k];
    }
  }

  bool descend(Round t, const Bundles& before, Bundles parts, std::vector<GoodIndex> remaining) {
    if (remaining.empty()) {
      Bundles now = before;
      for (AgentIndex i = 0; i < n_; ++i) now[i].insert(now[i].end(), parts[i].begin(), parts[i].end());
      if (!greedy_ && !check(v_, now, concept_).holds) return false;
      if (t == instance_.rounds()) {
        result_ = now;
        result_steps_ = path_;
        return true;
      }
      return descend(t + 1, with_batch(std::move(now), t + 1), Bundles(n_),
                     leftovers_[static_cast<std::size_t>(t)]);
    }
    settle(parts);
    Bundles now = before;
    for (AgentIndex i = 0; i < n_; ++i) now[i].insert(now[i].end(), parts[i].begin(), parts[i].end());
    std::vector<AgentIndex> calm;
    std::vector<AgentIndex> other;
    for (AgentIndex j = 0; j < n_; ++j) {
      if (envied(parts, j)) continue;
      (envied(now, j) ? other : calm).push_back(j);
    }
    calm.insert(calm.end(), other.begin(), other.end());
    for (AgentIndex picker : calm) {
      if (visited_ >= kBudget) break;
      ++visited_;
      const std::size_t best = favourite(picker, remaining);
      Bundles next_parts = parts;
      next_parts[picker].push_back(remaining[best]);
      std::vector<GoodIndex> next_remaining = remaining;
      next_remaining.erase(next_remaining.begin() + static_cast<std::ptrdiff_t>(best));
      path_.push_back({0, picker, remaining[best], "max-ece"});
      const bool found = descend(t, before, std::move(next_parts), std::move(next_remaining));
      path_.pop_back();
      if (found || greedy_) return found;
    }
    return false;
  }

  const TemporalInstance& instance_;
  const Valuations& v_;
  std::size_t n_;
  FairnessConcept concept_;
  std::vector<std::vector<GoodIndex>> leftovers_;
  std::vector<std::vector<std::pair<AgentIndex, GoodIndex>>> batch_;
  std::vector<TraceStep> path_;
  Bundles result_;
  std::vector<TraceStep> result_steps_;
  bool greedy_ = false;
  std::uint64_t visited_ = 0;
};

}  // namespace

TemporalAllocation alpha_tefx_general(const TemporalInstance& instance, Trace* trace) {
  const SettingClass s = classify(instance);
  require(s.all_positive, "every agent must value every good positively");
  return RoundwiseMaxEce(instance).run(trace);
}

// ---------------------------------------------------------------------------
// Identical days, two agents, cut and choose

TemporalAllocation half_tefx_identical_days_two(const TemporalInstance& instance, Trace* trace) {
  require(instance.agents() == 2, "this solver needs exactly two agents");
  require(classify(instance).identical_days,
          "identical days: rounds must carry the same multiset of values");
  const auto position = day_positions(instance);
  TemporalAllocation alloc = unassigned(instance);
  for (Round t = 1; t <= instance.rounds(); ++t) {
    const auto goods = by_position(instance, t, position);
    const AgentIndex cutter = t % 2 == 1 ? 0 : 1;
    const AgentIndex chooser = 1 - cutter;
    const Valuations local = restrict_columns(instance, goods);
    Trace local_trace;
    std::vector<GoodIndex> columns(goods.size());
    std::iota(columns.begin(), columns.end(), 0);
    const Bundles parts = envy_cycle_elimination(duplicate_agent(local, cutter), columns, PickRule::Max,
                                   trace ? &local_trace : nullptr);
    merge_trace(trace, local_trace, goods);
    const Bundles global = to_global(parts, goods);
    const auto& v = instance.valuations();
    // The chooser takes the part it weakly prefers; ties go to part 0.
    const bool chooser_takes_first =
        scaled_sum(v, chooser, global[0]) >= scaled_sum(v, chooser, global[1]);
    Bundles assigned(2);
    assigned[chooser] = chooser_takes_first ? global[0] : global[1];
    assigned[cutter] = chooser_takes_first ? global[1] : global[0];
    give(alloc, assigned);
  }
  return alloc;
}

// ---------------------------------------------------------------------------
// Identical valuations, poorest agent

TemporalAllocation alpha_tefx_identical_valuation(const TemporalInstance& instance,
                                                  Trace* trace) {
  require(classify(instance).identical_valuation,
          "identical valuation: every agent must value each good alike");
  const std::size_t n = instance.agents();
  const Valuations& v = instance.valuations();
  TemporalAllocation alloc = unassigned(instance);
  std::vector<std::int64_t> total(n, 0);
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    if (v.scaled(0, g) == 0) {
      alloc.owner[g] = n - 1;
      record(trace, n - 1, g, "zero");
      continue;
    }
    const AgentIndex pick =
        static_cast<AgentIndex>(std::min_element(total.begin(), total.end()) - total.begin());
    total[pick] += v.scaled(0, g);
    alloc.owner[g] = pick;
    record(trace, pick, g, "poorest");
  }
  return alloc;
}

// ---------------------------------------------------------------------------
// Bi-valued round robin

TemporalAllocation rr_bivalued(const TemporalInstance& instance, Trace* trace) {
  require(classify(instance).bi_valued,
          "bi-valued: every value must be one of two positive constants");
  const std::size_t n = instance.agents();
  TemporalAllocation alloc = unassigned(instance);
  std::size_t pointer = 0;
  const AgentOrder order = AgentOrder::identity(n);
  for (Round t = 1; t <= instance.rounds(); ++t) {
    give(alloc, round_robin(instance.valuations(), instance.arrivals(t), order, pointer, trace));
  }
  return alloc;
}

// ---------------------------------------------------------------------------
// Identical days with scheduling, TEF1

Round scheduled_tef1_required_buffer(const TemporalInstance& instance) {
  const Round half = static_cast<Round>((instance.agents() + 1) / 2);
  return std::min(half, instance.rounds());
}

TemporalAllocation tef1_identical_days_scheduled(const TemporalInstance& instance,
                                                 Trace* trace) {
  require(classify(instance).identical_days,
          "identical days: rounds must carry the same multiset of values");
  const Round needed = scheduled_tef1_required_buffer(instance);
  if (instance.buffer() < needed) {
    throw BufferViolation("this solver needs buffer >= min(ceil(n/2), T) = " +
                          std::to_string(needed) + ", got " + std::to_string(instance.buffer()));
  }
  const std::size_t n = instance.agents();
  const Round block = static_cast<Round>(n);
  const Round half = static_cast<Round>((n + 1) / 2);
  const Round rounds = instance.rounds();
  const auto position = day_positions(instance);
  TemporalAllocation alloc = unassigned(instance);
  // owns[i][c]: agent i holds a copy of day position c within the current block.
  for (Round start = 1; start + block - 1 <= rounds; start += block) {
    const Round mid = start + half - 1;
    const Round end = start + block - 1;
    const auto first = arrivals_between(instance, start, mid);
    std::vector<std::size_t> classes;
    for (GoodIndex g : first) classes.push_back(position[g]);
    const Bundles picked =
        rr_prime(instance.valuations(), first, classes, trace, StuckPolicy::Skip);
    place_all(alloc, first, mid);
    give(alloc, picked);

    std::map<std::size_t, std::vector<bool>> holds;
    for (AgentIndex i = 0; i < n; ++i) {
      for (GoodIndex g : picked[i]) {
        auto& h = holds[position[g]];
        h.resize(n, false);
        h[i] = true;
      }
    }
    const auto second = arrivals_between(instance, mid + 1, end);
    place_all(alloc, second, end);
    for (GoodIndex g : second) {
      auto& h = holds[position[g]];
      h.resize(n, false);
      const auto lacking = std::find(h.begin(), h.end(), false);
      if (lacking == h.end()) throw InternalError("a block hands out too many copies");
      const AgentIndex to = static_cast<AgentIndex>(lacking - h.begin());
      *lacking = true;
      alloc.owner[g] = to;
      record(trace, to, g, "complete");
    }
  }
  const Round done = (rounds / block) * block;
  const Round tail = rounds - done;
  if (tail > 0) {
    const Round mid = done + (tail + 1) / 2;
    const auto first = arrivals_between(instance, done + 1, mid);
    place_all(alloc, first, mid);
    give(alloc, round_robin(instance.valuations(), first, AgentOrder::identity(n), trace));
    const auto second = arrivals_between(instance, mid + 1, rounds);
    place_all(alloc, second, rounds);
    give(alloc, round_robin(instance.valuations(), second, AgentOrder::reversed(n), trace));
  }
  return alloc;
}

// ---------------------------------------------------------------------------
// Identical days with scheduling, two agents, TEFX

namespace {

// Pools `goods` in `round` and splits them so that each agent ends up with
// half of the copies of every day position placed so far.
void equalize(const TemporalInstance& instance, TemporalAllocation& alloc,
              const std::vector<std::size_t>& position, const std::vector<GoodIndex>& goods,
              Round round, std::map<std::size_t, std::array<std::size_t, 2>>& count,
              Trace* trace) {
  place_all(alloc, goods, round);
  std::map<std::size_t, std::vector<GoodIndex>> by_class;
  for (GoodIndex g : goods) by_class[position[g]].push_back(g);
  for (auto& [c, members] : by_class) {
    auto& have = count[c];
    const std::size_t total = have[0] + have[1] + members.size();
    if (total % 2 != 0) throw InternalError("odd number of copies to split evenly");
    for (GoodIndex g : members) {
      const AgentIndex to = have[0] < total / 2 ? 0 : 1;
      ++have[to];
      alloc.owner[g] = to;
      record(trace, to, g, "equal-copies");
    }
    if (have[0] != have[1]) throw InternalError("copies could not be split evenly");
  }
  (void)instance;
}

// One round on top of an envy-free base: MAX-ECE over the round's goods, only
// the round's parts being exchanged, then agent 2 takes the part it prefers.
std::vector<GoodIndex> ece_round(const TemporalInstance& instance, TemporalAllocation& alloc,
                                 const std::vector<std::size_t>& position, Round round,
                                 std::map<std::size_t, std::array<std::size_t, 2>>& count,
                                 Trace* trace) {
  const auto goods = by_position(instance, round, position);
  const Valuations local = restrict_columns(instance, goods);
  std::vector<GoodIndex> columns(goods.size());
  std::iota(columns.begin(), columns.end(), 0);
  Trace local_trace;
  const Bundles parts =
      envy_cycle_elimination(local, columns, PickRule::Max, trace ? &local_trace : nullptr);
  merge_trace(trace, local_trace, goods);
  Bundles global = to_global(parts, goods);
  const auto& v = instance.valuations();
  if (scaled_sum(v, 1, global[1]) < scaled_sum(v, 1, global[0])) std::swap(global[0], global[1]);
  give(alloc, global);
  for (AgentIndex i = 0; i < 2; ++i) {
    for (GoodIndex g : global[i]) ++count[position[g]][i];
  }
  return goods;
}

constexpr std::size_t kSplitSearchLimit = 16;

// When the listing's output is not TEFX and TMMS, tries every other split of the
// MAX-ECE rounds' goods; the equal-copy rounds stay as they are.
void repair_splits(const TemporalInstance& instance, TemporalAllocation& alloc,
                   const std::vector<GoodIndex>& free_goods, Trace* trace) {
  const CheckOptions wide{std::max(kDefaultMmsCap, instance.size())};
  auto fair = [&](const TemporalAllocation& a) {
    return check_temporal(instance, a, FairnessConcept::efx()).holds &&
           check_temporal(instance, a, FairnessConcept::mms(), wide).holds;
  };
  if (fair(alloc)) return;
  if (free_goods.empty() || free_goods.size() > kSplitSearchLimit) return;
  TemporalAllocation trial = alloc;
  const std::uint64_t end = std::uint64_t{1} << free_goods.size();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    for (std::size_t k = 0; k < free_goods.size(); ++k) {
      trial.owner[free_goods[k]] = static_cast<AgentIndex>((mask >> k) & 1U);
    }
    if (fair(trial)) {
      alloc = trial;
      for (GoodIndex g : free_goods) record(trace, alloc.owner[g], g, "split-search");
      return;
    }
  }
}

}  // namespace

TemporalAllocation tefx_identical_days_scheduled_two(const TemporalInstance& instance,
                                                     Trace* trace) {
  require(instance.agents() == 2, "this solver needs exactly two agents");
  require(classify(instance).identical_days,
          "identical days: rounds must carry the same multiset of values");
  const Round rounds = instance.rounds();
  const Round half = rounds / 2;
  if (instance.buffer() < std::max<Round>(half, 1)) {
    throw BufferViolation("this solver needs buffer >= floor(T/2) = " + std::to_string(half) +
                          ", got " + std::to_string(instance.buffer()));
  }
  const auto position = day_positions(instance);
  TemporalAllocation alloc = unassigned(instance);
  std::map<std::size_t, std::array<std::size_t, 2>> count;
  std::vector<GoodIndex> free_goods;

  // First half: rounds 1..half.
  if (half % 2 == 0) {
    if (half > 0) equalize(instance, alloc, position, arrivals_between(instance, 1, half), half,
                           count, trace);
  } else {
    if (half > 1) {
      equalize(instance, alloc, position, arrivals_between(instance, 1, half - 1), half - 1,
               count, trace);
    }
    auto goods = ece_round(instance, alloc, position, half, count, trace);
    free_goods.insert(free_goods.end(), goods.begin(), goods.end());
  }
  // Second half: rounds half+1..T.
  if (rounds % 2 == 0) {
    equalize(instance, alloc, position, arrivals_between(instance, half + 1, rounds), rounds,
             count, trace);
  } else {
    if (rounds - 1 > half) {
      equalize(instance, alloc, position, arrivals_between(instance, half + 1, rounds - 1),
               rounds - 1, count, trace);
    }
    auto goods = ece_round(instance, alloc, position, rounds, count, trace);
    free_goods.insert(free_goods.end(), goods.begin(), goods.end());
  }
  repair_splits(instance, alloc, free_goods, trace);
  return alloc;
}

// ---------------------------------------------------------------------------
// Bounds and registry

std::vector<Rational> alpha_general_bound(const TemporalInstance& instance) {
  std::vector<Rational> out(instance.agents(), Rational(1));
  if (instance.size() == 0) return out;
  for (AgentIndex i = 0; i < instance.agents(); ++i) {
    Rational lo = instance.value(i, 0);
    Rational hi = lo;
    for (GoodIndex g = 1; g < instance.size(); ++g) {
      lo = std::min(lo, instance.value(i, g));
      hi = std::max(hi, instance.value(i, g));
    }
    if (lo <= Rational(0)) throw SettingError("every agent must value every good positively");
    out[i] = (lo / 2) / (lo + hi / 2);
  }
  return out;
}

Rational identical_valuation_bound(const TemporalInstance& instance) {
  std::optional<Rational> lo;
  Rational hi(0);
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    const Rational& x = instance.value(0, g);
    hi = std::max(hi, x);
    if (x > Rational(0) && (!lo || x < *lo)) lo = x;
  }
  if (!lo) return Rational(1);
  return *lo / (hi + *lo);
}

Rational bivalued_bound(const TemporalInstance& instance) {
  const SettingClass s = classify(instance);
  require(s.bi_valued, "bi-valued: every value must be one of two positive constants");
  if (!s.low_value) return Rational(1);
  return *s.low_value / *s.high_value;
}

namespace {

using Concepts = std::vector<FairnessConcept>;

std::vector<SolverInfo> build_registry() {
  std::vector<SolverInfo> r;
  r.push_back({"tef1-house-t3", "house allocation, identical days, T = 3: TEF1", tef1_house_t3,
               [](const TemporalInstance&) { return Concepts{FairnessConcept::ef1()}; }});
  r.push_back({"tefx-genbinary-two", "two agents, generalized binary: TEFX and TMMS",
               tefx_genbinary_two, [](const TemporalInstance&) {
                 return Concepts{FairnessConcept::efx(), FairnessConcept::mms()};
               }});
  r.push_back({"tefx-genbinary-identical", "generalized binary and identical valuations: TEFX",
               tefx_genbinary_identical,
               [](const TemporalInstance&) { return Concepts{FairnessConcept::efx()}; }});
  r.push_back({"half-tefx-genbinary", "generalized binary: 1/2-TEFX", half_tefx_genbinary,
               [](const TemporalInstance&) {
                 return Concepts{FairnessConcept::alpha_efx(Rational(1, 2))};
               }});
  r.push_back({"alpha-tefx-general", "positive values: per-agent min/(2 min + max)-TEFX",
               alpha_tefx_general, [](const TemporalInstance& inst) {
                 return Concepts{FairnessConcept::alpha_efx_per_agent(alpha_general_bound(inst))};
               }});
  r.push_back({"half-tefx-identical-days-two", "two agents, identical days: 1/2-TEFX",
               half_tefx_identical_days_two, [](const TemporalInstance&) {
                 return Concepts{FairnessConcept::alpha_efx(Rational(1, 2))};
               }});
  r.push_back({"alpha-tefx-identical-valuation", "identical valuations: min+/(max + min+)-TEFX",
               alpha_tefx_identical_valuation, [](const TemporalInstance& inst) {
                 return Concepts{FairnessConcept::alpha_efx(identical_valuation_bound(inst))};
               }});
  r.push_back({"rr-bivalued", "bi-valued: (low/high)-TEFX", rr_bivalued,
               [](const TemporalInstance& inst) {
                 return Concepts{FairnessConcept::alpha_efx(bivalued_bound(inst))};
               }});
  r.push_back({"tef1-identical-days-scheduled",
               "identical days, buffer >= min(ceil(n/2), T): TEF1, envy-free every n rounds",
               tef1_identical_days_scheduled,
               [](const TemporalInstance&) { return Concepts{FairnessConcept::ef1()}; }});
  r.push_back({"tefx-identical-days-scheduled-two",
               "two agents, identical days, buffer >= floor(T/2): TEFX and TMMS",
               tefx_identical_days_scheduled_two, [](const TemporalInstance&) {
                 return Concepts{FairnessConcept::efx(), FairnessConcept::mms()};
               }});
  return r;
}

}  // namespace

std::span<const SolverInfo> solvers() {
  static const std::vector<SolverInfo> registry = build_registry();
  return registry;
}

const SolverInfo& find_solver(std::string_view name) {
  for (const SolverInfo& s : solvers()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const SolverInfo& s : solvers()) known += (known.empty() ? "" : ", ") + s.name;
  throw ParameterError("unknown algorithm '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace tempfair
