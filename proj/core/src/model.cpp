#include "tempfair/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tempfair/errors.hpp"

namespace tempfair {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityError("valuation scale overflows 64-bit integers");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapacityError("bundle value overflows 64-bit integers");
  }
  return out;
}

using ValueVector = std::vector<Rational>;

std::vector<ValueVector> round_profile(const TemporalInstance& instance, Round round) {
  std::vector<ValueVector> profile;
  for (GoodIndex g : instance.arrivals(round)) profile.push_back(instance.good(g).values);
  std::sort(profile.begin(), profile.end());
  return profile;
}

bool has_identical_days(const TemporalInstance& instance) {
  const auto first = round_profile(instance, 1);
  for (Round t = 2; t <= instance.rounds(); ++t) {
    if (round_profile(instance, t) != first) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Valuations

Valuations::Valuations(std::vector<std::vector<Rational>> by_agent)
    : agents_(by_agent.size()), goods_(by_agent.empty() ? 0 : by_agent.front().size()) {
  values_.reserve(agents_ * goods_);
  scaled_.reserve(agents_ * goods_);
  scale_.reserve(agents_);
  for (const auto& row : by_agent) {
    if (row.size() != goods_) throw ValidationError("valuation rows differ in length");
    std::int64_t scale = 1;
    for (const Rational& v : row) {
      const std::int64_t den = v.denominator();
      scale = checked_mul(scale / std::gcd(scale, den), den);
    }
    scale_.push_back(scale);
    for (const Rational& v : row) {
      values_.push_back(v);
      scaled_.push_back(checked_mul(v.numerator(), scale / v.denominator()));
    }
  }
}

Rational Valuations::bundle_value(AgentIndex agent, std::span<const GoodIndex> bundle) const {
  return unscale(agent, scaled_bundle_value(agent, bundle));
}

std::int64_t Valuations::scaled_bundle_value(AgentIndex agent,
                                             std::span<const GoodIndex> bundle) const {
  std::int64_t total = 0;
  for (GoodIndex g : bundle) total = checked_add(total, scaled(agent, g));
  return total;
}

// ---------------------------------------------------------------------------
// TemporalInstance

TemporalInstance::TemporalInstance(std::size_t agents, Round rounds, std::vector<Good> goods,
                                   Round buffer)
    : agents_(agents), rounds_(rounds), buffer_(buffer), goods_(std::move(goods)) {
  if (agents_ < 1) throw ValidationError("an instance needs at least one agent");
  if (rounds_ < 1) throw ValidationError("an instance needs at least one round");
  if (buffer_ < 1 || buffer_ > rounds_) {
    throw ValidationError("buffer must lie in [1, T], got " + std::to_string(buffer_));
  }
  std::stable_sort(goods_.begin(), goods_.end(),
                   [](const Good& a, const Good& b) { return a.arrival < b.arrival; });
  arrivals_.assign(static_cast<std::size_t>(rounds_) + 1, {});
  std::vector<std::vector<Rational>> by_agent(agents_, std::vector<Rational>(goods_.size()));
  for (GoodIndex g = 0; g < goods_.size(); ++g) {
    const Good& good = goods_[g];
    if (good.arrival < 1 || good.arrival > rounds_) {
      throw ValidationError("good '" + good.id + "' arrives outside [1, T]");
    }
    if (good.values.size() != agents_) {
      throw ValidationError("good '" + good.id + "' needs one value per agent");
    }
    if (!by_id_.emplace(good.id, g).second) {
      throw ValidationError("duplicate good id '" + good.id + "'");
    }
    for (AgentIndex i = 0; i < agents_; ++i) {
      if (good.values[i] < Rational(0)) {
        throw ValidationError("good '" + good.id + "' has a negative value");
      }
      by_agent[i][g] = good.values[i];
    }
    arrivals_[static_cast<std::size_t>(good.arrival)].push_back(g);
  }
  valuations_ = Valuations(std::move(by_agent));
}

std::span<const GoodIndex> TemporalInstance::arrivals(Round round) const {
  if (round < 1 || round > rounds_) {
    throw OutOfRange("round " + std::to_string(round) + " outside [1, T]");
  }
  return arrivals_[static_cast<std::size_t>(round)];
}

std::optional<GoodIndex> TemporalInstance::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

GoodIndex TemporalInstance::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw InvalidReference("unknown good id '" + std::string(id) + "'");
  return *found;
}

TemporalInstance TemporalInstance::with_buffer(Round buffer) const {
  return TemporalInstance(agents_, rounds_, goods_, buffer);
}

Schedule Schedule::at_arrival(const TemporalInstance& instance) {
  Schedule schedule;
  schedule.placement.reserve(instance.size());
  for (const Good& g : instance.goods()) schedule.placement.push_back(g.arrival);
  return schedule;
}

// ---------------------------------------------------------------------------
// Operations

Rational bundle_value(const TemporalInstance& instance, AgentIndex agent,
                      std::span<const std::string> bundle) {
  if (agent >= instance.agents()) {
    throw InvalidReference("agent " + std::to_string(agent + 1) + " does not exist");
  }
  Bundle indices;
  indices.reserve(bundle.size());
  for (const auto& id : bundle) indices.push_back(instance.index_of(id));
  return instance.valuations().bundle_value(agent, indices);
}

void validate(const TemporalInstance& instance, const TemporalAllocation& alloc) {
  const std::size_t m = instance.size();
  if (alloc.owner.size() != m || alloc.schedule.placement.size() != m) {
    throw ValidationError("allocation must assign every good exactly once");
  }
  for (GoodIndex g = 0; g < m; ++g) {
    const Good& good = instance.good(g);
    if (alloc.owner[g] >= instance.agents()) {
      throw ValidationError("good '" + good.id + "' has no valid owner");
    }
    const Round placed = alloc.schedule.placement[g];
    if (placed < good.arrival || placed > instance.rounds()) {
      throw ValidationError("good '" + good.id + "' placed in round " + std::to_string(placed) +
                            " outside [arrival, T]");
    }
    if (placed - good.arrival + 1 > instance.buffer()) {
      throw ValidationError("good '" + good.id + "' delayed beyond the buffer");
    }
  }
}

Bundles prefix(const TemporalInstance& instance, const TemporalAllocation& alloc, Round t) {
  if (t < 0 || t > instance.rounds()) {
    throw OutOfRange("prefix round " + std::to_string(t) + " outside [0, T]");
  }
  if (alloc.owner.size() != instance.size() || alloc.schedule.placement.size() != instance.size()) {
    throw ValidationError("allocation does not match the instance");
  }
  Bundles bundles(instance.agents());
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    if (alloc.schedule.placement[g] <= t) bundles.at(alloc.owner[g]).push_back(g);
  }
  return bundles;
}

Schedule apply_delay(const TemporalInstance& instance, const Schedule& schedule, GoodIndex good,
                     Round delay) {
  if (good >= instance.size() || schedule.placement.size() != instance.size()) {
    throw InvalidReference("good index " + std::to_string(good) + " does not exist");
  }
  const Good& g = instance.good(good);
  if (delay < 1 || delay > instance.buffer()) {
    throw BufferViolation("delay " + std::to_string(delay) + " for '" + g.id +
                          "' outside [1, buffer=" + std::to_string(instance.buffer()) + "]");
  }
  const Round target = g.arrival + delay - 1;
  if (target > instance.rounds()) {
    throw BufferViolation("delaying '" + g.id + "' to round " + std::to_string(target) +
                          " passes the horizon");
  }
  Schedule out = schedule;
  out.placement[good] = target;
  return out;
}

SettingClass classify(const TemporalInstance& instance) {
  SettingClass s;
  if (instance.size() == 0) {
    s.identical_days = s.generalized_binary = s.bi_valued = true;
    s.identical_valuation = s.all_positive = s.vacuous = true;
    s.house_allocation_shape = (instance.agents() == 0);
    return s;
  }
  std::set<Rational> positives;
  bool any_zero = false;
  s.identical_valuation = true;
  for (const Good& g : instance.goods()) {
    for (const Rational& v : g.values) {
      if (v == Rational(0)) {
        any_zero = true;
      } else {
        positives.insert(v);
      }
    }
    if (std::adjacent_find(g.values.begin(), g.values.end(), std::not_equal_to<>()) !=
        g.values.end()) {
      s.identical_valuation = false;
    }
  }
  s.all_positive = !any_zero;
  s.generalized_binary = positives.size() <= 1;
  if (s.generalized_binary && !positives.empty()) s.binary_level = *positives.begin();
  s.bi_valued = !any_zero && positives.size() <= 2;
  if (s.bi_valued) {
    s.low_value = *positives.begin();
    s.high_value = *positives.rbegin();
  }
  s.identical_days = has_identical_days(instance);
  s.house_allocation_shape = true;
  for (Round t = 1; t <= instance.rounds(); ++t) {
    if (instance.arrivals(t).size() != instance.agents()) s.house_allocation_shape = false;
  }
  return s;
}

std::vector<std::size_t> day_positions(const TemporalInstance& instance) {
  if (!has_identical_days(instance)) {
    throw SettingError("identical days: rounds do not carry the same multiset of value vectors");
  }
  std::vector<std::size_t> position(instance.size(), 0);
  for (Round t = 1; t <= instance.rounds(); ++t) {
    auto arrivals = instance.arrivals(t);
    std::vector<GoodIndex> order(arrivals.begin(), arrivals.end());
    std::stable_sort(order.begin(), order.end(), [&](GoodIndex a, GoodIndex b) {
      return instance.good(a).values < instance.good(b).values;
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank) position[order[rank]] = rank;
  }
  return position;
}

}  // namespace tempfair
