#include "tempfair/generators.hpp"

#include <limits>
#include <string>

#include "tempfair/errors.hpp"

namespace tempfair {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ParameterError("empty range for a uniform draw");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

struct Levels {
  std::int64_t binary = 1;
  std::int64_t low = 1;
  std::int64_t high = 1;
};

std::vector<Rational> draw_values(const SettingRequest& request, const GeneratorParams& params,
                                  const Levels& levels, Rng& rng) {
  auto one = [&]() -> std::int64_t {
    if (request.generalized_binary) {
      if (request.positive) return levels.binary;
      return rng.coin() ? levels.binary : 0;
    }
    if (request.bi_valued) return rng.coin() ? levels.low : levels.high;
    return rng.uniform(request.positive ? 1 : 0, params.value_cap);
  };
  std::vector<Rational> values(params.agents);
  if (request.identical_valuation) {
    const Rational v(one());
    for (auto& x : values) x = v;
  } else {
    for (auto& x : values) x = Rational(one());
  }
  return values;
}

}  // namespace

TemporalInstance generate(const SettingRequest& request, const GeneratorParams& params) {
  if (params.agents < 1) throw ParameterError("need at least one agent");
  if (params.rounds < 1) throw ParameterError("need at least one round");
  if (params.value_cap < 1) throw ParameterError("value cap must be at least 1");
  if (params.buffer < 1 || params.buffer > params.rounds) {
    throw ParameterError("buffer must lie in [1, T]");
  }
  if (request.generalized_binary && request.bi_valued) {
    throw ParameterError("generalized binary and bi-valued cannot be combined");
  }
  Rng rng(params.seed);
  Levels levels;
  if (request.generalized_binary) {
    levels.binary = request.binary_level.value_or(rng.uniform(1, params.value_cap));
    if (levels.binary < 1) throw ParameterError("binary level must be positive");
  }
  if (request.bi_valued) {
    levels.low = request.low_value.value_or(rng.uniform(1, params.value_cap));
    levels.high = request.high_value.value_or(rng.uniform(levels.low, params.value_cap));
    if (levels.low < 1 || levels.high < levels.low) {
      throw ParameterError("bi-valued levels need 1 <= low <= high");
    }
  }
  auto draw_count = [&]() -> std::size_t {
    if (request.house_allocation) return params.agents;
    if (params.vary_per_round) {
      return static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(params.per_round)));
    }
    return params.per_round;
  };

  std::vector<std::vector<std::vector<Rational>>> days;
  if (request.identical_days) {
    std::vector<std::vector<Rational>> day(draw_count());
    for (auto& values : day) values = draw_values(request, params, levels, rng);
    days.assign(static_cast<std::size_t>(params.rounds), day);
  } else {
    for (Round t = 1; t <= params.rounds; ++t) {
      std::vector<std::vector<Rational>> day(draw_count());
      for (auto& values : day) values = draw_values(request, params, levels, rng);
      days.push_back(std::move(day));
    }
  }
  std::vector<Good> goods;
  for (std::size_t t = 0; t < days.size(); ++t) {
    for (auto& values : days[t]) {
      goods.push_back(Good{"g" + std::to_string(goods.size() + 1), static_cast<Round>(t + 1),
                           std::move(values)});
    }
  }
  return TemporalInstance(params.agents, params.rounds, std::move(goods), params.buffer);
}

SettingRequest parse_setting(std::string_view text) {
  SettingRequest request;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view name = text.substr(start, comma - start);
    if (name == "general" || name.empty()) {
    } else if (name == "positive") {
      request.positive = true;
    } else if (name == "identical-days") {
      request.identical_days = true;
    } else if (name == "generalized-binary") {
      request.generalized_binary = true;
    } else if (name == "bi-valued") {
      request.bi_valued = true;
    } else if (name == "identical-valuation") {
      request.identical_valuation = true;
    } else if (name == "house-allocation") {
      request.house_allocation = true;
    } else {
      throw ParameterError("unknown setting '" + std::string(name) + "'");
    }
    start = comma + 1;
  }
  if (request.generalized_binary && request.bi_valued) {
    throw ParameterError("generalized binary and bi-valued cannot be combined");
  }
  return request;
}

}  // namespace tempfair
