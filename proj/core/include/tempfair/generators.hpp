#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "tempfair/model.hpp"

namespace tempfair {

/// Restricted settings the generated instance must satisfy. Flags combine,
/// except that generalized binary and bi-valued are mutually exclusive.
struct SettingRequest {
  bool identical_days = false;
  bool generalized_binary = false;
  std::optional<std::int64_t> binary_level;  // drawn from [1, cap] when empty
  bool bi_valued = false;
  std::optional<std::int64_t> low_value;   // drawn when empty
  std::optional<std::int64_t> high_value;  // drawn when empty
  bool identical_valuation = false;
  bool house_allocation = false;
  bool positive = false;  // every value >= 1
};

struct GeneratorParams {
  std::size_t agents = 2;
  Round rounds = 3;
  /// Goods per round. With `vary_per_round` it is the maximum and each round
  /// (or the day template) draws its count from [0, per_round].
  std::size_t per_round = 3;
  bool vary_per_round = false;
  std::int64_t value_cap = 10;
  Round buffer = 1;
  std::uint64_t seed = 0;
};

/// Seeded instance satisfying every requested flag. Good ids are "g1", "g2",
/// ... in arrival order. Throws ParameterError on an inconsistent request.
TemporalInstance generate(const SettingRequest& request, const GeneratorParams& params);

/// Comma separated list of: general, positive, identical-days,
/// generalized-binary, bi-valued, identical-valuation, house-allocation.
SettingRequest parse_setting(std::string_view text);

/// mt19937_64 with a rejection-sampled uniform draw. The engine output is
/// fixed by the standard but std::uniform_int_distribution is not, so seeded
/// instances would otherwise differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() & 1U) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tempfair
