#include "tempfair/fairness.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "tempfair/errors.hpp"

namespace tempfair {

namespace {

__extension__ typedef __int128 Wide;

std::vector<std::int64_t> own_values(const Valuations& valuations, const Bundles& bundles) {
  std::vector<std::int64_t> own(bundles.size());
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    own[i] = valuations.scaled_bundle_value(i, bundles[i]);
  }
  return own;
}

void require_shape(const Valuations& valuations, const Bundles& bundles) {
  if (bundles.size() != valuations.agents()) {
    throw ValidationError("expected " + std::to_string(valuations.agents()) + " bundles, got " +
                          std::to_string(bundles.size()));
  }
  for (const Bundle& b : bundles) {
    for (GoodIndex g : b) {
      if (g >= valuations.goods()) throw InvalidReference("good index out of range");
    }
  }
}

// v_i(A_i) * q >= p * (v_i(A_j) - v_i(g)) for every g in A_j, with alpha = p/q.
// Returns the first g that fails, or nullopt.
std::optional<GoodIndex> first_failing_removal(const Valuations& valuations, AgentIndex i,
                                               std::int64_t own, const Bundle& other,
                                               const Rational& alpha) {
  if (other.empty()) return std::nullopt;
  const std::int64_t total = valuations.scaled_bundle_value(i, other);
  const Wide p = alpha.numerator();
  const Wide q = alpha.denominator();
  const Wide lhs = static_cast<Wide>(own) * q;
  // The binding removal is the cheapest good; check it before scanning.
  std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
  for (GoodIndex g : other) cheapest = std::min(cheapest, valuations.scaled(i, g));
  if (lhs >= p * (total - cheapest)) return std::nullopt;
  for (GoodIndex g : other) {
    if (lhs < p * (total - valuations.scaled(i, g))) return g;
  }
  return std::nullopt;
}

Verdict alpha_check(const Valuations& valuations, const Bundles& bundles,
                    const std::function<const Rational&(AgentIndex)>& alpha_of) {
  require_shape(valuations, bundles);
  const auto own = own_values(valuations, bundles);
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    for (AgentIndex j = 0; j < bundles.size(); ++j) {
      if (i == j) continue;
      if (auto g = first_failing_removal(valuations, i, own[i], bundles[j], alpha_of(i))) {
        return Verdict::fail({0, i, j, *g, std::nullopt});
      }
    }
  }
  return Verdict::ok();
}

void check_alpha(const Rational& alpha) {
  if (alpha <= Rational(0) || alpha > Rational(1)) {
    throw ParameterError("alpha must lie in (0, 1], got " + format_rational(alpha));
  }
}

class PartitionSearch {
 public:
  PartitionSearch(std::vector<std::int64_t> values, std::size_t parts)
      : values_(std::move(values)), parts_(parts), load_(parts, 0) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
    suffix_.assign(values_.size() + 1, 0);
    for (std::size_t k = values_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + values_[k];
    ceiling_ = suffix_[0] / static_cast<std::int64_t>(parts_);
  }

  std::int64_t run() {
    best_ = 0;
    descend(0, 0);
    return best_;
  }

 private:
  void descend(std::size_t k, std::size_t used) {
    if (best_ == ceiling_) return;
    if (k == values_.size()) {
      const std::int64_t low = used < parts_ ? 0 : *std::min_element(load_.begin(), load_.end());
      best_ = std::max(best_, low);
      return;
    }
    // Every part ends at most at its load plus everything still unassigned.
    std::int64_t bound = std::numeric_limits<std::int64_t>::max();
    for (std::size_t p = 0; p < parts_; ++p) bound = std::min(bound, load_[p] + suffix_[k]);
    if (bound <= best_) return;
    const std::size_t limit = std::min(used + 1, parts_);
    for (std::size_t p = 0; p < limit; ++p) {
      load_[p] += values_[k];
      descend(k + 1, std::max(used, p + 1));
      load_[p] -= values_[k];
    }
  }

  std::vector<std::int64_t> values_;
  std::size_t parts_;
  std::vector<std::int64_t> load_;
  std::vector<std::int64_t> suffix_;
  std::int64_t ceiling_ = 0;
  std::int64_t best_ = 0;
};

std::int64_t scaled_mms(const Valuations& valuations, std::span<const GoodIndex> goods,
                        AgentIndex agent, std::size_t parts, std::size_t cap) {
  if (parts < 1) throw ParameterError("mms needs at least one part");
  if (goods.size() > cap) {
    throw CapacityError("maximin share over " + std::to_string(goods.size()) +
                        " goods exceeds the cap of " + std::to_string(cap));
  }
  std::vector<std::int64_t> values;
  values.reserve(goods.size());
  for (GoodIndex g : goods) {
    if (g >= valuations.goods()) throw InvalidReference("good index out of range");
    if (valuations.scaled(agent, g) > 0) values.push_back(valuations.scaled(agent, g));
  }
  if (parts == 1) return std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (values.size() < parts) return 0;
  return PartitionSearch(std::move(values), parts).run();
}

}  // namespace

FairnessConcept FairnessConcept::alpha_efx(Rational alpha) {
  check_alpha(alpha);
  return {ConceptKind::AlphaEFX, alpha, {}};
}

FairnessConcept FairnessConcept::alpha_efx_per_agent(std::vector<Rational> alphas) {
  for (const auto& a : alphas) check_alpha(a);
  FairnessConcept c{ConceptKind::AlphaEFX, Rational(1), std::move(alphas)};
  if (!c.agent_alpha.empty()) {
    c.alpha = *std::min_element(c.agent_alpha.begin(), c.agent_alpha.end());
  }
  return c;
}

std::string FairnessConcept::name() const {
  switch (kind) {
    case ConceptKind::EF1:
      return "tef1";
    case ConceptKind::EFX:
      return "tefx";
    case ConceptKind::MMS:
      return "tmms";
    case ConceptKind::AlphaEFX:
      return agent_alpha.empty() ? "atefx:" + format_rational(alpha) : "atefx:per-agent";
  }
  return "unknown";
}

FairnessConcept parse_concept(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == 't') body.remove_prefix(1);
  if (body == "ef1") return FairnessConcept::ef1();
  if (body == "efx") return FairnessConcept::efx();
  if (body == "mms") return FairnessConcept::mms();
  for (std::string_view head : {"atefx:", "aefx:"}) {
    if (!body.starts_with(head)) continue;
    body.remove_prefix(head.size());
    Rational alpha;
    try {
      alpha = parse_rational(body);
    } catch (const ParseError& e) {
      throw ParameterError("bad alpha in concept '" + std::string(text) + "': " + e.what());
    }
    return FairnessConcept::alpha_efx(alpha);
  }
  throw ParameterError("unknown concept '" + std::string(text) +
                       "' (expected tef1, tefx, atefx:<p/q> or tmms)");
}

Verdict is_ef1(const Valuations& valuations, const Bundles& bundles) {
  require_shape(valuations, bundles);
  const auto own = own_values(valuations, bundles);
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    for (AgentIndex j = 0; j < bundles.size(); ++j) {
      if (i == j || bundles[j].empty()) continue;
      std::int64_t total = 0;
      std::int64_t top = 0;
      for (GoodIndex g : bundles[j]) {
        total += valuations.scaled(i, g);
        top = std::max(top, valuations.scaled(i, g));
      }
      if (own[i] < total - top) return Verdict::fail({0, i, j, std::nullopt, std::nullopt});
    }
  }
  return Verdict::ok();
}

Verdict is_efx(const Valuations& valuations, const Bundles& bundles) {
  static const Rational one(1);
  return alpha_check(valuations, bundles, [](AgentIndex) -> const Rational& { return one; });
}

Verdict is_alpha_efx(const Valuations& valuations, const Bundles& bundles, const Rational& alpha) {
  check_alpha(alpha);
  return alpha_check(valuations, bundles, [&](AgentIndex) -> const Rational& { return alpha; });
}

Verdict is_alpha_efx(const Valuations& valuations, const Bundles& bundles,
                     std::span<const Rational> agent_alpha) {
  if (agent_alpha.size() != valuations.agents()) {
    throw ParameterError("need one alpha per agent");
  }
  for (const auto& a : agent_alpha) check_alpha(a);
  return alpha_check(valuations, bundles,
                     [&](AgentIndex i) -> const Rational& { return agent_alpha[i]; });
}

Verdict is_envy_free(const Valuations& valuations, const Bundles& bundles) {
  require_shape(valuations, bundles);
  const auto own = own_values(valuations, bundles);
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    for (AgentIndex j = 0; j < bundles.size(); ++j) {
      if (i != j && own[i] < valuations.scaled_bundle_value(i, bundles[j])) {
        return Verdict::fail({0, i, j, std::nullopt, std::nullopt});
      }
    }
  }
  return Verdict::ok();
}

Rational mms_share(const Valuations& valuations, std::span<const GoodIndex> goods,
                   AgentIndex agent, std::size_t parts, std::size_t cap) {
  if (agent >= valuations.agents()) throw InvalidReference("agent index out of range");
  return valuations.unscale(agent, scaled_mms(valuations, goods, agent, parts, cap));
}

Verdict is_mms(const Valuations& valuations, const Bundles& bundles, std::size_t cap) {
  require_shape(valuations, bundles);
  Bundle all;
  for (const Bundle& b : bundles) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (all.size() > cap) {
    throw CapacityError("maximin share over " + std::to_string(all.size()) +
                        " goods exceeds the cap of " + std::to_string(cap));
  }
  for (AgentIndex i = 0; i < bundles.size(); ++i) {
    const std::int64_t own = valuations.scaled_bundle_value(i, bundles[i]);
    const std::int64_t share = scaled_mms(valuations, all, i, bundles.size(), cap);
    if (own < share) {
      return Verdict::fail({0, i, std::nullopt, std::nullopt, valuations.unscale(i, share - own)});
    }
  }
  return Verdict::ok();
}

Verdict check(const Valuations& valuations, const Bundles& bundles, const FairnessConcept& concept_,
              const CheckOptions& options) {
  switch (concept_.kind) {
    case ConceptKind::EF1:
      return is_ef1(valuations, bundles);
    case ConceptKind::EFX:
      return is_efx(valuations, bundles);
    case ConceptKind::AlphaEFX:
      if (!concept_.agent_alpha.empty()) {
        return is_alpha_efx(valuations, bundles, concept_.agent_alpha);
      }
      return is_alpha_efx(valuations, bundles, concept_.alpha);
    case ConceptKind::MMS:
      return is_mms(valuations, bundles, options.mms_cap);
  }
  throw InternalError("unhandled concept kind");
}

Verdict check_temporal(const TemporalInstance& instance, const TemporalAllocation& alloc,
                       const FairnessConcept& concept_, const CheckOptions& options) {
  validate(instance, alloc);
  for (Round t = 1; t <= instance.rounds(); ++t) {
    Verdict v = check(instance.valuations(), prefix(instance, alloc, t), concept_, options);
    if (!v.holds) {
      v.witness->round = t;
      return v;
    }
  }
  return Verdict::ok();
}

std::vector<Verdict> round_report(const TemporalInstance& instance, const TemporalAllocation& alloc,
                                  const FairnessConcept& concept_, const CheckOptions& options) {
  validate(instance, alloc);
  std::vector<Verdict> out;
  out.reserve(static_cast<std::size_t>(instance.rounds()));
  for (Round t = 1; t <= instance.rounds(); ++t) {
    Verdict v = check(instance.valuations(), prefix(instance, alloc, t), concept_, options);
    if (!v.holds) v.witness->round = t;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace tempfair
