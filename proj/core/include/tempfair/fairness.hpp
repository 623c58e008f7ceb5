#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempfair/model.hpp"
#include "tempfair/rational.hpp"

namespace tempfair {

/// A re-checkable reason why a fairness check failed.
///
/// For the envy notions `envied` is set; `removed_good` names the good whose
/// removal leaves the envy in place (EFX, alpha-EFX) and is empty for EF1,
/// where no removal helps. For MMS `envied` is empty and `shortfall` holds
/// share minus own value.
struct Violation {
  Round round = 0;  // 0 for a one-shot check
  AgentIndex envious = 0;
  std::optional<AgentIndex> envied;
  std::optional<GoodIndex> removed_good;
  std::optional<Rational> shortfall;

  bool operator==(const Violation&) const = default;
};

struct Verdict {
  bool holds = true;
  std::optional<Violation> witness;

  static Verdict ok() { return {}; }
  static Verdict fail(Violation v) { return {false, std::move(v)}; }
  explicit operator bool() const { return holds; }
};

enum class ConceptKind { EF1, EFX, AlphaEFX, MMS };

/// Which notion to check. The temporal wrappers apply it at every prefix.
struct FairnessConcept {
  ConceptKind kind = ConceptKind::EF1;
  Rational alpha{1};
  /// Per-agent ratios for alpha-EFX; when non-empty it overrides `alpha`.
  std::vector<Rational> agent_alpha;

  static FairnessConcept ef1() { return {ConceptKind::EF1, Rational(1), {}}; }
  static FairnessConcept efx() { return {ConceptKind::EFX, Rational(1), {}}; }
  static FairnessConcept mms() { return {ConceptKind::MMS, Rational(1), {}}; }
  /// Throws ParameterError unless 0 < alpha <= 1.
  static FairnessConcept alpha_efx(Rational alpha);
  static FairnessConcept alpha_efx_per_agent(std::vector<Rational> alphas);

  /// "tef1", "tefx", "atefx:1/2", "tmms" (or "atefx:per-agent").
  std::string name() const;
};

/// Accepts tef1|tefx|atefx:<p/q>|tmms, with or without the leading "t".
FairnessConcept parse_concept(std::string_view text);

inline constexpr std::size_t kDefaultMmsCap = 16;

struct CheckOptions {
  std::size_t mms_cap = kDefaultMmsCap;
};

Verdict is_ef1(const Valuations& valuations, const Bundles& bundles);
/// Strong EFX: the removal ranges over every good, zero-valued ones included.
Verdict is_efx(const Valuations& valuations, const Bundles& bundles);
Verdict is_alpha_efx(const Valuations& valuations, const Bundles& bundles, const Rational& alpha);
Verdict is_alpha_efx(const Valuations& valuations, const Bundles& bundles,
                     std::span<const Rational> agent_alpha);
/// Exact envy-freeness; used for the block-boundary guarantee of the scheduled solver.
Verdict is_envy_free(const Valuations& valuations, const Bundles& bundles);

/// Maximin share of `agent` over `goods` split into `parts` possibly empty
/// bundles. Exhaustive; throws CapacityError when goods.size() > cap.
Rational mms_share(const Valuations& valuations, std::span<const GoodIndex> goods,
                   AgentIndex agent, std::size_t parts, std::size_t cap = kDefaultMmsCap);

/// Every agent gets at least its maximin share of the allocated goods.
Verdict is_mms(const Valuations& valuations, const Bundles& bundles,
               std::size_t cap = kDefaultMmsCap);

/// Dispatches on the concept kind.
Verdict check(const Valuations& valuations, const Bundles& bundles, const FairnessConcept& concept_,
              const CheckOptions& options = {});

/// Validates the allocation, then checks the concept on every prefix A^1..A^T
/// of the scheduled stream. The witness carries the first failing round.
Verdict check_temporal(const TemporalInstance& instance, const TemporalAllocation& alloc,
                       const FairnessConcept& concept_, const CheckOptions& options = {});

/// One verdict per round 1..T (no early exit).
std::vector<Verdict> round_report(const TemporalInstance& instance, const TemporalAllocation& alloc,
                                  const FairnessConcept& concept_,
                                  const CheckOptions& options = {});

}  // namespace tempfair
