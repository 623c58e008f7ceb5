#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempfair/fairness.hpp"
#include "tempfair/model.hpp"
#include "tempfair/static_alloc.hpp"

namespace tempfair {

// Temporal solvers. Each one checks its setting up front and throws
// SettingError (or BufferViolation for a too-small buffer) instead of
// producing best-effort output. Unless a solver schedules, goods are placed
// in their arrival round.

/// House allocation, identical days, T = 3: round robin over rounds 1-2 as a
/// single pool, a 2-colouring of the pair/copy graph to decide which good of
/// each pair is the round-1 good, then reversed round robin in round 3. TEF1.
TemporalAllocation tef1_house_t3(const TemporalInstance& instance, Trace* trace = nullptr);

/// Two agents, generalized binary valuations. TEFX and TMMS.
TemporalAllocation tefx_genbinary_two(const TemporalInstance& instance, Trace* trace = nullptr);

/// Generalized binary and identical valuations: positive goods cycle through
/// the agents, zero goods go to the last agent. TEFX.
TemporalAllocation tefx_genbinary_identical(const TemporalInstance& instance,
                                            Trace* trace = nullptr);

/// Generalized binary, any n: each good goes to the poorest agent among those
/// that value it; all-zero goods go to the agent that was served last.
/// Advertised: 1/2-TEFX.
TemporalAllocation half_tefx_genbinary(const TemporalInstance& instance, Trace* trace = nullptr);

/// All values positive: the first n goods form one envy-cycle batch, every
/// later round is solved by its own MAX-ECE run. Advertised: per-agent
/// alpha_general_bound()-TEFX.
TemporalAllocation alpha_tefx_general(const TemporalInstance& instance, Trace* trace = nullptr);

/// Two agents, identical days: cut-and-choose per round with the cutter
/// alternating. Advertised: 1/2-TEFX.
TemporalAllocation half_tefx_identical_days_two(const TemporalInstance& instance,
                                                Trace* trace = nullptr);

/// Identical valuations: positive goods go to the poorest agent, zero goods to
/// the last agent. Advertised: identical_valuation_bound()-TEFX.
TemporalAllocation alpha_tefx_identical_valuation(const TemporalInstance& instance,
                                                  Trace* trace = nullptr);

/// Bi-valued goods: round robin whose pointer persists across rounds.
/// Advertised: (low/high)-TEFX.
TemporalAllocation rr_bivalued(const TemporalInstance& instance, Trace* trace = nullptr);

/// Identical days with buffer >= min(ceil(n/2), T): blocks of n rounds, each
/// ending with every agent holding one copy of the day. TEF1 everywhere, exact
/// envy-freeness at every multiple of n.
TemporalAllocation tef1_identical_days_scheduled(const TemporalInstance& instance,
                                                 Trace* trace = nullptr);

/// Two agents, identical days, buffer >= floor(T/2). Advertised: TEFX and TMMS.
TemporalAllocation tefx_identical_days_scheduled_two(const TemporalInstance& instance,
                                                     Trace* trace = nullptr);

/// (min/2) / (min + max/2) over agent's values, for every agent.
std::vector<Rational> alpha_general_bound(const TemporalInstance& instance);
/// min_positive / (max + min_positive); 1 when every value is zero.
Rational identical_valuation_bound(const TemporalInstance& instance);
/// low / high for a bi-valued instance.
Rational bivalued_bound(const TemporalInstance& instance);

/// Buffer the scheduled TEF1 solver needs: min(ceil(n/2), T).
Round scheduled_tef1_required_buffer(const TemporalInstance& instance);

/// A named solver together with the guarantees it advertises.
struct SolverInfo {
  std::string name;
  std::string summary;
  std::function<TemporalAllocation(const TemporalInstance&, Trace*)> solve;
  std::function<std::vector<FairnessConcept>(const TemporalInstance&)> guarantees;
};

std::span<const SolverInfo> solvers();
/// Throws ParameterError for an unknown name.
const SolverInfo& find_solver(std::string_view name);

}  // namespace tempfair
