#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempfair/fairness.hpp"
#include "tempfair/model.hpp"
#include "tempfair/oracle.hpp"
#include "tempfair/static_alloc.hpp"

namespace tempfair {

inline constexpr int kFormatVersion = 1;

/// Instance text format:
///   {"agents": 2, "buffer": 1,
///    "rounds": [["g1", "g2"], [], ["g3"]],
///    "values": {"g1": ["0", "1/2"], ...}}
/// `rounds[k]` lists the goods arriving in round k + 1. Values are rational
/// strings (plain JSON integers are accepted too). Errors are ParseError with
/// the offending field in the message.
TemporalInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const TemporalInstance& instance);

/// Allocation format: {"placement": {"g1": 1, ...}, "owner": {"g1": 2, ...}}.
/// Agents are 1-based. Extra top-level keys are ignored, so a `solve` report
/// can be fed back to `check` directly.
TemporalAllocation allocation_from_json(const TemporalInstance& instance,
                                        const nlohmann::json& doc);
nlohmann::json to_json(const TemporalInstance& instance, const TemporalAllocation& alloc);

/// {holds, round, envious, envied, removed_good, shortfall}; absent fields are null.
nlohmann::json to_json(const TemporalInstance& instance, const Verdict& verdict);
nlohmann::json to_json(const SettingClass& setting);
nlohmann::json to_json(const TemporalInstance& instance, const SearchOutcome& outcome);
nlohmann::json to_json(const TemporalInstance& instance, const Trace& trace);

nlohmann::json read_json_file(const std::filesystem::path& path);
TemporalInstance read_instance(const std::filesystem::path& path);

}  // namespace tempfair
