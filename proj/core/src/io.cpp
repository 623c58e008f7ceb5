#include "tempfair/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tempfair/errors.hpp"

namespace tempfair {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("expected a JSON object at the top level");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::int64_t as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError("field '" + where + "' must be an integer");
  return value.get<std::int64_t>();
}

Rational as_rational(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (!value.is_string()) {
    throw ParseError("field '" + where + "' must be a rational string such as \"1/2\"");
  }
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("field '" + where + "': " + e.what());
  }
}

json rational_json(const Rational& r) { return format_rational(r); }

json agent_json(std::optional<AgentIndex> a) {
  if (!a) return nullptr;
  return *a + 1;
}

}  // namespace

TemporalInstance instance_from_json(const json& doc) {
  const std::int64_t agents = as_int(field(doc, "agents"), "agents");
  if (agents < 1) throw ParseError("field 'agents' must be at least 1");
  std::int64_t buffer = 1;
  if (doc.contains("buffer")) buffer = as_int(doc["buffer"], "buffer");
  const json& rounds = field(doc, "rounds");
  if (!rounds.is_array()) throw ParseError("field 'rounds' must be an array of arrays of ids");
  const json& values = field(doc, "values");
  if (!values.is_object()) throw ParseError("field 'values' must map good ids to value arrays");

  std::vector<Good> goods;
  std::set<std::string> seen;
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    const std::string where = "rounds[" + std::to_string(t) + "]";
    if (!rounds[t].is_array()) throw ParseError("field '" + where + "' must be an array of ids");
    for (std::size_t k = 0; k < rounds[t].size(); ++k) {
      const json& id = rounds[t][k];
      const std::string item = where + "[" + std::to_string(k) + "]";
      if (!id.is_string()) throw ParseError("field '" + item + "' must be a string id");
      Good g;
      g.id = id.get<std::string>();
      g.arrival = static_cast<Round>(t + 1);
      if (!seen.insert(g.id).second) throw ParseError("good '" + g.id + "' listed twice");
      auto v = values.find(g.id);
      if (v == values.end()) throw ParseError("field 'values' has no entry for '" + g.id + "'");
      if (!v->is_array() || v->size() != static_cast<std::size_t>(agents)) {
        throw ParseError("field 'values." + g.id + "' must list " + std::to_string(agents) +
                         " values");
      }
      for (std::size_t i = 0; i < v->size(); ++i) {
        g.values.push_back(
            as_rational((*v)[i], "values." + g.id + "[" + std::to_string(i) + "]"));
      }
      goods.push_back(std::move(g));
    }
  }
  for (auto it = values.begin(); it != values.end(); ++it) {
    if (!seen.count(it.key())) {
      throw ParseError("field 'values' names '" + it.key() + "', which arrives in no round");
    }
  }
  try {
    return TemporalInstance(static_cast<std::size_t>(agents), static_cast<Round>(rounds.size()),
                            std::move(goods), static_cast<Round>(buffer));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const TemporalInstance& instance) {
  json rounds = json::array();
  for (Round t = 1; t <= instance.rounds(); ++t) {
    json ids = json::array();
    for (GoodIndex g : instance.arrivals(t)) ids.push_back(instance.good(g).id);
    rounds.push_back(std::move(ids));
  }
  json values = json::object();
  for (const Good& g : instance.goods()) {
    json row = json::array();
    for (const Rational& v : g.values) row.push_back(rational_json(v));
    values[g.id] = std::move(row);
  }
  return {{"format_version", kFormatVersion},
          {"agents", instance.agents()},
          {"buffer", instance.buffer()},
          {"rounds", std::move(rounds)},
          {"values", std::move(values)}};
}

TemporalAllocation allocation_from_json(const TemporalInstance& instance, const json& doc) {
  const json& placement = field(doc, "placement");
  const json& owner = field(doc, "owner");
  if (!placement.is_object() || !owner.is_object()) {
    throw ParseError("fields 'placement' and 'owner' must map good ids to integers");
  }
  TemporalAllocation alloc{Schedule::at_arrival(instance),
                           std::vector<AgentIndex>(instance.size(), 0)};
  std::vector<bool> owned(instance.size(), false);
  for (auto it = owner.begin(); it != owner.end(); ++it) {
    const auto g = instance.find(it.key());
    if (!g) throw InvalidReference("field 'owner' names unknown good '" + it.key() + "'");
    const std::int64_t a = as_int(it.value(), "owner." + it.key());
    if (a < 1 || a > static_cast<std::int64_t>(instance.agents())) {
      throw InvalidReference("field 'owner." + it.key() + "': agent " + std::to_string(a) +
                             " does not exist");
    }
    alloc.owner[*g] = static_cast<AgentIndex>(a - 1);
    owned[*g] = true;
  }
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    if (!owned[g]) {
      throw ValidationError("field 'owner' has no entry for '" + instance.good(g).id + "'");
    }
  }
  for (auto it = placement.begin(); it != placement.end(); ++it) {
    const auto g = instance.find(it.key());
    if (!g) throw InvalidReference("field 'placement' names unknown good '" + it.key() + "'");
    alloc.schedule.placement[*g] = static_cast<Round>(as_int(it.value(), "placement." + it.key()));
  }
  return alloc;
}

json to_json(const TemporalInstance& instance, const TemporalAllocation& alloc) {
  json placement = json::object();
  json owner = json::object();
  for (GoodIndex g = 0; g < instance.size(); ++g) {
    placement[instance.good(g).id] = alloc.schedule.placement.at(g);
    owner[instance.good(g).id] = alloc.owner.at(g) + 1;
  }
  return {{"format_version", kFormatVersion}, {"placement", placement}, {"owner", owner}};
}

json to_json(const TemporalInstance& instance, const Verdict& verdict) {
  json out = {{"holds", verdict.holds},  {"round", nullptr},        {"envious", nullptr},
              {"envied", nullptr},       {"removed_good", nullptr}, {"shortfall", nullptr}};
  if (verdict.witness) {
    const Violation& w = *verdict.witness;
    out["round"] = w.round;
    out["envious"] = w.envious + 1;
    out["envied"] = agent_json(w.envied);
    if (w.removed_good) out["removed_good"] = instance.good(*w.removed_good).id;
    if (w.shortfall) out["shortfall"] = rational_json(*w.shortfall);
  }
  return out;
}

json to_json(const SettingClass& s) {
  auto opt = [](const std::optional<Rational>& r) -> json {
    if (!r) return nullptr;
    return rational_json(*r);
  };
  return {{"identical_days", s.identical_days},
          {"generalized_binary", s.generalized_binary},
          {"binary_level", opt(s.binary_level)},
          {"bi_valued", s.bi_valued},
          {"low_value", opt(s.low_value)},
          {"high_value", opt(s.high_value)},
          {"identical_valuation", s.identical_valuation},
          {"house_allocation", s.house_allocation_shape},
          {"all_positive", s.all_positive},
          {"vacuous", s.vacuous}};
}

json to_json(const TemporalInstance& instance, const SearchOutcome& outcome) {
  json out = {{"format_version", kFormatVersion},
              {"exists", outcome.exists},
              {"nodes_visited", outcome.nodes_visited},
              {"space_bound", outcome.space_bound},
              {"witness", nullptr}};
  if (outcome.witness) out["witness"] = to_json(instance, *outcome.witness);
  return out;
}

json to_json(const TemporalInstance& instance, const Trace& trace) {
  json out = json::array();
  for (const TraceStep& s : trace) {
    out.push_back({{"step", s.step},
                   {"agent", s.agent + 1},
                   {"good", instance.good(s.good).id},
                   {"rule", s.rule}});
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

TemporalInstance read_instance(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return instance_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace tempfair
