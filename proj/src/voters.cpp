#include "campaign/voters.hpp"

#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

namespace campaign {

using OrderedJson = nlohmann::ordered_json;

const char* to_string(VoterKind kind) {
  switch (kind) {
    case VoterKind::Optimistic: return "optimistic";
    case VoterKind::Pessimistic: return "pessimistic";
    case VoterKind::Expected: return "expected";
  }
  throw Error("unreachable voter kind");
}

VoterKind voter_kind_from_string(std::string_view text) {
  if (text == "optimistic") return VoterKind::Optimistic;
  if (text == "pessimistic") return VoterKind::Pessimistic;
  if (text == "expected") return VoterKind::Expected;
  throw ParseError("unknown voter kind '" + std::string(text) + "'");
}

Voter make_voter(std::string id, VoterKind kind, std::size_t universe_size,
                 const std::vector<std::pair<std::size_t, Rational>>& nonzero_prefs,
                 std::optional<Rational> threshold) {
  Voter v{std::move(id), kind, std::vector<Rational>(universe_size, Rational(0)),
          std::move(threshold)};
  for (const auto& [index, value] : nonzero_prefs) {
    if (index >= universe_size) throw Error("preference index out of range");
    v.prefs[index] = value;
  }
  return v;
}

Rational world_utility(const Voter& v, const World& w) {
  if (v.prefs.size() != w.size()) throw Error("voter and world use different universes");
  Rational total;
  for (std::size_t i = 0; i < v.prefs.size(); ++i) {
    if (v.prefs[i].sign() == 0) continue;
    total += w.value(i) ? v.prefs[i] : -v.prefs[i];
  }
  return total;
}

std::vector<Rational> aggregate_preferences(const std::vector<Voter>& voters) {
  if (voters.empty()) throw EmptyPopulation();
  std::size_t n = voters.front().prefs.size();
  Rational m(static_cast<long long>(voters.size()));
  std::vector<Rational> mean(n, Rational(0));
  for (const auto& v : voters) {
    if (v.prefs.size() != n) throw Error("voters use different universes");
    for (std::size_t i = 0; i < n; ++i) mean[i] += v.prefs[i];
  }
  for (std::size_t i = 0; i < n; ++i) mean[i] /= m;
  return mean;
}

Rational best_possible_utility(const Voter& v) {
  Rational total;
  for (const auto& p : v.prefs) {
    if (p.sign() == 0) continue;
    total += p.abs();
  }
  return total;
}

// ---------------------------------------------------------------------------
// Voter files

namespace {

Rational parse_pref_value(const OrderedJson& value, const std::string& context) {
  if (!value.is_string())
    throw ParseError(context + ": rationals must be strings like \"1/2\"");
  return Rational::parse(value.get<std::string>());
}

}  // namespace

VoterFile read_voter_file(std::istream& in) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("voter file: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("voter file: top level must be an object");

  VoterFile file;
  for (const auto& [key, value] : doc.items()) {
    if (key != "variables" && key != "voters")
      throw ParseError("voter file: unknown key '" + key + "'");
  }

  if (doc.contains("variables")) {
    const auto& vars = doc["variables"];
    if (!vars.is_array()) throw ParseError("voter file: 'variables' must be an array");
    std::vector<std::string> names;
    for (const auto& v : vars) {
      if (!v.is_string()) throw ParseError("voter file: variable names must be strings");
      names.push_back(v.get<std::string>());
    }
    file.variables = std::move(names);
  }

  if (!doc.contains("voters")) throw ParseError("voter file: missing 'voters'");
  const auto& voters = doc["voters"];
  if (!voters.is_array()) throw ParseError("voter file: 'voters' must be an array");

  std::set<std::string> seen_ids;
  for (const auto& entry : voters) {
    if (!entry.is_object()) throw ParseError("voter file: each voter must be an object");
    VoterFileEntry e;
    if (!entry.contains("id") || !entry["id"].is_string())
      throw ParseError("voter file: voter without string 'id'");
    e.id = entry["id"].get<std::string>();
    if (e.id.empty()) throw ParseError("voter file: empty voter id");
    if (!seen_ids.insert(e.id).second)
      throw ParseError("voter file: duplicate voter id '" + e.id + "'");
    if (!entry.contains("kind") || !entry["kind"].is_string())
      throw ParseError("voter '" + e.id + "': missing 'kind'");
    e.kind = voter_kind_from_string(entry["kind"].get<std::string>());
    for (const auto& [key, value] : entry.items()) {
      if (key != "id" && key != "kind" && key != "prefs" && key != "threshold")
        throw ParseError("voter '" + e.id + "': unknown key '" + key + "'");
    }
    if (entry.contains("prefs")) {
      const auto& prefs = entry["prefs"];
      if (!prefs.is_object()) throw ParseError("voter '" + e.id + "': 'prefs' must be an object");
      for (const auto& [name, value] : prefs.items()) {
        Rational p = parse_pref_value(value, "voter '" + e.id + "', pref '" + name + "'");
        if (p < Rational(-1) || p > Rational(1))
          throw ParseError("voter '" + e.id + "': preference for '" + name +
                           "' outside [-1, 1]");
        e.prefs.emplace_back(name, std::move(p));
      }
    }
    if (entry.contains("threshold"))
      e.threshold = parse_pref_value(entry["threshold"], "voter '" + e.id + "', threshold");
    file.entries.push_back(std::move(e));
  }
  return file;
}

void extend_universe(const VoterFile& file, VarUniverse& universe) {
  if (file.variables) {
    for (const auto& name : *file.variables)
      if (!universe.find(name)) universe.add(name);
    return;
  }
  for (const auto& e : file.entries)
    for (const auto& [name, value] : e.prefs)
      if (!universe.find(name)) universe.add(name);
}

std::vector<Voter> bind_voters(const VoterFile& file, const VarUniverse& universe) {
  std::vector<Voter> voters;
  voters.reserve(file.entries.size());
  for (const auto& e : file.entries) {
    Voter v{e.id, e.kind, std::vector<Rational>(universe.size(), Rational(0)), e.threshold};
    for (const auto& [name, value] : e.prefs) {
      auto idx = universe.find(name);
      if (!idx) throw UnknownVariable(name);
      v.prefs[*idx] = value;
    }
    voters.push_back(std::move(v));
  }
  return voters;
}

Population load_population(std::istream& in) {
  VoterFile file = read_voter_file(in);
  VarUniverse universe;
  extend_universe(file, universe);
  auto frozen = std::make_shared<const VarUniverse>(std::move(universe));
  return Population{frozen, bind_voters(file, *frozen)};
}

void write_voter_file(std::ostream& out, const VarUniverse& universe,
                      const std::vector<Voter>& voters) {
  OrderedJson doc;
  doc["variables"] = universe.names();
  doc["voters"] = OrderedJson::array();
  for (const auto& v : voters) {
    if (v.prefs.size() != universe.size()) throw Error("voter does not match the universe");
    OrderedJson entry;
    entry["id"] = v.id;
    entry["kind"] = to_string(v.kind);
    OrderedJson prefs = OrderedJson::object();
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (v.prefs[i].sign() != 0) prefs[universe.name(i)] = v.prefs[i].str();
    entry["prefs"] = std::move(prefs);
    if (v.threshold) entry["threshold"] = v.threshold->str();
    doc["voters"].push_back(std::move(entry));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace campaign
