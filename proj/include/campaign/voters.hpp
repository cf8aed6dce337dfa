#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "campaign/formula.hpp"
#include "campaign/rational.hpp"
#include "campaign/worlds.hpp"

namespace campaign {

enum class VoterKind { Optimistic, Pessimistic, Expected };

const char* to_string(VoterKind kind);
VoterKind voter_kind_from_string(std::string_view text);

// A voter's stance per issue: sign is direction, magnitude is strength, all
// values in [-1, 1]. Preferences are dense over the universe (an unmentioned
// issue reads as 0). The optional threshold is the turnout bar: the voter
// shows up only when their utility reaches it.
struct Voter {
  std::string id;
  VoterKind kind = VoterKind::Expected;
  std::vector<Rational> prefs;
  std::optional<Rational> threshold;
};

Voter make_voter(std::string id, VoterKind kind, std::size_t universe_size,
                 const std::vector<std::pair<std::size_t, Rational>>& nonzero_prefs,
                 std::optional<Rational> threshold = std::nullopt);

struct Population {
  UniversePtr universe;
  std::vector<Voter> voters;
};

// u_v(w) = sum_i p_v(x_i) * w(x_i) with w(x_i) in {-1, +1}.
Rational world_utility(const Voter& v, const World& w);

// Per-variable arithmetic mean over the population.
std::vector<Rational> aggregate_preferences(const std::vector<Voter>& voters);

// Utility of the voter's favourite world: sum_i |p_v(x_i)|.
Rational best_possible_utility(const Voter& v);

// --------------------------------------------------------------------------
// Voter files: JSON text of the shape
//   { "variables": ["x1", ...],            (optional)
//     "voters": [ { "id": "v1", "kind": "optimistic|pessimistic|expected",
//                   "prefs": { "x1": "1/2", ... },       (optional)
//                   "threshold": "-1/2" } ] }            (optional)
// Rationals are strings "a" or "a/b"; decimal notation is rejected.

struct VoterFileEntry {
  std::string id;
  VoterKind kind;
  std::vector<std::pair<std::string, Rational>> prefs;  // file order
  std::optional<Rational> threshold;
};

struct VoterFile {
  std::optional<std::vector<std::string>> variables;
  std::vector<VoterFileEntry> entries;
};

VoterFile read_voter_file(std::istream& in);

// Adds the file's variables to `universe`: the declared list verbatim, or
// every pref key in first-appearance order. Already-present names are kept.
void extend_universe(const VoterFile& file, VarUniverse& universe);

// Densifies preferences against the final universe. With a declared variable
// list, a pref key outside it is an UnknownVariable error.
std::vector<Voter> bind_voters(const VoterFile& file, const VarUniverse& universe);

// read + extend (from empty) + bind.
Population load_population(std::istream& in);

// Writes the exact file format back out (explicit variable list, nonzero
// preferences in universe order).
void write_voter_file(std::ostream& out, const VarUniverse& universe,
                      const std::vector<Voter>& voters);

}  // namespace campaign
