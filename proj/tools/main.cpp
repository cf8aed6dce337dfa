#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "campaign/evaluation.hpp"
#include "campaign/reductions.hpp"
#include "campaign/strategy.hpp"

namespace {

using namespace campaign;

struct Options {
  std::string theory_path;
  std::string voters_path;
  std::string formula_path;
  std::string voter_id;
  std::string kind;
  std::string via = "enumerate";
  std::string gadget;
  std::string direction = "max";
  std::string weights;
  std::string out_dir = ".";
  std::size_t h = 0;
  bool machine = false;
  Limits limits;
};

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

// Universe assembly order: voters file first (declared list or pref-key
// first-appearance order), then theory/formula variables on top.
struct LoadedInputs {
  UniversePtr universe;
  std::vector<Voter> voters;
  std::vector<Formula> statements;
};

LoadedInputs load_inputs(const Options& opt, bool need_theory, bool need_voters) {
  VarUniverse universe;
  std::optional<VoterFile> voter_file;
  if (need_voters) {
    auto in = open_file(opt.voters_path);
    voter_file = read_voter_file(in);
    extend_universe(*voter_file, universe);
  }
  std::vector<Formula> statements;
  if (need_theory) {
    auto in = open_file(opt.theory_path);
    statements = parse_theory_lines(in, universe);
  }
  LoadedInputs loaded;
  loaded.universe = std::make_shared<const VarUniverse>(std::move(universe));
  if (voter_file) loaded.voters = bind_voters(*voter_file, *loaded.universe);
  loaded.statements = std::move(statements);
  return loaded;
}

bool looks_like_dimacs(const std::string& path) {
  auto in = open_file(path);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line.compare(first, 2, "c ") == 0 || line.compare(first, 1, "c") == 0 ||
        line.compare(first, 1, "%") == 0)
      continue;
    return line.compare(first, 5, "p cnf") == 0;
  }
  return false;
}

// Formula files use the theory format; the formula is the conjunction of the
// lines. DIMACS input is detected by its header.
struct LoadedFormula {
  UniversePtr universe;
  Formula formula;
  std::optional<CnfFormula> cnf;  // set when the input was DIMACS
};

LoadedFormula load_formula(const std::string& path) {
  if (looks_like_dimacs(path)) {
    auto in = open_file(path);
    CnfFormula cnf = parse_dimacs(in);
    Formula f = cnf_to_formula(cnf);
    return LoadedFormula{cnf.universe, std::move(f), std::move(cnf)};
  }
  auto in = open_file(path);
  VarUniverse universe;
  std::vector<Formula> statements = parse_theory_lines(in, universe);
  auto frozen = std::make_shared<const VarUniverse>(std::move(universe));
  return LoadedFormula{frozen, Formula::conjunction(std::move(statements)), std::nullopt};
}

std::string world_bits(const World& w) {
  std::string bits;
  bits.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) bits += w.value(i) ? '1' : '0';
  return bits;
}

std::string world_text(const World& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w.universe().name(i);
    out += '=';
    out += w.value(i) ? 'T' : 'F';
  }
  return out;
}

VoterKind uniform_kind(const std::vector<Voter>& voters, const std::string& requested) {
  if (!requested.empty()) return voter_kind_from_string(requested);
  if (voters.empty()) throw EmptyPopulation();
  VoterKind kind = voters.front().kind;
  for (const auto& v : voters)
    if (v.kind != kind) throw Error("voters have mixed kinds; pass --kind");
  return kind;
}

void print_theory(const Theory& t, const Options& opt) {
  const auto& statements = t.statements();
  for (std::size_t i = 0; i < statements.size(); ++i) {
    std::string text = to_string(statements[i], t.universe());
    if (opt.machine)
      std::cout << "statement." << i + 1 << "=" << text << "\n";
    else
      std::cout << "  " << text << "\n";
  }
  if (!opt.machine && statements.empty()) std::cout << "  (empty theory)\n";
}

int cmd_eval(const Options& opt) {
  LoadedInputs inputs = load_inputs(opt, true, true);
  Theory theory(inputs.universe, std::move(inputs.statements));
  bool found = opt.voter_id.empty();
  for (const auto& v : inputs.voters) {
    if (!opt.voter_id.empty() && v.id != opt.voter_id) continue;
    found = true;
    UtilityResult result = utility(theory, v, opt.limits);
    if (opt.machine) {
      std::cout << "utility." << v.id << "=" << result.value.str() << "\n";
      if (result.witness)
        std::cout << "witness." << v.id << "=" << world_bits(*result.witness) << "\n";
    } else {
      std::cout << v.id << " " << to_string(v.kind) << " " << result.value.str();
      if (result.witness) std::cout << " [" << world_text(*result.witness) << "]";
      std::cout << "\n";
    }
  }
  if (!found) throw Error("no voter with id '" + opt.voter_id + "'");
  return 0;
}

int cmd_optimize(const Options& opt) {
  LoadedInputs inputs = load_inputs(opt, false, true);
  VoterKind kind = uniform_kind(inputs.voters, opt.kind);
  StrategyResult result = optimal_complete_theory(inputs.universe, inputs.voters, kind);
  print_theory(result.theory, opt);
  std::cout << "total=" << result.total.str() << "\n";
  return 0;
}

int cmd_complete(const Options& opt) {
  LoadedInputs inputs = load_inputs(opt, true, true);
  Theory theory(inputs.universe, std::move(inputs.statements));
  VoterKind kind = uniform_kind(inputs.voters, opt.kind);
  StrategyResult result = optimal_completion(theory, inputs.voters, kind, opt.limits);
  print_theory(result.theory, opt);
  std::cout << "total=" << result.total.str() << "\n";
  return 0;
}

int cmd_turnout(const Options& opt) {
  LoadedInputs inputs = load_inputs(opt, false, true);
  TurnoutInstance instance{inputs.universe, std::move(inputs.voters), opt.h};

  bool any_opt = false, any_pess = false;
  for (const auto& v : instance.voters) {
    if (v.kind == VoterKind::Optimistic) any_opt = true;
    else if (v.kind == VoterKind::Pessimistic) any_pess = true;
    else throw Error("turnout instances take optimistic or pessimistic voters only");
  }

  TurnoutResult result;
  if (any_opt && !any_pess)
    result = optimistic_turnout(instance);
  else if (any_pess && !any_opt)
    result = pessimistic_turnout(instance, opt.limits);
  else
    result = mixed_turnout(instance, opt.limits);

  std::cout << (opt.machine ? "decision=" : "") << (result.decision ? "YES" : "NO") << "\n";
  if (opt.machine) {
    std::cout << "satisfied=" << result.satisfied_count << "\n";
    for (std::size_t i = 0; i < result.satisfied_ids.size(); ++i)
      std::cout << "satisfied_id." << i + 1 << "=" << result.satisfied_ids[i] << "\n";
    for (std::size_t i = 0; i < result.best_utilities.size(); ++i)
      std::cout << "best." << instance.voters[i].id << "="
                << result.best_utilities[i].str() << "\n";
  } else {
    std::cout << "satisfied " << result.satisfied_count << " of " << instance.voters.size()
              << " (needed " << instance.h << ")\n";
    for (std::size_t i = 0; i < result.best_utilities.size(); ++i)
      std::cout << "best " << instance.voters[i].id << " "
                << result.best_utilities[i].str() << "\n";
    if (!result.satisfied_ids.empty()) {
      std::cout << "ids";
      for (const auto& id : result.satisfied_ids) std::cout << " " << id;
      std::cout << "\n";
    }
  }
  if (result.witness) {
    if (!opt.machine) std::cout << "witness theory:\n";
    print_theory(*result.witness, opt);
  }
  return 0;
}

int cmd_count(const Options& opt) {
  LoadedFormula loaded = load_formula(opt.formula_path);
  std::uint64_t count = 0;
  if (opt.via == "enumerate") {
    Theory theory(loaded.universe, {loaded.formula});
    count = count_models(theory, opt.limits).total;
  } else if (opt.via == "utility") {
    count = count_via_expected_utility(loaded.formula, *loaded.universe, opt.limits);
  } else {
    throw Error("--via must be enumerate or utility");
  }
  std::cout << (opt.machine ? "models=" : "") << count << "\n";
  return 0;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

void emit_instance_files(const Options& opt, const std::filesystem::path& dir,
                         const std::vector<std::pair<std::string, std::string>>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : files) {
    write_text_file(dir / name, text);
    std::cout << (opt.machine ? "file=" : "wrote ") << (dir / name).string() << "\n";
  }
}

std::string theory_file_text(const Theory& t) {
  std::string text;
  for (const auto& s : t.statements()) text += to_string(s, t.universe()) + "\n";
  return text;
}

std::string voters_file_text(const VarUniverse& universe, const std::vector<Voter>& voters) {
  std::ostringstream out;
  write_voter_file(out, universe, voters);
  return out.str();
}

int cmd_reduce(const Options& opt) {
  LoadedFormula loaded = load_formula(opt.formula_path);
  std::filesystem::path dir(opt.out_dir);
  auto key = [&](const std::string& k) { return opt.machine ? k + "=" : k + ": "; };

  if (opt.gadget == "sat-optimistic" || opt.gadget == "unsat-pessimistic") {
    ReductionInstance instance =
        opt.gadget == "sat-optimistic"
            ? sat_to_optimistic_threshold(loaded.formula, *loaded.universe)
            : unsat_to_pessimistic_threshold(loaded.formula, *loaded.universe);
    emit_instance_files(opt, dir,
                        {{"theory.txt", theory_file_text(instance.theory)},
                         {"voters.json", voters_file_text(instance.theory.universe(),
                                                          {instance.voter})}});
    std::cout << key("k") << instance.threshold->str() << "\n";
    std::cout << key("inverse") << instance.inverse << "\n";
    return 0;
  }

  if (opt.gadget == "wsat") {
    WsatInstance source;
    source.universe = loaded.universe;
    source.formula = loaded.formula;
    source.direction = opt.direction == "min" ? WsatDirection::Min : WsatDirection::Max;
    if (opt.weights.empty()) {
      source.weights.assign(loaded.universe->size(), Rational(1));
    } else {
      std::istringstream ws(opt.weights);
      std::string token;
      while (std::getline(ws, token, ',')) source.weights.push_back(Rational::parse(token));
    }
    ReductionInstance instance = wsat_to_evaluation(source, opt.limits);
    emit_instance_files(opt, dir,
                        {{"theory.txt", theory_file_text(instance.theory)},
                         {"voters.json", voters_file_text(instance.theory.universe(),
                                                          {instance.voter})}});
    std::cout << key("R") << instance.weight_scale->str() << "\n";
    std::cout << key("sum_r") << instance.weight_sum->str() << "\n";
    std::cout << key("inverse") << instance.inverse << "\n";
    return 0;
  }

  if (opt.gadget == "count") {
    CountGadget gadget = make_count_gadget(loaded.formula, *loaded.universe);
    emit_instance_files(opt, dir,
                        {{"psi.txt", theory_file_text(gadget.psi)},
                         {"psi-prime.txt", theory_file_text(gadget.psi_prime)},
                         {"voters.json", voters_file_text(gadget.psi.universe(),
                                                          {gadget.d})}});
    std::cout << key("inverse")
              << "#SAT = 1/(u1/u2 - 1) for expected utilities u1 on psi.txt and u2 on "
                 "psi-prime.txt; #SAT = 0 when u2 = 0\n";
    return 0;
  }

  if (opt.gadget == "cnf-turnout") {
    CnfFormula cnf = loaded.cnf ? *loaded.cnf
                                : clauses_from_formula(loaded.formula, loaded.universe);
    CnfTurnoutReduction reduction = cnfsat_to_pessimistic_turnout(cnf);
    if (reduction.trivially_no) {
      std::cout << key("decision") << "NO\n";
      std::cout << key("inverse") << reduction.inverse << "\n";
      return 0;
    }
    emit_instance_files(opt, dir,
                        {{"voters.json",
                          voters_file_text(*reduction.instance->universe,
                                           reduction.instance->voters)}});
    std::cout << key("h") << reduction.instance->h << "\n";
    std::cout << key("inverse") << reduction.inverse << "\n";
    return 0;
  }

  throw Error("unknown gadget '" + opt.gadget +
              "' (expected sat-optimistic, unsat-pessimistic, wsat, count, cnf-turnout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact voter-utility and campaign-strategy solver"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--nmax", opt.limits.max_variables, "Enumeration limit on variables");
  app.add_option("--pmax", opt.limits.max_pessimistic_voters,
                 "Subset-search limit on pessimistic voters");
  app.add_option("--threads", opt.limits.threads, "Worker threads for world scans");
  app.add_flag("--machine", opt.machine, "One key=value pair per line");

  auto* eval = app.add_subcommand("eval", "Per-voter utilities for a theory");
  eval->add_option("--theory", opt.theory_path, "Theory file")->required();
  eval->add_option("--voters", opt.voters_path, "Voters file")->required();
  eval->add_option("--voter", opt.voter_id, "Only this voter id");

  auto* optimize = app.add_subcommand("optimize", "Optimal complete theory for a population");
  optimize->add_option("--voters", opt.voters_path, "Voters file")->required();
  optimize->add_option("--kind", opt.kind, "expected or pessimistic");

  auto* complete = app.add_subcommand("complete", "Optimal completion of a theory");
  complete->add_option("--theory", opt.theory_path, "Theory file")->required();
  complete->add_option("--voters", opt.voters_path, "Voters file")->required();
  complete->add_option("--kind", opt.kind, "expected or pessimistic");

  auto* turnout = app.add_subcommand("turnout", "Can h voters be brought to the polls?");
  turnout->add_option("--voters", opt.voters_path, "Voters file (with thresholds)")->required();
  turnout->add_option("--h", opt.h, "Required number of satisfied voters")->required();

  auto* reduce = app.add_subcommand("reduce", "Emit a reduction gadget instance");
  reduce->add_option("--gadget", opt.gadget,
                     "sat-optimistic | unsat-pessimistic | wsat | count | cnf-turnout")
      ->required();
  reduce->add_option("--formula", opt.formula_path, "Formula file (grammar or DIMACS)")
      ->required();
  reduce->add_option("--direction", opt.direction, "wsat: max or min");
  reduce->add_option("--weights", opt.weights, "wsat: comma-separated rationals");
  reduce->add_option("--out", opt.out_dir, "Output directory");

  auto* count = app.add_subcommand("count", "Model count of a formula");
  count->add_option("--formula", opt.formula_path, "Formula file (grammar or DIMACS)")
      ->required();
  count->add_option("--via", opt.via, "enumerate or utility");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(opt);
    if (optimize->parsed()) return cmd_optimize(opt);
    if (complete->parsed()) return cmd_complete(opt);
    if (turnout->parsed()) return cmd_turnout(opt);
    if (reduce->parsed()) return cmd_reduce(opt);
    if (count->parsed()) return cmd_count(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
