#include "dynkin/cli/app.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynkin/cli/output.hpp"
#include "dynkin/cli/recipes.hpp"
#include "dynkin/cli/spec_file.hpp"
#include "dynkin/oracle.hpp"

namespace dynkin::cli {

namespace {

struct Common {
  std::string spec_path;
  std::string example;
  std::string arithmetic;  // empty: take the file's value
  std::string mode;        // empty: take the file's value
  std::string tol;
  std::string orientation = "rows";
};

void add_common(CLI::App* cmd, Common& c, bool spec_positional = true) {
  if (spec_positional) cmd->add_option("spec", c.spec_path, "JSON game spec");
  cmd->add_option("--example", c.example, "built-in example instead of a spec file");
  cmd->add_option("--arithmetic", c.arithmetic, "float | rational")
      ->check(CLI::IsMember({"float", "rational"}));
  cmd->add_option("--tol", c.tol, "classification tolerance override");
  cmd->add_option("--orientation", c.orientation, "lattice absorbing lines: rows | columns")
      ->check(CLI::IsMember({"rows", "columns"}));
}

LatticeOrientation orientation_of(const std::string& s) {
  return s == "columns" ? LatticeOrientation::kColumns : LatticeOrientation::kRows;
}

SpecFile load(const Common& c) {
  SpecFile spec;
  if (!c.example.empty()) {
    if (!c.spec_path.empty()) throw BadParameter("give either a spec file or --example");
    spec = example_recipe(c.example, c.arithmetic.empty() ? "float" : c.arithmetic,
                          orientation_of(c.orientation));
  } else {
    if (c.spec_path.empty()) throw BadParameter("no spec file given");
    spec = load_spec_file(c.spec_path);
  }
  if (!c.arithmetic.empty()) spec.arithmetic = c.arithmetic;
  return spec;
}

template <Scalar T>
GameSpec<T> game_of(const SpecFile& file, const Common& c) {
  std::optional<T> tol;
  if (!c.tol.empty()) {
    try {
      tol = parse_scalar<T>(c.tol);
    } catch (const std::exception&) {
      throw ParseError("--tol", "not a number: \"" + c.tol + "\"");
    }
  }
  return to_game_spec<T>(file, tol);
}

InitMode mode_of(const SpecFile& file, const Common& c) {
  return *parse_init_mode(c.mode.empty() ? file.init : c.mode);
}

std::string brace(const StateSpace& states, const StoppingSet& s) {
  std::string out = "{";
  for (std::size_t x : s.members()) out += (out.size() > 1 ? "," : "") + states.label(x);
  return out + "}";
}

StoppingSet parse_labels(const StateSpace& states, const std::string& text,
                         const std::string& field) {
  StoppingSet s(states.size());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto idx = states.index_of(item);
    if (!idx) throw ParseError(field, "unknown state \"" + item + "\"");
    s.insert(*idx);
  }
  return s;
}

StoppingSet parse_labels(const StateSpace& states, const std::vector<std::string>& labels,
                         const std::string& field) {
  StoppingSet s(states.size());
  for (const auto& item : labels) {
    auto idx = states.index_of(item);
    if (!idx) throw ParseError(field, "unknown state \"" + item + "\"");
    s.insert(*idx);
  }
  return s;
}

// ---- solve

struct SolveArgs {
  Common common;
  std::string out_dir = ".";
};

template <Scalar T>
int solve(const SpecFile& file, const SolveArgs& a, std::ostream& out) {
  GameSpec<T> spec = game_of<T>(file, a.common);
  Solution<T> sol = solve_game(spec, mode_of(file, a.common));
  std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / "solution.json", solution_json(spec, sol).dump(2) + "\n");
  write_text(dir / "trace.json", trace_json(spec, sol).dump(2) + "\n");
  write_text(dir / "values.csv", values_csv(spec, sol));
  out << "states: " << spec.size() << "\n"
      << "mode: " << to_string(sol.trace.mode) << "\n"
      << "shortcut: " << (sol.shortcut_used ? "yes" : "no") << "\n"
      << "outer iterations: " << sol.outer_iterations() << "\n"
      << "inner steps: " << sol.trace.total_inner_steps << "\n";
  for (std::size_t k = 0; k < sol.trace.outer.size(); ++k) {
    const auto& o = sol.trace.outer[k];
    out << "S" << k + 1 << " = " << brace(spec.states, o.inf_set) << "\n"
        << "D" << k + 1 << " = " << brace(spec.states, o.inner.stop_set) << "\n";
  }
  out << "sup stop: " << brace(spec.states, sol.sup_stop) << "\n"
      << "inf stop: " << brace(spec.states, sol.inf_stop) << "\n"
      << "wrote " << (dir / "solution.json").string() << ", trace.json, values.csv\n";
  return kOk;
}

// ---- verify

struct VerifyArgs {
  Common common;
  std::vector<std::string> files;  // [spec] solution
  std::string solution_path;
};

template <Scalar T>
int verify(const SpecFile& file, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  GameSpec<T> spec = game_of<T>(file, a.common);
  StoredSolution stored = parse_solution_text(read_text(a.solution_path));
  if (stored.value.size() != spec.size())
    throw ParseError("value", "expected " + std::to_string(spec.size()) + " entries");
  std::vector<T> v;
  for (std::size_t x = 0; x < stored.value.size(); ++x) {
    try {
      v.push_back(parse_scalar<T>(stored.value[x]));
    } catch (const std::exception&) {
      throw ParseError("value[" + std::to_string(x) + "]", "not a number");
    }
  }
  const StoppingSet equal = spec.equal_payoff_set();
  StoppingSet sup = parse_labels(spec.states, stored.sup_stop, "sup_stop");
  StoppingSet inf = parse_labels(spec.states, stored.inf_stop, "inf_stop");
  // Both players' sets contain {phi = psi} in the stored form; the check
  // wants them without it.
  StoppingSet a_set = sup - equal, b_set = inf - equal;
  NEReport<T> report;
  try {
    report = verify_equilibrium<T>(spec, a_set, b_set, v);
  } catch (const PreconditionViolated& e) {
    err << "verification failed: precondition violated: " << e.what() << "\n";
    return kVerifyFailed;
  }
  out << std::left << std::setw(10) << "state" << ' ' << std::setw(9) << "region" << ' '
      << std::setw(24) << "defect" << ' ' << std::setw(24) << "V-psi" << ' ' << std::setw(24)
      << "phi-V" << " status\n";
  for (const auto& c : report.states) {
    out << std::setw(10) << spec.states.label(c.state) << ' ' << std::setw(9)
        << to_string(c.region) << ' ' << std::setw(24) << format_double(to_double(c.defect))
        << ' ' << std::setw(24) << format_double(to_double(c.above_psi)) << ' '
        << std::setw(24) << format_double(to_double(c.below_phi)) << ' ';
    if (c.ok) {
      out << "ok";
    } else {
      out << "FAIL:";
      for (const auto& b : c.broken) out << " " << b << ";";
    }
    out << "\n";
  }
  out << "tolerance: " << format_double(to_double(report.tolerance)) << "\n";
  if (!report.pass) {
    std::string list;
    for (std::size_t x : report.failing) list += (list.empty() ? "" : ",") + spec.states.label(x);
    err << "verification failed at states {" << list << "}\n";
    return kVerifyFailed;
  }
  out << "equilibrium verified\n";
  return kOk;
}

// ---- oracle

struct OracleArgs {
  Common common;
  std::string check = "all";
};

template <Scalar T>
void print_compare(const GameSpec<T>& spec, std::ostream& out) {
  ModeComparison<T> cmp = compare_modes(spec);
  const auto& s = cmp.strict.trace.outer;
  const auto& w = cmp.weak.trace.outer;
  if (cmp.both_shortcut) {
    out << "both modes take the shortcut V = V0\n";
  } else {
    for (std::size_t k = 0; k < std::max(s.size(), w.size()); ++k) {
      const auto& a = s[std::min(k, s.size() - 1)].inf_set;
      const auto& b = w[std::min(k, w.size() - 1)].inf_set;
      out << "k=" << k + 1 << ": S=" << brace(spec.states, a)
          << (a.subset_of(b) ? " ⊆ " : " ⊄ ") << "S~=" << brace(spec.states, b) << "\n";
    }
  }
  if (cmp.limits_equal) {
    out << "S∞ = S̃∞ = " << brace(spec.states, cmp.strict.inf_stop);
  } else {
    out << "S∞=" << brace(spec.states, cmp.strict.inf_stop)
        << ", S̃∞=" << brace(spec.states, cmp.weak.inf_stop);
  }
  out << ", values " << (cmp.values_agree ? "equal" : "differ")
      << " (gap " << format_double(cmp.value_gap) << ")\n";
  for (const auto& v : cmp.violations) out << "violation: " << v << "\n";
}

int oracle(const SpecFile& file, const OracleArgs& a, std::ostream& out) {
  const bool all = a.check == "all";
  int code = kOk;
  GameSpec<double> spec = game_of<double>(file, a.common);
  const InitMode mode = mode_of(file, a.common);
  if (all || a.check == "gap") {
    Solution<double> sol = solve_game(spec, mode);
    ValueIterationResult vi = value_iteration(spec);
    double gap = 0.0;
    for (std::size_t x = 0; x < spec.size(); ++x)
      gap = std::max(gap, std::fabs(vi.value[x] - sol.value[x]));
    out << "value iteration: " << vi.iterations << " sweeps, alpha "
        << format_double(vi.alpha) << "\n"
        << "oracle gap: " << format_double(gap) << "\n";
    if (!(gap <= 1e-6)) {
      out << "oracle gap exceeds 1e-6\n";
      code = kOracleGap;
    }
  }
  if (all || a.check == "enumerate") {
    if (spec.size() > 7) {
      out << "enumeration skipped: " << spec.size() << " states (limit 7)\n";
    } else {
      auto eqs = enumerate_equilibria(spec);
      out << "equilibria: " << eqs.size() << "\n";
      for (const auto& e : eqs) {
        out << "  A=" << brace(spec.states, e.sup_set) << " B=" << brace(spec.states, e.inf_set)
            << " V=(";
        for (std::size_t x = 0; x < e.value.size(); ++x)
          out << (x ? ", " : "") << format_double(e.value[x]);
        out << ")\n";
      }
    }
  }
  if (all || a.check == "compare") {
    if (file.arithmetic == "rational") {
      print_compare(game_of<Rational>(file, a.common), out);
    } else {
      print_compare(spec, out);
    }
  }
  return code;
}

// ---- simulate

struct SimulateArgs {
  Common common;
  std::string sup, inf, from;
  std::uint64_t paths = 100'000;
  std::uint64_t seed = 42;
  double horizon = 0.0;
  double z = 3.0;
};

int simulate(const SpecFile& file, const SimulateArgs& a, std::ostream& out) {
  GameSpec<double> spec = game_of<double>(file, a.common);
  StoppingSet b = parse_labels(spec.states, a.sup, "--sup");
  StoppingSet c = parse_labels(spec.states, a.inf, "--inf");
  auto x = spec.states.index_of(a.from);
  if (!x) throw ParseError("--from", "unknown state \"" + a.from + "\"");
  SimulationConfig cfg;
  cfg.paths = a.paths;
  cfg.seed = a.seed;
  cfg.confidence_z = a.z;
  if (a.horizon > 0) cfg.horizon = a.horizon;
  PayoffEstimate est = simulate_hitting_payoff(spec, b, c, *x, cfg);
  const double exact = hitting_payoff(spec, b, c)[*x];
  const double diff = std::fabs(exact - est.mean);
  const double bound = cfg.confidence_z * est.std_error + est.bias_bound;
  out << "estimate: " << format_double(est.mean) << " ± "
      << format_double(cfg.confidence_z * est.std_error) << " (z=" << format_double(cfg.confidence_z)
      << ", stderr " << format_double(est.std_error) << ")\n"
      << "bias bound: " << format_double(est.bias_bound) << " (horizon "
      << format_double(est.horizon) << ")\n"
      << "paths: " << est.paths_used << ", truncated: " << est.truncated << "\n"
      << "rng: " << est.rng << ", seed " << cfg.seed << "\n"
      << "exact: " << format_double(exact) << "\n"
      << "discrepancy: " << format_double(diff);
  if (est.std_error > 0) out << " (" << format_double(diff / est.std_error) << " stderr)";
  out << "\n";
  if (est.truncated > 0 && est.bias_bound > cfg.confidence_z * est.std_error)
    out << "warning: truncation dominates the error budget\n";
  if (!(diff <= bound)) {
    out << "simulation disagrees with the exact payoff\n";
    return kSimulationDiscrepancy;
  }
  out << "simulation agrees with the exact payoff\n";
  return kOk;
}

// ---- example

struct ExampleArgs {
  std::string name;
  std::string arithmetic = "float";
  std::string orientation = "rows";
  std::string out_path;
  bool list = false;
};

int example(const ExampleArgs& a, std::ostream& out) {
  if (a.list || a.name.empty()) {
    for (const auto& r : recipe_catalog()) out << std::left << std::setw(20) << r.name << r.description << "\n";
    return kOk;
  }
  std::string text = dump_spec(example_recipe(a.name, a.arithmetic, orientation_of(a.orientation)));
  if (a.out_path.empty()) {
    out << text;
  } else {
    write_text(a.out_path, text);
  }
  return kOk;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value and equilibrium stopping sets of Dynkin games on finite Markov chains",
               "dynkin"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve a game and write solution files");
  add_common(solve_cmd, solve_args.common);
  solve_cmd->add_option("--mode", solve_args.common.mode, "strict | weak")
      ->check(CLI::IsMember({"strict", "weak"}));
  solve_cmd->add_option("--out", solve_args.out_dir, "output directory");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check a stored solution for equilibrium");
  add_common(verify_cmd, verify_args.common, false);
  verify_cmd->add_option("files", verify_args.files, "[spec.json] solution.json")
      ->required()
      ->expected(1, 2);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "compare against independent oracles");
  add_common(oracle_cmd, oracle_args.common);
  oracle_cmd->add_option("--mode", oracle_args.common.mode, "strict | weak")
      ->check(CLI::IsMember({"strict", "weak"}));
  oracle_cmd->add_option("--check", oracle_args.check, "gap | enumerate | compare | all")
      ->check(CLI::IsMember({"gap", "enumerate", "compare", "all"}));

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of a hitting payoff");
  add_common(sim_cmd, sim_args.common);
  sim_cmd->add_option("--sup", sim_args.sup, "sup player's stopping set, comma separated");
  sim_cmd->add_option("--inf", sim_args.inf, "inf player's stopping set, comma separated");
  sim_cmd->add_option("--from", sim_args.from, "starting state")->required();
  sim_cmd->add_option("--paths", sim_args.paths, "number of paths");
  sim_cmd->add_option("--seed", sim_args.seed, "random seed");
  sim_cmd->add_option("--horizon", sim_args.horizon, "truncation time (default from payoffs)");
  sim_cmd->add_option("--z", sim_args.z, "confidence multiplier");

  ExampleArgs ex_args;
  auto* ex_cmd = app.add_subcommand("example", "print a built-in example spec");
  ex_cmd->add_option("name", ex_args.name, "example name");
  ex_cmd->add_flag("--list", ex_args.list, "list examples");
  ex_cmd->add_option("--arithmetic", ex_args.arithmetic, "float | rational")
      ->check(CLI::IsMember({"float", "rational"}));
  ex_cmd->add_option("--orientation", ex_args.orientation, "rows | columns")
      ->check(CLI::IsMember({"rows", "columns"}));
  ex_cmd->add_option("--out", ex_args.out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (*solve_cmd) {
      SpecFile file = load(solve_args.common);
      return file.arithmetic == "rational" ? solve<Rational>(file, solve_args, out)
                                           : solve<double>(file, solve_args, out);
    }
    if (*verify_cmd) {
      auto& f = verify_args.files;
      const std::size_t wanted = verify_args.common.example.empty() ? 2 : 1;
      if (f.size() != wanted)
        throw BadParameter(wanted == 2 ? "verify needs a spec file and a solution file"
                                       : "verify with --example takes only a solution file");
      verify_args.solution_path = f.back();
      if (wanted == 2) verify_args.common.spec_path = f.front();
      SpecFile file = load(verify_args.common);
      return file.arithmetic == "rational" ? verify<Rational>(file, verify_args, out, err)
                                           : verify<double>(file, verify_args, out, err);
    }
    if (*oracle_cmd) return oracle(load(oracle_args.common), oracle_args, out);
    if (*sim_cmd) return simulate(load(sim_args.common), sim_args, out);
    if (*ex_cmd) return example(ex_args, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "validation failed:\n";
    for (const auto& d : e.diagnostics()) err << "  " << d << "\n";
    return kValidation;
  } catch (const IterationOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kOverflow;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace dynkin::cli
