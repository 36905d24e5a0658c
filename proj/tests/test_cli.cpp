#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dynkin/cli/app.hpp"
#include "dynkin/cli/output.hpp"
#include "dynkin/cli/recipes.hpp"
#include "dynkin/cli/spec_file.hpp"
#include "support/random_games.hpp"

using namespace dynkin;
using namespace dynkin::cli;
namespace fs = std::filesystem;

#ifndef DYNKIN_GOLDEN_DIR
#error "DYNKIN_GOLDEN_DIR must be defined"
#endif

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dynkin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("dynkin-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string write(const fs::path& p, const std::string& text) {
  write_text(p, text);
  return p.string();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(read_text(p)); }

const char* kFourStateFile = R"({
  "states": ["0", "1", "2", "3"],
  "generator": [[-1, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -1]],
  "beta": 0.2,
  "psi": [10, 4, 2, 1],
  "phi": [12, 8, 4.9834, 1]
})";

}  // namespace

TEST(SpecFile, ParsesFourStateFile) {
  auto file = parse_spec_text(kFourStateFile);
  EXPECT_EQ(file.init, "strict");
  EXPECT_EQ(file.arithmetic, "float");
  auto spec = to_game_spec<double>(file);
  EXPECT_EQ(spec.beta, 0.2);
  EXPECT_EQ(spec.psi, (std::vector<double>{10, 4, 2, 1}));
  EXPECT_EQ(spec.generator(1, 1), -2.0);
  auto exact = to_game_spec<Rational>(file);
  EXPECT_EQ(exact.beta, Rational(1, 5));
}

TEST(SpecFile, PsiAbovePhiIsValidationError) {
  auto file = parse_spec_text(
      R"({"states":["a"],"generator":[[0]],"beta":1,"psi":[2],"phi":[1]})");
  try {
    to_game_spec<double>(file);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_NE(e.diagnostics()[0].find("psi[a] > phi[a]"), std::string::npos);
  }
}

TEST(SpecFile, RationalFractionIsExact) {
  auto file = parse_spec_text(R"({"states":["0","1"],"generator":[[-1,1],[1,-1]],
    "beta":"1/5","psi":[0,0],"phi":["60/11","1/3"],"arithmetic":"rational"})");
  auto spec = to_game_spec<Rational>(file);
  EXPECT_EQ(spec.phi[0], Rational(60, 11));
  EXPECT_EQ(spec.phi[1], Rational(1, 3));
}

TEST(SpecFile, ParseErrorsNameTheField) {
  try {
    parse_spec_text("{\n \"states\": [\"a\"],\n \"generator\": [[0]],\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    parse_spec_text(R"({"states":["a"],"generator":[[0]],"beta":1,"psi":[true],"phi":[1]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "psi[0]");
  }
  auto file = parse_spec_text(
      R"({"states":["a"],"generator":[[0]],"beta":1,"psi":["x"],"phi":[1]})");
  EXPECT_THROW(to_game_spec<double>(file), ParseError);
  EXPECT_THROW(parse_spec_text(R"({"states":["a"],"generator":[[0]],"beta":1,"psi":[1],
                                   "phi":[1],"init":"lazy"})"),
               ParseError);
}

TEST(SpecFile, DumpRoundTrip) {
  auto file = example_recipe("four-state-neq", "rational");
  auto again = parse_spec_text(dump_spec(file));
  EXPECT_EQ(again.phi, file.phi);
  EXPECT_EQ(again.beta, file.beta);
  EXPECT_EQ(again.arithmetic, "rational");
}

TEST(Recipes, BirthDeathWave) {
  auto spec = to_game_spec<double>(gen_birth_death(50, 40, 28, 0.1, BirthDeathPayoff::kWave));
  EXPECT_EQ(spec.size(), 50u);
  EXPECT_EQ(spec.generator(0, 1), 40.0);
  EXPECT_EQ(spec.generator(0, 0), -40.0);
  EXPECT_EQ(spec.generator(10, 9), 28.0);
  EXPECT_EQ(spec.generator(10, 10), -68.0);
  EXPECT_EQ(spec.generator(49, 49), -28.0);
  EXPECT_DOUBLE_EQ(spec.psi[3], 10 + 0.75 + 3 * std::cos(3.0) + 2 * std::sin(1.5));
  EXPECT_DOUBLE_EQ(spec.phi[3], spec.psi[3] + 3);
}

TEST(Recipes, TwoStateBirthDeath) {
  auto spec = to_game_spec<double>(gen_birth_death(2, 3, 5, 0.1, BirthDeathPayoff::kRamp));
  EXPECT_EQ(spec.generator(0, 0), -3.0);
  EXPECT_EQ(spec.generator(0, 1), 3.0);
  EXPECT_EQ(spec.generator(1, 0), 5.0);
  EXPECT_EQ(spec.generator(1, 1), -5.0);
  EXPECT_THROW(gen_birth_death(1, 1, 1, 0.1, BirthDeathPayoff::kRamp), BadParameter);
  EXPECT_THROW(gen_birth_death(5, 0, 1, 0.1, BirthDeathPayoff::kRamp), BadParameter);
}

TEST(Recipes, BirthDeathRampAndBump) {
  auto ramp = to_game_spec<double>(example_recipe("birth-death-ramp"));
  EXPECT_EQ(ramp.beta, 0.05);
  EXPECT_EQ(ramp.generator(5, 6), 14.0);
  EXPECT_EQ(ramp.generator(5, 4), 12.0);
  EXPECT_EQ(ramp.psi[25], 0.0);
  EXPECT_EQ(ramp.psi[30], 5.0);
  EXPECT_EQ(ramp.phi[30], 10.0);
  auto bump = to_game_spec<double>(example_recipe("birth-death-bump"));
  EXPECT_DOUBLE_EQ(bump.phi[0] - bump.psi[0], 4 * 0.7);
  EXPECT_EQ(bump.phi[22], bump.psi[22]);  // sin(4.4) + 0.7 < 0
}

TEST(Recipes, LatticeStructure) {
  for (auto o : {LatticeOrientation::kRows, LatticeOrientation::kColumns}) {
    auto spec = to_game_spec<double>(gen_lattice(3, 2, 0.5, LatticePayoff::kShift, 1, o));
    EXPECT_EQ(spec.size(), 9u);
    for (std::size_t p = 0; p < 9; ++p) {
      const std::size_t i = p % 3, j = p / 3;
      const bool absorbing = o == LatticeOrientation::kRows ? (j == 0 || j == 2)
                                                            : (i == 0 || i == 2);
      for (std::size_t y = 0; y < 9; ++y) {
        if (absorbing) EXPECT_EQ(spec.generator(p, y), 0.0);
      }
      if (!absorbing) EXPECT_EQ(spec.generator(p, p), p == 4 ? -8.0 : -6.0);
    }
  }
  auto big = to_game_spec<double>(example_recipe("lattice-shift"));
  EXPECT_EQ(big.size(), 169u);
  EXPECT_EQ(big.psi[84], 0.0);
  EXPECT_EQ(big.psi[85], 0.5);
  EXPECT_EQ(big.phi[85], 8.5);
  auto scale = to_game_spec<double>(example_recipe("lattice-scale"));
  EXPECT_EQ(scale.beta, 1.0);
  EXPECT_EQ(scale.phi[100], 1.5 * scale.psi[100]);
  EXPECT_EQ(scale.generator(13 + 5, 13 + 6), 500.0);
  EXPECT_THROW(gen_lattice(2, 1, 1, LatticePayoff::kShift, 1), BadParameter);
}

TEST(Recipes, FourStateEqualPhiMatchesV0) {
  auto exact = to_game_spec<Rational>(four_state_equal("rational"));
  auto v0 = forward_optimal_stopping(exact, StoppingSet(4)).value;
  EXPECT_EQ(exact.phi[2], v0[2]);
  auto flt = to_game_spec<double>(four_state_equal("float"));
  EXPECT_NEAR(flt.phi[2], 4.9834, 5e-5);
}

TEST(Cli, SolveWritesSolutionTraceAndCsv) {
  TempDir dir;
  auto r = run({"solve", "--example", "birth-death-wave", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto sol = read_json(dir / "solution.json");
  EXPECT_EQ(sol["outer_iterations"], 3);
  EXPECT_EQ(sol["shortcut"], false);
  EXPECT_EQ(sol["iterations"].size(), 3u);
  std::istringstream csv(read_text(dir / "values.csv"));
  std::string header, line;
  std::getline(csv, header);
  EXPECT_EQ(header, "state,psi,phi,V0,V1,V2,V3,V");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 50u);
  auto trace = read_json(dir / "trace.json");
  EXPECT_EQ(trace["outer"].size(), 3u);
}

TEST(Cli, SolveLatticeScaleTerminatesAtV4) {
  TempDir dir;
  auto r = run({"solve", "--example", "lattice-scale", "--out", dir.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json(dir / "solution.json")["outer_iterations"], 4);
}

TEST(Cli, SingleStateSpec) {
  TempDir dir;
  auto spec = write(dir / "one.json",
                    R"({"states":["only"],"generator":[[0]],"beta":1,"psi":[1],"phi":[2]})");
  auto r = run({"solve", spec, "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json(dir / "out" / "solution.json")["shortcut"], true);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  auto bad = write(dir / "bad.json",
                   R"({"states":["a"],"generator":[[0]],"beta":1,"psi":[2],"phi":[1]})");
  EXPECT_EQ(run({"solve", bad, "--out", dir.str()}).code, kValidation);
  EXPECT_EQ(run({"solve", (dir / "missing.json").string()}).code, kIoError);
  auto garbled = write(dir / "garbled.json", "{ nope");
  EXPECT_EQ(run({"solve", garbled}).code, kValidation);
  EXPECT_EQ(run({"solve", "--example", "no-such-example"}).code, kValidation);
  EXPECT_EQ(run({"frobnicate"}).code, kValidation);
  EXPECT_EQ(run({"--help"}).code, kOk);
}

TEST(Cli, NegativeToleranceRejected) {
  TempDir dir;
  auto r = run({"solve", "--example", "birth-death-wave", "--tol", "-1", "--out", dir.str()});
  EXPECT_EQ(r.code, kValidation);
}

TEST(Cli, SolveThenVerifyRoundTrip) {
  for (const char* name : {"four-state-equal", "four-state-neq", "birth-death-wave",
                           "birth-death-bump", "birth-death-ramp", "lattice-shift"}) {
    for (const char* arith : {"float", "rational"}) {
      if (std::string(arith) == "rational" && std::string(name).rfind("four", 0) != 0) continue;
      TempDir dir;
      auto r = run({"solve", "--example", name, "--arithmetic", arith, "--out", dir.str()});
      ASSERT_EQ(r.code, 0) << name << ": " << r.err;
      auto v = run({"verify", "--example", name, "--arithmetic", arith,
                    (dir / "solution.json").string()});
      EXPECT_EQ(v.code, 0) << name << " " << arith << ": " << v.err << v.out;
    }
  }
}

TEST(Cli, VerifyRoundTripOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto spec = dynkin::fixtures::random_game(seed);
    SpecFile file;
    file.states = spec.states.labels();
    for (std::size_t x = 0; x < spec.size(); ++x) {
      std::vector<std::string> row;
      for (std::size_t y = 0; y < spec.size(); ++y)
        row.push_back(format_double(spec.generator(x, y)));
      file.generator.push_back(row);
      file.psi.push_back(format_double(spec.psi[x]));
      file.phi.push_back(format_double(spec.phi[x]));
    }
    file.beta = format_double(spec.beta);
    TempDir dir;
    auto path = write(dir / "spec.json", dump_spec(file));
    ASSERT_EQ(run({"solve", path, "--out", dir.str()}).code, 0);
    auto v = run({"verify", path, (dir / "solution.json").string()});
    EXPECT_EQ(v.code, 0) << "seed " << seed << v.err;
  }
}

TEST(Cli, VerifyDetectsPerturbation) {
  TempDir dir;
  auto spec = write(dir / "spec.json", dump_spec(four_state_equal()));
  ASSERT_EQ(run({"solve", spec, "--out", dir.str()}).code, 0);
  auto sol = read_json(dir / "solution.json");
  sol["value"][1] = sol["value"][1].get<double>() + 1e-3;
  auto bad = write(dir / "perturbed.json", sol.dump());
  auto r = run({"verify", spec, bad});
  EXPECT_EQ(r.code, kVerifyFailed);
  EXPECT_NE(r.err.find("{1"), std::string::npos) << r.err;
}

TEST(Cli, VerifyRejectsOverlappingSets) {
  TempDir dir;
  auto spec = write(dir / "spec.json", dump_spec(four_state_neq()));
  ASSERT_EQ(run({"solve", spec, "--out", dir.str()}).code, 0);
  auto sol = read_json(dir / "solution.json");
  sol["inf_stop"].push_back("1");  // 1 is in sup_stop
  auto bad = write(dir / "overlap.json", sol.dump());
  auto r = run({"verify", spec, bad});
  EXPECT_EQ(r.code, kVerifyFailed);
  EXPECT_NE(r.err.find("precondition"), std::string::npos);
}

TEST(Cli, OracleCompareOutput) {
  auto eq = run({"oracle", "--example", "four-state-equal", "--check", "compare"});
  EXPECT_EQ(eq.code, 0);
  EXPECT_NE(eq.out.find("S∞ = S̃∞ = {3}"), std::string::npos) << eq.out;
  auto neq = run({"oracle", "--example", "four-state-neq", "--check", "compare",
                  "--arithmetic", "rational"});
  EXPECT_EQ(neq.code, 0);
  EXPECT_NE(neq.out.find("S∞={0,3}, S̃∞={0,2,3}, values equal"), std::string::npos) << neq.out;
}

TEST(Cli, OracleGapAndEnumeration) {
  auto r = run({"oracle", "--example", "four-state-neq"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("A={1} B={0}"), std::string::npos) << r.out;
  TempDir dir;
  auto spec = dynkin::fixtures::random_game(12, {.min_states = 12, .max_states = 12});
  SpecFile file;
  file.states = spec.states.labels();
  for (std::size_t x = 0; x < spec.size(); ++x) {
    std::vector<std::string> row;
    for (std::size_t y = 0; y < spec.size(); ++y) row.push_back(format_double(spec.generator(x, y)));
    file.generator.push_back(row);
    file.psi.push_back(format_double(spec.psi[x]));
    file.phi.push_back(format_double(spec.phi[x]));
  }
  file.beta = format_double(spec.beta);
  auto path = write(dir / "spec.json", dump_spec(file));
  auto g = run({"oracle", path, "--check", "gap"});
  EXPECT_EQ(g.code, 0) << g.out;
}

TEST(Cli, SimulateAgreesAndFlagsTruncation) {
  auto r = run({"simulate", "--example", "four-state-neq", "--sup", "1", "--inf", "0,3",
                "--from", "2", "--paths", "200000", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out;
  auto z = run({"simulate", "--example", "four-state-neq", "--sup", "2", "--from", "2",
                "--paths", "100"});
  EXPECT_EQ(z.code, 0);
  EXPECT_NE(z.out.find("stderr 0)"), std::string::npos) << z.out;
  auto t = run({"simulate", "--example", "four-state-neq", "--sup", "1", "--inf", "0,3",
                "--from", "2", "--paths", "1000", "--horizon", "1e-6"});
  EXPECT_EQ(t.code, 0) << t.out;
  EXPECT_NE(t.out.find("estimate: 0 "), std::string::npos) << t.out;
  EXPECT_NE(t.out.find("truncation dominates"), std::string::npos) << t.out;
  auto bad = run({"simulate", "--example", "four-state-neq", "--sup", "1", "--inf", "1",
                  "--from", "2"});
  EXPECT_EQ(bad.code, kValidation);
}

TEST(Cli, OutputsAreDeterministic) {
  TempDir a, b;
  ASSERT_EQ(run({"solve", "--example", "birth-death-bump", "--out", a.str()}).code, 0);
  ASSERT_EQ(run({"solve", "--example", "birth-death-bump", "--out", b.str()}).code, 0);
  for (const char* f : {"solution.json", "trace.json", "values.csv"})
    EXPECT_EQ(read_text(a / f), read_text(b / f)) << f;
}

TEST(Cli, ExampleCommandWritesLoadableSpec) {
  TempDir dir;
  auto path = (dir / "ex.json").string();
  ASSERT_EQ(run({"example", "lattice-shift", "--orientation", "columns", "--out", path}).code, 0);
  auto spec = to_game_spec<double>(load_spec_file(path));
  EXPECT_EQ(spec.size(), 169u);
  auto list = run({"example", "--list"});
  EXPECT_NE(list.out.find("four-state-neq"), std::string::npos);
}

// ---- golden set sequences

namespace {

nlohmann::json golden(const std::string& name) {
  return nlohmann::json::parse(read_text(fs::path(DYNKIN_GOLDEN_DIR) / (name + ".json")));
}

void expect_golden_sequence(const std::string& name) {
  auto spec = to_game_spec<double>(example_recipe(name));
  auto sol = solve_game(spec);
  EXPECT_EQ(set_sequence_json(spec, sol).dump(2), golden(name).dump(2));
}

void expect_golden_four_state(const std::string& name) {
  auto spec = to_game_spec<Rational>(example_recipe(name, "rational"));
  auto expected = golden(name);
  nlohmann::json got;
  for (auto mode : {InitMode::kStrict, InitMode::kWeak}) {
    auto sol = solve_game(spec, mode);
    got[to_string(mode)] = {
        {"S_first", set_labels(spec.states, sol.trace.outer.front().inf_set)},
        {"S_final", set_labels(spec.states, sol.inf_stop)}};
  }
  EXPECT_EQ(got.dump(2), expected.dump(2));
}

}  // namespace

TEST(Golden, BirthDeathWave) { expect_golden_sequence("birth-death-wave"); }
TEST(Golden, BirthDeathBump) { expect_golden_sequence("birth-death-bump"); }
TEST(Golden, BirthDeathRamp) { expect_golden_sequence("birth-death-ramp"); }
TEST(Golden, FourStateEqual) { expect_golden_four_state("four-state-equal"); }
TEST(Golden, FourStateNeq) { expect_golden_four_state("four-state-neq"); }
