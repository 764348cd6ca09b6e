#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mblab/harness/config.hpp"
#include "mblab/harness/io.hpp"
#include "mblab/harness/run.hpp"
#include "mblab/norms.hpp"

using namespace mblab;
using namespace mblab::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("mblab_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmallSolve = R"(
[problem]
alpha = 0.5
s = 1
u0 = gaussian
u0_amplitude = 0.05
v0 = gaussian
v0_amplitude = 0.05
f = gaussian
f_amplitude = 0.05
g = gaussian
g_amplitude = 0.05

[solver]
nx = 128
nt = 64
n_beta = 2048
T = 0.1
)";

int cli(const std::string& args) {
  const std::string cmd = std::string(MBLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = parse_config(std::string(kSmallSolve) + "\n[run]\nseed = 7\n# comment\n");
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.u0.kind == "gaussian");
  CHECK(cfg.u0.amplitude == 0.05);
  CHECK(cfg.solver.nx == 128);
  CHECK(cfg.seed == 7);
  CHECK_THROWS_AS(parse_config("[solver]\nnx_typo = 3\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[nowhere]\nnx = 3\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[solver]\nnx = many\n"), ValidationError);
  auto auto_b = parse_config("[solver]\nb = auto\nextension = reflect2\n");
  CHECK(std::isnan(auto_b.solver.b));
  CHECK(auto_b.solver.extension == Extension::Reflect2);
  auto p = build_problem(cfg);
  CHECK(p.u0.at(0.0) == doctest::Approx(0.05));
  CHECK(p.f.regularity() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("every key round-trips through its string form") {
  RunConfig a;
  a.solver.nx = 256;
  a.alpha = 0.3;
  a.resonance_alphas = {0.1, 0.2};
  a.linear.p = 6.0;
  a.solver.b = 0.47;
  RunConfig b;
  for (const auto& k : key_table()) set_key(b, k.section, k.key, k.get(a));
  for (const auto& k : key_table()) CHECK(k.get(b) == k.get(a));
  const std::string md = config_reference_markdown();
  for (const auto& k : key_table()) CHECK(md.find("`" + k.key + "`") != std::string::npos);
}

TEST_CASE("CSV and JSON formats") {
  const auto dir = scratch("io");
  CsvTable t;
  t.columns = {{"x", "1"}, {"u", "1"}, {"t", "time"}};
  t.add_row({0.1, -2.5, 1e-300});
  t.add_row({std::nan(""), kInf, 3.0});
  CHECK_THROWS(t.add_row({1.0}));
  write_csv((dir / "t.csv").string(), t);
  const std::string text = slurp(dir / "t.csv");
  CHECK(text.rfind("x [1],u [1],t [time]\n", 0) == 0);
  auto back = read_csv((dir / "t.csv").string());
  REQUIRE(back.rows.size() == 2);
  CHECK(back.columns[2].unit == "time");
  CHECK(back.rows[0][2] == 1e-300);
  CHECK(std::isnan(back.rows[1][0]));
  CHECK(back.rows[1][1] == kInf);
  CHECK(format_number(0.1) == "0.1");

  Json doc = {{"b", 1.0 / 3.0}, {"a", {1, 2, 3}}, {"c", "text"}};
  write_json((dir / "m.json").string(), doc);
  auto d2 = read_json((dir / "m.json").string());
  CHECK(d2 == doc);
  CHECK(d2.dump() == doc.dump());
  CHECK(d2["b"].get<double>() == 1.0 / 3.0);
  CHECK(d2.begin().key() == "b");
}

TEST_CASE("solve with zero data") {
  const auto dir = scratch("zero");
  RunConfig cfg;
  cfg.subcommand = "solve";
  cfg.out_dir = dir.string();
  cfg.solver.nx = 128;
  cfg.solver.nt = 64;
  cfg.solver.n_beta = 1024;
  std::ostringstream log;
  auto r = run(cfg, log);
  CHECK(r.exit_code == kExitSuccess);
  auto sol = read_csv((dir / "solution.csv").string());
  CHECK(sol.columns.size() == 4);
  for (const auto& row : sol.rows) {
    CHECK(row[2] == 0.0);
    CHECK(row[3] == 0.0);
  }
  auto m = read_json((dir / "manifest.json").string());
  CHECK(m["exit_code"] == 0);
  CHECK(m["result"]["residuals"]["bc_u"].get<double>() == 0.0);
  CHECK(m["result"]["converged"] == true);
  CHECK(m.contains("versions"));
  CHECK(m.contains("wall_time_s"));
  CHECK(m["config"]["solver"]["nx"] == "128");
  // The manifest re-emits unchanged.
  CHECK(Json::parse(m.dump(2)) == m);
}

TEST_CASE("solve rejects s = 1/2 with a named constraint") {
  const auto dir = scratch("half");
  auto cfg = parse_config(kSmallSolve);
  cfg.subcommand = "solve";
  cfg.out_dir = dir.string();
  cfg.s = 0.5;
  std::ostringstream log;
  auto r = run(cfg, log);
  CHECK(r.exit_code == kExitValidation);
  CHECK(r.error.find("s=0.5 excluded") != std::string::npos);
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("resonance report") {
  const auto dir = scratch("res");
  RunConfig cfg;
  cfg.subcommand = "resonance-report";
  cfg.out_dir = dir.string();
  cfg.resonance_alphas = {0.5};
  cfg.resonance_samples = 200;
  std::ostringstream log;
  REQUIRE(run(cfg, log).exit_code == kExitSuccess);
  auto roots = read_csv((dir / "resonance_roots.csv").string());
  REQUIRE(roots.rows.size() == 1);
  CHECK(roots.rows[0][0] == 0.5);
  CHECK(roots.rows[0][1] == doctest::Approx(0.79129).epsilon(1e-5));
  CHECK(roots.rows[0][2] == doctest::Approx(-3.79129).epsilon(1e-5));
}

TEST_CASE("identical configs give byte-identical CSVs") {
  for (const std::string sub : {"probe-bilinear", "solve"}) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = scratch("det" + std::to_string(rep));
      auto cfg = parse_config(kSmallSolve);
      cfg.subcommand = sub;
      cfg.out_dir = dir.string();
      cfg.seed = 5;
      cfg.bilinear.ensemble = 3;
      cfg.bilinear.nx = 64;
      cfg.bilinear.nt = 64;
      std::ostringstream log;
      auto r = run(cfg, log);
      REQUIRE(r.exit_code == kExitSuccess);
      std::string all;
      for (const auto& a : r.artifacts)
        if (a.size() > 4 && a.substr(a.size() - 4) == ".csv") all += slurp(dir / a);
      CHECK_FALSE(all.empty());
      if (rep == 0) first = all;
      else CHECK(all == first);
    }
  }
}

TEST_CASE("CLI exit codes") {
  const auto dir = scratch("cli");
  {
    std::ofstream(dir / "small.ini") << kSmallSolve;
  }
  const std::string base = "--config " + (dir / "small.ini").string() + " --out " + (dir / "o").string();
  CHECK(cli("solve --out " + (dir / "z").string() + " --set solver.nx=128 --set solver.nt=64") == 0);
  CHECK(cli("solve " + base + " --set problem.s=0.5") == 2);
  CHECK(cli("solve " + base + " --set solver.bogus=1") == 2);
  CHECK(cli("solve --config /nonexistent.ini") == 2);
  CHECK(cli("solve " + base +
            " --set problem.u0_amplitude=40 --set problem.v0_amplitude=40"
            " --set problem.f_amplitude=40 --set problem.g_amplitude=40"
            " --set solver.max_halvings=0 --set solver.max_iters=10 --set solver.tail_tol=1e9") == 3);
  CHECK(cli("solve " + base + " --set solver.n_beta=64 --set solver.tail_tol=1e-9") == 4);
  CHECK(cli("config-reference --out " + (dir / "ref.md").string()) == 0);
  CHECK(fs::file_size(dir / "ref.md") > 1000);
}
