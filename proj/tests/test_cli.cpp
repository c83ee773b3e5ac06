#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "config.hpp"

namespace fs = std::filesystem;
using vortwave::cli::RunConfig;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("vortwave_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  // runs the CLI inside dir; stdout goes to out.txt
  int run(const std::string &args, const std::string &env = "") const {
    const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" + VORTWAVE_EXE + "' " + args +
                            " > out.txt 2> err.txt";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }
  std::string read(const fs::path &rel) const {
    std::ifstream in(dir / rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  int lines(const fs::path &rel) const {
    std::istringstream in(read(rel));
    int n = 0;
    for (std::string l; std::getline(in, l);) ++n;
    return n;
  }
};

}  // namespace

TEST_CASE("config parser") {
  auto c = RunConfig::parse("# comment\nsigma0 = 0.5\n\neps=0.02, 0.04 ,0.08  # trailing\nM=32\n");
  CHECK(*c.num("sigma0") == 0.5);
  CHECK(*c.integer("M") == 32);
  auto l = *c.list("eps");
  REQUIRE(l.size() == 3);
  CHECK(l[1] == 0.04);
  CHECK(!c.num("missing"));
  CHECK_THROWS_AS(RunConfig::parse("novalue\n"), vortwave::cli::UsageError);
  CHECK_THROWS_AS(RunConfig::parse("=3\n"), vortwave::cli::UsageError);
}

TEST_CASE("config values must be well formed") {
  auto c = RunConfig::parse("M=3.5\nsigma0=abc\n");
  CHECK_THROWS_AS(c.integer("M"), vortwave::cli::UsageError);
  CHECK_THROWS_AS(c.num("sigma0"), vortwave::cli::UsageError);
}

TEST_CASE("dispersion writes a lossless table that verify can recheck") {
  Sandbox sb;
  REQUIRE(sb.run("dispersion --sigma0 1.0 --count 10 --out res") == 0);
  CHECK(sb.lines("res/dispersion.csv") == 11);
  auto j = nlohmann::json::parse(sb.read("res/dispersion.json"));
  CHECK(j["max_residual"].get<double>() <= 1e-12);
  CHECK(j["ok"].get<bool>());
  CHECK(sb.run("verify --recheck res/dispersion.csv --out res") == 0);
  CHECK(sb.read("out.txt").find("2/2 checks passed") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  Sandbox sb;
  CHECK(sb.run("dispersion --sigma0 0.3") == 2);
  CHECK(sb.run("") == 2);
  CHECK(sb.run("nosuchcommand") == 2);
  CHECK(sb.run("spectrum --n 16") == 2);
  CHECK(sb.run("solve --eps 0.5") == 2);
  CHECK(sb.run("sweep --eps 0.04,0.02") == 2);
  CHECK(sb.run("verify --only nosuchgroup") == 2);
  CHECK(sb.run("resolvent --jobs 0") == 2);
  CHECK(sb.run("dispersion --config missing.cfg") == 2);
  CHECK(sb.run("--help") == 0);
}

TEST_CASE("output root precedence and idempotent directories") {
  Sandbox sb;
  {
    std::ofstream cfg(sb.dir / "run.cfg");
    cfg << "sigma0=0.5\ncount=4\nout=from_config\n";
  }
  REQUIRE(sb.run("dispersion --config run.cfg") == 0);
  CHECK(fs::exists(sb.dir / "from_config/dispersion.csv"));
  REQUIRE(sb.run("dispersion --config run.cfg", "VORTWAVE_OUT=from_env") == 0);
  CHECK(fs::exists(sb.dir / "from_env/dispersion.csv"));
  REQUIRE(sb.run("dispersion --config run.cfg --out from_flag --count 6", "VORTWAVE_OUT=from_env") == 0);
  CHECK(sb.lines("from_flag/dispersion.csv") == 7);
  REQUIRE(sb.run("dispersion --config run.cfg --out from_flag/nested/deeper") == 0);
  REQUIRE(sb.run("dispersion --config run.cfg --out from_flag/nested/deeper") == 0);
  CHECK(sb.lines("from_flag/nested/deeper/dispersion.csv") == 5);
}

TEST_CASE("analysis subcommands write their files") {
  Sandbox sb;
  REQUIRE(sb.run("spectrum --sigma0 0.5 --n 32 --out o") == 0);
  auto s = nlohmann::json::parse(sb.read("o/spectrum.json"));
  CHECK(s["zero_algebraic_multiplicity"].get<int>() == 2);
  REQUIRE(sb.run("resolvent --points 3 --alpha-max 50 --n 32 --jobs 2 --out o") == 0);
  CHECK(sb.lines("o/resolvent.csv") == 4);
  REQUIRE(sb.run("reduced --out o") == 0);
  auto r = nlohmann::json::parse(sb.read("o/reduced.json"));
  CHECK(std::abs(r["quadrature"]["d2H0_ff"].get<double>() - 1.0) < 1e-10);
  REQUIRE(sb.run("homoclinic --out o") == 0);
  auto h = nlohmann::json::parse(sb.read("o/homoclinic.json"));
  CHECK(h["max_error_within_20"].get<double>() <= 1e-6);
}

TEST_CASE("solve and sweep") {
  Sandbox sb;
  REQUIRE(sb.run("solve --eps 0.04 --sigma0 0.5 --out o") == 0);
  CHECK(fs::exists(sb.dir / "o/solve/profile_eps0.04.csv"));
  auto w = nlohmann::json::parse(sb.read("o/solve/profile_eps0.04.json"));
  CHECK(w["newton_iterations"].get<int>() <= 8);
  CHECK(w["amplitude"].get<double>() < 0.0);

  REQUIRE(sb.run("sweep --eps 0.02,0.04,0.08 --jobs 2 --out o") == 0);
  CHECK(sb.lines("o/sweep/rho.csv") == 4);
  auto j = nlohmann::json::parse(sb.read("o/sweep/sweep.json"));
  CHECK(j["rho_max_over_min"].get<double>() <= 3.0);
}

TEST_CASE("verify subset is deterministic") {
  Sandbox sb;
  REQUIRE(sb.run("verify --only hamiltonian,phase --seed 7 --out o") == 0);
  const std::string a = sb.read("out.txt");
  CHECK(a.find("[hamiltonian]") != std::string::npos);
  CHECK(a.find("[phase]") != std::string::npos);
  CHECK(a.find("[linear]") == std::string::npos);
  REQUIRE(sb.run("verify --only hamiltonian,phase --seed 7 --out o") == 0);
  CHECK(sb.read("out.txt") == a);
  CHECK(sb.read("o/verify_report.txt") == a);
}
