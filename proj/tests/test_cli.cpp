#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "skillgauge/rng.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SKILLGAUGE_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("skillgauge_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("help and version exit cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("--version") == 0);
  CHECK(run("simulate --help") == 0);
}

TEST_CASE("exit codes map error classes") {
  TempDir tmp;
  // Unknown preset -> config error.
  CHECK(run("simulate --preset nope --iters 10 --winprob-samples 100 --seed 1 --out " +
            tmp.file("x.csv")) == 2);
  // Unknown flag -> config error.
  CHECK(run("simulate --bogus-flag 3") == 2);
  // Missing input file -> data error.
  CHECK(run("sweep --spec " + tmp.file("missing.json") + " --out " + tmp.file("y.csv")) == 3);
  CHECK(run("empirical --scorecards " + tmp.file("no.csv") + " --careers " +
            tmp.file("no2.csv") + " --out " + tmp.file("z.csv")) == 3);
}

TEST_CASE("simulate artifacts are byte-identical across re-runs and threads") {
  TempDir tmp;
  const std::string base =
      "simulate --preset equi-mean --iters 300 --winprob-samples 3000 --seed 77 --out ";
  REQUIRE(run(base + tmp.file("a.csv") + " --threads 1") == 0);
  REQUIRE(run(base + tmp.file("b.csv") + " --threads 4") == 0);
  REQUIRE(run(base + tmp.file("c.csv")) == 0);
  const std::string a = slurp(tmp.file("a.csv"));
  CHECK(a == slurp(tmp.file("b.csv")));
  CHECK(a == slurp(tmp.file("c.csv")));
}

TEST_CASE("manifest records the seed and a matching checksum") {
  TempDir tmp;
  const std::string out = tmp.file("sim.csv");
  REQUIRE(run("simulate --preset unequal-mean --iters 200 --winprob-samples 2000 --seed 5 --out " +
              out) == 0);
  const nlohmann::json manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("command") == "simulate");
  CHECK(manifest.at("seed") == 5);
  CHECK(manifest.at("params").at("preset") == "unequal-mean");

  char expected[32];
  std::snprintf(expected, sizeof(expected), "fnv1a:%016llx",
                static_cast<unsigned long long>(skillgauge::fnv1a64(slurp(out))));
  CHECK(manifest.at("artifacts").at(out) == std::string(expected));
}

TEST_CASE("sweep and render round trip") {
  TempDir tmp;
  const std::string spec = tmp.file("spec.json");
  {
    std::ofstream f(spec);
    f << R"({"config_id":"equi-mean","axis":"tau","values":[0.1,0.3],)"
      << R"("seed":9,"n_iterations":100,"winprob_samples":1000})";
  }
  const std::string out = tmp.file("sweep.csv");
  REQUIRE(run("sweep --spec " + spec + " --out " + out) == 0);
  const std::string first = slurp(out);
  CHECK(first.find("tau") != std::string::npos);

  // Re-run: byte identical, threads irrelevant.
  REQUIRE(run("sweep --spec " + spec + " --out " + tmp.file("sweep2.csv") + " --threads 3") == 0);
  CHECK(first == slurp(tmp.file("sweep2.csv")));

  const std::string svg = tmp.file("chart.svg");
  REQUIRE(run("render " + out + " --x tau --y mean_winnings --series team --out " + svg) == 0);
  const std::string body = slurp(svg);
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("polyline") != std::string::npos);
}

TEST_CASE("fixtures, empirical and regress pipeline") {
  TempDir tmp;
  REQUIRE(run("fixtures --matches 8 --players 26 --seed 13 --out-dir " + tmp.path.string()) == 0);
  REQUIRE(fs::exists(tmp.file("scorecards.csv")));
  REQUIRE(fs::exists(tmp.file("careers.csv")));

  const std::string out = tmp.file("emp.csv");
  const std::string cmd = "empirical --scorecards " + tmp.file("scorecards.csv") +
                          " --careers " + tmp.file("careers.csv") +
                          " --users-per-strategy 20 --random-users 60 --seed 4 --out ";
  REQUIRE(run(cmd + out) == 0);
  REQUIRE(run(cmd + tmp.file("emp2.csv") + " --threads 4") == 0);
  CHECK(slurp(out) == slurp(tmp.file("emp2.csv")));

  REQUIRE(run("regress --in " + out + " --model \"gain ~ common_actual + v_mu\" --out " +
              tmp.file("fit.txt")) == 0);
  const std::string fit = slurp(tmp.file("fit.txt"));
  CHECK(fit.find("(Intercept)") != std::string::npos);
  CHECK(fit.find("common_actual") != std::string::npos);
}

TEST_CASE("impact command is deterministic") {
  TempDir tmp;
  const std::string cmd =
      "impact --iters 150 --winprob-samples 1500 --seed 21 --out ";
  REQUIRE(run(cmd + tmp.file("i1.csv") + " --threads 1") == 0);
  REQUIRE(run(cmd + tmp.file("i2.csv") + " --threads 4") == 0);
  CHECK(slurp(tmp.file("i1.csv")) == slurp(tmp.file("i2.csv")));
}
