#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

const std::string cli = INVSPEC_CLI;
const std::string work = INVSPEC_WORK;

int run(const std::string& args) {
  const int status = std::system((cli + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

}  // namespace

TEST_CASE("spectrum of the standard family") {
  const std::string out = work + "/cli_standard.json";
  REQUIRE(run("spectrum --family standard --k 4 --out " + out) == 0);
  const auto j = load(out);
  CHECK(j["family"] == "standard");
  CHECK(j["N"] == 4096);
  const double want[] = {2, 6, 12, 20};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(j["eigenvalues"][i].get<double>() - want[i]) <= 1e-5 * want[i]);
  CHECK(j["parity"][0] == "odd");
}

TEST_CASE("spectrum of the tent") {
  const std::string out = work + "/cli_tent.json";
  REQUIRE(run("spectrum --family tent --k 2 --out " + out) == 0);
  const auto j = load(out);
  CHECK(j["eigenvalues"].size() == 2);
  CHECK(std::abs(j["eigenvalues"][0].get<double>() - 2.8916) <= 1e-4);
  CHECK(std::abs(j["eigenvalues"][1].get<double>() - 7.3410) <= 1e-4);
}

TEST_CASE("semicircle profile reproduces the round sphere") {
  const std::string prof = work + "/cli_semicircle.csv", out = work + "/cli_semicircle.json";
  REQUIRE(run("profile --family standard --samples 4097 --out " + prof) == 0);
  REQUIRE(run("spectrum --profile " + prof + " --out " + out) == 0);
  const auto j = load(out);
  CHECK(j["family"] == "profile");
  const double want[] = {2, 6, 12, 20};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(j["eigenvalues"][i].get<double>() - want[i]) <= 1e-5 * want[i]);
}

TEST_CASE("sampled metric input") {
  const std::string in = work + "/cli_metric.csv", out = work + "/cli_metric.json";
  {
    std::ofstream f(in);
    f << "x,gbar\n";
    for (int i = 0; i <= 2000; ++i) {
      const double x = -1.0 + i / 1000.0;
      f.precision(17);
      f << x << ',' << (i == 0 || i == 2000 ? 0.0 : (1 - x) * (1 + x)) << '\n';
    }
  }
  REQUIRE(run("spectrum --metric " + in + " --k 2 --n 1024 --out " + out) == 0);
  const auto j = load(out);
  CHECK(std::abs(j["eigenvalues"][0].get<double>() - 2.0) <= 1e-4);
  CHECK(std::abs(j["eigenvalues"][1].get<double>() - 6.0) <= 1e-3);
}

TEST_CASE("sweeps keep grid order") {
  const std::string out = work + "/cli_nu_sweep.json";
  REQUIRE(run("sweep --grid nu=100,1,10 --n 512 --threads 3 --format json --out " + out) == 0);
  const auto j = load(out);
  REQUIRE(j.size() == 3);
  CHECK(j[0]["value"] == 100.0);
  CHECK(j[1]["value"] == 1.0);
  CHECK(j[2]["value"] == 10.0);
  for (const auto& row : j) {
    CHECK(row["lambda1"].get<double>() <= row["bound"].get<double>());
    CHECK(row["bound_direction"] == "upper");
  }
}

TEST_CASE("ex-small sweep trends") {
  const std::string out = work + "/cli_exsmall.json";
  REQUIRE(run("sweep --family ex-small:100,0.25 --grid mu=100,1000,10000 --n 512 --format json --out " + out) == 0);
  const auto j = load(out);
  REQUIRE(j.size() == 3);
  for (int i = 1; i < 3; ++i) {
    CHECK(j[i]["diameter"].get<double>() < j[i - 1]["diameter"].get<double>());
    CHECK(j[i]["A_upper"].get<double>() < j[i - 1]["A_upper"].get<double>());
  }
}

TEST_CASE("verify is deterministic in the seed") {
  const std::string a = work + "/cli_verify_a.json", b = work + "/cli_verify_b.json";
  const int ra = run("verify --n 128 --seed 7 --out " + a);
  const int rb = run("verify --n 128 --seed 7 --out " + b);
  CHECK(ra == rb);
  CHECK(slurp(a) == slurp(b));
  const auto j = load(a);
  CHECK(j["quick"] == true);
  CHECK(j["seed"] == 7);
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum --family mu:-3") == 1);
  CHECK(run("spectrum --family standard --profile x.csv") == 1);
  CHECK(run("sweep --grid =1,2") == 1);
  CHECK(run("sweep --grid beta=1,2") == 1);
  CHECK(run("spectrum --n 10") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("spectrum --family standard --k 2 --n 128 --format csv --out " + work + "/cli_small.csv") == 0);
}
