#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "translab/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "translator_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = translab::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("translab_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("bowl solve writes the profile and sidecar") {
  const fs::path dir = scratch("solve");
  const Run r = run({"bowl", "solve", "--speed", "mean", "-n", "3", "--hmax", "100", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const fs::path csv = dir / "profile_mean_n3.csv";
  const fs::path side = dir / "profile_mean_n3.json";
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(side));
  CHECK(slurp(csv).rfind("r,u,u_r,s,kappa_rad,kappa_sph,F,grad_a_sq\n", 0) == 0);
  const Json j = Json::parse(slurp(side));
  CHECK(j["speed"] == "mean");
  CHECK(j["n"] == 3);
  CHECK(j["residual_max"].get<double>() <= 1e-8);
  CHECK(j["h_max"].get<double>() >= 100.0);
  CHECK(slurp(side) == r.out);
  CHECK(r.out.back() == '\n');
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("verify all passes and is deterministic") {
  const fs::path dir = scratch("verify");
  const std::vector<std::string> args{"verify", "all", "--speed", "two-harmonic-mean", "-n", "3",
                                      "--samples", "5000", "--out", dir.string()};
  const Run a = run(args);
  REQUIRE(a.code == 0);
  const Run b = run(args);
  CHECK(a.out == b.out);
  const Json m = Json::parse(a.out);
  CHECK(m["passed"] == true);
  CHECK(m["config"]["speed"] == "two-harmonic-mean");
  CHECK(m["config"]["target"] == "all");
  std::vector<std::string> ids;
  for (const auto& rep : m["reports"]) {
    ids.push_back(rep["lemma_id"]);
    CHECK(rep["passed"] == true);
    CHECK(rep.contains("checks"));
    CHECK(rep.contains("measured"));
    CHECK(rep.contains("bound_constant"));
    CHECK(rep.contains("tolerance"));
  }
  CHECK(std::find(ids.begin(), ids.end(), "claim-4.2") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "claim-4.1") == ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "jacobi-rotation") == ids.end());
  CHECK(fs::exists(dir / "verify_all_two-harmonic-mean_n3.json"));
}

TEST_CASE("cone beta2 report") {
  const Run r = run({"cone", "beta2", "--speed", "two-harmonic-mean", "-n", "3", "--mode", "concave",
                     "--samples", "20000", "--seed", "7"});
  REQUIRE(r.code == 0);
  const Json m = Json::parse(r.out);
  const auto& e = m["reports"][0];
  CHECK(e["beta1"].get<double>() == doctest::Approx(0.4));
  CHECK(e["beta2"].get<double>() == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(e["violations"].empty());
}

TEST_CASE("other subcommands") {
  CHECK(run({"cone", "probe", "--speed", "mean", "-n", "3", "--mode", "convex", "--grid", "8"}).code == 0);
  CHECK(run({"speeds", "check", "--speed", "sqrt-scalar", "-n", "3", "--samples", "2000"}).code == 0);
  CHECK(run({"speeds", "concavity", "--speed", "scalar-to-mean", "-n", "3", "--mode", "dual-concave",
             "--samples", "2000"}).code == 0);
  const Run ic = run({"iccond", "--speed", "mean", "-n", "3", "--z", "1,2"});
  REQUIRE(ic.code == 0);
  CHECK(Json::parse(ic.out)["reports"][0]["passed"] == true);
  CHECK(run({"iccond", "--speed", "mean", "-n", "3", "--faces", "200"}).code == 0);
  const fs::path dir = scratch("blowdown");
  const Run bd = run({"blowdown", "--speed", "mean", "-n", "3", "--hj", "1000,10000", "--t", "-1,0,0.5",
                      "--out", dir.string()});
  CHECK(bd.code == 0);
  const std::string csv = slurp(dir / "blowdown_mean_n3.csv");
  CHECK(csv.rfind("h_j,t,measured_radius,predicted_radius\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("failed checks exit 3 with a failure list") {
  // Far from the asymptotic regime the blow-down radius is off by much more than 2%.
  const Run r = run({"blowdown", "--speed", "mean", "-n", "3", "--hj", "2", "--t", "0.9"});
  CHECK(r.code == 3);
  const Json m = Json::parse(r.out);
  CHECK(m["passed"] == false);
  const Json f = Json::parse(r.err);
  CHECK(f["failures"][0]["report"] == "blowdown");
  CHECK_FALSE(f["failures"][0]["failed_checks"].empty());
}

TEST_CASE("domain errors exit 1 with an error report") {
  const Run r = run({"verify", "all", "--speed", "mean", "-n", "1"});
  CHECK(r.code == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["passed"] == false);
  CHECK(j["error"]["type"] == "DomainError");
  CHECK(j["config"]["n"] == 1);
  CHECK(run({"verify", "jacobi-rotation", "--speed", "two-harmonic-mean", "-n", "3"}).code == 1);
  CHECK(run({"iccond", "--speed", "mean", "-n", "3", "--z", "1,2,3"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bowl", "solve", "--speed", "nope"}).code == 2);
  CHECK(run({"bowl", "solve", "--tol", "0.1"}).code == 2);
  CHECK(run({"bowl", "solve", "--tol", "0"}).code == 2);
  CHECK(run({"bowl", "solve", "--hmax", "0.5"}).code == 2);
  CHECK(run({"bowl", "solve", "-n", "0"}).code == 2);
  CHECK(run({"verify", "lemma-9.9"}).code == 2);
  CHECK(run({"cone", "beta2", "--mode", "sideways"}).code == 2);
  CHECK(run({"blowdown", "--t", "1"}).code == 2);
  const Run mismatch = run({"bowl", "solve", "--speed", "sqrt-scalar", "-n", "4"});
  CHECK(mismatch.code == 2);
  CHECK(mismatch.err.find("sqrt-scalar") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}
