#include "translab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "translab/errors.hpp"
#include "translab/report_io.hpp"
#include "translab/verify.hpp"

namespace translab {

namespace {

struct RunConfig {
  std::string command;
  std::string speed = "mean";
  int n = 3;
  double h_max = 1e4;
  double tol = 1e-8;
  int samples = 100000;
  std::uint64_t seed = 0;
  std::string out_dir;
  // Subcommand-specific.
  std::string target = "all";
  std::string mode = "concave";
  int grid = 0;
  int faces = 10000;
  std::vector<double> z_face;
  std::vector<double> h_js;
  std::vector<double> ts{-1.0, 0.0, 0.5, 0.9};
};

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["speed"] = c.speed;
  j["n"] = c.n;
  j["h_max"] = c.h_max;
  j["tol"] = c.tol;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  if (c.command == "verify") j["target"] = c.target;
  if (c.command.rfind("cone", 0) == 0) j["mode"] = c.mode;
  if (c.command == "speeds concavity") j["mode"] = c.mode;
  if (c.command == "cone probe") j["grid"] = c.grid;
  if (c.command == "iccond") {
    j["faces"] = c.faces;
    if (!c.z_face.empty()) j["z_face"] = c.z_face;
  }
  if (c.command == "blowdown") {
    j["h_j"] = c.h_js;
    j["t"] = c.ts;
  }
  return j;
}

std::string slug(const RunConfig& c) {
  std::string s = c.command;
  std::replace(s.begin(), s.end(), ' ', '_');
  if (c.command == "verify") s += "_" + c.target;
  s += "_" + c.speed + "_n" + std::to_string(c.n);
  if (c.command.rfind("cone", 0) == 0 || c.command == "speeds concavity") s += "_" + c.mode;
  return s;
}

void emit(const RunConfig& c, const std::string& name, const std::string& contents) {
  if (c.out_dir.empty()) return;
  write_atomic(std::filesystem::path(c.out_dir) / name, contents);
}

// Manifest with config, reports and passed; failure list on err when not passed.
int finish(const RunConfig& c, const Json& reports, std::ostream& out, std::ostream& err) {
  bool passed = true;
  Json failures = Json::array();
  for (const auto& r : reports) {
    if (r.value("passed", false)) continue;
    passed = false;
    Json f;
    f["report"] = r.contains("lemma_id") ? r["lemma_id"] : Json(c.command);
    Json failed = Json::array();
    if (r.contains("checks"))
      for (const auto& ch : r["checks"])
        if (!ch.value("passed", false)) failed.push_back(ch["name"]);
    if (r.contains("violations"))
      for (const auto& v : r["violations"]) failed.push_back(v);
    f["failed_checks"] = failed;
    failures.push_back(f);
  }
  Json manifest;
  manifest["config"] = config_json(c);
  manifest["reports"] = reports;
  manifest["passed"] = passed;
  const std::string text = dump_json(manifest);
  emit(c, slug(c) + ".json", text);
  out << text;
  if (!passed) {
    err << dump_json(Json{{"failures", failures}});
    return 3;
  }
  return 0;
}

Speed build_speed(const RunConfig& c) {
  Speed s = Speed::make(c.speed, c.n);
  return c.n >= 2 ? normalized(s) : s;
}

PinchMode pinch_mode(const std::string& m) {
  return m == "convex" ? PinchMode::Convex : PinchMode::Concave;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Speed speed = build_speed(c);
  Json reports = Json::array();

  if (c.command == "bowl solve") {
    const Profile p = solve_profile(speed, c.n, c.h_max, c.tol);
    const std::string base = "profile_" + c.speed + "_n" + std::to_string(c.n);
    emit(c, base + ".csv", profile_csv(p));
    const std::string sidecar = dump_json(profile_sidecar(p));
    emit(c, base + ".json", sidecar);
    out << sidecar;
    return 0;
  }
  if (c.command == "verify") {
    VerifyConfig v;
    v.speed = c.speed;
    v.n = c.n;
    v.h_max = c.h_max;
    v.tol = c.tol;
    v.samples = c.samples;
    v.seed = c.seed;
    for (const auto& r : run_verification(v, c.target)) reports.push_back(to_json(r));
  } else if (c.command == "cone beta2") {
    const PinchMode mode = pinch_mode(c.mode);
    const Beta2Estimate e = estimate_beta2(speed, mode, c.samples, c.seed);
    const Beta2Validation val = validate_beta2(speed, mode, e.beta2, c.samples, c.seed + 1);
    reports.push_back(to_json(e, speed, mode, &val));
  } else if (c.command == "cone probe") {
    const PinchMode mode = pinch_mode(c.mode);
    const int grid = c.grid > 0 ? c.grid : default_probe_grid(c.n);
    reports.push_back(to_json(boundary_ray_probe(speed, mode, grid), speed, mode));
  } else if (c.command == "speeds check") {
    reports.push_back(to_json(check_admissible(speed, c.samples, c.seed), speed));
  } else if (c.command == "speeds concavity") {
    const ConcavityMode mode = c.mode == "convex"  ? ConcavityMode::Convex
                               : c.mode == "concave" ? ConcavityMode::Concave
                                                     : ConcavityMode::DualConcave;
    reports.push_back(to_json(check_concavity(speed, mode, c.samples, c.seed), speed));
  } else if (c.command == "iccond") {
    if (!c.z_face.empty()) {
      if (static_cast<int>(c.z_face.size()) != c.n - 1)
        throw DomainError("--z needs n - 1 = " + std::to_string(c.n - 1) + " entries");
      reports.push_back(to_json(iccond_min_eigenvalue(speed, c.z_face)));
    } else {
      reports.push_back(to_json(iccond_report(speed, c.faces, c.seed)));
    }
  } else if (c.command == "blowdown") {
    std::vector<double> h_js = c.h_js;
    if (h_js.empty()) h_js.push_back(c.h_max / 2);
    double top = c.h_max;
    for (double h : h_js)
      for (double t : c.ts) top = std::max(top, h * (1.0 - t));
    const Profile p = solve_profile(speed, c.n, top, c.tol);
    const EstimateReport rep = blowdown_report(p, h_js, c.ts);
    std::string csv = "h_j,t,measured_radius,predicted_radius\n";
    for (double h : h_js)
      for (double t : c.ts) {
        const BlowdownSample s = blowdown_radius(p, h, t);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.h_j, s.t,
                      s.measured_radius, s.predicted_radius);
        csv += buf;
      }
    emit(c, slug(c) + ".csv", csv);
    reports.push_back(to_json(rep));
  }
  return finish(c, reports, out, err);
}

Json error_json(const RunConfig& c, const char* type, const std::exception& e) {
  Json j;
  j["config"] = config_json(c);
  j["error"] = {{"type", type}, {"message", e.what()}};
  if (auto* s = dynamic_cast<const SolverError*>(&e)) j["error"]["last_valid"] = s->last_valid();
  j["passed"] = false;
  return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Translating solitons of curvature flows: profiles and estimate checks",
               "translator_lab"};
  app.require_subcommand(1);

  const auto tol_check = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "tol must be a number";
        }
        return v > 0.0 && v <= 1e-2 ? "" : "tol must lie in (0, 1e-2]";
      },
      "in (0, 1e-2]");

  auto common = [&](CLI::App* sub, bool profile, bool sampling) {
    sub->add_option("--speed", cfg.speed, "Speed identifier")
        ->check(CLI::IsMember(Speed::builtin_names()));
    sub->add_option("--dim,-n", cfg.n, "Hypersurface dimension n")->check(CLI::Range(1, 64));
    sub->add_option("--out", cfg.out_dir, "Directory for artifacts");
    if (profile) {
      sub->add_option("--hmax", cfg.h_max, "Height to integrate to")
          ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
      sub->add_option("--tol", cfg.tol, "ODE tolerance")->check(tol_check);
    }
    if (sampling) {
      sub->add_option("--samples", cfg.samples, "Sample count")
          ->check(CLI::Range(1, std::numeric_limits<int>::max()));
      sub->add_option("--seed", cfg.seed, "Random seed");
    }
  };
  const std::vector<std::string> pinch_modes{"convex", "concave"};

  auto* bowl = app.add_subcommand("bowl", "Rotationally symmetric translators");
  bowl->require_subcommand(1);
  auto* solve = bowl->add_subcommand("solve", "Solve the profile and write CSV + JSON");
  common(solve, true, false);

  auto* verify = app.add_subcommand("verify", "Run estimate checks and write a manifest");
  std::vector<std::string> targets{"all"};
  targets.insert(targets.end(), verification_ids().begin(), verification_ids().end());
  verify->add_option("target", cfg.target, "all or one report id")
      ->check(CLI::IsMember(targets));
  common(verify, true, true);

  auto* cone = app.add_subcommand("cone", "Pinching cones and beta2");
  cone->require_subcommand(1);
  auto* beta2 = cone->add_subcommand("beta2", "Estimate and validate beta2");
  common(beta2, false, true);
  beta2->add_option("--mode", cfg.mode, "convex or concave")->check(CLI::IsMember(pinch_modes));
  auto* probe = cone->add_subcommand("probe", "Scan the face z_1 = 0");
  common(probe, false, false);
  probe->add_option("--mode", cfg.mode, "convex or concave")->check(CLI::IsMember(pinch_modes));
  probe->add_option("--grid", cfg.grid, "Points per axis (0: automatic)")
      ->check(CLI::Range(0, 1000));

  auto* speeds = app.add_subcommand("speeds", "Speed admissibility and concavity");
  speeds->require_subcommand(1);
  auto* check = speeds->add_subcommand("check", "Symmetry, monotonicity, homogeneity");
  common(check, false, true);
  auto* concavity = speeds->add_subcommand("concavity", "Concavity of f or of its dual");
  common(concavity, false, true);
  concavity->add_option("--mode", cfg.mode, "convex, concave or dual-concave")
      ->check(CLI::IsMember({"convex", "concave", "dual-concave"}));

  auto* iccond = app.add_subcommand("iccond", "Inverse-concavity form at face points");
  common(iccond, false, false);
  iccond->add_option("--seed", cfg.seed, "Random seed");
  iccond->add_option("--faces", cfg.faces, "Random face points")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  iccond->add_option("--z", cfg.z_face, "Single face point z_2..z_n")->delimiter(',');

  auto* blowdown = app.add_subcommand("blowdown", "Rescaled radii against the cylinder");
  common(blowdown, true, false);
  blowdown->add_option("--hj", cfg.h_js, "Scales h_j (default h_max / 2)")->delimiter(',');
  blowdown->add_option("--t", cfg.ts, "Times t < 1")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed()) cfg.command = "bowl solve";
  else if (verify->parsed()) cfg.command = "verify";
  else if (beta2->parsed()) cfg.command = "cone beta2";
  else if (probe->parsed()) cfg.command = "cone probe";
  else if (check->parsed()) cfg.command = "speeds check";
  else if (concavity->parsed()) cfg.command = "speeds concavity";
  else if (iccond->parsed()) cfg.command = "iccond";
  else if (blowdown->parsed()) cfg.command = "blowdown";
  for (double t : cfg.ts)
    if (!(t < 1.0)) {
      err << "--t values must be < 1\n";
      return 2;
    }

  try {
    return dispatch(cfg, out, err);
  } catch (const InvalidSpeedError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    out << dump_json(error_json(cfg, "DomainError", e));
  } catch (const StiffnessError& e) {
    out << dump_json(error_json(cfg, "StiffnessError", e));
  } catch (const SolverError& e) {
    out << dump_json(error_json(cfg, "SolverError", e));
  } catch (const SamplingError& e) {
    out << dump_json(error_json(cfg, "SamplingError", e));
  }
  return 1;
}

}  // namespace translab
