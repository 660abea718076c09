#include "translab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "translab/cones.hpp"
#include "translab/errors.hpp"
#include "translab/matrix_calculus.hpp"
#include "translab/sampling.hpp"

namespace translab {

namespace {

constexpr double kSlack = 1e-6;

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

EstimateReport claim_report(const char* id, PinchMode mode, const Speed& speed,
                            const Profile* profile, int samples, std::uint64_t seed) {
  EstimateReport rep;
  rep.lemma_id = id;
  rep.tolerance = kSlack;
  const Beta2Estimate est = estimate_beta2(speed, mode, samples, seed);
  rep.bound_constant = est.beta2;
  rep.add("samples in Lambda outside the positive cone", est.outside_positive_cone, 0.0,
          est.outside_positive_cone == 0 && est.in_lambda > 0);
  const Beta2Validation val = validate_beta2(speed, mode, est.beta2, samples, seed + 1, kSlack);
  rep.add("validation samples above beta2 min z", val.violations, 0.0,
          val.violations == 0 && val.checked > 0);
  const FaceProbeReport probe = boundary_ray_probe(speed, mode, default_probe_grid(speed.dim()));
  rep.add("face probe: max |quantity| on the diagonal ray", probe.max_abs_on_diagonal, 0.0,
          probe.zero_on_diagonal);
  rep.add("face probe: largest quantity off the diagonal", probe.max_off_diagonal, 0.0,
          probe.negative_off_diagonal && probe.scaling_ok);
  if (profile) {
    if (mode == PinchMode::Convex)
      add_convex_profile_checks(rep, *profile);
    else
      add_concave_profile_checks(rep, *profile, est.beta2, kSlack);
  }
  rep.details = "beta1 = " + fmt("%.17g", est.beta1) + ", beta2 = " + fmt("%.17g", est.beta2) +
                ", " + std::to_string(est.in_closure) + " of " + std::to_string(est.samples) +
                " samples in the closure of Lambda";
  rep.finalize();
  return rep;
}

struct FaceShard {
  int checked = 0;
  int skipped = 0;
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();  // min eigenvalue / F
};

JacobiResidual refined_speed(const Speed& speed, int n, double h_max, double tol, double res,
                             double max_step) {
  SolveOptions o;
  o.resolution = res;
  o.max_step = max_step;
  return speed_jacobi_residual(solve_profile(speed, n, h_max, tol, o));
}

}  // namespace

int default_probe_grid(int n) {
  const double g = std::pow(1e4, 1.0 / std::max(1, n - 1));
  return std::clamp(static_cast<int>(g + 1e-9), 2, 20);
}

const std::vector<std::string>& verification_ids() {
  static const std::vector<std::string> ids{
      "lemma-3.1",  "lemma-3.3", "lemma-3.4",           "lemma-3.5",    "lemma-3.6",
      "blowdown",   "corollary-H", "claim-4.1",         "claim-4.2",    "iccond",
      "linearized-cylinder", "jacobi-speed", "jacobi-rotation"};
  return ids;
}

EstimateReport claim_4_1_report(const Speed& speed, const Profile* profile, int samples,
                                std::uint64_t seed) {
  return claim_report("claim-4.1", PinchMode::Convex, speed, profile, samples, seed);
}

EstimateReport claim_4_2_report(const Speed& speed, const Profile* profile, int samples,
                                std::uint64_t seed) {
  return claim_report("claim-4.2", PinchMode::Concave, speed, profile, samples, seed);
}

EstimateReport iccond_report(const Speed& speed, int faces, std::uint64_t seed) {
  const int n = speed.dim();
  if (n < 2) throw DomainError("inverse-concavity form needs n >= 2");
  if (faces < 1) throw DomainError("face count must be >= 1");
  EstimateReport rep;
  rep.lemma_id = "iccond";
  rep.tolerance = 1e-8;
  const ConcavityReport dual =
      check_concavity(speed, ConcavityMode::DualConcave, std::min(faces, 10000), seed);
  rep.add("max tangential eigenvalue of the dual speed", dual.extremal_eigenvalue,
          dual.tolerance, dual.passed);

  auto shards = sharded_map<FaceShard>(
      static_cast<std::size_t>(faces), seed + 2, [&](Rng& rng, std::size_t count) {
        FaceShard acc;
        std::uniform_real_distribution<double> logz(std::log(1e-2), std::log(1e2));
        std::vector<double> z(static_cast<std::size_t>(n - 1));
        std::vector<double> full(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < count; ++k) {
          for (auto& x : z) x = std::exp(logz(rng));
          full[0] = 0.0;
          std::copy(z.begin(), z.end(), full.begin() + 1);
          if (cone_violation(speed.cone(), full)) {
            ++acc.skipped;
            continue;
          }
          const QuadraticFormReport q = iccond_min_eigenvalue(speed, z);
          ++acc.checked;
          if (!q.passed()) ++acc.failures;
          acc.worst = std::min(acc.worst, q.min_eigenvalue / q.speed_value);
        }
        return acc;
      });
  FaceShard total;
  for (const auto& s : shards) {
    total.checked += s.checked;
    total.skipped += s.skipped;
    total.failures += s.failures;
    total.worst = std::min(total.worst, s.worst);
  }
  rep.add("faces with min eigenvalue < -1e-8 F", total.failures, 0.0,
          total.failures == 0 && total.checked > 0);
  rep.add("min over faces of min eigenvalue / F", total.worst, -1e-8, total.worst >= -1e-8);
  rep.measured.emplace_back(0.0, total.worst);
  rep.details = std::to_string(total.checked) + " faces checked, " +
                std::to_string(total.skipped) + " outside the speed's cone";
  rep.finalize();
  return rep;
}

EstimateReport linearized_cylinder_report(const Speed& speed) {
  EstimateReport rep;
  rep.lemma_id = "linearized-cylinder";
  rep.tolerance = 1e-8;
  for (double t : {0.0, 0.5, 0.9}) {
    const CylinderLinearization c = cylinder_linearized_check(speed, speed.dim(), t);
    char name[96];
    std::snprintf(name, sizeof name, "t = %g: max |df/dk_j - 1|", t);
    rep.add(name, c.max_tangential_error, 1e-8, c.max_tangential_error <= 1e-8);
    std::snprintf(name, sizeof name, "t = %g: relative error of |A|^2_F", t);
    rep.add(name, c.relative_error, 1e-8, c.relative_error <= 1e-8);
    rep.measured.emplace_back(t, c.a_sq_f);
  }
  rep.finalize();
  return rep;
}

EstimateReport jacobi_speed_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "jacobi-speed";
  rep.tolerance = 1e-3;
  const JacobiResidual main = speed_jacobi_residual(p);
  rep.add("max relative residual", main.max_relative, 1e-3, main.max_relative <= 1e-3);
  const double h = std::min(p.h_max(), 1e3);
  const JacobiResidual coarse = refined_speed(p.speed(), p.dim(), h, p.tol(), 8e-3, 0.1);
  const JacobiResidual fine = refined_speed(p.speed(), p.dim(), h, p.tol(), 4e-3, 0.05);
  const double ratio = coarse.max_relative / fine.max_relative;
  rep.add("residual ratio under grid refinement by 2", ratio, 2.0, ratio >= 2.0);
  rep.measured.emplace_back(main.at_r, main.max_relative);
  rep.details = "worst node at r = " + fmt("%.6g", main.at_r) + " over " +
                std::to_string(main.nodes) + " nodes";
  rep.finalize();
  return rep;
}

EstimateReport jacobi_rotation_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "jacobi-rotation";
  rep.tolerance = 1e-2;
  const RotationJacobi main = rotation_jacobi_residual(p, 0.0);
  rep.add("tilt field max relative residual", main.tilt.max_relative, 1e-2,
          main.tilt.max_relative <= 1e-2);
  rep.add("horizontal translation field max relative residual", main.translation.max_relative,
          1e-2, main.translation.max_relative <= 1e-2);
  const RotationJacobi shifted = rotation_jacobi_residual(p, 1.0);
  rep.add("tilt field about c = 1", shifted.tilt.max_relative, 1e-2,
          shifted.tilt.max_relative <= 1e-2);

  const double h = std::min(p.h_max(), 1e3);
  auto solve = [&](double res, double max_step) {
    SolveOptions o;
    o.resolution = res;
    o.max_step = max_step;
    return rotation_jacobi_residual(solve_profile(p.speed(), p.dim(), h, p.tol(), o), 0.0);
  };
  const RotationJacobi coarse = solve(8e-3, 0.1);
  const RotationJacobi fine = solve(4e-3, 0.05);
  const double ratio = coarse.tilt.max_relative / fine.tilt.max_relative;
  rep.add("tilt residual ratio under grid refinement by 2", ratio, 2.0, ratio >= 2.0);
  rep.measured.emplace_back(main.tilt.at_r, main.tilt.max_relative);
  rep.details = "tilt field satisfies L1 phi = -psi with psi the horizontal translation mode; "
                "against L1 phi = 0 the residual is " +
                fmt("%.3g", main.tilt_homogeneous.max_relative);
  rep.finalize();
  return rep;
}

bool verification_applies(const std::string& id, const Speed& speed) {
  // At n = 2 the convex quantity vanishes identically for the mean speed.
  if (id == "claim-4.1") return speed_is_convex(speed) && speed.dim() >= 3;
  if (id == "claim-4.2") return speed_is_concave(speed);
  if (id == "jacobi-rotation") return speed.kind() == SpeedKind::Mean;
  if (id == "iccond") return speed.kind() != SpeedKind::Custom;
  return std::find(verification_ids().begin(), verification_ids().end(), id) !=
         verification_ids().end();
}

std::vector<EstimateReport> run_verification(const VerifyConfig& cfg, const std::string& which) {
  if (cfg.n < 2) throw DomainError("verification needs n >= 2");
  if (!(cfg.h_max >= 100.0)) throw DomainError("verification needs h_max >= 100");
  const Speed speed = normalized(Speed::make(cfg.speed, cfg.n));
  std::vector<std::string> ids;
  if (which == "all") {
    for (const auto& id : verification_ids())
      if (verification_applies(id, speed)) ids.push_back(id);
  } else {
    if (std::find(verification_ids().begin(), verification_ids().end(), which) ==
        verification_ids().end())
      throw DomainError("unknown verification id '" + which + "'");
    if (!verification_applies(which, speed))
      throw DomainError(which + " does not apply to speed " + cfg.speed);
    ids.push_back(which);
  }

  const Profile profile = solve_profile(speed, cfg.n, cfg.h_max, cfg.tol);
  std::vector<EstimateReport> out;
  for (const auto& id : ids) {
    if (id == "lemma-3.1") {
      out.push_back(lemma_3_1_report(profile));
    } else if (id == "lemma-3.3") {
      out.push_back(lemma_3_3_report(profile));
    } else if (id == "lemma-3.4") {
      const double c1 = gradient_ratio_and_C1(profile).bound_constant;
      out.push_back(lemma_3_4_report(profile, c1, lower_bound_h0(profile, c1)));
    } else if (id == "lemma-3.5") {
      out.push_back(lemma_3_5_report(profile));
    } else if (id == "lemma-3.6") {
      out.push_back(lemma_3_6_report(profile));
    } else if (id == "blowdown") {
      out.push_back(blowdown_report(profile, {cfg.h_max / 2}, {-1.0, 0.0, 0.5, 0.9}));
    } else if (id == "corollary-H") {
      out.push_back(asymptotics_report(profile));
    } else if (id == "claim-4.1") {
      out.push_back(claim_4_1_report(speed, &profile, cfg.samples, cfg.seed));
    } else if (id == "claim-4.2") {
      out.push_back(claim_4_2_report(speed, &profile, cfg.samples, cfg.seed));
    } else if (id == "iccond") {
      out.push_back(iccond_report(speed, 10000, cfg.seed));
    } else if (id == "linearized-cylinder") {
      out.push_back(linearized_cylinder_report(speed));
    } else if (id == "jacobi-speed") {
      out.push_back(jacobi_speed_report(profile));
    } else if (id == "jacobi-rotation") {
      out.push_back(jacobi_rotation_report(profile));
    }
  }
  return out;
}

}  // namespace translab
