#pragma once

// Verification suites: builds every EstimateReport for one speed and
// dimension from a single solved profile plus cone and face sampling.

#include <cstdint>
#include <string>
#include <vector>

#include "translab/estimates.hpp"

namespace translab {

struct VerifyConfig {
  std::string speed = "mean";
  int n = 3;
  double h_max = 1e4;
  double tol = 1e-8;
  int samples = 100000;
  std::uint64_t seed = 0;
};

/// Face-probe grid per axis keeping grid^(n-1) near 1e4 (between 2 and 20).
int default_probe_grid(int n);

/// Report identifiers in manifest order.
const std::vector<std::string>& verification_ids();

/// Convex-mode pinching report: cone containment, beta2 estimate and validation,
/// face probe and the profile inequalities.
EstimateReport claim_4_1_report(const Speed& speed, const Profile* profile, int samples,
                                std::uint64_t seed);
/// Concave-mode pinching report, same structure.
EstimateReport claim_4_2_report(const Speed& speed, const Profile* profile, int samples,
                                std::uint64_t seed);
/// Inverse-concavity form at `faces` random face points diag(0, z).
EstimateReport iccond_report(const Speed& speed, int faces, std::uint64_t seed);
EstimateReport linearized_cylinder_report(const Speed& speed);
/// Residual on `profile` plus a refinement pair solved to min(h_max, 1e3).
EstimateReport jacobi_speed_report(const Profile& profile);
EstimateReport jacobi_rotation_report(const Profile& profile);

/// True when the report applies to the speed (classification and dimension).
bool verification_applies(const std::string& id, const Speed& speed);

/// which = "all" runs every applicable report; a single id runs that report
/// and throws DomainError when it does not apply.
std::vector<EstimateReport> run_verification(const VerifyConfig& config, const std::string& which);

}  // namespace translab
