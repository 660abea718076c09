#pragma once

// Quantitative checks on solved profiles: cylindrical and gradient
// estimates, height asymptotics, blow-down radii and the Jacobi fields
// generated by ambient isometries.

#include <string>
#include <utility>
#include <vector>

#include "translab/bowl.hpp"

namespace translab {

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct EstimateReport {
  std::string lemma_id;
  std::vector<std::pair<double, double>> measured;  // (h, value)
  double bound_constant = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<Check> checks;
  std::string details;

  void add(std::string name, double value, double bound, bool ok);
  /// passed = every check passed (and at least one check exists).
  void finalize();
};

enum class CylindricalMode { Mcf, Convex, Concave };

/// f(0, 1, ..., 1) for the speed as scaled (n - 1 once normalized).
double cylinder_value(const Speed& speed);

/// mcf: |A|^2 - H^2/(n-1); convex: k1 + k2 - F/beta1; concave: kn - F/beta1,
/// with beta1 = cylinder_value(speed).
double cylindrical_quantity(const ProfilePoint& point, const Speed& speed, CylindricalMode mode);

/// Smallest listed height beyond which ok holds at every later entry; +inf
/// when it fails at the last entry. Entries must be sorted by height.
double threshold_height(const std::vector<double>& heights, const std::vector<bool>& ok);

/// Heights 10^a, 10^(a + 1/per_decade), ..., up to h_hi inclusive.
std::vector<double> log_heights(double h_lo, double h_hi, int per_decade);

/// |A|^2 / F^4 over k1 / F along the profile; C1 = sup over nodes with h >= h_burn.
EstimateReport gradient_ratio_and_C1(const Profile& profile, double h_burn = 1.0);

EstimateReport lemma_3_1_report(const Profile& profile);
/// Smallest node height beyond which F sqrt(4 C1 h) >= 1 holds at every node.
double lower_bound_h0(const Profile& profile, double c1);
/// Lower bound F sqrt(4 C1 h) >= 1 beyond the empirical h0, plus C1 behaviour.
EstimateReport lemma_3_3_report(const Profile& profile, double h_burn = 1.0);
/// Girth bound rho(h) >= sqrt(h / (16 C1)) at nodes with h >= h0.
EstimateReport lemma_3_4_report(const Profile& profile, double c1, double h0);
EstimateReport lemma_3_5_report(const Profile& profile);
EstimateReport lemma_3_6_report(const Profile& profile);

/// F sqrt(h), kappa_1/F, girth and decay at h_ref = min(1e4, h_max) and h_ref/10.
EstimateReport asymptotics_report(const Profile& profile);

struct BlowdownSample {
  double h_j = 0.0;
  double t = 0.0;
  double measured_radius = 0.0;
  double predicted_radius = 0.0;
  double relative_deviation() const {
    return std::abs(measured_radius - predicted_radius) / predicted_radius;
  }
};

/// Radius of h_j^{-1/2} (M_{h_j t} - h_j e_{n+1}) at height 0, i.e. rho(h_j (1 - t)) / sqrt(h_j).
BlowdownSample blowdown_radius(const Profile& profile, double h_j, double t);
EstimateReport blowdown_report(const Profile& profile, const std::vector<double>& h_js,
                               const std::vector<double>& ts, double tolerance = 0.02);

struct CylinderLinearization {
  double radius = 0.0;
  double max_tangential_error = 0.0;  // max_j>=2 |df/dk_j - 1|
  double a_sq_f = 0.0;                // sum f^i kappa_i^2
  double expected = 0.0;              // 1 / (2 (1 - t))
  double relative_error = 0.0;
  bool passed() const { return max_tangential_error <= 1e-8 && relative_error <= 1e-8; }
};

/// At kappa = (0, 1/r(t), ..., 1/r(t)) with r(t) = sqrt(2 (n-1) (1-t)); the speed
/// should be normalized.
CylinderLinearization cylinder_linearized_check(const Speed& speed, int n, double t);

struct JacobiResidual {
  double max_relative = 0.0;  // worst node
  double at_r = 0.0;
  std::size_t nodes = 0;
};

/// F as a Jacobi field: Delta_F F + <V, grad F> + |A|^2_F F, relative to |A|^2_F |F|.
JacobiResidual speed_jacobi_residual(const Profile& profile);

/// Mode-1 fields on mean curvature profiles (L1 phi = phi_ss + (n-1)(rho_s/rho) phi_s
/// - (n-1) phi/rho^2 + |V| phi_s + |A|^2 phi), relative to the sum of term magnitudes.
struct RotationJacobi {
  JacobiResidual tilt;             // L1 phi = -<e_1, nu> mode, phi = <J(X - c e_{n+1}), nu> mode
  JacobiResidual tilt_homogeneous;  // same field against L1 phi = 0 (diagnostic)
  JacobiResidual translation;      // L1 psi = 0, psi = <e_1, nu> mode
};
RotationJacobi rotation_jacobi_residual(const Profile& profile, double center_height);

/// Classification used to decide which pinching statements apply.
bool speed_is_convex(const Speed& speed);
bool speed_is_concave(const Speed& speed);

/// Profile half of the convex-speed pinching statements (plus the
/// mean-curvature-only inequalities for the mean speed).
void add_convex_profile_checks(EstimateReport& report, const Profile& profile);
/// kn - F/beta1 < 0 at every node and F/beta1 - kn <= (beta2 + slack) k1.
void add_concave_profile_checks(EstimateReport& report, const Profile& profile, double beta2,
                                double slack = 1e-6);

}  // namespace translab
