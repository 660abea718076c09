#pragma once

// Rotationally symmetric translators: the graph u(r) over R^n moving with
// unit speed in the e_{n+1} direction under F = f(kappa). The profile ODE is
//
//   f(kappa_rad, kappa_sph, ..., kappa_sph) = 1 / sqrt(1 + u_r^2),
//   kappa_rad = u_rr / (1 + u_r^2)^{3/2},  kappa_sph = u_r / (r sqrt(1 + u_r^2)),
//
// with the upward normal convention, so F = <nu, e_{n+1}> > 0 on the graph.

#include <span>
#include <string>
#include <vector>

#include "translab/speeds.hpp"

namespace translab {

/// kappa_0 with f(kappa_0, ..., kappa_0) = 1.
double tip_curvature(const Speed& speed, int n);

struct SolveOptions {
  double eps = 1e-4;        // series start radius
  double min_step = 1e-8;
  double max_step = 0.1;
  /// Upper bound on step * (largest principal curvature); keeps enough
  /// nodes per unit turning angle for three-point differencing.
  double resolution = 5e-4;
};

struct ProfilePoint {
  double r = 0.0;
  double u = 0.0;
  double u_r = 0.0;
  double s = 0.0;
  double kappa_rad = 0.0;
  double kappa_sph = 0.0;
  double F = 0.0;
  double grad_a_sq = 0.0;
};

class Profile {
 public:
  Profile(Speed speed, int n, double tol, SolveOptions options);

  const Speed& speed() const { return speed_; }
  int dim() const { return n_; }
  double tol() const { return tol_; }
  double eps() const { return options_.eps; }
  double kappa0() const { return kappa0_; }
  double residual_max() const { return residual_max_; }
  const SolveOptions& options() const { return options_; }
  std::size_t size() const { return r.size(); }

  double r_max() const { return r.back(); }
  double h_max() const { return u.back(); }

  std::vector<double> r, u, u_r, s, kappa_rad, kappa_sph, F, u_rr;

  /// Node i as a ProfilePoint with the closed-form |nabla A|^2.
  ProfilePoint node(std::size_t i) const;

 private:
  friend Profile solve_profile(const Speed&, int, double, double, const SolveOptions&);
  Speed speed_;
  int n_;
  double tol_;
  double kappa0_ = 0.0;
  double residual_max_ = 0.0;
  SolveOptions options_;
};

/// Integrates outward from the tip until u >= h_max. The speed is used as
/// given; callers normalize it when cylinder constants matter.
Profile solve_profile(const Speed& speed, int n, double h_max, double tol,
                      const SolveOptions& options = {});

/// Curvatures along the profile from (r, u_r): kappa_sph explicitly and
/// kappa_rad from the speed equation. Throws SolverError if no root exists.
struct Curvatures {
  double kappa_rad = 0.0;
  double kappa_sph = 0.0;
};
Curvatures profile_curvatures(const Speed& speed, int n, double r, double u_r, double kappa0);

/// Arclength derivatives of the principal curvatures at (r, u_r).
struct CurvatureRates {
  double kappa_rad_s = 0.0;
  double kappa_sph_s = 0.0;
};
CurvatureRates curvature_rates(const Speed& speed, int n, double r, double u_r,
                               const Curvatures& k);

/// (kappa_rad_s)^2 + 3 (n - 1) (kappa_sph_s)^2.
double grad_a_sq_closed_form(int n, const CurvatureRates& rates);

/// Cubic Hermite interpolation of u, u_r, s; curvatures recomputed from the ODE.
ProfilePoint geometry_at(const Profile& profile, double r);

/// Point with u = h (u is increasing in r).
ProfilePoint point_at_height(const Profile& profile, double h);

/// Index of the last node with r_i <= r.
std::size_t node_index(const Profile& profile, double r);

struct GrimReaper {
  double u = 0.0;
  double u_r = 0.0;
  double curvature = 0.0;
};

/// u = -log cos x, u_r = tan x, curvature = cos x for |x| < pi/2.
GrimReaper grim_reaper_oracle(double x);

struct CodazziReport {
  double max_residual = 0.0;  // max |FD - closed form| / K^2 over interior nodes
  double at_r = 0.0;
  double tolerance = 1e-6;
  std::size_t nodes = 0;
  bool passed() const { return max_residual <= tolerance; }
};

/// Three-point differences of kappa_sph in s against (kappa_rad - kappa_sph)/(W r),
/// scaled by the square of the largest principal curvature.
CodazziReport codazzi_check(const Profile& profile);

/// CSV with header r,u,u_r,s,kappa_rad,kappa_sph,F,grad_a_sq.
std::string profile_csv(const Profile& profile);

}  // namespace translab
