#pragma once

// Brute-force |nabla A|^2 for a hypersurface patch given by a parametrization,
// used to cross-check the closed form along rotational profiles.

#include <functional>

#include <Eigen/Dense>

#include "translab/bowl.hpp"

namespace translab {

/// d -> X(x0 + d) - X(x0), a map from R^n to R^{n+1}.
using PatchMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct PatchGeometry {
  double grad_a_sq = 0.0;    // |nabla A|^2 at x0
  double a_sq = 0.0;         // |A|^2
  double mean_curvature = 0.0;  // trace of the shape operator (sign of the chosen normal)
};

/// Derivatives of X up to third order by central differences on a step-delta
/// grid, extrapolated once; metric, normal, second fundamental form and
/// Christoffel symbols assembled from them.
PatchGeometry patch_geometry(const PatchMap& patch, int n, double delta);

/// |nabla A|^2 of the profile's hypersurface of revolution at radius r,
/// from a graph chart around (r, 0, ..., 0) re-integrated off the profile.
double grad_a_norm_oracle(const Profile& profile, double r);

/// Same as grad_a_norm_oracle with the full patch geometry.
PatchGeometry profile_patch_geometry(const Profile& profile, double r);

}  // namespace translab
