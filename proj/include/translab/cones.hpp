#pragma once

// The pinching sets Lambda of the cylindrical estimates for convex and
// concave speeds, and the empirical constant beta_2.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translab/speeds.hpp"

namespace translab {

enum class PinchMode { Convex, Concave };
std::string_view pinch_mode_name(PinchMode mode);

/// min_{i<j} (z_i + z_j) > 0.
bool gamma2_membership(const CurvatureVector& z);

struct ConeSample {
  std::vector<double> z;
  double quantity = 0.0;
  double min_entry = 0.0;
  bool in_lambda = false;
};

/// Convex mode: min_{i<j}(z_i + z_j) - f(z)/beta1. Concave mode: f(z)/beta1 - max z_i.
/// Uses the unscaled speed, so the result does not depend on normalization.
/// Requires n >= 2 and z in the closed cone of the speed.
ConeSample lambda_quantity(const Speed& speed, std::span<const double> z, PinchMode mode);

struct Beta2Estimate {
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::vector<double> witness;   // unit vector attaining beta2
  int samples = 0;               // cone samples drawn
  int in_closure = 0;            // samples in the closure of Lambda
  int in_lambda = 0;
  int outside_positive_cone = 0;  // in_lambda samples with min z_i <= 0
};

/// sup of quantity / min z_i over sampled unit z in the closure of Lambda,
/// refined by coordinate ascent. Throws SamplingError if no sample lands in
/// the closure.
Beta2Estimate estimate_beta2(const Speed& speed, PinchMode mode, int sample_count,
                             std::uint64_t seed);

struct Beta2Validation {
  int samples = 0;
  int checked = 0;     // samples in the closure of Lambda
  int violations = 0;  // quantity > (beta2 + slack) * min z_i
  double worst_excess = 0.0;
};

Beta2Validation validate_beta2(const Speed& speed, PinchMode mode, double beta2, int sample_count,
                               std::uint64_t seed, double slack = 1e-6);

struct FaceProbeReport {
  int points = 0;
  int diagonal_points = 0;
  double max_abs_on_diagonal = 0.0;
  double max_off_diagonal = 0.0;  // largest quantity away from the diagonal
  bool zero_on_diagonal = false;
  bool negative_off_diagonal = false;
  bool scaling_ok = false;
  std::vector<std::string> violations;
  bool passed() const { return zero_on_diagonal && negative_off_diagonal && scaling_ok; }
};

/// Scans the face z_1 = 0 with z_j in {1/grid, ..., 1}. Concave mode expects
/// quantity < 0 away from the diagonal, convex mode quantity <= 0.
FaceProbeReport boundary_ray_probe(const Speed& speed, PinchMode mode, int grid);

}  // namespace translab
