#pragma once

// Curvature speed functions f(kappa): evaluation, derivatives, admissibility
// sampling, the dual speed on the face kappa_1 = 0, and cylinder
// normalization.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace translab {

/// Open symmetric cones on which the shipped speeds are defined.
enum class Cone {
  MeanConvex,  ///< sum of entries > 0
  TwoConvex,   ///< every pair sum kappa_i + kappa_j > 0
  Garding2,    ///< sigma_1 > 0 and sigma_2 > 0
  Positive,    ///< every entry > 0
};

std::string_view cone_name(Cone cone);

/// Returns a description of the first violated defining condition, or
/// nullopt when kappa is a member. Strict membership uses the margin
/// 1e-12 * |kappa|^k for a degree-k condition; closed membership allows the
/// same margin on the other side.
std::optional<std::string> cone_violation(Cone cone, std::span<const double> kappa,
                                          bool closed = false);

inline bool in_cone(Cone cone, std::span<const double> kappa, bool closed = false) {
  return !cone_violation(cone, kappa, closed).has_value();
}

/// An n-tuple of principal curvatures. Entries are finite and n >= 1.
class CurvatureVector {
 public:
  explicit CurvatureVector(std::vector<double> kappa);
  CurvatureVector(std::initializer_list<double> kappa);

  int dim() const { return static_cast<int>(kappa_.size()); }
  std::span<const double> values() const { return kappa_; }
  double operator[](int i) const { return kappa_[static_cast<std::size_t>(i)]; }
  double norm() const;
  /// min over i < j of kappa_i + kappa_j > 0 (vacuous for n = 1).
  bool two_convex() const;

 private:
  std::vector<double> kappa_;
};

enum class SpeedKind { Mean, TwoHarmonicMean, SqrtScalar, ScalarToMean, Custom };

using SpeedValueFn = std::function<double(std::span<const double>)>;
using SpeedGradientFn = std::function<void(std::span<const double>, std::span<double>)>;

/// A named speed f together with its dimension, cone and a positive
/// normalization multiplier. Every evaluation returns scale * f.
///
/// Builtin identifiers are stable strings: "mean", "two-harmonic-mean",
/// "sqrt-scalar", "scalar-to-mean". The last two exist for n = 3 only.
class Speed {
 public:
  static Speed make(std::string_view name, int n);

  /// Arbitrary speed used for negative controls. When no gradient is given,
  /// derivatives fall back to central differences.
  static Speed custom(std::string name, int n, Cone cone, SpeedValueFn value,
                      SpeedGradientFn gradient = {}, int homogeneity_degree = 1);

  static const std::vector<std::string>& builtin_names();
  static bool is_builtin_name(std::string_view name);

  const std::string& name() const { return name_; }
  SpeedKind kind() const { return kind_; }
  int dim() const { return n_; }
  double scale() const { return scale_; }
  Cone cone() const { return cone_; }
  int homogeneity_degree() const { return degree_; }
  bool has_closed_form_gradient() const { return kind_ != SpeedKind::Custom || bool(gradient_); }
  bool has_closed_form_hessian() const { return kind_ != SpeedKind::Custom; }

  Speed with_scale(double scale) const;

  /// scale * f(kappa) without a cone check.
  double raw_value(std::span<const double> kappa) const;
  /// Closed form when available, else central differences. No cone check on
  /// kappa itself; differencing stencils must stay inside the closed cone.
  void raw_gradient(std::span<const double> kappa, std::span<double> out) const;
  /// Closed form when available, else central differences of the gradient.
  Eigen::MatrixXd raw_hessian(std::span<const double> kappa) const;

 private:
  Speed() = default;

  std::string name_;
  SpeedKind kind_ = SpeedKind::Mean;
  int n_ = 1;
  double scale_ = 1.0;
  Cone cone_ = Cone::MeanConvex;
  int degree_ = 1;
  SpeedValueFn value_;
  SpeedGradientFn gradient_;
};

/// Finite-difference step used throughout: 1e-5 * max(|kappa|, 1).
double fd_step(std::span<const double> kappa);

/// Central-difference gradient of the (scaled) speed. Throws
/// BoundaryProximityError if a stencil point leaves the closed cone.
std::vector<double> fd_gradient(const Speed& speed, std::span<const double> kappa);

/// Central differences of the gradient, extrapolated to fourth order.
Eigen::MatrixXd fd_hessian(const Speed& speed, std::span<const double> kappa);

double eval_speed(const Speed& speed, const CurvatureVector& kappa);
std::vector<double> grad_speed(const Speed& speed, const CurvatureVector& kappa);
Eigen::MatrixXd hess_speed(const Speed& speed, const CurvatureVector& kappa);

struct AdmissibilityReport {
  bool symmetry_ok = false;
  bool monotone_ok = false;
  bool homogeneous_ok = false;
  double symmetry_violation = 0.0;     // max |f(sigma k) - f(k)| / |f(k)|
  double monotone_violation = 0.0;     // max(0, -min_i df/dk_i) / (|f| / |k|)
  double homogeneity_violation = 0.0;  // max |f(l k) - l f(k)| / |l f(k)|
  double min_gradient = 0.0;           // smallest relative partial seen
  double worst_violation = 0.0;
  double tolerance = 0.0;
  int samples_used = 0;
  bool all_ok() const { return symmetry_ok && monotone_ok && homogeneous_ok; }
};

AdmissibilityReport check_admissible(const Speed& speed, int sample_count, std::uint64_t seed,
                                     double tolerance = 1e-8);

/// f*(y) = 1 / f(0, 1/y_2, ..., 1/y_n) for y in the positive (n-1)-cone.
double dual_speed_eval(const Speed& speed, std::span<const double> y);
std::vector<double> dual_speed_gradient(const Speed& speed, std::span<const double> y);
/// Closed form through z_i = 1/y_i; needs a closed-form Hessian of f.
Eigen::MatrixXd dual_speed_hessian(const Speed& speed, std::span<const double> y);

enum class ConcavityMode { Convex, Concave, DualConcave };
std::string_view concavity_mode_name(ConcavityMode mode);

struct ConcavityReport {
  ConcavityMode mode = ConcavityMode::Concave;
  /// Max tangential Hessian eigenvalue for concave modes, min for convex.
  double extremal_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  int samples_used = 0;
  std::vector<double> extremal_point;
};

ConcavityReport check_concavity(const Speed& speed, ConcavityMode mode, int sample_count,
                                std::uint64_t seed);

/// Tangential (radial direction projected out) Hessian eigenvalues of the
/// speed at kappa, or of f* at y when dual is set. Ascending order.
Eigen::VectorXd tangential_hessian_eigenvalues(const Speed& speed, std::span<const double> point,
                                               bool dual);

/// The unscaled value f(0, 1, ..., 1).
double beta1(const Speed& speed);

struct CylinderNormalization {
  double beta1;
  Speed normalized;
};

/// beta1 of the unscaled speed and the copy scaled so that f(0,1,...,1) = n-1.
CylinderNormalization cylinder_value_and_normalize(const Speed& speed);

inline Speed normalized(const Speed& speed) {
  return cylinder_value_and_normalize(speed).normalized;
}

}  // namespace translab
