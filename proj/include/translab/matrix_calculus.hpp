#pragma once

// F(A) = f(eigenvalues of A) as a function of a symmetric matrix, and the
// inverse-concavity quadratic form at points of the face kappa_1 = 0.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "translab/speeds.hpp"

namespace translab {

struct SpectralDerivatives {
  double value = 0.0;   // F(Z)
  double first = 0.0;   // DF(Z)[B]
  double second = 0.0;  // D^2F(Z)[B, B]
};

/// Value, first and second directional derivatives of F at Z along B.
/// Eigenvalues of Z must lie in the closed cone of the speed.
SpectralDerivatives matrix_gradient_hessian_form(const Speed& speed, const Eigen::MatrixXd& Z,
                                                 const Eigen::MatrixXd& B);

struct QuadraticFormReport {
  std::string speed;
  int n = 0;
  std::vector<double> z_face;
  double speed_value = 0.0;  // F(diag(0, z))
  double min_eigenvalue = 0.0;
  /// Unit-Frobenius-norm symmetric (n-1)x(n-1) matrix attaining min_eigenvalue.
  Eigen::MatrixXd witness_direction;
  /// The form on the orthonormal basis E_ii, (E_ij + E_ji)/sqrt(2), i < j.
  Eigen::MatrixXd form;
  double tolerance = 0.0;  // 1e-8 * F
  bool passed() const { return min_eigenvalue >= -tolerance; }
};

/// q(B) = D^2F(B^, B^) + r_weight * sum_{p,q>1} f^p B_pq^2 / z_q - 2 (sum_p f^p B_pp)^2 / F
/// at Z = diag(0, z), where B^ pads B with a zero first row and column.
double iccond_form_value(const Speed& speed, std::span<const double> z_face,
                         const Eigen::MatrixXd& B, double r_weight = 2.0);

QuadraticFormReport iccond_min_eigenvalue(const Speed& speed, std::span<const double> z_face,
                                          double r_weight = 2.0);

/// Orthonormal basis of Sym_m: E_ii first, then (E_ij + E_ji)/sqrt(2).
std::vector<Eigen::MatrixXd> symmetric_basis(int m);

}  // namespace translab
