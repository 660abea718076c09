#include "translab/matrix_calculus.hpp"

#include <cmath>

#include "translab/errors.hpp"

namespace translab {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* what, int n) {
  if (m.rows() != n || m.cols() != n)
    throw DomainError(std::string(what) + " must be " + std::to_string(n) + "x" +
                      std::to_string(n));
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string(what) + " is not symmetric");
}

// Second form in an eigenframe; kappa holds the eigenvalues, b the rotated B.
double eigenframe_second(const Speed& speed, std::span<const double> kappa,
                         std::span<const double> grad, const Eigen::MatrixXd& b) {
  const int n = static_cast<int>(kappa.size());
  const Eigen::MatrixXd hess = speed.raw_hessian(kappa);
  double norm = 0.0;
  for (double k : kappa) norm += k * k;
  const double merge = 1e-6 * (1.0 + std::sqrt(norm));
  double second = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      second += hess(i, j) * b(i, i) * b(j, j);
      if (i == j) continue;
      const double gap = kappa[i] - kappa[j];
      const double dd = std::abs(gap) < merge ? hess(i, i) - hess(i, j) : (grad[i] - grad[j]) / gap;
      second += dd * b(i, j) * b(i, j);
    }
  return second;
}

}  // namespace

SpectralDerivatives matrix_gradient_hessian_form(const Speed& speed, const Eigen::MatrixXd& Z,
                                                 const Eigen::MatrixXd& B) {
  const int n = speed.dim();
  require_symmetric(Z, "Z", n);
  require_symmetric(B, "B", n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (Z + Z.transpose()));
  if (eig.info() != Eigen::Success) throw SolverError("eigen-solve of Z failed", 0.0);
  const Eigen::VectorXd kv = eig.eigenvalues();
  std::vector<double> kappa(kv.data(), kv.data() + n);
  if (auto v = cone_violation(speed.cone(), kappa, true))
    throw DomainError(speed.name() + ": eigenvalues of Z leave the cone: " + *v);

  const Eigen::MatrixXd& q = eig.eigenvectors();
  const Eigen::MatrixXd b = q.transpose() * (0.5 * (B + B.transpose())) * q;
  std::vector<double> grad(static_cast<std::size_t>(n));
  speed.raw_gradient(kappa, grad);

  SpectralDerivatives out;
  out.value = speed.raw_value(kappa);
  for (int i = 0; i < n; ++i) out.first += grad[i] * b(i, i);
  out.second = eigenframe_second(speed, kappa, grad, b);
  return out;
}

std::vector<Eigen::MatrixXd> symmetric_basis(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  const double w = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
      e(i, j) = e(j, i) = w;
      basis.push_back(e);
    }
  return basis;
}

namespace {

struct FacePoint {
  std::vector<double> kappa;
  std::vector<double> grad;
  double value = 0.0;
};

FacePoint face_point(const Speed& speed, std::span<const double> z) {
  const int n = speed.dim();
  if (static_cast<int>(z.size()) != n - 1)
    throw DomainError("face point needs n - 1 = " + std::to_string(n - 1) + " entries");
  FacePoint p;
  p.kappa.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0) || !std::isfinite(z[i]))
      throw DomainError("face entries must be positive and finite");
    p.kappa[i + 1] = z[i];
  }
  if (auto v = cone_violation(speed.cone(), p.kappa, true))
    throw DomainError(speed.name() + ": face point leaves the cone: " + *v);
  p.value = speed.raw_value(p.kappa);
  if (!(p.value > 0.0)) throw DomainError(speed.name() + ": speed vanishes on the face point");
  p.grad.resize(p.kappa.size());
  speed.raw_gradient(p.kappa, p.grad);
  return p;
}

double form_at(const Speed& speed, const FacePoint& p, const Eigen::MatrixXd& B,
               double r_weight) {
  const int n = speed.dim();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  b.bottomRightCorner(n - 1, n - 1) = B;
  // Z is diagonal, so the eigenframe is the coordinate frame.
  const double second = eigenframe_second(speed, p.kappa, p.grad, b);
  double r_term = 0.0;
  double trace_f = 0.0;
  for (int a = 1; a < n; ++a) {
    trace_f += p.grad[a] * b(a, a);
    for (int c = 1; c < n; ++c) r_term += p.grad[a] * b(a, c) * b(a, c) / p.kappa[c];
  }
  return second + r_weight * r_term - 2.0 * trace_f * trace_f / p.value;
}

}  // namespace

double iccond_form_value(const Speed& speed, std::span<const double> z_face,
                         const Eigen::MatrixXd& B, double r_weight) {
  const FacePoint p = face_point(speed, z_face);
  require_symmetric(B, "B", speed.dim() - 1);
  return form_at(speed, p, B, r_weight);
}

QuadraticFormReport iccond_min_eigenvalue(const Speed& speed, std::span<const double> z_face,
                                          double r_weight) {
  const FacePoint p = face_point(speed, z_face);
  const int m = speed.dim() - 1;
  const auto basis = symmetric_basis(m);
  const int d = static_cast<int>(basis.size());

  Eigen::MatrixXd form(d, d);
  for (int a = 0; a < d; ++a) {
    form(a, a) = form_at(speed, p, basis[a], r_weight);
    for (int c = a + 1; c < d; ++c) {
      const double plus = form_at(speed, p, basis[a] + basis[c], r_weight);
      const double minus = form_at(speed, p, basis[a] - basis[c], r_weight);
      form(a, c) = form(c, a) = 0.25 * (plus - minus);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(form);
  if (eig.info() != Eigen::Success) throw SolverError("eigen-solve of the form failed", 0.0);

  QuadraticFormReport r;
  r.speed = speed.name();
  r.n = speed.dim();
  r.z_face.assign(z_face.begin(), z_face.end());
  r.speed_value = p.value;
  r.min_eigenvalue = eig.eigenvalues()[0];
  r.witness_direction = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < d; ++a) r.witness_direction += eig.eigenvectors()(a, 0) * basis[a];
  r.form = form;
  r.tolerance = 1e-8 * p.value;
  return r;
}

}  // namespace translab
