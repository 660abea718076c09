#include "translab/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "translab/errors.hpp"
#include "translab/sampling.hpp"

namespace translab {

namespace {

constexpr double kConeMargin = 1e-12;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Checks value against +-margin; returns a message naming the condition.
std::optional<std::string> check_condition(const std::string& label, double value, double margin,
                                           bool closed) {
  const bool ok = closed ? value >= -margin : value > margin;
  if (ok) return std::nullopt;
  return label + " = " + fmt_double(value) + (closed ? " must be >= 0" : " must be > 0");
}

struct Sigmas {
  double s1 = 0.0;
  double s2 = 0.0;
};

Sigmas sigmas(std::span<const double> k) {
  Sigmas s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    s.s1 += k[i];
    for (std::size_t j = i + 1; j < k.size(); ++j) s.s2 += k[i] * k[j];
  }
  return s;
}

double two_harmonic_value(std::span<const double> k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) sum += 1.0 / (k[i] + k[j]);
  return 1.0 / sum;
}

}  // namespace

std::string_view cone_name(Cone cone) {
  switch (cone) {
    case Cone::MeanConvex: return "mean-convex";
    case Cone::TwoConvex: return "two-convex";
    case Cone::Garding2: return "garding-2";
    case Cone::Positive: return "positive";
  }
  return "unknown";
}

std::optional<std::string> cone_violation(Cone cone, std::span<const double> kappa, bool closed) {
  const double scale = norm2(kappa);
  const double m1 = kConeMargin * scale;
  const std::size_t n = kappa.size();
  switch (cone) {
    case Cone::MeanConvex: {
      const double s = std::accumulate(kappa.begin(), kappa.end(), 0.0);
      return check_condition("kappa_1 + ... + kappa_n", s, m1, closed);
    }
    case Cone::TwoConvex: {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          auto v = check_condition("kappa_" + std::to_string(i + 1) + " + kappa_" +
                                       std::to_string(j + 1),
                                   kappa[i] + kappa[j], m1, closed);
          if (v) return v;
        }
      if (n == 1) return check_condition("kappa_1", kappa[0], m1, closed);
      return std::nullopt;
    }
    case Cone::Garding2: {
      const Sigmas s = sigmas(kappa);
      if (auto v = check_condition("sigma_1", s.s1, m1, closed)) return v;
      return check_condition("sigma_2", s.s2, kConeMargin * scale * scale, closed);
    }
    case Cone::Positive: {
      for (std::size_t i = 0; i < n; ++i)
        if (auto v = check_condition("kappa_" + std::to_string(i + 1), kappa[i], m1, closed))
          return v;
      return std::nullopt;
    }
  }
  return std::string("unknown cone");
}

CurvatureVector::CurvatureVector(std::vector<double> kappa) : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw DomainError("curvature vector must have n >= 1 entries");
  for (double k : kappa_)
    if (!std::isfinite(k)) throw DomainError("curvature vector entries must be finite");
}

CurvatureVector::CurvatureVector(std::initializer_list<double> kappa)
    : CurvatureVector(std::vector<double>(kappa)) {}

double CurvatureVector::norm() const { return norm2(kappa_); }

bool CurvatureVector::two_convex() const {
  for (std::size_t i = 0; i < kappa_.size(); ++i)
    for (std::size_t j = i + 1; j < kappa_.size(); ++j)
      if (!(kappa_[i] + kappa_[j] > 0.0)) return false;
  return true;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& Speed::builtin_names() {
  static const std::vector<std::string> names{"mean", "two-harmonic-mean", "sqrt-scalar",
                                              "scalar-to-mean"};
  return names;
}

bool Speed::is_builtin_name(std::string_view name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Speed Speed::make(std::string_view name, int n) {
  if (n < 1) throw InvalidSpeedError("dimension must be >= 1");
  Speed s;
  s.name_ = std::string(name);
  s.n_ = n;
  if (name == "mean") {
    s.kind_ = SpeedKind::Mean;
    s.cone_ = Cone::MeanConvex;
  } else if (name == "two-harmonic-mean") {
    if (n < 2) throw InvalidSpeedError("two-harmonic-mean needs n >= 2");
    s.kind_ = SpeedKind::TwoHarmonicMean;
    s.cone_ = Cone::TwoConvex;
  } else if (name == "sqrt-scalar" || name == "scalar-to-mean") {
    if (n != 3) throw InvalidSpeedError(std::string(name) + " is defined for n = 3 only");
    s.kind_ = name == "sqrt-scalar" ? SpeedKind::SqrtScalar : SpeedKind::ScalarToMean;
    s.cone_ = Cone::Garding2;
  } else {
    throw InvalidSpeedError("unknown speed '" + std::string(name) + "'");
  }
  return s;
}

Speed Speed::custom(std::string name, int n, Cone cone, SpeedValueFn value,
                    SpeedGradientFn gradient, int homogeneity_degree) {
  if (n < 1) throw InvalidSpeedError("dimension must be >= 1");
  if (!value) throw InvalidSpeedError("custom speed needs a value function");
  Speed s;
  s.name_ = std::move(name);
  s.kind_ = SpeedKind::Custom;
  s.n_ = n;
  s.cone_ = cone;
  s.degree_ = homogeneity_degree;
  s.value_ = std::move(value);
  s.gradient_ = std::move(gradient);
  return s;
}

Speed Speed::with_scale(double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidSpeedError("speed scale must be positive and finite");
  Speed s = *this;
  s.scale_ = scale;
  return s;
}

double Speed::raw_value(std::span<const double> k) const {
  double f = 0.0;
  switch (kind_) {
    case SpeedKind::Mean: f = std::accumulate(k.begin(), k.end(), 0.0); break;
    case SpeedKind::TwoHarmonicMean: f = two_harmonic_value(k); break;
    case SpeedKind::SqrtScalar: f = std::sqrt(2.0 * std::max(0.0, sigmas(k).s2)); break;
    case SpeedKind::ScalarToMean: {
      const Sigmas s = sigmas(k);
      f = 2.0 * s.s2 / s.s1;
      break;
    }
    case SpeedKind::Custom: f = value_(k); break;
  }
  return scale_ * f;
}

void Speed::raw_gradient(std::span<const double> k, std::span<double> out) const {
  const std::size_t n = k.size();
  switch (kind_) {
    case SpeedKind::Mean:
      std::fill(out.begin(), out.end(), scale_);
      return;
    case SpeedKind::TwoHarmonicMean: {
      const double f = two_harmonic_value(k);
      for (std::size_t a = 0; a < n; ++a) {
        double g = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != a) g += 1.0 / ((k[a] + k[j]) * (k[a] + k[j]));
        out[a] = scale_ * f * f * g;
      }
      return;
    }
    case SpeedKind::SqrtScalar: {
      const Sigmas s = sigmas(k);
      const double f = std::sqrt(2.0 * s.s2);
      for (std::size_t a = 0; a < n; ++a) out[a] = scale_ * (s.s1 - k[a]) / f;
      return;
    }
    case SpeedKind::ScalarToMean: {
      const Sigmas s = sigmas(k);
      for (std::size_t a = 0; a < n; ++a)
        out[a] = scale_ * (2.0 * (s.s1 - k[a]) / s.s1 - 2.0 * s.s2 / (s.s1 * s.s1));
      return;
    }
    case SpeedKind::Custom:
      if (gradient_) {
        gradient_(k, out);
        for (double& g : out) g *= scale_;
      } else {
        const auto g = fd_gradient(*this, k);
        std::copy(g.begin(), g.end(), out.begin());
      }
      return;
  }
}

Eigen::MatrixXd Speed::raw_hessian(std::span<const double> k) const {
  const int n = static_cast<int>(k.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  switch (kind_) {
    case SpeedKind::Mean:
      return h;
    case SpeedKind::TwoHarmonicMean: {
      const double f = two_harmonic_value(k);
      Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
      for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
          if (j != a) g[a] += std::pow(k[a] + k[j], -2);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double dg = 0.0;
          if (a == b) {
            for (int j = 0; j < n; ++j)
              if (j != a) dg -= 2.0 * std::pow(k[a] + k[j], -3);
          } else {
            dg = -2.0 * std::pow(k[a] + k[b], -3);
          }
          h(a, b) = 2.0 * f * f * f * g[a] * g[b] + f * f * dg;
        }
      return scale_ * h;
    }
    case SpeedKind::SqrtScalar: {
      const Sigmas s = sigmas(k);
      const double f = std::sqrt(2.0 * s.s2);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          h(a, b) = (a == b ? 0.0 : 1.0) / f - (s.s1 - k[a]) * (s.s1 - k[b]) / (f * f * f);
      return scale_ * h;
    }
    case SpeedKind::ScalarToMean: {
      const Sigmas s = sigmas(k);
      const double s1sq = s.s1 * s.s1;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          h(a, b) = 2.0 * (a == b ? 0.0 : 1.0) / s.s1 - 2.0 * (s.s1 - k[a]) / s1sq -
                    2.0 * (s.s1 - k[b]) / s1sq + 4.0 * s.s2 / (s1sq * s.s1);
      return scale_ * h;
    }
    case SpeedKind::Custom:
      return fd_hessian(*this, k);
  }
  return h;
}

// ---------------------------------------------------------------------------

double fd_step(std::span<const double> kappa) { return 1e-5 * std::max(norm2(kappa), 1.0); }

std::vector<double> fd_gradient(const Speed& speed, std::span<const double> kappa) {
  const double h = fd_step(kappa);
  std::vector<double> probe(kappa.begin(), kappa.end());
  std::vector<double> grad(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    probe[i] = kappa[i] + h;
    if (!in_cone(speed.cone(), probe, true))
      throw BoundaryProximityError("difference stencil leaves the cone near the boundary");
    const double fp = speed.raw_value(probe);
    probe[i] = kappa[i] - h;
    if (!in_cone(speed.cone(), probe, true))
      throw BoundaryProximityError("difference stencil leaves the cone near the boundary");
    const double fm = speed.raw_value(probe);
    probe[i] = kappa[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

namespace {

// Fourth-order central differences of a vector field, symmetrized.
template <typename Grad>
Eigen::MatrixXd difference_jacobian(std::span<const double> x, double h, Grad&& grad) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd jac(n, n);
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> gp(x.size()), gm(x.size());
  auto central = [&](int i, double step, Eigen::VectorXd& col) {
    probe[i] = x[i] + step;
    grad(std::span<const double>(probe), std::span<double>(gp));
    probe[i] = x[i] - step;
    grad(std::span<const double>(probe), std::span<double>(gm));
    probe[i] = x[i];
    for (int j = 0; j < n; ++j) col[j] = (gp[j] - gm[j]) / (2.0 * step);
  };
  Eigen::VectorXd coarse(n), fine(n);
  for (int i = 0; i < n; ++i) {
    central(i, h, coarse);
    central(i, 0.5 * h, fine);
    jac.col(i) = (4.0 * fine - coarse) / 3.0;
  }
  return 0.5 * (jac + jac.transpose());
}

}  // namespace

Eigen::MatrixXd fd_hessian(const Speed& speed, std::span<const double> kappa) {
  const double h = fd_step(kappa);
  std::vector<double> probe(kappa.begin(), kappa.end());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    for (double sgn : {-1.0, 1.0}) {
      probe[i] = kappa[i] + sgn * h;
      if (!in_cone(speed.cone(), probe, false))
        throw BoundaryProximityError("difference stencil leaves the cone near the boundary");
    }
    probe[i] = kappa[i];
  }
  return difference_jacobian(kappa, h, [&](std::span<const double> p, std::span<double> out) {
    speed.raw_gradient(p, out);
  });
}

double eval_speed(const Speed& speed, const CurvatureVector& kappa) {
  if (kappa.dim() != speed.dim())
    throw DomainError("curvature vector has dimension " + std::to_string(kappa.dim()) +
                      ", speed expects " + std::to_string(speed.dim()));
  if (auto v = cone_violation(speed.cone(), kappa.values()))
    throw DomainError(speed.name() + ": outside " + std::string(cone_name(speed.cone())) +
                      " cone: " + *v);
  return speed.raw_value(kappa.values());
}

std::vector<double> grad_speed(const Speed& speed, const CurvatureVector& kappa) {
  eval_speed(speed, kappa);
  std::vector<double> g(static_cast<std::size_t>(kappa.dim()));
  speed.raw_gradient(kappa.values(), g);
  return g;
}

Eigen::MatrixXd hess_speed(const Speed& speed, const CurvatureVector& kappa) {
  eval_speed(speed, kappa);
  return speed.raw_hessian(kappa.values());
}

// ---------------------------------------------------------------------------

namespace {

struct AdmissibilityShard {
  double sym = 0.0, mono = 0.0, hom = 0.0, min_grad = 1e300;
  bool all_positive = true;
  int used = 0;
};

}  // namespace

AdmissibilityReport check_admissible(const Speed& speed, int sample_count, std::uint64_t seed,
                                     double tolerance) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  const int n = speed.dim();
  auto shards = sharded_map<AdmissibilityShard>(
      static_cast<std::size_t>(sample_count), seed, [&](Rng& rng, std::size_t count) {
        AdmissibilityShard acc;
        std::uniform_real_distribution<double> log_lambda(std::log(0.1), std::log(10.0));
        std::vector<double> grad(static_cast<std::size_t>(n));
        for (std::size_t s = 0; s < count; ++s) {
          auto k = sample_cone_point(rng, speed.cone(), n);
          const double f = speed.raw_value(k);
          if (!(std::abs(f) > 0.0) || !std::isfinite(f)) continue;
          try {
            speed.raw_gradient(k, grad);
          } catch (const BoundaryProximityError&) {
            continue;
          }
          auto perm = k;
          std::shuffle(perm.begin(), perm.end(), rng);
          acc.sym = std::max(acc.sym, std::abs(speed.raw_value(perm) - f) / std::abs(f));

          const double gmin = *std::min_element(grad.begin(), grad.end());
          const double rel = gmin * norm2(k) / std::abs(f);
          acc.min_grad = std::min(acc.min_grad, rel);
          acc.mono = std::max(acc.mono, std::max(0.0, -rel));
          if (!(gmin > 0.0)) acc.all_positive = false;

          const double lambda = std::exp(log_lambda(rng));
          auto scaled = k;
          for (double& x : scaled) x *= lambda;
          acc.hom = std::max(acc.hom,
                             std::abs(speed.raw_value(scaled) - lambda * f) / std::abs(lambda * f));
          ++acc.used;
        }
        return acc;
      });

  AdmissibilityReport r;
  r.tolerance = tolerance;
  r.min_gradient = 1e300;
  bool all_positive = true;
  for (const auto& s : shards) {
    r.symmetry_violation = std::max(r.symmetry_violation, s.sym);
    r.monotone_violation = std::max(r.monotone_violation, s.mono);
    r.homogeneity_violation = std::max(r.homogeneity_violation, s.hom);
    r.min_gradient = std::min(r.min_gradient, s.min_grad);
    all_positive = all_positive && s.all_positive;
    r.samples_used += s.used;
  }
  r.worst_violation =
      std::max({r.symmetry_violation, r.monotone_violation, r.homogeneity_violation});
  r.symmetry_ok = r.symmetry_violation <= tolerance;
  r.monotone_ok = r.monotone_violation <= tolerance && all_positive;
  r.homogeneous_ok = r.homogeneity_violation <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> face_point(const Speed& speed, std::span<const double> y) {
  if (static_cast<int>(y.size()) != speed.dim() - 1)
    throw DomainError("dual speed expects n - 1 = " + std::to_string(speed.dim() - 1) +
                      " arguments");
  std::vector<double> z(y.size() + 1, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !std::isfinite(y[i]))
      throw DomainError("dual speed arguments must be positive and finite");
    z[i + 1] = 1.0 / y[i];
  }
  if (auto v = cone_violation(speed.cone(), z, true))
    throw DomainError(speed.name() + ": face point leaves the cone: " + *v);
  return z;
}

}  // namespace

double dual_speed_eval(const Speed& speed, std::span<const double> y) {
  const auto z = face_point(speed, y);
  const double f = speed.raw_value(z);
  if (!(f > 0.0)) throw DomainError(speed.name() + ": speed vanishes on the face point");
  return 1.0 / f;
}

std::vector<double> dual_speed_gradient(const Speed& speed, std::span<const double> y) {
  const auto z = face_point(speed, y);
  const double f = speed.raw_value(z);
  if (!(f > 0.0)) throw DomainError(speed.name() + ": speed vanishes on the face point");
  std::vector<double> g(z.size());
  speed.raw_gradient(z, g);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = g[i + 1] * z[i + 1] * z[i + 1] / (f * f);
  return out;
}

Eigen::MatrixXd dual_speed_hessian(const Speed& speed, std::span<const double> y) {
  const auto z = face_point(speed, y);
  const double f = speed.raw_value(z);
  if (!(f > 0.0)) throw DomainError(speed.name() + ": speed vanishes on the face point");
  std::vector<double> g(z.size());
  speed.raw_gradient(z, g);
  const Eigen::MatrixXd fh = speed.raw_hessian(z);
  const int m = static_cast<int>(y.size());
  Eigen::MatrixXd out(m, m);
  // Chain rule through z_i = 1 / y_i, dz_i/dy_i = -z_i^2.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double zi = z[i + 1], zj = z[j + 1];
      out(i, j) = -fh(i + 1, j + 1) * zi * zi * zj * zj / (f * f) +
                  2.0 * g[i + 1] * g[j + 1] * zi * zi * zj * zj / (f * f * f);
      if (i == j) out(i, j) -= 2.0 * g[i + 1] * zi * zi * zi / (f * f);
    }
  return out;
}

std::string_view concavity_mode_name(ConcavityMode mode) {
  switch (mode) {
    case ConcavityMode::Convex: return "convex";
    case ConcavityMode::Concave: return "concave";
    case ConcavityMode::DualConcave: return "dual_concave";
  }
  return "unknown";
}

Eigen::VectorXd tangential_hessian_eigenvalues(const Speed& speed, std::span<const double> point,
                                               bool dual) {
  const int m = static_cast<int>(point.size());
  const double h = fd_step(point);
  Eigen::MatrixXd hess;
  if (dual && speed.has_closed_form_hessian()) {
    // The chain rule carries factors z_i^4 / f^2 with z = 1/y, so rounding
    // grows like eps (|y| / min y)^2; points that close to the boundary are
    // treated like stencils that leave the cone.
    double norm = 0.0, lo = std::numeric_limits<double>::infinity();
    for (double p : point) {
      norm += p * p;
      lo = std::min(lo, p);
    }
    if (!(lo >= 1e-3 * std::sqrt(norm)))
      throw BoundaryProximityError("dual point too close to the boundary of the positive cone");
    hess = dual_speed_hessian(speed, point);
  } else if (dual) {
    for (double p : point)
      if (!(p - 0.5 * h > 0.0 && p > h))
        throw BoundaryProximityError("dual stencil leaves the positive cone");
    hess = difference_jacobian(point, h, [&](std::span<const double> p, std::span<double> out) {
      const auto g = dual_speed_gradient(speed, p);
      std::copy(g.begin(), g.end(), out.begin());
    });
  } else {
    std::vector<double> probe(point.begin(), point.end());
    for (int i = 0; i < m; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        probe[i] = point[i] + sgn * h;
        if (!in_cone(speed.cone(), probe))
          throw BoundaryProximityError("difference stencil leaves the cone near the boundary");
      }
      probe[i] = point[i];
    }
    hess = difference_jacobian(point, h, [&](std::span<const double> p, std::span<double> out) {
      speed.raw_gradient(p, out);
    });
  }
  if (m < 2) return Eigen::VectorXd(0);
  Eigen::VectorXd radial = Eigen::Map<const Eigen::VectorXd>(point.data(), m).normalized();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(radial);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd tangent = q.rightCols(m - 1);
  const Eigen::MatrixXd restricted = tangent.transpose() * hess * tangent;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (restricted + restricted.transpose()),
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

namespace {

struct ConcavityShard {
  double extremal = 0.0;
  bool have = false;
  std::vector<double> point;
  int used = 0;
};

}  // namespace

ConcavityReport check_concavity(const Speed& speed, ConcavityMode mode, int sample_count,
                                std::uint64_t seed) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  const bool dual = mode == ConcavityMode::DualConcave;
  const bool want_max = mode != ConcavityMode::Convex;
  const int n = speed.dim();
  const int m = dual ? n - 1 : n;
  if (m < 1) throw DomainError("dual concavity needs n >= 2");

  // Tolerance is relative to the speed's size on the unit slice.
  std::vector<double> diag(static_cast<std::size_t>(m), 1.0 / std::sqrt(double(m)));
  const double reference =
      dual ? dual_speed_eval(speed, diag) : std::abs(speed.raw_value(diag));
  const double tolerance = 1e-8 * reference;

  auto shards = sharded_map<ConcavityShard>(
      static_cast<std::size_t>(sample_count), seed, [&](Rng& rng, std::size_t count) {
        ConcavityShard acc;
        std::size_t attempts = 0;
        while (static_cast<std::size_t>(acc.used) < count && attempts < 100 * count + 100) {
          ++attempts;
          auto p = sample_cone_direction(rng, dual ? Cone::Positive : speed.cone(), m);
          Eigen::VectorXd ev;
          try {
            ev = tangential_hessian_eigenvalues(speed, p, dual);
          } catch (const DomainError&) {
            continue;
          }
          ++acc.used;
          if (ev.size() == 0) continue;
          const double e = want_max ? ev.maxCoeff() : ev.minCoeff();
          if (!acc.have || (want_max ? e > acc.extremal : e < acc.extremal)) {
            acc.extremal = e;
            acc.point = p;
            acc.have = true;
          }
        }
        return acc;
      });

  ConcavityReport r;
  r.mode = mode;
  r.tolerance = tolerance;
  bool have = false;
  for (const auto& s : shards) {
    r.samples_used += s.used;
    if (!s.have) continue;
    if (!have || (want_max ? s.extremal > r.extremal_eigenvalue : s.extremal < r.extremal_eigenvalue)) {
      r.extremal_eigenvalue = s.extremal;
      r.extremal_point = s.point;
      have = true;
    }
  }
  r.passed = want_max ? r.extremal_eigenvalue <= tolerance : r.extremal_eigenvalue >= -tolerance;
  return r;
}

// ---------------------------------------------------------------------------

double beta1(const Speed& speed) {
  std::vector<double> cyl(static_cast<std::size_t>(speed.dim()), 1.0);
  cyl[0] = 0.0;
  if (auto v = cone_violation(speed.cone(), cyl, true))
    throw InvalidSpeedError(speed.name() + ": cylinder point (0,1,...,1) leaves the cone: " + *v);
  return speed.with_scale(1.0).raw_value(cyl);
}

CylinderNormalization cylinder_value_and_normalize(const Speed& speed) {
  const double b1 = beta1(speed);
  if (!(b1 > 0.0))
    throw InvalidSpeedError(speed.name() + ": cylinder value f(0,1,...,1) must be positive");
  return {b1, speed.with_scale((speed.dim() - 1) / b1)};
}

}  // namespace translab
