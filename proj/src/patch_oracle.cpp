#include "translab/patch_oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "translab/errors.hpp"

namespace translab {

namespace {

// Central stencils for derivative orders 0..3, as (offset, weight) pairs on a unit grid.
const std::vector<std::pair<int, double>>& stencil(int order) {
  static const std::array<std::vector<std::pair<int, double>>, 4> table{{
      {{0, 1.0}},
      {{-1, -0.5}, {1, 0.5}},
      {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
      {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
  }};
  return table[static_cast<std::size_t>(order)];
}

struct Derivatives {
  std::vector<Eigen::VectorXd> d1;  // [i]
  std::vector<Eigen::VectorXd> d2;  // [i * n + j]
  std::vector<Eigen::VectorXd> d3;  // [(i * n + j) * n + k]
};

class GridSampler {
 public:
  GridSampler(const PatchMap& patch, int n, double delta) : patch_(patch), n_(n), delta_(delta) {}

  // Mixed partial along the multi-index given by per-axis orders.
  Eigen::VectorXd partial(const std::vector<int>& orders) {
    int total = 0;
    for (int o : orders) total += o;
    std::vector<int> offset(static_cast<std::size_t>(n_), 0);
    Eigen::VectorXd acc;
    accumulate(orders, 0, 1.0, offset, acc);
    return acc / std::pow(delta_, total);
  }

 private:
  void accumulate(const std::vector<int>& orders, int axis, double weight, std::vector<int>& offset,
                  Eigen::VectorXd& acc) {
    if (axis == n_) {
      const Eigen::VectorXd& v = value(offset);
      if (acc.size() == 0) acc = Eigen::VectorXd::Zero(v.size());
      acc += weight * v;
      return;
    }
    for (const auto& [o, w] : stencil(orders[axis])) {
      offset[axis] = o;
      accumulate(orders, axis + 1, weight * w, offset, acc);
    }
    offset[axis] = 0;
  }

  const Eigen::VectorXd& value(const std::vector<int>& offset) {
    auto it = cache_.find(offset);
    if (it != cache_.end()) return it->second;
    Eigen::VectorXd d(n_);
    for (int i = 0; i < n_; ++i) d[i] = delta_ * offset[i];
    return cache_.emplace(offset, patch_(d)).first->second;
  }

  const PatchMap& patch_;
  int n_;
  double delta_;
  std::map<std::vector<int>, Eigen::VectorXd> cache_;
};

Derivatives differentiate(const PatchMap& patch, int n, double delta) {
  GridSampler grid(patch, n, delta);
  Derivatives d;
  d.d1.resize(n);
  d.d2.resize(n * n);
  d.d3.resize(n * n * n);
  std::vector<int> orders(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    orders.assign(n, 0);
    ++orders[i];
    d.d1[i] = grid.partial(orders);
    for (int j = 0; j <= i; ++j) {
      ++orders[j];
      d.d2[i * n + j] = d.d2[j * n + i] = grid.partial(orders);
      for (int k = 0; k <= j; ++k) {
        ++orders[k];
        const Eigen::VectorXd v = grid.partial(orders);
        for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
          d.d3[(a * n + b) * n + c] = v;
        --orders[k];
      }
      --orders[j];
    }
  }
  return d;
}

Derivatives extrapolate(const Derivatives& coarse, const Derivatives& fine) {
  Derivatives out = fine;
  auto mix = [](std::vector<Eigen::VectorXd>& o, const std::vector<Eigen::VectorXd>& c) {
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = (4.0 * o[i] - c[i]) / 3.0;
  };
  mix(out.d1, coarse.d1);
  mix(out.d2, coarse.d2);
  mix(out.d3, coarse.d3);
  return out;
}

}  // namespace

PatchGeometry patch_geometry(const PatchMap& patch, int n, double delta) {
  if (n < 1) throw DomainError("patch dimension must be >= 1");
  if (!(delta > 0.0)) throw DomainError("patch step must be positive");
  const Derivatives d = extrapolate(differentiate(patch, n, delta), differentiate(patch, n, 0.5 * delta));
  const int m = static_cast<int>(d.d1[0].size());
  if (m != n + 1) throw DomainError("patch map must take values in R^{n+1}");

  Eigen::MatrixXd jac(m, n);
  for (int i = 0; i < n; ++i) jac.col(i) = d.d1[i];
  const Eigen::MatrixXd g = jac.transpose() * jac;
  const Eigen::MatrixXd ginv = g.inverse();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(jac);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd nu = q.col(n);

  auto idx2 = [n](int i, int j) { return i * n + j; };
  auto idx3 = [n](int i, int j, int k) { return (i * n + j) * n + k; };

  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = d.d2[idx2(i, j)].dot(nu);

  // dg[k](i, j) = d_k g_ij
  std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dg[k](i, j) = d.d2[idx2(i, k)].dot(d.d1[j]) + d.d1[i].dot(d.d2[idx2(j, k)]);

  // gamma[l](k, i) = Gamma^l_{ki}
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int mm = 0; mm < n; ++mm)
          s += ginv(l, mm) * (dg[k](mm, i) + dg[i](mm, k) - dg[mm](k, i));
        gamma[l](k, i) = 0.5 * s;
      }

  // Weingarten: d_k nu = -h_kl g^{lm} X_m.
  const Eigen::MatrixXd shape = h * ginv;
  std::vector<Eigen::VectorXd> dnu(n);
  for (int k = 0; k < n; ++k) {
    dnu[k] = Eigen::VectorXd::Zero(m);
    for (int mm = 0; mm < n; ++mm) dnu[k] -= shape(k, mm) * d.d1[mm];
  }

  std::vector<double> nabla_h(static_cast<std::size_t>(n * n * n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = d.d3[idx3(i, j, k)].dot(nu) + d.d2[idx2(i, j)].dot(dnu[k]);
        for (int l = 0; l < n; ++l) v -= gamma[l](k, i) * h(l, j) + gamma[l](k, j) * h(i, l);
        nabla_h[idx3(k, i, j)] = v;
      }

  // Raise all indices and contract.
  std::vector<double> raised(nabla_h.size(), 0.0);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double v = 0.0;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              v += ginv(c, k) * ginv(a, i) * ginv(b, j) * nabla_h[idx3(k, i, j)];
        raised[idx3(c, a, b)] = v;
      }

  PatchGeometry out;
  for (std::size_t t = 0; t < raised.size(); ++t) out.grad_a_sq += raised[t] * nabla_h[t];
  const Eigen::MatrixXd hup = ginv * h * ginv;
  out.a_sq = (hup.array() * h.array()).sum();
  out.mean_curvature = (ginv.array() * h.array()).sum();
  return out;
}

namespace {

double slope_rate(const Profile& p, double r, double ur) {
  const Curvatures k = profile_curvatures(p.speed(), p.dim(), r, ur, p.kappa0());
  const double w2 = 1.0 + ur * ur;
  return k.kappa_rad * w2 * std::sqrt(w2);
}

// Height along the profile ODE from a fixed start radius below the patch.
// The slope equation stiffens far out (d u_rr / d u_r ~ -u_r^2 / r), so it is
// only integrated outward, where perturbations decay, with a step count set
// by the local stiffness. For a fixed count the result is smooth in rho.
class HeightChart {
 public:
  HeightChart(const Profile& p, double r_start, double r_end) : p_(p), r_start_(r_start) {
    const ProfilePoint start = geometry_at(p, r_start);
    u_r_start_ = start.u_r;
    const double bump = 1e-6 * start.u_r;
    const double lambda = (slope_rate(p, r_start, start.u_r + bump) -
                           slope_rate(p, r_start, start.u_r - bump)) /
                          (2.0 * bump);
    const double far = geometry_at(p, r_end).u_r;
    const double lambda_far =
        (slope_rate(p, r_end, far * (1 + 1e-6)) - slope_rate(p, r_end, far * (1 - 1e-6))) /
        (2e-6 * far);
    const double stiff = std::max(std::abs(lambda), std::abs(lambda_far));
    steps_ = std::max(16, static_cast<int>(std::ceil(stiff * (r_end - r_start) / 0.05)));
  }

  double height(double rho) const {
    const double step = (rho - r_start_) / steps_;
    double r = r_start_, u = 0.0, ur = u_r_start_;
    for (int i = 0; i < steps_; ++i) {
      const double k1u = ur, k1v = slope_rate(p_, r, ur);
      const double k2u = ur + 0.5 * step * k1v, k2v = slope_rate(p_, r + 0.5 * step, k2u);
      const double k3u = ur + 0.5 * step * k2v, k3v = slope_rate(p_, r + 0.5 * step, k3u);
      const double k4u = ur + step * k3v, k4v = slope_rate(p_, r + step, k4u);
      u += step / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      ur += step / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
      r = r_start_ + (i + 1) * step;
    }
    return u;
  }

 private:
  const Profile& p_;
  double r_start_;
  double u_r_start_ = 0.0;
  int steps_ = 16;
};

}  // namespace

PatchGeometry profile_patch_geometry(const Profile& p, double r0) {
  const int n = p.dim();
  const ProfilePoint base = geometry_at(p, r0);
  const double curvature = std::max(std::abs(base.kappa_rad), std::abs(base.kappa_sph));
  const double delta = std::min(3e-3 / curvature, 0.1 * r0);
  const double extent = 2.0 * delta * std::sqrt(double(n));
  const double r_start = r0 - 1.5 * extent;
  const double r_end = r0 + 1.5 * extent;
  if (r0 < 10.0 * p.eps() || r_start <= p.r.front() || r_end >= p.r_max())
    throw DomainError("patch at r = " + std::to_string(r0) + " does not fit inside the profile");
  const HeightChart chart(p, r_start, r_end);
  const double u0 = chart.height(r0);
  PatchMap patch = [&](const Eigen::VectorXd& d) {
    double tail = 0.0;
    for (int j = 1; j < n; ++j) tail += d[j] * d[j];
    const double rho = std::sqrt((r0 + d[0]) * (r0 + d[0]) + tail);
    // rho - r0 without cancellation.
    const double dr = (2.0 * r0 * d[0] + d[0] * d[0] + tail) / (rho + r0);
    Eigen::VectorXd x(n + 1);
    x.head(n) = d;
    x[n] = chart.height(r0 + dr) - u0;
    return x;
  };
  return patch_geometry(patch, n, delta);
}

double grad_a_norm_oracle(const Profile& p, double r) { return profile_patch_geometry(p, r).grad_a_sq; }

}  // namespace translab
