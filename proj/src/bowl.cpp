#include "translab/bowl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "translab/errors.hpp"
#include "translab/finite_difference.hpp"

namespace translab {

double tip_curvature(const Speed& speed, int n) {
  if (n != speed.dim())
    throw DomainError("dimension " + std::to_string(n) + " does not match the speed");
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  if (auto v = cone_violation(speed.cone(), ones))
    throw DomainError(speed.name() + ": umbilic point leaves the cone: " + *v);
  return 1.0 / speed.raw_value(ones);
}

Profile::Profile(Speed speed, int n, double tol, SolveOptions options)
    : speed_(std::move(speed)), n_(n), tol_(tol), options_(options) {}

// ---------------------------------------------------------------------------

Curvatures profile_curvatures(const Speed& speed, int n, double r, double u_r, double kappa0) {
  const double w = std::sqrt(1.0 + u_r * u_r);
  const double target = 1.0 / w;
  Curvatures k;
  k.kappa_sph = n > 1 ? u_r / (r * w) : 0.0;

  std::vector<double> kappa(static_cast<std::size_t>(n), k.kappa_sph);
  std::vector<double> grad(static_cast<std::size_t>(n));
  auto residual = [&](double x) {
    kappa[0] = x;
    return speed.raw_value(kappa) - target;
  };
  auto admissible = [&](double x) {
    kappa[0] = x;
    return in_cone(speed.cone(), kappa, true);
  };

  double lo = 0.0;
  double g_lo = admissible(lo) ? residual(lo) : 1.0;
  for (int k2 = 1; !(g_lo < 0.0); ++k2) {
    if (k2 > 60 || n == 1)
      throw SolverError("no admissible radial curvature below the target speed", r);
    lo = -k.kappa_sph * (1.0 - std::ldexp(1.0, -k2));
    if (admissible(lo)) g_lo = residual(lo);
  }
  double hi = 10.0 * kappa0 * (1.0 + u_r * u_r);
  double g_hi = residual(hi);
  for (int doubling = 0; g_hi <= 0.0; ++doubling) {
    if (doubling >= 20) throw SolverError("could not bracket the radial curvature", r);
    hi *= 2.0;
    g_hi = residual(hi);
  }

  double x = std::clamp(k.kappa_sph > 0.0 ? k.kappa_sph : 0.5 * (lo + hi), lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double g = residual(x);
    if (g == 0.0) break;
    if (g < 0.0) lo = x;
    else hi = x;
    if (std::abs(g) <= 2e-16 * target || hi - lo <= 4e-16 * std::max(std::abs(x), 1e-300)) break;
    kappa[0] = x;
    speed.raw_gradient(kappa, grad);
    double next = grad[0] > 0.0 ? x - g / grad[0] : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  k.kappa_rad = x;
  return k;
}

CurvatureRates curvature_rates(const Speed& speed, int n, double r, double u_r,
                               const Curvatures& k) {
  const double w = std::sqrt(1.0 + u_r * u_r);
  std::vector<double> kappa(static_cast<std::size_t>(n), k.kappa_sph);
  kappa[0] = k.kappa_rad;
  std::vector<double> grad(static_cast<std::size_t>(n));
  speed.raw_gradient(kappa, grad);
  double tangential = 0.0;
  for (int i = 1; i < n; ++i) tangential += grad[i];
  const double sph_r = n > 1 ? (k.kappa_rad - k.kappa_sph) / r : 0.0;
  const double rad_r = (-u_r * k.kappa_rad - tangential * sph_r) / grad[0];
  return {rad_r / w, sph_r / w};
}

double grad_a_sq_closed_form(int n, const CurvatureRates& rates) {
  return rates.kappa_rad_s * rates.kappa_rad_s +
         3.0 * (n - 1) * rates.kappa_sph_s * rates.kappa_sph_s;
}

namespace {

using State = std::array<double, 3>;  // u, u_r, s

struct Rhs {
  const Speed& speed;
  int n;
  double kappa0;

  State operator()(double r, const State& y, Curvatures* k_out = nullptr) const {
    const Curvatures k = profile_curvatures(speed, n, r, y[1], kappa0);
    if (k_out) *k_out = k;
    const double w2 = 1.0 + y[1] * y[1];
    return {y[1], k.kappa_rad * w2 * std::sqrt(w2), std::sqrt(w2)};
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

State combine(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms)
    for (int i = 0; i < 3; ++i) out[i] += h * c * (*k)[i];
  return out;
}

}  // namespace

Profile solve_profile(const Speed& speed, int n, double h_max, double tol,
                      const SolveOptions& options) {
  if (!(h_max > 0.0)) throw DomainError("h_max must be positive");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (!(options.eps > 0.0) || !(options.min_step > 0.0) ||
      !(options.max_step >= options.min_step) || !(options.resolution > 0.0))
    throw DomainError("invalid solver options");
  const double kappa0 = tip_curvature(speed, n);

  Profile p(speed, n, tol, options);
  p.kappa0_ = kappa0;
  const Rhs rhs{speed, n, kappa0};

  // Series at the umbilic tip: u_r = k0 r + k0^3 r^3 / (n + 2) + O(r^5).
  double r = options.eps;
  const double b = kappa0 * kappa0 * kappa0 / (n + 2);
  State y{0.5 * kappa0 * r * r + 0.25 * b * r * r * r * r, kappa0 * r + b * r * r * r, 0.0};
  auto push_node = [&](double rr, const State& yy, const Curvatures& k, double u_rr) {
    std::vector<double> kappa(static_cast<std::size_t>(n), k.kappa_sph);
    kappa[0] = k.kappa_rad;
    const double f = speed.raw_value(kappa);
    p.r.push_back(rr);
    p.u.push_back(yy[0]);
    p.u_r.push_back(yy[1]);
    p.s.push_back(yy[2]);
    p.kappa_rad.push_back(k.kappa_rad);
    p.kappa_sph.push_back(k.kappa_sph);
    p.F.push_back(f);
    p.u_rr.push_back(u_rr);
    p.residual_max_ = std::max(p.residual_max_, std::abs(f - 1.0 / std::sqrt(1.0 + yy[1] * yy[1])));
  };

  Curvatures k_now;
  State k1 = rhs(r, y, &k_now);
  push_node(r, y, k_now, k1[1]);

  auto step_cap = [&](const Curvatures& k) {
    const double curv = std::max(std::abs(k.kappa_rad), std::abs(k.kappa_sph));
    return std::max(options.min_step,
                    std::min(options.max_step, curv > 0.0 ? options.resolution / curv : options.max_step));
  };
  double h = std::min(step_cap(k_now), options.eps);

  // Mostly relative control: u, u_r and s are all O(r) or smaller near the tip.
  const double atol_floor = options.eps * options.eps;
  constexpr std::size_t kMaxSteps = 50'000'000;
  while (y[0] < h_max) {
    if (p.r.size() > kMaxSteps) throw StiffnessError("step budget exhausted", r);
    State y_new, k7;
    Curvatures k_new;
    double err_norm = 0.0;
    bool ok = true;
    try {
      const State k2 = rhs(r + c2 * h, combine(y, h, {{a21, &k1}}));
      const State k3 = rhs(r + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
      const State k4 = rhs(r + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 =
          rhs(r + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State k6 = rhs(
          r + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      y_new = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      k7 = rhs(r + h, y_new, &k_new);
      for (int i = 0; i < 3; ++i) {
        const double err =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = tol * (atol_floor + std::max(std::abs(y[i]), std::abs(y_new[i])));
        err_norm = std::max(err_norm, std::abs(err) / scale);
      }
      if (!std::isfinite(err_norm)) ok = false;
    } catch (const SolverError&) {
      ok = false;
    }

    if (!ok || err_norm > 1.0) {
      const double shrink = ok ? std::max(0.2, 0.9 * std::pow(err_norm, -0.2)) : 0.25;
      if (h <= options.min_step)
        throw StiffnessError("step size underflow at r = " + std::to_string(r), r);
      h = std::max(options.min_step, h * shrink);
      continue;
    }

    r += h;
    y = y_new;
    k1 = k7;
    push_node(r, y, k_new, k7[1]);
    if (!(y[1] > 0.0) || !(k_new.kappa_rad > 0.0))
      throw SolverError("profile lost convexity at r = " + std::to_string(r), r);

    const double grow = err_norm > 0.0 ? std::min(5.0, 0.9 * std::pow(err_norm, -0.2)) : 5.0;
    // Steps no longer than r keep the grid geometric near the singular tip.
    h = std::min({h * grow, step_cap(k_new), std::max(r, options.min_step)});
  }
  return p;
}

// ---------------------------------------------------------------------------

ProfilePoint Profile::node(std::size_t i) const {
  ProfilePoint pt;
  pt.r = r[i];
  pt.u = u[i];
  pt.u_r = u_r[i];
  pt.s = s[i];
  pt.kappa_rad = kappa_rad[i];
  pt.kappa_sph = kappa_sph[i];
  pt.F = F[i];
  const Curvatures k{kappa_rad[i], kappa_sph[i]};
  pt.grad_a_sq = grad_a_sq_closed_form(n_, curvature_rates(speed_, n_, r[i], u_r[i], k));
  return pt;
}

std::size_t node_index(const Profile& profile, double r) {
  const auto it = std::upper_bound(profile.r.begin(), profile.r.end(), r);
  if (it == profile.r.begin()) return 0;
  return static_cast<std::size_t>(it - profile.r.begin()) - 1;
}

namespace {

double hermite(double t, double h, double y0, double m0, double y1, double m1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

double hermite_slope(double t, double h, double y0, double m0, double y1, double m1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * y1 +
          (3 * t2 - 2 * t) * h * m1) /
         h;
}

ProfilePoint assemble(const Profile& p, double r, double u, double u_r, double s) {
  ProfilePoint pt;
  pt.r = r;
  pt.u = u;
  pt.u_r = u_r;
  pt.s = s;
  const int n = p.dim();
  const Curvatures k = profile_curvatures(p.speed(), n, r, u_r, p.kappa0());
  pt.kappa_rad = k.kappa_rad;
  pt.kappa_sph = k.kappa_sph;
  std::vector<double> kappa(static_cast<std::size_t>(n), k.kappa_sph);
  kappa[0] = k.kappa_rad;
  pt.F = p.speed().raw_value(kappa);
  pt.grad_a_sq = grad_a_sq_closed_form(n, curvature_rates(p.speed(), n, r, u_r, k));
  return pt;
}

}  // namespace

ProfilePoint geometry_at(const Profile& p, double r) {
  const double lo = p.r.front(), hi = p.r.back();
  if (!(r >= lo * (1 - 1e-14) && r <= hi * (1 + 1e-14)))
    throw DomainError("radius " + std::to_string(r) + " outside the solved range");
  r = std::clamp(r, lo, hi);
  std::size_t i = std::min(node_index(p, r), p.size() - 2);
  const double h = p.r[i + 1] - p.r[i];
  const double t = (r - p.r[i]) / h;
  auto w = [&](std::size_t j) { return std::sqrt(1.0 + p.u_r[j] * p.u_r[j]); };
  const double u = hermite(t, h, p.u[i], p.u_r[i], p.u[i + 1], p.u_r[i + 1]);
  const double ur = hermite(t, h, p.u_r[i], p.u_rr[i], p.u_r[i + 1], p.u_rr[i + 1]);
  const double s = hermite(t, h, p.s[i], w(i), p.s[i + 1], w(i + 1));
  return assemble(p, r, u, ur, s);
}

ProfilePoint point_at_height(const Profile& p, double height) {
  if (!(height >= p.u.front() && height <= p.u.back()))
    throw DomainError("height " + std::to_string(height) + " outside the solved range");
  const auto it = std::upper_bound(p.u.begin(), p.u.end(), height);
  std::size_t i = it == p.u.begin() ? 0 : static_cast<std::size_t>(it - p.u.begin()) - 1;
  i = std::min(i, p.size() - 2);
  const double h = p.r[i + 1] - p.r[i];
  auto u_of = [&](double t) { return hermite(t, h, p.u[i], p.u_r[i], p.u[i + 1], p.u_r[i + 1]); };
  double lo = 0.0, hi = 1.0;
  double t = p.u[i + 1] > p.u[i] ? (height - p.u[i]) / (p.u[i + 1] - p.u[i]) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  for (int iter = 0; iter < 100; ++iter) {
    const double g = u_of(t) - height;
    if (g == 0.0) break;
    if (g < 0.0) lo = t;
    else hi = t;
    if (hi - lo < 1e-16) break;
    const double slope = hermite_slope(t, h, p.u[i], p.u_r[i], p.u[i + 1], p.u_r[i + 1]) * h;
    double next = slope > 0.0 ? t - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-17) {
      t = next;
      break;
    }
    t = next;
  }
  return geometry_at(p, p.r[i] + t * h);
}

GrimReaper grim_reaper_oracle(double x) {
  if (!(std::abs(x) < M_PI / 2)) throw DomainError("Grim Reaper needs |x| < pi/2");
  const double c = std::cos(x);
  return {-std::log(c), std::tan(x), c};
}

CodazziReport codazzi_check(const Profile& p) {
  CodazziReport rep;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const auto w = first_derivative_weights(p.s[i] - p.s[i - 1], p.s[i + 1] - p.s[i]);
    const double fd = apply(w, p.kappa_sph[i - 1], p.kappa_sph[i], p.kappa_sph[i + 1]);
    const double wgt = std::sqrt(1.0 + p.u_r[i] * p.u_r[i]);
    const double closed = (p.kappa_rad[i] - p.kappa_sph[i]) / (wgt * p.r[i]);
    const double scale = std::max(std::abs(p.kappa_rad[i]), std::abs(p.kappa_sph[i]));
    const double res = std::abs(fd - closed) / (scale * scale);
    ++rep.nodes;
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.at_r = p.r[i];
    }
  }
  return rep;
}

std::string profile_csv(const Profile& p) {
  std::string out = "r,u,u_r,s,kappa_rad,kappa_sph,F,grad_a_sq\n";
  char buf[512];
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ProfilePoint pt = p.node(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.r, pt.u,
                  pt.u_r, pt.s, pt.kappa_rad, pt.kappa_sph, pt.F, pt.grad_a_sq);
    out += buf;
  }
  return out;
}

}  // namespace translab
