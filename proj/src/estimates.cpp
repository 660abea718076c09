#include "translab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "translab/errors.hpp"
#include "translab/finite_difference.hpp"

namespace translab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double kappa_min(const ProfilePoint& p) { return std::min(p.kappa_rad, p.kappa_sph); }

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Reference heights for the decade checks.
double reference_height(const Profile& p) { return std::min(1e4, p.h_max()); }

}  // namespace

void EstimateReport::add(std::string name, double value, double bound, bool ok) {
  checks.push_back({std::move(name), value, bound, ok});
}

void EstimateReport::finalize() {
  passed = !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double cylinder_value(const Speed& speed) {
  std::vector<double> cyl(static_cast<std::size_t>(speed.dim()), 1.0);
  cyl[0] = 0.0;
  return speed.raw_value(cyl);
}

double cylindrical_quantity(const ProfilePoint& point, const Speed& speed, CylindricalMode mode) {
  const int n = speed.dim();
  if (n < 2) throw DomainError("cylindrical quantities need n >= 2");
  const double k1 = kappa_min(point);
  const double kn = std::max(point.kappa_rad, point.kappa_sph);
  switch (mode) {
    case CylindricalMode::Mcf: {
      const double a_sq = point.kappa_rad * point.kappa_rad +
                          (n - 1) * point.kappa_sph * point.kappa_sph;
      const double h = point.kappa_rad + (n - 1) * point.kappa_sph;
      return a_sq - h * h / (n - 1);
    }
    case CylindricalMode::Convex: {
      // Second smallest entry of (kappa_rad, kappa_sph, ..., kappa_sph).
      const double k2 = n == 2 ? kn : point.kappa_sph;
      return k1 + k2 - point.F / cylinder_value(speed);
    }
    case CylindricalMode::Concave:
      return kn - point.F / cylinder_value(speed);
  }
  return 0.0;
}

double threshold_height(const std::vector<double>& heights, const std::vector<bool>& ok) {
  if (heights.empty()) return kInf;
  std::size_t k = heights.size();
  while (k > 0 && ok[k - 1]) --k;
  if (k == heights.size()) return kInf;
  return heights[k];
}

std::vector<double> log_heights(double h_lo, double h_hi, int per_decade) {
  std::vector<double> out;
  const double a = std::log10(h_lo), b = std::log10(h_hi);
  const int steps = static_cast<int>(std::floor((b - a) * per_decade + 1e-9));
  for (int i = 0; i <= steps; ++i) out.push_back(std::pow(10.0, a + double(i) / per_decade));
  if (out.back() < h_hi * (1 - 1e-12)) out.push_back(h_hi);
  return out;
}

// ---------------------------------------------------------------------------

EstimateReport gradient_ratio_and_C1(const Profile& p, double h_burn) {
  EstimateReport rep;
  rep.lemma_id = "lemma-3.3";
  double c1 = 0.0;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.u[i] < h_burn) continue;
    const ProfilePoint pt = p.node(i);
    const double k1 = kappa_min(pt);
    if (!(k1 > 0.0)) {
      ++excluded;
      continue;
    }
    c1 = std::max(c1, pt.grad_a_sq / (pt.F * pt.F * pt.F * k1));
  }
  rep.bound_constant = c1;
  const double h_ref = reference_height(p);
  if (h_ref >= h_burn) {
    for (double h : log_heights(h_burn, h_ref, 4)) {
      const ProfilePoint pt = point_at_height(p, h);
      rep.measured.emplace_back(h, pt.grad_a_sq / (pt.F * pt.F * pt.F * kappa_min(pt)));
    }
  }
  rep.add("C1 finite and positive", c1, kInf, std::isfinite(c1) && c1 > 0.0);
  // Tail of the ratio per decade over [1e2, 1e4].
  for (double h = 1e2; h * 10 <= h_ref * (1 + 1e-12); h *= 10) {
    const ProfilePoint a = point_at_height(p, h);
    const ProfilePoint b = point_at_height(p, 10 * h);
    const double ra = a.grad_a_sq / (a.F * a.F * a.F * kappa_min(a));
    const double rb = b.grad_a_sq / (b.F * b.F * b.F * kappa_min(b));
    rep.add(fmt("ratio variation over decade from h = %g", h), std::abs(rb / ra - 1.0), 0.1,
            std::abs(rb / ra - 1.0) < 0.1);
  }
  rep.details = "C1 = sup over nodes with h >= " + fmt("%g", h_burn) + " of |grad A|^2 / (F^3 k1)";
  if (excluded) rep.details += "; " + std::to_string(excluded) + " nodes with k1 <= 0 excluded";
  rep.finalize();
  return rep;
}

EstimateReport lemma_3_1_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "lemma-3.1";
  const int n = p.dim();
  std::size_t increases = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p.F[i] < p.F[i - 1])) ++increases;
  rep.add("nodes where F fails to decrease", double(increases), 0.0, increases == 0);

  std::vector<double> hs;
  std::vector<bool> ok;
  for (std::size_t i = 0; i < p.size(); ++i) {
    hs.push_back(p.u[i]);
    ok.push_back(p.u[i] > 0.0 && p.F[i] <= 2.0 * std::sqrt((n - 1) / (2.0 * p.u[i])));
  }
  const double h0 = threshold_height(hs, ok);
  rep.bound_constant = h0;
  rep.add("h0 for F <= 2 sqrt((n-1)/(2h))", h0, p.h_max() / 10, h0 <= p.h_max() / 10);
  for (double h : log_heights(std::max(1.0, p.u.front()), p.h_max(), 2))
    rep.measured.emplace_back(h, point_at_height(p, h).F);
  const double h_ref = reference_height(p);
  const double f_hi = point_at_height(p, h_ref).F;
  const double f_lo = point_at_height(p, h_ref / 10).F;
  rep.add("F(h_ref) / F(h_ref / 10)", f_hi / f_lo, 1.0, f_hi < f_lo);
  rep.finalize();
  return rep;
}

double lower_bound_h0(const Profile& p, double c1) {
  std::vector<double> hs;
  std::vector<bool> ok;
  for (std::size_t i = 0; i < p.size(); ++i) {
    hs.push_back(p.u[i]);
    ok.push_back(p.F[i] * std::sqrt(4.0 * c1 * p.u[i]) >= 1.0);
  }
  return threshold_height(hs, ok);
}

EstimateReport lemma_3_3_report(const Profile& p, double h_burn) {
  EstimateReport rep = gradient_ratio_and_C1(p, h_burn);
  const double h0 = lower_bound_h0(p, rep.bound_constant);
  rep.add("h0 for F sqrt(4 C1 h) >= 1", h0, p.h_max() / 10, h0 <= p.h_max() / 10);
  rep.tolerance = 0.1;
  rep.details += "; h0 = " + fmt("%.6g", h0);
  rep.finalize();
  return rep;
}

EstimateReport lemma_3_4_report(const Profile& p, double c1, double h0) {
  EstimateReport rep;
  rep.lemma_id = "lemma-3.4";
  rep.bound_constant = c1;
  double worst = kInf;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.u[i] < h0) continue;
    const double bound = std::sqrt(p.u[i] / (16.0 * c1));
    worst = std::min(worst, p.r[i] / bound);
    if (!(p.r[i] >= bound)) ++violations;
  }
  for (double h : log_heights(std::max(1.0, h0), p.h_max(), 2))
    rep.measured.emplace_back(h, point_at_height(p, h).r / std::sqrt(h));
  rep.add("nodes with rho < sqrt(h / (16 C1)) beyond h0", double(violations), 0.0,
          violations == 0 && std::isfinite(h0));
  rep.add("min rho / sqrt(h / (16 C1))", worst, 1.0, worst >= 1.0);
  rep.details = "h0 = " + fmt("%.6g", h0) + " from the lower bound for F";
  rep.finalize();
  return rep;
}

EstimateReport lemma_3_5_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "lemma-3.5";
  const int n = p.dim();
  const auto heights = log_heights(1.0, p.h_max(), 10);
  std::vector<double> min_f(heights.size(), kInf);
  std::size_t misses = 0;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const double h = heights[k];
    const double radius_sq = 2.0 * n * h;
    double dist_sq = kInf;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = p.r[i] * p.r[i] + (p.u[i] - h) * (p.u[i] - h);
      dist_sq = std::min(dist_sq, d);
      if (d <= radius_sq) min_f[k] = std::min(min_f[k], p.F[i]);
    }
    if (!(dist_sq <= radius_sq)) ++misses;
    rep.measured.emplace_back(h, std::sqrt(dist_sq / radius_sq));
  }
  rep.add("sampled heights where the surface misses the ball", double(misses), 0.0, misses == 0);

  // Smallest h0 with min F <= sqrt(h0 / h) at every sampled h >= h0.
  double h0 = kInf;
  double tail_sup = 0.0;
  for (std::size_t k = heights.size(); k-- > 0;) {
    tail_sup = std::max(tail_sup, min_f[k] * min_f[k] * heights[k]);
    h0 = std::min(h0, std::max(heights[k], tail_sup));
  }
  std::size_t violations = 0;
  for (std::size_t k = 0; k < heights.size(); ++k)
    if (heights[k] >= h0 && !(min_f[k] <= std::sqrt(h0 / heights[k]))) ++violations;
  rep.bound_constant = h0;
  rep.add("h0 for min F on the ball <= sqrt(h0 / h)", h0, p.h_max() / 10,
          std::isfinite(h0) && h0 <= p.h_max() / 10 && violations == 0);
  rep.details = "measured: distance from h e_{n+1} to the surface over sqrt(2 n h)";
  rep.finalize();
  return rep;
}

EstimateReport lemma_3_6_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "lemma-3.6";
  const double h_ref = reference_height(p);
  if (h_ref <= 1e2) throw DomainError("kappa_1 / F decay needs h_max > 100");
  std::size_t increases = 0;
  double prev = kInf;
  for (double h : log_heights(1e2, h_ref, 20)) {
    const ProfilePoint pt = point_at_height(p, h);
    const double v = kappa_min(pt) / pt.F;
    rep.measured.emplace_back(h, v);
    if (!(v < prev)) ++increases;
    prev = v;
  }
  const double last = rep.measured.back().second;
  rep.tolerance = 0.05;
  rep.add("k1 / F at h_ref", last, 0.05, last < 0.05);
  rep.add("increases of k1 / F over [1e2, h_ref]", double(increases), 0.0, increases == 0);
  rep.finalize();
  return rep;
}

EstimateReport asymptotics_report(const Profile& p) {
  EstimateReport rep;
  rep.lemma_id = "corollary-H";
  const int n = p.dim();
  const double h_ref = reference_height(p);
  if (h_ref < 10.0) throw DomainError("asymptotics need h_max >= 10");
  const double limit = std::sqrt((n - 1) / 2.0);
  const double girth_limit = std::sqrt(2.0 * (n - 1));
  for (double h : log_heights(1.0, h_ref, 4)) {
    const ProfilePoint pt = point_at_height(p, h);
    rep.measured.emplace_back(h, pt.F * std::sqrt(h));
  }
  const ProfilePoint hi = point_at_height(p, h_ref);
  const ProfilePoint lo = point_at_height(p, h_ref / 10);
  const double dev_hi = std::abs(hi.F * std::sqrt(h_ref) / limit - 1.0);
  const double dev_lo = std::abs(lo.F * std::sqrt(h_ref / 10) / limit - 1.0);
  const double girth = hi.r / std::sqrt(h_ref);
  rep.tolerance = 0.05;
  rep.add("F sqrt(h) / sqrt((n-1)/2) - 1 at h_ref", dev_hi, 0.05, dev_hi <= 0.05);
  rep.add("deviation decays from h_ref/10 to h_ref", dev_hi, dev_lo, dev_hi < dev_lo);
  rep.add("rho / sqrt(h) / sqrt(2(n-1)) - 1 at h_ref", std::abs(girth / girth_limit - 1.0), 0.02,
          std::abs(girth / girth_limit - 1.0) <= 0.02);
  rep.add("k1 / F at h_ref", kappa_min(hi) / hi.F, 0.05, kappa_min(hi) / hi.F < 0.05);
  rep.add("F(h_ref) < F(h_ref / 10)", hi.F, lo.F, hi.F < lo.F);
  rep.bound_constant = limit;
  rep.details = "h_ref = " + fmt("%g", h_ref);
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

BlowdownSample blowdown_radius(const Profile& p, double h_j, double t) {
  if (!(t < 1.0)) throw DomainError("blow-down time must be < 1");
  if (!(h_j > 0.0)) throw DomainError("blow-down scale must be positive");
  const double height = h_j * (1.0 - t);
  if (height > p.h_max() || height < p.u.front())
    throw DomainError("height " + fmt("%g", height) + " outside the solved range");
  BlowdownSample s;
  s.h_j = h_j;
  s.t = t;
  s.measured_radius = point_at_height(p, height).r / std::sqrt(h_j);
  s.predicted_radius = std::sqrt(2.0 * (p.dim() - 1) * (1.0 - t));
  return s;
}

EstimateReport blowdown_report(const Profile& p, const std::vector<double>& h_js,
                               const std::vector<double>& ts, double tolerance) {
  EstimateReport rep;
  rep.lemma_id = "blowdown";
  rep.tolerance = tolerance;
  for (double h_j : h_js)
    for (double t : ts) {
      const BlowdownSample s = blowdown_radius(p, h_j, t);
      rep.measured.emplace_back(h_j * (1.0 - t), s.measured_radius);
      char name[96];
      std::snprintf(name, sizeof name, "h_j = %g, t = %g: relative deviation", h_j, t);
      rep.add(name, s.relative_deviation(), tolerance, s.relative_deviation() <= tolerance);
    }
  rep.finalize();
  return rep;
}

CylinderLinearization cylinder_linearized_check(const Speed& speed, int n, double t) {
  if (n != speed.dim()) throw DomainError("dimension does not match the speed");
  if (n < 2) throw DomainError("cylinder needs n >= 2");
  if (!(t < 1.0)) throw DomainError("t must be < 1");
  CylinderLinearization c;
  c.radius = std::sqrt(2.0 * (n - 1) * (1.0 - t));
  std::vector<double> kappa(static_cast<std::size_t>(n), 1.0 / c.radius);
  kappa[0] = 0.0;
  if (auto v = cone_violation(speed.cone(), kappa))
    throw DomainError(speed.name() + ": cylinder point leaves the cone: " + *v);
  std::vector<double> grad(static_cast<std::size_t>(n));
  speed.raw_gradient(kappa, grad);
  for (int j = 1; j < n; ++j) {
    c.max_tangential_error = std::max(c.max_tangential_error, std::abs(grad[j] - 1.0));
    c.a_sq_f += grad[j] * kappa[j] * kappa[j];
  }
  c.expected = 1.0 / (2.0 * (1.0 - t));
  c.relative_error = std::abs(c.a_sq_f - c.expected) / c.expected;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

struct Stencil {
  std::array<double, 3> d1, d2;
};

Stencil stencil_at(const Profile& p, std::size_t i) {
  const double h1 = p.s[i] - p.s[i - 1], h2 = p.s[i + 1] - p.s[i];
  return {first_derivative_weights(h1, h2), second_derivative_weights(h1, h2)};
}

void record(JacobiResidual& out, double rel, double r) {
  ++out.nodes;
  if (rel > out.max_relative) {
    out.max_relative = rel;
    out.at_r = r;
  }
}

}  // namespace

JacobiResidual speed_jacobi_residual(const Profile& p) {
  const int n = p.dim();
  JacobiResidual out;
  std::vector<double> kappa(static_cast<std::size_t>(n));
  std::vector<double> grad(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Stencil st = stencil_at(p, i);
    const double phi = p.F[i];
    const double phi_s = apply(st.d1, p.F[i - 1], p.F[i], p.F[i + 1]);
    const double phi_ss = apply(st.d2, p.F[i - 1], p.F[i], p.F[i + 1]);
    std::fill(kappa.begin(), kappa.end(), p.kappa_sph[i]);
    kappa[0] = p.kappa_rad[i];
    p.speed().raw_gradient(kappa, grad);
    double tangential = 0.0;
    for (int j = 1; j < n; ++j) tangential += grad[j];
    const double w = std::sqrt(1.0 + p.u_r[i] * p.u_r[i]);
    const double a_sq_f =
        grad[0] * p.kappa_rad[i] * p.kappa_rad[i] + tangential * p.kappa_sph[i] * p.kappa_sph[i];
    const double laplace = grad[0] * phi_ss + (n > 1 ? tangential * phi_s / (w * p.r[i]) : 0.0);
    const double drift = (p.u_r[i] / w) * phi_s;
    const double res = laplace + drift + a_sq_f * phi;
    record(out, std::abs(res) / (a_sq_f * std::abs(phi)), p.r[i]);
  }
  return out;
}

RotationJacobi rotation_jacobi_residual(const Profile& p, double c) {
  if (p.speed().kind() != SpeedKind::Mean)
    throw DomainError("rotation Jacobi fields are implemented for the mean curvature speed only");
  const int n = p.dim();
  const std::size_t m = p.size();
  std::vector<double> tilt(m), trans(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = std::sqrt(1.0 + p.u_r[i] * p.u_r[i]);
    tilt[i] = -((p.u[i] - c) * p.u_r[i] + p.r[i]) / w;
    trans[i] = p.u_r[i] / w;
  }
  RotationJacobi out;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const Stencil st = stencil_at(p, i);
    const double w = std::sqrt(1.0 + p.u_r[i] * p.u_r[i]);
    const double r = p.r[i];
    const double a_sq = p.kappa_rad[i] * p.kappa_rad[i] + (n - 1) * p.kappa_sph[i] * p.kappa_sph[i];
    const double speed_v = p.u_r[i] / w;
    // Terms of L1 phi, returned as (sum, sum of magnitudes).
    auto terms = [&](const std::vector<double>& f) {
      const double f_s = apply(st.d1, f[i - 1], f[i], f[i + 1]);
      const double f_ss = apply(st.d2, f[i - 1], f[i], f[i + 1]);
      const std::array<double, 5> t{f_ss, (n - 1) * f_s / (w * r), -(n - 1) * f[i] / (r * r),
                                    speed_v * f_s, a_sq * f[i]};
      double sum = 0.0, mag = 0.0;
      for (double x : t) {
        sum += x;
        mag += std::abs(x);
      }
      return std::pair{sum, mag};
    };
    const auto [lt, mt] = terms(tilt);
    const double source = -trans[i];
    record(out.tilt, std::abs(lt - source) / (mt + std::abs(source)), r);
    record(out.tilt_homogeneous, std::abs(lt) / mt, r);
    const auto [ls, ms] = terms(trans);
    record(out.translation, std::abs(ls) / ms, r);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool speed_is_convex(const Speed& speed) { return speed.kind() == SpeedKind::Mean; }

bool speed_is_concave(const Speed& speed) {
  switch (speed.kind()) {
    case SpeedKind::Mean:
    case SpeedKind::TwoHarmonicMean:
    case SpeedKind::SqrtScalar:
    case SpeedKind::ScalarToMean:
      return true;
    case SpeedKind::Custom:
      return false;
  }
  return false;
}

void add_convex_profile_checks(EstimateReport& rep, const Profile& p) {
  const Speed& speed = p.speed();
  double min_q = kInf;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = cylindrical_quantity(p.node(i), speed, CylindricalMode::Convex) / p.F[i];
    min_q = std::min(min_q, q);
    if (!(q > 0.0)) ++violations;
  }
  rep.add("nodes with k1 + k2 - F/beta1 <= 0", double(violations), 0.0, violations == 0);
  rep.add("min (k1 + k2 - F/beta1) / F", min_q, 0.0, min_q > 0.0);
  if (speed.kind() != SpeedKind::Mean) return;

  const int n = p.dim();
  std::size_t cyl_bad = 0, round_bad = 0, strict_bad = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ProfilePoint pt = p.node(i);
    const double q = cylindrical_quantity(pt, speed, CylindricalMode::Mcf);
    const double h = pt.kappa_rad + (n - 1) * pt.kappa_sph;
    const double k1 = kappa_min(pt);
    if (!(q < 0.0)) ++cyl_bad;
    if (!(q + k1 * h >= -1e-10 * h * h)) ++round_bad;
    if (!(k1 >= -q / h - 1e-10 * h)) ++strict_bad;
  }
  rep.add("nodes with |A|^2 - H^2/(n-1) >= 0", double(cyl_bad), 0.0, cyl_bad == 0);
  rep.add("nodes violating |A|^2 - H^2/(n-1) >= -k1 H", double(round_bad), 0.0, round_bad == 0);
  rep.add("nodes violating k1 >= -(|A|^2 - H^2/(n-1)) / H", double(strict_bad), 0.0,
          strict_bad == 0);

  const double h_ref = reference_height(p);
  if (h_ref > 1e2) {
    std::size_t increases = 0;
    double prev = kInf, last = 0.0;
    for (double hh : log_heights(1e2, h_ref, 20)) {
      const ProfilePoint pt = point_at_height(p, hh);
      const double h = pt.kappa_rad + (n - 1) * pt.kappa_sph;
      last = std::abs(cylindrical_quantity(pt, speed, CylindricalMode::Mcf)) / (h * h);
      if (!(last < prev)) ++increases;
      prev = last;
    }
    rep.add("|(|A|^2 - H^2/(n-1))| / H^2 at h_ref", last, 0.05, last < 0.05);
    rep.add("increases of that magnitude over [1e2, h_ref]", double(increases), 0.0,
            increases == 0);
  }
}

void add_concave_profile_checks(EstimateReport& rep, const Profile& p, double beta2,
                                double slack) {
  const Speed& speed = p.speed();
  const double b1 = cylinder_value(speed);
  std::size_t sign_bad = 0, beta_bad = 0;
  double worst_sign = -kInf, worst_ratio = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ProfilePoint pt = p.node(i);
    const double q = cylindrical_quantity(pt, speed, CylindricalMode::Concave);
    worst_sign = std::max(worst_sign, q / pt.F);
    if (!(q < 0.0)) ++sign_bad;
    const double k1 = kappa_min(pt);
    const double gap = pt.F / b1 - std::max(pt.kappa_rad, pt.kappa_sph);
    worst_ratio = std::max(worst_ratio, gap / k1);
    if (!(gap <= (beta2 + slack) * k1)) ++beta_bad;
  }
  rep.add("nodes with kn - F/beta1 >= 0", double(sign_bad), 0.0, sign_bad == 0);
  rep.add("max (kn - F/beta1) / F", worst_sign, 0.0, worst_sign < 0.0);
  rep.add("max (F/beta1 - kn) / k1 against beta2", worst_ratio, beta2 + slack,
          beta_bad == 0);
}

}  // namespace translab
