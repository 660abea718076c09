#include "translab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "translab/errors.hpp"
#include "translab/sampling.hpp"

namespace translab {

std::string_view pinch_mode_name(PinchMode mode) {
  return mode == PinchMode::Convex ? "convex" : "concave";
}

bool gamma2_membership(const CurvatureVector& z) { return z.two_convex(); }

ConeSample lambda_quantity(const Speed& speed, std::span<const double> z, PinchMode mode) {
  const int n = speed.dim();
  if (n < 2) throw DomainError("pinching quantities need n >= 2");
  if (static_cast<int>(z.size()) != n)
    throw DomainError("z has dimension " + std::to_string(z.size()) + ", speed expects " +
                      std::to_string(n));
  if (auto v = cone_violation(speed.cone(), z, true))
    throw DomainError(speed.name() + ": outside " + std::string(cone_name(speed.cone())) +
                      " cone: " + *v);
  const double f = speed.with_scale(1.0).raw_value(z) / beta1(speed);

  ConeSample s;
  s.z.assign(z.begin(), z.end());
  s.min_entry = *std::min_element(z.begin(), z.end());
  if (mode == PinchMode::Convex) {
    double pair = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair = std::min(pair, z[i] + z[j]);
    s.quantity = pair - f;
  } else {
    s.quantity = f - *std::max_element(z.begin(), z.end());
  }
  s.in_lambda = s.quantity > 0.0;
  return s;
}

namespace {

constexpr double kClosureMargin = 1e-12;

struct Candidate {
  double ratio = -std::numeric_limits<double>::infinity();
  std::vector<double> z;
};

// Ratio quantity / min z_i on the closure of Lambda, or nullopt outside it.
std::optional<double> closure_ratio(const Speed& speed, std::span<const double> z, PinchMode mode) {
  if (!in_cone(speed.cone(), z, true)) return std::nullopt;
  const ConeSample s = lambda_quantity(speed, z, mode);
  if (s.quantity < -kClosureMargin || !(s.min_entry > kClosureMargin)) return std::nullopt;
  return s.quantity / s.min_entry;
}

void normalize(std::vector<double>& z) {
  double norm = 0.0;
  for (double x : z) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : z) x /= norm;
}

Candidate coordinate_ascent(const Speed& speed, PinchMode mode, Candidate best) {
  double step = 0.1;
  for (int iter = 0; iter < 50; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < best.z.size(); ++i)
      for (double sgn : {1.0, -1.0}) {
        auto trial = best.z;
        trial[i] += sgn * step;
        normalize(trial);
        const auto r = closure_ratio(speed, trial, mode);
        if (r && *r > best.ratio) {
          best.ratio = *r;
          best.z = std::move(trial);
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

struct Beta2Shard {
  Candidate best;
  int samples = 0, closure = 0, lambda = 0, outside = 0;
};

}  // namespace

Beta2Estimate estimate_beta2(const Speed& speed, PinchMode mode, int sample_count,
                             std::uint64_t seed) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  const int n = speed.dim();
  auto shards = sharded_map<Beta2Shard>(
      static_cast<std::size_t>(sample_count), seed, [&](Rng& rng, std::size_t count) {
        Beta2Shard acc;
        for (std::size_t k = 0; k < count; ++k) {
          auto z = sample_cone_direction(rng, speed.cone(), n);
          ++acc.samples;
          const ConeSample s = lambda_quantity(speed, z, mode);
          if (s.in_lambda) {
            ++acc.lambda;
            if (!(s.min_entry > 0.0)) ++acc.outside;
          }
          if (s.quantity < -kClosureMargin || !(s.min_entry > kClosureMargin)) continue;
          ++acc.closure;
          const double ratio = s.quantity / s.min_entry;
          if (ratio > acc.best.ratio) acc.best = {ratio, std::move(z)};
        }
        return acc;
      });

  Beta2Estimate est;
  est.beta1 = beta1(speed);
  Candidate best;
  for (const auto& s : shards) {
    est.samples += s.samples;
    est.in_closure += s.closure;
    est.in_lambda += s.lambda;
    est.outside_positive_cone += s.outside;
    if (s.best.ratio > best.ratio) best = s.best;
  }
  // The diagonal lies in Lambda for every admissible speed; include it so
  // suprema attained there are reported exactly.
  {
    std::vector<double> diag(static_cast<std::size_t>(n), 1.0 / std::sqrt(double(n)));
    const ConeSample s = lambda_quantity(speed, diag, mode);
    if (s.quantity >= -kClosureMargin && s.min_entry > kClosureMargin &&
        s.quantity / s.min_entry > best.ratio)
      best = {s.quantity / s.min_entry, diag};
  }
  if (est.in_closure == 0)
    throw SamplingError("no sample landed in the closure of Lambda (" +
                        std::string(pinch_mode_name(mode)) + " mode)");
  best = coordinate_ascent(speed, mode, best);
  if (mode == PinchMode::Concave) {
    // Approaching the face point (0, 1, ..., 1) the ratio tends to
    // d f / d z_1 there over beta1, a supremum no interior search reaches.
    std::vector<double> face(static_cast<std::size_t>(n), 1.0), grad(face.size());
    face[0] = 0.0;
    const Speed unit = speed.with_scale(1.0);
    unit.raw_gradient(face, grad);
    const double limit = grad[0] / beta1(speed);
    if (std::isfinite(limit) && limit > best.ratio) {
      normalize(face);
      best = {limit, face};
    }
  }
  est.beta2 = best.ratio;
  est.witness = best.z;
  return est;
}

Beta2Validation validate_beta2(const Speed& speed, PinchMode mode, double beta2, int sample_count,
                               std::uint64_t seed, double slack) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  const int n = speed.dim();
  auto shards = sharded_map<Beta2Validation>(
      static_cast<std::size_t>(sample_count), seed, [&](Rng& rng, std::size_t count) {
        Beta2Validation acc;
        for (std::size_t k = 0; k < count; ++k) {
          const auto z = sample_cone_direction(rng, speed.cone(), n);
          ++acc.samples;
          const ConeSample s = lambda_quantity(speed, z, mode);
          if (s.quantity < -kClosureMargin || !(s.min_entry > kClosureMargin)) continue;
          ++acc.checked;
          const double excess = s.quantity - (beta2 + slack) * s.min_entry;
          if (excess > 0.0) {
            ++acc.violations;
            acc.worst_excess = std::max(acc.worst_excess, excess);
          }
        }
        return acc;
      });
  Beta2Validation total;
  for (const auto& s : shards) {
    total.samples += s.samples;
    total.checked += s.checked;
    total.violations += s.violations;
    total.worst_excess = std::max(total.worst_excess, s.worst_excess);
  }
  return total;
}

FaceProbeReport boundary_ray_probe(const Speed& speed, PinchMode mode, int grid) {
  if (grid < 2) throw DomainError("grid must be >= 2");
  const int n = speed.dim();
  if (n < 2) throw DomainError("face probe needs n >= 2");
  FaceProbeReport r;
  r.zero_on_diagonal = r.negative_off_diagonal = r.scaling_ok = true;
  r.max_off_diagonal = -std::numeric_limits<double>::infinity();

  auto describe = [](const std::vector<double>& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", z[i]);
      s += buf;
    }
    return s + ")";
  };

  std::vector<int> index(static_cast<std::size_t>(n - 1), 1);
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  while (true) {
    for (int j = 1; j < n; ++j) z[j] = double(index[j - 1]) / grid;
    ++r.points;
    const ConeSample s = lambda_quantity(speed, z, mode);
    const double zmax = *std::max_element(z.begin() + 1, z.end());
    const double zmin = *std::min_element(z.begin() + 1, z.end());
    double norm = 0.0;
    for (double x : z) norm += x * x;
    norm = std::sqrt(norm);

    if ((zmax - zmin) <= 1e-6 * zmax) {
      ++r.diagonal_points;
      r.max_abs_on_diagonal = std::max(r.max_abs_on_diagonal, std::abs(s.quantity));
      if (std::abs(s.quantity) > 1e-10 * norm) {
        r.zero_on_diagonal = false;
        r.violations.push_back("nonzero quantity on the diagonal at " + describe(z));
      }
    } else {
      r.max_off_diagonal = std::max(r.max_off_diagonal, s.quantity);
      const bool ok = mode == PinchMode::Concave ? s.quantity < 0.0
                                                 : s.quantity <= 1e-12 * norm;
      if (!ok) {
        r.negative_off_diagonal = false;
        r.violations.push_back("quantity has the wrong sign at " + describe(z));
      }
    }
    const bool on_diagonal = (zmax - zmin) <= 1e-6 * zmax;
    for (double k : {0.1, 10.0}) {
      auto scaled = z;
      for (double& x : scaled) x *= k;
      const ConeSample t = lambda_quantity(speed, scaled, mode);
      // On the diagonal the quantity is zero up to rounding, so membership
      // there is decided by rounding and only the value is compared.
      if ((!on_diagonal && t.in_lambda != s.in_lambda) ||
          std::abs(t.quantity - k * s.quantity) > 1e-10 * k * norm) {
        r.scaling_ok = false;
        r.violations.push_back("membership not scale invariant at " + describe(z));
      }
    }

    int j = 0;
    while (j < n - 1 && ++index[j] > grid) index[j++] = 1;
    if (j == n - 1) break;
  }
  if (r.diagonal_points == r.points) r.max_off_diagonal = 0.0;
  return r;
}

}  // namespace translab
