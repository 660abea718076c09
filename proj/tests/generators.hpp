#pragma once

// Hand-rolled generators for property tests.

#include <cmath>
#include <random>
#include <vector>

#include "translab/speeds.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline double log_uniform(Rng& rng, double a, double b) {
  return std::exp(uniform(rng, std::log(a), std::log(b)));
}

/// Uniform direction times a log-uniform radius in [1e-2, 1e2], rejected
/// until it lies in the open cone.
inline std::vector<double> cone_point(Rng& rng, translab::Cone cone, int n) {
  std::normal_distribution<double> normal;
  std::vector<double> k(static_cast<std::size_t>(n));
  while (true) {
    double norm = 0.0;
    for (auto& x : k) {
      x = normal(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    const double radius = log_uniform(rng, 1e-2, 1e2);
    for (auto& x : k) x *= radius / norm;
    if (translab::in_cone(cone, k)) {
      // Stay clear of the boundary so difference stencils fit.
      double lo = 1e300;
      for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j) lo = std::min(lo, k[i] + k[j]);
      if (k.size() < 2 || lo > 1e-2 * radius) return k;
    }
  }
}

inline std::vector<double> positive_point(Rng& rng, int n, double lo = 1e-2, double hi = 1e2) {
  std::vector<double> z(static_cast<std::size_t>(n));
  for (auto& x : z) x = log_uniform(rng, lo, hi);
  return z;
}

/// Central difference of a scalar function along coordinate i.
template <class F>
double central(F&& f, std::vector<double> x, std::size_t i, double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double fp = f(x);
  x[i] = x0 - h;
  const double fm = f(x);
  return (fp - fm) / (2 * h);
}

}  // namespace gen
