#pragma once

// Three-point stencils on nonuniform grids. For nodes x0 < x1 < x2 with
// h1 = x1 - x0 and h2 = x2 - x1, the derivative at x1 is w0 f0 + w1 f1 + w2 f2.

#include <array>

namespace translab {

inline std::array<double, 3> first_derivative_weights(double h1, double h2) {
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

inline std::array<double, 3> second_derivative_weights(double h1, double h2) {
  return {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
}

inline double apply(const std::array<double, 3>& w, double f0, double f1, double f2) {
  return w[0] * f0 + w[1] * f1 + w[2] * f2;
}

}  // namespace translab
