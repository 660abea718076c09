#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "translab/errors.hpp"
#include "translab/speeds.hpp"

using namespace translab;

namespace {

const char* const kNames3[] = {"mean", "two-harmonic-mean", "sqrt-scalar", "scalar-to-mean"};

// Defining formulas, written out independently of the library.
double oracle_value(const std::string& name, const std::vector<double>& k) {
  const std::size_t n = k.size();
  double s1 = 0.0, s2 = 0.0, harm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s1 += k[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      s2 += 2 * k[i] * k[j];
      harm += 1.0 / (k[i] + k[j]);
    }
  }
  if (name == "mean") return s1;
  if (name == "two-harmonic-mean") return 1.0 / harm;
  if (name == "sqrt-scalar") return std::sqrt(s2);
  return s2 / s1;
}

}  // namespace

TEST_CASE("values at hand-evaluated points") {
  const auto mean = Speed::make("mean", 3);
  const auto thm = Speed::make("two-harmonic-mean", 3);
  CHECK(eval_speed(mean, {1, 1, 1}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(thm.raw_value(std::vector<double>{0, 1, 1}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(eval_speed(thm, {1, 1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(eval_speed(thm, {1, 2, 3}) == doctest::Approx(60.0 / 47.0).epsilon(1e-15));
  CHECK(eval_speed(Speed::make("sqrt-scalar", 3), {1, 2, 3}) ==
        doctest::Approx(std::sqrt(22.0)).epsilon(1e-15));
  CHECK(eval_speed(Speed::make("scalar-to-mean", 3), {1, 2, 3}) ==
        doctest::Approx(22.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("values match the defining formulas on random cone points") {
  gen::Rng rng(11);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    for (int k = 0; k < 200; ++k) {
      const auto x = gen::cone_point(rng, s.cone(), 3);
      CHECK(s.raw_value(x) == doctest::Approx(oracle_value(name, x)).epsilon(1e-13));
    }
  }
  for (int n : {2, 4, 6}) {
    const auto s = Speed::make("two-harmonic-mean", n);
    for (int k = 0; k < 50; ++k) {
      const auto x = gen::cone_point(rng, s.cone(), n);
      CHECK(s.raw_value(x) == doctest::Approx(oracle_value("two-harmonic-mean", x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gradient: closed form, hand value and difference oracle") {
  const auto thm = Speed::make("two-harmonic-mean", 3);
  std::vector<double> g(3);
  thm.raw_gradient(std::vector<double>{0, 1, 1}, g);
  CHECK(g[0] == doctest::Approx(0.32).epsilon(1e-14));

  const auto mean = Speed::make("mean", 4);
  for (double x : grad_speed(mean, {0.3, 1, 2, 5})) CHECK(x == 1.0);

  gen::Rng rng(12);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    for (int k = 0; k < 100; ++k) {
      const auto x = gen::cone_point(rng, s.cone(), 3);
      const auto grad = grad_speed(s, CurvatureVector(x));
      double norm = 0.0;
      for (double v : x) norm += v * v;
      const double h = 1e-6 * std::sqrt(norm);
      for (std::size_t i = 0; i < 3; ++i) {
        const double fd = gen::central([&](const auto& p) { return oracle_value(name, p); }, x, i, h);
        CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("Euler relation, symmetry, homogeneity and monotonicity on random points") {
  gen::Rng rng(13);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    for (int k = 0; k < 1000; ++k) {
      const auto x = gen::cone_point(rng, s.cone(), 3);
      const double f = s.raw_value(x);
      std::vector<double> g(3);
      s.raw_gradient(x, g);
      double euler = 0.0;
      for (int i = 0; i < 3; ++i) euler += x[i] * g[i];
      CHECK(std::abs(euler - f) <= 1e-8 * std::abs(f));
      CHECK(*std::min_element(g.begin(), g.end()) > 0.0);

      auto p = x;
      std::sort(p.begin(), p.end());
      do {
        CHECK(std::abs(s.raw_value(p) - f) <= 1e-12 * std::abs(f));
      } while (std::next_permutation(p.begin(), p.end()));

      const double lambda = gen::log_uniform(rng, 0.1, 10.0);
      auto scaled = x;
      for (auto& v : scaled) v *= lambda;
      CHECK(s.raw_value(scaled) == doctest::Approx(lambda * f).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form Hessian matches differences of the gradient") {
  gen::Rng rng(14);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    for (int k = 0; k < 50; ++k) {
      const auto x = gen::cone_point(rng, s.cone(), 3);
      const Eigen::MatrixXd h = s.raw_hessian(x);
      double norm = 0.0;
      for (double v : x) norm += v * v;
      const double step = 1e-6 * std::sqrt(norm);
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) {
          const double fd = gen::central(
              [&](const auto& p) {
                std::vector<double> g(3);
                s.raw_gradient(p, g);
                return g[j];
              },
              x, i, step);
          // Rounding in the gradient differences is about eps |g| / step.
          CHECK(std::abs(h(j, i) - fd) <= 1e-6 * (h.norm() + 1.0 / std::sqrt(norm)));
        }
      CHECK((fd_hessian(s, x) - h).norm() <= 1e-6 * (1.0 + h.norm()));
    }
  }
}

TEST_CASE("cone violations name the failing condition") {
  const auto thm = Speed::make("two-harmonic-mean", 3);
  try {
    eval_speed(thm, {-1, 0.5, 1});
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("kappa_1 + kappa_2") != std::string::npos);
  }
  CHECK_THROWS_AS(eval_speed(Speed::make("sqrt-scalar", 3), {-1, -1, 0.5}), DomainError);
  CHECK_THROWS_AS(Speed::make("sqrt-scalar", 4), InvalidSpeedError);
  CHECK_THROWS_AS(Speed::make("scalar-to-mean", 2), InvalidSpeedError);
  CHECK_THROWS_AS(Speed::make("nope", 3), InvalidSpeedError);
  CHECK(eval_speed(thm, {-0.4, 0.5, 1}) > 0.0);
}

TEST_CASE("difference gradient refuses stencils leaving the cone") {
  const auto custom = Speed::custom("custom-mean", 3, Cone::Positive, [](std::span<const double> k) {
    return k[0] + k[1] + k[2];
  });
  CHECK_THROWS_AS(fd_gradient(custom, std::vector<double>{1e-9, 1, 1}), BoundaryProximityError);
  const auto g = grad_speed(custom, {1, 2, 3});
  for (double x : g) CHECK(x == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("admissibility sampling") {
  for (const char* name : kNames3) {
    const auto r = check_admissible(Speed::make(name, 3), 2000, 5);
    CHECK_MESSAGE(r.all_ok(), name);
    CHECK(r.samples_used == 2000);
  }
  const auto quad = Speed::custom("sum-of-squares", 3, Cone::Positive, [](std::span<const double> k) {
    return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  });
  const auto r = check_admissible(quad, 500, 5);
  CHECK_FALSE(r.homogeneous_ok);
  CHECK(r.symmetry_ok);

  const auto skew = Speed::custom("skew", 3, Cone::Positive, [](std::span<const double> k) {
    return k[0] + 2 * k[1] + 3 * k[2];
  });
  CHECK_FALSE(check_admissible(skew, 500, 5).symmetry_ok);
  const auto decreasing = Speed::custom("decreasing", 3, Cone::Positive, [](std::span<const double> k) {
    return 2 * (k[0] + k[1] + k[2]) - 3 * std::min({k[0], k[1], k[2]});
  });
  CHECK_FALSE(check_admissible(decreasing, 500, 5).monotone_ok);
}

TEST_CASE("dual speed") {
  const auto mean = Speed::make("mean", 3);
  const auto thm = Speed::make("two-harmonic-mean", 3);
  CHECK(dual_speed_eval(mean, std::vector<double>{1, 1}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dual_speed_eval(thm, std::vector<double>{1, 1}) == doctest::Approx(2.5).epsilon(1e-14));
  gen::Rng rng(15);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    CHECK(dual_speed_eval(s, std::vector<double>{1, 1}) ==
          doctest::Approx(1.0 / beta1(s)).epsilon(1e-14));
    for (int k = 0; k < 200; ++k) {
      const auto z = gen::positive_point(rng, 2);
      const std::vector<double> y{1 / z[0], 1 / z[1]};
      const double product = dual_speed_eval(s, y) * s.raw_value(std::vector<double>{0, z[0], z[1]});
      CHECK(std::abs(product - 1.0) <= 1e-10);
      // Gradient and Hessian against differences of f*.
      const auto g = dual_speed_gradient(s, y);
      const Eigen::MatrixXd h = dual_speed_hessian(s, y);
      const double gscale = (std::abs(g[0]) + std::abs(g[1])) / std::min(y[0], y[1]);
      for (std::size_t i = 0; i < 2; ++i) {
        const double step = 1e-5 * y[i];
        const double fd = gen::central([&](const auto& p) { return dual_speed_eval(s, p); }, y, i, step);
        CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
        for (std::size_t j = 0; j < 2; ++j) {
          const double fdh = gen::central(
              [&](const auto& p) { return dual_speed_gradient(s, p)[j]; }, y, i, step);
          CHECK(std::abs(h(j, i) - fdh) <= 1e-6 * (h.norm() + gscale));
        }
      }
    }
  }
  CHECK_THROWS_AS(dual_speed_eval(mean, std::vector<double>{-1, 1}), DomainError);
  CHECK_THROWS_AS(dual_speed_eval(mean, std::vector<double>{1, 1, 1}), DomainError);
}

TEST_CASE("concavity sampling") {
  const auto mean = Speed::make("mean", 3);
  CHECK(check_concavity(mean, ConcavityMode::Convex, 500, 1).passed);
  CHECK(check_concavity(mean, ConcavityMode::Concave, 500, 1).passed);
  for (const char* name : kNames3) {
    const auto s = Speed::make(name, 3);
    CHECK_MESSAGE(check_concavity(s, ConcavityMode::Concave, 2000, 2).passed, name);
    CHECK_MESSAGE(check_concavity(s, ConcavityMode::DualConcave, 2000, 2).passed, name);
  }
  const auto norm = Speed::custom("norm", 3, Cone::Positive, [](std::span<const double> k) {
    return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  });
  CHECK(check_concavity(norm, ConcavityMode::Convex, 500, 3).passed);
  CHECK_FALSE(check_concavity(norm, ConcavityMode::Concave, 500, 3).passed);
  CHECK_FALSE(check_concavity(Speed::make("two-harmonic-mean", 3), ConcavityMode::Convex, 500, 3)
                  .passed);
}

TEST_CASE("sampling is reproducible and independent of the thread count") {
  const auto s = Speed::make("two-harmonic-mean", 4);
  const auto a = check_concavity(s, ConcavityMode::Concave, 3000, 9);
  const auto b = check_concavity(s, ConcavityMode::Concave, 3000, 9);
  CHECK(a.extremal_eigenvalue == b.extremal_eigenvalue);
  CHECK(a.extremal_point == b.extremal_point);
}

TEST_CASE("cylinder normalization") {
  auto [b_mean, n_mean] = cylinder_value_and_normalize(Speed::make("mean", 3));
  CHECK(b_mean == 2.0);
  CHECK(n_mean.scale() == 1.0);
  auto [b_thm, n_thm] = cylinder_value_and_normalize(Speed::make("two-harmonic-mean", 3));
  CHECK(b_thm == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(n_thm.scale() == doctest::Approx(5.0).epsilon(1e-14));
  for (int n : {2, 3, 5}) {
    const auto s = normalized(Speed::make("two-harmonic-mean", n));
    std::vector<double> cyl(static_cast<std::size_t>(n), 1.0);
    cyl[0] = 0.0;
    CHECK(s.raw_value(cyl) == doctest::Approx(n - 1).epsilon(1e-14));
    CHECK(normalized(s).scale() == doctest::Approx(s.scale()).epsilon(1e-15));
  }
  const auto zero = Speed::custom("zero-on-cylinder", 3, Cone::Positive, [](std::span<const double> k) {
    return std::min({k[0], k[1], k[2]});
  });
  CHECK_THROWS_AS(cylinder_value_and_normalize(zero), InvalidSpeedError);
}
