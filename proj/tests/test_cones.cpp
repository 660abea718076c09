#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "translab/cones.hpp"
#include "translab/errors.hpp"

using namespace translab;

TEST_CASE("two-convexity membership") {
  CHECK(gamma2_membership({0, 1, 1}));
  CHECK_FALSE(gamma2_membership({-1, 0.5, 1}));
  CHECK(gamma2_membership({-0.4, 0.5, 1}));
  CHECK(gamma2_membership({5}));
}

TEST_CASE("pinching quantities at hand-evaluated points") {
  for (const char* name : {"mean", "two-harmonic-mean", "sqrt-scalar", "scalar-to-mean"}) {
    const auto s = Speed::make(name, 3);
    const auto face = lambda_quantity(s, std::vector<double>{0, 1, 1}, PinchMode::Concave);
    CHECK(std::abs(face.quantity) <= 1e-15);
    const auto ones = lambda_quantity(s, std::vector<double>{1, 1, 1}, PinchMode::Concave);
    CHECK(ones.quantity > 0.0);
    CHECK(ones.in_lambda);
    // Normalization does not change the quantity.
    const auto n1 = lambda_quantity(normalized(s), std::vector<double>{0.3, 1, 2}, PinchMode::Concave);
    const auto n0 = lambda_quantity(s, std::vector<double>{0.3, 1, 2}, PinchMode::Concave);
    CHECK(n1.quantity == doctest::Approx(n0.quantity).epsilon(1e-14));
  }
  const auto mean = Speed::make("mean", 3);
  CHECK(lambda_quantity(mean, std::vector<double>{1, 1, 1}, PinchMode::Convex).quantity ==
        doctest::Approx(0.5));
  const auto thm = Speed::make("two-harmonic-mean", 3);
  // f(0, 1, 2) = 1 / (1 + 1/2 + 1/3) = 6/11 and beta1 = 0.4.
  const auto q = lambda_quantity(thm, std::vector<double>{0, 1, 2}, PinchMode::Concave);
  CHECK(q.quantity == doctest::Approx(6.0 / 11.0 / 0.4 - 2.0));
  CHECK(q.quantity < 0.0);
  CHECK_THROWS_AS(lambda_quantity(thm, std::vector<double>{-1, 0.5, 1}, PinchMode::Concave),
                  DomainError);
  CHECK_THROWS_AS(lambda_quantity(Speed::make("mean", 1), std::vector<double>{1}, PinchMode::Concave),
                  DomainError);
}

TEST_CASE("pinching quantity properties on random points") {
  gen::Rng rng(31);
  for (const char* name : {"mean", "two-harmonic-mean", "sqrt-scalar", "scalar-to-mean"}) {
    const auto s = Speed::make(name, 3);
    std::vector<std::vector<double>> convex_members;
    for (int k = 0; k < 2000; ++k) {
      const auto z = gen::cone_point(rng, s.cone(), 3);
      for (PinchMode mode : {PinchMode::Convex, PinchMode::Concave}) {
        const auto a = lambda_quantity(s, z, mode);
        // Containment in the positive cone: concave mode for every shipped
        // speed, convex mode for the convex one.
        if (a.in_lambda && (mode == PinchMode::Concave || std::string(name) == "mean"))
          CHECK(a.min_entry > 0.0);
        const double lambda = gen::log_uniform(rng, 0.1, 10);
        auto scaled = z;
        for (auto& x : scaled) x *= lambda;
        const auto b = lambda_quantity(s, scaled, mode);
        CHECK(std::abs(b.quantity - lambda * a.quantity) <=
              1e-10 * lambda * (std::abs(a.quantity) + std::abs(a.min_entry) + 1e-300));
        if (mode == PinchMode::Convex && a.in_lambda && std::string(name) == "mean")
          convex_members.push_back(z);
      }
    }
    // Lambda is convex in convex mode for the convex (mean) speed.
    for (std::size_t i = 0; i + 1 < convex_members.size(); ++i) {
      const double t = gen::uniform(rng, 0, 1);
      std::vector<double> mix(3);
      for (int j = 0; j < 3; ++j)
        mix[j] = t * convex_members[i][j] + (1 - t) * convex_members[i + 1][j];
      CHECK(lambda_quantity(s, mix, PinchMode::Convex).quantity > -1e-12);
    }
  }
}

TEST_CASE("beta2 for the mean speed in convex mode") {
  const auto mean = Speed::make("mean", 3);
  const auto e = estimate_beta2(mean, PinchMode::Convex, 20000, 1);
  CHECK(e.beta2 >= 0.5 - 1e-12);
  CHECK(e.beta1 == 2.0);
  CHECK(e.outside_positive_cone == 0);
  CHECK(e.in_lambda > 0);
  const auto v = validate_beta2(mean, PinchMode::Convex, e.beta2, 20000, 2);
  CHECK(v.violations == 0);
  CHECK(v.checked > 0);
}

TEST_CASE("beta2 in concave mode reaches the face limit") {
  // Near (0, 1, ..., 1) the ratio tends to df/dz_1 / beta1.
  const struct {
    const char* name;
    double beta2;
  } cases[] = {{"mean", 0.5}, {"two-harmonic-mean", 0.8}, {"sqrt-scalar", 1.0}, {"scalar-to-mean", 1.5}};
  for (const auto& c : cases) {
    const auto s = Speed::make(c.name, 3);
    const auto e = estimate_beta2(s, PinchMode::Concave, 20000, 3);
    CHECK_MESSAGE(e.beta2 == doctest::Approx(c.beta2).epsilon(1e-9), c.name);
    CHECK(e.outside_positive_cone == 0);
    const auto v = validate_beta2(s, PinchMode::Concave, e.beta2, 20000, 4);
    CHECK(v.violations == 0);
    // A beta2 that is too small is caught by validation.
    CHECK(validate_beta2(s, PinchMode::Concave, 0.5 * c.beta2, 20000, 4).violations > 0);
  }
}

TEST_CASE("beta2 estimation is reproducible") {
  const auto s = Speed::make("two-harmonic-mean", 4);
  const auto a = estimate_beta2(s, PinchMode::Concave, 5000, 42);
  const auto b = estimate_beta2(s, PinchMode::Concave, 5000, 42);
  CHECK(a.beta2 == b.beta2);
  CHECK(a.witness == b.witness);
  CHECK(a.in_closure == b.in_closure);
}

TEST_CASE("face probe") {
  for (const char* name : {"mean", "two-harmonic-mean", "sqrt-scalar", "scalar-to-mean"}) {
    const auto s = Speed::make(name, 3);
    const auto r = boundary_ray_probe(s, PinchMode::Concave, 20);
    CHECK_MESSAGE(r.passed(), name);
    CHECK(r.points == 400);
    CHECK(r.diagonal_points == 20);
    CHECK(r.max_off_diagonal < 0.0);
  }
  const auto mean = Speed::make("mean", 3);
  CHECK(boundary_ray_probe(mean, PinchMode::Convex, 10).passed());
  CHECK(boundary_ray_probe(Speed::make("two-harmonic-mean", 4), PinchMode::Concave, 8).passed());
  // A speed that is not maximal on the diagonal fails the probe.
  const auto skew = Speed::custom("max", 3, Cone::Positive, [](std::span<const double> k) {
    return 2.0 * std::max({k[0], k[1], k[2]});
  });
  CHECK_FALSE(boundary_ray_probe(skew, PinchMode::Concave, 6).negative_off_diagonal);
  CHECK_THROWS_AS(boundary_ray_probe(mean, PinchMode::Concave, 1), DomainError);
}
