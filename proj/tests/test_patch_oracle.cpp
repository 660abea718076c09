#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "translab/bowl.hpp"
#include "translab/errors.hpp"
#include "translab/patch_oracle.hpp"

using namespace translab;

namespace {

const Profile& mean3() {
  static const Profile p = solve_profile(Speed::make("mean", 3), 3, 1e3, 1e-8);
  return p;
}

const Profile& thm3() {
  static const Profile p = solve_profile(normalized(Speed::make("two-harmonic-mean", 3)), 3, 1e3, 1e-8);
  return p;
}

}  // namespace

TEST_CASE("closed-form |grad A|^2 against the embedded patch oracle") {
  gen::Rng rng(43);
  for (const Profile* p : {&mean3(), &thm3()}) {
    for (int k = 0; k < 10; ++k) {
      const double r = gen::log_uniform(rng, 0.1, 0.8 * p->r_max());
      const double closed = geometry_at(*p, r).grad_a_sq;
      const double oracle = grad_a_norm_oracle(*p, r);
      CHECK(std::abs(oracle - closed) <= 1e-4 * closed);
    }
  }
}

TEST_CASE("patch oracle on model surfaces") {
  // Round sphere of radius 2 and a cylinder of radius 1 in R^4.
  const PatchMap sphere = [](const Eigen::VectorXd& d) {
    Eigen::VectorXd x0(4), x(4);
    x0 << 0, 0, 0, 2;
    const double rho = d.norm();
    const double th = rho / 2;
    x.head(3) = rho > 0 ? Eigen::VectorXd(d * (2 * std::sin(th) / rho)) : Eigen::VectorXd(d);
    x(3) = 2 * std::cos(th);
    return Eigen::VectorXd(x - x0);
  };
  const auto gs = patch_geometry(sphere, 3, 1e-2);
  CHECK(std::abs(gs.grad_a_sq) <= 1e-8);
  CHECK(gs.a_sq == doctest::Approx(0.75).epsilon(1e-6));
  const PatchMap cylinder = [](const Eigen::VectorXd& d) {
    Eigen::VectorXd x(4);
    x << std::sin(d(0)), d(1), d(2), std::cos(d(0)) - 1;
    return x;
  };
  const auto gc = patch_geometry(cylinder, 3, 1e-2);
  CHECK(std::abs(gc.grad_a_sq) <= 1e-8);
  CHECK(gc.a_sq == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("profile patch mean curvature matches the speed") {
  const Profile& p = mean3();
  for (double r : {0.3, 1.0, 4.0}) {
    const auto g = profile_patch_geometry(p, r);
    const auto pt = geometry_at(p, r);
    CHECK(std::abs(std::abs(g.mean_curvature) - pt.F) <= 1e-5 * pt.F);
    CHECK(g.a_sq == doctest::Approx(pt.kappa_rad * pt.kappa_rad + 2 * pt.kappa_sph * pt.kappa_sph).epsilon(1e-5));
  }
}
