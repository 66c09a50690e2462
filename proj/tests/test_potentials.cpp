#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "symdual/catalog.hpp"
#include "symdual/forms.hpp"

using namespace symdual;
using doctest::Approx;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kParabolaCap = 1.0 / (4.0 * kSqrt2);

// G from the rotated-parabola construction, evaluated directly.
double parabola_g(double x) {
  return -kSqrt2 / 2.0 + x + 0.5 * std::sqrt(2.0 - 8.0 * kSqrt2 * x);
}

}  // namespace

TEST_CASE("catalog names and errors") {
  for (const auto& name : catalog_names()) CHECK_NOTHROW((void)catalog(name));
  CHECK_THROWS_AS((void)catalog("no_such_potential"), domain_error);
  CatalogParams bad;
  bad.mu = -1.0;
  CHECK_THROWS_AS((void)catalog("scaled_hyperbolic", bad), domain_error);
  CatalogParams flatF;
  flatF.F = "1";  // constant profile is not decreasing
  CHECK_THROWS_AS((void)catalog("hartogs", flatF), domain_error);
}

TEST_CASE("hyperbolic evaluates to hand values") {
  const RadialPotential f = catalog_radial("hyperbolic");
  const Jet1d j = f.jets(0.25);
  CHECK(j.f == Approx(0.287682072452).epsilon(1e-12));
  CHECK(j.d1 == Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)f.jets(1.0), domain_error);
  CHECK_THROWS_AS((void)f.jets(1.25), domain_error);
}

TEST_CASE("flat has unit slope and no curvature terms") {
  const RadialPotential f = catalog_radial("flat", CatalogParams{.c = 1.0});
  const Jet1d j = f.jets(17.3);
  CHECK(j.d1 == 1.0);
  CHECK(j.d2 == 0.0);
}

TEST_CASE("parabola_rotation: slope at 0 is 1/lambda and G(G(x)) = x") {
  CatalogParams p;
  p.lambda0 = 1.0;
  const RadialPotential f = catalog_radial("parabola_rotation", p);
  CHECK(f.jets(0.0).d1 == Approx(1.0).epsilon(1e-14));

  CatalogParams p2;
  p2.lambda0 = 2.5;
  CHECK(catalog_radial("parabola_rotation", p2).jets(0.0).d1 == Approx(1.0 / 2.5).epsilon(1e-14));

  for (int i = 1; i <= 50; ++i) {
    const double x = 0.9 * kParabolaCap * i / 50.0;
    CHECK(parabola_g(parabola_g(x)) == Approx(x).scale(1.0).epsilon(1e-10));
  }

  // f'(x) = -G(x)/(lambda x) away from the removable singularity.
  for (double x : {0.05, 0.1, 0.15, -0.2}) {
    CHECK(f.jets(x).d1 == Approx(-parabola_g(x) / x).epsilon(1e-12));
  }

  // The value is the integral of f' from 0, with f(0) = 0.
  CHECK(f.jets(0.0).f == 0.0);
  const double fx = f.jets(0.12).f;
  const double quad = integrate([&](double t) { return t == 0.0 ? 1.0 : -parabola_g(t) / t; }, 0.0, 0.12, 1e-13);
  CHECK(fx == Approx(quad).epsilon(1e-10));
}

TEST_CASE("taubnut_solve fixed points and round trips") {
  SUBCASE("origin is exact for any m") {
    const TaubNutState s = taubnut_solve(0.0, 0.0, 0.7);
    CHECK(s.U == 0.0);
    CHECK(s.V == 0.0);
  }

  SUBCASE("m = 0 returns the inputs exactly") {
    const TaubNutState s = taubnut_solve(0.3, 0.7, 0.0);
    CHECK(s.U == 0.3);
    CHECK(s.V == 0.7);
  }

  SUBCASE("forward-evaluated point inverts to the chosen (U,V)") {
    const double m = 0.5;
    const double x1 = std::exp(2.0 * m * 0.3) * 0.3;  // V = 0
    const TaubNutState s = taubnut_solve(x1, 0.0, m, 1e-13);
    CHECK(s.U == Approx(0.3).epsilon(1e-12));
    CHECK(s.V == Approx(0.0).scale(1.0).epsilon(1e-12));
  }

  SUBCASE("round trip on random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 0.6);
    for (int i = 0; i < 40; ++i) {
      const double m = 0.25 + 0.5 * u(rng);
      const double x1 = u(rng), x2 = u(rng);
      const TaubNutState s = taubnut_solve(x1, x2, m, 1e-13);
      CHECK(std::exp(2 * m * (s.U - s.V)) * s.U == Approx(x1).scale(1.0).epsilon(1e-11));
      CHECK(std::exp(2 * m * (s.V - s.U)) * s.V == Approx(x2).scale(1.0).epsilon(1e-11));
      CHECK(s.U >= 0.0);
      CHECK(s.V >= 0.0);
    }
  }

  SUBCASE("non-convergence is an error, not a NaN") {
    // x1 far below the fold of U e^{2mU} has no real preimage.
    CHECK_THROWS_AS((void)taubnut_solve(-2.0, 0.0, 0.5), domain_error);
  }
}

TEST_CASE("taubnut_gradient closed forms") {
  SUBCASE("origin") {
    TaubNutState s;
    s.m = 0.8;
    const Eigen::Vector2d g = taubnut_gradient(s);
    CHECK(g(0) == 1.0);
    CHECK(g(1) == 1.0);
  }

  SUBCASE("m = 0 is flat everywhere") {
    const TaubNutState s = taubnut_solve(0.4, 0.9, 0.0);
    const Eigen::Vector2d g = taubnut_gradient(s);
    CHECK(g(0) == 1.0);
    CHECK(g(1) == 1.0);
  }

  SUBCASE("x1 = 0.5, m = 0.5: dPhi/dx1 = e^{-U}") {
    const TaubNutState s = taubnut_solve(0.5, 0.0, 0.5, 1e-13);
    CHECK(s.V == Approx(0.0).scale(1.0).epsilon(1e-13));
    const Eigen::Vector2d g = taubnut_gradient(s);
    CHECK(g(0) == Approx(std::exp(-s.U)).epsilon(1e-12));
    CHECK(g(0) == Approx(0.7035).epsilon(2e-4));  // U = 0.35173...
  }
}

TEST_CASE("taubnut potential jets match finite differences") {
  const RotationInvariantPotential p = taubnut_potential(0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd x(2);
    x << u(rng), u(rng);
    const JetNd j = p.jets(x);
    CHECK((j.hess - j.hess.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (int k = 0; k < 2; ++k) {
      auto slice_value = [&](double t) {
        Eigen::VectorXd y = x;
        y(k) = t;
        return p.jets(y).f;
      };
      auto slice_grad0 = [&](double t) {
        Eigen::VectorXd y = x;
        y(k) = t;
        return p.jets(y).grad(0);
      };
      CHECK(j.grad(k) == Approx(testing::fd1(slice_value, x(k), 1e-6)).epsilon(1e-7));
      CHECK(j.hess(0, k) == Approx(testing::fd1(slice_grad0, x(k), 1e-6)).epsilon(1e-5));
    }
  }
}

TEST_CASE("hartogs potential matches the hyperbolic slice and validates F") {
  CatalogParams p;
  p.F = "1-x";
  p.n = 2;
  const RotationInvariantPotential h = catalog_rotation_invariant("hartogs", p);
  Eigen::VectorXd x(2);
  x << 0.1, 0.2;
  const JetNd j = h.jets(x);
  CHECK(j.f == Approx(-std::log(0.7)).epsilon(1e-14));
  CHECK(j.grad(0) == Approx(1.0 / 0.7).epsilon(1e-13));
  CHECK(j.grad(1) == Approx(1.0 / 0.7).epsilon(1e-13));
  CHECK(j.hess(0, 1) == Approx(1.0 / 0.49).epsilon(1e-13));

  CHECK_THROWS_AS((void)h.jets((Eigen::VectorXd(2) << 0.6, 0.5).finished()), domain_error);
}

TEST_CASE("hartogs pseudoconvexity condition") {
  SUBCASE("F = 1-x passes on [0,1)") {
    const PshCheck c = hartogs_pseudoconvexity_check(Expr::parse("1-x"), 0.999);
    CHECK(c.pass);
    CHECK(c.min_value > 0.0);
  }

  SUBCASE("F = 1-x+0.2x^2 passes near 0") {
    const PshCheck c = hartogs_pseudoconvexity_check(Expr::parse("1-x+0.2*x^2"), 0.5);
    CHECK(c.pass);
  }

  SUBCASE("constant F fails: the condition is 0, not > 0") {
    const PshCheck c = hartogs_pseudoconvexity_check(Expr::parse("1"), 0.5);
    CHECK_FALSE(c.pass);
    CHECK(c.first_failure_x == 0.0);
  }

  SUBCASE("non-positive F is an error") {
    CHECK_THROWS_AS((void)hartogs_pseudoconvexity_check(Expr::parse("0-x"), 0.5), domain_error);
  }
}

TEST_CASE("strict PSH at the origin") {
  CHECK(strict_psh_at_origin(catalog_radial("hyperbolic")));
  CHECK_FALSE(strict_psh_at_origin(catalog_radial("flat", CatalogParams{.c = -1.0})));
  CHECK(strict_psh_at_origin(taubnut_potential(0.5)));
  CHECK(strict_psh_at_origin(catalog_polarized("hyperbolic_plus_linear")));
}

TEST_CASE("rotation-invariant wrapper has equal gradient entries f'(sum x)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (const char* name : {"hyperbolic", "fubini_study", "quadratic_defect"}) {
    const RadialPotential f = catalog_radial(name);
    const RotationInvariantPotential w = as_rotation_invariant(f, 3);
    for (int i = 0; i < 10; ++i) {
      Eigen::VectorXd x(3);
      x << u(rng), u(rng), u(rng);
      const double expected = f.jets(x.sum()).d1;
      const Eigen::VectorXd g = w.jets(x).grad;
      for (int k = 0; k < 3; ++k) CHECK(g(k) == Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("catalog jets agree with finite differences on random in-domain points") {
  std::mt19937_64 rng(23);
  struct Entry {
    const char* name;
    CatalogParams params;
    double lo, hi;
  };
  const Entry entries[] = {
      {"hyperbolic", {}, -0.5, 0.8},
      {"fubini_study", {}, -0.5, 2.0},
      {"flat", CatalogParams{.c = 2.0}, -2.0, 2.0},
      {"scaled_hyperbolic", CatalogParams{.mu = 2.0}, -0.5, 0.8},
      {"quadratic_defect", {}, -1.0, 1.0},
      {"parabola_rotation", CatalogParams{.lambda0 = 1.0}, -0.3, 0.9 * kParabolaCap},
  };
  for (const Entry& e : entries) {
    const RadialPotential f = catalog_radial(e.name, e.params);
    std::uniform_real_distribution<double> u(e.lo, e.hi);
    auto value = [&](double t) { return f.jets(t).f; };
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      const Jet1d j = f.jets(x);
      const double g1 = testing::fd1(value, x);
      const double g2 = testing::fd2(value, x);
      CHECK(j.d1 == Approx(g1).epsilon(1e-6).scale(1.0));
      CHECK(j.d2 == Approx(g2).epsilon(1e-4).scale(1.0));
    }
  }
}
