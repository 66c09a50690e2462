#pragma once

// Shared test utilities: finite-difference oracles, random generators for
// jets, unitaries and polynomial potentials.  Everything here is independent
// of the jet implementation paths it is used to check.

#include <Eigen/Dense>

#include <functional>
#include <random>

#include "symdual/jet.hpp"
#include "symdual/potential.hpp"

namespace symdual::testing {

// Central first difference, O(h^2).
inline double fd1(const std::function<double(double)>& f, double x, double h = 0.0) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Central second difference, O(h^2).
inline double fd2(const std::function<double(double)>& f, double x, double h = 0.0) {
  if (h <= 0.0) h = 1e-4 * std::max(1.0, std::abs(x));
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline Jet1d random_jet(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = std::complex<double>(g(rng), g(rng));
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

inline Eigen::VectorXcd random_ball_point(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd dir(2 * n);
  for (int k = 0; k < 2 * n; ++k) dir(k) = g(rng);
  dir *= radius * std::pow(u(rng), 1.0 / (2.0 * n)) / dir.norm();
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z(j) = {dir(2 * j), dir(2 * j + 1)};
  return z;
}

// Random strictly-PSH-at-0 polynomial potential: c_k in [0.5, 2],
// |a_kl| <= 0.2, valid on the ball of radius 0.3.
inline RotationInvariantPotential random_polynomial_potential(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uc(0.5, 2.0);
  std::uniform_real_distribution<double> ua(-0.2, 0.2);
  Eigen::VectorXd c(n);
  Eigen::MatrixXd a(n, n);
  for (int k = 0; k < n; ++k) c(k) = uc(rng);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) a(k, l) = ua(rng);
  return polynomial_rotation_invariant(c, a, 0.3);
}

}  // namespace symdual::testing
