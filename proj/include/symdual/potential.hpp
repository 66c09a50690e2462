#pragma once

// Kahler potentials in three shapes: radial f(|z|^2), rotation invariant
// Phi~(|z_1|^2,...,|z_n|^2), and polarized P(z,w) analytic in both slots.
// Evaluators return jets at the requested point; every evaluation is checked
// against the potential's declared domain in addition to the intrinsic
// domain of the defining formula.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "symdual/jet.hpp"
#include "symdual/jetn.hpp"

namespace symdual {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return lo < x && x < hi; }
  Interval reflected() const { return {-hi, -lo}; }
};

struct Box {
  std::vector<Interval> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  bool contains(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) return false;
    for (int k = 0; k < dim(); ++k)
      if (!axes[static_cast<size_t>(k)].contains(x(k))) return false;
    return true;
  }
  Box reflected() const {
    Box r;
    for (const Interval& a : axes) r.axes.push_back(a.reflected());
    return r;
  }
};

// Radial potential Phi(z) = f(x), x = |z|^2.  The evaluator must return the
// jet of f at the given x (value and derivatives to order 3).  eval_domain is
// the maximal interval on which f is real analytic and evaluable; the metric
// is strictly PSH on [0, psh_hi).
class RadialPotential {
 public:
  RadialPotential() = default;
  RadialPotential(std::string name, std::function<Jet1d(double)> f, Interval eval_domain, double psh_hi)
      : name_(std::move(name)), f_(std::move(f)), eval_domain_(eval_domain), psh_hi_(psh_hi) {}

  const std::string& name() const { return name_; }
  const Interval& eval_domain() const { return eval_domain_; }
  double psh_hi() const { return psh_hi_; }

  Jet1d jets(double x) const {
    if (!eval_domain_.contains(x))
      throw domain_error("x=" + std::to_string(x) + " outside the domain of potential '" + name_ + "'");
    return f_(x);
  }

  double value(double x) const { return jets(x).f; }
  double d1(double x) const { return jets(x).d1; }
  double d2(double x) const { return jets(x).d2; }

 private:
  std::string name_;
  std::function<Jet1d(double)> f_;
  Interval eval_domain_;
  double psh_hi_ = std::numeric_limits<double>::infinity();
};

// Rotation invariant potential Phi(z) = Phi~(x_1,...,x_n), x_k = |z_k|^2.
// The evaluator returns value, gradient and symmetric Hessian at x.
class RotationInvariantPotential {
 public:
  RotationInvariantPotential() = default;
  RotationInvariantPotential(std::string name, int n, std::function<JetNd(const Eigen::VectorXd&)> phi, Box domain)
      : name_(std::move(name)), n_(n), phi_(std::move(phi)), domain_(std::move(domain)) {}

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  const Box& domain() const { return domain_; }

  JetNd jets(const Eigen::VectorXd& x) const {
    if (x.size() != n_)
      throw domain_error("potential '" + name_ + "' expects " + std::to_string(n_) + " variables");
    if (!domain_.contains(x)) throw domain_error("point outside the domain of potential '" + name_ + "'");
    return phi_(x);
  }

  double value(const Eigen::VectorXd& x) const { return jets(x).f; }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return jets(x).grad; }

 private:
  std::string name_;
  int n_ = 0;
  std::function<JetNd(const Eigen::VectorXd&)> phi_;
  Box domain_;
};

// Polarized potential P(z,w), analytic in all arguments, with the real
// potential recovered on the diagonal w = conj(z).
class PolarizedPotential {
 public:
  using Evaluator = std::function<std::complex<double>(const Eigen::VectorXcd&, const Eigen::VectorXcd&)>;

  PolarizedPotential() = default;
  PolarizedPotential(std::string name, int n, Evaluator p) : name_(std::move(name)), n_(n), p_(std::move(p)) {}

  const std::string& name() const { return name_; }
  int n() const { return n_; }

  std::complex<double> operator()(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) const {
    if (z.size() != n_ || w.size() != n_)
      throw domain_error("polarized potential '" + name_ + "' expects " + std::to_string(n_) + " arguments");
    return p_(z, w);
  }

  // P(z, conj z), the real potential when P is a genuine polarization.
  std::complex<double> diagonal(const Eigen::VectorXcd& z) const { return (*this)(z, z.conjugate()); }

 private:
  std::string name_;
  int n_ = 0;
  Evaluator p_;
};

// Phi~(x_1,...,x_n) = f(x_1+...+x_n) for a radial f.
inline RotationInvariantPotential as_rotation_invariant(const RadialPotential& f, int n) {
  Box box;
  box.axes.assign(static_cast<size_t>(n), Interval{});
  auto eval = [f](const Eigen::VectorXd& x) {
    JetNd s = JetNd::constant(0.0, x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) s = s + JetNd::variable(x(i), i, x.size());
    return chain(f.jets(s.f), s);
  };
  return RotationInvariantPotential(f.name(), n, std::move(eval), std::move(box));
}

inline RotationInvariantPotential scale(const RotationInvariantPotential& p, double factor) {
  auto eval = [p, factor](const Eigen::VectorXd& x) { return p.jets(x) * factor; };
  return RotationInvariantPotential(std::to_string(factor) + "*" + p.name(), p.n(), std::move(eval), p.domain());
}

// Phi~ = c * (x_1 + ... + x_n), the flat potential in n variables.
inline RotationInvariantPotential flat_rotation_invariant(int n, double c = 1.0) {
  Box box;
  box.axes.assign(static_cast<size_t>(n), Interval{});
  auto eval = [c](const Eigen::VectorXd& x) {
    JetNd s = JetNd::constant(0.0, x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) s = s + JetNd::variable(x(i), i, x.size());
    return s * c;
  };
  return RotationInvariantPotential("flat", n, std::move(eval), std::move(box));
}

// Phi~(x) = c.x + x^T A x on the ball |x| < radius; A is symmetrized.
inline RotationInvariantPotential polynomial_rotation_invariant(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                                                double radius = 0.3,
                                                                const std::string& name = "poly") {
  const int n = static_cast<int>(c.size());
  Box box;
  box.axes.assign(static_cast<size_t>(n), Interval{-radius, radius});
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  auto eval = [c, sym](const Eigen::VectorXd& x) {
    return JetNd(c.dot(x) + x.dot(sym * x), c + 2.0 * sym * x, 2.0 * sym);
  };
  return RotationInvariantPotential(name, n, std::move(eval), std::move(box));
}

}  // namespace symdual
