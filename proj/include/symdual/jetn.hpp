#pragma once

// Multivariate forward-mode jet: value, gradient and symmetric Hessian of a
// scalar function of n real variables.  Univariate outer functions are
// applied through chain(), so only +,-,*,/ need dedicated rules.

#include <Eigen/Dense>

#include "symdual/jet.hpp"

namespace symdual {

template <typename S = double>
struct JetN {
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  S f{};
  Vec grad;
  Mat hess;

  JetN() = default;
  JetN(S f_, Vec grad_, Mat hess_) : f(f_), grad(std::move(grad_)), hess(std::move(hess_)) {}

  static JetN constant(S c, Eigen::Index n) { return {c, Vec::Zero(n), Mat::Zero(n, n)}; }

  static JetN variable(S x, Eigen::Index i, Eigen::Index n) {
    JetN j = constant(x, n);
    j.grad(i) = S(1);
    return j;
  }

  Eigen::Index vars() const { return grad.size(); }
};

using JetNd = JetN<double>;

template <typename S>
JetN<S> operator-(const JetN<S>& a) {
  return {-a.f, -a.grad, -a.hess};
}

template <typename S>
JetN<S> operator+(const JetN<S>& a, const JetN<S>& b) {
  return {a.f + b.f, a.grad + b.grad, a.hess + b.hess};
}

template <typename S>
JetN<S> operator-(const JetN<S>& a, const JetN<S>& b) {
  return {a.f - b.f, a.grad - b.grad, a.hess - b.hess};
}

template <typename S>
JetN<S> operator*(const JetN<S>& a, const JetN<S>& b) {
  return {a.f * b.f,
          a.f * b.grad + b.f * a.grad,
          a.f * b.hess + b.f * a.hess + a.grad * b.grad.transpose() + b.grad * a.grad.transpose()};
}

// h(u) for univariate h given by value and first two derivatives at u.f.
template <typename S>
JetN<S> chain(S h0, S h1, S h2, const JetN<S>& u) {
  return {h0, h1 * u.grad, h1 * u.hess + h2 * (u.grad * u.grad.transpose())};
}

// h(u) where h is carried as a univariate jet evaluated at u.f.
template <typename S>
JetN<S> chain(const Jet1<S>& h, const JetN<S>& u) {
  return chain(h.f, h.d1, h.d2, u);
}

template <typename S>
JetN<S> inverse(const JetN<S>& a) {
  if (a.f == S(0)) throw domain_error("jet division by zero value");
  const S u = S(1) / a.f;
  return chain(u, -u * u, S(2) * u * u * u, a);
}

template <typename S>
JetN<S> operator/(const JetN<S>& a, const JetN<S>& b) {
  return a * inverse(b);
}

template <typename S> JetN<S> operator+(const JetN<S>& a, S c) { return {a.f + c, a.grad, a.hess}; }
template <typename S> JetN<S> operator+(S c, const JetN<S>& a) { return a + c; }
template <typename S> JetN<S> operator-(const JetN<S>& a, S c) { return {a.f - c, a.grad, a.hess}; }
template <typename S> JetN<S> operator-(S c, const JetN<S>& a) { return {c - a.f, -a.grad, -a.hess}; }
template <typename S> JetN<S> operator*(const JetN<S>& a, S c) { return {a.f * c, a.grad * c, a.hess * c}; }
template <typename S> JetN<S> operator*(S c, const JetN<S>& a) { return a * c; }
template <typename S> JetN<S> operator/(const JetN<S>& a, S c) {
  if (c == S(0)) throw domain_error("jet division by zero constant");
  return a * (S(1) / c);
}
template <typename S> JetN<S> operator/(S c, const JetN<S>& a) { return inverse(a) * c; }

template <typename S>
JetN<S> exp(const JetN<S>& a) {
  using std::exp;
  const S e = exp(a.f);
  return chain(e, e, e, a);
}

template <typename S>
JetN<S> log(const JetN<S>& a) {
  using std::log;
  if (!(a.f > S(0))) throw domain_error("log of non-positive value " + std::to_string(double(a.f)));
  const S u = S(1) / a.f;
  return chain(log(a.f), u, -u * u, a);
}

template <typename S>
JetN<S> sqrt(const JetN<S>& a) {
  using std::sqrt;
  if (!(a.f > S(0))) throw domain_error("sqrt of non-positive value " + std::to_string(double(a.f)));
  const S r = sqrt(a.f);
  const S u = S(1) / a.f;
  return chain(r, S(0.5) * r * u, S(-0.25) * r * u * u, a);
}

template <typename S>
JetN<S> pow(const JetN<S>& a, double p) {
  const long ip = std::lround(p);
  if (double(ip) == p && std::abs(ip) <= 64) {
    if (ip == 0) return JetN<S>::constant(S(1), a.vars());
    JetN<S> acc = JetN<S>::constant(S(1), a.vars());
    const JetN<S> base = ip > 0 ? a : inverse(a);
    for (long i = 0; i < std::abs(ip); ++i) acc = acc * base;
    return acc;
  }
  return exp(JetN<S>::constant(S(p), a.vars()) * log(a));
}

}  // namespace symdual
