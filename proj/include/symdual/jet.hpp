#pragma once

// Forward-mode jets: truncated Taylor carriers holding a value together with
// derivatives up to order 4 (univariate) or order 2 (multivariate).  All
// arithmetic propagates derivatives exactly via the Leibniz and chain rules;
// derivative slots hold plain derivatives f', f'', ... (not Taylor
// coefficients).

#include <cmath>
#include <stdexcept>
#include <string>

namespace symdual {

// Thrown whenever an evaluation leaves the real domain of an operation
// (log of a non-positive value, sqrt of a negative, division by zero) or the
// declared domain of a potential.  Domain violations are never converted to
// NaN propagation.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename S = double>
struct Jet1 {
  S f{};   // value
  S d1{};  // first derivative
  S d2{};  // second derivative
  S d3{};  // third derivative
  S d4{};  // fourth derivative (radial curvature needs S'' = 3f''' + x f'''')

  constexpr Jet1() = default;
  constexpr Jet1(S f_, S d1_, S d2_ = S(0), S d3_ = S(0), S d4_ = S(0))
      : f(f_), d1(d1_), d2(d2_), d3(d3_), d4(d4_) {}

  static constexpr Jet1 constant(S c) { return Jet1(c, S(0)); }
  static constexpr Jet1 variable(S x) { return Jet1(x, S(1)); }

  // Jet of the derivative: one order lower, exact in the retained slots.
  constexpr Jet1 derivative() const { return Jet1(d1, d2, d3, d4, S(0)); }
};

using Jet1d = Jet1<double>;

template <typename S>
constexpr Jet1<S> operator-(const Jet1<S>& a) {
  return {-a.f, -a.d1, -a.d2, -a.d3, -a.d4};
}

template <typename S>
constexpr Jet1<S> operator+(const Jet1<S>& a, const Jet1<S>& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3, a.d4 + b.d4};
}

template <typename S>
constexpr Jet1<S> operator-(const Jet1<S>& a, const Jet1<S>& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3, a.d4 - b.d4};
}

// Leibniz rule through order 4.
template <typename S>
constexpr Jet1<S> operator*(const Jet1<S>& a, const Jet1<S>& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + S(2) * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + S(3) * a.d2 * b.d1 + S(3) * a.d1 * b.d2 + a.f * b.d3,
          a.d4 * b.f + S(4) * a.d3 * b.d1 + S(6) * a.d2 * b.d2 + S(4) * a.d1 * b.d3 + a.f * b.d4};
}

// h(g(x)) by Faa di Bruno through order 4; h given by its derivatives at g.f.
template <typename S>
constexpr Jet1<S> chain(S h0, S h1, S h2, S h3, S h4, const Jet1<S>& g) {
  const S g1 = g.d1, g2 = g.d2, g3 = g.d3, g4 = g.d4;
  const S g1sq = g1 * g1;
  return {h0,
          h1 * g1,
          h2 * g1sq + h1 * g2,
          h3 * g1sq * g1 + S(3) * h2 * g1 * g2 + h1 * g3,
          h4 * g1sq * g1sq + S(6) * h3 * g1sq * g2 + h2 * (S(4) * g1 * g3 + S(3) * g2 * g2) + h1 * g4};
}

template <typename S>
constexpr Jet1<S> inverse(const Jet1<S>& a) {
  if (a.f == S(0)) throw domain_error("jet division by zero value");
  const S u = S(1) / a.f;
  const S u2 = u * u;
  return chain(u, -u2, S(2) * u2 * u, S(-6) * u2 * u2, S(24) * u2 * u2 * u, a);
}

template <typename S>
constexpr Jet1<S> operator/(const Jet1<S>& a, const Jet1<S>& b) {
  return a * inverse(b);
}

template <typename S> constexpr Jet1<S> operator+(const Jet1<S>& a, S c) { return {a.f + c, a.d1, a.d2, a.d3, a.d4}; }
template <typename S> constexpr Jet1<S> operator+(S c, const Jet1<S>& a) { return a + c; }
template <typename S> constexpr Jet1<S> operator-(const Jet1<S>& a, S c) { return {a.f - c, a.d1, a.d2, a.d3, a.d4}; }
template <typename S> constexpr Jet1<S> operator-(S c, const Jet1<S>& a) { return -(a - c); }
template <typename S> constexpr Jet1<S> operator*(const Jet1<S>& a, S c) {
  return {a.f * c, a.d1 * c, a.d2 * c, a.d3 * c, a.d4 * c};
}
template <typename S> constexpr Jet1<S> operator*(S c, const Jet1<S>& a) { return a * c; }
template <typename S> constexpr Jet1<S> operator/(const Jet1<S>& a, S c) {
  if (c == S(0)) throw domain_error("jet division by zero constant");
  return a * (S(1) / c);
}
template <typename S> constexpr Jet1<S> operator/(S c, const Jet1<S>& a) { return inverse(a) * c; }

template <typename S>
Jet1<S> exp(const Jet1<S>& a) {
  using std::exp;
  const S e = exp(a.f);
  return chain(e, e, e, e, e, a);
}

template <typename S>
Jet1<S> log(const Jet1<S>& a) {
  using std::log;
  if (!(a.f > S(0))) throw domain_error("log of non-positive value " + std::to_string(double(a.f)));
  const S u = S(1) / a.f;
  const S u2 = u * u;
  return chain(log(a.f), u, -u2, S(2) * u2 * u, S(-6) * u2 * u2, a);
}

template <typename S>
Jet1<S> sqrt(const Jet1<S>& a) {
  using std::sqrt;
  if (!(a.f > S(0))) throw domain_error("sqrt of non-positive value " + std::to_string(double(a.f)));
  const S r = sqrt(a.f);
  const S u = S(1) / a.f;
  return chain(r, S(0.5) * r * u, S(-0.25) * r * u * u, S(0.375) * r * u * u * u,
               S(-0.9375) * r * u * u * u * u, a);
}

// Integer exponents go through repeated multiplication so negative bases stay
// legal; anything else needs a positive base and routes through exp/log.
template <typename S>
Jet1<S> pow(const Jet1<S>& a, double p) {
  const long ip = std::lround(p);
  if (double(ip) == p && std::abs(ip) <= 64) {
    if (ip == 0) return Jet1<S>::constant(S(1));
    Jet1<S> acc = Jet1<S>::constant(S(1));
    const Jet1<S> base = ip > 0 ? a : inverse(a);
    for (long i = 0; i < std::abs(ip); ++i) acc = acc * base;
    return acc;
  }
  return exp(Jet1<S>::constant(S(p)) * log(a));
}

}  // namespace symdual
