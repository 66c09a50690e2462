#include "symdual/forms.hpp"

#include <cmath>

namespace symdual {

namespace {

Eigen::VectorXd abs2(const Eigen::VectorXcd& z) {
  return z.cwiseAbs2();
}

double sum_abs2(const Eigen::VectorXcd& z) {
  return z.squaredNorm();
}

}  // namespace

Eigen::MatrixXd real_rep(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd r(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double re = a(j, k).real(), im = a(j, k).imag();
      r(2 * j, 2 * k) = re;
      r(2 * j, 2 * k + 1) = -im;
      r(2 * j + 1, 2 * k) = im;
      r(2 * j + 1, 2 * k + 1) = re;
    }
  return r;
}

Eigen::VectorXd to_real(const Eigen::VectorXcd& z) {
  Eigen::VectorXd p(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    p(2 * j) = z(j).real();
    p(2 * j + 1) = z(j).imag();
  }
  return p;
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& p) {
  Eigen::VectorXcd z(p.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = {p(2 * j), p(2 * j + 1)};
  return z;
}

FormMatrix form_from_hermitian(const Eigen::MatrixXcd& h) {
  // omega(a,b) = -Im(a^T H conj(b)); with A = Re H (symmetric) and
  // B = Im H (antisymmetric) the (l,k) block over (u_l,v_l) x (u_k,v_k) is
  // [[-B, A], [-A, -B]].
  const Eigen::Index n = h.rows();
  FormMatrix out;
  out.n = static_cast<int>(n);
  out.omega.resize(2 * n, 2 * n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = h(l, k).real(), b = h(l, k).imag();
      out.omega(2 * l, 2 * k) = -b;
      out.omega(2 * l, 2 * k + 1) = a;
      out.omega(2 * l + 1, 2 * k) = -a;
      out.omega(2 * l + 1, 2 * k + 1) = -b;
    }
  return out;
}

FormMatrix flat_form(int n) {
  return form_from_hermitian(Eigen::MatrixXcd::Identity(n, n));
}

Eigen::MatrixXcd kahler_hermitian_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z) {
  const JetNd phi = p.jets(abs2(z));
  Eigen::MatrixXcd h = phi.hess.cast<std::complex<double>>().cwiseProduct(z.conjugate() * z.transpose());
  h += phi.grad.cast<std::complex<double>>().asDiagonal();
  return h;
}

Eigen::MatrixXcd kahler_hermitian_at(const RadialPotential& p, const Eigen::VectorXcd& z) {
  const Jet1d f = p.jets(sum_abs2(z));
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd h = f.d2 * (z.conjugate() * z.transpose());
  h += f.d1 * Eigen::MatrixXcd::Identity(n, n);
  return h;
}

FormMatrix kahler_form_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z) {
  return form_from_hermitian(kahler_hermitian_at(p, z));
}

FormMatrix kahler_form_at(const RadialPotential& p, const Eigen::VectorXcd& z) {
  return form_from_hermitian(kahler_hermitian_at(p, z));
}

FormMatrix dual_form_at(const RadialPotential& p, const Eigen::VectorXcd& z) {
  const Jet1d f = p.jets(-sum_abs2(z));
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd h = -f.d2 * (z.conjugate() * z.transpose());
  h += f.d1 * Eigen::MatrixXcd::Identity(n, n);
  return form_from_hermitian(h);
}

FormMatrix dual_form_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z) {
  const JetNd phi = p.jets(-abs2(z));
  Eigen::MatrixXcd h = (-phi.hess).cast<std::complex<double>>().cwiseProduct(z.conjugate() * z.transpose());
  h += phi.grad.cast<std::complex<double>>().asDiagonal();
  return form_from_hermitian(h);
}

OperatorMatrix b_operator_at(const RadialPotential& p, const Eigen::VectorXcd& z) {
  const Jet1d f = p.jets(sum_abs2(z));
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd m = f.d2 * (z * z.adjoint());
  m += f.d1 * Eigen::MatrixXcd::Identity(n, n);
  return {static_cast<int>(n), real_rep(m)};
}

OperatorMatrix b_star_operator_at(const RadialPotential& p, const Eigen::VectorXcd& z) {
  const Jet1d f = p.jets(-sum_abs2(z));
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd m = -f.d2 * (z * z.adjoint());
  m += f.d1 * Eigen::MatrixXcd::Identity(n, n);
  return {static_cast<int>(n), real_rep(m)};
}

double gaussian_curvature_radial(const RadialPotential& p, double x) {
  const Jet1d f = p.jets(x);
  // Jet of S = (x f')' to order 2, using derivatives of f through order 4.
  const Jet1d xfp = Jet1d::variable(x) * f.derivative();
  const Jet1d s(xfp.d1, xfp.d2, xfp.d3);
  if (!(s.f > 0))
    throw domain_error("curvature undefined: S(x) = " + std::to_string(s.f) + " <= 0 at x=" + std::to_string(x));
  const Jet1d logs = log(s);
  return -(2.0 / s.f) * (x * logs.d2 + logs.d1);
}

namespace {

bool positive_definite(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  return es.eigenvalues().minCoeff() > 0;
}

}  // namespace

bool strict_psh_at_origin(const RadialPotential& p) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(1);
  return positive_definite(kahler_hermitian_at(p, zero));
}

bool strict_psh_at_origin(const RotationInvariantPotential& p) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(p.n());
  return positive_definite(kahler_hermitian_at(p, zero));
}

bool strict_psh_at_origin(const PolarizedPotential& p) {
  // H_lk = d^2 Phi / dz_l dzbar_k at 0 from second central differences of the
  // real potential Phi(z) = Re P(z, conj z).
  const int n = p.n();
  const double h = 1e-4;
  auto phi = [&](const Eigen::VectorXd& q) { return p.diagonal(to_complex(q)).real(); };
  Eigen::MatrixXd hess(2 * n, 2 * n);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2 * n);
  const double phi0 = phi(zero);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      Eigen::VectorXd pp = zero, pm = zero, mp = zero, mm = zero;
      pp(a) += h; pp(b) += h;
      pm(a) += h; pm(b) -= h;
      mp(a) -= h; mp(b) += h;
      mm(a) -= h; mm(b) -= h;
      double v;
      if (a == b) {
        Eigen::VectorXd up = zero, dn = zero;
        up(a) += h;
        dn(a) -= h;
        v = (phi(up) - 2.0 * phi0 + phi(dn)) / (h * h);
      } else {
        v = (phi(pp) - phi(pm) - phi(mp) + phi(mm)) / (4.0 * h * h);
      }
      hess(a, b) = v;
      hess(b, a) = v;
    }
  Eigen::MatrixXcd hc(n, n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      const double re = hess(2 * l, 2 * k) + hess(2 * l + 1, 2 * k + 1);
      const double im = hess(2 * l, 2 * k + 1) - hess(2 * l + 1, 2 * k);
      hc(l, k) = 0.25 * std::complex<double>(re, im);
    }
  return positive_definite(hc);
}

}  // namespace symdual
