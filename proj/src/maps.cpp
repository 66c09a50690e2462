#include "symdual/maps.hpp"

#include <cmath>

namespace symdual {

void wirtinger_block(Eigen::MatrixXd& jac, Eigen::Index j, Eigen::Index k, std::complex<double> dz,
                     std::complex<double> dzbar) {
  // dF_j/du_k = dF_j/dz_k + dF_j/dzbar_k, dF_j/dv_k = i (dF_j/dz_k - dF_j/dzbar_k).
  const std::complex<double> du = dz + dzbar;
  const std::complex<double> dv = std::complex<double>(0, 1) * (dz - dzbar);
  jac(2 * j, 2 * k) = du.real();
  jac(2 * j + 1, 2 * k) = du.imag();
  jac(2 * j, 2 * k + 1) = dv.real();
  jac(2 * j + 1, 2 * k + 1) = dv.imag();
}

SpecialMap::SpecialMap(int n, std::vector<Coeff> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != n_)
    throw domain_error("special map needs one coefficient function per coordinate");
}

Eigen::VectorXcd SpecialMap::operator()(const Eigen::VectorXcd& z) const {
  const Eigen::VectorXd x = z.cwiseAbs2();
  Eigen::VectorXcd w(n_);
  for (int j = 0; j < n_; ++j) w(j) = coeffs_[static_cast<size_t>(j)](x).f * z(j);
  return w;
}

double SpecialMap::coefficient(int j, const Eigen::VectorXd& x) const {
  return coeffs_[static_cast<size_t>(j)](x).f;
}

Eigen::MatrixXd SpecialMap::jacobian(const Eigen::VectorXcd& z) const {
  const Eigen::VectorXd x = z.cwiseAbs2();
  Eigen::MatrixXd jac(2 * n_, 2 * n_);
  for (int j = 0; j < n_; ++j) {
    const JetNd psi = coeffs_[static_cast<size_t>(j)](x);
    for (int k = 0; k < n_; ++k) {
      // dPsi_j/dz_k = psi_{j,k} zbar_k z_j + psi_j delta_jk,
      // dPsi_j/dzbar_k = psi_{j,k} z_k z_j   (x_k = z_k zbar_k).
      const std::complex<double> common = psi.grad(k) * z(j);
      std::complex<double> dz = common * std::conj(z(k));
      const std::complex<double> dzbar = common * z(k);
      if (j == k) dz += psi.f;
      wirtinger_block(jac, j, k, dz, dzbar);
    }
  }
  return jac;
}

PhaseUnitaryMap::PhaseUnitaryMap(std::function<Jet1d(double)> g, Eigen::MatrixXcd a)
    : g_(std::move(g)), a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw domain_error("gauge matrix must be square");
  const double defect =
      (a_.adjoint() * a_ - Eigen::MatrixXcd::Identity(a_.rows(), a_.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-12)
    throw domain_error("gauge matrix is not unitary: ||A^H A - I|| = " + std::to_string(defect));
}

Eigen::VectorXcd PhaseUnitaryMap::operator()(const Eigen::VectorXcd& z) const {
  const double t = z.squaredNorm();
  const std::complex<double> phase = std::exp(std::complex<double>(0, g_(t).f));
  return phase * (a_ * z);
}

Eigen::MatrixXd PhaseUnitaryMap::jacobian(const Eigen::VectorXcd& z) const {
  const Eigen::Index n = a_.rows();
  // Chain through y = A z (complex linear, |y|^2 = |z|^2 by unitarity) and
  // P(y)_j = e^{i g(t)} y_j with t = |y|^2:
  //   dP_j/dy_k = e^{ig} (delta_jk + i g' y_j ybar_k),
  //   dP_j/dybar_k = e^{ig} i g' y_j y_k.
  const Eigen::VectorXcd y = a_ * z;
  const Jet1d g = g_(y.squaredNorm());
  const std::complex<double> phase = std::exp(std::complex<double>(0, g.f));
  const std::complex<double> igp = std::complex<double>(0, g.d1);
  Eigen::MatrixXd jp(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      std::complex<double> dz = phase * igp * y(j) * std::conj(y(k));
      const std::complex<double> dzbar = phase * igp * y(j) * y(k);
      if (j == k) dz += phase;
      wirtinger_block(jp, j, k, dz, dzbar);
    }
  Eigen::MatrixXd ja(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) wirtinger_block(ja, j, k, a_(j, k), 0.0);
  return jp * ja;
}

ComposedMap::ComposedMap(MapPtr outer, MapPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (!outer_ || !inner_) throw domain_error("composed map needs two maps");
  if (outer_->dim() != inner_->dim()) throw domain_error("composed map dimension mismatch");
}

}  // namespace symdual
