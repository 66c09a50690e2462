#pragma once

// Differentiable maps of a neighbourhood of 0 in C^n, with exact real
// Jacobians in the fixed (u_1, v_1, ..., u_n, v_n) coordinates.  Jacobians
// are assembled from Wirtinger derivatives; coefficient and phase functions
// supply their derivatives through jets, so the "jets" Jacobian scheme is
// exact up to rounding.

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

#include "symdual/jet.hpp"
#include "symdual/jetn.hpp"

namespace symdual {

class Map {
 public:
  virtual ~Map() = default;
  virtual int dim() const = 0;
  virtual Eigen::VectorXcd operator()(const Eigen::VectorXcd& z) const = 0;
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXcd& z) const = 0;
};

using MapPtr = std::shared_ptr<const Map>;

class IdentityMap final : public Map {
 public:
  explicit IdentityMap(int n) : n_(n) {}
  int dim() const override { return n_; }
  Eigen::VectorXcd operator()(const Eigen::VectorXcd& z) const override { return z; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXcd&) const override {
    return Eigen::MatrixXd::Identity(2 * n_, 2 * n_);
  }

 private:
  int n_;
};

// Special map Psi_j(z) = psi~_j(x_1,...,x_n) z_j with rotation invariant real
// coefficient functions psi~_j, each supplied as a jet evaluator (value and
// gradient are used; the Hessian slot is ignored).
class SpecialMap final : public Map {
 public:
  using Coeff = std::function<JetNd(const Eigen::VectorXd&)>;

  SpecialMap(int n, std::vector<Coeff> coeffs);

  int dim() const override { return n_; }
  Eigen::VectorXcd operator()(const Eigen::VectorXcd& z) const override;
  Eigen::MatrixXd jacobian(const Eigen::VectorXcd& z) const override;

  // psi~_j at x.
  double coefficient(int j, const Eigen::VectorXd& x) const;

 private:
  int n_;
  std::vector<Coeff> coeffs_;
};

// z -> e^{i g(|z|^2)} A z with radial phase g (jet evaluator, g' used) and
// unitary A.  Construction rejects A with ||A^H A - I||_inf > 1e-12.
class PhaseUnitaryMap final : public Map {
 public:
  PhaseUnitaryMap(std::function<Jet1d(double)> g, Eigen::MatrixXcd a);

  int dim() const override { return static_cast<int>(a_.rows()); }
  Eigen::VectorXcd operator()(const Eigen::VectorXcd& z) const override;
  Eigen::MatrixXd jacobian(const Eigen::VectorXcd& z) const override;

 private:
  std::function<Jet1d(double)> g_;
  Eigen::MatrixXcd a_;
};

class ComposedMap final : public Map {
 public:
  ComposedMap(MapPtr outer, MapPtr inner);

  int dim() const override { return inner_->dim(); }
  Eigen::VectorXcd operator()(const Eigen::VectorXcd& z) const override { return (*outer_)((*inner_)(z)); }
  Eigen::MatrixXd jacobian(const Eigen::VectorXcd& z) const override {
    return outer_->jacobian((*inner_)(z)) * inner_->jacobian(z);
  }

 private:
  MapPtr outer_, inner_;
};

// Real Jacobian block of dF_j over (u_k, v_k) from the Wirtinger pair
// (dF_j/dz_k, dF_j/dzbar_k).
void wirtinger_block(Eigen::MatrixXd& jac, Eigen::Index j, Eigen::Index k, std::complex<double> dz,
                     std::complex<double> dzbar);

}  // namespace symdual
