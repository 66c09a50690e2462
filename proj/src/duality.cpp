#include "symdual/duality.hpp"

#include <cmath>
#include <random>

#include "symdual/forms.hpp"

namespace symdual {

RadialPotential dual_radial(const RadialPotential& f) {
  const Interval dom = f.eval_domain();
  if (!(dom.lo < 0.0))
    throw domain_error("potential '" + f.name() + "' is not defined on any (-eps, 0]; no radial dual");
  auto eval = [f](double x) {
    const Jet1d g = f.jets(-x);
    return Jet1d(-g.f, g.d1, -g.d2, g.d3, -g.d4);
  };
  // The dual is strictly PSH where S*(x) = S(-x) > 0, i.e. on the reflection
  // of the PSH interval; the evaluator domain is the exact reflection.
  const double psh_hi = std::min(-dom.lo, std::numeric_limits<double>::infinity());
  return RadialPotential(f.name() + "_dual", std::move(eval), dom.reflected(), psh_hi);
}

RotationInvariantPotential dual_rotation_invariant(const RotationInvariantPotential& p) {
  auto eval = [p](const Eigen::VectorXd& x) {
    const JetNd g = p.jets(-x);
    return JetNd(-g.f, g.grad, -g.hess);
  };
  return RotationInvariantPotential(p.name() + "_dual", p.n(), std::move(eval), p.domain().reflected());
}

PolarizedPotential dual_polarized(const PolarizedPotential& p) {
  auto eval = [p](const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) { return -p(z, -w); };
  return PolarizedPotential(p.name() + "_dual", p.n(), std::move(eval));
}

RealnessReport realness_report(const PolarizedPotential& p, double radius, int count, std::uint64_t seed,
                               double tol) {
  const int n = p.n();
  std::vector<Eigen::VectorXcd> pts;
  for (int j = 0; j < n; ++j) {
    for (const std::complex<double> dir : {std::complex<double>(1, 0), std::complex<double>(-1, 0),
                                           std::complex<double>(0, 1), std::complex<double>(0, -1)}) {
      Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
      z(j) = radius * dir;
      pts.push_back(z);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  while (static_cast<int>(pts.size()) < 4 * n + count) {
    Eigen::VectorXcd z(n);
    for (int j = 0; j < n; ++j) z(j) = radius * std::complex<double>(unit(rng), unit(rng)) / std::sqrt(2.0 * n);
    pts.push_back(z);
  }
  RealnessReport rep;
  rep.worst_z = Eigen::VectorXcd::Zero(n);
  for (const auto& z : pts) {
    const double im = std::abs(p.diagonal(z).imag());
    if (im > rep.max_abs_im) {
      rep.max_abs_im = im;
      rep.worst_z = z;
    }
  }
  rep.real = rep.max_abs_im < tol;
  return rep;
}

namespace {

SpecialMap::Coeff canonical_coeff(const RotationInvariantPotential& p, double lambda, int k) {
  return [p, lambda, k](const Eigen::VectorXd& x) {
    const JetNd phi = p.jets(x);
    const JetNd dk(phi.grad(k), phi.hess.row(k).transpose(), Eigen::MatrixXd::Zero(x.size(), x.size()));
    if (!(lambda * dk.f > 0))
      throw domain_error("canonical map: lambda dPhi~/dx_" + std::to_string(k + 1) +
                         " = " + std::to_string(lambda * dk.f) + " is not positive");
    return sqrt(lambda * dk);
  };
}

}  // namespace

std::shared_ptr<const SpecialMap> special_map_from_potential(const RotationInvariantPotential& p, double lambda) {
  std::vector<SpecialMap::Coeff> coeffs;
  for (int k = 0; k < p.n(); ++k) coeffs.push_back(canonical_coeff(p, lambda, k));
  return std::make_shared<SpecialMap>(p.n(), std::move(coeffs));
}

std::shared_ptr<const SpecialMap> special_map_from_potential(const RadialPotential& f, int n, double lambda) {
  auto coeff = [f, lambda](const Eigen::VectorXd& x) {
    const Jet1d fx = f.jets(x.sum());
    // psi~ = sqrt(lambda f'(s)), s = sum x_k: gradient is lambda f''/(2 psi) in
    // every slot.
    if (!(lambda * fx.d1 > 0))
      throw domain_error("canonical map: lambda f' = " + std::to_string(lambda * fx.d1) + " is not positive");
    const double psi = std::sqrt(lambda * fx.d1);
    const double slope = lambda * fx.d2 / (2.0 * psi);
    return JetNd(psi, Eigen::VectorXd::Constant(x.size(), slope),
                 Eigen::MatrixXd::Zero(x.size(), x.size()));
  };
  std::vector<SpecialMap::Coeff> coeffs(static_cast<size_t>(n), coeff);
  return std::make_shared<SpecialMap>(n, std::move(coeffs));
}

double residual_radial(const RadialPotential& f, double lambda, double x) {
  const double fp = f.jets(x).d1;
  const double inner = -lambda * x * fp;
  const double fp_inner = f.jets(inner).d1;  // domain-checked, errors propagate
  return lambda * lambda * fp * fp_inner - 1.0;
}

Eigen::VectorXd residual_rotation_invariant(const RotationInvariantPotential& p, double lambda,
                                            const Eigen::VectorXd& x) {
  const Eigen::VectorXd grad = p.jets(x).grad;
  const Eigen::VectorXd inner = (-lambda) * grad.cwiseProduct(x);
  const Eigen::VectorXd grad_inner = p.jets(inner).grad;
  return (lambda * lambda) * grad.cwiseProduct(grad_inner) - Eigen::VectorXd::Ones(x.size());
}

LambdaCandidate candidate_lambda(const RadialPotential& f) {
  LambdaCandidate c;
  c.fprime0 = f.jets(0.0).d1;
  if (!(c.fprime0 > 0)) {
    c.why_not = "f'(0) = " + std::to_string(c.fprime0) + " is not positive";
    return c;
  }
  c.ok = true;
  c.lambda = 1.0 / c.fprime0;
  return c;
}

LambdaCandidate candidate_lambda(const RotationInvariantPotential& p) {
  LambdaCandidate c;
  const Eigen::VectorXd g = p.jets(Eigen::VectorXd::Zero(p.n())).grad;
  c.fprime0 = g(0);
  if (!(g.minCoeff() > 0)) {
    c.why_not = "gradient at the origin is not positive";
    return c;
  }
  const double spread = (g.maxCoeff() - g.minCoeff()) / g.maxCoeff();
  if (spread > 1e-10) {
    c.why_not = "no admissible lambda: gradient components at 0 differ by relative " + std::to_string(spread);
    return c;
  }
  c.ok = true;
  c.lambda = 1.0 / g(0);
  return c;
}

Eigen::VectorXd necsuff_residual(const SpecialMap& map, const RotationInvariantPotential& alpha,
                                 const RotationInvariantPotential& beta, const Eigen::VectorXd& x) {
  const int n = alpha.n();
  Eigen::VectorXd psi2(n);
  for (int k = 0; k < n; ++k) {
    const double psi = map.coefficient(k, x);
    psi2(k) = psi * psi;
  }
  const Eigen::VectorXd mapped = psi2.cwiseProduct(x);
  const Eigen::VectorXd beta_grad = beta.jets(mapped).grad;
  const Eigen::VectorXd alpha_grad = alpha.jets(x).grad;
  return psi2.cwiseProduct(beta_grad) - alpha_grad;
}

DualityProblem make_duality_problem(const RadialPotential& f, int n, double lambda, double radius) {
  if (!(lambda > 0)) throw domain_error("duality problem requires lambda > 0");
  if (!(radius > 0)) throw domain_error("duality problem requires a positive radius");
  DualityProblem prob;
  prob.n = n;
  prob.lambda = lambda;
  prob.radius = radius;
  prob.potential_name = f.name();
  prob.radial = f;
  prob.radial_dual = dual_radial(f);
  if (!strict_psh_at_origin(f)) throw domain_error("potential '" + f.name() + "' is not strictly PSH at 0");
  if (!strict_psh_at_origin(*prob.radial_dual))
    throw domain_error("dual of '" + f.name() + "' is not strictly PSH at 0");
  return prob;
}

DualityProblem make_duality_problem(const RotationInvariantPotential& p, double lambda, double radius) {
  if (!(lambda > 0)) throw domain_error("duality problem requires lambda > 0");
  if (!(radius > 0)) throw domain_error("duality problem requires a positive radius");
  DualityProblem prob;
  prob.n = p.n();
  prob.lambda = lambda;
  prob.radius = radius;
  prob.potential_name = p.name();
  prob.rotinv = p;
  prob.rotinv_dual = dual_rotation_invariant(p);
  if (!strict_psh_at_origin(p)) throw domain_error("potential '" + p.name() + "' is not strictly PSH at 0");
  if (!strict_psh_at_origin(*prob.rotinv_dual))
    throw domain_error("dual of '" + p.name() + "' is not strictly PSH at 0");
  return prob;
}

std::shared_ptr<const SpecialMap> canonical_map(const DualityProblem& problem) {
  if (problem.is_radial()) return special_map_from_potential(*problem.radial, problem.n, problem.lambda);
  return special_map_from_potential(*problem.rotinv, problem.lambda);
}

}  // namespace symdual
