#pragma once

// Dual potentials, the canonical special maps, the duality residual
// equations, and the candidate duality constant.

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>

#include "symdual/maps.hpp"
#include "symdual/potential.hpp"

namespace symdual {

// f*(x) = -f(-x) on the reflected domain; an involution.
RadialPotential dual_radial(const RadialPotential& f);

// Phi~*(x) = -Phi~(-x) componentwise; gradient reflects as
// dPhi~*/dx_k(x) = dPhi~/dx_k(-x).
RotationInvariantPotential dual_rotation_invariant(const RotationInvariantPotential& p);

// P*(z,w) = -P(z,-w).
PolarizedPotential dual_polarized(const PolarizedPotential& p);

struct RealnessReport {
  double max_abs_im = 0.0;
  Eigen::VectorXcd worst_z;
  bool real = false;  // max_abs_im below the stated tolerance
};

// max |Im P(z, conj z)| over axis points at the sweep radius plus seeded
// random interior points.
RealnessReport realness_report(const PolarizedPotential& p, double radius = 0.1, int count = 64,
                               std::uint64_t seed = 42, double tol = 1e-10);

// Canonical special map psi~_k = (lambda dPhi~/dx_k)^{1/2}.
std::shared_ptr<const SpecialMap> special_map_from_potential(const RotationInvariantPotential& p, double lambda);

// Radial specialization psi = (lambda f'(x))^{1/2}, all coefficients equal.
std::shared_ptr<const SpecialMap> special_map_from_potential(const RadialPotential& f, int n, double lambda);

// lambda^2 f'(x) f'(-lambda x f'(x)) - 1, signed.
double residual_radial(const RadialPotential& f, double lambda, double x);

// Componentwise lambda^2 dPhi~/dx_k(x) dPhi~/dx_k(-lambda dPhi~/dx_1 x_1, ...) - 1.
Eigen::VectorXd residual_rotation_invariant(const RotationInvariantPotential& p, double lambda,
                                            const Eigen::VectorXd& x);

struct LambdaCandidate {
  bool ok = false;
  double lambda = 0.0;
  double fprime0 = 0.0;      // the gradient value at 0 behind the candidate
  std::string why_not;       // set when !ok
};

// The unique lambda consistent with a duality at the origin: 1/f'(0).  In the
// rotation invariant case all gradient components at 0 must agree to 1e-10
// relative, otherwise no candidate exists.
LambdaCandidate candidate_lambda(const RadialPotential& f);
LambdaCandidate candidate_lambda(const RotationInvariantPotential& p);

// Componentwise psi~_k^2 dbeta~/dx_k(psi~_1^2 x_1, ..., psi~_n^2 x_n) - dalpha~/dx_k;
// identically zero iff the map pulls the beta form back to the alpha form.
Eigen::VectorXd necsuff_residual(const SpecialMap& map, const RotationInvariantPotential& alpha,
                                 const RotationInvariantPotential& beta, const Eigen::VectorXd& x);

// A source potential with its dual, the duality constant, and the verified
// neighbourhood (ball radius in z).  Exactly one of radial/rotinv is set.
struct DualityProblem {
  int n = 0;
  double lambda = 1.0;
  double radius = 0.5;
  std::string potential_name;
  std::optional<RadialPotential> radial;
  std::optional<RadialPotential> radial_dual;
  std::optional<RotationInvariantPotential> rotinv;
  std::optional<RotationInvariantPotential> rotinv_dual;

  bool is_radial() const { return radial.has_value(); }
};

// Builds the problem, constructs the dual, and validates lambda > 0 and
// strict PSH at the origin for both sides.
DualityProblem make_duality_problem(const RadialPotential& f, int n, double lambda, double radius);
DualityProblem make_duality_problem(const RotationInvariantPotential& p, double lambda, double radius);

// The canonical special map of a problem.
std::shared_ptr<const SpecialMap> canonical_map(const DualityProblem& problem);

}  // namespace symdual
