#pragma once

// The concrete potential catalog, the Taub-NUT implicit solver, and the
// Hartogs constructions.  Catalog names and parameters are the stable
// identifiers used by the CLI.

#include <string>
#include <variant>
#include <vector>

#include "symdual/expr.hpp"
#include "symdual/potential.hpp"

namespace symdual {

struct CatalogParams {
  double mu = 2.0;        // scaled_hyperbolic: f = -mu log(1-x)
  double m = 0.5;         // taubnut parameter, >= 0
  double c = 1.0;         // flat: f = c x
  double lambda0 = 1.0;   // parabola_rotation: the duality constant it is built for
  std::string F = "1-x";  // hartogs profile F(x)
  int n = 1;              // hartogs dimension
  double x_hi = 1.0;      // upper end of the hartogs profile domain
};

using AnyPotential = std::variant<RadialPotential, RotationInvariantPotential, PolarizedPotential>;

// Throws domain_error for unknown names or invalid parameters.
AnyPotential catalog(const std::string& name, const CatalogParams& params = {});

const std::vector<std::string>& catalog_names();

// Convenience accessors that throw when the entry is of another flavor.
RadialPotential catalog_radial(const std::string& name, const CatalogParams& params = {});
RotationInvariantPotential catalog_rotation_invariant(const std::string& name, const CatalogParams& params = {});
PolarizedPotential catalog_polarized(const std::string& name, const CatalogParams& params = {});

// LeBrun's implicit coordinates: x1 = e^{2m(U-V)} U, x2 = e^{2m(V-U)} V.
struct TaubNutState {
  double U = 0.0, V = 0.0;
  double m = 0.0;
  double x1 = 0.0, x2 = 0.0;
};

// Damped Newton solve of the implicit system; (U,V) = (x1,x2) exactly at m=0.
TaubNutState taubnut_solve(double x1, double x2, double m, double tol = 1e-12);

// Closed-form gradient (dPhi~/dx1, dPhi~/dx2) at a solved state.
Eigen::Vector2d taubnut_gradient(const TaubNutState& s);

// Phi~_m(x1,x2) = U + V + m(U^2+V^2) with gradient and Hessian via the
// implicit function theorem.
RotationInvariantPotential taubnut_potential(double m);

// Phi~(x1,...,xn) = -log(F(x1) - x2 - ... - xn) on the Hartogs domain of F.
RotationInvariantPotential hartogs_potential(const Expr& F, int n, double x_hi = 1.0);

struct PshCheck {
  bool pass = false;
  double first_failure_x = 0.0;  // meaningful only when !pass
  double min_value = 0.0;        // smallest sampled value of -(x F'/F)'
};

// Samples -(x F'(x)/F(x))' > 0 on [0, x_hi).
PshCheck hartogs_pseudoconvexity_check(const Expr& F, double x_hi, int samples = 200);

// Adaptive Simpson quadrature to the given absolute tolerance.
double integrate(const std::function<double(double)>& fn, double a, double b, double tol = 1e-12);

}  // namespace symdual
