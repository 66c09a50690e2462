#pragma once

// The verification engine: Jacobians (exact or finite-difference), pullbacks
// of 2-forms, the two duality identities, the tangent-operator identities,
// gauge transforms, and line preservation, aggregated into serializable
// reports.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "symdual/duality.hpp"
#include "symdual/forms.hpp"
#include "symdual/maps.hpp"

namespace symdual {

enum class JacobianScheme { jets, finite_difference };

std::string to_string(JacobianScheme s);

struct GridSpec {
  int n = 1;
  double radius = 0.5;
  int count = 200;
  enum class Scheme { seeded_random, lattice } scheme = Scheme::seeded_random;
  std::uint64_t seed = 42;
};

std::vector<Eigen::VectorXcd> sample_grid(const GridSpec& grid);

// Thresholds separating numerical noise from genuine obstructions.
inline constexpr double kJetsThreshold = 1e-9;
inline constexpr double kFdThreshold = 1e-6;
inline constexpr double kWitnessThreshold = 1e-3;  // "nonzero" claims must exceed this

struct VerificationReport {
  std::string identity;
  std::string potential;
  double lambda = 1.0;
  GridSpec grid;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  Eigen::VectorXcd worst_point;
  bool pass = false;
  double threshold = kJetsThreshold;
  JacobianScheme jacobian_scheme = JacobianScheme::jets;

  nlohmann::json to_json() const;
};

// Real 2n x 2n derivative of the map at z.  The jets scheme is exact; the
// finite-difference scheme is O(h^2) central differences with step
// h = 1e-6 max(1, |z|_inf) unless overridden.
Eigen::MatrixXd jacobian_at(const Map& map, const Eigen::VectorXcd& z, JacobianScheme scheme,
                            double fd_step = 0.0);

using FormField = std::function<FormMatrix(const Eigen::VectorXcd&)>;

// (Psi^* omega)(a,b) = omega(dPsi a, dPsi b) at z, i.e. J^T Omega(Psi(z)) J.
FormMatrix pullback_at(const Map& map, const FormField& target, const Eigen::VectorXcd& z,
                       JacobianScheme scheme = JacobianScheme::jets);

// Form fields of a duality problem.
FormField source_form_field(const DualityProblem& problem);
FormField dual_form_field(const DualityProblem& problem);

// Report A: max ||Psi^* omega_0 - lambda omega||_inf over the grid;
// report B: max ||lambda Psi^* omega^* - omega_0||_inf.
std::pair<VerificationReport, VerificationReport> check_duality(const DualityProblem& problem, const Map& map,
                                                                const GridSpec& grid,
                                                                JacobianScheme scheme = JacobianScheme::jets);

// Max deviation of dPsi^s dPsi = lambda B_z and dPsi^s B*_{Psi(z)} dPsi =
// (1/lambda) Id over the grid; radial problems only.  dPsi^s is always
// computed from the defining bilinear relation as Omega_0^{-1} J^T Omega_0.
VerificationReport check_operator_identities(const DualityProblem& problem, const Map& map, const GridSpec& grid,
                                             JacobianScheme scheme = JacobianScheme::jets);

// Pre-composition with z -> e^{i g(|z|^2)} A z; rejects non-unitary A.
MapPtr gauge_transform(MapPtr map, std::function<Jet1d(double)> g, const Eigen::MatrixXcd& a);

// Max distance of Psi(zeta v) from the complex line through the image points,
// over sampled zeta in a disk.
VerificationReport check_line_preservation(const Map& map, const Eigen::VectorXcd& direction, double radius,
                                           int samples = 40, std::uint64_t seed = 42);

}  // namespace symdual
