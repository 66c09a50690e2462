#include "symdual/verify.hpp"

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

namespace symdual {

std::string to_string(JacobianScheme s) {
  return s == JacobianScheme::jets ? "jets" : "fd";
}

std::vector<Eigen::VectorXcd> sample_grid(const GridSpec& grid) {
  std::vector<Eigen::VectorXcd> pts;
  pts.reserve(static_cast<size_t>(grid.count));
  const int n = grid.n;
  if (grid.scheme == GridSpec::Scheme::seeded_random) {
    std::mt19937_64 rng(grid.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < grid.count; ++i) {
      Eigen::VectorXd dir(2 * n);
      for (int k = 0; k < 2 * n; ++k) dir(k) = gauss(rng);
      const double nrm = dir.norm();
      if (nrm == 0.0) {
        pts.push_back(Eigen::VectorXcd::Zero(n));
        continue;
      }
      const double r = grid.radius * std::pow(unit(rng), 1.0 / (2.0 * n));
      pts.push_back(to_complex((r / nrm) * dir));
    }
  } else {
    // Deterministic lattice: magnitudes spread over (0, radius] along each
    // real coordinate axis direction, round-robin.
    for (int i = 0; i < grid.count; ++i) {
      const int axis = i % (2 * n);
      const double r = grid.radius * (1.0 + i / (2 * n)) / (1.0 + (grid.count - 1) / (2 * n));
      Eigen::VectorXd p = Eigen::VectorXd::Zero(2 * n);
      p(axis) = r;
      pts.push_back(to_complex(p));
    }
  }
  return pts;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json worst = nlohmann::json::array();
  for (Eigen::Index j = 0; j < worst_point.size(); ++j)
    worst.push_back({worst_point(j).real(), worst_point(j).imag()});
  return nlohmann::json{
      {"identity", identity},
      {"potential", potential},
      {"lambda", lambda},
      {"grid",
       {{"radius", grid.radius},
        {"count", grid.count},
        {"seed", grid.seed},
        {"scheme", grid.scheme == GridSpec::Scheme::seeded_random ? "seeded-random" : "lattice"}}},
      {"max_residual", max_residual},
      {"mean_residual", mean_residual},
      {"worst_point", worst},
      {"pass", pass},
      {"threshold", threshold},
      {"jacobian_scheme", to_string(jacobian_scheme)},
  };
}

Eigen::MatrixXd jacobian_at(const Map& map, const Eigen::VectorXcd& z, JacobianScheme scheme, double fd_step) {
  if (scheme == JacobianScheme::jets) return map.jacobian(z);
  const Eigen::Index d = 2 * map.dim();
  double h = fd_step;
  if (h <= 0.0) h = 1e-6 * std::max(1.0, to_real(z).cwiseAbs().maxCoeff());
  if (h < 1e-300) throw domain_error("finite-difference step underflow");
  const Eigen::VectorXd p = to_real(z);
  Eigen::MatrixXd jac(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::VectorXd up = p, dn = p;
    up(k) += h;
    dn(k) -= h;
    const Eigen::VectorXd diff = (to_real(map(to_complex(up))) - to_real(map(to_complex(dn)))) / (2.0 * h);
    jac.col(k) = diff;
  }
  return jac;
}

FormMatrix pullback_at(const Map& map, const FormField& target, const Eigen::VectorXcd& z, JacobianScheme scheme) {
  const Eigen::MatrixXd jac = jacobian_at(map, z, scheme);
  const FormMatrix omega = target(map(z));
  return {omega.n, jac.transpose() * omega.omega * jac};
}

FormField source_form_field(const DualityProblem& problem) {
  if (problem.is_radial()) {
    const RadialPotential f = *problem.radial;
    return [f](const Eigen::VectorXcd& z) { return kahler_form_at(f, z); };
  }
  const RotationInvariantPotential p = *problem.rotinv;
  return [p](const Eigen::VectorXcd& z) { return kahler_form_at(p, z); };
}

FormField dual_form_field(const DualityProblem& problem) {
  if (problem.is_radial()) {
    const RadialPotential f = *problem.radial_dual;
    return [f](const Eigen::VectorXcd& z) { return kahler_form_at(f, z); };
  }
  const RotationInvariantPotential p = *problem.rotinv_dual;
  return [p](const Eigen::VectorXcd& z) { return kahler_form_at(p, z); };
}

namespace {

struct Accumulator {
  double max = 0.0;
  double sum = 0.0;
  int count = 0;
  Eigen::VectorXcd worst;

  void add(double r, const Eigen::VectorXcd& z) {
    sum += r;
    ++count;
    if (r >= max) {
      max = r;
      worst = z;
    }
  }
};

VerificationReport finish(std::string identity, const DualityProblem& problem, const GridSpec& grid,
                          JacobianScheme scheme, const Accumulator& acc) {
  VerificationReport rep;
  rep.identity = std::move(identity);
  rep.potential = problem.potential_name;
  rep.lambda = problem.lambda;
  rep.grid = grid;
  rep.max_residual = acc.max;
  rep.mean_residual = acc.count > 0 ? acc.sum / acc.count : 0.0;
  rep.worst_point = acc.count > 0 ? acc.worst : Eigen::VectorXcd::Zero(grid.n);
  rep.jacobian_scheme = scheme;
  rep.threshold = scheme == JacobianScheme::jets ? kJetsThreshold : kFdThreshold;
  rep.pass = rep.max_residual < rep.threshold;
  return rep;
}

}  // namespace

std::pair<VerificationReport, VerificationReport> check_duality(const DualityProblem& problem, const Map& map,
                                                                const GridSpec& grid, JacobianScheme scheme) {
  if (grid.n != problem.n) throw domain_error("grid dimension does not match the problem");
  const FormField omega = source_form_field(problem);
  const FormField omega_dual = dual_form_field(problem);
  const Eigen::MatrixXd flat = flat_form(problem.n).omega;
  const double lambda = problem.lambda;

  Accumulator acc_a, acc_b;
  for (const Eigen::VectorXcd& z : sample_grid(grid)) {
    const Eigen::MatrixXd jac = jacobian_at(map, z, scheme);
    const Eigen::VectorXcd w = map(z);
    const Eigen::MatrixXd pull_flat = jac.transpose() * flat * jac;
    const Eigen::MatrixXd pull_dual = jac.transpose() * omega_dual(w).omega * jac;
    acc_a.add((pull_flat - lambda * omega(z).omega).cwiseAbs().maxCoeff(), z);
    acc_b.add((lambda * pull_dual - flat).cwiseAbs().maxCoeff(), z);
  }
  return {finish("duality_flat_pullback", problem, grid, scheme, acc_a),
          finish("duality_dual_pullback", problem, grid, scheme, acc_b)};
}

VerificationReport check_operator_identities(const DualityProblem& problem, const Map& map, const GridSpec& grid,
                                             JacobianScheme scheme) {
  if (!problem.is_radial())
    throw domain_error("operator identities are defined for radial problems only");
  if (grid.n != problem.n) throw domain_error("grid dimension does not match the problem");
  const RadialPotential& f = *problem.radial;
  const double lambda = problem.lambda;
  const Eigen::MatrixXd flat = flat_form(problem.n).omega;
  const Eigen::MatrixXd flat_inv = flat.transpose();  // Omega_0^2 = -Id in this convention
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * problem.n, 2 * problem.n);

  Accumulator acc;
  for (const Eigen::VectorXcd& z : sample_grid(grid)) {
    const Eigen::MatrixXd jac = jacobian_at(map, z, scheme);
    if (std::abs(jac.determinant()) < 1e-12)
      throw domain_error("singular Jacobian at |z| = " + std::to_string(z.norm()));
    const Eigen::MatrixXd adj = flat_inv * jac.transpose() * flat;  // dPsi^s from the defining relation
    const Eigen::VectorXcd w = map(z);
    const double r1 = (adj * jac - lambda * b_operator_at(f, z).m).cwiseAbs().maxCoeff();
    const double r2 = (adj * b_star_operator_at(f, w).m * jac - id / lambda).cwiseAbs().maxCoeff();
    acc.add(std::max(r1, r2), z);
  }
  return finish("operator_identities", problem, grid, scheme, acc);
}

MapPtr gauge_transform(MapPtr map, std::function<Jet1d(double)> g, const Eigen::MatrixXcd& a) {
  if (!map) throw domain_error("gauge_transform needs a map");
  auto phase = std::make_shared<PhaseUnitaryMap>(std::move(g), a);
  return std::make_shared<ComposedMap>(std::move(map), std::move(phase));
}

VerificationReport check_line_preservation(const Map& map, const Eigen::VectorXcd& direction, double radius,
                                           int samples, std::uint64_t seed) {
  const double dn = direction.norm();
  if (!(dn > 0)) throw domain_error("line direction must be nonzero");
  const Eigen::VectorXcd v = direction / dn;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::complex<double>> zetas;
  zetas.push_back({radius, 0.0});
  zetas.push_back({0.0, radius});
  zetas.push_back({-radius / 2, radius / 2});
  for (int i = static_cast<int>(zetas.size()); i < samples; ++i) {
    const double r = radius * std::sqrt(unit(rng));
    const double th = 2.0 * M_PI * unit(rng);
    zetas.push_back(std::polar(r, th));
  }

  std::vector<Eigen::VectorXcd> images;
  Eigen::VectorXcd ref;
  double ref_norm = 0.0;
  for (const auto& zeta : zetas) {
    Eigen::VectorXcd w = map(zeta * v);
    if (w.norm() > ref_norm) {
      ref_norm = w.norm();
      ref = w;
    }
    images.push_back(std::move(w));
  }
  if (ref_norm == 0.0) throw domain_error("line preservation check degenerate: all samples map to 0");
  const Eigen::VectorXcd unit_ref = ref / ref_norm;

  Accumulator acc;
  for (size_t i = 0; i < images.size(); ++i) {
    const Eigen::VectorXcd& w = images[i];
    const std::complex<double> proj = unit_ref.dot(w);  // conjugate-linear in unit_ref
    const double dist = (w - proj * unit_ref).norm();
    acc.add(dist, zetas[i] * v);
  }

  VerificationReport rep;
  rep.identity = "line_preservation";
  rep.potential = "";
  rep.lambda = 0.0;
  rep.grid = GridSpec{map.dim(), radius, samples, GridSpec::Scheme::seeded_random, seed};
  rep.max_residual = acc.max;
  rep.mean_residual = acc.count > 0 ? acc.sum / acc.count : 0.0;
  rep.worst_point = acc.worst;
  rep.jacobian_scheme = JacobianScheme::jets;
  rep.threshold = kJetsThreshold;
  rep.pass = rep.max_residual < rep.threshold;
  return rep;
}

}  // namespace symdual
