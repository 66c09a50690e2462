#include "symdual/catalog.hpp"

#include <cmath>
#include <sstream>

namespace symdual {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& fn, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = fn(lm), frm = fn(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  return adaptive(fn, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 40);
}

TaubNutState taubnut_solve(double x1, double x2, double m, double tol) {
  if (m < 0) throw domain_error("taubnut requires m >= 0");
  if (!(tol > 0)) throw domain_error("taubnut_solve requires tol > 0");
  TaubNutState s;
  s.m = m;
  s.x1 = x1;
  s.x2 = x2;
  if (m == 0.0) {
    s.U = x1;
    s.V = x2;
    return s;
  }

  double U = x1, V = x2;
  auto residual = [&](double u, double v, double& r1, double& r2) {
    r1 = std::exp(2.0 * m * (u - v)) * u - x1;
    r2 = std::exp(2.0 * m * (v - u)) * v - x2;
  };
  double r1, r2;
  residual(U, V, r1, r2);
  double norm = std::max(std::abs(r1), std::abs(r2));
  const bool damp = m * std::max(std::abs(x1), std::abs(x2)) > 0.5;

  for (int it = 0; it < 100 && norm > tol; ++it) {
    const double e12 = std::exp(2.0 * m * (U - V));
    const double e21 = 1.0 / e12;
    Eigen::Matrix2d J;
    J << e12 * (1.0 + 2.0 * m * U), -2.0 * m * U * e12, -2.0 * m * V * e21, e21 * (1.0 + 2.0 * m * V);
    const double det = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    if (std::abs(det) < 1e-300)
      throw domain_error("taubnut_solve: singular Newton system at (U,V)=(" + std::to_string(U) + "," +
                         std::to_string(V) + ")");
    Eigen::Vector2d step = J.inverse() * Eigen::Vector2d(r1, r2);
    double t = damp ? 0.5 : 1.0;
    for (int bt = 0; bt < 40; ++bt) {
      const double Un = U - t * step(0), Vn = V - t * step(1);
      double n1, n2;
      residual(Un, Vn, n1, n2);
      const double nn = std::max(std::abs(n1), std::abs(n2));
      if (nn < norm || nn <= tol) {
        U = Un;
        V = Vn;
        r1 = n1;
        r2 = n2;
        norm = nn;
        break;
      }
      t *= 0.5;
      if (bt == 39)
        throw domain_error("taubnut_solve: no convergence at (x1,x2)=(" + std::to_string(x1) + "," +
                           std::to_string(x2) + "), m=" + std::to_string(m) + ", last residual " +
                           std::to_string(norm));
    }
  }
  if (norm > tol)
    throw domain_error("taubnut_solve: residual " + std::to_string(norm) + " above tolerance after 100 iterations");
  s.U = U;
  s.V = V;
  return s;
}

Eigen::Vector2d taubnut_gradient(const TaubNutState& s) {
  return {(1.0 + 2.0 * s.m * s.V) * std::exp(2.0 * s.m * (s.V - s.U)),
          (1.0 + 2.0 * s.m * s.U) * std::exp(2.0 * s.m * (s.U - s.V))};
}

RotationInvariantPotential taubnut_potential(double m) {
  if (m < 0) throw domain_error("taubnut requires m >= 0");
  Box box;
  if (m == 0.0) {
    box.axes.assign(2, Interval{});
  } else {
    // Empirical solver neighbourhood: the one-variable slice x = U e^{2mU}
    // has a real solution only for x >= -1/(2 e m); stay inside with margin.
    const double lo = -0.99 / (2.0 * std::exp(1.0) * m);
    box.axes.assign(2, Interval{lo, kInf});
  }
  auto eval = [m](const Eigen::VectorXd& x) {
    const TaubNutState s = taubnut_solve(x(0), x(1), m, 1e-13);
    const Eigen::Vector2d g = taubnut_gradient(s);
    const double value = s.U + s.V + m * (s.U * s.U + s.V * s.V);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2, 2);
    if (m != 0.0) {
      const double e12 = std::exp(2.0 * m * (s.U - s.V));
      const double e21 = 1.0 / e12;
      // Forward Jacobian d(x1,x2)/d(U,V) and gradient sensitivity d g/d(U,V).
      Eigen::Matrix2d Jt;
      Jt << e12 * (1.0 + 2.0 * m * s.U), -2.0 * m * s.U * e12, -2.0 * m * s.V * e21,
          e21 * (1.0 + 2.0 * m * s.V);
      Eigen::Matrix2d Dg;
      Dg << -2.0 * m * (1.0 + 2.0 * m * s.V) * e21, 2.0 * m * (2.0 + 2.0 * m * s.V) * e21,
          2.0 * m * (2.0 + 2.0 * m * s.U) * e12, -2.0 * m * (1.0 + 2.0 * m * s.U) * e12;
      const Eigen::Matrix2d H = Dg * Jt.inverse();
      hess = 0.5 * (H + H.transpose());
    }
    return JetNd(value, g, hess);
  };
  return RotationInvariantPotential("taubnut", 2, std::move(eval), std::move(box));
}

RotationInvariantPotential hartogs_potential(const Expr& F, int n, double x_hi) {
  if (n < 1) throw domain_error("hartogs requires n >= 1");
  if (F.arity() > 1) throw domain_error("hartogs profile F must be univariate");
  // F must be positive and decreasing on [0, x_hi).
  const int probes = 64;
  for (int i = 0; i < probes; ++i) {
    const double x = x_hi * (i + 0.25) / probes;
    const Jet1d Fx = F.jet1(x);
    if (!(Fx.f > 0))
      throw domain_error("hartogs profile F is not positive at x=" + std::to_string(x));
    if (!(Fx.d1 < 0.0))
      throw domain_error("hartogs profile F is not decreasing at x=" + std::to_string(x));
  }
  Box box;
  box.axes.assign(static_cast<size_t>(n), Interval{});
  box.axes[0] = Interval{-kInf, x_hi};
  auto eval = [F](const Eigen::VectorXd& x) {
    const Eigen::Index nn = x.size();
    const Jet1d Fx = F.jet1(x(0));
    JetNd u = JetNd::constant(Fx.f, nn);
    u.grad(0) = Fx.d1;
    u.hess(0, 0) = Fx.d2;
    for (Eigen::Index j = 1; j < nn; ++j) {
      u.f -= x(j);
      u.grad(j) = -1.0;
    }
    return -log(u);
  };
  return RotationInvariantPotential("hartogs", n, std::move(eval), std::move(box));
}

PshCheck hartogs_pseudoconvexity_check(const Expr& F, double x_hi, int samples) {
  PshCheck out;
  out.pass = true;
  out.min_value = kInf;
  for (int i = 0; i < samples; ++i) {
    const double x = x_hi * i / samples;
    const Jet1d Fx = F.jet1(x);
    if (!(Fx.f > 0)) throw domain_error("F is not positive at x=" + std::to_string(x));
    // t(x) = x F'/F; the condition is -t'(x) > 0.
    const Jet1d t = Jet1d::variable(x) * Jet1d(Fx.d1, Fx.d2, Fx.d3, 0.0) / Fx;
    const double cond = -t.d1;
    if (cond < out.min_value) out.min_value = cond;
    if (!(cond > 0) && out.pass) {
      out.pass = false;
      out.first_failure_x = x;
    }
  }
  return out;
}

namespace {

RadialPotential make_hyperbolic(double mu, const std::string& name) {
  if (!(mu > 0)) throw domain_error("scaled hyperbolic potential requires mu > 0");
  auto eval = [mu](double x) { return -mu * log(1.0 - Jet1d::variable(x)); };
  return RadialPotential(name, std::move(eval), Interval{-kInf, 1.0}, 1.0);
}

RadialPotential make_fubini_study() {
  auto eval = [](double x) { return log(1.0 + Jet1d::variable(x)); };
  return RadialPotential("fubini_study", std::move(eval), Interval{-1.0, kInf}, kInf);
}

RadialPotential make_flat(double c) {
  auto eval = [c](double x) { return c * Jet1d::variable(x); };
  return RadialPotential("flat", std::move(eval), Interval{}, c > 0 ? kInf : 0.0);
}

RadialPotential make_quadratic_defect() {
  auto eval = [](double x) {
    const Jet1d t = Jet1d::variable(x);
    return t - 0.25 * (t * t);
  };
  return RadialPotential("quadratic_defect", std::move(eval), Interval{}, 1.0);
}

// f'(x) = -G(x)/(lambda0 x) with G(x) = -sqrt(2)/2 + x + sqrt(2-8 sqrt(2) x)/2.
// The cancellation-free form of -G(x)/x is 4 sqrt(2)/(sqrt(2)+s) - 1 with
// s = sqrt(2 - 8 sqrt(2) x), which also removes the singularity at x = 0.
RadialPotential make_parabola_rotation(double lambda0) {
  if (!(lambda0 > 0)) throw domain_error("parabola_rotation requires lambda > 0");
  const double x_cap = 1.0 / (4.0 * kSqrt2);
  auto fprime = [lambda0](const Jet1d& t) {
    const Jet1d s = sqrt(2.0 - (8.0 * kSqrt2) * t);
    return (4.0 * kSqrt2 / (kSqrt2 + s) - 1.0) / lambda0;
  };
  auto eval = [fprime](double x) {
    const Jet1d fp = fprime(Jet1d::variable(x));
    const double value =
        integrate([&](double t) { return fprime(Jet1d::constant(t)).f; }, 0.0, x, 1e-12);
    return Jet1d(value, fp.f, fp.d1, fp.d2, fp.d3);
  };
  return RadialPotential("parabola_rotation", std::move(eval), Interval{-kInf, x_cap}, x_cap);
}

PolarizedPotential make_hyperbolic_plus_linear() {
  auto eval = [](const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
    const std::complex<double> arg = 1.0 - z(0) * w(0);
    if (arg == 0.0) throw domain_error("hyperbolic_plus_linear: log singularity at 1 - z w = 0");
    return -std::log(arg) + z(0) + w(0);
  };
  return PolarizedPotential("hyperbolic_plus_linear", 1, std::move(eval));
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "hyperbolic",       "fubini_study",      "flat",
      "scaled_hyperbolic", "hyperbolic_plus_linear", "quadratic_defect",
      "parabola_rotation", "hartogs",           "taubnut"};
  return names;
}

AnyPotential catalog(const std::string& name, const CatalogParams& params) {
  if (name == "hyperbolic") return make_hyperbolic(1.0, "hyperbolic");
  if (name == "fubini_study") return make_fubini_study();
  if (name == "flat") return make_flat(params.c);
  if (name == "scaled_hyperbolic") return make_hyperbolic(params.mu, "scaled_hyperbolic");
  if (name == "hyperbolic_plus_linear") return make_hyperbolic_plus_linear();
  if (name == "quadratic_defect") return make_quadratic_defect();
  if (name == "parabola_rotation") return make_parabola_rotation(params.lambda0);
  if (name == "hartogs") return hartogs_potential(Expr::parse(params.F), params.n, params.x_hi);
  if (name == "taubnut") return taubnut_potential(params.m);
  std::ostringstream os;
  os << "unknown potential '" << name << "'; known names:";
  for (const auto& s : catalog_names()) os << " " << s;
  throw domain_error(os.str());
}

RadialPotential catalog_radial(const std::string& name, const CatalogParams& params) {
  AnyPotential p = catalog(name, params);
  if (auto* r = std::get_if<RadialPotential>(&p)) return *r;
  throw domain_error("potential '" + name + "' is not radial");
}

RotationInvariantPotential catalog_rotation_invariant(const std::string& name, const CatalogParams& params) {
  AnyPotential p = catalog(name, params);
  if (auto* r = std::get_if<RotationInvariantPotential>(&p)) return *r;
  if (auto* r = std::get_if<RadialPotential>(&p)) return as_rotation_invariant(*r, params.n);
  throw domain_error("potential '" + name + "' is not rotation invariant");
}

PolarizedPotential catalog_polarized(const std::string& name, const CatalogParams& params) {
  AnyPotential p = catalog(name, params);
  if (auto* r = std::get_if<PolarizedPotential>(&p)) return *r;
  throw domain_error("potential '" + name + "' is not polarized");
}

}  // namespace symdual
