#pragma once

// Point-wise assembly of 2-forms and tangent-space operators as real 2n x 2n
// matrices, plus the 1-D Gaussian curvature of a radial metric.
//
// Fixed coordinate convention, used everywhere in this library:
//   * real coordinates are interleaved (u_1, v_1, ..., u_n, v_n) with
//     z_j = u_j + i v_j;
//   * the flat form is omega_0 = sum du_j ^ dv_j, i.e. omega_0(du_j, dv_j) = +1,
//     equivalently omega_0(a, b) = -Im <a, b> with <a, b> = sum a_j conj(b_j);
//   * a (1,1)-form (i/2) sum H_lk dz_l ^ dzbar_k with Hermitian H acts on real
//     vectors as omega(a, b) = -Im(a^T H conj(b)) (complex components).

#include <Eigen/Dense>

#include "symdual/potential.hpp"

namespace symdual {

// Real antisymmetric matrix of a 2-form at a point, in the interleaved
// (u_1, v_1, ..., u_n, v_n) convention above.
struct FormMatrix {
  int n = 0;               // complex dimension
  Eigen::MatrixXd omega;   // 2n x 2n, antisymmetric

  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(omega * b); }
};

// Real matrix of an endomorphism of the tangent space at a point.
struct OperatorMatrix {
  int n = 0;
  Eigen::MatrixXd m;  // 2n x 2n
};

// Real 2n x 2n representation of a complex-linear map given by an n x n
// complex matrix.
Eigen::MatrixXd real_rep(const Eigen::MatrixXcd& a);

// Real coordinates of a complex point and back.
Eigen::VectorXd to_real(const Eigen::VectorXcd& z);
Eigen::VectorXcd to_complex(const Eigen::VectorXd& p);

// FormMatrix of (i/2) sum H_lk dz_l ^ dzbar_k for Hermitian H.
FormMatrix form_from_hermitian(const Eigen::MatrixXcd& h);

// The flat form omega_0 in complex dimension n.
FormMatrix flat_form(int n);

// Hermitian coefficient matrix H_lk = Phi~_lk zbar_l z_k + Phi~_l delta_lk of
// the Kahler form at z (the audited step before the real conversion).
Eigen::MatrixXcd kahler_hermitian_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z);
Eigen::MatrixXcd kahler_hermitian_at(const RadialPotential& p, const Eigen::VectorXcd& z);

FormMatrix kahler_form_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z);
FormMatrix kahler_form_at(const RadialPotential& p, const Eigen::VectorXcd& z);

// Form of the dual potential evaluated directly from the source potential at
// reflected arguments: radial coefficient pair (-f''(-x), f'(-x)).
FormMatrix dual_form_at(const RadialPotential& p, const Eigen::VectorXcd& z);
FormMatrix dual_form_at(const RotationInvariantPotential& p, const Eigen::VectorXcd& z);

// B_z = f''(x) z (.) zbar + f'(x) Id and its dual companion, as real matrices
// of the complex-linear operators, (z (.) zbar)(v) = <v,z> z.
OperatorMatrix b_operator_at(const RadialPotential& p, const Eigen::VectorXcd& z);
OperatorMatrix b_star_operator_at(const RadialPotential& p, const Eigen::VectorXcd& z);

// Gaussian curvature of the 1-D radial metric with conformal factor
// S(x) = (x f')':  K = -(2/S) [x (log S)'' + (log S)'].  In this
// normalization the unit-disk potential -log(1-x) has K = -4.
double gaussian_curvature_radial(const RadialPotential& p, double x);

// True iff the Kahler matrix at the origin is positive definite.
bool strict_psh_at_origin(const RadialPotential& p);
bool strict_psh_at_origin(const RotationInvariantPotential& p);
bool strict_psh_at_origin(const PolarizedPotential& p);

}  // namespace symdual
