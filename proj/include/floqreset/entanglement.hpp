#pragma once

// Two-spin reduced density matrices use the basis |uu>, |ud>, |du>, |dd>.

#include <Eigen/Dense>

#include "floqreset/xy_correlators.hpp"

namespace floqreset {

using TwoSpinDensityMatrix = Eigen::Matrix4cd;

/// Nonzero only on the diagonal and anti-diagonal:
///   [[a+, 0,   0,   b1],
///    [0,  a0,  b2,  0 ],
///    [0,  b2*, a0,  0 ],
///    [b1*, 0,  0,   a-]]
struct XState {
  double a_plus = 0.0;
  double a_0 = 0.0;
  double a_minus = 1.0;
  cplx b_1{};
  cplx b_2{};

  TwoSpinDensityMatrix matrix() const;
  double trace() const { return a_plus + 2.0 * a_0 + a_minus; }
};

/// Eigenvalues in [-tol, 0) are clipped; below that the matrix is rejected.
inline constexpr double kPsdTolerance = 1e-9;

/// Binary entropy of a mode occupation, in nats.
double single_spin_entropy(double alpha0);

/// Von Neumann entropy of a 2x2 density matrix, in nats.
double von_neumann_entropy(const Eigen::Matrix2cd& rho);

/// X-state of spins j and j+l from the transforms; l in {1, 2}.
XState xy_two_spin_rdm(int l, const TransformSet& t);

/// Throws NotADensityMatrix unless rho is Hermitian, trace one and PSD within tolerance.
void check_density_matrix(const TwoSpinDensityMatrix& rho);

/// Wootters concurrence.
double concurrence_general(const TwoSpinDensityMatrix& rho);

/// 2 max(0, |b1| - a0, |b2| - sqrt(a+ a-)).
double concurrence_xstate(const XState& x);

TwoSpinDensityMatrix partial_transpose(const TwoSpinDensityMatrix& rho);

}  // namespace floqreset
