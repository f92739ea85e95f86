#pragma once

// Single momentum mode of the driven XY chain after the Jordan-Wigner map.
// A mode lives in the two-level space spanned by |0> and c_k^+ c_{-k}^+ |0>;
// its state is u|0> + v c_k^+ c_{-k}^+|0>.

#include <complex>

#include <Eigen/Dense>

#include "floqreset/config.hpp"

namespace floqreset {

using cplx = std::complex<double>;

struct MomentumMode {
  double k = 0.0;
  double J = 1.0;
  double kappa = 0.0;

  MomentumMode() = default;
  MomentumMode(double k_, const XYParams& p) : k(k_), J(p.J), kappa(p.kappa) {}
  MomentumMode(double k_, double J_, double kappa_) : k(k_), J(J_), kappa(kappa_) {}

  double b() const { return J * std::cos(k); }
  double delta() const { return kappa * J * std::sin(k); }
};

struct ModeState {
  cplx u{1.0, 0.0};
  cplx v{0.0, 0.0};

  /// All spins down: the fermion vacuum of the mode.
  static ModeState vacuum() { return {}; }
  double norm2() const { return std::norm(u) + std::norm(v); }
};

struct FloquetMode {
  /// |eps^F| in [0, pi/T].
  double eps = 0.0;
  /// |eps^F| T in [0, pi].
  double phase = 0.0;
  Eigen::Vector3d n{0.0, 0.0, 1.0};
  bool degenerate = false;
};

/// Sine threshold below which a mode is treated as U = +-I.
inline constexpr double kDegeneracyTol = 1e-9;

/// H_k(lambda) = (lambda - J cos k) tau^z + kappa J sin k tau^x.
Eigen::Matrix2cd mode_hamiltonian(const MomentumMode& mode, double lambda);

/// exp(-i t h.tau) in closed form.
Eigen::Matrix2cd pauli_exponential(const Eigen::Vector3d& h, double t);

/// Quasienergy and Floquet axis of U_k = exp(-i H_k^- T/2) exp(-i H_k^+ T/2),
/// so that U_k = cos(eps T) I - i sin(eps T) n.tau.
FloquetMode floquet_mode(const MomentumMode& mode, const DriveProtocol& drive);
FloquetMode floquet_mode(const MomentumMode& mode, double lambda0, double period);

/// U_k^m applied in closed form.
ModeState evolve_mode_exact(const MomentumMode& mode, const DriveProtocol& drive, long m,
                            const ModeState& init);
ModeState evolve_mode_exact(const FloquetMode& fm, long m, const ModeState& init);

/// One-cycle unitary as the product of the two half-cycle exponentials.
Eigen::Matrix2cd one_cycle_unitary_oracle(const MomentumMode& mode, const DriveProtocol& drive);

/// Repeated application of the oracle one-cycle unitary.
ModeState evolve_mode_oracle(const MomentumMode& mode, const DriveProtocol& drive, long m,
                             const ModeState& init);

}  // namespace floqreset
