#pragma once

// Floquet perturbation theory in 1/lambda0 at fixed lambda0 T.

#include <vector>

#include "floqreset/xy_floquet.hpp"

namespace floqreset {

/// First-order XY Floquet Hamiltonian
/// -b tau^z + Delta (sin a / a)(cos a tau^x - sin a tau^y), a = lambda0 T / 2.
Eigen::Matrix2cd xy_hf1(const MomentumMode& mode, const DriveProtocol& drive);

/// Third-order XY correction lambda1 tau^x - lambda2 tau^y + lambda3 tau^z.
Eigen::Matrix2cd xy_hf3(const MomentumMode& mode, const DriveProtocol& drive);

struct XYThirdOrder {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

XYThirdOrder xy_hf3_coefficients(const MomentumMode& mode, const DriveProtocol& drive);

/// i log(U) / T of the closed-form one-cycle unitary, eigenvalues in (-pi/T, pi/T].
Eigen::Matrix2cd xy_exact_floquet_hamiltonian(const MomentumMode& mode, const DriveProtocol& drive);

/// Components (x, y, z) of a traceless 2x2 matrix h.tau.
Eigen::Vector3d pauli_components(const Eigen::Matrix2cd& H);

struct PXPFPTCoefficients {
  double gamma = 0.0;
  /// w sin(gamma) / gamma
  double amplitude = 0.0;
  /// phase of the first-order hopping, equal to gamma
  double phase = 0.0;
  cplx A0{};
};

PXPFPTCoefficients pxp_fpt_coefficients(const DriveProtocol& drive, const PXPParams& params);

struct SpecialFrequency {
  int n = 0;
  /// lambda0 / n
  double omega_star = 0.0;
  /// sqrt(lambda0^2 + kappa^2 J^2) / n
  double omega_shifted = 0.0;
};

std::vector<SpecialFrequency> special_frequencies(double lambda0, const XYParams& params, int n_max);

}  // namespace floqreset
