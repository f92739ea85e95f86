#include "floqreset/fpt.hpp"

#include <cmath>

namespace floqreset {

namespace {

const cplx I1{0.0, 1.0};

Eigen::Matrix2cd from_components(double x, double y, double z) {
  Eigen::Matrix2cd H;
  H << z, cplx(x, -y), cplx(x, y), -z;
  return H;
}

double sinc(double a) { return std::abs(a) < 1e-8 ? 1.0 - a * a / 6.0 : std::sin(a) / a; }

}  // namespace

Eigen::Vector3d pauli_components(const Eigen::Matrix2cd& H) {
  return {0.5 * (H(0, 1) + H(1, 0)).real(), 0.5 * (H(1, 0) - H(0, 1)).imag(),
          0.5 * (H(0, 0) - H(1, 1)).real()};
}

Eigen::Matrix2cd xy_hf1(const MomentumMode& mode, const DriveProtocol& drive) {
  const double a = drive.alpha();
  const double amp = mode.delta() * sinc(a);
  return from_components(amp * std::cos(a), -amp * std::sin(a), -mode.b());
}

XYThirdOrder xy_hf3_coefficients(const MomentumMode& mode, const DriveProtocol& drive) {
  const double b = mode.b();
  const double D = mode.delta();
  const double l0 = drive.lambda0();
  const double x = l0 * drive.period();
  const double b2 = b * b, D2 = D * D, x2 = x * x;
  const double sx = std::sin(x), cx = std::cos(x);
  const double pre = D / (6.0 * l0 * l0 * x);
  const double cx_ = pre * (3.0 * D2 * x * cx - D2 * sx - D2 * std::sin(2.0 * x) + b2 * x2 * sx -
                            6.0 * b2 * x + 6.0 * b2 * sx);
  const double cy_ = pre * (-3.0 * D2 * x * sx - 2.0 * D2 * cx - D2 * std::cos(2.0 * x) + 3.0 * D2 +
                            b2 * x2 * cx + 2.0 * b2 * x2 + 6.0 * b2 * cx - 6.0 * b2);
  const double cz_ = b * D2 * (2.0 * x + x * cx - 3.0 * sx) / (3.0 * l0 * l0 * x);
  return {cx_, -cy_, cz_};
}

Eigen::Matrix2cd xy_hf3(const MomentumMode& mode, const DriveProtocol& drive) {
  const XYThirdOrder c = xy_hf3_coefficients(mode, drive);
  return from_components(c.lambda1, -c.lambda2, c.lambda3);
}

Eigen::Matrix2cd xy_exact_floquet_hamiltonian(const MomentumMode& mode, const DriveProtocol& drive) {
  // U = a0 I - i a.tau; log gives H_F = (phi / T) a / |a| with phi = atan2(|a|, a0).
  const Eigen::Matrix2cd U = one_cycle_unitary_oracle(mode, drive);
  const double a0 = 0.5 * (U(0, 0) + U(1, 1)).real();
  const Eigen::Vector3d a(-0.5 * (U(0, 1) + U(1, 0)).imag(), 0.5 * (U(1, 0) - U(0, 1)).real(),
                          -0.5 * (U(0, 0) - U(1, 1)).imag());
  const double s = a.norm();
  if (s == 0.0) return Eigen::Matrix2cd::Zero();
  const double phi = std::atan2(s, a0);
  const Eigen::Vector3d h = (phi / drive.period() / s) * a;
  return from_components(h.x(), h.y(), h.z());
}

PXPFPTCoefficients pxp_fpt_coefficients(const DriveProtocol& drive, const PXPParams& params) {
  PXPFPTCoefficients c;
  const double l0 = drive.lambda0();
  const double T = drive.period();
  const double w = params.w;
  c.gamma = l0 * T / 2.0;
  c.amplitude = w * sinc(c.gamma);
  c.phase = c.gamma;
  const double x = l0 * T;
  const cplx e = std::exp(I1 * x);
  c.A0 = w * w * w * std::exp(-2.0 * I1 * x) / (12.0 * I1 * l0 * l0 * l0 * T) *
         (std::pow(e, 6) + 3.0 * e * (1.0 + 2.0 * I1 * x) + 2.0 * (1.0 - 3.0 * e * e));
  return c;
}

std::vector<SpecialFrequency> special_frequencies(double lambda0, const XYParams& params, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidValue, "n_max must be >= 1");
  const double omega = std::hypot(lambda0, params.kappa * params.J);
  std::vector<SpecialFrequency> out;
  for (int n = 1; n <= n_max; ++n) out.push_back({n, lambda0 / n, omega / n});
  return out;
}

}  // namespace floqreset
