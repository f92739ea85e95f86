#include "floqreset/xy_floquet.hpp"

#include <cmath>

namespace floqreset {

namespace {

const cplx I1{0.0, 1.0};

// sin(E t) / E, finite as E -> 0.
double sin_over(double E, double t) { return E * t < 1e-8 ? t : std::sin(E * t) / E; }

}  // namespace

Eigen::Matrix2cd mode_hamiltonian(const MomentumMode& mode, double lambda) {
  const double hz = lambda - mode.b();
  const double hx = mode.delta();
  Eigen::Matrix2cd H;
  H << hz, hx, hx, -hz;
  return H;
}

Eigen::Matrix2cd pauli_exponential(const Eigen::Vector3d& h, double t) {
  const double E = h.norm();
  const double c = std::cos(E * t);
  const double s = sin_over(E, t);
  Eigen::Matrix2cd U;
  U << cplx(c, -s * h.z()), cplx(-s * h.y(), -s * h.x()),
       cplx(s * h.y(), -s * h.x()), cplx(c, s * h.z());
  return U;
}

FloquetMode floquet_mode(const MomentumMode& mode, const DriveProtocol& drive) {
  return floquet_mode(mode, drive.lambda0(), drive.period());
}

FloquetMode floquet_mode(const MomentumMode& mode, double l0, double period) {
  const double b = mode.b();
  const double D = mode.delta();
  const double half = period / 2.0;

  const double zp = l0 - b;
  const double zm = -l0 - b;
  const double Ep = std::hypot(zp, D);
  const double Em = std::hypot(zm, D);
  const double cp = std::cos(Ep * half);
  const double cm = std::cos(Em * half);
  // sin(phi)/E for each half
  const double sp = sin_over(Ep, half);
  const double sm = sin_over(Em, half);

  const double c = cm * cp - sm * sp * (D * D + zp * zm);
  Eigen::Vector3d S(D * (cm * sp + sm * cp), -2.0 * l0 * D * sm * sp, zp * sp * cm + zm * sm * cp);

  FloquetMode fm;
  const double s = S.norm();
  if (s < kDegeneracyTol) {
    fm.degenerate = true;
    fm.n = Eigen::Vector3d(0.0, 0.0, 1.0);
    fm.phase = c >= 0.0 ? 0.0 : std::numbers::pi;
  } else {
    fm.n = S / s;
    fm.phase = std::atan2(s, c);
  }
  fm.eps = fm.phase / period;
  return fm;
}

ModeState evolve_mode_exact(const FloquetMode& fm, long m, const ModeState& init) {
  const double chi = static_cast<double>(m) * fm.phase;
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  const Eigen::Vector3d& n = fm.n;
  // (cos chi) psi - i sin chi (n.tau) psi
  const cplx nu = n.z() * init.u + cplx(n.x(), -n.y()) * init.v;
  const cplx nv = cplx(n.x(), n.y()) * init.u - n.z() * init.v;
  return {c * init.u - I1 * s * nu, c * init.v - I1 * s * nv};
}

ModeState evolve_mode_exact(const MomentumMode& mode, const DriveProtocol& drive, long m,
                            const ModeState& init) {
  return evolve_mode_exact(floquet_mode(mode, drive), m, init);
}

Eigen::Matrix2cd one_cycle_unitary_oracle(const MomentumMode& mode, const DriveProtocol& drive) {
  const double half = drive.period() / 2.0;
  const Eigen::Vector3d hp(mode.delta(), 0.0, drive.lambda0() - mode.b());
  const Eigen::Vector3d hm(mode.delta(), 0.0, -drive.lambda0() - mode.b());
  return pauli_exponential(hm, half) * pauli_exponential(hp, half);
}

ModeState evolve_mode_oracle(const MomentumMode& mode, const DriveProtocol& drive, long m,
                             const ModeState& init) {
  const Eigen::Matrix2cd U = one_cycle_unitary_oracle(mode, drive);
  Eigen::Vector2cd psi(init.u, init.v);
  for (long i = 0; i < m; ++i) psi = U * psi;
  return {psi(0), psi(1)};
}

}  // namespace floqreset
