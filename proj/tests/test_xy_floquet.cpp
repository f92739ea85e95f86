#include <doctest.h>

#include <random>

#include "floqreset/xy_floquet.hpp"

using namespace floqreset;

namespace {

double max_diff(const ModeState& a, const ModeState& b) {
  return std::max(std::abs(a.u - b.u), std::abs(a.v - b.v));
}

}  // namespace

TEST_SUITE("xy_floquet") {

TEST_CASE("mode hamiltonian at k = pi/2") {
  const Eigen::Matrix2cd h = mode_hamiltonian(MomentumMode(std::numbers::pi / 2, 1.0, 0.7), 3.0);
  CHECK(h(0, 0).real() == doctest::Approx(3.0));
  CHECK(h(1, 1).real() == doctest::Approx(-3.0));
  CHECK(h(0, 1).real() == doctest::Approx(0.7));
  CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("kappa = 0 gives a diagonal one-cycle unitary") {
  const MomentumMode mode(0.9, 1.0, 0.0);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  const FloquetMode fm = floquet_mode(mode, d);
  CHECK(fm.n.x() == 0.0);
  CHECK(fm.n.y() == 0.0);
  CHECK(std::abs(fm.n.z()) == doctest::Approx(1.0));
  const Eigen::Matrix2cd U = one_cycle_unitary_oracle(mode, d);
  CHECK(std::abs(U(0, 1)) < 1e-15);
}

TEST_CASE("k = pi/2 at Omega T = 2 pi freezes the mode") {
  const double omega_shift = std::sqrt(100.0 + 0.49);
  const DriveProtocol d(10.0, omega_shift);
  const MomentumMode mode(std::numbers::pi / 2, 1.0, 0.7);
  const FloquetMode fm = floquet_mode(mode, d);
  CHECK(fm.degenerate);
  CHECK(fm.eps == doctest::Approx(0.0));
  CHECK((one_cycle_unitary_oracle(mode, d) - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
  const ModeState init{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  for (long m : {1L, 7L, 1000L}) CHECK(max_diff(evolve_mode_exact(mode, d, m, init), init) < 1e-12);
}

TEST_CASE("m = 0 leaves the state unchanged") {
  const MomentumMode mode(1.0, 1.0, 0.7);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  const ModeState init{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  CHECK(max_diff(evolve_mode_exact(mode, d, 0, init), init) == 0.0);
  CHECK(max_diff(evolve_mode_oracle(mode, d, 0, init), init) == 0.0);
}

TEST_CASE("closed form matches the oracle eigen-decomposition at k = 1") {
  const MomentumMode mode(1.0, 1.0, 0.7);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  const FloquetMode fm = floquet_mode(mode, d);
  const Eigen::Matrix2cd U = one_cycle_unitary_oracle(mode, d);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(U);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(std::abs(std::arg(es.eigenvalues()(i))) - fm.phase) < 1e-10);
  Eigen::Matrix2cd tx, ty, tz;
  tx << 0, 1, 1, 0;
  ty << 0, cplx(0, -1), cplx(0, 1), 0;
  tz << 1, 0, 0, -1;
  const Eigen::Matrix2cd rebuilt =
      std::cos(fm.phase) * Eigen::Matrix2cd::Identity() -
      cplx(0, 1) * std::sin(fm.phase) * (fm.n.x() * tx + fm.n.y() * ty + fm.n.z() * tz);
  CHECK((rebuilt - U).norm() < 1e-12);
}

TEST_CASE("random modes: oracle eigenphases and axis reconstruction") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const MomentumMode mode(std::numbers::pi * u(rng), 1.0, -1.5 + 3.0 * u(rng));
    const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.1 + 1.9 * u(rng));
    const FloquetMode fm = floquet_mode(mode, d);
    if (fm.degenerate) continue;
    const Eigen::Matrix2cd U = one_cycle_unitary_oracle(mode, d);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(U);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(std::abs(std::arg(es.eigenvalues()(j))) - fm.phase) < 1e-10);
    // traceless part of U is -i sin(phase) n.tau
    const cplx s = cplx(0, 1) / std::sin(fm.phase);
    const Eigen::Vector3d n((s * 0.5 * (U(0, 1) + U(1, 0))).real(),
                            (s * 0.5 * cplx(0, 1) * (U(0, 1) - U(1, 0))).real(),
                            (s * 0.5 * (U(0, 0) - U(1, 1))).real());
    CHECK((n - fm.n).norm() < 1e-9);
    CHECK(fm.n.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kappa -> -kappa flips the transverse axis components") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double k = std::numbers::pi * u(rng), kappa = 2.0 * u(rng);
    const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.2 + u(rng));
    const FloquetMode a = floquet_mode(MomentumMode(k, 1.0, kappa), d);
    const FloquetMode b = floquet_mode(MomentumMode(k, 1.0, -kappa), d);
    CHECK(a.eps == doctest::Approx(b.eps).epsilon(1e-14));
    CHECK(a.n.x() == doctest::Approx(-b.n.x()).epsilon(1e-12));
    CHECK(a.n.y() == doctest::Approx(-b.n.y()).epsilon(1e-12));
    CHECK(a.n.z() == doctest::Approx(b.n.z()).epsilon(1e-12));
  }
}

TEST_CASE("norm is conserved over 1e4 cycles") {
  const MomentumMode mode(0.37, 1.0, 0.7);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.63);
  const ModeState s = evolve_mode_exact(mode, d, 10000, ModeState::vacuum());
  CHECK(std::abs(s.norm2() - 1.0) < 1e-12);
  const ModeState o = evolve_mode_oracle(mode, d, 10000, ModeState::vacuum());
  CHECK(std::abs(o.norm2() - 1.0) < 1e-10);
  CHECK(max_diff(s, o) < 1e-9);
}

}  // TEST_SUITE
