#include "floqreset/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace floqreset {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Eigen::Matrix4cd sqrt_psd(const TwoSpinDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TwoSpinDensityMatrix XState::matrix() const {
  TwoSpinDensityMatrix m = TwoSpinDensityMatrix::Zero();
  m(0, 0) = a_plus;
  m(1, 1) = a_0;
  m(2, 2) = a_0;
  m(3, 3) = a_minus;
  m(0, 3) = b_1;
  m(3, 0) = std::conj(b_1);
  m(1, 2) = b_2;
  m(2, 1) = std::conj(b_2);
  return m;
}

double single_spin_entropy(double alpha0) {
  if (alpha0 < -kPsdTolerance || alpha0 > 1.0 + kPsdTolerance)
    throw Error(ErrorCode::DomainError, "occupation outside [0, 1]: " + std::to_string(alpha0));
  const double a = std::clamp(alpha0, 0.0, 1.0);
  return -xlogx(a) - xlogx(1.0 - a);
}

double von_neumann_entropy(const Eigen::Matrix2cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) s -= xlogx(std::max(es.eigenvalues()(i), 0.0));
  return s;
}

XState xy_two_spin_rdm(int l, const TransformSet& t) {
  if (l != 1 && l != 2) throw Error(ErrorCode::UnsupportedSeparation, "l must be 1 or 2");
  const double a0 = t.alpha0;
  XState x;
  if (l == 1) {
    x.a_plus = a0 * a0 - t.alpha1 * t.alpha1 + std::norm(t.F1);
    x.b_1 = t.F1;
    x.b_2 = t.alpha1;
  } else {
    x.a_plus = a0 * a0 - t.alpha2 * t.alpha2 + std::norm(t.F2);
    x.b_1 = t.F2 - 2.0 * (t.F2 * a0 - 2.0 * t.F1 * t.alpha1);
    x.b_2 = t.alpha2 + 2.0 * (t.alpha1 * t.alpha1 - t.alpha2 * a0 + std::norm(t.F1));
  }
  x.a_0 = a0 - x.a_plus;
  x.a_minus = 1.0 - 2.0 * a0 + x.a_plus;
  return x;
}

void check_density_matrix(const TwoSpinDensityMatrix& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::NotADensityMatrix, "matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kPsdTolerance)
    throw Error(ErrorCode::NotADensityMatrix, "trace differs from one");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTolerance)
    throw Error(ErrorCode::NotADensityMatrix,
                "negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
}

double concurrence_general(const TwoSpinDensityMatrix& rho_in) {
  check_density_matrix(rho_in);
  const TwoSpinDensityMatrix rho = 0.5 * (rho_in + rho_in.adjoint());
  Eigen::Matrix4cd Y = Eigen::Matrix4cd::Zero();
  // sigma^y (x) sigma^y
  Y(0, 3) = -1.0;
  Y(1, 2) = 1.0;
  Y(2, 1) = 1.0;
  Y(3, 0) = -1.0;
  const Eigen::Matrix4cd R = sqrt_psd(rho);
  // sqrt of the eigenvalues of rho Y rho* Y are the singular values of R Y R* Y
  const Eigen::Matrix4cd A = R * Y * R.conjugate() * Y;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(A);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double concurrence_xstate(const XState& x) {
  check_density_matrix(x.matrix());
  const double pm = std::sqrt(std::max(0.0, x.a_plus * x.a_minus));
  return 2.0 * std::max({0.0, std::abs(x.b_1) - x.a_0, std::abs(x.b_2) - pm});
}

TwoSpinDensityMatrix partial_transpose(const TwoSpinDensityMatrix& rho) {
  TwoSpinDensityMatrix out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

}  // namespace floqreset
