#pragma once

// Driven PXP ring: constrained basis, the K = 0, P = +1 symmetry sector,
// half-cycle Hamiltonians and the Floquet operator.
//
// Bit j of a configuration is 1 when spin j is up. sigma^z = +1 on an up spin.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "floqreset/config.hpp"
#include "floqreset/entanglement.hpp"

namespace floqreset {

using Config = std::uint32_t;

std::uint32_t rotate_config(Config s, int L);
std::uint32_t reflect_config(Config s, int L);
bool is_constrained(Config s, int L);

class ConstrainedBasis {
 public:
  explicit ConstrainedBasis(int L);

  int L() const { return L_; }
  std::size_t size() const { return states_.size(); }
  Config operator[](std::size_t i) const { return states_[i]; }
  const std::vector<Config>& states() const { return states_; }
  /// Position of s, or -1 when s is not a constrained configuration.
  long index(Config s) const;

 private:
  int L_;
  std::vector<Config> states_;
};

/// Throws SizeOutOfRange unless 2 <= L <= 28 and L is even.
ConstrainedBasis enumerate_constrained_basis(int L);

/// Count of constrained configurations by filtering all 2^L strings.
std::size_t brute_force_constrained_count(int L);

class SymmetrySector {
 public:
  SymmetrySector(const ConstrainedBasis& basis, int momentum, int parity);

  std::size_t dimension() const { return reps_.size(); }
  Config representative(std::size_t a) const { return reps_[a]; }
  int orbit_size(std::size_t a) const { return orbit_size_[a]; }
  /// Sector index of the orbit containing basis state i.
  int orbit_of(std::size_t i) const { return orbit_of_[i]; }
  long index_of_representative(Config rep) const;
  /// Sector index of the all-down configuration.
  std::size_t all_down() const { return 0; }

  /// Coefficients on the full constrained basis: c_a / sqrt(N_a) on every orbit member.
  Eigen::VectorXcd expand(const Eigen::VectorXcd& sector_state) const;
  /// Isometry from the sector to the full constrained space (columns are sector states).
  Eigen::MatrixXd embedding() const;

 private:
  std::vector<Config> reps_;
  std::vector<int> orbit_size_;
  std::vector<int> orbit_of_;
};

SymmetrySector build_symmetry_sector(const ConstrainedBasis& basis, int momentum = 0, int parity = +1);

/// H = sum_j (w sigma~^x_j - lambda sigma^z_j) in the sector, so H_+ uses lambda = +lambda0.
Eigen::MatrixXd build_pxp_hamiltonian(const ConstrainedBasis& basis, const SymmetrySector& sector,
                                      double w, double lambda);
/// Same operator on the full constrained space.
Eigen::MatrixXd build_pxp_hamiltonian_full(const ConstrainedBasis& basis, double w, double lambda);

struct FloquetOperator {
  Eigen::MatrixXcd U;
  /// Unitary eigenbasis (columns) with eigenphases theta: U = Q diag(e^{i theta}) Q^+.
  Eigen::MatrixXcd Q;
  Eigen::VectorXd theta;
  double period = 0.0;

  /// eps = -theta / T in (-pi/T, pi/T].
  Eigen::VectorXd quasienergies() const;
  /// (1/T) arccos(Re e^{i theta}) in [0, pi/T].
  Eigen::VectorXd quasienergy_magnitudes() const;
};

/// U = exp(-i H_- T/2) exp(-i H_+ T/2), each factor from a spectral decomposition.
FloquetOperator floquet_operator(const Eigen::MatrixXd& H_plus, const Eigen::MatrixXd& H_minus,
                                 double period);

/// Q diag(e^{i m theta}) Q^+ init.
Eigen::VectorXcd stroboscopic_state(const FloquetOperator& F, const Eigen::VectorXcd& init, long m);

/// Mean of series[m] over m in [m_lo, m_hi] (series is indexed by cycle).
double prethermal_average(const std::vector<double>& series, int m_lo = 1001, int m_hi = 1100);

/// Precomputed contractions giving the reduced density matrix of sites
/// (i, j) from coefficients on either the full basis or a sector.
class PairRdmPlan {
 public:
  PairRdmPlan(const ConstrainedBasis& basis, int i, int j, Dressing dressing);
  PairRdmPlan(const ConstrainedBasis& basis, const SymmetrySector& sector, int i, int j,
              Dressing dressing);

  TwoSpinDensityMatrix operator()(const Eigen::VectorXcd& coeffs) const;

 private:
  struct Term {
    int entry;
    int src;
    int dst;
    double coef;
  };
  std::vector<Term> terms_;
};

class SiteRdmPlan {
 public:
  SiteRdmPlan(const ConstrainedBasis& basis, int i);
  SiteRdmPlan(const ConstrainedBasis& basis, const SymmetrySector& sector, int i);

  Eigen::Matrix2cd operator()(const Eigen::VectorXcd& coeffs) const;

 private:
  struct Term {
    int entry;
    int src;
    int dst;
    double coef;
  };
  std::vector<Term> terms_;
};

/// Direct rdm of sites (i, j) from a state on the full constrained basis.
TwoSpinDensityMatrix pxp_two_spin_rdm(const ConstrainedBasis& basis, const Eigen::VectorXcd& state,
                                      int i, int j, Dressing dressing = Dressing::Plain);

/// Everything that depends only on (L, l, dressing); immutable and shareable.
class PXPSystem {
 public:
  PXPSystem(int L, int separation, Dressing dressing);

  int L() const { return basis_.L(); }
  int separation() const { return separation_; }
  const ConstrainedBasis& basis() const { return basis_; }
  const SymmetrySector& sector() const { return sector_; }

  Eigen::MatrixXd hamiltonian(double w, double lambda) const;
  FloquetOperator floquet(double w, double lambda0, double period) const;
  Eigen::VectorXcd initial_state() const;

  /// Two-spin rdm of sites (0, separation) from sector coefficients.
  TwoSpinDensityMatrix pair_rdm(const Eigen::VectorXcd& sector_state) const { return pair_(sector_state); }
  Eigen::Matrix2cd site_rdm(const Eigen::VectorXcd& sector_state) const { return site_(sector_state); }

 private:
  ConstrainedBasis basis_;
  SymmetrySector sector_;
  int separation_;
  Eigen::MatrixXd kinetic_;
  Eigen::VectorXd zdiag_;
  PairRdmPlan pair_;
  SiteRdmPlan site_;
};

}  // namespace floqreset
