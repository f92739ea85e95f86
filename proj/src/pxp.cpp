#include "floqreset/pxp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace floqreset {

namespace {

const std::complex<double> I1{0.0, 1.0};

Config mask_of(int L) { return L >= 32 ? ~Config{0} : (Config{1} << L) - 1; }

bool bit(Config s, int j) { return (s >> j) & 1U; }

void check_size(int L) {
  if (L < 2 || L > 28) throw Error(ErrorCode::SizeOutOfRange, "PXP ring length must lie in [2, 28]");
  if (L % 2) throw Error(ErrorCode::OddChainLength, "PXP ring length must be even");
}

// A single-site operator |t><s|, optionally dressed with the neighbouring
// down projectors. Returns the coefficient and updates x.
double apply_site(Config& x, int p, int s, int t, Dressing dressing, int L) {
  const bool nb = !bit(x, (p + L - 1) % L) && !bit(x, (p + 1) % L);
  if (dressing == Dressing::Plain || s != t) {
    if (static_cast<int>(bit(x, p)) != s) return 0.0;
    if (dressing == Dressing::Projected && !nb) return 0.0;
    x = t ? (x | (Config{1} << p)) : (x & ~(Config{1} << p));
    return 1.0;
  }
  // (I +- P sigma^z P) / 2
  if (!nb) return 0.5;
  const double sz = bit(x, p) ? 1.0 : -1.0;
  return 0.5 + 0.5 * (s ? sz : -sz);
}

std::uint64_t term_key(int entry, int src, int dst) {
  return (static_cast<std::uint64_t>(entry) << 56) | (static_cast<std::uint64_t>(src) << 28) |
         static_cast<std::uint64_t>(dst);
}

struct Coordinates {
  std::vector<int> index;
  std::vector<double> factor;
};

Coordinates full_coordinates(const ConstrainedBasis& basis) {
  Coordinates c;
  c.index.resize(basis.size());
  c.factor.assign(basis.size(), 1.0);
  for (std::size_t i = 0; i < basis.size(); ++i) c.index[i] = static_cast<int>(i);
  return c;
}

Coordinates sector_coordinates(const ConstrainedBasis& basis, const SymmetrySector& sector) {
  Coordinates c;
  c.index.resize(basis.size());
  c.factor.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c.index[i] = sector.orbit_of(i);
    c.factor[i] = 1.0 / std::sqrt(static_cast<double>(sector.orbit_size(c.index[i])));
  }
  return c;
}

// Terms of <psi| (|t_i><s_i|)_i (|t_j><s_j|)_j |psi> for every basis-state
// pair (a, b) of the listed sites; `sites` has one or two entries.
template <class Term>
std::vector<Term> build_terms(const ConstrainedBasis& basis, const Coordinates& coords,
                              const std::vector<int>& sites, Dressing dressing) {
  const int L = basis.L();
  const int ns = static_cast<int>(sites.size());
  const int dim = 1 << ns;
  std::unordered_map<std::uint64_t, double> acc;
  std::vector<std::uint64_t> order;
  for (std::size_t ci = 0; ci < basis.size(); ++ci) {
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        Config x = basis[ci];
        double coef = 1.0;
        // rightmost site acts first
        for (int q = ns - 1; q >= 0 && coef != 0.0; --q) {
          const int shift = ns - 1 - q;
          const int s = 1 - ((a >> shift) & 1);
          const int t = 1 - ((b >> shift) & 1);
          coef *= apply_site(x, sites[q], s, t, dressing, L);
        }
        if (coef == 0.0) continue;
        const long di = basis.index(x);
        if (di < 0) continue;
        const int src = coords.index[ci];
        const int dst = coords.index[di];
        const auto key = term_key(a * dim + b, src, dst);
        auto [it, inserted] = acc.emplace(key, 0.0);
        if (inserted) order.push_back(key);
        it->second += coef * coords.factor[ci] * coords.factor[di];
      }
    }
  }
  std::vector<Term> terms;
  terms.reserve(order.size());
  for (auto key : order) {
    const double c = acc[key];
    if (c == 0.0) continue;
    terms.push_back({static_cast<int>(key >> 56), static_cast<int>((key >> 28) & 0xFFFFFFF),
                     static_cast<int>(key & 0xFFFFFFF), c});
  }
  return terms;
}

}  // namespace

Config rotate_config(Config s, int L) { return ((s << 1) | (s >> (L - 1))) & mask_of(L); }

Config reflect_config(Config s, int L) {
  Config r = 0;
  for (int j = 0; j < L; ++j)
    if (bit(s, j)) r |= Config{1} << (L - 1 - j);
  return r;
}

bool is_constrained(Config s, int L) { return (s & rotate_config(s, L)) == 0; }

ConstrainedBasis::ConstrainedBasis(int L) : L_(L) {
  check_size(L);
  const Config end = Config{1} << L;
  for (Config s = 0; s < end; ++s) {
    if (s & (s >> 1)) {
      // skip to the next string whose lowest adjacent pair is cleared
      const Config low = s & (s >> 1);
      const int j = std::countr_zero(low);
      s = ((s >> j) + 1) << j;
      --s;
      continue;
    }
    if (is_constrained(s, L)) states_.push_back(s);
  }
}

long ConstrainedBasis::index(Config s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return -1;
  return it - states_.begin();
}

ConstrainedBasis enumerate_constrained_basis(int L) { return ConstrainedBasis(L); }

std::size_t brute_force_constrained_count(int L) {
  std::size_t count = 0;
  for (Config s = 0; s < (Config{1} << L); ++s) {
    bool ok = true;
    for (int j = 0; j < L && ok; ++j)
      if (bit(s, j) && bit(s, (j + 1) % L)) ok = false;
    count += ok;
  }
  return count;
}

SymmetrySector::SymmetrySector(const ConstrainedBasis& basis, int momentum, int parity) {
  if (momentum != 0 || parity != 1)
    throw Error(ErrorCode::InvalidValue, "only the K = 0, P = +1 sector is supported");
  const int L = basis.L();
  orbit_of_.assign(basis.size(), -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (orbit_of_[i] >= 0) continue;
    std::vector<Config> orbit;
    Config t = basis[i];
    for (int r = 0; r < L; ++r) {
      orbit.push_back(t);
      orbit.push_back(reflect_config(t, L));
      t = rotate_config(t, L);
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    // ascending enumeration visits each orbit first at its minimum
    const int a = static_cast<int>(reps_.size());
    reps_.push_back(orbit.front());
    orbit_size_.push_back(static_cast<int>(orbit.size()));
    for (Config s : orbit) orbit_of_[basis.index(s)] = a;
  }
}

long SymmetrySector::index_of_representative(Config rep) const {
  auto it = std::lower_bound(reps_.begin(), reps_.end(), rep);
  if (it == reps_.end() || *it != rep) return -1;
  return it - reps_.begin();
}

Eigen::VectorXcd SymmetrySector::expand(const Eigen::VectorXcd& c) const {
  Eigen::VectorXcd out(orbit_of_.size());
  for (std::size_t i = 0; i < orbit_of_.size(); ++i)
    out(i) = c(orbit_of_[i]) / std::sqrt(static_cast<double>(orbit_size_[orbit_of_[i]]));
  return out;
}

Eigen::MatrixXd SymmetrySector::embedding() const {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(orbit_of_.size(), reps_.size());
  for (std::size_t i = 0; i < orbit_of_.size(); ++i)
    E(i, orbit_of_[i]) = 1.0 / std::sqrt(static_cast<double>(orbit_size_[orbit_of_[i]]));
  return E;
}

SymmetrySector build_symmetry_sector(const ConstrainedBasis& basis, int momentum, int parity) {
  return SymmetrySector(basis, momentum, parity);
}

Eigen::MatrixXd build_pxp_hamiltonian(const ConstrainedBasis& basis, const SymmetrySector& sector,
                                      double w, double lambda) {
  const int L = basis.L();
  const auto D = static_cast<Eigen::Index>(sector.dimension());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
  for (Eigen::Index b = 0; b < D; ++b) {
    const Config s = sector.representative(b);
    H(b, b) = -lambda * (2.0 * std::popcount(s) - L);
    const double Nb = sector.orbit_size(b);
    for (int j = 0; j < L; ++j) {
      const Config t = s ^ (Config{1} << j);
      const long ti = basis.index(t);
      if (ti < 0) continue;
      const int a = sector.orbit_of(ti);
      H(a, b) += w * std::sqrt(Nb / sector.orbit_size(a));
    }
  }
  return H;
}

Eigen::MatrixXd build_pxp_hamiltonian_full(const ConstrainedBasis& basis, double w, double lambda) {
  const int L = basis.L();
  const auto D = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
  for (Eigen::Index b = 0; b < D; ++b) {
    const Config s = basis[b];
    H(b, b) = -lambda * (2.0 * std::popcount(s) - L);
    for (int j = 0; j < L; ++j) {
      const long a = basis.index(s ^ (Config{1} << j));
      if (a >= 0) H(a, b) += w;
    }
  }
  return H;
}

Eigen::VectorXd FloquetOperator::quasienergies() const { return -theta / period; }

Eigen::VectorXd FloquetOperator::quasienergy_magnitudes() const {
  Eigen::VectorXd e(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    e(i) = std::acos(std::clamp(std::cos(theta(i)), -1.0, 1.0)) / period;
  return e;
}

FloquetOperator floquet_operator(const Eigen::MatrixXd& H_plus, const Eigen::MatrixXd& H_minus,
                                 double period) {
  auto half_step = [&](const Eigen::MatrixXd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const Eigen::VectorXcd ph =
        (-I1 * (period / 2.0) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
    const Eigen::MatrixXcd V = es.eigenvectors().cast<std::complex<double>>();
    return Eigen::MatrixXcd(V * ph.asDiagonal() * V.transpose());
  };
  FloquetOperator F;
  F.period = period;
  F.U = half_step(H_minus) * half_step(H_plus);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(F.U);
  F.Q = schur.matrixU();
  const auto& T = schur.matrixT();
  F.theta.resize(T.rows());
  for (Eigen::Index i = 0; i < T.rows(); ++i) F.theta(i) = std::arg(T(i, i));
  return F;
}

Eigen::VectorXcd stroboscopic_state(const FloquetOperator& F, const Eigen::VectorXcd& init, long m) {
  Eigen::VectorXcd c = F.Q.adjoint() * init;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, static_cast<double>(m) * F.theta(i));
  return F.Q * c;
}

double prethermal_average(const std::vector<double>& series, int m_lo, int m_hi) {
  if (m_lo < 1 || m_hi < m_lo) throw Error(ErrorCode::EmptyWindow, "window needs 1 <= lo <= hi");
  if (static_cast<std::size_t>(m_hi) >= series.size())
    throw Error(ErrorCode::LengthMismatch, "series shorter than the averaging window");
  double s = 0.0;
  for (int m = m_lo; m <= m_hi; ++m) s += series[m];
  return s / (m_hi - m_lo + 1);
}

PairRdmPlan::PairRdmPlan(const ConstrainedBasis& basis, int i, int j, Dressing dressing)
    : terms_(build_terms<Term>(basis, full_coordinates(basis), {i, j}, dressing)) {}

PairRdmPlan::PairRdmPlan(const ConstrainedBasis& basis, const SymmetrySector& sector, int i, int j,
                         Dressing dressing)
    : terms_(build_terms<Term>(basis, sector_coordinates(basis, sector), {i, j}, dressing)) {}

TwoSpinDensityMatrix PairRdmPlan::operator()(const Eigen::VectorXcd& c) const {
  std::complex<double> e[16] = {};
  for (const Term& t : terms_) e[t.entry] += t.coef * std::conj(c(t.dst)) * c(t.src);
  TwoSpinDensityMatrix rho;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rho(a, b) = e[4 * a + b];
  return rho;
}

SiteRdmPlan::SiteRdmPlan(const ConstrainedBasis& basis, int i)
    : terms_(build_terms<Term>(basis, full_coordinates(basis), {i}, Dressing::Plain)) {}

SiteRdmPlan::SiteRdmPlan(const ConstrainedBasis& basis, const SymmetrySector& sector, int i)
    : terms_(build_terms<Term>(basis, sector_coordinates(basis, sector), {i}, Dressing::Plain)) {}

Eigen::Matrix2cd SiteRdmPlan::operator()(const Eigen::VectorXcd& c) const {
  std::complex<double> e[4] = {};
  for (const Term& t : terms_) e[t.entry] += t.coef * std::conj(c(t.dst)) * c(t.src);
  Eigen::Matrix2cd rho;
  rho << e[0], e[1], e[2], e[3];
  return rho;
}

TwoSpinDensityMatrix pxp_two_spin_rdm(const ConstrainedBasis& basis, const Eigen::VectorXcd& state,
                                      int i, int j, Dressing dressing) {
  return PairRdmPlan(basis, i, j, dressing)(state);
}

PXPSystem::PXPSystem(int L, int separation, Dressing dressing)
    : basis_(L),
      sector_(basis_, 0, 1),
      separation_(separation),
      kinetic_(build_pxp_hamiltonian(basis_, sector_, 1.0, 0.0)),
      zdiag_(-build_pxp_hamiltonian(basis_, sector_, 0.0, 1.0).diagonal()),
      pair_(basis_, sector_, 0, separation, dressing),
      site_(basis_, sector_, 0) {
  if (separation != 1 && separation != 2)
    throw Error(ErrorCode::UnsupportedSeparation, "l must be 1 or 2");
}

Eigen::MatrixXd PXPSystem::hamiltonian(double w, double lambda) const {
  Eigen::MatrixXd H = w * kinetic_;
  H.diagonal() -= lambda * zdiag_;
  return H;
}

FloquetOperator PXPSystem::floquet(double w, double lambda0, double period) const {
  return floquet_operator(hamiltonian(w, lambda0), hamiltonian(w, -lambda0), period);
}

Eigen::VectorXcd PXPSystem::initial_state() const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector_.dimension()));
  psi(static_cast<Eigen::Index>(sector_.all_down())) = 1.0;
  return psi;
}

}  // namespace floqreset
