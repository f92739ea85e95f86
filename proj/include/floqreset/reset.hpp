#pragma once

// Stochastic resetting at cycle boundaries. A reset returns the system to its
// initial state; between resets it evolves unitarily.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "floqreset/entanglement.hpp"
#include "floqreset/xy_correlators.hpp"

namespace floqreset {

/// Probability that the last reset before cycle m happened q cycles earlier
/// (q = m: no reset at all).
struct ResetWeights {
  long m = 0;
  std::vector<double> weight;

  double operator()(long q) const { return weight.at(static_cast<std::size_t>(q)); }
};

ResetWeights reset_weights(double r, double period, long m);

/// Renewal average at cycle m via the closed geometric sums.
Correlators reset_average_correlators(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                      double r, double period, long m);

/// Renewal average at cycle m by summing weight(q) C(q) term by term.
Correlators reset_average_explicit(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                   double r, double period, long m);

/// m -> infinity limit; GGE at r = 0.
Correlators reset_steady_state_correlators(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                           double r, double period);

/// Convex combination sum_q weight(q) rho(q); history holds rho(0..m).
/// Throws LengthMismatch when history is empty.
TwoSpinDensityMatrix reset_average_rho(const std::vector<TwoSpinDensityMatrix>& history, double r,
                                       double period);

/// Deterministic per-trajectory random streams: trajectory i draws from a
/// generator seeded by a SplitMix64 hash of (seed, i).
class SplitStream {
 public:
  explicit SplitStream(std::uint64_t seed) : seed_(seed) {}
  std::mt19937_64 stream(std::uint64_t index) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Number of cycles since the last reset at observation cycle m, sampled by
/// drawing a reset with probability p_r at each of the m cycle boundaries.
long sample_reset_age(std::mt19937_64& rng, double reset_probability, long m);

/// Mean and standard error of a Monte-Carlo estimate.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Trajectory estimate of E[f(age)] for a real function of the reset age,
/// evaluated for several components at once.
std::vector<Estimate> trajectory_average(const std::function<std::vector<double>(long)>& f,
                                         double r, double period, long m, long trajectories,
                                         std::uint64_t seed);

}  // namespace floqreset
