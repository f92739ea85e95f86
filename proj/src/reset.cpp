#include "floqreset/reset.hpp"

#include <cmath>
#include <map>

namespace floqreset {

ResetWeights reset_weights(double r, double period, long m) {
  if (r < 0) throw Error(ErrorCode::NegativeRate, "r must be >= 0");
  if (m < 0) throw Error(ErrorCode::InvalidValue, "m must be >= 0");
  ResetWeights w;
  w.m = m;
  w.weight.resize(static_cast<std::size_t>(m) + 1);
  const double rT = r * period;
  const double p = -std::expm1(-rT);
  for (long q = 0; q < m; ++q) w.weight[q] = p * std::exp(-rT * static_cast<double>(q));
  w.weight[m] = std::exp(-rT * static_cast<double>(m));
  return w;
}

Correlators reset_average_correlators(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                      double r, double period, long m) {
  return correlators_at(dec, fm, TimeSpec::reset_at(r, m), period);
}

Correlators reset_average_explicit(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                   double r, double period, long m) {
  const ResetWeights w = reset_weights(r, period, m);
  Correlators out;
  for (long q = 0; q <= m; ++q) {
    const Correlators c = correlators_at_cycle(dec, fm, q);
    out.d += w(q) * c.d;
    out.o += w(q) * c.o;
  }
  return out;
}

Correlators reset_steady_state_correlators(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                                           double r, double period) {
  return correlators_at(dec, fm, TimeSpec::reset_steady(r), period);
}

TwoSpinDensityMatrix reset_average_rho(const std::vector<TwoSpinDensityMatrix>& history, double r,
                                       double period) {
  if (history.empty()) throw Error(ErrorCode::LengthMismatch, "empty density-matrix history");
  const long m = static_cast<long>(history.size()) - 1;
  const ResetWeights w = reset_weights(r, period, m);
  TwoSpinDensityMatrix out = TwoSpinDensityMatrix::Zero();
  for (long q = 0; q <= m; ++q)
    if (w(q) != 0.0) out += w(q) * history[q];
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 SplitStream::stream(std::uint64_t index) const {
  return std::mt19937_64(splitmix64(splitmix64(seed_) ^ index));
}

long sample_reset_age(std::mt19937_64& rng, double reset_probability, long m) {
  std::bernoulli_distribution reset(reset_probability);
  long age = 0;
  for (long cycle = 0; cycle < m; ++cycle) {
    ++age;
    if (reset(rng)) age = 0;
  }
  return age;
}

std::vector<Estimate> trajectory_average(const std::function<std::vector<double>(long)>& f,
                                         double r, double period, long m, long trajectories,
                                         std::uint64_t seed) {
  const double p = -std::expm1(-r * period);
  const SplitStream streams(seed);
  std::map<long, long> ages;
  for (long t = 0; t < trajectories; ++t) {
    auto rng = streams.stream(static_cast<std::uint64_t>(t));
    ++ages[sample_reset_age(rng, p, m)];
  }
  std::vector<double> sum, sum2;
  for (const auto& [age, count] : ages) {
    const std::vector<double> v = f(age);
    if (sum.empty()) {
      sum.assign(v.size(), 0.0);
      sum2.assign(v.size(), 0.0);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      sum[i] += count * v[i];
      sum2[i] += count * v[i] * v[i];
    }
  }
  std::vector<Estimate> out(sum.size());
  const double n = static_cast<double>(trajectories);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const double mean = sum[i] / n;
    const double var = std::max(0.0, sum2[i] / n - mean * mean) * n / (n - 1.0);
    out[i] = {mean, std::sqrt(var / n)};
  }
  return out;
}

}  // namespace floqreset
