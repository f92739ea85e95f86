#pragma once

// Mode correlators C_d = <c_k^+ c_k> and C_o = <c_k c_{-k}> and their
// momentum transforms.

#include <optional>

#include "floqreset/quadrature.hpp"
#include "floqreset/xy_floquet.hpp"

namespace floqreset {

template <class T>
struct ChannelParts {
  T gge{};
  T odd{};
  T even{};

  /// gge + odd sin(2 chi) + even cos(2 chi)
  T at(double chi) const { return gge + odd * std::sin(2.0 * chi) + even * std::cos(2.0 * chi); }
  T combine(double f_odd, double f_even) const { return gge + odd * f_odd + even * f_even; }
};

struct CorrelatorDecomposition {
  ChannelParts<double> d;
  ChannelParts<cplx> o;
};

struct Correlators {
  double d = 0.0;
  cplx o{};
};

CorrelatorDecomposition correlator_decomposition(const FloquetMode& fm, const ModeState& init);
CorrelatorDecomposition correlator_decomposition(const MomentumMode& mode, const DriveProtocol& drive,
                                                 const ModeState& init);

Correlators correlators_at_cycle(const CorrelatorDecomposition& dec, const FloquetMode& fm, long m);

/// Direct expectation values in a mode state: C_d = |v|^2, C_o = conj(u) v.
Correlators correlators_of_state(const ModeState& s);

/// When the correlators are observed.
struct TimeSpec {
  enum class Kind { Cycle, GGE, ResetAt, ResetSteady };
  Kind kind = Kind::GGE;
  long m = 0;
  double r = 0.0;

  static TimeSpec cycle(long m) { return {Kind::Cycle, m, 0.0}; }
  static TimeSpec gge() { return {Kind::GGE, 0, 0.0}; }
  static TimeSpec reset_at(double r, long m) { return {Kind::ResetAt, m, r}; }
  static TimeSpec reset_steady(double r) { return {Kind::ResetSteady, 0, r}; }
};

/// Coefficients (f_odd, f_even) with C = gge + f_odd * odd + f_even * even.
struct TimeFactors {
  double odd = 0.0;
  double even = 0.0;
};

/// `phase` is |eps^F| T of the mode.
TimeFactors time_factors(const TimeSpec& spec, double phase, double period);

Correlators correlators_at(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                           const TimeSpec& spec, double period);

/// alpha_p = (1/pi) int_0^pi cos(pk) C_d dk and
/// F_p = (1/pi) int_0^pi sin(pk) conj(C_o) dk, or their discrete analogues
/// (2/L) sum over k = (2n-1) pi / L.
struct TransformSet {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  cplx F1{};
  cplx F2{};

  /// alpha_p for |p| <= 2; alpha_{-p} = conj(alpha_p) and all are real here.
  cplx alpha(int p) const;
  cplx F(int p) const;
};

enum class KernelVariant { Auto, Scalar, Avx2 };

struct XYContext {
  XYParams params;
  DriveProtocol drive;
  QuadratureOptions quad;
  KernelVariant kernel = KernelVariant::Auto;
};

/// Transforms for the all-down initial state.
TransformSet transforms(const XYContext& ctx, const TimeSpec& spec, QuadratureStats* stats = nullptr);

enum class Channel { D, O };

/// Single transform: alpha_p for Channel::D, F_p for Channel::O (p in {1, 2}).
cplx transform(Channel channel, int p, const TimeSpec& spec, const XYContext& ctx);

}  // namespace floqreset
