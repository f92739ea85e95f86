#pragma once

// Parameter types shared by every model, plus validation of raw key/value
// configurations.
//
// Units: hbar = 1. XY runs measure energies in units of J, PXP runs in
// units of w. Times are in 1/J (1/w) and reset rates in J (w).

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "floqreset/errors.hpp"

namespace floqreset {

enum class Model { XY, PXP };

const char* to_string(Model m);

struct UnitSystem {
  Model model = Model::XY;

  /// "J" for XY, "w" for PXP.
  const char* energy_unit() const { return model == Model::XY ? "J" : "w"; }
  std::string rate_label() const { return std::string("[") + energy_unit() + "/hbar]"; }
  std::string time_label() const { return std::string("[hbar/") + energy_unit() + "]"; }
};

/// Order of the two square-pulse half cycles. Only `PlusFirst`
/// (lambda = +lambda0 on [0, T/2]) is used by the closed forms; the flag is
/// recorded in run manifests.
enum class HalfCycleOrder { PlusFirst };

const char* to_string(HalfCycleOrder o);

class DriveProtocol {
 public:
  DriveProtocol() = default;
  DriveProtocol(double lambda0, double omega) : lambda0_(lambda0), omega_(omega) {}

  static DriveProtocol from_ratio(double lambda0, double hbar_omega_over_lambda0) {
    return {lambda0, hbar_omega_over_lambda0 * lambda0};
  }

  double lambda0() const { return lambda0_; }
  double omega() const { return omega_; }
  double period() const { return 2.0 * std::numbers::pi / omega_; }
  /// lambda0 T / (2 hbar)
  double alpha() const { return lambda0_ * period() / 2.0; }
  double omega_ratio() const { return omega_ / lambda0_; }
  HalfCycleOrder order() const { return HalfCycleOrder::PlusFirst; }

 private:
  double lambda0_ = 1.0;
  double omega_ = 1.0;
};

struct XYParams {
  double J = 1.0;
  double kappa = 0.0;
  /// Unset: thermodynamic limit (momentum integrals). Set: finite even chain
  /// with anti-periodic fermion momenta k = (2n-1) pi / L.
  std::optional<int> L;

  bool finite() const { return L.has_value(); }
};

struct PXPParams {
  double w = 1.0;
  int L = 20;
  int momentum = 0;
  int parity = +1;
};

struct ResetSpec {
  double r = 0.0;

  /// p_r = 1 - exp(-r T), computed without cancellation for small r T.
  double probability(double period) const { return -std::expm1(-r * period); }
};

enum class Dressing { Plain, Projected };

struct ValidatedConfig {
  Model model = Model::XY;
  DriveProtocol drive;
  XYParams xy;
  PXPParams pxp;
  ResetSpec reset;

  std::vector<double> r_grid;
  /// Absolute drive frequencies for sweeps (empty: single frequency `drive`).
  std::vector<double> omega_grid;
  /// Drive amplitudes for (lambda0, omega) maps.
  std::vector<double> lambda0_grid;

  int m_max = 200;
  int quadrature_n = 512;
  double tolerance = 1e-9;
  int separation = 2;
  int window_lo = 1001;
  int window_hi = 1100;
  Dressing dressing = Dressing::Plain;
  int n_max = 3;
  int k_points = 64;

  UnitSystem units() const { return UnitSystem{model}; }
  double period() const { return drive.period(); }
  double alpha() const { return drive.alpha(); }
  double reset_probability() const { return reset.probability(drive.period()); }
};

using RawConfig = std::map<std::string, std::string>;

/// Keys accepted by validate_config.
const std::vector<std::string>& known_config_keys();

/// Checks a raw key/value map and derives T, alpha and p_r.
/// Throws Error with NonPositiveAmplitude, NegativeRate, OddChainLength,
/// MissingKey, UnknownKey or InvalidValue.
ValidatedConfig validate_config(const RawConfig& raw);

/// Inverse of validate_config: every field written back with round-trip
/// precision, so validate(serialize(validate(x))) == validate(x).
RawConfig serialize_config(const ValidatedConfig& cfg);

/// Parses a grid spec: "a,b,c", "lin:a:b:n" or "log:a:b:n". A leading
/// "0+" prepends an exact zero (e.g. "0+log:1e-3:10:60").
std::vector<double> parse_grid(const std::string& spec);

/// Default reset-rate grid: r = 0 followed by 60 log-spaced rates in [1e-3, 10].
std::vector<double> default_r_grid();

bool operator==(const ValidatedConfig& a, const ValidatedConfig& b);

}  // namespace floqreset
