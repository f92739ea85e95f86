#include "floqreset/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace floqreset {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveAmplitude: return "NonPositiveAmplitude";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::OddChainLength: return "OddChainLength";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::SteadyStateNotConverged: return "SteadyStateNotConverged";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotADensityMatrix: return "NotADensityMatrix";
    case ErrorCode::UnsupportedSeparation: return "UnsupportedSeparation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveAmplitude:
    case ErrorCode::NegativeRate:
    case ErrorCode::OddChainLength:
    case ErrorCode::MissingKey:
    case ErrorCode::UnknownKey:
    case ErrorCode::InvalidValue:
    case ErrorCode::SizeOutOfRange:
    case ErrorCode::UnsupportedSeparation:
    case ErrorCode::EmptyWindow:
      return true;
    default:
      return false;
  }
}

bool is_convergence_error(ErrorCode code) {
  return code == ErrorCode::QuadratureNotConverged || code == ErrorCode::SteadyStateNotConverged;
}

const char* to_string(Model m) { return m == Model::XY ? "XY" : "PXP"; }

const char* to_string(HalfCycleOrder) { return "plus_first"; }

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidValue, key + " = '" + text + "' is not a finite number");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw Error(ErrorCode::InvalidValue, key + " = '" + text + "' is not an integer");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "model",       "J",           "kappa",        "w",            "L",
      "lambda0",     "omega_ratio", "omega_D",      "r",            "r_grid",
      "m_max",       "quadrature_n", "tolerance",   "omega_grid",   "omega_ratio_grid",
      "lambda0_grid", "l",          "window",       "dressing",     "n_max",
      "k_points",    "half_cycle_order"};
  return keys;
}

std::vector<double> default_r_grid() {
  std::vector<double> g{0.0};
  const int n = 60;
  for (int i = 0; i < n; ++i) g.push_back(std::pow(10.0, -3.0 + 4.0 * i / (n - 1)));
  return g;
}

std::vector<double> parse_grid(const std::string& spec_in) {
  std::string spec = trim(spec_in);
  std::vector<double> out;
  if (spec.rfind("0+", 0) == 0) {
    out.push_back(0.0);
    spec = spec.substr(2);
  }
  auto colon_parts = [&](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    return parts;
  };
  if (spec.rfind("lin:", 0) == 0 || spec.rfind("log:", 0) == 0) {
    auto parts = colon_parts(spec);
    if (parts.size() != 4) throw Error(ErrorCode::InvalidValue, "grid spec '" + spec + "' needs kind:a:b:n");
    const double a = parse_double("grid", parts[1]);
    const double b = parse_double("grid", parts[2]);
    const int n = parse_int("grid", parts[3]);
    if (n < 1) throw Error(ErrorCode::InvalidValue, "grid size must be >= 1");
    const bool log = parts[0] == "log";
    if (log && (a <= 0 || b <= 0)) throw Error(ErrorCode::InvalidValue, "log grid bounds must be > 0");
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      out.push_back(log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
    }
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double("grid", item));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidValue, "empty grid '" + spec_in + "'");
  return out;
}

ValidatedConfig validate_config(const RawConfig& raw) {
  const auto& keys = known_config_keys();
  for (const auto& [k, v] : raw) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw Error(ErrorCode::UnknownKey, "unknown configuration key '" + k + "'");
  }
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    auto it = raw.find(k);
    if (it == raw.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const std::string& k) -> std::string {
    auto v = get(k);
    if (!v) throw Error(ErrorCode::MissingKey, "missing required key '" + k + "'");
    return *v;
  };

  ValidatedConfig cfg;
  const std::string model = trim(require("model"));
  if (model == "XY" || model == "xy") {
    cfg.model = Model::XY;
  } else if (model == "PXP" || model == "pxp") {
    cfg.model = Model::PXP;
  } else {
    throw Error(ErrorCode::InvalidValue, "model must be XY or PXP, got '" + model + "'");
  }

  if (auto o = get("half_cycle_order"); o && trim(*o) != "plus_first")
    throw Error(ErrorCode::InvalidValue, "only half_cycle_order = plus_first is supported");

  const double lambda0 = parse_double("lambda0", require("lambda0"));
  if (lambda0 <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "lambda0 must be > 0");

  if (auto g = get("lambda0_grid")) {
    cfg.lambda0_grid = parse_grid(*g);
    for (double x : cfg.lambda0_grid)
      if (x <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "lambda0_grid entries must be > 0");
  }
  if (get("omega_grid") && get("omega_ratio_grid"))
    throw Error(ErrorCode::InvalidValue, "give either omega_grid or omega_ratio_grid, not both");
  if (auto g = get("omega_grid")) cfg.omega_grid = parse_grid(*g);
  if (auto g = get("omega_ratio_grid")) {
    for (double x : parse_grid(*g)) cfg.omega_grid.push_back(x * lambda0);
  }
  for (double x : cfg.omega_grid)
    if (x <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "drive frequencies must be > 0");

  double omega = 0.0;
  if (get("omega_D") && get("omega_ratio"))
    throw Error(ErrorCode::InvalidValue, "give either omega_D or omega_ratio, not both");
  if (auto v = get("omega_D")) {
    omega = parse_double("omega_D", *v);
  } else if (auto v = get("omega_ratio")) {
    omega = parse_double("omega_ratio", *v) * lambda0;
  } else if (!cfg.omega_grid.empty()) {
    omega = cfg.omega_grid.front();
  } else {
    throw Error(ErrorCode::MissingKey, "missing required key 'omega_ratio' (or 'omega_D')");
  }
  if (omega <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "omega_D must be > 0");
  cfg.drive = DriveProtocol(lambda0, omega);

  if (auto v = get("r")) cfg.reset.r = parse_double("r", *v);
  if (cfg.reset.r < 0) throw Error(ErrorCode::NegativeRate, "r must be >= 0");
  cfg.r_grid = get("r_grid") ? parse_grid(*get("r_grid")) : default_r_grid();
  for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) {
    if (cfg.r_grid[i] < 0) throw Error(ErrorCode::NegativeRate, "r_grid entries must be >= 0");
    if (i && cfg.r_grid[i] <= cfg.r_grid[i - 1])
      throw Error(ErrorCode::InvalidValue, "r_grid must be strictly increasing");
  }

  if (cfg.model == Model::XY) {
    if (get("w")) throw Error(ErrorCode::InvalidValue, "key 'w' applies to PXP runs only");
    if (auto v = get("J")) cfg.xy.J = parse_double("J", *v);
    if (cfg.xy.J <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "J must be > 0");
    cfg.xy.kappa = parse_double("kappa", require("kappa"));
    if (auto v = get("L")) {
      const int L = parse_int("L", *v);
      if (L <= 0) throw Error(ErrorCode::SizeOutOfRange, "L must be positive");
      if (L % 2) throw Error(ErrorCode::OddChainLength, "XY finite chains need even L");
      cfg.xy.L = L;
    }
  } else {
    if (get("J") || get("kappa")) throw Error(ErrorCode::InvalidValue, "keys 'J'/'kappa' apply to XY runs only");
    if (auto v = get("w")) cfg.pxp.w = parse_double("w", *v);
    if (cfg.pxp.w <= 0) throw Error(ErrorCode::NonPositiveAmplitude, "w must be > 0");
    if (auto v = get("L")) cfg.pxp.L = parse_int("L", *v);
    if (cfg.pxp.L % 2) throw Error(ErrorCode::OddChainLength, "PXP chains need even L");
    if (cfg.pxp.L < 2 || cfg.pxp.L > 28) throw Error(ErrorCode::SizeOutOfRange, "PXP L must lie in [2, 28]");
  }

  if (auto v = get("m_max")) cfg.m_max = parse_int("m_max", *v);
  if (cfg.m_max < 0) throw Error(ErrorCode::InvalidValue, "m_max must be >= 0");
  if (auto v = get("quadrature_n")) cfg.quadrature_n = parse_int("quadrature_n", *v);
  if (cfg.quadrature_n < 16) throw Error(ErrorCode::InvalidValue, "quadrature_n must be >= 16");
  if (auto v = get("tolerance")) cfg.tolerance = parse_double("tolerance", *v);
  if (cfg.tolerance <= 0) throw Error(ErrorCode::InvalidValue, "tolerance must be > 0");
  if (auto v = get("l")) cfg.separation = parse_int("l", *v);
  if (cfg.separation != 1 && cfg.separation != 2)
    throw Error(ErrorCode::UnsupportedSeparation, "l must be 1 or 2");
  if (auto v = get("window")) {
    const auto s = trim(*v);
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidValue, "window must be lo:hi");
    cfg.window_lo = parse_int("window", s.substr(0, colon));
    cfg.window_hi = parse_int("window", s.substr(colon + 1));
  }
  if (cfg.window_lo < 1 || cfg.window_hi < cfg.window_lo)
    throw Error(ErrorCode::EmptyWindow, "window needs 1 <= lo <= hi");
  if (auto v = get("dressing")) {
    const auto s = trim(*v);
    if (s == "plain") cfg.dressing = Dressing::Plain;
    else if (s == "projected") cfg.dressing = Dressing::Projected;
    else throw Error(ErrorCode::InvalidValue, "dressing must be plain or projected");
  }
  if (auto v = get("n_max")) cfg.n_max = parse_int("n_max", *v);
  if (cfg.n_max < 1) throw Error(ErrorCode::InvalidValue, "n_max must be >= 1");
  if (auto v = get("k_points")) cfg.k_points = parse_int("k_points", *v);
  if (cfg.k_points < 1) throw Error(ErrorCode::InvalidValue, "k_points must be >= 1");
  return cfg;
}

RawConfig serialize_config(const ValidatedConfig& cfg) {
  RawConfig raw;
  raw["model"] = to_string(cfg.model);
  raw["half_cycle_order"] = to_string(cfg.drive.order());
  raw["lambda0"] = format_double(cfg.drive.lambda0());
  raw["omega_D"] = format_double(cfg.drive.omega());
  raw["r"] = format_double(cfg.reset.r);
  raw["r_grid"] = format_list(cfg.r_grid);
  if (!cfg.omega_grid.empty()) raw["omega_grid"] = format_list(cfg.omega_grid);
  if (!cfg.lambda0_grid.empty()) raw["lambda0_grid"] = format_list(cfg.lambda0_grid);
  if (cfg.model == Model::XY) {
    raw["J"] = format_double(cfg.xy.J);
    raw["kappa"] = format_double(cfg.xy.kappa);
    if (cfg.xy.L) raw["L"] = std::to_string(*cfg.xy.L);
  } else {
    raw["w"] = format_double(cfg.pxp.w);
    raw["L"] = std::to_string(cfg.pxp.L);
  }
  raw["m_max"] = std::to_string(cfg.m_max);
  raw["quadrature_n"] = std::to_string(cfg.quadrature_n);
  raw["tolerance"] = format_double(cfg.tolerance);
  raw["l"] = std::to_string(cfg.separation);
  raw["window"] = std::to_string(cfg.window_lo) + ":" + std::to_string(cfg.window_hi);
  raw["dressing"] = cfg.dressing == Dressing::Plain ? "plain" : "projected";
  raw["n_max"] = std::to_string(cfg.n_max);
  raw["k_points"] = std::to_string(cfg.k_points);
  return raw;
}

bool operator==(const ValidatedConfig& a, const ValidatedConfig& b) {
  return a.model == b.model && a.drive.lambda0() == b.drive.lambda0() &&
         a.drive.omega() == b.drive.omega() && a.xy.J == b.xy.J && a.xy.kappa == b.xy.kappa &&
         a.xy.L == b.xy.L && a.pxp.w == b.pxp.w && a.pxp.L == b.pxp.L && a.reset.r == b.reset.r &&
         a.r_grid == b.r_grid && a.omega_grid == b.omega_grid && a.lambda0_grid == b.lambda0_grid &&
         a.m_max == b.m_max && a.quadrature_n == b.quadrature_n && a.tolerance == b.tolerance &&
         a.separation == b.separation && a.window_lo == b.window_lo && a.window_hi == b.window_hi &&
         a.dressing == b.dressing && a.n_max == b.n_max && a.k_points == b.k_points &&
         a.period() == b.period() && a.reset_probability() == b.reset_probability();
}

}  // namespace floqreset
