#include "tns/config.hpp"

#include <fstream>
#include <sstream>

#include "tns/errors.hpp"

namespace tns {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& msg, int lineno) {
  if (lineno > 0) throw ConfigError("config line " + std::to_string(lineno) + ": " + msg);
  throw ConfigError("config: " + msg);
}

double parse_double(const std::string& v, const std::string& key, int lineno) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail("malformed numeric value '" + v + "' for key '" + key + "'", lineno);
  }
}

int parse_int(const std::string& v, const std::string& key, int lineno) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return static_cast<int>(x);
  } catch (...) {
    fail("malformed integer value '" + v + "' for key '" + key + "'", lineno);
  }
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value,
                        int lineno) {
  const std::string v = trim(value);
  if (key == "n")
    cfg.n = parse_int(v, key, lineno);
  else if (key == "m")
    cfg.m = parse_int(v, key, lineno);
  else if (key == "grid_factor")
    cfg.grid_factor = parse_int(v, key, lineno);
  else if (key == "dt")
    cfg.dt = parse_double(v, key, lineno);
  else if (key == "t_final")
    cfg.t_final = parse_double(v, key, lineno);
  else if (key == "scheme") {
    if (v == "rk4")
      cfg.scheme = Scheme::rk4;
    else if (v == "ifrk4")
      cfg.scheme = Scheme::ifrk4;
    else
      fail("scheme must be rk4 or ifrk4, got '" + v + "'", lineno);
  } else if (key == "dealias") {
    if (v == "exact_pad")
      cfg.dealias = Dealias::exact_pad;
    else if (v == "two_thirds")
      cfg.dealias = Dealias::two_thirds;
    else
      fail("dealias must be exact_pad or two_thirds, got '" + v + "'", lineno);
  } else if (key == "scenario")
    cfg.scenario = v;
  else if (key == "tensor")
    cfg.tensor_spec = v;
  else if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(std::stoull(v));
  else if (key == "decay_exponent")
    cfg.decay_exponent = parse_double(v, key, lineno);
  else if (key == "u0_scale")
    cfg.u0_scale = parse_double(v, key, lineno);
  else if (key == "convection") {
    if (v == "on")
      cfg.convection = true;
    else if (v == "off")
      cfg.convection = false;
    else
      fail("convection must be on or off", lineno);
  } else if (key == "nu0") {
    if (v == "auto")
      cfg.nu0.reset();
    else
      cfg.nu0 = parse_double(v, key, lineno);
  } else if (key == "output_csv")
    cfg.output_csv = v;
  else if (key == "snapshot_prefix")
    cfg.snapshot_prefix = v;
  else if (key == "snapshot_every")
    cfg.snapshot_every = parse_int(v, key, lineno);
  else if (key == "tol_spectral")
    cfg.tol_spectral = parse_double(v, key, lineno);
  else if (key == "tol_grid")
    cfg.tol_grid = parse_double(v, key, lineno);
  else if (key == "ellipticity_samples")
    cfg.ellipticity_samples = parse_int(v, key, lineno);
  else if (key == "threshold_regime") {
    if (v == "constant")
      cfg.threshold_regime = ThresholdRegime::constant_coeff;
    else if (v == "variable")
      cfg.threshold_regime = ThresholdRegime::variable_coeff;
    else
      fail("threshold_regime must be constant or variable", lineno);
  } else if (key == "c_star")
    cfg.c_star = parse_double(v, key, lineno);
  else if (key == "c_tilde_star") {
    if (v == "auto")
      cfg.c_tilde_star.reset();
    else
      cfg.c_tilde_star = parse_double(v, key, lineno);
  } else if (key == "sigma_tilde") {
    if (v == "auto")
      cfg.sigma_tilde.reset();
    else
      cfg.sigma_tilde = parse_double(v, key, lineno);
  } else if (key == "commutator_radius")
    cfg.commutator_radius = parse_int(v, key, lineno);
  else if (key == "c_a_override")
    cfg.c_a_override = parse_double(v, key, lineno);
  else if (key == "a_norm_override")
    cfg.a_norm_override = parse_double(v, key, lineno);
  else if (key == "force_norm_sq")
    cfg.force_norm_sq = parse_double(v, key, lineno);
  else
    fail("unknown key '" + key + "'", lineno);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key", lineno);
    apply_config_entry(cfg, key, value, lineno);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("config: n must be >= 1");
  if (cfg.m < 1) throw ConfigError("config: m must be >= 1");
  if (cfg.dt <= 0.0) throw ConfigError("config: dt must be > 0");
  if (cfg.t_final <= 0.0) throw ConfigError("config: t_final must be > 0");
  if (cfg.u0_scale < 0.0) throw ConfigError("config: u0_scale must be >= 0");
  if (cfg.snapshot_every < 0) throw ConfigError("config: snapshot_every must be >= 0");
  if (cfg.ellipticity_samples <= 0) throw ConfigError("config: ellipticity_samples must be > 0");
  if (cfg.c_star <= 0.0) throw ConfigError("config: c_star must be > 0");
  if (cfg.commutator_radius < 2) throw ConfigError("config: commutator_radius must be >= 2");
  if (cfg.force_norm_sq < 0.0) throw ConfigError("config: force_norm_sq must be >= 0");
  if (cfg.grid_factor != 0) {
    // consistency of (m, grid_factor) with the alias-free product requirement;
    // the tensor bandwidth is re-checked at run time where the tensor is known
    const int N = cfg.grid_factor * cfg.m + 1;
    const int min_N = product_grid_size(cfg.m, cfg.m, cfg.m, Dealias::two_thirds);
    if (N < min_N)
      throw ConfigError("config: grid_factor " + std::to_string(cfg.grid_factor) +
                        " gives grid " + std::to_string(N) +
                        " below the alias-free minimum " + std::to_string(min_N) +
                        " for m = " + std::to_string(cfg.m));
  }
}

ViscosityTensor tensor_from_config(const RunConfig& cfg) {
  std::istringstream in(cfg.tensor_spec);
  std::string head;
  in >> head;
  if (head == "isotropic") {
    std::string kv;
    if (!(in >> kv) || kv.rfind("nu=", 0) != 0)
      throw ConfigError("config: tensor isotropic needs nu=<real>");
    return ViscosityTensor::isotropic(cfg.n, std::stod(kv.substr(3)));
  }
  if (head == "file") {
    std::string path;
    if (!(in >> path)) throw ConfigError("config: tensor file needs a path");
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open tensor spec '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_tensor_spec(buf.str(), cfg.n);
  }
  throw ConfigError("config: tensor must be 'isotropic nu=<real>' or 'file <path>'");
}

}  // namespace tns
