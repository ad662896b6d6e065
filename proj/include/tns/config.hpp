#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tns/analysis.hpp"
#include "tns/galerkin.hpp"

namespace tns {

// Line-oriented key = value configuration; unknown keys are rejected with the
// offending line number. Defaults are documented in the README.
struct RunConfig {
  int n = 2;
  int m = 4;
  int grid_factor = 0;  // 0 = auto; else product grids use N = grid_factor*m + 1
  double dt = 1e-3;
  double t_final = 1.0;
  Scheme scheme = Scheme::rk4;
  Dealias dealias = Dealias::exact_pad;
  std::string scenario = "taylor_green";
  std::string tensor_spec = "isotropic nu=0.01";
  std::uint64_t seed = 0;
  double decay_exponent = 4.0;
  double u0_scale = 1.0;
  bool convection = true;
  std::optional<double> nu0;
  std::string output_csv;
  std::string snapshot_prefix;
  int snapshot_every = 0;
  double tol_spectral = 1e-12;
  double tol_grid = 1e-10;
  int ellipticity_samples = 10000;
  // threshold options
  ThresholdRegime threshold_regime = ThresholdRegime::constant_coeff;
  double c_star = 1.0;
  std::optional<double> c_tilde_star;
  std::optional<double> sigma_tilde;
  int commutator_radius = 64;
  std::optional<double> c_a_override;
  std::optional<double> a_norm_override;
  double force_norm_sq = 0.0;

  int resolved_grid_N() const { return grid_factor > 0 ? grid_factor * m + 1 : 0; }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// apply one "key = value" assignment (shared by file parsing and CLI --set)
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value,
                        int lineno = 0);

// cross-field consistency (positivity, grid_factor vs m and dealias mode)
void validate_config(const RunConfig& cfg);

ViscosityTensor tensor_from_config(const RunConfig& cfg);

}  // namespace tns
