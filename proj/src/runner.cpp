#include "tns/runner.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tns/analysis.hpp"
#include "tns/errors.hpp"
#include "tns/scenarios.hpp"
#include "tns/snapshot.hpp"
#include "tns/spectral.hpp"
#include "tns/verify.hpp"

namespace tns {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "t,l2_sq,h_half_n_sq,dissipation,force_power,serrin_cumulative,"
         "energy_residual_cumulative,div_residual\n";
  for (const auto& d : traj.diagnostics) {
    out << format_double(d.t) << ',' << format_double(d.l2_sq) << ','
        << format_double(d.h_half_n_sq) << ',' << format_double(d.dissipation) << ','
        << format_double(d.force_power) << ',' << format_double(d.serrin_cumulative) << ','
        << format_double(d.energy_residual_cumulative) << ',' << format_double(d.div_residual)
        << '\n';
  }
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

ViscosityTensor resolve_tensor(const RunConfig& cfg, const Scenario& sc) {
  if (cfg.scenario == "anisotropic_demo" && cfg.tensor_spec == "isotropic nu=0.01" &&
      sc.default_tensor)
    return *sc.default_tensor;  // scenario default unless the user overrode the tensor
  return tensor_from_config(cfg);
}

SolverConfig solver_config(const RunConfig& cfg, const ViscosityTensor& A) {
  SolverConfig sc;
  sc.m = cfg.m;
  sc.dt = cfg.dt;
  sc.t_final = cfg.t_final;
  sc.scheme = cfg.scheme;
  sc.dealias = cfg.dealias;
  sc.convection = cfg.convection;
  sc.nu0 = cfg.nu0;
  sc.grid_N = cfg.resolved_grid_N();
  if (sc.grid_N != 0) {
    const int min_N = product_grid_size(cfg.m, std::max(cfg.m, A.bandwidth()), cfg.m,
                                        Dealias::two_thirds);
    if (sc.grid_N < min_N)
      throw ConfigError("grid_factor too small for m and the tensor bandwidth: grid " +
                        std::to_string(sc.grid_N) + " < required " + std::to_string(min_N));
  }
  return sc;
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  try {
    auto scenario = make_scenario(cfg.scenario, cfg.n, cfg.m, cfg.seed, cfg.decay_exponent,
                                  cfg.u0_scale);
    auto A = resolve_tensor(cfg, scenario);
    A.estimate_ellipticity(cfg.ellipticity_samples, cfg.seed);
    auto sc = solver_config(cfg, A);

    Trajectory traj;
    SolverState last_good;
    try {
      traj = solve(scenario.u0, {}, A, sc, &last_good);
    } catch (const BlowUpError& e) {
      log << "blow-up: " << e.what() << "\n";
      if (!cfg.snapshot_prefix.empty()) {
        const std::string path = cfg.snapshot_prefix + "_last_good.tns2";
        save_snapshot(last_good.u, last_good.t, path);
        log << "last-good snapshot: " << path << "\n";
      }
      return kExitBlowUp;
    }

    if (!cfg.output_csv.empty()) write_csv(traj, cfg.output_csv);
    if (!cfg.snapshot_prefix.empty() && cfg.snapshot_every > 0) {
      for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(cfg.snapshot_every)) {
        std::ostringstream name;
        name << cfg.snapshot_prefix << "_" << i << ".tns2";
        save_snapshot(traj.states[i], traj.times[i], name.str());
      }
    }
    const auto& last = traj.diagnostics.back();
    log << "run complete: steps=" << traj.size() - 1 << " t=" << format_double(last.t)
        << " l2_sq=" << format_double(last.l2_sq)
        << " serrin=" << format_double(last.serrin_cumulative)
        << " energy_residual=" << format_double(last.energy_residual_cumulative) << "\n";
    return kExitOk;
  } catch (const BlowUpError& e) {
    log << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotRelaxedElliptic& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, std::ostream& log) {
  try {
    auto rep = run_verify_suite(suite, seed, trials);
    if (rep.vacuous) {
      log << "suite " << suite << ": vacuous pass (trials = 0) -- WARNING: nothing was checked\n";
      return kExitOk;
    }
    for (const auto& r : rep.results) {
      log << (r.pass ? "PASS " : "FAIL ") << suite << "." << r.name
          << " worst=" << format_double(r.worst) << " tol=" << format_double(r.tol)
          << " trials=" << r.trials << "\n";
    }
    return rep.pass() ? kExitOk : kExitViolation;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_threshold(const RunConfig& cfg, std::ostream& log) {
  try {
    auto scenario = make_scenario(cfg.scenario, cfg.n, cfg.m, cfg.seed, cfg.decay_exponent,
                                  cfg.u0_scale);
    auto A = resolve_tensor(cfg, scenario);
    ThresholdOptions opt;
    opt.regime = cfg.threshold_regime;
    opt.c_star = cfg.c_star;
    opt.c_tilde_star = cfg.c_tilde_star;
    opt.sigma_tilde = cfg.sigma_tilde;
    opt.commutator_radius = cfg.commutator_radius;
    opt.c_a_override = cfg.c_a_override;
    opt.a_norm_override = cfg.a_norm_override;
    const double fsq = cfg.force_norm_sq;
    auto rep = existence_threshold(
        scenario.u0, [fsq](double) { return fsq; }, A, cfg.t_final, opt);

    log << "regime: "
        << (rep.regime == ThresholdRegime::constant_coeff ? "constant_coeff" : "variable_coeff")
        << "\n";
    log << "C_A: " << format_double(rep.c_a) << (rep.c_a_sampled ? " (sampled)" : " (override)")
        << "\n";
    log << "C_star: " << format_double(rep.c_star) << "\n";
    if (rep.regime == ThresholdRegime::variable_coeff) {
      log << "C_tilde_star: " << format_double(rep.c_tilde_star) << "\n";
      log << "C_bar: " << format_double(rep.c_bar) << "\n";
      log << "sigma_tilde: " << format_double(rep.sigma_tilde) << "\n";
    }
    log << "A_norm: " << format_double(rep.a_norm) << "\n";
    log << "A1: " << format_double(rep.a1) << "\n";
    log << "A2: " << format_double(rep.a2) << "\n";
    log << "A3: " << format_double(rep.a3) << "\n";
    log << "force_integral: " << format_double(rep.force_integral) << "\n";
    log << "heat_integral: " << format_double(rep.heat_integral) << "\n";
    log << "u0_norm_sq: " << format_double(rep.u0_norm_sq) << "\n";
    log << "lhs: " << format_double(rep.lhs) << "\n";
    log << "margin: " << format_double(rep.margin) << "\n";
    log << "T_star_max: " << format_double(rep.t_star_max) << "\n";
    log << "note: " << rep.note << "\n";
    return kExitOk;
  } catch (const NotRelaxedElliptic& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_heat(const RunConfig& cfg, double s, int steps, std::ostream& log) {
  try {
    auto scenario = make_scenario(cfg.scenario, cfg.n, cfg.m, cfg.seed, cfg.decay_exponent,
                                  cfg.u0_scale);
    const double T = cfg.t_final;
    auto prof = heat_profile(scenario.u0, T, s);
    log << "s: " << format_double(prof.s) << "\n";
    log << "T: " << format_double(prof.T) << "\n";
    log << "integral: " << format_double(prof.value) << "\n";
    log << "tail_bound: " << format_double(prof.tail_bound) << "\n";
    const double resid = verify_heat_energy_identity(scenario.u0, T, s, steps);
    log << "energy_identity_residual: " << format_double(resid) << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_constants(const ConstantsRequest& req, int n, std::ostream& log) {
  try {
    auto cc = commutator_constant(req.s, req.theta, req.sigma_tilde, n, req.radius);
    log << "commutator_constant: " << format_double(cc.value) << "\n";
    log << "at_half_radius: " << format_double(cc.value_at_half_radius) << "\n";
    log << "sigma0: " << format_double(cc.sigma0) << "\n";
    log << "radius: " << cc.radius << "\n";
    if (req.trials > 0) {
      const double est =
          estimate_multiplication_constant(req.s1, req.s2, n, req.m, req.trials, req.seed);
      log << "multiplication_lower_bound: " << format_double(est) << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace tns
