// Batch front end for the periodic anisotropic Navier-Stokes toolkit.
// Subcommands: run, verify, threshold, heat, constants.
// Exit codes: 0 clean, 1 property violation, 2 config error, 3 blow-up.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "tns/config.hpp"
#include "tns/errors.hpp"
#include "tns/runner.hpp"

namespace {

// --config file first, then --set key=value overrides in order
tns::RunConfig assemble_config(const std::string& config_path,
                               const std::vector<std::string>& sets) {
  tns::RunConfig cfg;
  if (!config_path.empty()) cfg = tns::load_config_file(config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw tns::ConfigError("--set expects key=value, got '" + kv + "'");
    tns::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  tns::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral Fourier-Galerkin solver and verification harness "
               "for periodic anisotropic Navier-Stokes"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;

  auto add_config_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file (key = value lines)");
    cmd->add_option("--set", sets, "override a configuration key (key=value, repeatable)");
  };

  auto* run = app.add_subcommand("run", "integrate a scenario and emit diagnostics");
  add_config_opts(run);

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite = "spectral";
  std::uint64_t vseed = 0;
  int vtrials = 200;
  verify->add_option("suite", suite, "spectral | calculus | inequalities | solver")->required();
  verify->add_option("--seed", vseed, "property-suite seed");
  verify->add_option("--trials", vtrials, "trials per property (0 = vacuous pass)");

  auto* threshold = app.add_subcommand("threshold", "evaluate the existence-threshold condition");
  add_config_opts(threshold);

  auto* heat = app.add_subcommand("heat", "heat-semigroup profile and energy identity");
  add_config_opts(heat);
  double heat_s = -1.0;  // default n/2, resolved after config parse
  int heat_steps = 16;
  heat->add_option("--s", heat_s, "Sobolev index (default n/2)");
  heat->add_option("--steps", heat_steps, "identity check subdivisions");

  auto* constants = app.add_subcommand("constants", "commutator constant and C* estimation");
  tns::ConstantsRequest req;
  int const_n = 2;
  constants->add_option("--n", const_n, "dimension");
  constants->add_option("--s", req.s, "commutator smoothness index s");
  constants->add_option("--theta", req.theta, "commutator order theta");
  constants->add_option("--sigma-tilde", req.sigma_tilde, "coefficient smoothness sigma~");
  constants->add_option("--radius", req.radius, "lattice sum radius");
  constants->add_option("--s1", req.s1, "multiplication estimate s1");
  constants->add_option("--s2", req.s2, "multiplication estimate s2");
  constants->add_option("--m", req.m, "multiplication estimate band limit");
  constants->add_option("--trials", req.trials, "multiplication estimate trials (0 = skip)");
  constants->add_option("--seed", req.seed, "multiplication estimate seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return tns::cmd_run(assemble_config(config_path, sets), std::cout);
    if (verify->parsed()) return tns::cmd_verify(suite, vseed, vtrials, std::cout);
    if (threshold->parsed())
      return tns::cmd_threshold(assemble_config(config_path, sets), std::cout);
    if (heat->parsed()) {
      auto cfg = assemble_config(config_path, sets);
      const double s = heat_s < 0.0 ? 0.5 * cfg.n : heat_s;
      return tns::cmd_heat(cfg, s, heat_steps, std::cout);
    }
    if (constants->parsed()) return tns::cmd_constants(req, const_n, std::cout);
  } catch (const tns::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return tns::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tns::kExitConfig;
  }
  return tns::kExitConfig;
}
