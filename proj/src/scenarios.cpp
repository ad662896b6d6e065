#include "tns/scenarios.hpp"

#include <cmath>

#include "tns/errors.hpp"
#include "tns/rng.hpp"
#include "tns/sampling.hpp"
#include "tns/spectral.hpp"

namespace tns {

SpectralVectorField taylor_green_field(int m, double amplitude) {
  if (m < 2) throw ConfigError("taylor_green needs lattice radius m >= 2");
  auto lat = FrequencyLattice::make(2, m);
  SpectralVectorField u(lat);
  // u1 = 1/2 sin(2pi(x1+x2)) + 1/2 sin(2pi(x1-x2))
  // u2 = -1/2 sin(2pi(x1+x2)) + 1/2 sin(2pi(x1-x2))
  const Complex quarter_i{0.0, 0.25 * amplitude};
  const int pp[2] = {1, 1};
  const int pm[2] = {1, -1};
  const std::size_t spp = lat->encode(pp);
  const std::size_t spm = lat->encode(pm);
  u.comp(0)[spp] = -quarter_i;
  u.comp(0)[lat->negate(spp)] = quarter_i;
  u.comp(0)[spm] = -quarter_i;
  u.comp(0)[lat->negate(spm)] = quarter_i;
  u.comp(1)[spp] = quarter_i;
  u.comp(1)[lat->negate(spp)] = -quarter_i;
  u.comp(1)[spm] = -quarter_i;
  u.comp(1)[lat->negate(spm)] = quarter_i;
  u.set_zero_mean_flag(true);
  u.set_divergence_free_flag(true);
  return u;
}

double taylor_green_decay(double nu, double t) { return std::exp(-8.0 * M_PI * M_PI * nu * t); }

ViscosityTensor anisotropic_demo_tensor(int n) {
  // isotropic base plus a direction-singling stiffening of a_{11}^{11} with a
  // band-limited spatial modulation, plus a constant a_{12}^{12} offset; both
  // additions are invariant under the required index swaps
  ViscosityTensor A = ViscosityTensor::isotropic(n, 0.5);
  auto lat = FrequencyLattice::make(n, 1);
  SpectralScalarField g(lat);
  std::vector<int> zero(static_cast<std::size_t>(n), 0);
  std::vector<int> e1(static_cast<std::size_t>(n), 0);
  e1[0] = 1;
  // 1.75 + 0.25 cos(2 pi x1): base isotropic entry a_{11}^{11} = 2 nu = 1.0
  // plus [0.75 +- 0.25]
  g[lat->encode(zero.data())] = Complex{1.75, 0.0};
  const std::size_t pos = lat->encode(e1.data());
  g[pos] = Complex{0.125, 0.0};
  g[lat->negate(pos)] = Complex{0.125, 0.0};
  A.set_field_entry(0, 0, 0, 0, std::move(g));
  // the constant offset needs its major-symmetry partner a_{kj}^{ab} = a_{jk}^{ba}
  // so the bilinear form stays symmetric
  A.set_constant_entry(0, 1, 0, 1, A.constant_entry(0, 1, 0, 1) + 0.2);
  A.set_constant_entry(1, 0, 1, 0, A.constant_entry(1, 0, 1, 0) + 0.2);
  return A;
}

Scenario make_scenario(const std::string& name, int n, int m, std::uint64_t seed,
                       double decay_exponent, double u0_scale) {
  Scenario sc;
  if (name == "zero") {
    sc.u0 = SpectralVectorField(FrequencyLattice::make(n, m));
    sc.u0.set_zero_mean_flag(true);
    sc.u0.set_divergence_free_flag(true);
  } else if (name == "taylor_green") {
    if (n != 2) throw ConfigError("scenario taylor_green requires n = 2");
    sc.u0 = taylor_green_field(m, u0_scale);
  } else if (name == "single_stokes_mode") {
    auto lat = FrequencyLattice::make(n, m);
    SpectralVectorField u(lat);
    std::vector<int> e1(static_cast<std::size_t>(n), 0);
    e1[0] = 1;
    const std::size_t pos = lat->encode(e1.data());
    u.comp(1)[pos] = Complex{0.5 * u0_scale, 0.0};
    u.comp(1)[lat->negate(pos)] = Complex{0.5 * u0_scale, 0.0};
    u.set_zero_mean_flag(true);
    u.set_divergence_free_flag(true);
    sc.u0 = u;
  } else if (name == "random_smooth") {
    Rng rng(seed);
    sc.u0 = random_solenoidal_field(n, m, rng, decay_exponent);
    sc.u0 *= u0_scale;
  } else if (name == "anisotropic_demo") {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    sc.u0 = random_solenoidal_field(n, m, rng, std::max(decay_exponent, 3.0));
    sc.u0 *= u0_scale;
    sc.default_tensor = anisotropic_demo_tensor(n);
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  return sc;
}

}  // namespace tns
