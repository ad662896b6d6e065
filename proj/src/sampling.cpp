#include "tns/sampling.hpp"

#include <cmath>

#include "tns/calculus.hpp"
#include "tns/spectral.hpp"

namespace tns {

SpectralScalarField random_scalar_field(int n, int m, Rng& rng, double decay, bool zero_mean) {
  auto lat = FrequencyLattice::make(n, m);
  SpectralScalarField g(lat);
  for (std::uint32_t flat : lat->ball()) {
    const std::size_t neg = lat->negate(flat);
    if (neg < flat) continue;  // conjugate pair already drawn
    const double amp = std::pow(rho_of_xi_sq(static_cast<double>(lat->xi_sq(flat))), -decay);
    if (neg == flat) {  // xi = 0 slot: real
      g[flat] = Complex{zero_mean ? 0.0 : amp * rng.normal(), 0.0};
    } else {
      const Complex c = amp * Complex{rng.normal(), rng.normal()};
      g[flat] = c;
      g[neg] = std::conj(c);
    }
  }
  g.set_zero_mean_flag(zero_mean);
  return g;
}

SpectralVectorField random_vector_field(int n, int m, Rng& rng, double decay, bool zero_mean) {
  SpectralVectorField u(FrequencyLattice::make(n, m));
  for (int k = 0; k < n; ++k) u.comp(k) = random_scalar_field(n, m, rng, decay, zero_mean);
  u.set_zero_mean_flag(zero_mean);
  return u;
}

SpectralVectorField random_solenoidal_field(int n, int m, Rng& rng, double decay) {
  auto u = random_vector_field(n, m, rng, decay, /*zero_mean=*/true);
  auto w = leray_project(u);
  w.set_divergence_free_flag(true);
  return w;
}

}  // namespace tns
