#pragma once

#include <cmath>
#include <vector>

#include "tns/field.hpp"
#include "tns/lattice.hpp"
#include "tns/spectral.hpp"

namespace tns::test {

// sin(2 pi xi0 . x) as a spectral field on a radius-m lattice
inline SpectralScalarField sine_mode(int m, const std::vector<int>& xi0, double amp = 1.0) {
  auto lat = FrequencyLattice::make(static_cast<int>(xi0.size()), m);
  SpectralScalarField g(lat);
  const std::size_t pos = lat->encode(xi0.data());
  g[pos] = Complex{0.0, -0.5 * amp};
  g[lat->negate(pos)] = Complex{0.0, 0.5 * amp};
  return g;
}

// cos(2 pi xi0 . x)
inline SpectralScalarField cosine_mode(int m, const std::vector<int>& xi0, double amp = 1.0) {
  auto lat = FrequencyLattice::make(static_cast<int>(xi0.size()), m);
  SpectralScalarField g(lat);
  const std::size_t pos = lat->encode(xi0.data());
  g[pos] = Complex{0.5 * amp, 0.0};
  g[lat->negate(pos)] = Complex{0.5 * amp, 0.0};
  return g;
}

inline SpectralScalarField constant_field(int n, int m, double value) {
  auto lat = FrequencyLattice::make(n, m);
  SpectralScalarField g(lat);
  std::vector<int> zero(static_cast<std::size_t>(n), 0);
  g[lat->encode(zero.data())] = Complex{value, 0.0};
  return g;
}

inline double l2_diff(const SpectralScalarField& a, const SpectralScalarField& b) {
  return sobolev_norm(a - b, 0.0);
}

inline double l2_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
  return sobolev_norm(a - b, 0.0);
}

}  // namespace tns::test
