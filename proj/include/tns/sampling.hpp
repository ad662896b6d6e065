#pragma once

#include "tns/field.hpp"
#include "tns/rng.hpp"

namespace tns {

// Random band-limited fields with |coefficient| ~ rho(xi)^{-decay}; Hermitian
// by construction, deterministic in the generator state. Used by the property
// suites and tests.
SpectralScalarField random_scalar_field(int n, int m, Rng& rng, double decay = 2.0,
                                        bool zero_mean = false);
SpectralVectorField random_vector_field(int n, int m, Rng& rng, double decay = 2.0,
                                        bool zero_mean = false);
SpectralVectorField random_solenoidal_field(int n, int m, Rng& rng, double decay = 2.0);

}  // namespace tns
