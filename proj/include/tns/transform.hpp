#pragma once

#include "tns/field.hpp"

namespace tns {

// Toroidal Fourier synthesis/analysis between the truncated lattice and a
// uniform N^n grid. Lossless round trip requires N >= 2m+1; smaller N is an
// aliasing error unless explicitly forced.
PhysicalGrid to_physical(const SpectralScalarField& g, int N, bool force_alias = false);
SpectralScalarField to_spectral(const PhysicalGrid& grid, int m, bool force_alias = false);

// grid mean of squares, sum_j g(x_j)^2 / N^n (Parseval partner of the L2 norm)
double grid_mean_square(const PhysicalGrid& grid);

namespace ref {
// Direct mode-sum transforms, kept as the serial reference for the FFT path.
PhysicalGrid to_physical_direct(const SpectralScalarField& g, int N);
SpectralScalarField to_spectral_direct(const PhysicalGrid& grid, int m);
}  // namespace ref

}  // namespace tns
