#pragma once

#include "tns/field.hpp"

namespace tns {

enum class Dealias { exact_pad, two_thirds };

// div u: coefficients 2*pi*i xi . u^(xi); always zero-mean
SpectralScalarField divergence(const SpectralVectorField& u);

// grad q: component k has coefficients 2*pi*i xi_k q^(xi)
SpectralVectorField gradient(const SpectralScalarField& q);

// E(u)_{jb} = (d_j u_b + d_b u_j)/2
SymmetricTensorField strain(const SpectralVectorField& u);

// Helmholtz-Weyl split of a zero-mean field: F = F_g + F_sigma with
// F_g parallel to xi per mode and F_sigma divergence-free.
struct HelmholtzParts {
  SpectralVectorField gradient_part;
  SpectralVectorField solenoidal_part;
};
HelmholtzParts helmholtz_decompose(const SpectralVectorField& F);

// Leray projector P_sigma
SpectralVectorField leray_project(const SpectralVectorField& F);

// unique zero-mean q with grad q = w; input must be curl-free within tol
SpectralScalarField invert_gradient(const SpectralVectorField& w, double rel_tol = 1e-8);

// unique gradient-subspace w with div w = g; input must be zero-mean
SpectralVectorField invert_divergence(const SpectralScalarField& g);

// (v1 . grad) v2 computed pseudo-spectrally with the requested dealiasing,
// post-truncated to the lattice radius; grid_N = 0 sizes the grid from the
// dealias mode, an explicit value must still be alias-free on the kept band
SpectralVectorField advect(const SpectralVectorField& v1, const SpectralVectorField& v2,
                           Dealias mode, int grid_N = 0);

// (u . grad) u
SpectralVectorField convect(const SpectralVectorField& u, Dealias mode, int grid_N = 0);

// brute-force lattice convolution of (v1 . grad) v2; the verification oracle
SpectralVectorField advect_oracle(const SpectralVectorField& v1, const SpectralVectorField& v2);
SpectralVectorField convect_oracle(const SpectralVectorField& u);

// grid size that keeps a product of bandwidths m1, m2 exact (all product
// modes representable), or merely alias-free on the retained band m_keep
int product_grid_size(int m1, int m2, int m_keep, Dealias mode);

}  // namespace tns
