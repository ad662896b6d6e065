#pragma once

#include "tns/field.hpp"

namespace tns {

// weight rho(xi) = 2*pi*(1+|xi|^2)^{1/2}
double rho_of_xi_sq(double xi_sq);
double rho(const std::vector<int>& xi);

// ( sum_xi rho(xi)^{2s} |g^(xi)|^2 )^{1/2} over stored modes
double sobolev_norm(const SpectralScalarField& g, double s);
double sobolev_norm(const SpectralVectorField& u, double s);
double sobolev_norm(const SymmetricTensorField& E, double s);  // counts mirrored entries

// H^s inner product; for s=0 this is the L2 product of the real fields
double sobolev_inner(const SpectralVectorField& u, const SpectralVectorField& v, double s);

// Lambda^r: coefficient-wise multiplication by rho(xi)^r
SpectralScalarField bessel_potential(const SpectralScalarField& g, double r);
SpectralVectorField bessel_potential(const SpectralVectorField& u, double r);

// sum_xi g^(xi) f^(-xi); real for Hermitian fields
double dual_pairing(const SpectralScalarField& g, const SpectralScalarField& f);
double dual_pairing(const SpectralVectorField& g, const SpectralVectorField& f);
double dual_pairing(const SymmetricTensorField& a, const SymmetricTensorField& b);

// orthogonal projector onto |xi| <= m
SpectralScalarField truncate_modes(const SpectralScalarField& g, int m);
SpectralVectorField truncate_modes(const SpectralVectorField& u, int m);

// zero the mean and set the flag
SpectralScalarField project_zero_mean(SpectralScalarField g);
SpectralVectorField project_zero_mean(SpectralVectorField u);

// embed into a (possibly larger) lattice of radius m
SpectralScalarField embed(const SpectralScalarField& g, int m);
SpectralVectorField embed(const SpectralVectorField& u, int m);

// copy onto a lattice of radius m, growing or truncating as needed
SpectralScalarField resize_lattice(const SpectralScalarField& g, int m);
SpectralVectorField resize_lattice(const SpectralVectorField& u, int m);

}  // namespace tns
