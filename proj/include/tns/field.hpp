#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "tns/lattice.hpp"

namespace tns {

using Complex = std::complex<double>;

// Truncated Fourier representation of a real scalar field on the unit torus.
// Coefficients live on the lattice box; Hermitian symmetry c(-xi) = conj(c(xi))
// is the enforced real-field convention.
class SpectralScalarField {
public:
  SpectralScalarField() = default;
  explicit SpectralScalarField(std::shared_ptr<const FrequencyLattice> lat)
      : lat_(std::move(lat)), c_(lat_->box_size(), Complex{0.0, 0.0}) {}

  const FrequencyLattice& lattice() const { return *lat_; }
  std::shared_ptr<const FrequencyLattice> lattice_ptr() const { return lat_; }

  Complex& operator[](std::size_t flat) { return c_[flat]; }
  const Complex& operator[](std::size_t flat) const { return c_[flat]; }
  std::size_t size() const { return c_.size(); }
  Complex* data() { return c_.data(); }
  const Complex* data() const { return c_.data(); }

  bool zero_mean_flag() const { return zero_mean_; }
  void set_zero_mean_flag(bool v) { zero_mean_ = v; }

  // worst |c(-xi) - conj(c(xi))| over the ball
  double hermitian_residual() const;
  // symmetrise in place: c(xi) <- (c(xi) + conj(c(-xi)))/2
  void enforce_hermitian();

  SpectralScalarField& operator+=(const SpectralScalarField& o);
  SpectralScalarField& operator-=(const SpectralScalarField& o);
  SpectralScalarField& operator*=(double s);

private:
  std::shared_ptr<const FrequencyLattice> lat_;
  std::vector<Complex> c_;
  bool zero_mean_ = false;
};

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator*(double s, SpectralScalarField a);

// n-component real vector field; all components share one lattice.
class SpectralVectorField {
public:
  SpectralVectorField() = default;
  explicit SpectralVectorField(std::shared_ptr<const FrequencyLattice> lat);

  const FrequencyLattice& lattice() const { return comps_[0].lattice(); }
  std::shared_ptr<const FrequencyLattice> lattice_ptr() const { return comps_[0].lattice_ptr(); }
  int dim() const { return static_cast<int>(comps_.size()); }

  SpectralScalarField& comp(int k) { return comps_[static_cast<std::size_t>(k)]; }
  const SpectralScalarField& comp(int k) const { return comps_[static_cast<std::size_t>(k)]; }

  bool zero_mean_flag() const { return zero_mean_; }
  void set_zero_mean_flag(bool v) { zero_mean_ = v; }
  bool divergence_free_flag() const { return divergence_free_; }
  void set_divergence_free_flag(bool v) { divergence_free_ = v; }

  double hermitian_residual() const;
  void enforce_hermitian();

  SpectralVectorField& operator+=(const SpectralVectorField& o);
  SpectralVectorField& operator-=(const SpectralVectorField& o);
  SpectralVectorField& operator*=(double s);

private:
  std::vector<SpectralScalarField> comps_;
  bool zero_mean_ = false;
  bool divergence_free_ = false;
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, SpectralVectorField a);

// Real samples at x_j = j/N per axis, lexicographic over the N^n grid.
struct PhysicalGrid {
  int n = 0;
  int N = 0;
  std::vector<double> samples;

  PhysicalGrid() = default;
  PhysicalGrid(int n_, int N_) : n(n_), N(N_) {
    std::size_t total = 1;
    for (int k = 0; k < n_; ++k) total *= static_cast<std::size_t>(N_);
    samples.assign(total, 0.0);
  }
  std::size_t size() const { return samples.size(); }
};

// Symmetric n x n tensor field E_{jb} = E_{bj}; only the upper triangle is
// stored, norms and pairings count the mirrored entries.
class SymmetricTensorField {
public:
  SymmetricTensorField() = default;
  SymmetricTensorField(std::shared_ptr<const FrequencyLattice> lat, int n);

  int dim() const { return n_; }
  SpectralScalarField& entry(int j, int b);
  const SpectralScalarField& entry(int j, int b) const;

private:
  int n_ = 0;
  std::vector<SpectralScalarField> upper_;  // row-major upper triangle
};

}  // namespace tns
