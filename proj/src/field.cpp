#include "tns/field.hpp"

#include <cmath>
#include <stdexcept>

namespace tns {

double SpectralScalarField::hermitian_residual() const {
  double worst = 0.0;
  for (std::uint32_t flat : lat_->ball()) {
    const Complex d = c_[lat_->negate(flat)] - std::conj(c_[flat]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

void SpectralScalarField::enforce_hermitian() {
  for (std::uint32_t flat : lat_->ball()) {
    const std::size_t neg = lat_->negate(flat);
    if (neg < flat) continue;
    const Complex avg = 0.5 * (c_[flat] + std::conj(c_[neg]));
    c_[flat] = avg;
    c_[neg] = std::conj(avg);
  }
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  zero_mean_ = zero_mean_ && o.zero_mean_;
  return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  zero_mean_ = zero_mean_ && o.zero_mean_;
  return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) {
  a += b;
  return a;
}
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) {
  a -= b;
  return a;
}
SpectralScalarField operator*(double s, SpectralScalarField a) {
  a *= s;
  return a;
}

SpectralVectorField::SpectralVectorField(std::shared_ptr<const FrequencyLattice> lat) {
  const int n = lat->dim();
  comps_.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) comps_.emplace_back(lat);
}

double SpectralVectorField::hermitian_residual() const {
  double worst = 0.0;
  for (const auto& c : comps_) worst = std::max(worst, c.hermitian_residual());
  return worst;
}

void SpectralVectorField::enforce_hermitian() {
  for (auto& c : comps_) c.enforce_hermitian();
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& o) {
  for (int k = 0; k < dim(); ++k) comp(k) += o.comp(k);
  zero_mean_ = zero_mean_ && o.zero_mean_;
  divergence_free_ = divergence_free_ && o.divergence_free_;
  return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& o) {
  for (int k = 0; k < dim(); ++k) comp(k) -= o.comp(k);
  zero_mean_ = zero_mean_ && o.zero_mean_;
  divergence_free_ = divergence_free_ && o.divergence_free_;
  return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
  a += b;
  return a;
}
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
  a -= b;
  return a;
}
SpectralVectorField operator*(double s, SpectralVectorField a) {
  a *= s;
  return a;
}

SymmetricTensorField::SymmetricTensorField(std::shared_ptr<const FrequencyLattice> lat, int n)
    : n_(n) {
  upper_.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 0; i < n * (n + 1) / 2; ++i) upper_.emplace_back(lat);
}

SpectralScalarField& SymmetricTensorField::entry(int j, int b) {
  if (j > b) std::swap(j, b);
  return upper_[static_cast<std::size_t>(j * n_ - j * (j - 1) / 2 + (b - j))];
}

const SpectralScalarField& SymmetricTensorField::entry(int j, int b) const {
  if (j > b) std::swap(j, b);
  return upper_[static_cast<std::size_t>(j * n_ - j * (j - 1) / 2 + (b - j))];
}

}  // namespace tns
