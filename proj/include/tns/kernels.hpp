#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Data-parallel inner loops used by the spectral operations. Each kernel has
// an OpenMP version (tns::par) and a serial reference (tns::ref) with the
// identical chunked summation order, so the two are bitwise comparable; the
// benchmark tool and the unit tests exercise both sides.

namespace tns::kernels {

inline constexpr std::size_t kChunk = 256;

}  // namespace tns::kernels

namespace tns::ref {

// sum of term(i) for i in [0,N); fixed chunk partials summed in index order
template <class F>
double sum_chunked(std::size_t n, F&& term) {
  const std::size_t nchunks = (n + kernels::kChunk - 1) / kernels::kChunk;
  double total = 0.0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t lo = c * kernels::kChunk;
    const std::size_t hi = lo + kernels::kChunk < n ? lo + kernels::kChunk : n;
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += term(i);
    total += partial;
  }
  return total;
}

void multiply(const double* a, const double* b, double* out, std::size_t n);
void scale(const std::complex<double>* in, const double* factor, std::complex<double>* out,
           std::size_t n);

}  // namespace tns::ref

namespace tns::par {

template <class F>
double sum_chunked(std::size_t n, F&& term) {
  const std::size_t nchunks = (n + kernels::kChunk - 1) / kernels::kChunk;
  std::vector<double> partials(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kernels::kChunk;
    const std::size_t hi = lo + kernels::kChunk < n ? lo + kernels::kChunk : n;
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += term(i);
    partials[static_cast<std::size_t>(c)] = partial;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void multiply(const double* a, const double* b, double* out, std::size_t n);
void scale(const std::complex<double>* in, const double* factor, std::complex<double>* out,
           std::size_t n);

}  // namespace tns::par
