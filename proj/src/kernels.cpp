#include "tns/kernels.hpp"

namespace tns::ref {

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void scale(const std::complex<double>* in, const double* factor, std::complex<double>* out,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] * factor[i];
}

}  // namespace tns::ref

namespace tns::par {

void multiply(const double* a, const double* b, double* out, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    out[i] = a[i] * b[i];
}

void scale(const std::complex<double>* in, const double* factor, std::complex<double>* out,
           std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    out[i] = in[i] * factor[i];
}

}  // namespace tns::par
