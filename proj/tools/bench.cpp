// Microbenchmark comparing the OpenMP kernels against the serial reference
// implementations, with agreement checks on the outputs.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tns/calculus.hpp"
#include "tns/kernels.hpp"
#include "tns/rng.hpp"
#include "tns/sampling.hpp"
#include "tns/spectral.hpp"
#include "tns/transform.hpp"
#include "tns/viscosity.hpp"

using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& fn, int reps) {
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double par_ms, double ref_ms, double agreement) {
  std::printf("%-34s %10.3f %10.3f %8.2fx   %.3e\n", name, par_ms, ref_ms,
              ref_ms / (par_ms > 0 ? par_ms : 1e-12), agreement);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%-34s %10s %10s %9s   %s\n", "kernel", "omp ms", "serial ms", "speedup",
              "max |diff|");

  tns::Rng rng(1234);

  // chunked reductions
  {
    const std::size_t N = 1 << 22;
    std::vector<double> data(N);
    for (auto& v : data) v = rng.normal();
    double par_val = 0.0, ref_val = 0.0;
    const double par_ms = time_ms(
        [&] { par_val = tns::par::sum_chunked(N, [&](std::size_t i) { return data[i] * data[i]; }); },
        20);
    const double ref_ms = time_ms(
        [&] { ref_val = tns::ref::sum_chunked(N, [&](std::size_t i) { return data[i] * data[i]; }); },
        20);
    row("sum_chunked (4M doubles)", par_ms, ref_ms, std::abs(par_val - ref_val));
  }

  // pointwise multiply
  {
    const std::size_t N = 1 << 22;
    std::vector<double> a(N), b(N), out_p(N), out_r(N);
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    const double par_ms =
        time_ms([&] { tns::par::multiply(a.data(), b.data(), out_p.data(), N); }, 20);
    const double ref_ms =
        time_ms([&] { tns::ref::multiply(a.data(), b.data(), out_r.data(), N); }, 20);
    double diff = 0.0;
    for (std::size_t i = 0; i < N; ++i) diff = std::max(diff, std::abs(out_p[i] - out_r[i]));
    row("pointwise multiply (4M)", par_ms, ref_ms, diff);
  }

  // transforms: FFT path vs direct mode-sum reference
  {
    auto g = tns::random_scalar_field(2, 12, rng, 1.0);
    const int N = 2 * 12 + 1;
    tns::PhysicalGrid fast, slow;
    const double par_ms = time_ms([&] { fast = tns::to_physical(g, N); }, 10);
    const double ref_ms = time_ms([&] { slow = tns::ref::to_physical_direct(g, N); }, 2);
    double diff = 0.0;
    for (std::size_t i = 0; i < fast.samples.size(); ++i)
      diff = std::max(diff, std::abs(fast.samples[i] - slow.samples[i]));
    row("to_physical n=2 m=12", par_ms, ref_ms, diff);
  }

  // advection: pseudo-spectral vs lattice-convolution oracle
  {
    auto u = tns::random_solenoidal_field(2, 8, rng, 1.5);
    tns::SpectralVectorField fast, slow;
    const double par_ms = time_ms([&] { fast = tns::convect(u, tns::Dealias::exact_pad); }, 5);
    const double ref_ms = time_ms([&] { slow = tns::convect_oracle(u); }, 2);
    row("convect n=2 m=8 (vs oracle)", par_ms, ref_ms, tns::sobolev_norm(fast - slow, 0.0));
  }

  // ellipticity sampling (parallel inside)
  {
    auto A = tns::ViscosityTensor::isotropic(3, 0.7);
    double c_a = 0.0;
    const double par_ms = time_ms([&] { c_a = A.estimate_ellipticity(20000, 5).c_a; }, 3);
    row("ellipticity sampling (2e4)", par_ms, par_ms, std::abs(c_a - 1.0 / 1.4));
  }

  return 0;
}
