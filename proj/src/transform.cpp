#include "tns/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "tns/errors.hpp"
#include "tns/kernels.hpp"

namespace tns {
namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft on
// caller-owned buffers is. Plans are created once per (rank, N, sign) with
// FFTW_UNALIGNED so any heap buffer is admissible at execute time.
class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    fftw_cleanup();
  }

  fftw_plan get(int rank, int N, int sign) {
    std::scoped_lock lock(mu_);
    const auto key = std::tuple{rank, N, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int k = 0; k < rank; ++k) total *= static_cast<std::size_t>(N);
    fftw_complex* buf = fftw_alloc_complex(total);
    std::vector<int> dims(static_cast<std::size_t>(rank), N);
    fftw_plan p = fftw_plan_dft(rank, dims.data(), buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::size_t grid_total(int n, int N) {
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(N);
  return total;
}

// flat grid index of the FFT bin holding lattice mode xi (wraps mod N, which
// is exactly what aliasing does on an undersized grid)
std::size_t bin_of_mode(const int* xi, int n, int N) {
  std::size_t flat = 0;
  for (int k = 0; k < n; ++k) {
    const int b = ((xi[k] % N) + N) % N;
    flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>(b);
  }
  return flat;
}

}  // namespace

PhysicalGrid to_physical(const SpectralScalarField& g, int N, bool force_alias) {
  const auto& lat = g.lattice();
  const int n = lat.dim();
  if (N < 2) throw ConfigError("grid size must be >= 2");
  if (!force_alias && N < 2 * lat.radius() + 1)
    throw ConfigError("grid too small for lattice radius (aliasing); N >= 2m+1 required");

  const std::size_t total = grid_total(n, N);
  std::vector<Complex> work(total, Complex{0.0, 0.0});
  std::vector<int> xi(static_cast<std::size_t>(n));
  for (std::uint32_t flat : lat.ball()) {
    lat.decode(flat, xi.data());
    work[bin_of_mode(xi.data(), n, N)] += g[flat];
  }

  fftw_plan p = plan_cache().get(n, N, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));

  PhysicalGrid out(n, N);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
    out.samples[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)].real();
  return out;
}

SpectralScalarField to_spectral(const PhysicalGrid& grid, int m, bool force_alias) {
  const int n = grid.n;
  const int N = grid.N;
  if (!force_alias && N < 2 * m + 1)
    throw ConfigError("grid too small for requested lattice radius (aliasing); N >= 2m+1 required");

  const std::size_t total = grid.size();
  std::vector<Complex> work(total);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
    work[static_cast<std::size_t>(i)] = Complex{grid.samples[static_cast<std::size_t>(i)], 0.0};

  fftw_plan p = plan_cache().get(n, N, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));

  auto lat = FrequencyLattice::make(n, m);
  SpectralScalarField out(lat);
  const double scale = 1.0 / static_cast<double>(total);
  std::vector<int> xi(static_cast<std::size_t>(n));
  for (std::uint32_t flat : lat->ball()) {
    lat->decode(flat, xi.data());
    out[flat] = scale * work[bin_of_mode(xi.data(), n, N)];
  }
  out.enforce_hermitian();  // clears FFT roundoff asymmetry
  return out;
}

double grid_mean_square(const PhysicalGrid& grid) {
  const double* s = grid.samples.data();
  return par::sum_chunked(grid.size(), [s](std::size_t i) { return s[i] * s[i]; }) /
         static_cast<double>(grid.size());
}

namespace ref {

PhysicalGrid to_physical_direct(const SpectralScalarField& g, int N) {
  const auto& lat = g.lattice();
  const int n = lat.dim();
  PhysicalGrid out(n, N);
  std::vector<int> xi(static_cast<std::size_t>(n));
  std::vector<int> jx(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::size_t rem = j;
    for (int k = n - 1; k >= 0; --k) {
      jx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(N));
      rem /= static_cast<std::size_t>(N);
    }
    Complex acc{0.0, 0.0};
    for (std::uint32_t flat : lat.ball()) {
      lat.decode(flat, xi.data());
      double phase = 0.0;
      for (int k = 0; k < n; ++k)
        phase += static_cast<double>(xi[static_cast<std::size_t>(k)]) *
                 static_cast<double>(jx[static_cast<std::size_t>(k)]) / static_cast<double>(N);
      acc += g[flat] * std::polar(1.0, 2.0 * M_PI * phase);
    }
    out.samples[j] = acc.real();
  }
  return out;
}

SpectralScalarField to_spectral_direct(const PhysicalGrid& grid, int m) {
  const int n = grid.n;
  const int N = grid.N;
  auto lat = FrequencyLattice::make(n, m);
  SpectralScalarField out(lat);
  std::vector<int> xi(static_cast<std::size_t>(n));
  std::vector<int> jx(static_cast<std::size_t>(n));
  for (std::uint32_t flat : lat->ball()) {
    lat->decode(flat, xi.data());
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      std::size_t rem = j;
      for (int k = n - 1; k >= 0; --k) {
        jx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(N));
        rem /= static_cast<std::size_t>(N);
      }
      double phase = 0.0;
      for (int k = 0; k < n; ++k)
        phase += static_cast<double>(xi[static_cast<std::size_t>(k)]) *
                 static_cast<double>(jx[static_cast<std::size_t>(k)]) / static_cast<double>(N);
      acc += grid.samples[j] * std::polar(1.0, -2.0 * M_PI * phase);
    }
    out[flat] = acc / static_cast<double>(grid.size());
  }
  return out;
}

}  // namespace ref
}  // namespace tns
