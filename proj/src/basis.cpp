#include <algorithm>
#include <cmath>

#include "tns/galerkin.hpp"
#include "tns/spectral.hpp"

namespace tns {

namespace {

// orthonormal basis of the plane perpendicular to xi via the Householder
// reflection taking e_axis to xi/|xi|; deterministic in xi
std::vector<std::vector<double>> polarizations(const std::vector<int>& xi) {
  const int n = static_cast<int>(xi.size());
  double norm = 0.0;
  int axis = 0;
  for (int k = 0; k < n; ++k) {
    norm += static_cast<double>(xi[k]) * xi[k];
    if (std::abs(xi[k]) > std::abs(xi[axis])) axis = k;
  }
  norm = std::sqrt(norm);
  std::vector<double> unit(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) unit[static_cast<std::size_t>(k)] = xi[k] / norm;
  // v = unit - sign * e_axis with sign chosen away from cancellation
  const double sign = unit[static_cast<std::size_t>(axis)] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v = unit;
  v[static_cast<std::size_t>(axis)] += sign;
  double v_sq = 0.0;
  for (double c : v) v_sq += c * c;

  std::vector<std::vector<double>> out;
  for (int j = 0; j < n; ++j) {
    if (j == axis) continue;  // H e_axis = -sign * unit, the normal direction
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    d[static_cast<std::size_t>(j)] = 1.0;
    const double coef = 2.0 * v[static_cast<std::size_t>(j)] / v_sq;
    for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(k)] -= coef * v[static_cast<std::size_t>(k)];
    // scrub roundoff so xi . d = 0 exactly within working precision
    double dot = 0.0;
    for (int k = 0; k < n; ++k) dot += d[static_cast<std::size_t>(k)] * unit[static_cast<std::size_t>(k)];
    for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(k)] -= dot * unit[static_cast<std::size_t>(k)];
    double d_norm = 0.0;
    for (double c : d) d_norm += c * c;
    d_norm = std::sqrt(d_norm);
    for (double& c : d) c /= d_norm;
    out.push_back(std::move(d));
  }
  return out;
}

bool lexicographically_positive(const std::vector<int>& xi) {
  for (int c : xi) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

}  // namespace

GalerkinBasis build_basis(int n, int m) {
  if (n < 2) throw std::invalid_argument("build_basis: n must be >= 2");
  if (m < 1) throw std::invalid_argument("build_basis: m must be >= 1");
  auto lat = FrequencyLattice::make(n, m);
  std::vector<BasisMode> modes;
  for (std::uint32_t flat : lat->ball()) {
    if (lat->xi_sq(flat) == 0) continue;
    auto xi = lat->decode(flat);
    if (!lexicographically_positive(xi)) continue;  // one representative per pair
    auto pols = polarizations(xi);
    const double lambda = rho(xi);
    for (std::size_t p = 0; p < pols.size(); ++p)
      for (int phase = 0; phase < 2; ++phase) {
        BasisMode mode;
        mode.xi = xi;
        mode.polarization = pols[p];
        mode.polarization_index = static_cast<int>(p);
        mode.sine = phase == 1;
        mode.lambda = lambda;
        modes.push_back(std::move(mode));
      }
  }
  std::sort(modes.begin(), modes.end(), [&](const BasisMode& a, const BasisMode& b) {
    long a_sq = 0, b_sq = 0;
    for (int c : a.xi) a_sq += static_cast<long>(c) * c;
    for (int c : b.xi) b_sq += static_cast<long>(c) * c;
    if (a_sq != b_sq) return a_sq < b_sq;
    if (a.xi != b.xi) return a.xi < b.xi;
    if (a.polarization_index != b.polarization_index)
      return a.polarization_index < b.polarization_index;
    return a.sine < b.sine;
  });
  return GalerkinBasis(n, m, std::move(modes));
}

SpectralVectorField GalerkinBasis::field(std::size_t l) const {
  const auto& mode = modes_[l];
  auto lat = FrequencyLattice::make(n_, m_);
  SpectralVectorField w(lat);
  const std::size_t pos = lat->encode(mode.xi.data());
  const std::size_t neg = lat->negate(pos);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n_; ++k) {
    const double d = mode.polarization[static_cast<std::size_t>(k)];
    if (mode.sine) {
      w.comp(k)[pos] = Complex{0.0, -d * inv_sqrt2};
      w.comp(k)[neg] = Complex{0.0, d * inv_sqrt2};
    } else {
      w.comp(k)[pos] = Complex{d * inv_sqrt2, 0.0};
      w.comp(k)[neg] = Complex{d * inv_sqrt2, 0.0};
    }
  }
  w.set_zero_mean_flag(true);
  w.set_divergence_free_flag(true);
  return w;
}

std::vector<double> GalerkinBasis::coordinates(const SpectralVectorField& u) const {
  const auto& lat = u.lattice();
  std::vector<double> out(modes_.size(), 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t l = 0; l < modes_.size(); ++l) {
    const auto& mode = modes_[l];
    const std::size_t pos = lat.encode(mode.xi.data());
    // <u, w> = 2 Re sum_k u_k(xi) conj(w_k(xi)) using the conjugate pair
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n_; ++k) {
      const double d = mode.polarization[static_cast<std::size_t>(k)];
      const Complex wk = mode.sine ? Complex{0.0, -d * inv_sqrt2} : Complex{d * inv_sqrt2, 0.0};
      acc += u.comp(k)[pos] * std::conj(wk);
    }
    out[l] = 2.0 * acc.real();
  }
  return out;
}

SpectralVectorField GalerkinBasis::synthesize(const std::vector<double>& coeffs) const {
  auto lat = FrequencyLattice::make(n_, m_);
  SpectralVectorField u(lat);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t l = 0; l < modes_.size(); ++l) {
    const auto& mode = modes_[l];
    const double c = coeffs[l];
    if (c == 0.0) continue;
    const std::size_t pos = lat->encode(mode.xi.data());
    const std::size_t neg = lat->negate(pos);
    for (int k = 0; k < n_; ++k) {
      const double d = mode.polarization[static_cast<std::size_t>(k)];
      if (mode.sine) {
        u.comp(k)[pos] += Complex{0.0, -c * d * inv_sqrt2};
        u.comp(k)[neg] += Complex{0.0, c * d * inv_sqrt2};
      } else {
        u.comp(k)[pos] += Complex{c * d * inv_sqrt2, 0.0};
        u.comp(k)[neg] += Complex{c * d * inv_sqrt2, 0.0};
      }
    }
  }
  u.set_zero_mean_flag(true);
  u.set_divergence_free_flag(true);
  return u;
}

}  // namespace tns
