#include "tns/heat.hpp"

#include <cmath>
#include <stdexcept>

#include "tns/spectral.hpp"

namespace tns {

SpectralVectorField heat_evolve(const SpectralVectorField& u0, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_evolve: t must be >= 0");
  const auto& lat = u0.lattice();
  SpectralVectorField out = u0;
  const auto& ball = lat.ball();
  for (int k = 0; k < u0.dim(); ++k) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
      const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
      const double lam = 4.0 * M_PI * M_PI * static_cast<double>(lat.xi_sq(flat));
      out.comp(k)[flat] *= std::exp(-lam * t);
    }
  }
  return out;
}

HeatProfile heat_profile(const SpectralVectorField& u0, double T, double s) {
  if (T <= 0.0) throw std::invalid_argument("heat_profile: T must be > 0");
  const auto& lat = u0.lattice();
  HeatProfile prof;
  prof.s = s;
  prof.T = T;
  double value = 0.0, cap = 0.0;
  for (std::uint32_t flat : lat.ball()) {
    const double xi_sq = static_cast<double>(lat.xi_sq(flat));
    double amp_sq = 0.0;
    for (int k = 0; k < u0.dim(); ++k) amp_sq += std::norm(u0.comp(k)[flat]);
    if (amp_sq == 0.0) continue;
    const double w = std::pow(rho_of_xi_sq(xi_sq), 2.0 * s);
    const double lam2 = 2.0 * 4.0 * M_PI * M_PI * xi_sq;  // 2 (2 pi |xi|)^2
    if (xi_sq == 0.0) {
      value += w * amp_sq * T;  // the mean does not decay
    } else {
      value += w * amp_sq * (1.0 - std::exp(-lam2 * T)) / lam2;
    }
    cap += std::pow(rho_of_xi_sq(xi_sq), 2.0 * (s - 1.0)) * amp_sq;
  }
  prof.value = value;
  prof.tail_bound = cap;
  return prof;
}

double verify_heat_energy_identity(const SpectralVectorField& u0, double T, double r, int steps) {
  if (steps < 2) throw std::invalid_argument("verify_heat_energy_identity: steps must be >= 2");
  const auto& lat = u0.lattice();

  const double half_e0 = 0.5 * std::pow(sobolev_norm(u0, r), 2.0);
  double worst = 0.0;
  for (int step = 1; step <= steps; ++step) {
    const double t = T * static_cast<double>(step) / static_cast<double>(steps);
    double half_et = 0.0, dissipated = 0.0;
    for (std::uint32_t flat : lat.ball()) {
      const double xi_sq = static_cast<double>(lat.xi_sq(flat));
      double amp_sq = 0.0;
      for (int k = 0; k < u0.dim(); ++k) amp_sq += std::norm(u0.comp(k)[flat]);
      if (amp_sq == 0.0) continue;
      const double w = std::pow(rho_of_xi_sq(xi_sq), 2.0 * r);
      const double lam2 = 2.0 * 4.0 * M_PI * M_PI * xi_sq;
      half_et += 0.5 * w * amp_sq * std::exp(-lam2 * t);
      // ||grad v||^2_{H^r} per mode is |2 pi xi|^2 w amp_sq e^{-lam2 tau};
      // its time integral is w amp_sq (1 - e^{-lam2 t}) / 2
      if (xi_sq > 0.0) dissipated += w * amp_sq * 0.5 * (1.0 - std::exp(-lam2 * t));
    }
    worst = std::max(worst, std::abs(half_et + dissipated - half_e0));
  }
  return worst;
}

}  // namespace tns
