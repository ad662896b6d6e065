#include <cmath>
#include <stdexcept>

#include "tns/analysis.hpp"

namespace tns {

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("gronwall: grid needs >= 2 samples");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("gronwall: grid must be strictly increasing");
}

// cumulative trapezoid of f over grid; out[0] = 0
std::vector<double> cumtrap(const std::vector<double>& grid, const std::vector<double>& f) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

}  // namespace

GronwallBound gronwall_bound(const GronwallProblem& p) {
  check_grid(p.grid);
  if (p.phi.size() != p.grid.size() || p.psi.size() != p.grid.size())
    throw std::invalid_argument("gronwall_bound: phi/psi must be sampled on the grid");
  GronwallBound out;
  out.grid = p.grid;
  const auto Phi = cumtrap(p.grid, p.phi);
  // inner integrand e^{-Phi(s)} psi(s)
  std::vector<double> inner(p.grid.size());
  for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = std::exp(-Phi[i]) * p.psi[i];
  const auto inner_cum = cumtrap(p.grid, inner);
  const auto psi_cum = cumtrap(p.grid, p.psi);
  out.bound.resize(p.grid.size());
  out.simplified_bound.resize(p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    out.bound[i] = std::exp(Phi[i]) * (p.eta0 + inner_cum[i]);
    out.simplified_bound[i] = std::exp(Phi[i]) * (p.eta0 + psi_cum[i]);
  }
  return out;
}

SmallnessReport smallness_check(const GronwallProblem& p, SmallnessVariant variant) {
  check_grid(p.grid);
  if (p.psi.size() != p.grid.size())
    throw std::invalid_argument("smallness_check: psi must be sampled on the grid");
  if (!(p.b > 0.0) || !(p.c > 0.0))
    throw std::invalid_argument("smallness_check: b, c must be positive");
  for (double v : p.psi)
    if (v < 0.0) throw std::invalid_argument("smallness_check: psi must be nonnegative");
  if (p.eta0 < 0.0) throw std::invalid_argument("smallness_check: eta0 must be nonnegative");

  SmallnessReport rep;
  if (variant == SmallnessVariant::alt) {
    const auto psi_cum = cumtrap(p.grid, p.psi);
    rep.d_value = p.eta0 + psi_cum.back();
    rep.threshold = p.b / (M_E * p.c);
    rep.admissible = rep.d_value < rep.threshold;
    if (rep.admissible) {
      rep.sup_eta_bound = rep.d_value * M_E;  // sup eta < D e < b/c
      rep.y_integral_bound = 1.0 / p.c;
    }
  } else {
    if (p.phi.size() != p.grid.size())
      throw std::invalid_argument("smallness_check(phi): phi must be sampled on the grid");
    for (double v : p.phi)
      if (v < 0.0) throw std::invalid_argument("smallness_check(phi): phi must be nonnegative");
    const auto Phi = cumtrap(p.grid, p.phi);
    std::vector<double> inner(p.grid.size());
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = std::exp(-Phi[i]) * p.psi[i];
    rep.d_value = p.eta0 + cumtrap(p.grid, inner).back();
    rep.threshold = (p.b / p.c) * std::exp(-1.0 - Phi.back());
    rep.admissible = rep.d_value < rep.threshold;
    if (rep.admissible) {
      rep.sup_eta_bound = p.b / p.c;  // sup eta < b/c
      rep.y_integral_bound = 1.0 / p.c;
    }
  }
  return rep;
}

std::vector<double> integral_gronwall_bound(const std::vector<double>& a,
                                            const std::vector<double>& b,
                                            const std::vector<double>& grid) {
  check_grid(grid);
  if (a.size() != grid.size() || b.size() != grid.size())
    throw std::invalid_argument("integral_gronwall_bound: a/b must be sampled on the grid");
  for (double v : b)
    if (v < 0.0) throw std::invalid_argument("integral_gronwall_bound: b must be nonnegative");

  const auto B = cumtrap(grid, b);  // int_0^t b
  // bound(t) = a(t) + int_0^t a(s) b(s) e^{B(t)-B(s)} ds
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (std::size_t s = 1; s <= i; ++s) {
      const double f0 = a[s - 1] * b[s - 1] * std::exp(B[i] - B[s - 1]);
      const double f1 = a[s] * b[s] * std::exp(B[i] - B[s]);
      acc += 0.5 * (grid[s] - grid[s - 1]) * (f0 + f1);
    }
    out[i] = a[i] + acc;
  }
  return out;
}

}  // namespace tns
