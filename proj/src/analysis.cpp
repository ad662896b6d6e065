#include "tns/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tns/rng.hpp"
#include "tns/sampling.hpp"
#include "tns/spectral.hpp"
#include "tns/transform.hpp"

namespace tns {

namespace {

std::size_t locate_time(const Trajectory& traj, double t) {
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    if (std::abs(traj.times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  throw std::invalid_argument("requested time is not a trajectory step boundary");
}

}  // namespace

double energy_residual(const Trajectory& traj, double t0, double t1) {
  if (!(t0 < t1)) throw std::invalid_argument("energy_residual: t0 < t1 required");
  const std::size_t i0 = locate_time(traj, t0);
  const std::size_t i1 = locate_time(traj, t1);
  double diss = 0.0, force = 0.0;
  for (std::size_t i = i0 + 1; i <= i1; ++i) {
    const double h = 0.5 * (traj.times[i] - traj.times[i - 1]);
    diss += h * (traj.diagnostics[i - 1].dissipation + traj.diagnostics[i].dissipation);
    force += h * (traj.diagnostics[i - 1].force_power + traj.diagnostics[i].force_power);
  }
  return 0.5 * traj.diagnostics[i1].l2_sq + diss - 0.5 * traj.diagnostics[i0].l2_sq - force;
}

double serrin_norm(const Trajectory& traj) {
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double h = 0.5 * (traj.times[i] - traj.times[i - 1]);
    acc += h * (traj.diagnostics[i - 1].h_half_n_sq + traj.diagnostics[i].h_half_n_sq);
  }
  return acc;
}

namespace {

// sum over |xi| <= R of rho(xi)^p plus the analytic integral tail; raw partial
// sums alone refine too slowly for the self-convergence contract
double rho_power_sum(int n, double p, int R) {
  // exact lattice part
  double lattice = 0.0;
  {
    std::vector<int> xi(static_cast<std::size_t>(n), -R);
    const long R_sq = static_cast<long>(R) * R;
    bool done = false;
    while (!done) {
      long q = 0;
      for (int k = 0; k < n; ++k) q += static_cast<long>(xi[static_cast<std::size_t>(k)]) *
                                       xi[static_cast<std::size_t>(k)];
      if (q <= R_sq) lattice += std::pow(rho_of_xi_sq(static_cast<double>(q)), p);
      for (int k = n - 1;; --k) {
        if (k < 0) {
          done = true;
          break;
        }
        if (++xi[static_cast<std::size_t>(k)] <= R) break;
        xi[static_cast<std::size_t>(k)] = -R;
      }
    }
  }
  // integral tail over |x| > R: omega_{n-1} int_R^inf r^{n-1} (2 pi sqrt(1+r^2))^p dr,
  // via the substitution r = 1/t on [0, 1/R] (integrand smooth when p < -n)
  const double omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
  const auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::pow(t, -static_cast<double>(n) - 1.0 - p) *
           std::pow(2.0 * M_PI * std::sqrt(1.0 + t * t), p);
  };
  const double hi = 1.0 / static_cast<double>(R);
  const int panels = 4096;  // Simpson on a smooth bounded integrand
  double tail = 0.0;
  const double h = hi / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = i * h, b = a + h;
    tail += (h / 6.0) * (integrand(a) + 4.0 * integrand(0.5 * (a + b)) + integrand(b));
  }
  return lattice + omega * tail;
}

}  // namespace

CommutatorConstant commutator_constant(double s, double theta, double sigma_tilde, int n,
                                       int radius) {
  if (radius < 2) throw std::invalid_argument("commutator_constant: radius must be >= 2");
  const double sigma0 = std::max(std::abs(s), std::abs(s - theta + 1.0)) + 0.5 * n;
  if (!(sigma_tilde > sigma0))
    throw std::invalid_argument(
        "commutator_constant: lattice sum diverges, needs sigma_tilde > sigma0 = " +
        std::to_string(sigma0));
  CommutatorConstant out;
  out.sigma0 = sigma0;
  out.radius = radius;
  if (theta == 0.0) return out;  // |theta| factor annihilates the constant
  const double p = 2.0 * sigma0 - static_cast<double>(n) - 2.0 * sigma_tilde;
  const double pref = std::pow(2.0, 0.5 * std::abs(s)) / (2.0 * M_PI) * std::abs(theta);
  out.value = pref * std::sqrt(rho_power_sum(n, p, radius));
  out.value_at_half_radius = pref * std::sqrt(rho_power_sum(n, p, radius / 2));
  return out;
}

double estimate_multiplication_constant(double s1, double s2, int n, int m, int trials,
                                        std::uint64_t seed) {
  if (s1 > s2) throw std::invalid_argument("multiplication constant: needs s1 <= s2");
  if (!(s1 + s2 > 0.0)) throw std::invalid_argument("multiplication constant: needs s1 + s2 > 0");
  if (s2 == 0.5 * n)
    throw std::invalid_argument(
        "multiplication constant: s2 = n/2 is outside cases (a) and (b)");
  const double target = s2 > 0.5 * n ? s1 : s1 + s2 - 0.5 * n;
  if (trials <= 0) return 0.0;

  Rng rng(seed);
  const int N = 2 * (2 * m) + 1;  // exact for the quadratic product
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto f1 = random_scalar_field(n, m, rng, 1.0);
    auto f2 = random_scalar_field(n, m, rng, 1.0);
    auto g1 = to_physical(f1, N);
    auto g2 = to_physical(f2, N);
    PhysicalGrid prod(n, N);
    for (std::size_t i = 0; i < prod.samples.size(); ++i)
      prod.samples[i] = g1.samples[i] * g2.samples[i];
    auto p = to_spectral(prod, 2 * m);  // the full product band
    const double denom = sobolev_norm(f1, s1) * sobolev_norm(f2, s2);
    if (denom == 0.0) continue;
    best = std::max(best, sobolev_norm(p, target) / denom);
  }
  return best;
}

double verify_interpolation(const SpectralScalarField& g, double s1, double s2, double theta1) {
  if (theta1 < 0.0 || theta1 > 1.0)
    throw std::invalid_argument("verify_interpolation: theta1 in [0,1] required");
  const double theta2 = 1.0 - theta1;
  const double s = theta1 * s1 + theta2 * s2;
  return sobolev_norm(g, s) -
         std::pow(sobolev_norm(g, s1), theta1) * std::pow(sobolev_norm(g, s2), theta2);
}

double verify_discrete_young(const LatticeSequence& u, const LatticeSequence& v, double q) {
  if (u.n != v.n) throw std::invalid_argument("discrete Young: dimension mismatch");
  if (!(q >= 1.0)) throw std::invalid_argument("discrete Young: q >= 1 required");
  const bool q_inf = std::isinf(q);

  // consolidate duplicate indices so term lists and sequences agree
  auto consolidate = [](const LatticeSequence& s) {
    std::map<std::vector<int>, double> out;
    for (const auto& [x, c] : s.terms) out[x] += c;
    return out;
  };
  const auto uc = consolidate(u);
  const auto vc = consolidate(v);

  std::map<std::vector<int>, double> conv;
  for (const auto& [xu, cu] : uc)
    for (const auto& [xv, cv] : vc) {
      std::vector<int> x(xu.size());
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = xu[k] + xv[k];
      conv[x] += cu * cv;
    }

  auto lq = [&](const std::map<std::vector<int>, double>& seq) {
    double acc = 0.0;
    for (const auto& [x, val] : seq) {
      if (q_inf)
        acc = std::max(acc, std::abs(val));
      else
        acc += std::pow(std::abs(val), q);
    }
    return q_inf ? acc : std::pow(acc, 1.0 / q);
  };

  double u_l1 = 0.0;
  for (const auto& [x, c] : uc) u_l1 += std::abs(c);

  return lq(conv) - u_l1 * lq(vc);
}

}  // namespace tns
