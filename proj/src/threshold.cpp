#include <cmath>
#include <sstream>

#include "tns/analysis.hpp"
#include "tns/errors.hpp"
#include "tns/spectral.hpp"

namespace tns {

namespace {

// cumulative trapezoid of f_norm_sq on a uniform grid over [0, T]; linear
// interpolation keeps lhs(T*) continuous and nondecreasing in T*
struct ForceIntegral {
  double T;
  std::vector<double> cumulative;  // size samples+1
  double at(double t_star) const {
    if (t_star <= 0.0) return 0.0;
    const double pos = t_star / T * (cumulative.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), cumulative.size() - 2);
    const double w = pos - static_cast<double>(i);
    return cumulative[i] + w * (cumulative[i + 1] - cumulative[i]);
  }
};

ForceIntegral build_force_integral(const std::function<double(double)>& f_norm_sq, double T,
                                   int samples) {
  ForceIntegral fi;
  fi.T = T;
  fi.cumulative.assign(static_cast<std::size_t>(samples) + 1, 0.0);
  if (!f_norm_sq) return fi;
  const double h = T / samples;
  double prev = f_norm_sq(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double cur = f_norm_sq(h * i);
    fi.cumulative[static_cast<std::size_t>(i)] =
        fi.cumulative[static_cast<std::size_t>(i - 1)] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return fi;
}

// closed-form int_0^{T*} ||K u0||^2_{H^{n/2}} per mode (heat_profile's sum,
// reusable at many T* values during bisection)
struct HeatIntegral {
  std::vector<double> weight;  // rho^{2s} |u0|^2 per mode
  std::vector<double> lam2;    // 2 (2 pi |xi|)^2 per mode
  double at(double t_star) const {
    if (t_star <= 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i)
      acc += weight[i] * (1.0 - std::exp(-lam2[i] * t_star)) / lam2[i];
    return acc;
  }
};

HeatIntegral build_heat_integral(const SpectralVectorField& u0, double s) {
  HeatIntegral hi;
  const auto& lat = u0.lattice();
  for (std::uint32_t flat : lat.ball()) {
    const double xi_sq = static_cast<double>(lat.xi_sq(flat));
    if (xi_sq == 0.0) continue;  // dotted space: the mean is excluded
    double amp_sq = 0.0;
    for (int k = 0; k < u0.dim(); ++k) amp_sq += std::norm(u0.comp(k)[flat]);
    if (amp_sq == 0.0) continue;
    hi.weight.push_back(std::pow(rho_of_xi_sq(xi_sq), 2.0 * s) * amp_sq);
    hi.lam2.push_back(2.0 * 4.0 * M_PI * M_PI * xi_sq);
  }
  return hi;
}

}  // namespace

ThresholdReport existence_threshold(const SpectralVectorField& u0,
                                    const std::function<double(double)>& f_norm_sq,
                                    const ViscosityTensor& A, double T,
                                    const ThresholdOptions& opt) {
  if (T <= 0.0) throw ConfigError("existence_threshold: T must be > 0");
  const int n = u0.lattice().dim();

  ThresholdReport rep;
  rep.regime = opt.regime;
  rep.horizon = T;
  rep.c_star = opt.c_star;

  if (opt.c_a_override) {
    rep.c_a = *opt.c_a_override;
  } else {
    rep.c_a = A.ellipticity().c_a;  // throws when not relaxed-elliptic
    rep.c_a_sampled = true;
  }

  const double n_half = 0.5 * static_cast<double>(n);
  rep.u0_norm_sq = std::pow(sobolev_norm(u0, n_half - 1.0), 2.0);

  rep.a1 = 8.0 * opt.c_star * opt.c_star;
  if (opt.regime == ThresholdRegime::constant_coeff) {
    rep.a_norm = opt.a_norm_override ? *opt.a_norm_override : A.tensor_norms(0.0).sup_norm;
    rep.a2 = rep.a_norm * rep.a_norm + 1.0;
    rep.a3 = 1.0 / (512.0 * M_E * rep.c_a * rep.c_a * opt.c_star * opt.c_star);
    rep.note = "constant-coefficient regime; heuristic up to C*";
  } else {
    // sigma~_n > sigma0 = max{2, n-2}; strict inequality honored by +0.5
    const double sigma0 = std::max(2.0, static_cast<double>(n) - 2.0);
    rep.sigma_tilde = opt.sigma_tilde ? *opt.sigma_tilde : sigma0 + 0.5;
    if (!(rep.sigma_tilde > sigma0))
      throw ConfigError("existence_threshold: sigma_tilde must exceed max{2, n-2}");
    rep.c_tilde_star = opt.c_tilde_star ? *opt.c_tilde_star : opt.c_star;
    rep.a_norm = opt.a_norm_override
                     ? *opt.a_norm_override
                     : A.tensor_norms(rep.sigma_tilde + 1.0).sobolev_frobenius;
    if (opt.c_bar_override) {
      rep.c_bar = *opt.c_bar_override;
    } else {
      rep.c_bar =
          commutator_constant(0.0, n_half - 1.0, rep.sigma_tilde, n, opt.commutator_radius).value;
    }
    rep.a2 = rep.c_tilde_star * rep.c_tilde_star * rep.a_norm * rep.a_norm + 1.0;
    rep.a3 = 1.0 / (640.0 * rep.c_a * rep.c_a * opt.c_star * opt.c_star) *
             std::exp(-1.0 - 20.0 * rep.c_a * rep.c_bar * rep.c_bar * rep.a_norm * rep.a_norm * T);
    rep.note = "variable-coefficient regime; heuristic up to C*";
  }
  if (rep.c_a_sampled) rep.note += "; C_A sampled, not proven";

  const auto force = build_force_integral(f_norm_sq, T, opt.force_samples);
  const auto heat = build_heat_integral(u0, n_half);
  const double data_factor = rep.a1 * rep.u0_norm_sq + rep.a2;

  const auto lhs = [&](double t_star) { return force.at(t_star) + data_factor * heat.at(t_star); };

  rep.force_integral = force.at(T);
  rep.heat_integral = heat.at(T);
  rep.lhs = lhs(T);
  rep.margin = rep.a3 - rep.lhs;

  // largest admissible T*: lhs is continuous and nondecreasing with lhs(0)=0
  if (rep.lhs < rep.a3) {
    rep.t_star_max = T;
  } else {
    double lo = 0.0, hi = T;
    while (hi - lo > 1e-6 * T) {
      const double mid = 0.5 * (lo + hi);
      if (lhs(mid) < rep.a3)
        lo = mid;
      else
        hi = mid;
    }
    rep.t_star_max = lo;
  }
  return rep;
}

}  // namespace tns
