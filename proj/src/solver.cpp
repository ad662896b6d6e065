#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "tns/errors.hpp"
#include "tns/galerkin.hpp"
#include "tns/spectral.hpp"

namespace tns {

namespace {

double max_abs_coeff(const SpectralVectorField& u) {
  double mx = 0.0;
  for (int k = 0; k < u.dim(); ++k)
    for (std::uint32_t flat : u.lattice().ball())
      mx = std::max(mx, std::abs(u.comp(k)[flat]));
  return mx;
}

bool unhealthy(const SpectralVectorField& u) {
  for (int k = 0; k < u.dim(); ++k)
    for (std::uint32_t flat : u.lattice().ball()) {
      const Complex c = u.comp(k)[flat];
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e100) return true;
    }
  return false;
}

// coefficient-wise heat factor exp(-nu0 (2 pi |xi|)^2 dt)
void apply_heat_factor(SpectralVectorField& u, double nu0, double dt) {
  const auto& lat = u.lattice();
  const auto& ball = lat.ball();
  for (int k = 0; k < u.dim(); ++k) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
      const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
      const double lam = nu0 * 4.0 * M_PI * M_PI * static_cast<double>(lat.xi_sq(flat));
      u.comp(k)[flat] *= std::exp(-lam * dt);
    }
  }
}

SpectralVectorField laplacian(const SpectralVectorField& u) {
  SpectralVectorField out = u;
  const auto& lat = u.lattice();
  for (int k = 0; k < u.dim(); ++k)
    for (std::uint32_t flat : lat.ball())
      out.comp(k)[flat] *= -4.0 * M_PI * M_PI * static_cast<double>(lat.xi_sq(flat));
  return out;
}

double resolve_nu0(const ViscosityTensor& A, const SolverConfig& cfg) {
  if (cfg.nu0) return *cfg.nu0;
  return A.ellipticity().nu_eff_mean;
}

// re-project onto the solenoidal zero-mean space; returns the removed part's
// L2 magnitude (logged per step)
double reproject(SpectralVectorField& u) {
  u = project_zero_mean(std::move(u));
  auto parts = helmholtz_decompose(u);
  const double corr = sobolev_norm(parts.gradient_part, 0.0);
  u = std::move(parts.solenoidal_part);
  u.set_divergence_free_flag(true);
  return corr;
}

}  // namespace

double stability_cap(const ViscosityTensor& A, int m) {
  const double nu_max = A.ellipticity().nu_eff_max;
  if (nu_max <= 0.0) return std::numeric_limits<double>::infinity();
  const double k_max = 2.0 * M_PI * static_cast<double>(m);
  return 0.5 / (nu_max * k_max * k_max);
}

SpectralVectorField galerkin_rhs(const SpectralVectorField& u, double t, const Forcing& f,
                                 const ViscosityTensor& A, int m, Dealias mode, bool convection,
                                 int grid_N) {
  SpectralVectorField rhs = A.apply_operator(u, t, mode, grid_N);
  if (convection) rhs -= convect(u, mode, grid_N);
  if (f) {
    SpectralVectorField force = f(t);
    std::vector<int> zero(static_cast<std::size_t>(force.lattice().dim()), 0);
    const std::size_t zslot = force.lattice().encode(zero.data());
    for (int k = 0; k < force.dim(); ++k)
      if (std::abs(force.comp(k)[zslot]) != 0.0)
        throw std::invalid_argument("galerkin_rhs: force must have zero mean");
    if (force.lattice().radius() != u.lattice().radius())
      force = resize_lattice(force, u.lattice().radius());
    rhs += force;
  }
  rhs = truncate_modes(rhs, m);
  rhs = project_zero_mean(std::move(rhs));  // scrub product-roundoff mean
  return leray_project(rhs);
}

SolverState step(const SolverState& state, double dt, Scheme scheme, const Forcing& f,
                 const ViscosityTensor& A, const SolverConfig& cfg) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt must be > 0");
  const int m = state.u.lattice().radius();
  const auto rhs = [&](const SpectralVectorField& u, double t) {
    return galerkin_rhs(u, t, f, A, m, cfg.dealias, cfg.convection, cfg.grid_N);
  };

  SpectralVectorField next(state.u.lattice_ptr());
  const double t = state.t;

  if (scheme == Scheme::rk4) {
    auto k1 = rhs(state.u, t);
    auto k2 = rhs(state.u + (0.5 * dt) * k1, t + 0.5 * dt);
    auto k3 = rhs(state.u + (0.5 * dt) * k2, t + 0.5 * dt);
    auto k4 = rhs(state.u + dt * k3, t + dt);
    next = state.u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } else {
    // integrating-factor RK4: the constant isotropic part nu0*Laplace is
    // advanced exactly, the remainder G(u) = rhs(u) - nu0*Laplace(u) by RK4
    const double nu0 = resolve_nu0(A, cfg);
    const auto g = [&](const SpectralVectorField& u, double tt) {
      auto r = rhs(u, tt);
      if (nu0 != 0.0) r -= nu0 * laplacian(u);
      return r;
    };
    auto half = [&](SpectralVectorField u) {
      apply_heat_factor(u, nu0, 0.5 * dt);
      return u;
    };
    auto k1 = g(state.u, t);
    auto k2 = g(half(state.u + (0.5 * dt) * k1), t + 0.5 * dt);
    auto k3 = g(half(state.u) + (0.5 * dt) * k2, t + 0.5 * dt);
    auto k4 = g(half(half(state.u)) + dt * half(k3), t + dt);
    next = half(half(state.u)) +
           (dt / 6.0) * (half(half(k1)) + 2.0 * half(k2) + 2.0 * half(k3) + k4);
  }

  if (unhealthy(next)) {
    std::ostringstream os;
    os << "solver blow-up at t = " << t + dt << " (max |coeff| before step "
       << max_abs_coeff(state.u) << ")";
    throw BlowUpError(os.str(), t + dt);
  }

  SolverState out;
  out.t = t + dt;
  out.u = truncate_modes(next, m);
  out.projection_correction = reproject(out.u);
  out.step_index = state.step_index + 1;
  return out;
}

Trajectory solve(const SpectralVectorField& u0, const Forcing& f, const ViscosityTensor& A,
                 const SolverConfig& cfg, SolverState* last_good) {
  if (cfg.dt <= 0.0) throw ConfigError("solve: dt must be > 0");
  if (cfg.t_final <= 0.0) throw ConfigError("solve: t_final must be > 0");
  if (u0.lattice().dim() != A.dim()) throw ConfigError("solve: tensor/field dimension mismatch");

  A.ellipticity();  // validates relaxed ellipticity up front
  if (cfg.grid_N != 0) {
    const int min_N =
        product_grid_size(cfg.m, std::max(cfg.m, A.bandwidth()), cfg.m, Dealias::two_thirds);
    if (cfg.grid_N < min_N)
      throw ConfigError("solve: grid " + std::to_string(cfg.grid_N) +
                        " too small for m and the tensor bandwidth (need >= " +
                        std::to_string(min_N) + ")");
  }
  if (cfg.scheme == Scheme::rk4) {
    const double cap = stability_cap(A, cfg.m);
    if (cfg.dt > cap) {
      std::ostringstream os;
      os << "solve: dt = " << cfg.dt << " exceeds the rk4 stability cap " << cap
         << " = 0.5/(nu_max (2 pi m)^2)";
      throw ConfigError(os.str());
    }
  }

  // initial snapshot is exactly P_m u0
  SpectralVectorField u = resize_lattice(u0, cfg.m);
  u = leray_project(project_zero_mean(std::move(u)));
  u.set_divergence_free_flag(true);

  Trajectory traj;
  traj.dealias = cfg.dealias;

  SolverState state;
  state.t = 0.0;
  state.u = u;
  state.step_index = 0;
  std::deque<double> max_norm_history;

  const double half_e0 = 0.5 * std::pow(sobolev_norm(state.u, 0.0), 2.0);
  double serrin_acc = 0.0, diss_acc = 0.0, force_acc = 0.0;
  double prev_t = 0.0, prev_hn = 0.0, prev_diss = 0.0, prev_force = 0.0;

  const double n_half = 0.5 * static_cast<double>(u.lattice().dim());
  auto record = [&](const SolverState& s, bool first) {
    DiagnosticsRecord d;
    d.t = s.t;
    d.l2_sq = std::pow(sobolev_norm(s.u, 0.0), 2.0);
    d.h_half_n_sq = std::pow(sobolev_norm(s.u, n_half), 2.0);
    d.dissipation = A.bilinear_form(s.t, s.u, s.u, cfg.dealias, cfg.grid_N);
    d.force_power = f ? dual_pairing(f(s.t), s.u) : 0.0;
    if (!first) {
      const double h = 0.5 * (s.t - prev_t);
      serrin_acc += h * (prev_hn + d.h_half_n_sq);
      diss_acc += h * (prev_diss + d.dissipation);
      force_acc += h * (prev_force + d.force_power);
    }
    prev_t = s.t;
    prev_hn = d.h_half_n_sq;
    prev_diss = d.dissipation;
    prev_force = d.force_power;
    d.serrin_cumulative = serrin_acc;
    d.energy_residual_cumulative = 0.5 * d.l2_sq + diss_acc - half_e0 - force_acc;
    d.div_residual = sobolev_norm(divergence(s.u), 0.0);
    d.projection_correction = s.projection_correction;
    traj.times.push_back(s.t);
    traj.states.push_back(s.u);
    traj.diagnostics.push_back(d);

    const double h1 = sobolev_norm(s.u, 1.0);
    if (h1 > 0.0 && d.div_residual > 1e-10 * h1)
      throw BlowUpError("divergence residual invariant violated", s.t);
  };

  record(state, true);
  if (last_good) *last_good = state;

  const long nsteps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  for (long i = 0; i < nsteps; ++i) {
    const double dt = std::min(cfg.dt, cfg.t_final - state.t);
    if (dt <= 1e-14) break;
    try {
      state = step(state, dt, cfg.scheme, f, A, cfg);
    } catch (BlowUpError& e) {
      std::ostringstream os;
      os << e.what() << "; recent max-norms:";
      for (double h : max_norm_history) os << " " << h;
      throw BlowUpError(os.str(), e.t_blowup);
    }
    max_norm_history.push_back(max_abs_coeff(state.u));
    if (max_norm_history.size() > 8) max_norm_history.pop_front();
    record(state, false);
    if (last_good) *last_good = state;
  }
  return traj;
}

SpectralScalarField recover_pressure(const SpectralVectorField& u, const Forcing& f,
                                     const ViscosityTensor& A, double t, Dealias mode) {
  SpectralVectorField F = A.apply_operator(u, t, mode) - convect(u, mode);
  if (f) {
    SpectralVectorField force = f(t);
    if (force.lattice().radius() != u.lattice().radius())
      force = resize_lattice(force, u.lattice().radius());
    F += force;
  }
  F = project_zero_mean(std::move(F));
  auto parts = helmholtz_decompose(F);
  return invert_gradient(parts.gradient_part);
}

}  // namespace tns
