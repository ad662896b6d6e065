#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tns/calculus.hpp"
#include "tns/field.hpp"
#include "tns/viscosity.hpp"

namespace tns {

// One real orthonormal divergence-free trigonometric mode: a conjugate pair
// {xi, -xi} with a polarization vector perpendicular to xi and a phase.
struct BasisMode {
  std::vector<int> xi;                // representative, lexicographically positive
  std::vector<double> polarization;   // unit vector, exactly perpendicular to xi
  int polarization_index = 0;
  bool sine = false;                  // false: sqrt(2) d cos, true: sqrt(2) d sin
  double lambda = 0.0;                // rho(xi); Lambda w = lambda w
};

class GalerkinBasis {
public:
  GalerkinBasis(int n, int m, std::vector<BasisMode> modes)
      : n_(n), m_(m), modes_(std::move(modes)) {}

  int dim() const { return n_; }
  int radius() const { return m_; }
  std::size_t size() const { return modes_.size(); }
  const BasisMode& mode(std::size_t l) const { return modes_[l]; }

  // materialize w_l as a spectral field on the basis lattice
  SpectralVectorField field(std::size_t l) const;

  // coordinates <u, w_l>_T for all l
  std::vector<double> coordinates(const SpectralVectorField& u) const;

  // sum_l coeff_l w_l
  SpectralVectorField synthesize(const std::vector<double>& coeffs) const;

private:
  int n_, m_;
  std::vector<BasisMode> modes_;
};

// all (n-1) * (#conjugate pairs) * 2 orthonormal modes with 0 < |xi| <= m,
// ordered by nondecreasing lambda, ties broken lexicographically in
// (|xi|^2, xi, polarization index, phase)
GalerkinBasis build_basis(int n, int m);

enum class Scheme { rk4, ifrk4 };

using Forcing = std::function<SpectralVectorField(double)>;  // empty => zero force

struct DiagnosticsRecord {
  double t = 0.0;
  double l2_sq = 0.0;
  double h_half_n_sq = 0.0;  // squared H^{n/2} norm
  double dissipation = 0.0;  // a_T(t; u, u)
  double force_power = 0.0;  // <f, u>
  double serrin_cumulative = 0.0;
  double energy_residual_cumulative = 0.0;
  double div_residual = 0.0;  // ||div u||_{L2}
  double projection_correction = 0.0;
};

struct SolverState {
  double t = 0.0;
  SpectralVectorField u;
  long step_index = 0;
  double projection_correction = 0.0;  // L2 magnitude removed by re-projection
};

struct Trajectory {
  Dealias dealias = Dealias::exact_pad;
  std::vector<double> times;
  std::vector<SpectralVectorField> states;
  std::vector<DiagnosticsRecord> diagnostics;

  const SpectralVectorField& at(std::size_t i) const { return states[i]; }
  std::size_t size() const { return times.size(); }
};

struct SolverConfig {
  int m = 4;
  double dt = 1e-3;
  double t_final = 1.0;
  Scheme scheme = Scheme::rk4;
  Dealias dealias = Dealias::exact_pad;
  bool convection = true;
  std::optional<double> nu0;  // ifrk4 integrating-factor viscosity; auto if empty
  int grid_N = 0;             // product grid override; 0 = sized from the dealias mode
};

// P_m P_sigma [ f(t) + L u - (u . grad) u ]
SpectralVectorField galerkin_rhs(const SpectralVectorField& u, double t, const Forcing& f,
                                 const ViscosityTensor& A, int m, Dealias mode,
                                 bool convection = true, int grid_N = 0);

// one time step; re-projects onto the solenoidal space afterwards
SolverState step(const SolverState& state, double dt, Scheme scheme, const Forcing& f,
                 const ViscosityTensor& A, const SolverConfig& cfg);

// last_good, when given, receives every successfully completed state, so a
// caller can persist the final healthy snapshot after a blow-up
Trajectory solve(const SpectralVectorField& u0, const Forcing& f, const ViscosityTensor& A,
                 const SolverConfig& cfg, SolverState* last_good = nullptr);

// unique zero-mean p with grad p = P_g [ f(t) + L u - (u . grad) u ]
SpectralScalarField recover_pressure(const SpectralVectorField& u, const Forcing& f,
                                     const ViscosityTensor& A, double t, Dealias mode);

// rk4 stability cap 0.5 / (nu_max (2 pi m)^2)
double stability_cap(const ViscosityTensor& A, int m);

}  // namespace tns
