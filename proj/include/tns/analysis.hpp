#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tns/field.hpp"
#include "tns/galerkin.hpp"
#include "tns/heat.hpp"
#include "tns/viscosity.hpp"

namespace tns {

// trapezoid evaluation of 1/2||u(t1)||^2 + int a_T - 1/2||u(t0)||^2 - int <f,u>
// over trajectory records; positive residual = energy deficit
double energy_residual(const Trajectory& traj, double t0, double t1);

// int_0^T ||u||^2_{H^{n/2}} dt by trapezoid over the step grid
double serrin_norm(const Trajectory& traj);

// ---------------------------------------------------------------------------
// commutator constant C-bar_{s,theta,sigma~} =
//   (2^{|s|/2} / 2pi) |theta| [ sum_xi rho(xi)^{2 sigma0 - n - 2 sigma~} ]^{1/2},
// sigma0 = max{|s|, |s-theta+1|} + n/2. The lattice sum is taken to |xi| <=
// radius with an analytic integral tail; the report carries the value at
// radius/2 for a refinement check.
struct CommutatorConstant {
  double value = 0.0;
  double value_at_half_radius = 0.0;
  double sigma0 = 0.0;
  int radius = 0;
};
CommutatorConstant commutator_constant(double s, double theta, double sigma_tilde, int n,
                                       int radius);

// empirical lower bound for the multiplication constant C_*(s1,s2,n):
// max over random band-limited pairs of ||f1 f2||_target / (||f1|| ||f2||);
// target index s1 (case a, s2 > n/2) or s1+s2-n/2 (case b, s2 < n/2)
double estimate_multiplication_constant(double s1, double s2, int n, int m, int trials,
                                        std::uint64_t seed);

// ||g||_{H^s} - ||g||^{th1}_{H^s1} ||g||^{th2}_{H^s2} with s = th1 s1 + th2 s2
double verify_interpolation(const SpectralScalarField& g, double s1, double s2, double theta1);

// finitely supported sequences on Z^n as (index vector, value) pairs
struct LatticeSequence {
  int n = 1;
  std::vector<std::pair<std::vector<int>, double>> terms;
};
// ||u * v||_q - ||u||_1 ||v||_q  (<= 0 up to roundoff); q >= 1 or infinity
double verify_discrete_young(const LatticeSequence& u, const LatticeSequence& v, double q);

// ---------------------------------------------------------------------------
// Gronwall machinery on sampled grids
struct GronwallProblem {
  std::vector<double> grid;  // strictly increasing times
  double eta0 = 0.0;
  std::vector<double> phi;   // sampled on grid
  std::vector<double> psi;
  std::vector<double> y;
  double b = 1.0;
  double c = 1.0;
};

struct GronwallBound {
  std::vector<double> grid;
  std::vector<double> bound;             // e^{int phi} (eta0 + int e^{-int phi} psi)
  std::vector<double> simplified_bound;  // e^{int phi} (eta0 + int psi), phi,psi >= 0 only
};
GronwallBound gronwall_bound(const GronwallProblem& p);

enum class SmallnessVariant { alt, phi };
struct SmallnessReport {
  bool admissible = false;
  double d_value = 0.0;     // D
  double threshold = 0.0;   // b/(ec) or (b/c) e^{-1-Phi(T)}
  double sup_eta_bound = 0.0;
  double y_integral_bound = 0.0;
};
SmallnessReport smallness_check(const GronwallProblem& p, SmallnessVariant variant);

// u(t) <= a(t) + int_0^t a b exp(int_s^t b) ds by nested trapezoid; b >= 0
std::vector<double> integral_gronwall_bound(const std::vector<double>& a,
                                            const std::vector<double>& b,
                                            const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// existence-threshold calculator
enum class ThresholdRegime { constant_coeff, variable_coeff };

struct ThresholdOptions {
  ThresholdRegime regime = ThresholdRegime::constant_coeff;
  double c_star = 1.0;                      // multiplication constant C_{*rn} (configured)
  std::optional<double> c_tilde_star;       // variable regime; defaults to c_star
  std::optional<double> sigma_tilde;        // variable regime; default sigma0 + 0.5
  int commutator_radius = 64;
  std::optional<double> c_a_override;       // else sampled from the tensor
  std::optional<double> a_norm_override;    // else tensor_norms
  std::optional<double> c_bar_override;     // else commutator lattice sum
  int force_samples = 2048;                 // sampling grid for ||f(t)||^2
};

struct ThresholdReport {
  ThresholdRegime regime = ThresholdRegime::constant_coeff;
  double c_a = 0.0;
  double c_star = 0.0;
  double c_tilde_star = 0.0;  // variable regime only
  double c_bar = 0.0;         // variable regime only
  double sigma_tilde = 0.0;   // variable regime only
  double a_norm = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double force_integral = 0.0;  // int_0^T ||f||^2_{H^{n/2-2}}
  double heat_integral = 0.0;   // int_0^T ||K u0||^2_{H^{n/2}} (closed form)
  double u0_norm_sq = 0.0;      // ||u0||^2_{H^{n/2-1}}
  double lhs = 0.0;             // at the full horizon T
  double margin = 0.0;          // a3 - lhs
  double t_star_max = 0.0;
  double horizon = 0.0;
  bool c_a_sampled = false;  // the report labels C_A as sampled, not proven
  std::string note;
};

// f_norm_sq: t -> ||f(t)||^2_{H^{n/2-2}} (sampled on a uniform grid internally)
ThresholdReport existence_threshold(const SpectralVectorField& u0,
                                    const std::function<double(double)>& f_norm_sq,
                                    const ViscosityTensor& A, double T,
                                    const ThresholdOptions& opt);

}  // namespace tns
