#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tns/calculus.hpp"
#include "tns/errors.hpp"
#include "tns/field.hpp"

namespace tns {

struct SymmetryViolation {
  int k, j, a, b;
  char which;  // 'L' for a_{kj}^{ab} != a_{aj}^{kb}, 'R' for a_{kj}^{ab} != a_{kb}^{aj}
  double magnitude;
};

struct SymmetryReport {
  bool pass = true;
  std::vector<SymmetryViolation> violations;
};

struct EllipticityEstimate {
  double c_a = 0.0;         // max over samples of |zeta|^2 / a(zeta,zeta)
  double nu_eff_max = 0.0;  // max over samples of a(zeta,zeta) / (2|zeta|^2)
  double nu_eff_mean = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

class NotRelaxedElliptic : public std::runtime_error {
public:
  NotRelaxedElliptic(const std::string& what, std::vector<double> zeta, std::size_t grid_index,
                     double t, double form_value)
      : std::runtime_error(what),
        zeta(std::move(zeta)),
        grid_index(grid_index),
        t(t),
        form_value(form_value) {}
  std::vector<double> zeta;  // n x n row-major witness
  std::size_t grid_index;
  double t;
  double form_value;
};

// The viscosity coefficient tensor a_{kj}^{ab}(x,t) = theta(t) * a0_{kj}^{ab}(x).
// Entries are constants or band-limited spectral fields; symmetry and relaxed
// ellipticity are validated, not assumed.
class ViscosityTensor {
public:
  explicit ViscosityTensor(int n);

  // nu * (d_{kj} d_{ab} + d_{kb} d_{aj}); the operator reduces to nu*Laplace
  // on divergence-free fields
  static ViscosityTensor isotropic(int n, double nu);

  int dim() const { return n_; }

  void set_constant_entry(int k, int j, int a, int b, double value);
  void set_field_entry(int k, int j, int a, int b, SpectralScalarField f);
  // piecewise-linear theta(t) table; empty means theta == 1
  void set_time_factor(std::vector<std::pair<double, double>> table);

  bool has_entry_field(int k, int j, int a, int b) const;
  double constant_entry(int k, int j, int a, int b) const;
  const SpectralScalarField* field_entry(int k, int j, int a, int b) const;

  double theta(double t) const;
  double theta_abs_max() const;
  std::pair<double, double> time_range() const;

  // largest lattice radius among field entries (0 when constant in space)
  int bandwidth() const;
  bool constant_in_space() const { return bandwidth() == 0; }

  SymmetryReport verify_symmetry(double field_tol = 1e-12) const;

  // Monte Carlo estimate over random unit-Frobenius symmetric trace-free zeta
  // at random grid points and times; throws NotRelaxedElliptic on a
  // nonpositive sample. Deterministic per seed regardless of thread count.
  EllipticityEstimate estimate_ellipticity(int samples, std::uint64_t seed) const;

  // cached estimate with the default sample budget
  const EllipticityEstimate& ellipticity() const;

  // (L u)_k = d_a ( a_{kj}^{ab} E_{jb}(u) )
  SpectralVectorField apply_operator(const SpectralVectorField& u, double t, Dealias mode,
                                     int grid_N = 0) const;
  // equivalent form d_a ( a_{kj}^{ab} d_b u_j ); agrees under the symmetry conditions
  SpectralVectorField apply_operator_gradient_form(const SpectralVectorField& u, double t,
                                                   Dealias mode, int grid_N = 0) const;

  // a_T(t; u, v) = < a_{ij}^{ab}(.,t) E_{jb}(u), E_{ia}(v) >_T
  double bilinear_form(double t, const SpectralVectorField& u, const SpectralVectorField& v,
                       Dealias mode, int grid_N = 0) const;

  struct Norms {
    double sup_norm;            // Frobenius aggregation of per-entry sup_{x,t}
    double sobolev_frobenius;   // Frobenius aggregation of per-entry H^sigma norms, time-sup
  };
  Norms tensor_norms(double sigma) const;

  void ensure_symmetric() const;  // throws ConfigError on violation (checked once)

private:
  struct Entry {
    double constant = 0.0;
    std::optional<SpectralScalarField> field;
  };

  std::size_t idx(int k, int j, int a, int b) const;
  const Entry& entry(int k, int j, int a, int b) const { return entries_[idx(k, j, a, b)]; }
  // samples of every entry on a shared evaluation grid (cached)
  void ensure_presampled() const;
  double entry_at(std::size_t e, std::size_t grid_index) const;

  int n_;
  std::vector<Entry> entries_;
  std::vector<std::pair<double, double>> time_factor_;

  mutable bool symmetry_checked_ = false;
  mutable std::optional<EllipticityEstimate> ellipticity_cache_;
  mutable std::vector<std::vector<double>> presamples_;  // per entry, grid samples
  mutable int presample_N_ = 0;
};

// parse a tensor specification (text): `isotropic nu=<real>` or entry lines,
// optional time_factor lines; see README for the grammar
ViscosityTensor parse_tensor_spec(const std::string& text, int n);

}  // namespace tns
