#include "tns/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tns/rng.hpp"
#include "tns/spectral.hpp"
#include "tns/transform.hpp"

namespace tns {

ViscosityTensor::ViscosityTensor(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("viscosity tensor needs n >= 2");
  entries_.resize(static_cast<std::size_t>(n) * n * n * n);
}

ViscosityTensor ViscosityTensor::isotropic(int n, double nu) {
  ViscosityTensor A(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double v = nu * ((k == j && a == b ? 1.0 : 0.0) + (k == b && a == j ? 1.0 : 0.0));
          if (v != 0.0) A.set_constant_entry(k, j, a, b, v);
        }
  return A;
}

std::size_t ViscosityTensor::idx(int k, int j, int a, int b) const {
  return static_cast<std::size_t>(((k * n_ + j) * n_ + a) * n_ + b);
}

void ViscosityTensor::set_constant_entry(int k, int j, int a, int b, double value) {
  auto& e = entries_[idx(k, j, a, b)];
  e.constant = value;
  e.field.reset();
  symmetry_checked_ = false;
  ellipticity_cache_.reset();
  presamples_.clear();
}

void ViscosityTensor::set_field_entry(int k, int j, int a, int b, SpectralScalarField f) {
  auto& e = entries_[idx(k, j, a, b)];
  e.constant = 0.0;
  e.field = std::move(f);
  symmetry_checked_ = false;
  ellipticity_cache_.reset();
  presamples_.clear();
}

void ViscosityTensor::set_time_factor(std::vector<std::pair<double, double>> table) {
  std::sort(table.begin(), table.end());
  time_factor_ = std::move(table);
  ellipticity_cache_.reset();
}

bool ViscosityTensor::has_entry_field(int k, int j, int a, int b) const {
  return entry(k, j, a, b).field.has_value();
}

double ViscosityTensor::constant_entry(int k, int j, int a, int b) const {
  return entry(k, j, a, b).constant;
}

const SpectralScalarField* ViscosityTensor::field_entry(int k, int j, int a, int b) const {
  const auto& e = entry(k, j, a, b);
  return e.field ? &*e.field : nullptr;
}

double ViscosityTensor::theta(double t) const {
  if (time_factor_.empty()) return 1.0;
  if (t <= time_factor_.front().first) return time_factor_.front().second;
  if (t >= time_factor_.back().first) return time_factor_.back().second;
  for (std::size_t i = 1; i < time_factor_.size(); ++i) {
    if (t <= time_factor_[i].first) {
      const auto& [t0, v0] = time_factor_[i - 1];
      const auto& [t1, v1] = time_factor_[i];
      const double w = (t - t0) / (t1 - t0);
      return v0 + w * (v1 - v0);
    }
  }
  return time_factor_.back().second;
}

double ViscosityTensor::theta_abs_max() const {
  if (time_factor_.empty()) return 1.0;
  double mx = 0.0;
  for (const auto& [t, v] : time_factor_) mx = std::max(mx, std::abs(v));
  return mx;
}

std::pair<double, double> ViscosityTensor::time_range() const {
  if (time_factor_.empty()) return {0.0, 0.0};
  return {time_factor_.front().first, time_factor_.back().first};
}

int ViscosityTensor::bandwidth() const {
  int bw = 0;
  for (const auto& e : entries_)
    if (e.field) bw = std::max(bw, e.field->lattice().radius());
  return bw;
}

namespace {
// spectral distance between two entries, used by the symmetry check
double entry_distance(const ViscosityTensor& A, int k1, int j1, int a1, int b1, int k2, int j2,
                      int a2, int b2) {
  const bool f1 = A.has_entry_field(k1, j1, a1, b1);
  const bool f2 = A.has_entry_field(k2, j2, a2, b2);
  if (!f1 && !f2)
    return std::abs(A.constant_entry(k1, j1, a1, b1) - A.constant_entry(k2, j2, a2, b2));
  // compare coefficientwise; constants live in the xi=0 slot
  const SpectralScalarField* p1 = A.field_entry(k1, j1, a1, b1);
  const SpectralScalarField* p2 = A.field_entry(k2, j2, a2, b2);
  const SpectralScalarField& any = f1 ? *p1 : *p2;
  const auto& lat = any.lattice();
  std::vector<int> zero(static_cast<std::size_t>(lat.dim()), 0);
  const std::size_t zslot = lat.encode(zero.data());
  double worst = 0.0;
  for (std::uint32_t flat : lat.ball()) {
    Complex c1 = p1 ? (*p1)[flat] : Complex{0.0, 0.0};
    Complex c2 = p2 ? (*p2)[flat] : Complex{0.0, 0.0};
    if (!p1 && flat == zslot) c1 = Complex{A.constant_entry(k1, j1, a1, b1), 0.0};
    if (!p2 && flat == zslot) c2 = Complex{A.constant_entry(k2, j2, a2, b2), 0.0};
    worst = std::max(worst, std::abs(c1 - c2));
  }
  return worst;
}
}  // namespace

SymmetryReport ViscosityTensor::verify_symmetry(double field_tol) const {
  SymmetryReport rep;
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j)
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          // a_{kj}^{ab} = a_{aj}^{kb}
          double d = entry_distance(*this, k, j, a, b, a, j, k, b);
          const bool any_field = has_entry_field(k, j, a, b) || has_entry_field(a, j, k, b);
          if (d > (any_field ? field_tol : 0.0))
            rep.violations.push_back({k, j, a, b, 'L', d});
          // a_{kj}^{ab} = a_{kb}^{aj}
          d = entry_distance(*this, k, j, a, b, k, b, a, j);
          const bool any_field2 = has_entry_field(k, j, a, b) || has_entry_field(k, b, a, j);
          if (d > (any_field2 ? field_tol : 0.0))
            rep.violations.push_back({k, j, a, b, 'R', d});
        }
  rep.pass = rep.violations.empty();
  return rep;
}

void ViscosityTensor::ensure_symmetric() const {
  if (symmetry_checked_) return;
  auto rep = verify_symmetry();
  if (!rep.pass) {
    const auto& v = rep.violations.front();
    std::ostringstream os;
    os << "viscosity tensor violates the symmetry conditions at (k,j,a,b)=(" << v.k + 1 << ","
       << v.j + 1 << "," << v.a + 1 << "," << v.b + 1 << "), magnitude " << v.magnitude;
    throw ConfigError(os.str());
  }
  symmetry_checked_ = true;
}

void ViscosityTensor::ensure_presampled() const {
  if (!presamples_.empty()) return;
  const int bw = bandwidth();
  presample_N_ = std::max(4 * (2 * bw + 1), 16);
  presamples_.resize(entries_.size());
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    if (entries_[e].field) {
      presamples_[e] = to_physical(*entries_[e].field, presample_N_).samples;
    }
  }
}

double ViscosityTensor::entry_at(std::size_t e, std::size_t grid_index) const {
  if (!presamples_[e].empty()) return presamples_[e][grid_index];
  return entries_[e].constant;
}

EllipticityEstimate ViscosityTensor::estimate_ellipticity(int samples, std::uint64_t seed) const {
  ensure_symmetric();
  ensure_presampled();
  if (samples <= 0) throw std::invalid_argument("ellipticity sampling needs samples > 0");

  std::size_t grid_total = 1;
  for (int k = 0; k < n_; ++k) grid_total *= static_cast<std::size_t>(presample_N_);
  const auto [t_lo, t_hi] = time_range();

  const int nn = n_;
  const std::size_t chunk = 512;
  const std::size_t nchunks = (static_cast<std::size_t>(samples) + chunk - 1) / chunk;
  struct ChunkResult {
    double max_ratio = 0.0, max_nu = 0.0, sum_nu = 0.0;
    bool bad = false;
    std::vector<double> bad_zeta;
    std::size_t bad_grid = 0;
    double bad_t = 0.0, bad_form = 0.0;
  };
  std::vector<ChunkResult> results(nchunks);

  Rng root(seed);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    auto& res = results[static_cast<std::size_t>(c)];
    const std::size_t lo = static_cast<std::size_t>(c) * chunk;
    const std::size_t hi = std::min(lo + chunk, static_cast<std::size_t>(samples));
    std::vector<double> zeta(static_cast<std::size_t>(nn) * nn);
    for (std::size_t s = lo; s < hi && !res.bad; ++s) {
      // random symmetric trace-free zeta, unit Frobenius norm
      for (int i = 0; i < nn; ++i)
        for (int j = i; j < nn; ++j) {
          const double g = rng.normal();
          zeta[static_cast<std::size_t>(i * nn + j)] = g;
          zeta[static_cast<std::size_t>(j * nn + i)] = g;
        }
      double tr = 0.0;
      for (int i = 0; i < nn; ++i) tr += zeta[static_cast<std::size_t>(i * nn + i)];
      for (int i = 0; i < nn; ++i) zeta[static_cast<std::size_t>(i * nn + i)] -= tr / nn;
      double fro = 0.0;
      for (double z : zeta) fro += z * z;
      fro = std::sqrt(fro);
      if (fro == 0.0) continue;
      for (double& z : zeta) z /= fro;

      const std::size_t gi = static_cast<std::size_t>(rng.next_u64() % grid_total);
      const double t = t_lo + (t_hi - t_lo) * rng.uniform();
      const double th = theta(t);

      double form = 0.0;
      for (int k = 0; k < nn; ++k)
        for (int j = 0; j < nn; ++j)
          for (int a = 0; a < nn; ++a)
            for (int b = 0; b < nn; ++b) {
              const double av = entry_at(idx(k, j, a, b), gi);
              if (av != 0.0)
                form += av * zeta[static_cast<std::size_t>(k * nn + a)] *
                        zeta[static_cast<std::size_t>(j * nn + b)];
            }
      form *= th;
      if (form <= 0.0) {
        res.bad = true;
        res.bad_zeta = zeta;
        res.bad_grid = gi;
        res.bad_t = t;
        res.bad_form = form;
        break;
      }
      res.max_ratio = std::max(res.max_ratio, 1.0 / form);
      res.max_nu = std::max(res.max_nu, form / 2.0);
      res.sum_nu += form / 2.0;
    }
  }

  EllipticityEstimate est;
  est.samples = samples;
  est.seed = seed;
  double sum = 0.0;
  for (const auto& r : results) {
    if (r.bad) {
      throw NotRelaxedElliptic(
          "viscosity tensor is not relaxed-elliptic: a(zeta,zeta) = " + std::to_string(r.bad_form) +
              " <= 0 at grid index " + std::to_string(r.bad_grid) + ", t = " +
              std::to_string(r.bad_t),
          r.bad_zeta, r.bad_grid, r.bad_t, r.bad_form);
    }
    est.c_a = std::max(est.c_a, r.max_ratio);
    est.nu_eff_max = std::max(est.nu_eff_max, r.max_nu);
    sum += r.sum_nu;
  }
  est.nu_eff_mean = sum / samples;
  ellipticity_cache_ = est;  // later ellipticity() calls reuse this estimate
  return est;
}

const EllipticityEstimate& ViscosityTensor::ellipticity() const {
  if (!ellipticity_cache_) ellipticity_cache_ = estimate_ellipticity(10000, 0);
  return *ellipticity_cache_;
}

namespace {
int resolve_grid(int m, int mA, Dealias mode, int grid_N) {
  const int min_N = product_grid_size(m, mA, m, Dealias::two_thirds);
  if (grid_N != 0 && grid_N < min_N)
    throw ConfigError("viscosity products: grid override " + std::to_string(grid_N) +
                      " is below the alias-free minimum " + std::to_string(min_N));
  return grid_N != 0 ? grid_N : product_grid_size(m, mA, m, mode);
}
}  // namespace

SpectralVectorField ViscosityTensor::apply_operator(const SpectralVectorField& u, double t,
                                                    Dealias mode, int grid_N) const {
  ensure_symmetric();
  const auto& lat = u.lattice();
  const int n = lat.dim();
  if (n != n_) throw std::invalid_argument("tensor/field dimension mismatch");
  const int m = lat.radius();
  const double th = theta(t);

  SymmetricTensorField E = strain(u);
  // stress sigma_{ka} = a_{kj}^{ab} E_{jb}; symmetric in (k,a) under the
  // verified symmetry conditions
  SymmetricTensorField S(u.lattice_ptr(), n);

  if (constant_in_space()) {
    for (int k = 0; k < n; ++k)
      for (int a = k; a < n; ++a) {
        SpectralScalarField acc(u.lattice_ptr());
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const double c = constant_entry(k, j, a, b) * th;
            if (c == 0.0) continue;
            const auto& e = E.entry(j, b);
            for (std::uint32_t flat : lat.ball()) acc[flat] += c * e[flat];
          }
        S.entry(k, a) = acc;
      }
  } else {
    const int mA = bandwidth();
    const int N = resolve_grid(m, mA, mode, grid_N);
    // sample strain entries once
    std::vector<PhysicalGrid> e_phys(static_cast<std::size_t>(n * (n + 1) / 2));
    {
      int c = 0;
      for (int j = 0; j < n; ++j)
        for (int b = j; b < n; ++b) e_phys[static_cast<std::size_t>(c++)] = to_physical(E.entry(j, b), N);
    }
    auto tri = [n](int j, int b) {
      if (j > b) std::swap(j, b);
      return static_cast<std::size_t>(j * n - j * (j - 1) / 2 + (b - j));
    };
    // sample tensor entries on the same grid
    std::vector<std::vector<double>> a_phys(entries_.size());
    for (std::size_t e = 0; e < entries_.size(); ++e)
      if (entries_[e].field) a_phys[e] = to_physical(*entries_[e].field, N).samples;

    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(N);

    for (int k = 0; k < n; ++k)
      for (int a = k; a < n; ++a) {
        PhysicalGrid prod(n, N);
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const std::size_t e = idx(k, j, a, b);
            const auto& ev = e_phys[tri(j, b)].samples;
            if (!a_phys[e].empty()) {
              const auto& av = a_phys[e];
#pragma omp parallel for schedule(static)
              for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
                prod.samples[static_cast<std::size_t>(i)] +=
                    av[static_cast<std::size_t>(i)] * ev[static_cast<std::size_t>(i)];
            } else if (entries_[e].constant != 0.0) {
              const double c = entries_[e].constant;
#pragma omp parallel for schedule(static)
              for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i)
                prod.samples[static_cast<std::size_t>(i)] += c * ev[static_cast<std::size_t>(i)];
            }
          }
        auto s = to_spectral(prod, m);
        s *= th;
        S.entry(k, a) = s;
      }
  }

  // (L u)_k = d_a sigma_{ka}
  SpectralVectorField out(u.lattice_ptr());
  const auto& ball = lat.ball();
  for (int k = 0; k < n; ++k) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
      const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
      int xi[8];
      lat.decode(flat, xi);
      Complex acc{0.0, 0.0};
      for (int a = 0; a < n; ++a) acc += static_cast<double>(xi[a]) * S.entry(k, a)[flat];
      out.comp(k)[flat] = Complex{0.0, 2.0 * M_PI} * acc;
    }
  }
  out.set_zero_mean_flag(true);
  return out;
}

SpectralVectorField ViscosityTensor::apply_operator_gradient_form(const SpectralVectorField& u,
                                                                  double t, Dealias mode,
                                                                  int grid_N) const {
  ensure_symmetric();
  const auto& lat = u.lattice();
  const int n = lat.dim();
  const int m = lat.radius();
  const double th = theta(t);
  const auto& ball = lat.ball();

  // d_b u_j on the lattice
  auto partial = [&](int b, int j) {
    SpectralScalarField d(u.lattice_ptr());
    for (std::uint32_t flat : ball) {
      int xi[8];
      lat.decode(flat, xi);
      d[flat] = Complex{0.0, 2.0 * M_PI} * static_cast<double>(xi[b]) * u.comp(j)[flat];
    }
    return d;
  };

  std::vector<SpectralScalarField> S(static_cast<std::size_t>(n * n));  // S_{ka}, full table
  if (constant_in_space()) {
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        SpectralScalarField acc(u.lattice_ptr());
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const double c = constant_entry(k, j, a, b) * th;
            if (c == 0.0) continue;
            auto d = partial(b, j);
            for (std::uint32_t flat : ball) acc[flat] += c * d[flat];
          }
        S[static_cast<std::size_t>(k * n + a)] = acc;
      }
  } else {
    const int mA = bandwidth();
    const int N = resolve_grid(m, mA, mode, grid_N);
    std::vector<std::vector<double>> a_phys(entries_.size());
    for (std::size_t e = 0; e < entries_.size(); ++e)
      if (entries_[e].field) a_phys[e] = to_physical(*entries_[e].field, N).samples;
    std::vector<PhysicalGrid> d_phys(static_cast<std::size_t>(n * n));
    for (int b = 0; b < n; ++b)
      for (int j = 0; j < n; ++j)
        d_phys[static_cast<std::size_t>(b * n + j)] = to_physical(partial(b, j), N);
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        PhysicalGrid prod(n, N);
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const std::size_t e = idx(k, j, a, b);
            const auto& dv = d_phys[static_cast<std::size_t>(b * n + j)].samples;
            if (!a_phys[e].empty()) {
              for (std::size_t i = 0; i < prod.samples.size(); ++i)
                prod.samples[i] += a_phys[e][i] * dv[i];
            } else if (entries_[e].constant != 0.0) {
              for (std::size_t i = 0; i < prod.samples.size(); ++i)
                prod.samples[i] += entries_[e].constant * dv[i];
            }
          }
        auto s = to_spectral(prod, m);
        s *= th;
        S[static_cast<std::size_t>(k * n + a)] = s;
      }
  }

  SpectralVectorField out(u.lattice_ptr());
  for (int k = 0; k < n; ++k) {
    for (std::uint32_t flat : ball) {
      int xi[8];
      lat.decode(flat, xi);
      Complex acc{0.0, 0.0};
      for (int a = 0; a < n; ++a)
        acc += static_cast<double>(xi[a]) * S[static_cast<std::size_t>(k * n + a)][flat];
      out.comp(k)[flat] = Complex{0.0, 2.0 * M_PI} * acc;
    }
  }
  out.set_zero_mean_flag(true);
  return out;
}

double ViscosityTensor::bilinear_form(double t, const SpectralVectorField& u,
                                      const SpectralVectorField& v, Dealias mode,
                                      int grid_N) const {
  ensure_symmetric();
  // <a E(u), E(v)> = <sigma(u), E(v)>; sigma truncated to the lattice radius
  // loses nothing against the band-limited E(v)
  SymmetricTensorField Eu = strain(u);
  SymmetricTensorField Ev = strain(v);
  const auto& lat = u.lattice();
  const int n = lat.dim();
  const int m = lat.radius();
  const double th = theta(t);

  double acc = 0.0;
  if (constant_in_space()) {
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        // sigma_{ka}(u) entrywise constant combination
        SpectralScalarField s(u.lattice_ptr());
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const double c = constant_entry(k, j, a, b) * th;
            if (c == 0.0) continue;
            const auto& e = Eu.entry(j, b);
            for (std::uint32_t flat : lat.ball()) s[flat] += c * e[flat];
          }
        acc += dual_pairing(s, Ev.entry(k, a));
      }
  } else {
    const int mA = bandwidth();
    const int N = resolve_grid(m, mA, mode, grid_N);
    std::vector<std::vector<double>> a_phys(entries_.size());
    for (std::size_t e = 0; e < entries_.size(); ++e)
      if (entries_[e].field) a_phys[e] = to_physical(*entries_[e].field, N).samples;
    std::vector<PhysicalGrid> eu_phys(static_cast<std::size_t>(n * (n + 1) / 2));
    {
      int c = 0;
      for (int j = 0; j < n; ++j)
        for (int b = j; b < n; ++b)
          eu_phys[static_cast<std::size_t>(c++)] = to_physical(Eu.entry(j, b), N);
    }
    auto tri = [n](int j, int b) {
      if (j > b) std::swap(j, b);
      return static_cast<std::size_t>(j * n - j * (j - 1) / 2 + (b - j));
    };
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        PhysicalGrid prod(n, N);
        for (int j = 0; j < n; ++j)
          for (int b = 0; b < n; ++b) {
            const std::size_t e = idx(k, j, a, b);
            const auto& ev = eu_phys[tri(j, b)].samples;
            if (!a_phys[e].empty()) {
              for (std::size_t i = 0; i < prod.samples.size(); ++i)
                prod.samples[i] += a_phys[e][i] * ev[i];
            } else if (entries_[e].constant != 0.0) {
              for (std::size_t i = 0; i < prod.samples.size(); ++i)
                prod.samples[i] += entries_[e].constant * ev[i];
            }
          }
        auto s = to_spectral(prod, m);
        s *= th;
        acc += dual_pairing(s, Ev.entry(k, a));
      }
  }
  return acc;
}

ViscosityTensor::Norms ViscosityTensor::tensor_norms(double sigma) const {
  ensure_presampled();
  const double th = theta_abs_max();
  double sup_sq = 0.0, sob_sq = 0.0;
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    if (entries_[e].field) {
      double mx = 0.0;
      for (double v : presamples_[e]) mx = std::max(mx, std::abs(v));
      sup_sq += mx * mx;
      const double hs = sobolev_norm(*entries_[e].field, sigma);
      sob_sq += hs * hs;
    } else if (entries_[e].constant != 0.0) {
      sup_sq += entries_[e].constant * entries_[e].constant;
      const double hs = std::abs(entries_[e].constant) * std::pow(2.0 * M_PI, sigma);
      sob_sq += hs * hs;
    }
  }
  return {th * std::sqrt(sup_sq), th * std::sqrt(sob_sq)};
}

ViscosityTensor parse_tensor_spec(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  ViscosityTensor A(n);
  std::vector<std::pair<double, double>> table;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "isotropic") {
      std::string kv;
      if (!(ls >> kv) || kv.rfind("nu=", 0) != 0)
        throw ConfigError("tensor spec line " + std::to_string(lineno) + ": expected nu=<real>");
      A = ViscosityTensor::isotropic(n, std::stod(kv.substr(3)));
      any = true;
    } else if (head == "entry") {
      int k, j, a, b;
      std::string kind;
      if (!(ls >> k >> j >> a >> b >> kind))
        throw ConfigError("tensor spec line " + std::to_string(lineno) +
                          ": expected entry k j a b <constant|field> ...");
      if (k < 1 || k > n || j < 1 || j > n || a < 1 || a > n || b < 1 || b > n)
        throw ConfigError("tensor spec line " + std::to_string(lineno) + ": index out of range");
      if (kind == "constant") {
        double v;
        if (!(ls >> v))
          throw ConfigError("tensor spec line " + std::to_string(lineno) + ": missing value");
        A.set_constant_entry(k - 1, j - 1, a - 1, b - 1, v);
      } else if (kind == "field") {
        // field base=<c> amp=<a> <cos|sin> xi=<c1,c2,...>  on a small lattice
        double base = 0.0, amp = 0.0;
        std::string phase;
        std::vector<int> xi;
        std::string tok;
        while (ls >> tok) {
          if (tok.rfind("base=", 0) == 0)
            base = std::stod(tok.substr(5));
          else if (tok.rfind("amp=", 0) == 0)
            amp = std::stod(tok.substr(4));
          else if (tok == "cos" || tok == "sin")
            phase = tok;
          else if (tok.rfind("xi=", 0) == 0) {
            std::istringstream xs(tok.substr(3));
            std::string c;
            while (std::getline(xs, c, ',')) xi.push_back(std::stoi(c));
          } else
            throw ConfigError("tensor spec line " + std::to_string(lineno) + ": unknown token '" +
                              tok + "'");
        }
        if (phase.empty() || static_cast<int>(xi.size()) != n)
          throw ConfigError("tensor spec line " + std::to_string(lineno) +
                            ": field needs <cos|sin> and xi with n components");
        int mA = 0;
        for (int c : xi) mA = std::max(mA, std::abs(c));
        mA = std::max(mA, 1);
        auto lat = FrequencyLattice::make(n, mA);
        SpectralScalarField f(lat);
        std::vector<int> zero(static_cast<std::size_t>(n), 0);
        f[lat->encode(zero.data())] = Complex{base, 0.0};
        const std::size_t pos = lat->encode(xi.data());
        const Complex half = phase == "cos" ? Complex{amp / 2.0, 0.0} : Complex{0.0, -amp / 2.0};
        f[pos] += half;
        f[lat->negate(pos)] += std::conj(half);
        A.set_field_entry(k - 1, j - 1, a - 1, b - 1, std::move(f));
      } else {
        throw ConfigError("tensor spec line " + std::to_string(lineno) + ": unknown entry kind '" +
                          kind + "'");
      }
      any = true;
    } else if (head == "time_factor") {
      double t, v;
      if (!(ls >> t >> v))
        throw ConfigError("tensor spec line " + std::to_string(lineno) +
                          ": expected time_factor <t> <value>");
      table.emplace_back(t, v);
    } else {
      throw ConfigError("tensor spec line " + std::to_string(lineno) + ": unknown directive '" +
                        head + "'");
    }
  }
  if (!any) throw ConfigError("tensor spec contains no entries");
  if (!table.empty()) A.set_time_factor(std::move(table));
  return A;
}

}  // namespace tns
