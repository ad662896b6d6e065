#include "tns/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "tns/errors.hpp"
#include "tns/kernels.hpp"
#include "tns/spectral.hpp"
#include "tns/transform.hpp"

namespace tns {

namespace {
constexpr Complex kTwoPiI{0.0, 2.0 * M_PI};

// mean must vanish up to roundoff relative to the field size (computed inputs
// arrive from grid products with ~1e-16 residues in the zero slot)
void require_zero_mean(const SpectralScalarField& g, const char* who) {
  std::vector<int> zero(static_cast<std::size_t>(g.lattice().dim()), 0);
  const double mean = std::abs(g[g.lattice().encode(zero.data())]);
  if (mean == 0.0) return;
  if (mean > 1e-10 * std::max(1.0, sobolev_norm(g, 0.0)))
    throw std::invalid_argument(std::string(who) + ": field must have zero mean (mean magnitude " +
                                std::to_string(mean) + ")");
}

void require_zero_mean(const SpectralVectorField& u, const char* who) {
  for (int k = 0; k < u.dim(); ++k) require_zero_mean(u.comp(k), who);
}
}  // namespace

SpectralScalarField divergence(const SpectralVectorField& u) {
  const auto& lat = u.lattice();
  const int n = lat.dim();
  SpectralScalarField out(u.lattice_ptr());
  const auto& ball = lat.ball();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
    const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
    int xi[8];
    lat.decode(flat, xi);
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) acc += static_cast<double>(xi[k]) * u.comp(k)[flat];
    out[flat] = kTwoPiI * acc;
  }
  out.set_zero_mean_flag(true);
  return out;
}

SpectralVectorField gradient(const SpectralScalarField& q) {
  const auto& lat = q.lattice();
  const int n = lat.dim();
  SpectralVectorField out(q.lattice_ptr());
  const auto& ball = lat.ball();
  for (int k = 0; k < n; ++k) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
      const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
      int xi[8];
      lat.decode(flat, xi);
      out.comp(k)[flat] = kTwoPiI * static_cast<double>(xi[k]) * q[flat];
    }
  }
  out.set_zero_mean_flag(true);
  return out;
}

SymmetricTensorField strain(const SpectralVectorField& u) {
  const auto& lat = u.lattice();
  const int n = lat.dim();
  SymmetricTensorField E(u.lattice_ptr(), n);
  const auto& ball = lat.ball();
  for (int j = 0; j < n; ++j)
    for (int b = j; b < n; ++b) {
      auto& e = E.entry(j, b);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
        const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
        int xi[8];
        lat.decode(flat, xi);
        e[flat] = kTwoPiI * 0.5 *
                  (static_cast<double>(xi[j]) * u.comp(b)[flat] +
                   static_cast<double>(xi[b]) * u.comp(j)[flat]);
      }
    }
  return E;
}

HelmholtzParts helmholtz_decompose(const SpectralVectorField& F) {
  require_zero_mean(F, "helmholtz_decompose");
  const auto& lat = F.lattice();
  const int n = lat.dim();
  HelmholtzParts parts{SpectralVectorField(F.lattice_ptr()), SpectralVectorField(F.lattice_ptr())};
  const auto& ball = lat.ball();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
    const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
    const auto xi_sq = lat.xi_sq(flat);
    if (xi_sq == 0) continue;
    int xi[8];
    lat.decode(flat, xi);
    Complex dot{0.0, 0.0};
    for (int k = 0; k < n; ++k) dot += static_cast<double>(xi[k]) * F.comp(k)[flat];
    dot /= static_cast<double>(xi_sq);
    for (int k = 0; k < n; ++k) {
      const Complex grad_part = static_cast<double>(xi[k]) * dot;
      parts.gradient_part.comp(k)[flat] = grad_part;
      parts.solenoidal_part.comp(k)[flat] = F.comp(k)[flat] - grad_part;
    }
  }
  parts.gradient_part.set_zero_mean_flag(true);
  parts.solenoidal_part.set_zero_mean_flag(true);
  parts.solenoidal_part.set_divergence_free_flag(true);
  return parts;
}

SpectralVectorField leray_project(const SpectralVectorField& F) {
  return helmholtz_decompose(F).solenoidal_part;
}

SpectralScalarField invert_gradient(const SpectralVectorField& w, double rel_tol) {
  require_zero_mean(w, "invert_gradient");
  const auto& lat = w.lattice();
  const int n = lat.dim();
  SpectralScalarField q(w.lattice_ptr());

  double norm_sq = 0.0, worst_off = 0.0;
  std::size_t worst_flat = 0;
  std::vector<int> xi(static_cast<std::size_t>(n));
  for (std::uint32_t flat : lat.ball()) {
    const auto xi_sq = lat.xi_sq(flat);
    if (xi_sq == 0) continue;
    lat.decode(flat, xi.data());
    Complex dot{0.0, 0.0};
    double comp_sq = 0.0;
    for (int k = 0; k < n; ++k) {
      dot += static_cast<double>(xi[static_cast<std::size_t>(k)]) * w.comp(k)[flat];
      comp_sq += std::norm(w.comp(k)[flat]);
    }
    // off-parallel remainder |w - xi (xi.w)/|xi|^2|
    double off_sq = comp_sq - std::norm(dot) / static_cast<double>(xi_sq);
    if (off_sq < 0.0) off_sq = 0.0;
    if (off_sq > worst_off) {
      worst_off = off_sq;
      worst_flat = flat;
    }
    norm_sq += comp_sq;
    q[flat] = dot / (kTwoPiI * static_cast<double>(xi_sq));
  }
  if (norm_sq > 0.0 && std::sqrt(worst_off / norm_sq) > rel_tol) {
    auto bad = lat.decode(worst_flat);
    std::string mode = "(";
    for (int k = 0; k < n; ++k) mode += std::to_string(bad[static_cast<std::size_t>(k)]) +
                                        (k + 1 < n ? "," : ")");
    throw std::invalid_argument("invert_gradient: input is not a gradient field; worst mode " +
                                mode + " off-parallel residual " +
                                std::to_string(std::sqrt(worst_off / norm_sq)));
  }
  q.set_zero_mean_flag(true);
  return q;
}

SpectralVectorField invert_divergence(const SpectralScalarField& g) {
  require_zero_mean(g, "invert_divergence");
  const auto& lat = g.lattice();
  // w = grad q with q^ = -g^ / (4 pi^2 |xi|^2)
  SpectralScalarField q(g.lattice_ptr());
  for (std::uint32_t flat : lat.ball()) {
    const auto xi_sq = lat.xi_sq(flat);
    if (xi_sq == 0) continue;
    q[flat] = -g[flat] / (4.0 * M_PI * M_PI * static_cast<double>(xi_sq));
  }
  q.set_zero_mean_flag(true);
  return gradient(q);
}

int product_grid_size(int m1, int m2, int m_keep, Dealias mode) {
  if (mode == Dealias::exact_pad) return 2 * (m1 + m2) + 1;
  return m1 + m2 + m_keep + 1;
}

namespace {

// pointwise products of v1 components against all partial derivatives of v2
SpectralVectorField advect_grid(const SpectralVectorField& v1, const SpectralVectorField& v2,
                                Dealias mode, int grid_N) {
  const auto& lat = v1.lattice();
  const int n = lat.dim();
  const int m = lat.radius();
  const int min_N = product_grid_size(m, m, m, Dealias::two_thirds);
  if (grid_N != 0 && grid_N < min_N)
    throw ConfigError("advect: grid override " + std::to_string(grid_N) +
                      " is below the alias-free minimum " + std::to_string(min_N));
  const int N = grid_N != 0 ? grid_N : product_grid_size(m, m, m, mode);

  // physical samples of v1 and of all d_j v2_k
  std::vector<PhysicalGrid> v1_phys(static_cast<std::size_t>(n));
  std::vector<PhysicalGrid> dv2_phys(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n + n * n); ++idx) {
    if (idx < n) {
      v1_phys[static_cast<std::size_t>(idx)] = to_physical(v1.comp(static_cast<int>(idx)), N);
    } else {
      const int j = static_cast<int>((idx - n) / n);  // derivative direction
      const int k = static_cast<int>((idx - n) % n);  // component
      SpectralScalarField d(v2.lattice_ptr());
      const auto& ball = lat.ball();
      for (std::size_t i = 0; i < ball.size(); ++i) {
        const std::uint32_t flat = ball[i];
        int xi[8];
        lat.decode(flat, xi);
        d[flat] = kTwoPiI * static_cast<double>(xi[j]) * v2.comp(k)[flat];
      }
      dv2_phys[static_cast<std::size_t>(idx - n)] = to_physical(d, N);
    }
  }

  SpectralVectorField out(v1.lattice_ptr());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    PhysicalGrid prod(n, N);
    for (int j = 0; j < n; ++j) {
      const auto& a = v1_phys[static_cast<std::size_t>(j)].samples;
      const auto& b = dv2_phys[static_cast<std::size_t>(j * n + k)].samples;
      for (std::size_t i = 0; i < prod.samples.size(); ++i) prod.samples[i] += a[i] * b[i];
    }
    // two_thirds keeps the retained band alias-free; exact_pad resolves the
    // whole product; both are truncated back to radius m (P_m of the product)
    out.comp(static_cast<int>(k)) = to_spectral(prod, m);
  }
  return out;
}

}  // namespace

SpectralVectorField advect(const SpectralVectorField& v1, const SpectralVectorField& v2,
                           Dealias mode, int grid_N) {
  if (!v1.lattice().same_shape(v2.lattice()))
    throw std::invalid_argument("advect: fields on different lattices");
  return advect_grid(v1, v2, mode, grid_N);
}

SpectralVectorField convect(const SpectralVectorField& u, Dealias mode, int grid_N) {
  return advect(u, u, mode, grid_N);
}

SpectralVectorField advect_oracle(const SpectralVectorField& v1, const SpectralVectorField& v2) {
  if (!v1.lattice().same_shape(v2.lattice()))
    throw std::invalid_argument("advect_oracle: fields on different lattices");
  const auto& lat = v1.lattice();
  const int n = lat.dim();
  SpectralVectorField out(v1.lattice_ptr());
  const auto& ball = lat.ball();
  // direct double sum over lattice pairs: out_k(xi) = sum_eta v1_j(eta) *
  // (2 pi i (xi-eta)_j) v2_k(xi-eta), truncated to |xi| <= m
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t oi = 0; oi < static_cast<std::ptrdiff_t>(ball.size()); ++oi) {
    const std::uint32_t target = ball[static_cast<std::size_t>(oi)];
    int xi[8], eta[8], diff[8];
    lat.decode(target, xi);
    std::vector<Complex> acc(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    for (std::uint32_t src : ball) {
      lat.decode(src, eta);
      bool inside = true;
      std::int64_t diff_sq = 0;
      for (int k = 0; k < n; ++k) {
        diff[k] = xi[k] - eta[k];
        if (diff[k] < -lat.radius() || diff[k] > lat.radius()) {
          inside = false;
          break;
        }
        diff_sq += static_cast<std::int64_t>(diff[k]) * diff[k];
      }
      if (!inside || diff_sq > static_cast<std::int64_t>(lat.radius()) * lat.radius()) continue;
      const std::size_t other = lat.encode(diff);
      Complex dot{0.0, 0.0};
      for (int j = 0; j < n; ++j)
        dot += v1.comp(j)[src] * static_cast<double>(diff[j]);
      dot *= kTwoPiI;
      for (int k = 0; k < n; ++k) acc[static_cast<std::size_t>(k)] += dot * v2.comp(k)[other];
    }
    for (int k = 0; k < n; ++k) out.comp(k)[target] = acc[static_cast<std::size_t>(k)];
  }
  return out;
}

SpectralVectorField convect_oracle(const SpectralVectorField& u) { return advect_oracle(u, u); }

}  // namespace tns
