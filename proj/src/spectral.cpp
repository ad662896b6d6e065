#include "tns/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "tns/kernels.hpp"

namespace tns {

double rho_of_xi_sq(double xi_sq) { return 2.0 * M_PI * std::sqrt(1.0 + xi_sq); }

double rho(const std::vector<int>& xi) {
  double q = 0.0;
  for (int c : xi) q += static_cast<double>(c) * c;
  return rho_of_xi_sq(q);
}

namespace {

double norm_sq_weighted(const SpectralScalarField& g, double s) {
  const auto& lat = g.lattice();
  const auto& ball = lat.ball();
  return par::sum_chunked(ball.size(), [&](std::size_t i) {
    const std::uint32_t flat = ball[i];
    const double w = std::pow(rho_of_xi_sq(static_cast<double>(lat.xi_sq(flat))), 2.0 * s);
    return w * std::norm(g[flat]);
  });
}

}  // namespace

double sobolev_norm(const SpectralScalarField& g, double s) {
  return std::sqrt(norm_sq_weighted(g, s));
}

double sobolev_norm(const SpectralVectorField& u, double s) {
  double acc = 0.0;
  for (int k = 0; k < u.dim(); ++k) acc += norm_sq_weighted(u.comp(k), s);
  return std::sqrt(acc);
}

double sobolev_norm(const SymmetricTensorField& E, double s) {
  const int n = E.dim();
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    for (int b = j; b < n; ++b) {
      const double contrib = norm_sq_weighted(E.entry(j, b), s);
      acc += (j == b) ? contrib : 2.0 * contrib;
    }
  return std::sqrt(acc);
}

double sobolev_inner(const SpectralVectorField& u, const SpectralVectorField& v, double s) {
  const auto& lat = u.lattice();
  if (!lat.same_shape(v.lattice())) throw std::invalid_argument("lattice mismatch");
  const auto& ball = lat.ball();
  double acc = 0.0;
  for (int k = 0; k < u.dim(); ++k) {
    const auto& a = u.comp(k);
    const auto& b = v.comp(k);
    acc += par::sum_chunked(ball.size(), [&](std::size_t i) {
      const std::uint32_t flat = ball[i];
      const double w = std::pow(rho_of_xi_sq(static_cast<double>(lat.xi_sq(flat))), 2.0 * s);
      return w * (a[flat] * std::conj(b[flat])).real();
    });
  }
  return acc;
}

SpectralScalarField bessel_potential(const SpectralScalarField& g, double r) {
  SpectralScalarField out = g;
  if (r == 0.0) return out;
  const auto& lat = g.lattice();
  const auto& ball = lat.ball();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ball.size()); ++i) {
    const std::uint32_t flat = ball[static_cast<std::size_t>(i)];
    out[flat] *= std::pow(rho_of_xi_sq(static_cast<double>(lat.xi_sq(flat))), r);
  }
  return out;
}

SpectralVectorField bessel_potential(const SpectralVectorField& u, double r) {
  SpectralVectorField out = u;
  for (int k = 0; k < u.dim(); ++k) out.comp(k) = bessel_potential(u.comp(k), r);
  return out;
}

double dual_pairing(const SpectralScalarField& g, const SpectralScalarField& f) {
  const SpectralScalarField* a = &g;
  const SpectralScalarField* b = &f;
  SpectralScalarField embedded;
  if (!g.lattice().same_shape(f.lattice())) {
    if (g.lattice().dim() != f.lattice().dim())
      throw std::invalid_argument("dual pairing: dimension mismatch");
    // embed the smaller lattice into the larger
    if (g.lattice().radius() < f.lattice().radius()) {
      embedded = embed(g, f.lattice().radius());
      a = &embedded;
    } else {
      embedded = embed(f, g.lattice().radius());
      b = &embedded;
    }
  }
  const auto& lat = a->lattice();
  const auto& ball = lat.ball();
  return par::sum_chunked(ball.size(), [&](std::size_t i) {
    const std::uint32_t flat = ball[i];
    return ((*a)[flat] * (*b)[lat.negate(flat)]).real();
  });
}

double dual_pairing(const SpectralVectorField& g, const SpectralVectorField& f) {
  if (g.dim() != f.dim()) throw std::invalid_argument("dual pairing: component mismatch");
  double acc = 0.0;
  for (int k = 0; k < g.dim(); ++k) acc += dual_pairing(g.comp(k), f.comp(k));
  return acc;
}

double dual_pairing(const SymmetricTensorField& a, const SymmetricTensorField& b) {
  const int n = a.dim();
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    for (int c = j; c < n; ++c) {
      const double term = dual_pairing(a.entry(j, c), b.entry(j, c));
      acc += (j == c) ? term : 2.0 * term;
    }
  return acc;
}

SpectralScalarField truncate_modes(const SpectralScalarField& g, int m) {
  if (m < 0) throw std::invalid_argument("truncation radius must be >= 0");
  SpectralScalarField out = g;
  const auto& lat = g.lattice();
  const std::int64_t m_sq = static_cast<std::int64_t>(m) * m;
  for (std::uint32_t flat : lat.ball())
    if (lat.xi_sq(flat) > m_sq) out[flat] = Complex{0.0, 0.0};
  return out;
}

SpectralVectorField truncate_modes(const SpectralVectorField& u, int m) {
  SpectralVectorField out = u;
  for (int k = 0; k < u.dim(); ++k) out.comp(k) = truncate_modes(u.comp(k), m);
  return out;
}

SpectralScalarField project_zero_mean(SpectralScalarField g) {
  std::vector<int> zero(static_cast<std::size_t>(g.lattice().dim()), 0);
  g[g.lattice().encode(zero.data())] = Complex{0.0, 0.0};
  g.set_zero_mean_flag(true);
  return g;
}

SpectralVectorField project_zero_mean(SpectralVectorField u) {
  for (int k = 0; k < u.dim(); ++k) u.comp(k) = project_zero_mean(u.comp(k));
  u.set_zero_mean_flag(true);
  return u;
}

SpectralScalarField embed(const SpectralScalarField& g, int m) {
  const auto& lat = g.lattice();
  if (m < lat.radius()) throw std::invalid_argument("embed target radius too small");
  if (m == lat.radius()) return g;
  auto big = FrequencyLattice::make(lat.dim(), m);
  SpectralScalarField out(big);
  out.set_zero_mean_flag(g.zero_mean_flag());
  std::vector<int> xi(static_cast<std::size_t>(lat.dim()));
  for (std::uint32_t flat : lat.ball()) {
    lat.decode(flat, xi.data());
    out[big->encode(xi.data())] = g[flat];
  }
  return out;
}

SpectralVectorField embed(const SpectralVectorField& u, int m) {
  SpectralVectorField out(FrequencyLattice::make(u.lattice().dim(), m));
  for (int k = 0; k < u.dim(); ++k) out.comp(k) = embed(u.comp(k), m);
  out.set_zero_mean_flag(u.zero_mean_flag());
  out.set_divergence_free_flag(u.divergence_free_flag());
  return out;
}

SpectralScalarField resize_lattice(const SpectralScalarField& g, int m) {
  const auto& lat = g.lattice();
  if (m == lat.radius()) return g;
  if (m > lat.radius()) return embed(g, m);
  auto small = FrequencyLattice::make(lat.dim(), m);
  SpectralScalarField out(small);
  out.set_zero_mean_flag(g.zero_mean_flag());
  std::vector<int> xi(static_cast<std::size_t>(lat.dim()));
  for (std::uint32_t flat : small->ball()) {
    small->decode(flat, xi.data());
    out[flat] = g[lat.encode(xi.data())];
  }
  return out;
}

SpectralVectorField resize_lattice(const SpectralVectorField& u, int m) {
  SpectralVectorField out(FrequencyLattice::make(u.lattice().dim(), m));
  for (int k = 0; k < u.dim(); ++k) out.comp(k) = resize_lattice(u.comp(k), m);
  out.set_zero_mean_flag(u.zero_mean_flag());
  out.set_divergence_free_flag(u.divergence_free_flag());
  return out;
}

}  // namespace tns
