#include <doctest.h>

#include <cmath>

#include "tns/calculus.hpp"
#include "tns/rng.hpp"
#include "tns/sampling.hpp"
#include "tns/scenarios.hpp"
#include "tns/spectral.hpp"
#include "test_support.hpp"

using namespace tns;
using namespace tns::test;

TEST_CASE("divergence") {
  // u = grad q for a single mode pair: div u = Laplace q
  auto q = sine_mode(3, {2, 1});
  auto d = divergence(gradient(q));
  const auto& lat = q.lattice();
  for (std::uint32_t flat : lat.ball()) {
    const Complex expect = -4.0 * M_PI * M_PI * static_cast<double>(lat.xi_sq(flat)) * q[flat];
    CHECK(std::abs(d[flat] - expect) < 1e-12);
  }

  // coefficients perpendicular to xi: divergence vanishes
  Rng rng(1);
  auto w = random_solenoidal_field(2, 3, rng, 1.0);
  CHECK(sobolev_norm(divergence(w), 0.0) < 1e-13);

  auto c = SpectralVectorField(FrequencyLattice::make(2, 2));
  std::vector<int> zero{0, 0};
  c.comp(0)[c.lattice().encode(zero.data())] = Complex{3.0, 0.0};
  CHECK(sobolev_norm(divergence(c), 0.0) == 0.0);
}

TEST_CASE("gradient closed forms") {
  auto c = constant_field(2, 2, 5.0);
  CHECK(sobolev_norm(gradient(c), 0.0) == 0.0);

  // q = sin(2 pi x1): grad q = (2 pi cos(2 pi x1), 0)
  auto q = sine_mode(2, {1, 0});
  auto g = gradient(q);
  auto expect = cosine_mode(2, {1, 0}, 2.0 * M_PI);
  CHECK(l2_diff(g.comp(0), expect) < 1e-13);
  CHECK(sobolev_norm(g.comp(1), 0.0) == 0.0);
}

TEST_CASE("helmholtz decomposition") {
  Rng rng(2);
  // gradient input -> (F, 0)
  auto q = random_scalar_field(2, 3, rng, 1.0, true);
  auto gq = gradient(q);
  auto parts = helmholtz_decompose(gq);
  CHECK(l2_diff(parts.gradient_part, gq) / sobolev_norm(gq, 0.0) < 1e-13);
  CHECK(sobolev_norm(parts.solenoidal_part, 0.0) < 1e-13 * sobolev_norm(gq, 0.0));

  // divergence-free input -> (0, F)
  auto w = random_solenoidal_field(2, 3, rng, 1.0);
  auto parts2 = helmholtz_decompose(w);
  CHECK(sobolev_norm(parts2.gradient_part, 0.0) < 1e-13 * sobolev_norm(w, 0.0));
  CHECK(l2_diff(parts2.solenoidal_part, w) / sobolev_norm(w, 0.0) < 1e-13);

  // random field: recombination and dual orthogonality
  auto F = random_vector_field(3, 3, rng, 1.0, true);
  auto parts3 = helmholtz_decompose(F);
  CHECK(l2_diff(parts3.gradient_part + parts3.solenoidal_part, F) / sobolev_norm(F, 0.0) < 1e-12);
  CHECK(std::abs(dual_pairing(parts3.gradient_part, parts3.solenoidal_part)) <
        1e-12 * std::pow(sobolev_norm(F, 0.0), 2.0));
  CHECK(sobolev_norm(divergence(parts3.solenoidal_part), 0.0) <
        1e-12 * sobolev_norm(F, 1.0));

  // nonzero mean is rejected
  auto bad = random_vector_field(2, 2, rng, 1.0, false);
  std::vector<int> zero{0, 0};
  bad.comp(0)[bad.lattice().encode(zero.data())] = Complex{1.0, 0.0};
  CHECK_THROWS_AS(helmholtz_decompose(bad), std::invalid_argument);
}

TEST_CASE("leray projector") {
  Rng rng(3);
  auto q = random_scalar_field(2, 3, rng, 1.0, true);
  CHECK(sobolev_norm(leray_project(gradient(q)), 0.0) <
        1e-13 * sobolev_norm(gradient(q), 0.0));
  auto w = random_solenoidal_field(2, 3, rng, 1.0);
  CHECK(l2_diff(leray_project(w), w) / sobolev_norm(w, 0.0) < 1e-13);
  auto F = random_vector_field(2, 3, rng, 1.0, true);
  auto p1 = leray_project(F);
  CHECK(l2_diff(leray_project(p1), p1) / sobolev_norm(F, 0.0) < 1e-12);
}

TEST_CASE("invert gradient") {
  auto q = sine_mode(2, {1, 0});
  auto back = invert_gradient(gradient(q));
  CHECK(l2_diff(back, q) < 1e-13);

  Rng rng(4);
  auto q2 = random_scalar_field(3, 3, rng, 1.0, true);
  CHECK(l2_diff(invert_gradient(gradient(q2)), q2) / sobolev_norm(q2, 0.0) < 1e-12);

  // divergence-free nonzero input is not a gradient
  auto w = random_solenoidal_field(2, 3, rng, 1.0);
  CHECK_THROWS_WITH_AS(invert_gradient(w), doctest::Contains("worst mode"),
                       std::invalid_argument);
}

TEST_CASE("invert divergence") {
  // g = sin(2 pi x1) -> w = (-cos(2 pi x1)/(2 pi), 0)
  auto g = sine_mode(2, {1, 0});
  auto w = invert_divergence(g);
  auto expect = cosine_mode(2, {1, 0}, -1.0 / (2.0 * M_PI));
  CHECK(l2_diff(w.comp(0), expect) < 1e-13);
  CHECK(sobolev_norm(w.comp(1), 0.0) < 1e-15);

  Rng rng(5);
  auto g2 = random_scalar_field(2, 4, rng, 1.0, true);
  CHECK(l2_diff(divergence(invert_divergence(g2)), g2) / sobolev_norm(g2, 0.0) < 1e-12);

  auto zero_field = SpectralScalarField(FrequencyLattice::make(2, 2));
  zero_field.set_zero_mean_flag(true);
  CHECK(sobolev_norm(invert_divergence(zero_field), 0.0) == 0.0);
}

TEST_CASE("strain") {
  auto c = SpectralVectorField(FrequencyLattice::make(2, 2));
  std::vector<int> zero{0, 0};
  c.comp(0)[c.lattice().encode(zero.data())] = Complex{2.0, 0.0};
  CHECK(sobolev_norm(strain(c), 0.0) == 0.0);

  // u = (sin(2 pi x2), 0): E12 = pi cos(2 pi x2), diagonal zero
  auto u = SpectralVectorField(FrequencyLattice::make(2, 2));
  u.comp(0) = sine_mode(2, {0, 1});
  auto E = strain(u);
  CHECK(l2_diff(E.entry(0, 1), cosine_mode(2, {0, 1}, M_PI)) < 1e-13);
  CHECK(sobolev_norm(E.entry(0, 0), 0.0) == 0.0);
  CHECK(sobolev_norm(E.entry(1, 1), 0.0) == 0.0);

  // trace E(u) = div u
  Rng rng(6);
  auto v = random_vector_field(3, 3, rng, 1.0);
  auto Ev = strain(v);
  SpectralScalarField tr(v.lattice_ptr());
  for (int k = 0; k < 3; ++k) tr += Ev.entry(k, k);
  CHECK(l2_diff(tr, divergence(v)) < 1e-12 * sobolev_norm(v, 1.0));
}

TEST_CASE("convect and oracle") {
  // constant field: no advection
  auto c = SpectralVectorField(FrequencyLattice::make(2, 2));
  std::vector<int> zero{0, 0};
  c.comp(0)[c.lattice().encode(zero.data())] = Complex{1.5, 0.0};
  CHECK(sobolev_norm(convect(c, Dealias::exact_pad), 0.0) < 1e-15);
  CHECK(sobolev_norm(convect_oracle(c), 0.0) == 0.0);

  // zero field
  auto z = SpectralVectorField(FrequencyLattice::make(2, 2));
  CHECK(sobolev_norm(convect_oracle(z), 0.0) == 0.0);

  // single conjugate pair with polarization perpendicular to xi: the
  // hand-expanded convolution cancels identically
  auto single = SpectralVectorField(FrequencyLattice::make(2, 3));
  single.comp(1) = cosine_mode(3, {1, 0}, 0.8);  // u = 0.8 cos(2 pi x1) e_2
  CHECK(sobolev_norm(convect_oracle(single), 0.0) < 1e-15);

  // Taylor-Green: (u.grad)u = pi (sin 4 pi x1, sin 4 pi x2); frozen from the
  // hand-expanded convolution
  auto tg = taylor_green_field(4);
  auto conv = convect_oracle(tg);
  auto expect = SpectralVectorField(FrequencyLattice::make(2, 4));
  expect.comp(0) = sine_mode(4, {2, 0}, M_PI);
  expect.comp(1) = sine_mode(4, {0, 2}, M_PI);
  CHECK(l2_diff(conv, expect) < 1e-13);

  // pseudo-spectral route agrees with the oracle
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + (t % 2);
    const int m = 1 + (t % 3);
    auto u = random_vector_field(n, m, rng, 1.0);
    auto fast = convect(u, Dealias::exact_pad);
    auto slow = convect_oracle(u);
    CHECK(l2_diff(fast, slow) / sobolev_norm(slow, 0.0) < 1e-12);
  }

  // two_thirds agrees on the retained band as well (both alias-free there)
  auto u = random_vector_field(2, 3, rng, 1.0);
  CHECK(l2_diff(convect(u, Dealias::two_thirds), convect_oracle(u)) /
            sobolev_norm(convect_oracle(u), 0.0) <
        1e-12);

  // TG nonlinearity is a pure gradient: Leray projection annihilates it
  CHECK(sobolev_norm(leray_project(conv), 0.0) < 1e-10 * sobolev_norm(conv, 0.0));
}

TEST_CASE("advection identities") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + (t % 2);
    auto v1 = random_solenoidal_field(n, 3, rng, 1.5);
    auto v2 = random_vector_field(n, 3, rng, 1.5);
    auto v3 = random_vector_field(n, 3, rng, 1.5);
    const double scale =
        sobolev_norm(v1, 1.0) * sobolev_norm(v2, 1.0) * (sobolev_norm(v3, 1.0) + 1.0);
    CHECK(std::abs(dual_pairing(advect(v1, v2, Dealias::exact_pad), v2)) < 1e-11 * scale);
    CHECK(std::abs(dual_pairing(advect(v1, v2, Dealias::exact_pad), v3) +
                   dual_pairing(advect(v1, v3, Dealias::exact_pad), v2)) < 1e-10 * scale);
  }
}

TEST_CASE("korn inequality") {
  Rng rng(9);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + (t % 2);
    auto u = random_vector_field(n, 4, rng, 1.0);
    double grad_sq = 0.0;
    for (int k = 0; k < n; ++k) grad_sq += std::pow(sobolev_norm(gradient(u.comp(k)), 0.0), 2.0);
    const double e_sq = std::pow(sobolev_norm(strain(u), 0.0), 2.0);
    if (grad_sq > 2.0 * e_sq * (1.0 + 1e-12)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("grid override validation") {
  Rng rng(10);
  auto u = random_vector_field(2, 3, rng, 1.0);
  CHECK_THROWS_AS(convect(u, Dealias::exact_pad, 8), ConfigError);  // below 3m+1 = 10
  CHECK_NOTHROW(convect(u, Dealias::exact_pad, 15));
  auto a = convect(u, Dealias::exact_pad, 15);
  auto b = convect(u, Dealias::exact_pad);
  CHECK(l2_diff(a, b) / sobolev_norm(b, 0.0) < 1e-12);
}
