#include <doctest.h>

#include <cmath>

#include "tns/calculus.hpp"
#include "tns/heat.hpp"
#include "tns/rng.hpp"
#include "tns/sampling.hpp"
#include "tns/spectral.hpp"
#include "test_support.hpp"

using namespace tns;
using namespace tns::test;

TEST_CASE("heat evolution") {
  Rng rng(1);
  auto u0 = random_solenoidal_field(2, 3, rng, 1.0);

  // t = 0 is the identity
  CHECK(l2_diff(heat_evolve(u0, 0.0), u0) == 0.0);

  // single mode with |xi|^2 = 1 decays by exp(-4 pi^2 t)
  auto single = SpectralVectorField(FrequencyLattice::make(2, 2));
  single.comp(1) = cosine_mode(2, {1, 0}, 1.0);
  const double t = 0.13;
  auto evolved = heat_evolve(single, t);
  auto expect = cosine_mode(2, {1, 0}, std::exp(-4.0 * M_PI * M_PI * t));
  CHECK(l2_diff(evolved.comp(1), expect) < 1e-14);

  // semigroup property
  auto two_step = heat_evolve(heat_evolve(u0, 0.07), 0.05);
  CHECK(l2_diff(two_step, heat_evolve(u0, 0.12)) / sobolev_norm(u0, 0.0) < 1e-12);

  CHECK_THROWS_AS(heat_evolve(u0, -0.1), std::invalid_argument);

  // solenoidality and zero mean are preserved
  CHECK(sobolev_norm(divergence(heat_evolve(u0, 0.2)), 0.0) < 1e-13);

  // monotone decay in every H^r
  for (double r : {-1.0, 0.0, 1.5})
    CHECK(sobolev_norm(heat_evolve(u0, 0.3), r) <= sobolev_norm(u0, r) + 1e-15);

  // commutes with the Leray projector and with Lambda^r
  auto F = random_vector_field(2, 3, rng, 1.0, true);
  CHECK(l2_diff(heat_evolve(leray_project(F), 0.1), leray_project(heat_evolve(F, 0.1))) <
        1e-13 * sobolev_norm(F, 0.0));
  CHECK(l2_diff(heat_evolve(bessel_potential(F, 0.8), 0.1),
                bessel_potential(heat_evolve(F, 0.1), 0.8)) < 1e-12 * sobolev_norm(F, 1.0));
}

TEST_CASE("heat profile") {
  // zero data
  auto zero = SpectralVectorField(FrequencyLattice::make(2, 2));
  CHECK(heat_profile(zero, 1.0, 0.5).value == 0.0);

  Rng rng(2);
  auto u0 = random_solenoidal_field(2, 3, rng, 1.0);

  // value is nondecreasing in T and capped by ||u0||^2_{H^{s-1}}
  const double s = 1.0;
  double prev = 0.0;
  for (double T : {0.01, 0.1, 1.0, 10.0, 1000.0}) {
    auto prof = heat_profile(u0, T, s);
    CHECK(prof.value >= prev - 1e-15);
    CHECK(prof.value <= prof.tail_bound * (1.0 + 1e-12));
    prev = prof.value;
  }
  CHECK(heat_profile(u0, 1000.0, s).tail_bound ==
        doctest::Approx(std::pow(sobolev_norm(u0, s - 1.0), 2.0)).epsilon(1e-12));

  // single mode: closed form matches fine trapezoid quadrature
  auto single = SpectralVectorField(FrequencyLattice::make(2, 2));
  single.comp(1) = cosine_mode(2, {1, 0}, 0.7);
  const double T = 0.25;
  auto prof = heat_profile(single, T, 0.0);
  const int steps = 10000;
  double quad = 0.0, prev_norm = std::pow(sobolev_norm(single, 0.0), 2.0);
  for (int i = 1; i <= steps; ++i) {
    const double cur = std::pow(sobolev_norm(heat_evolve(single, T * i / steps), 0.0), 2.0);
    quad += 0.5 * (T / steps) * (prev_norm + cur);
    prev_norm = cur;
  }
  CHECK(std::abs(prof.value - quad) < 1e-8);

  CHECK_THROWS_AS(heat_profile(u0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("heat energy identity") {
  auto zero = SpectralVectorField(FrequencyLattice::make(2, 2));
  CHECK(verify_heat_energy_identity(zero, 1.0, 0.0, 4) == 0.0);

  auto single = SpectralVectorField(FrequencyLattice::make(2, 2));
  single.comp(1) = cosine_mode(2, {1, 0}, 1.0);
  CHECK(verify_heat_energy_identity(single, 0.5, 1.0, 8) < 1e-12);

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    auto u0 = random_solenoidal_field(2 + (t % 2), 3, rng, 1.0);
    CHECK(verify_heat_energy_identity(u0, 0.4, 0.0, 16) < 1e-10);
  }

  CHECK_THROWS_AS(verify_heat_energy_identity(zero, 1.0, 0.0, 1), std::invalid_argument);
}
