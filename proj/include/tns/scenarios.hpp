#pragma once

#include <optional>
#include <string>

#include "tns/field.hpp"
#include "tns/viscosity.hpp"

namespace tns {

// Named initial data (and, for anisotropic_demo, a default tensor):
//   zero, taylor_green, single_stokes_mode, random_smooth, anisotropic_demo
struct Scenario {
  SpectralVectorField u0;
  std::optional<ViscosityTensor> default_tensor;
};

Scenario make_scenario(const std::string& name, int n, int m, std::uint64_t seed,
                       double decay_exponent, double u0_scale);

// u = (sin 2pi x1 cos 2pi x2, -cos 2pi x1 sin 2pi x2); exact coefficients
SpectralVectorField taylor_green_field(int m, double amplitude = 1.0);

// analytic TG decay factor exp(-8 pi^2 nu t)
double taylor_green_decay(double nu, double t);

// the fixed non-isotropic symmetric elliptic tensor used by anisotropic_demo
ViscosityTensor anisotropic_demo_tensor(int n);

}  // namespace tns
