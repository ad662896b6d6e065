#pragma once

#include "tns/field.hpp"

namespace tns {

// closed-form time integral of the squared H^s norm under the heat flow
struct HeatProfile {
  double s = 0.0;
  double T = 0.0;
  double value = 0.0;       // int_0^T || K u0 ||^2_{H^s} dt, per-mode closed form
  double tail_bound = 0.0;  // || u0 ||^2_{H^{s-1}}, the T -> infinity cap
};

// per-mode decay exp(-(2 pi |xi|)^2 t); preserves zero mean and solenoidality
SpectralVectorField heat_evolve(const SpectralVectorField& u0, double t);

HeatProfile heat_profile(const SpectralVectorField& u0, double T, double s);

// residual of 1/2||v(T)||^2_{H^r} + int_0^T ||grad v||^2_{(H^r)^{n x n}} dt
// - 1/2||u0||^2_{H^r}; the time integral is closed form per mode. Returns the
// worst absolute residual over the step grid t_k = k T / steps.
double verify_heat_energy_identity(const SpectralVectorField& u0, double T, double r, int steps);

}  // namespace tns
