#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tns/viscosity.hpp"

namespace tns {

struct PropertyResult {
  std::string name;
  double worst = 0.0;  // worst residual / violation observed
  double tol = 0.0;
  int trials = 0;
  bool pass = true;
};

struct VerifyReport {
  std::string suite;
  std::vector<PropertyResult> results;
  bool vacuous = false;  // trials == 0
  bool pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// suites: spectral | calculus | inequalities | solver
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed, int trials);

// the inequality battery against an explicit tensor (lets tests aim a broken
// fixture at the coercivity checks)
VerifyReport run_tensor_inequalities(const ViscosityTensor& A, std::uint64_t seed, int trials);

}  // namespace tns
