#pragma once

#include <iosfwd>
#include <string>

#include "tns/config.hpp"

namespace tns {

// Exit-status contract: 0 clean, 1 property violation, 2 configuration error,
// 3 numerical blow-up.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

int cmd_run(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, std::ostream& log);
int cmd_threshold(const RunConfig& cfg, std::ostream& log);
int cmd_heat(const RunConfig& cfg, double s, int steps, std::ostream& log);

struct ConstantsRequest {
  double s = 0.0;
  double theta = 1.0;
  double sigma_tilde = 2.0;
  int radius = 64;
  // multiplication-constant estimation
  double s1 = 0.5;
  double s2 = 1.5;
  int m = 3;
  int trials = 0;  // 0 skips the estimation
  std::uint64_t seed = 0;
};
int cmd_constants(const ConstantsRequest& req, int n, std::ostream& log);

// deterministic formatting used for all persisted numbers
std::string format_double(double v);

}  // namespace tns
