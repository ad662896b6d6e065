#pragma once

#include <string>

#include "tns/field.hpp"

namespace tns {

// Binary field snapshot, little-endian throughout:
//   magic "TNS2" | u32 version | u32 n | u32 m | f64 time
//   then n components x box-lexicographic lattice, each coefficient (re, im)
// Round trips are byte-exact; loading revalidates Hermitian symmetry.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void save_snapshot(const SpectralVectorField& u, double t, const std::string& path);

struct LoadedSnapshot {
  SpectralVectorField u;
  double t = 0.0;
};
// expected_n / expected_m = 0 skips the corresponding header check
LoadedSnapshot load_snapshot(const std::string& path, int expected_n = 0, int expected_m = 0);

}  // namespace tns
