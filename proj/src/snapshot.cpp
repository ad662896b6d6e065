#include "tns/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "tns/errors.hpp"

namespace tns {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError("snapshot: truncated file");
  return v;
}

}  // namespace

void save_snapshot(const SpectralVectorField& u, double t, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("snapshot: cannot open '" + path + "' for writing");
  out.write("TNS2", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(u.lattice().dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(u.lattice().radius()));
  put<double>(out, t);
  for (int k = 0; k < u.dim(); ++k) {
    const auto& c = u.comp(k);
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
      put<double>(out, c[flat].real());
      put<double>(out, c[flat].imag());
    }
  }
  if (!out) throw ConfigError("snapshot: write failed for '" + path + "'");
}

LoadedSnapshot load_snapshot(const std::string& path, int expected_n, int expected_m) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("snapshot: cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "TNS2", 4) != 0)
    throw ConfigError("snapshot: bad magic in '" + path + "'");
  const auto version = get<std::uint32_t>(in);
  if (version != kSnapshotVersion)
    throw ConfigError("snapshot: unsupported version " + std::to_string(version));
  const auto n = get<std::uint32_t>(in);
  const auto m = get<std::uint32_t>(in);
  if (n < 1 || n > 6 || m > 4096) throw ConfigError("snapshot: implausible header");
  if (expected_n > 0 && static_cast<int>(n) != expected_n)
    throw ConfigError("snapshot: dimension " + std::to_string(n) + " does not match configured " +
                      std::to_string(expected_n));
  if (expected_m > 0 && static_cast<int>(m) != expected_m)
    throw ConfigError("snapshot: lattice radius " + std::to_string(m) +
                      " does not match configured " + std::to_string(expected_m));
  LoadedSnapshot out;
  out.t = get<double>(in);
  out.u = SpectralVectorField(FrequencyLattice::make(static_cast<int>(n), static_cast<int>(m)));
  for (std::uint32_t k = 0; k < n; ++k) {
    auto& c = out.u.comp(static_cast<int>(k));
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      c[flat] = Complex{re, im};
    }
  }
  in.peek();
  if (!in.eof()) throw ConfigError("snapshot: trailing bytes in '" + path + "'");
  const double herm = out.u.hermitian_residual();
  if (herm > 1e-9)
    throw ConfigError("snapshot: Hermitian symmetry violated on load (residual " +
                      std::to_string(herm) + ")");
  std::vector<int> zero(static_cast<std::size_t>(n), 0);
  const std::size_t zslot = out.u.lattice().encode(zero.data());
  bool zero_mean = true;
  for (std::uint32_t k = 0; k < n; ++k)
    if (std::abs(out.u.comp(static_cast<int>(k))[zslot]) != 0.0) zero_mean = false;
  out.u.set_zero_mean_flag(zero_mean);
  return out;
}

}  // namespace tns
