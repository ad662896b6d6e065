#include "tns/lattice.hpp"

#include <stdexcept>

namespace tns {

FrequencyLattice::FrequencyLattice(int n, int m) : n_(n), m_(m) {
  if (n < 1 || n > 6) throw std::invalid_argument("lattice dimension must be in [1, 6]");
  if (m < 0) throw std::invalid_argument("lattice radius must be >= 0");
  const std::size_t side = static_cast<std::size_t>(2 * m + 1);
  box_size_ = 1;
  strides_.assign(n, 1);
  for (int k = n - 1; k >= 0; --k) {
    strides_[k] = static_cast<std::int64_t>(box_size_);
    box_size_ *= side;
  }
  xi_sq_.resize(box_size_);
  std::vector<int> xi(n, -m);
  for (std::size_t flat = 0; flat < box_size_; ++flat) {
    std::int64_t q = 0;
    for (int k = 0; k < n; ++k) q += static_cast<std::int64_t>(xi[k]) * xi[k];
    xi_sq_[flat] = q;
    if (q <= static_cast<std::int64_t>(m) * m) ball_.push_back(static_cast<std::uint32_t>(flat));
    for (int k = n - 1; k >= 0; --k) {
      if (++xi[k] <= m) break;
      xi[k] = -m;
    }
  }
}

void FrequencyLattice::decode(std::size_t flat, int* xi) const {
  for (int k = 0; k < n_; ++k) {
    xi[k] = static_cast<int>(flat / static_cast<std::size_t>(strides_[k])) % side() - m_;
  }
}

std::vector<int> FrequencyLattice::decode(std::size_t flat) const {
  std::vector<int> xi(n_);
  decode(flat, xi.data());
  return xi;
}

std::size_t FrequencyLattice::encode(const int* xi) const {
  std::size_t flat = 0;
  for (int k = 0; k < n_; ++k) {
    if (xi[k] < -m_ || xi[k] > m_) throw std::out_of_range("mode outside lattice box");
    flat += static_cast<std::size_t>(xi[k] + m_) * static_cast<std::size_t>(strides_[k]);
  }
  return flat;
}

std::shared_ptr<const FrequencyLattice> FrequencyLattice::make(int n, int m) {
  return std::make_shared<const FrequencyLattice>(n, m);
}

}  // namespace tns
