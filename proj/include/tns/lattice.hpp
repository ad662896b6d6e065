#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace tns {

// Truncated frequency lattice: all xi in Z^n with |xi| <= m, stored in
// lexicographic box order over {-m..m}^n with the out-of-ball slots masked.
// The full-box storage keeps negation and Hermitian bookkeeping trivial.
class FrequencyLattice {
public:
  FrequencyLattice(int n, int m);

  int dim() const { return n_; }
  int radius() const { return m_; }
  int side() const { return 2 * m_ + 1; }
  std::size_t box_size() const { return box_size_; }
  std::size_t ball_size() const { return ball_.size(); }

  bool in_ball(std::size_t flat) const { return xi_sq_[flat] <= static_cast<std::int64_t>(m_) * m_; }
  std::int64_t xi_sq(std::size_t flat) const { return xi_sq_[flat]; }

  // flat indices of in-ball slots, lexicographic order
  const std::vector<std::uint32_t>& ball() const { return ball_; }

  // multi-index of a flat slot, components in [-m, m]
  void decode(std::size_t flat, int* xi) const;
  std::vector<int> decode(std::size_t flat) const;

  // flat slot of a multi-index; must be inside the box
  std::size_t encode(const int* xi) const;

  // slot of -xi
  std::size_t negate(std::size_t flat) const { return box_size_ - 1 - flat; }

  bool same_shape(const FrequencyLattice& other) const {
    return n_ == other.n_ && m_ == other.m_;
  }

  static std::shared_ptr<const FrequencyLattice> make(int n, int m);

private:
  int n_, m_;
  std::size_t box_size_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int64_t> xi_sq_;
  std::vector<std::uint32_t> ball_;
};

}  // namespace tns
