#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "point_set.hpp"

namespace selfsep {

// Runtime-sized bitset used by the search kernels.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  explicit Bits(const PointSet& s) : n_(s.degree()), w_(s.words()) {}

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }
  std::size_t size() const { return n_; }
  std::size_t words() const { return w_.size(); }
  std::uint64_t word(std::size_t i) const { return w_[i]; }
  std::uint64_t& word(std::size_t i) { return w_[i]; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::size_t and_count(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t x = w_[i]; x; x &= x - 1) f(static_cast<Point>(i * 64 + std::countr_zero(x)));
  }
  friend bool operator==(const Bits&, const Bits&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

} // namespace selfsep
