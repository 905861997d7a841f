#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace selfsep {

inline const std::array<std::array<std::uint64_t, 65>, 65>& binom_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (std::size_t n = 0; n <= 64; ++n) {
      t[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        unsigned __int128 v = static_cast<unsigned __int128>(t[n - 1][k - 1]) + t[n - 1][k];
        t[n][k] = v > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(v);
      }
    }
    return t;
  }();
  return table;
}

inline std::uint64_t binom64(std::size_t n, std::size_t k) {
  if (k > n || n > 64) return n > 64 ? UINT64_MAX : 0;
  return binom_table()[n][k];
}

// Next mask with the same popcount in colex order (Gosper).
inline std::uint64_t next_colex(std::uint64_t x) noexcept {
  std::uint64_t c = x & -x;
  std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Index of mask among masks of the same popcount in colex order.
inline std::uint64_t colex_rank(std::uint64_t mask) noexcept {
  std::uint64_t r = 0;
  std::size_t i = 1;
  const auto& t = binom_table();
  while (mask) {
    auto c = static_cast<std::size_t>(std::countr_zero(mask));
    r += t[c][i++];
    mask &= mask - 1;
  }
  return r;
}

inline std::uint64_t colex_unrank(std::uint64_t rank, std::size_t k) {
  std::uint64_t mask = 0;
  for (std::size_t i = k; i > 0; --i) {
    std::size_t c = i - 1;
    while (binom64(c + 1, i) <= rank) ++c;
    rank -= binom64(c, i);
    mask |= std::uint64_t(1) << c;
  }
  return mask;
}

inline std::uint64_t low_mask(std::size_t k) noexcept {
  return k >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << k) - 1;
}

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }
  std::size_t sets() const noexcept { return sets_; }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t sets_;
};

} // namespace selfsep
