#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace selfsep {

// Subset of {0..degree-1} stored as a bitset.
class PointSet {
public:
  PointSet() = default;
  explicit PointSet(std::size_t degree) : degree_(degree), words_((degree + 63) / 64, 0) {}

  PointSet(std::size_t degree, std::initializer_list<Point> pts) : PointSet(degree) {
    for (Point p : pts) insert(p);
  }

  template <class Range>
  static PointSet of(std::size_t degree, const Range& pts) {
    PointSet s(degree);
    for (auto p : pts) s.insert(static_cast<Point>(p));
    return s;
  }

  static PointSet from_mask(std::size_t degree, std::uint64_t mask) {
    if (degree > 64) throw PreconditionError("mask form needs degree <= 64");
    PointSet s(degree);
    if (degree < 64) mask &= (std::uint64_t(1) << degree) - 1;
    if (!s.words_.empty()) s.words_[0] = mask;
    s.count_ = static_cast<std::size_t>(std::popcount(mask));
    return s;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Point p) const noexcept {
    return p < degree_ && ((words_[p >> 6] >> (p & 63)) & 1u);
  }

  void insert(Point p) {
    if (p >= degree_) throw StructuralError("point " + std::to_string(p) + " outside degree " + std::to_string(degree_));
    std::uint64_t bit = std::uint64_t(1) << (p & 63);
    if (!(words_[p >> 6] & bit)) { words_[p >> 6] |= bit; ++count_; }
  }

  void erase(Point p) {
    if (p >= degree_) return;
    std::uint64_t bit = std::uint64_t(1) << (p & 63);
    if (words_[p >> 6] & bit) { words_[p >> 6] &= ~bit; --count_; }
  }

  std::uint64_t mask() const {
    if (degree_ > 64) throw PreconditionError("mask form needs degree <= 64");
    return words_.empty() ? 0 : words_[0];
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      while (x) {
        out.push_back(static_cast<Point>(w * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  PointSet image(const Permutation& g) const {
    if (g.degree() != degree_) throw PreconditionError("permutation degree differs from set degree");
    PointSet r(degree_);
    for (Point p : points()) r.insert(g[p]);
    return r;
  }

  bool intersects(const PointSet& o) const {
    for (std::size_t w = 0; w < words_.size() && w < o.words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  PointSet complement() const {
    PointSet r(degree_);
    for (std::size_t p = 0; p < degree_; ++p)
      if (!contains(static_cast<Point>(p))) r.insert(static_cast<Point>(p));
    return r;
  }

  std::string to_string(Point offset = 0) const {
    std::string s = "{";
    bool first = true;
    for (Point p : points()) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(p + offset);
    }
    return s + "}";
  }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.degree_ == b.degree_ && a.words_ == b.words_;
  }

private:
  std::size_t degree_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

} // namespace selfsep
