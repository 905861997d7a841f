#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace selfsep {

using Point = std::uint32_t;

// Permutation of {0..n-1} acting on the right: x^(pq) = (x^p)^q.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<Point>(i);
  }

  explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (Point p : img_) {
      if (p >= img_.size() || seen[p]) throw StructuralError("image list is not a bijection");
      seen[p] = 1;
    }
  }

  static Permutation identity(std::size_t n) { return Permutation(n); }

  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
    std::vector<char> used(n, 0);
    for (const auto& c : cycles) {
      for (Point p : c) {
        if (p >= n) throw StructuralError("cycle point " + std::to_string(p) + " out of range for degree " + std::to_string(n));
        if (used[p]) throw StructuralError("point " + std::to_string(p) + " repeated in cycles");
        used[p] = 1;
      }
      for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
    }
    Permutation r;
    r.img_ = std::move(img);
    return r;
  }

  // Disjoint cycle notation, e.g. "(0,1,2)(3,4)" or "()". A degree of 0 means
  // the smallest degree containing every listed point.
  static Permutation parse(std::string_view text, std::size_t degree = 0) {
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    Point maxp = 0;
    bool any = false;
    skip();
    if (i == text.size()) throw ParseError("empty permutation", i);
    while (i < text.size()) {
      skip();
      if (i == text.size()) break;
      if (text[i] != '(') throw ParseError("expected '('", i);
      ++i;
      std::vector<Point> cyc;
      for (;;) {
        skip();
        if (i < text.size() && text[i] == ')') { ++i; break; }
        if (i >= text.size()) throw ParseError("unterminated cycle", i);
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected point number", i);
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (v > 100000000) throw ParseError("point number too large", i);
          ++i;
        }
        cyc.push_back(static_cast<Point>(v));
        maxp = std::max(maxp, static_cast<Point>(v));
        any = true;
        skip();
        if (i < text.size() && text[i] == ',') ++i;
      }
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    std::size_t n = degree;
    if (n == 0) n = any ? maxp + 1 : 0;
    if (any && maxp >= n) throw StructuralError("point " + std::to_string(maxp) + " exceeds degree " + std::to_string(n));
    return from_cycles(n, cycles);
  }

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator[](Point x) const noexcept { return img_[x]; }
  Point image(Point x) const noexcept { return img_[x]; }
  std::span<const Point> images() const noexcept { return img_; }
  const Point* data() const noexcept { return img_.data(); }

  // Apply this, then q.
  Permutation operator*(const Permutation& q) const {
    if (q.degree() != degree()) throw PreconditionError("composing permutations of different degree");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = q.img_[img_[i]];
    return r;
  }

  Permutation& operator*=(const Permutation& q) { return *this = *this * q; }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation r(degree());
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  std::size_t support_size() const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] != i;
    return c;
  }

  // Lengths of all cycles including fixed points.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) { seen[j] = 1; ++len; }
      out.push_back(len);
    }
    return out;
  }

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<Point> c;
      for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) { seen[j] = 1; c.push_back(j); }
      out.push_back(std::move(c));
    }
    return out;
  }

  unsigned long long order() const {
    unsigned long long l = 1;
    for (auto len : cycle_type()) l = std::lcm(l, static_cast<unsigned long long>(len));
    return l;
  }

  std::string to_string(Point offset = 0) const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i] + offset);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.img_ <=> b.img_; }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point p : img_) h = (h ^ p) * 1099511628211ull;
    return h;
  }

private:
  std::vector<Point> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

} // namespace selfsep
