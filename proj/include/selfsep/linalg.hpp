#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace selfsep {

using Vec = std::vector<Field::E>;

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Field::E> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<Vec>& rs, std::size_t cols) {
    Matrix m(rs.size(), cols);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rs[i][j];
    return m;
  }

  Field::E& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Field::E at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Vec row(std::size_t i) const { return Vec(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols)); }
  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rows; ++i) out.push_back(row(i));
    return out;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string key() const { return std::string(a.begin(), a.end()); }
};

inline Matrix mat_mul(const Field& F, const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw PreconditionError("matrix shape mismatch");
  Matrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      auto v = x.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
    }
  return r;
}

inline Vec vec_mul(const Field& F, const Vec& v, const Matrix& m) {
  Vec r(m.cols, 0);
  for (std::size_t k = 0; k < m.rows; ++k) {
    if (!v[k]) continue;
    for (std::size_t j = 0; j < m.cols; ++j) r[j] = F.add(r[j], F.mul(v[k], m.at(k, j)));
  }
  return r;
}

inline Matrix frobenius(const Field& F, Matrix m, unsigned times = 1) {
  for (auto& x : m.a) x = F.frobenius(x, times);
  return m;
}

// Reduced row echelon form in place; zero rows are dropped. Returns the rank.
inline std::size_t rref(const Field& F, Matrix& m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    auto inv = F.inv(m.at(r, c));
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      auto f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    ++r;
  }
  m.rows = r;
  m.a.resize(r * m.cols);
  return r;
}

inline std::size_t rank(const Field& F, Matrix m) { return rref(F, m); }

inline Field::E det(const Field& F, Matrix m) {
  if (m.rows != m.cols) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  Field::E d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.at(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(c, c));
    auto inv = F.inv(m.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      auto f = F.mul(m.at(i, c), inv);
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
    }
  }
  return d;
}

// Canonical form of the row space of m.
inline Matrix row_space(const Field& F, Matrix m) {
  rref(F, m);
  return m;
}

// Vector with base-q digits of idx, coordinate 0 least significant.
inline Vec vector_from_index(std::size_t idx, std::size_t d, unsigned q) {
  Vec v(d);
  for (std::size_t i = 0; i < d; ++i) { v[i] = static_cast<Field::E>(idx % q); idx /= q; }
  return v;
}

inline std::size_t vector_index(const Vec& v, unsigned q) {
  std::size_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
  return idx;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// All k-dimensional subspaces of GF(q)^d as echelon matrices, ordered by pivot
// columns (lexicographically) and then by free entries.
inline std::vector<Matrix> enumerate_subspaces(const Field& F, std::size_t d, std::size_t k, std::size_t limit = 2'000'000) {
  std::vector<Matrix> out;
  if (k > d) return out;
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  const unsigned q = F.q();
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<char> is_piv(d, 0);
    for (auto c : piv) is_piv[c] = 1;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = piv[i] + 1; j < d; ++j)
        if (!is_piv[j]) free.emplace_back(i, j);
    std::vector<unsigned> digits(free.size(), 0);
    for (;;) {
      Matrix m(k, d);
      for (std::size_t i = 0; i < k; ++i) m.at(i, piv[i]) = 1;
      for (std::size_t f = 0; f < free.size(); ++f) m.at(free[f].first, free[f].second) = digits[f];
      out.push_back(std::move(m));
      if (out.size() > limit) throw CapacityError("too many subspaces to enumerate");
      std::size_t f = free.size();
      while (f-- > 0) {
        if (++digits[f] < q) break;
        digits[f] = 0;
      }
      if (f == static_cast<std::size_t>(-1)) break;
    }
    // next pivot combination
    std::size_t i = k;
    while (i-- > 0) {
      if (piv[i] < d - k + i) break;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++piv[i];
    for (std::size_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

class SubspaceIndex {
public:
  explicit SubspaceIndex(const std::vector<Matrix>& spaces) {
    for (std::size_t i = 0; i < spaces.size(); ++i) map_.emplace(spaces[i].key(), static_cast<std::uint32_t>(i));
  }
  std::uint32_t at(const Matrix& echelon) const {
    auto it = map_.find(echelon.key());
    if (it == map_.end()) throw Error("subspace not in domain");
    return it->second;
  }
  bool contains(const Matrix& echelon) const { return map_.count(echelon.key()) > 0; }

private:
  std::unordered_map<std::string, std::uint32_t> map_;
};

} // namespace selfsep
