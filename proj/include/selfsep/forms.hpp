#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "qint.hpp"

namespace selfsep {

enum class FormType { symplectic, unitary, orthogonal_plus, orthogonal_minus, orthogonal_parabolic };

enum class SubspaceKind { degenerate, nondegenerate, plus, minus, parabolic };

inline std::string to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::degenerate: return "degenerate";
    case SubspaceKind::nondegenerate: return "nondegenerate";
    case SubspaceKind::plus: return "plus";
    case SubspaceKind::minus: return "minus";
    case SubspaceKind::parabolic: return "parabolic";
  }
  return "?";
}

// Vector space with a nondegenerate alternating, hermitian or quadratic form.
// Hyperbolic coordinates: e_i at i, f_i at h+i for h hyperbolic pairs, then the
// anisotropic part (two coordinates for minus type, one for parabolic).
class FormedSpace {
public:
  static FormedSpace symplectic(unsigned q, std::size_t dim) {
    if (dim == 0 || dim % 2) throw StructuralError("symplectic space needs even positive dimension");
    FormedSpace s(FormType::symplectic, Field::get(q), dim);
    std::size_t m = dim / 2;
    for (std::size_t i = 0; i < m; ++i) {
      s.gram_.at(i, m + i) = 1;
      s.gram_.at(m + i, i) = s.F_->neg(1);
    }
    s.witt_ = m;
    return s;
  }

  // Hermitian form sum u_i v_i^{q0} over GF(q0^2).
  static FormedSpace unitary(unsigned q0, std::size_t dim) {
    if (dim == 0) throw StructuralError("unitary space needs positive dimension");
    if (!Field::is_prime_power(q0)) throw StructuralError("unitary: q is not a prime power");
    FormedSpace s(FormType::unitary, Field::get(q0 * q0), dim);
    s.q0_ = q0;
    s.sigma_ = s.F_->degree() / 2;
    s.gram_ = Matrix::identity(dim);
    s.witt_ = dim / 2;
    return s;
  }

  // eps = +1, -1 for even dimension, 0 for odd dimension.
  static FormedSpace orthogonal(int eps, unsigned q, std::size_t dim) {
    FormType t;
    if (eps == 0) {
      if (dim % 2 == 0) throw StructuralError("parabolic quadratic space needs odd dimension");
      t = FormType::orthogonal_parabolic;
    } else {
      if (dim == 0 || dim % 2) throw StructuralError("hyperbolic/elliptic quadratic space needs even dimension");
      t = eps > 0 ? FormType::orthogonal_plus : FormType::orthogonal_minus;
    }
    FormedSpace s(t, Field::get(q), dim);
    const Field& F = *s.F_;
    s.quad_ = Matrix(dim, dim);
    std::size_t h = t == FormType::orthogonal_plus ? dim / 2 : (t == FormType::orthogonal_minus ? dim / 2 - 1 : dim / 2);
    for (std::size_t i = 0; i < h; ++i) s.quad_.at(i, h + i) = 1;
    if (t == FormType::orthogonal_minus) {
      // x^2 + xy + nu y^2 with t^2 + t + nu irreducible
      Field::E nu = 0;
      for (Field::E c = 1; c < F.q() && !nu; ++c) {
        bool root = false;
        for (Field::E x = 0; x < F.q(); ++x)
          if (F.add(F.add(F.mul(x, x), x), c) == 0) root = true;
        if (!root) nu = c;
      }
      if (!nu) throw Error("no irreducible quadratic found");
      s.quad_.at(2 * h, 2 * h) = 1;
      s.quad_.at(2 * h, 2 * h + 1) = 1;
      s.quad_.at(2 * h + 1, 2 * h + 1) = nu;
    } else if (t == FormType::orthogonal_parabolic) {
      s.quad_.at(2 * h, 2 * h) = 1;
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) s.gram_.at(i, j) = F.add(s.quad_.at(i, j), s.quad_.at(j, i));
    s.witt_ = h;
    return s;
  }

  FormType type() const noexcept { return type_; }
  std::size_t dim() const noexcept { return dim_; }
  const Field& field() const noexcept { return *F_; }
  FieldPtr field_ptr() const noexcept { return F_; }
  unsigned q() const noexcept { return type_ == FormType::unitary ? q0_ : F_->q(); }
  std::size_t witt_index() const noexcept { return witt_; }
  bool is_quadratic() const noexcept { return !quad_.a.empty(); }
  const Matrix& gram() const noexcept { return gram_; }

  Field::E sigma(Field::E x) const { return sigma_ ? F_->frobenius(x, sigma_) : x; }

  Field::E bil(const Vec& u, const Vec& v) const {
    const Field& F = *F_;
    Field::E r = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!u[i]) continue;
      Field::E row = 0;
      for (std::size_t j = 0; j < dim_; ++j)
        if (gram_.at(i, j) && v[j]) row = F.add(row, F.mul(gram_.at(i, j), sigma(v[j])));
      r = F.add(r, F.mul(u[i], row));
    }
    return r;
  }

  Field::E quad(const Vec& v) const {
    if (!is_quadratic()) return 0;
    const Field& F = *F_;
    Field::E r = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!v[i]) continue;
      for (std::size_t j = i; j < dim_; ++j)
        if (quad_.at(i, j) && v[j]) r = F.add(r, F.mul(quad_.at(i, j), F.mul(v[i], v[j])));
    }
    return r;
  }

  Matrix gram_on(const Matrix& x) const {
    Matrix g(x.rows, x.rows);
    auto rows = x.row_list();
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.rows; ++j) g.at(i, j) = bil(rows[i], rows[j]);
    return g;
  }

  bool totally_isotropic(const Matrix& x) const {
    auto rows = x.row_list();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (is_quadratic() && quad(rows[i]) != 0) return false;
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (bil(rows[i], rows[j]) != 0) return false;
    }
    return true;
  }

  // Number of vectors (including 0) in the row space of x on which the form vanishes.
  std::size_t singular_count(const Matrix& x) const {
    const std::size_t k = x.rows, total = ipow(F_->q(), k);
    auto rows = x.row_list();
    std::size_t c = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec coef = vector_from_index(idx, k, F_->q());
      Vec v(dim_, 0);
      for (std::size_t i = 0; i < k; ++i)
        if (coef[i])
          for (std::size_t j = 0; j < dim_; ++j) v[j] = F_->add(v[j], F_->mul(coef[i], rows[i][j]));
      if ((is_quadratic() ? quad(v) : bil(v, v)) == 0) ++c;
    }
    return c;
  }

  SubspaceKind classify(const Matrix& x) const {
    const Field& F = *F_;
    const std::size_t k = x.rows;
    Matrix g = gram_on(x);
    std::size_t r = rank(F, g);
    if (!is_quadratic()) return r == k ? SubspaceKind::nondegenerate : SubspaceKind::degenerate;
    if (r < k) {
      if (F.p() != 2 || k - r != 1) return SubspaceKind::degenerate;
      // radical vector: null space of g (symmetric), combine rows of x
      Vec c = null_vector(g);
      Vec v(dim_, 0);
      auto rows = x.row_list();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < dim_; ++j) v[j] = F.add(v[j], F.mul(c[i], rows[i][j]));
      return quad(v) != 0 ? SubspaceKind::parabolic : SubspaceKind::degenerate;
    }
    if (k % 2) return SubspaceKind::parabolic;
    std::size_t m = k / 2, q = F.q();
    std::size_t plus = ipow(q, 2 * m - 1) + ipow(q, m) - ipow(q, m - 1);
    return singular_count(x) == plus ? SubspaceKind::plus : SubspaceKind::minus;
  }

  bool is_isometry(const Matrix& m) const {
    if (m.rows != dim_ || m.cols != dim_) return false;
    if (rank(*F_, m) != dim_) return false;
    auto rows = m.row_list();
    for (std::size_t i = 0; i < dim_; ++i) {
      Vec ei(dim_, 0);
      ei[i] = 1;
      if (is_quadratic() && quad(rows[i]) != quad(ei)) return false;
      for (std::size_t j = 0; j < dim_; ++j)
        if (bil(rows[i], rows[j]) != gram_.at(i, j)) return false;
    }
    return true;
  }

  // Order of the full isometry group.
  QInt isometry_order() const {
    const QInt q = this->q();
    QInt o = 1;
    std::size_t m = dim_ / 2;
    switch (type_) {
      case FormType::symplectic:
        o = qpow(q, static_cast<long long>(m * m));
        for (std::size_t i = 1; i <= m; ++i) o *= qpow(q, 2 * static_cast<long long>(i)) - 1;
        return o;
      case FormType::unitary:
        o = qpow(q, static_cast<long long>(dim_ * (dim_ - 1) / 2));
        for (std::size_t i = 1; i <= dim_; ++i) o *= qpow(q, static_cast<long long>(i)) - (i % 2 ? -1 : 1);
        return o;
      case FormType::orthogonal_plus:
      case FormType::orthogonal_minus: {
        o = 2 * qpow(q, static_cast<long long>(m * (m - 1)));
        o *= type_ == FormType::orthogonal_plus ? qpow(q, static_cast<long long>(m)) - 1 : qpow(q, static_cast<long long>(m)) + 1;
        for (std::size_t i = 1; i < m; ++i) o *= qpow(q, 2 * static_cast<long long>(i)) - 1;
        return o;
      }
      case FormType::orthogonal_parabolic:
        o = (F_->p() == 2 ? 1 : 2) * qpow(q, static_cast<long long>(m * m));
        for (std::size_t i = 1; i <= m; ++i) o *= qpow(q, 2 * static_cast<long long>(i)) - 1;
        return o;
    }
    return o;
  }

  // Number of scalar matrices among the isometries.
  unsigned scalar_isometries() const {
    if (type_ == FormType::unitary) return q0_ + 1;
    return F_->p() == 2 ? 1 : 2;
  }

  // Random isometry built basis vector by basis vector; images must keep the
  // form values against earlier images and stay independent.
  Matrix random_isometry(std::mt19937_64& rng) const {
    const std::size_t total = ipow(F_->q(), dim_);
    if (total > 200000) throw CapacityError("formed space too large for isometry search");
    std::vector<Vec> all(total);
    for (std::size_t i = 0; i < total; ++i) all[i] = vector_from_index(i, dim_, F_->q());
    std::vector<Vec> img;
    std::size_t budget = 100000;
    std::function<bool()> extend = [&]() -> bool {
      const std::size_t i = img.size();
      if (i == dim_) return true;
      Vec ei(dim_, 0);
      ei[i] = 1;
      std::vector<std::size_t> cand;
      for (std::size_t v = 1; v < total; ++v) {
        const Vec& x = all[v];
        if (is_quadratic() && quad(x) != quad(ei)) continue;
        if (bil(x, x) != gram_.at(i, i)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          ok = bil(img[j], x) == gram_.at(j, i) && bil(x, img[j]) == gram_.at(i, j);
        if (!ok) continue;
        Matrix m = Matrix::from_rows(img, dim_);
        m.rows += 1;
        m.a.insert(m.a.end(), x.begin(), x.end());
        if (rank(*F_, m) != i + 1) continue;
        cand.push_back(v);
      }
      std::shuffle(cand.begin(), cand.end(), rng);
      for (auto v : cand) {
        if (budget-- == 0) return false;
        img.push_back(all[v]);
        if (extend()) return true;
        img.pop_back();
      }
      return false;
    };
    if (!extend()) throw Error("isometry search failed");
    Matrix m = Matrix::from_rows(img, dim_);
    if (!is_isometry(m)) throw Error("internal: constructed matrix is not an isometry");
    return m;
  }

private:
  FormedSpace(FormType t, FieldPtr f, std::size_t dim) : type_(t), F_(std::move(f)), dim_(dim), gram_(dim, dim) {}

  Vec null_vector(const Matrix& g) const {
    const Field& F = *F_;
    Matrix m = g;
    rref(F, m);
    std::vector<long> pivcol(m.rows);
    std::vector<char> is_piv(g.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
      std::size_t c = 0;
      while (m.at(i, c) == 0) ++c;
      pivcol[i] = static_cast<long>(c);
      is_piv[c] = 1;
    }
    std::size_t freec = 0;
    while (is_piv[freec]) ++freec;
    Vec v(g.cols, 0);
    v[freec] = 1;
    for (std::size_t i = 0; i < m.rows; ++i) v[static_cast<std::size_t>(pivcol[i])] = F.neg(m.at(i, freec));
    return v;
  }

  FormType type_;
  FieldPtr F_;
  std::size_t dim_;
  Matrix gram_;
  Matrix quad_;
  unsigned q0_ = 0;
  unsigned sigma_ = 0;
  std::size_t witt_ = 0;
};

} // namespace selfsep
