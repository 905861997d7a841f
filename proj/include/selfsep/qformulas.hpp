#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "actions.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "linalg.hpp"
#include "qint.hpp"
#include "separability.hpp"
#include "zoo.hpp"

namespace selfsep {

// ---------- q-analogues ----------

inline QInt gaussian_binomial(long long n, long long k, const QInt& q) {
  if (q < 2) throw PreconditionError("gaussian_binomial needs q >= 2");
  if (k < 0 || n < 0 || k > n) return 0;
  QInt num = 1, den = 1;
  for (long long i = 0; i < k; ++i) {
    num *= qpow(q, n - i) - 1;
    den *= qpow(q, i + 1) - 1;
  }
  return exact_div(num, den);
}

namespace detail {
// prod_{i=a}^{b} f(i), equal to 1 when a > b
template <class F>
QInt prod(long long a, long long b, F&& f) {
  QInt r = 1;
  for (long long i = a; i <= b; ++i) r *= f(i);
  return r;
}
inline long long ceil_half(long long k) { return (k + 1) / 2; }
inline long long floor_half(long long k) { return k / 2; }
inline QInt qp(const QInt& q, long long e) {
  if (e < 0) throw PreconditionError("negative exponent in formula");
  return qpow(q, e);
}
inline QInt frac(const QInt& num, const QInt& den, const char* what) {
  if (den == 0) throw PreconditionError(std::string(what) + ": zero denominator");
  QInt qt, r;
  boost::multiprecision::divide_qr(num, den, qt, r);
  if (r != 0) throw PreconditionError(std::string(what) + ": non-integral value " + num.str() + "/" + den.str());
  return qt;
}
} // namespace detail

struct QCount {
  QInt omega;
  QInt a;
};

// ---------- totally isotropic / totally singular subspaces ----------

// Rows: PSU_d(q) (dim d over GF(q^2)), PSp_{2d}(q), POmega+_{2d}(q), POmega-_{2d}(q), Omega_{2d+1}(q).
enum class TsRow { unitary, symplectic, orthogonal_plus, orthogonal_minus, orthogonal_odd };

inline std::string to_string(TsRow r) {
  switch (r) {
    case TsRow::unitary: return "unitary";
    case TsRow::symplectic: return "symplectic";
    case TsRow::orthogonal_plus: return "orthogonal+";
    case TsRow::orthogonal_minus: return "orthogonal-";
    case TsRow::orthogonal_odd: return "orthogonal-odd";
  }
  return "?";
}

// Halving exponent for the orthogonal+ row; the default halves maximal subspaces only.
using DeltaFn = std::function<int(long long, long long)>;
inline int default_delta(long long d, long long k) { return k == d ? 1 : 0; }

inline std::size_t ts_max_k(TsRow row, long long d) {
  switch (row) {
    case TsRow::unitary: return static_cast<std::size_t>(d / 2);
    case TsRow::orthogonal_minus: return static_cast<std::size_t>(d - 1);
    default: return static_cast<std::size_t>(d);
  }
}

inline QCount ts_cardinality(TsRow row, long long d, long long k, const QInt& q, const DeltaFn& delta = default_delta) {
  using detail::prod;
  using detail::qp;
  if (k < 1 || static_cast<std::size_t>(k) > ts_max_k(row, d)) throw PreconditionError("ts_cardinality: k outside the row's range");
  QCount c;
  auto minus_one = [&](long long e) { return qp(q, e) - 1; };
  switch (row) {
    case TsRow::unitary: {
      auto f = [&](long long i) { return qp(q, i) - (i % 2 ? -1 : 1); };
      const long long dl = d / 2, del = d % 2;
      c.omega = detail::frac(prod(d - 2 * k + 1, d, f), prod(1, k, [&](long long i) { return minus_one(2 * i); }), "TS unitary omega");
      for (long long h = std::max(0LL, 2 * k - dl); h <= k; ++h)
        c.a += gaussian_binomial(dl - k, k - h, q) *
               detail::frac(prod(2 * k - 2 * h + 1 + del, 2 * k + del, f), prod(1, h, [&](long long i) { return minus_one(2 * i); }), "TS unitary |A|");
      break;
    }
    case TsRow::symplectic:
    case TsRow::orthogonal_odd: {
      auto sq = [&](long long i) { return minus_one(2 * i); };
      c.omega = detail::frac(prod(d - k + 1, d, sq), prod(1, k, minus_one), "TS omega");
      for (long long h = std::max(0LL, 2 * k - d); h <= k; ++h)
        c.a += gaussian_binomial(d - k, k - h, q) * detail::frac(prod(k - h + 1, k, sq), prod(1, h, minus_one), "TS |A|");
      break;
    }
    case TsRow::orthogonal_plus: {
      auto sq = [&](long long i) { return minus_one(2 * i); };
      c.omega = detail::frac(minus_one(d) * (qp(q, d - k) + 1) * prod(d - k + 1, d - 1, sq),
                             (QInt(1) << delta(d, k)) * prod(1, k, minus_one), "TS orthogonal+ omega");
      for (long long h = std::max(0LL, 2 * k - d); h <= k; ++h)
        c.a += gaussian_binomial(d - k, k - h, q) *
               detail::frac(minus_one(k) * (qp(q, k - h) + 1) * prod(k - h + 1, k - 1, sq), (QInt(1) << delta(k, h)) * prod(1, h, minus_one),
                            "TS orthogonal+ |A|");
      break;
    }
    case TsRow::orthogonal_minus: {
      auto sq = [&](long long i) { return minus_one(2 * i); };
      c.omega = detail::frac((qp(q, d) + 1) * minus_one(d - k) * prod(d - k + 1, d - 1, sq), prod(1, k, minus_one), "TS orthogonal- omega");
      for (long long h = std::max(0LL, 2 * k - d - 1); h <= k; ++h)
        c.a += gaussian_binomial(d - 1 - k, k - h, q) *
               detail::frac((qp(q, k + 1) + 1) * minus_one(k - h + 1) * prod(k - h + 2, k, sq), prod(1, h, minus_one), "TS orthogonal- |A|");
      break;
    }
  }
  return c;
}

// ---------- nondegenerate subspaces ----------

enum class NdRow {
  unitary,            // k-nondegenerate in PSU_d(q)
  symplectic,         // 2k in PSp_{2d}(q)
  plus_hyperbolic,    // 2k-hyperbolic in POmega+_{2d}(q)
  plus_parabolic,     // (2k+1)-parabolic in POmega+_{2d}(q)
  plus_elliptic,      // 2k-elliptic in POmega+_{2d}(q)
  minus_parabolic,    // (2k+1)-parabolic in POmega-_{2d}(q)
  minus_elliptic,     // 2k-elliptic in POmega-_{2d}(q)
  odd_hyperbolic,     // 2k-hyperbolic in Omega_{2d+1}(q)
  odd_elliptic,       // 2k-elliptic in Omega_{2d+1}(q)
};

inline std::string to_string(NdRow r) {
  switch (r) {
    case NdRow::unitary: return "unitary";
    case NdRow::symplectic: return "symplectic";
    case NdRow::plus_hyperbolic: return "orthogonal+/hyperbolic";
    case NdRow::plus_parabolic: return "orthogonal+/parabolic";
    case NdRow::plus_elliptic: return "orthogonal+/elliptic";
    case NdRow::minus_parabolic: return "orthogonal-/parabolic";
    case NdRow::minus_elliptic: return "orthogonal-/elliptic";
    case NdRow::odd_hyperbolic: return "orthogonal-odd/hyperbolic";
    case NdRow::odd_elliptic: return "orthogonal-odd/elliptic";
  }
  return "?";
}

inline std::pair<long long, long long> nd_k_range(NdRow row, long long d) {
  switch (row) {
    case NdRow::plus_parabolic:
    case NdRow::minus_parabolic: return {0, d - 1};
    case NdRow::odd_hyperbolic:
    case NdRow::odd_elliptic: return {1, d};
    default: return {1, d - 1};
  }
}

inline QCount nd_cardinality(NdRow row, long long d, long long k, const QInt& q) {
  using detail::prod;
  using detail::qp;
  auto [lo, hi] = nd_k_range(row, d);
  if (k < lo || k > hi) throw PreconditionError("nd_cardinality: k outside the row's range");
  const long long c = detail::ceil_half(k), f = detail::floor_half(k);
  const long long ce = detail::ceil_half(k + 1), fe = detail::floor_half(k - 1), ce1 = detail::ceil_half(k - 1);
  auto sq = [&](long long i) { return qp(q, 2 * i) - 1; };
  QCount r;
  switch (row) {
    case NdRow::unitary: {
      auto u = [&](long long i) { return qp(q, i) - (i % 2 ? -1 : 1); };
      r.omega = detail::frac(qp(q, k * (d - k)) * prod(d - k + 1, d, u), prod(1, k, u), "ND unitary omega");
      r.a = detail::frac(qp(q, c * (d - k)) * prod(d - k + 1, d - f, u), prod(1, c, u), "ND unitary |A|");
      break;
    }
    case NdRow::symplectic:
      r.omega = detail::frac(qp(q, 2 * k * (d - k)) * prod(d - k + 1, d, sq), prod(1, k, sq), "ND symplectic omega");
      r.a = detail::frac(qp(q, 2 * c * (d - k)) * prod(d - k + 1, d - f, sq), prod(1, c, sq), "ND symplectic |A|");
      break;
    case NdRow::plus_hyperbolic:
      r.omega = detail::frac(qp(q, 2 * k * (d - k)) * (qp(q, d) - 1) * prod(d - k, d - 1, sq),
                             2 * (qp(q, k) - 1) * (qp(q, d - k) - 1) * prod(1, k - 1, sq), "ND plus/hyperbolic omega");
      r.a = detail::frac(qp(q, 2 * c * (d - k)) * (qp(q, d - f) - 1) * prod(d - k, d - f - 1, sq),
                         2 * (qp(q, c) - 1) * (qp(q, d - k) - 1) * prod(1, c - 1, sq), "ND plus/hyperbolic |A|");
      break;
    case NdRow::plus_parabolic:
    case NdRow::minus_parabolic: {
      const int s = row == NdRow::plus_parabolic ? -1 : 1;
      r.omega = detail::frac(qp(q, (2 * k + 1) * (2 * d - 2 * k - 1) - 1) * (qp(q, d) + s) * prod(d - k, d - 1, sq), 2 * prod(1, k, sq),
                             "ND parabolic omega");
      r.a = detail::frac(qp(q, (2 * c + 1) * (2 * d - 2 * k - 1) - 1) * (qp(q, d - f) + s) * prod(d - k, d - f - 1, sq), 2 * prod(1, c, sq),
                         "ND parabolic |A|");
      break;
    }
    case NdRow::plus_elliptic:
      r.omega = detail::frac(qp(q, 2 * k * (d - k)) * (qp(q, d) - 1) * prod(d - k, d - 1, sq),
                             2 * (qp(q, k) + 1) * (qp(q, d - k) + 1) * prod(1, k - 1, sq), "ND plus/elliptic omega");
      r.a = detail::frac(qp(q, 2 * ce * (d - k)) * (qp(q, d - fe) - 1) * prod(d - k, d - fe - 1, sq),
                         2 * (qp(q, ce) + 1) * (qp(q, d - k) + 1) * prod(1, ce1, sq), "ND plus/elliptic |A|");
      break;
    case NdRow::minus_elliptic:
      r.omega = detail::frac(qp(q, 2 * k * (d - k)) * (qp(q, d) + 1) * prod(d - k, d - 1, sq),
                             2 * (qp(q, k) + 1) * (qp(q, d - k) - 1) * prod(1, k - 1, sq), "ND minus/elliptic omega");
      r.a = detail::frac(qp(q, 2 * ce * (d - k)) * (qp(q, d - fe) + 1) * prod(d - k, d - fe - 1, sq),
                         2 * (qp(q, ce) + 1) * (qp(q, d - k) - 1) * prod(1, ce1, sq), "ND minus/elliptic |A|");
      break;
    case NdRow::odd_hyperbolic:
      r.omega = detail::frac(qp(q, k * (2 * d - 2 * k + 1)) * prod(d - k + 1, d, sq), 2 * (qp(q, k) - 1) * prod(1, k - 1, sq),
                             "ND odd/hyperbolic omega");
      r.a = detail::frac(qp(q, c * (2 * d - 2 * k + 1)) * prod(d - k + 1, d - f, sq), 2 * (qp(q, c) - 1) * prod(1, c - 1, sq),
                         "ND odd/hyperbolic |A|");
      break;
    case NdRow::odd_elliptic:
      r.omega = detail::frac(qp(q, k * (2 * d + 1 - 2 * k)) * prod(d - k + 1, d, sq), 2 * (qp(q, k) + 1) * prod(1, k - 1, sq),
                             "ND odd/elliptic omega");
      r.a = detail::frac(qp(q, ce * (2 * d - 2 * k + 1)) * prod(d - k + 1, d - fe, sq), 2 * (qp(q, ce) + 1) * prod(1, ce1, sq),
                         "ND odd/elliptic |A|");
      break;
  }
  return r;
}

// Exponent helpers appearing in the parabolic asymptotics.
inline long long nd_B(long long k, long long d) { return -2 + 3 * d - 2 * k; }
inline long long nd_C(long long k, long long d) { return -2 + 4 * d - 4 * k; }

// ---------- enumeration oracle ----------

enum class OracleKind { all, totally_isotropic, nondegenerate };

struct OracleQuery {
  OracleKind kind = OracleKind::all;
  std::size_t k = 1;
  std::optional<SubspaceKind> nondeg_kind;  // plus / minus / parabolic for quadratic spaces
  bool one_family = false;                  // maximal totally singular subspaces of O+: one of the two classes
};

namespace detail {

inline bool contains_subspace(const Field& F, const Matrix& x, const Matrix& u) {
  if (u.rows == 0) return true;
  Matrix both(x.rows + u.rows, x.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) both.at(i, j) = x.at(i, j);
  for (std::size_t i = 0; i < u.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) both.at(x.rows + i, j) = u.at(i, j);
  return rank(F, both) == x.rows;
}

inline bool perpendicular(const FormedSpace& V, const Matrix& x, const Matrix& u) {
  for (const auto& a : x.row_list())
    for (const auto& b : u.row_list())
      if (V.bil(a, b) != 0) return false;
  return true;
}

// For O+ with Witt index w: maximal X lies in the class of <e_1..e_w> iff dim(X ∩ M0) ≡ w mod 2.
inline bool same_family(const FormedSpace& V, const Matrix& x) {
  const std::size_t w = V.witt_index();
  Matrix both(x.rows + w, V.dim());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < V.dim(); ++j) both.at(i, j) = x.at(i, j);
  for (std::size_t i = 0; i < w; ++i) both.at(x.rows + i, i) = 1;
  std::size_t meet = x.rows + w - rank(V.field(), both);
  return meet % 2 == w % 2;
}

inline bool matches(const FormedSpace* V, const Matrix& x, const OracleQuery& q) {
  switch (q.kind) {
    case OracleKind::all: return true;
    case OracleKind::totally_isotropic:
      if (!V->totally_isotropic(x)) return false;
      return !q.one_family || same_family(*V, x);
    case OracleKind::nondegenerate: {
      auto c = V->classify(x);
      if (c == SubspaceKind::degenerate) return false;
      return !q.nondeg_kind || c == *q.nondeg_kind;
    }
  }
  return false;
}

} // namespace detail

// Counts k-subspaces of the requested kind by enumerating echelon forms.
inline QInt count_subspaces_oracle(const FormedSpace* V, std::size_t d, unsigned q, const OracleQuery& query, std::size_t limit = 2'000'000) {
  if (query.kind != OracleKind::all && !V) throw PreconditionError("oracle: this kind needs a formed space");
  const Field& F = V ? V->field() : *Field::get(q);
  if (V) d = V->dim();
  if (query.k > d) return 0;
  if (query.k == 0) return 1;
  auto spaces = enumerate_subspaces(F, d, query.k, limit);
  if (!V) return spaces.size();
  QInt c = 0;
  for (const auto& x : spaces) c += detail::matches(V, x, query);
  return c;
}

// A totally isotropic subspace of the given dimension: greedy in vector-index order.
inline Matrix isotropic_subspace(const FormedSpace& V, std::size_t dim) {
  const Field& F = V.field();
  std::vector<Vec> basis;
  const std::size_t total = ipow(F.q(), V.dim());
  for (std::size_t idx = 1; idx < total && basis.size() < dim; ++idx) {
    Vec v = vector_from_index(idx, V.dim(), F.q());
    if ((V.is_quadratic() ? V.quad(v) : V.bil(v, v)) != 0) continue;
    bool ok = true;
    for (const auto& b : basis) ok = ok && V.bil(v, b) == 0;
    if (!ok) continue;
    auto trial = basis;
    trial.push_back(v);
    if (rank(F, Matrix::from_rows(trial, V.dim())) != trial.size()) continue;
    basis = std::move(trial);
  }
  if (basis.size() < dim) throw PreconditionError("no totally isotropic subspace of dimension " + std::to_string(dim));
  return row_space(F, Matrix::from_rows(basis, V.dim()));
}

// Nondegenerate anchor: hyperbolic pairs e_i, f_i for alternating and quadratic forms,
// the first coordinate vectors for the hermitian identity form.
inline Matrix nondegenerate_subspace(const FormedSpace& V, std::size_t dim) {
  std::vector<Vec> rows;
  if (V.type() == FormType::unitary) {
    for (std::size_t i = 0; i < dim; ++i) {
      Vec v(V.dim(), 0);
      v[i] = 1;
      rows.push_back(v);
    }
  } else {
    if (dim % 2 || dim / 2 > V.witt_index()) throw PreconditionError("hyperbolic anchor of dimension " + std::to_string(dim) + " unavailable");
    const std::size_t h = V.witt_index();
    for (std::size_t i = 0; i < dim / 2; ++i) {
      Vec e(V.dim(), 0), f(V.dim(), 0);
      e[i] = 1;
      f[h + i] = 1;
      rows.push_back(e);
      rows.push_back(f);
    }
  }
  if (rows.empty()) return Matrix(0, V.dim());
  return row_space(V.field(), Matrix::from_rows(rows, V.dim()));
}

// ---------- row <-> formed space ----------

inline FormedSpace ts_space(TsRow row, std::size_t d, unsigned q) {
  switch (row) {
    case TsRow::unitary: return FormedSpace::unitary(q, d);
    case TsRow::symplectic: return FormedSpace::symplectic(q, 2 * d);
    case TsRow::orthogonal_plus: return FormedSpace::orthogonal(1, q, 2 * d);
    case TsRow::orthogonal_minus: return FormedSpace::orthogonal(-1, q, 2 * d);
    case TsRow::orthogonal_odd: return FormedSpace::orthogonal(0, q, 2 * d + 1);
  }
  throw PreconditionError("bad row");
}

inline FormedSpace nd_space(NdRow row, std::size_t d, unsigned q) {
  switch (row) {
    case NdRow::unitary: return FormedSpace::unitary(q, d);
    case NdRow::symplectic: return FormedSpace::symplectic(q, 2 * d);
    case NdRow::plus_hyperbolic:
    case NdRow::plus_parabolic:
    case NdRow::plus_elliptic: return FormedSpace::orthogonal(1, q, 2 * d);
    case NdRow::minus_parabolic:
    case NdRow::minus_elliptic: return FormedSpace::orthogonal(-1, q, 2 * d);
    case NdRow::odd_hyperbolic:
    case NdRow::odd_elliptic: return FormedSpace::orthogonal(0, q, 2 * d + 1);
  }
  throw PreconditionError("bad row");
}

inline OracleQuery ts_query(TsRow row, std::size_t d, std::size_t k) {
  OracleQuery q{OracleKind::totally_isotropic, k, std::nullopt, false};
  q.one_family = row == TsRow::orthogonal_plus && k == d;
  return q;
}

// Subspace dimension and type for an ND row with parameter k.
inline OracleQuery nd_query(NdRow row, std::size_t k) {
  switch (row) {
    case NdRow::unitary: return {OracleKind::nondegenerate, k, std::nullopt, false};
    case NdRow::symplectic: return {OracleKind::nondegenerate, 2 * k, std::nullopt, false};
    case NdRow::plus_hyperbolic:
    case NdRow::odd_hyperbolic: return {OracleKind::nondegenerate, 2 * k, SubspaceKind::plus, false};
    case NdRow::plus_elliptic:
    case NdRow::minus_elliptic:
    case NdRow::odd_elliptic: return {OracleKind::nondegenerate, 2 * k, SubspaceKind::minus, false};
    case NdRow::plus_parabolic:
    case NdRow::minus_parabolic: return {OracleKind::nondegenerate, 2 * k + 1, SubspaceKind::parabolic, false};
  }
  throw PreconditionError("bad row");
}

// Dimension of the anchor U for an ND row.
inline std::size_t nd_anchor_dim(NdRow row, std::size_t k) {
  switch (row) {
    case NdRow::unitary: return k / 2;
    case NdRow::plus_elliptic:
    case NdRow::minus_elliptic:
    case NdRow::odd_elliptic: return k >= 1 ? 2 * ((k - 1) / 2) : 0;
    default: return 2 * (k / 2);
  }
}

inline Matrix ts_anchor(const FormedSpace& V, std::size_t k) {
  if (k > V.witt_index()) throw PreconditionError("k exceeds the Witt index");
  return isotropic_subspace(V, V.witt_index() - k);
}

inline QInt ts_anchor_count(TsRow row, std::size_t d, std::size_t k, unsigned q) {
  FormedSpace V = ts_space(row, d, q);
  Matrix u = ts_anchor(V, k);
  auto query = ts_query(row, d, k);
  QInt c = 0;
  for (const auto& x : enumerate_subspaces(V.field(), V.dim(), k))
    if (detail::matches(&V, x, query) && detail::perpendicular(V, x, u)) ++c;
  return c;
}

inline QInt nd_anchor_count(NdRow row, std::size_t d, std::size_t k, unsigned q) {
  FormedSpace V = nd_space(row, d, q);
  Matrix u = nondegenerate_subspace(V, nd_anchor_dim(row, k));
  auto query = nd_query(row, k);
  QInt c = 0;
  for (const auto& x : enumerate_subspaces(V.field(), V.dim(), query.k))
    if (detail::matches(&V, x, query) && detail::contains_subspace(V.field(), x, u)) ++c;
  return c;
}

// ---------- formula vs oracle grid ----------

struct QCheckRow {
  std::string table;  // "TS" or "ND"
  std::string row;
  std::string space;
  std::size_t d = 0, k = 0;
  unsigned q = 0;
  QInt omega_formula, omega_oracle;
  QInt a_formula, a_oracle;
  std::string note;
  bool omega_match() const { return omega_formula == omega_oracle; }
  bool a_match() const { return a_formula == a_oracle; }
};

inline std::string space_name(const FormedSpace& V) {
  std::string t;
  switch (V.type()) {
    case FormType::symplectic: t = "Sp"; break;
    case FormType::unitary: t = "U"; break;
    case FormType::orthogonal_plus: t = "O+"; break;
    case FormType::orthogonal_minus: t = "O-"; break;
    case FormType::orthogonal_parabolic: t = "O"; break;
  }
  return t + "(" + std::to_string(V.dim()) + "," + std::to_string(V.q()) + ")";
}

inline QCheckRow check_ts(TsRow row, std::size_t d, std::size_t k, unsigned q) {
  QCheckRow r;
  r.table = "TS";
  r.row = to_string(row);
  r.d = d;
  r.k = k;
  r.q = q;
  FormedSpace V = ts_space(row, d, q);
  r.space = space_name(V);
  auto f = ts_cardinality(row, static_cast<long long>(d), static_cast<long long>(k), q);
  r.omega_formula = f.omega;
  r.a_formula = f.a;
  r.omega_oracle = count_subspaces_oracle(&V, V.dim(), q, ts_query(row, d, k));
  r.a_oracle = ts_anchor_count(row, d, k, q);
  if (row == TsRow::orthogonal_plus && k == d) r.note = "one class of maximal subspaces";
  return r;
}

inline QCheckRow check_nd(NdRow row, std::size_t d, std::size_t k, unsigned q) {
  QCheckRow r;
  r.table = "ND";
  r.row = to_string(row);
  r.d = d;
  r.k = k;
  r.q = q;
  FormedSpace V = nd_space(row, d, q);
  r.space = space_name(V);
  auto f = nd_cardinality(row, static_cast<long long>(d), static_cast<long long>(k), q);
  r.omega_formula = f.omega;
  r.a_formula = f.a;
  r.omega_oracle = count_subspaces_oracle(&V, V.dim(), q, nd_query(row, k));
  r.a_oracle = nd_anchor_count(row, d, k, q);
  return r;
}

struct GridSpace {
  std::optional<TsRow> ts;
  std::vector<NdRow> nd;
  std::size_t d;
  unsigned q;
};

// Sp(4,2), Sp(4,3), Sp(6,2), U(3,2), O+(4,2), O-(4,2), O(5,3), with k <= 2.
inline std::vector<GridSpace> default_qgrid() {
  return {
      {TsRow::symplectic, {NdRow::symplectic}, 2, 2},
      {TsRow::symplectic, {NdRow::symplectic}, 2, 3},
      {TsRow::symplectic, {NdRow::symplectic}, 3, 2},
      {TsRow::unitary, {NdRow::unitary}, 3, 2},
      {TsRow::orthogonal_plus, {NdRow::plus_hyperbolic, NdRow::plus_parabolic, NdRow::plus_elliptic}, 2, 2},
      {TsRow::orthogonal_minus, {NdRow::minus_parabolic, NdRow::minus_elliptic}, 2, 2},
      {TsRow::orthogonal_odd, {NdRow::odd_hyperbolic, NdRow::odd_elliptic}, 2, 3},
  };
}

// Parabolic rows are compared only for even q, where nondegenerate odd-dimensional
// subspaces form a single class.
inline std::vector<QCheckRow> qformula_grid(const std::vector<GridSpace>& grid = default_qgrid(), std::size_t k_max = 2) {
  std::vector<QCheckRow> out;
  for (const auto& g : grid) {
    if (g.ts)
      for (std::size_t k = 1; k <= std::min(k_max, ts_max_k(*g.ts, static_cast<long long>(g.d))); ++k) out.push_back(check_ts(*g.ts, g.d, k, g.q));
    for (NdRow row : g.nd) {
      bool parabolic = row == NdRow::plus_parabolic || row == NdRow::minus_parabolic;
      if (parabolic && g.q % 2) continue;
      auto [lo, hi] = nd_k_range(row, static_cast<long long>(g.d));
      for (long long k = lo; k <= std::min<long long>(hi, static_cast<long long>(k_max)); ++k)
        out.push_back(check_nd(row, g.d, static_cast<std::size_t>(k), g.q));
    }
  }
  return out;
}

// ---------- witness constructions ----------

struct WitnessConstruction {
  std::string spec;
  std::string domain_kind;
  std::vector<Matrix> anchors;
  PointSet witness;
  QInt predicted;
  std::size_t actual = 0;
  bool verified = false;      // engine certified not separable
  bool verification_run = false;
  std::uint64_t nodes = 0;
};

namespace detail {
inline void verify_construction(const PermGroup& g, WitnessConstruction& w, bool verify) {
  w.actual = w.witness.size();
  if (!verify) return;
  w.verification_run = true;
  auto r = is_self_separable(g, w.witness, {Strategy::backtrack});
  w.nodes = r.nodes_explored;
  w.verified = !r.separable();
}
} // namespace detail

// Sym(m) on k-subsets; A = k-sets containing {0..floor(k/2)-1}.
inline WitnessConstruction ksubset_witness(std::size_t m, std::size_t k, bool verify = true, std::size_t max_degree = 100000) {
  if (k < 2 || k >= m) throw PreconditionError("ksubset_witness needs 2 <= k < m");
  Action act = ksubset_action(symmetric_group(m), k, max_degree);
  WitnessConstruction w;
  w.spec = "sym:" + std::to_string(m) + "@ksubsets:" + std::to_string(k);
  w.domain_kind = "ksubsets";
  const std::size_t r = k / 2;
  w.witness = PointSet(act.group.degree());
  for (std::size_t i = 0; i < act.tuples.size(); ++i) {
    const auto& t = act.tuples[i];
    bool ok = true;
    for (Point p = 0; p < r; ++p) ok = ok && std::find(t.begin(), t.end(), p) != t.end();
    if (ok) w.witness.insert(static_cast<Point>(i));
  }
  w.predicted = binomial(static_cast<long long>(m - r), static_cast<long long>(k - r));
  detail::verify_construction(act.group, w, verify);
  return w;
}

enum class WitnessRule { linear, totally_isotropic, nondegenerate };

// Subspace witnesses on a classical_action domain.
inline WitnessConstruction subspace_witness(const Elaborated& e, WitnessRule rule, std::size_t k, std::optional<SubspaceKind> nd_kind,
                                            bool verify = true) {
  if (e.domain.label_kind != LabelKind::subspace) throw UnsupportedError("subspace_witness needs a subspace domain");
  const auto& dom = e.domain.subspaces;
  if (dom.empty()) throw PreconditionError("empty domain");
  const std::size_t dim = dom[0].cols;
  if (dom[0].rows != k) throw PreconditionError("witness k differs from the domain's subspace dimension");
  WitnessConstruction w;
  w.spec = e.description;
  w.domain_kind = e.domain.kind;
  w.witness = PointSet(dom.size());
  Matrix u;
  if (rule == WitnessRule::linear) {
    if (e.form) throw UnsupportedError("linear witness needs a group without a form");
    if (2 * k > dim) throw UnsupportedError("linear witness needs k <= d/2");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < k / 2; ++i) {
      Vec v(dim, 0);
      v[i] = 1;
      rows.push_back(v);
    }
    u = rows.empty() ? Matrix(0, dim) : Matrix::from_rows(rows, dim);
  }
  const FormedSpace* V = e.form ? &*e.form : nullptr;
  FieldPtr Fp = e.field;
  if (rule == WitnessRule::linear) {
    if (!Fp) throw UnsupportedError("linear witness: field unknown");
    w.predicted = gaussian_binomial(static_cast<long long>(dim - k / 2), static_cast<long long>(k - k / 2), Fp->q());
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (detail::contains_subspace(*Fp, dom[i], u)) w.witness.insert(static_cast<Point>(i));
  } else if (rule == WitnessRule::totally_isotropic) {
    if (!V) throw UnsupportedError("totally isotropic witness needs a formed space");
    u = ts_anchor(*V, k);
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (detail::perpendicular(*V, dom[i], u)) w.witness.insert(static_cast<Point>(i));
    std::optional<TsRow> row;
    std::size_t d = 0;
    switch (V->type()) {
      case FormType::unitary: row = TsRow::unitary; d = V->dim(); break;
      case FormType::symplectic: row = TsRow::symplectic; d = V->dim() / 2; break;
      case FormType::orthogonal_plus: row = TsRow::orthogonal_plus; d = V->dim() / 2; break;
      case FormType::orthogonal_minus: row = TsRow::orthogonal_minus; d = V->dim() / 2; break;
      case FormType::orthogonal_parabolic: row = TsRow::orthogonal_odd; d = V->dim() / 2; break;
    }
    w.predicted = ts_cardinality(*row, static_cast<long long>(d), static_cast<long long>(k), V->q()).a;
  } else {
    if (!V) throw UnsupportedError("nondegenerate witness needs a formed space");
    std::optional<NdRow> row;
    std::size_t d = 0, tk = 0;
    switch (V->type()) {
      case FormType::unitary: row = NdRow::unitary; d = V->dim(); tk = k; break;
      case FormType::symplectic: row = NdRow::symplectic; d = V->dim() / 2; tk = k / 2; break;
      case FormType::orthogonal_plus:
      case FormType::orthogonal_minus:
      case FormType::orthogonal_parabolic: {
        if (!nd_kind) throw UnsupportedError("orthogonal nondegenerate witness needs the subspace type");
        bool plus = V->type() == FormType::orthogonal_plus, odd = V->type() == FormType::orthogonal_parabolic;
        d = V->dim() / 2;
        if (*nd_kind == SubspaceKind::parabolic) {
          if (odd) throw UnsupportedError("no table row for parabolic subspaces of an odd-dimensional space");
          row = plus ? NdRow::plus_parabolic : NdRow::minus_parabolic;
          tk = (k - 1) / 2;
        } else if (*nd_kind == SubspaceKind::plus) {
          if (!plus && !odd) throw UnsupportedError("no table row for hyperbolic subspaces of an elliptic space");
          row = odd ? NdRow::odd_hyperbolic : NdRow::plus_hyperbolic;
          tk = k / 2;
        } else {
          row = odd ? NdRow::odd_elliptic : (plus ? NdRow::plus_elliptic : NdRow::minus_elliptic);
          tk = k / 2;
        }
        break;
      }
    }
    u = nondegenerate_subspace(*V, nd_anchor_dim(*row, tk));
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (detail::contains_subspace(V->field(), dom[i], u)) w.witness.insert(static_cast<Point>(i));
    w.predicted = nd_cardinality(*row, static_cast<long long>(d), static_cast<long long>(tk), V->q()).a;
  }
  w.anchors.push_back(u);
  detail::verify_construction(e.group, w, verify);
  return w;
}

} // namespace selfsep
