#pragma once

#include <string>
#include <utility>

#include "errors.hpp"
#include "qint.hpp"

namespace selfsep {

// Smallest integer t with t >= (1 + sqrt(4 s^2 n - 4 s + 1)) / (2 s).
inline QInt neumann_lower(const QInt& n, const QInt& s) {
  if (n < 2 || s < 1) throw PreconditionError("neumann_lower needs n >= 2 and s >= 1");
  QInt D = 4 * s * s * n - 4 * s + 1;
  QInt r = isqrt(D);
  QInt t = (1 + r) / (2 * s);
  if (t < 1) t = 1;
  for (;;) {
    QInt lhs = 2 * s * t - 1;
    if (lhs >= 0 && lhs * lhs >= D) return t;
    ++t;
  }
}

inline std::size_t neumann_lower(std::size_t n, const QInt& s) {
  return static_cast<std::size_t>(neumann_lower(QInt(n), s));
}

inline std::size_t trivial_upper(std::size_t n) {
  if (n < 1) throw PreconditionError("trivial_upper needs n >= 1");
  return (n + 2) / 2;
}

// Brackets for a group embedded in H wr K with the imprimitive action.
inline std::pair<std::size_t, std::size_t> wreath_bounds(std::size_t mH, std::size_t mK) {
  if (mH < 2 || mK < 2) throw PreconditionError("wreath_bounds needs mH, mK >= 2");
  return {mH + mK - 1, mH * mK};
}

inline QInt product_action_upper(std::size_t mH, std::size_t gamma) {
  if (gamma < 1) throw PreconditionError("product_action_upper needs |Gamma| >= 1");
  return qpow(QInt(mH), static_cast<long long>(gamma));
}

// Exact value for Sym(a) wr Sym(b) in imprimitive action.
inline std::size_t sym_wreath_exact(std::size_t a, std::size_t b) {
  if (a < 2 || b < 2) throw PreconditionError("sym_wreath_exact needs a, b >= 2");
  if ((a == 3 && b % 2 == 1) || (b == 3 && a % 2 == 1)) return a + b - 2;
  return a + b - 1;
}

struct Rational {
  QInt num, den;
  std::string str() const { return num.str() + "/" + den.str(); }
};

struct OrderFilterResult {
  std::size_t n = 0;
  QInt order;
  Rational threshold;  // unreduced
  bool pass = false;
};

// Necessary order for m(G) = ceil((n+1)/2): even n needs |G| >= C(n,n/2)/2^{n/2},
// odd n needs |G| >= C(n,(n-1)/2)/(2^{(n-1)/2} n).
inline OrderFilterResult order_filter(std::size_t n, const QInt& order) {
  if (n < 2) throw PreconditionError("order_filter needs n >= 2");
  OrderFilterResult r;
  r.n = n;
  r.order = order;
  std::size_t h = n / 2;
  r.threshold.num = binomial(static_cast<long long>(n), static_cast<long long>(h));
  r.threshold.den = qpow(2, static_cast<long long>(h));
  if (n % 2) r.threshold.den *= n;
  r.pass = order * r.threshold.den >= r.threshold.num;
  return r;
}

} // namespace selfsep
