#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace selfsep {

using QInt = boost::multiprecision::cpp_int;

inline QInt qpow(const QInt& base, long long e) {
  if (e < 0) throw PreconditionError("qpow: negative exponent");
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline std::string to_string(const QInt& v) { return v.str(); }

inline std::uint64_t to_u64(const QInt& v) {
  if (v < 0 || v > QInt(UINT64_MAX)) throw CapacityError("value does not fit in 64 bits: " + v.str());
  return v.convert_to<std::uint64_t>();
}

// Exact division; throws when the remainder is nonzero.
inline QInt exact_div(const QInt& a, const QInt& b) {
  if (b == 0) throw PreconditionError("division by zero");
  QInt q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0) throw PreconditionError("inexact division " + a.str() + " / " + b.str());
  return q;
}

inline QInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  QInt r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// floor(sqrt(v)) for v >= 0.
inline QInt isqrt(const QInt& v) {
  if (v < 0) throw PreconditionError("isqrt of negative value");
  return boost::multiprecision::sqrt(v);
}

} // namespace selfsep
