#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace selfsep {

// GF(q) for prime powers q <= 256. Elements are 0..q-1, the base-p digits of an
// element are its coefficients over the prime field; 1 is the unit.
class Field {
public:
  using E = std::uint32_t;

  static std::shared_ptr<const Field> get(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const Field>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<const Field>(new Field(q));
    cache.emplace(q, f);
    return f;
  }

  static bool is_prime_power(unsigned q, unsigned* p_out = nullptr, unsigned* e_out = nullptr) {
    if (q < 2) return false;
    unsigned p = 2;
    while (q % p) ++p;
    unsigned e = 0, r = q;
    while (r % p == 0) { r /= p; ++e; }
    if (r != 1) return false;
    if (p_out) *p_out = p;
    if (e_out) *e_out = e;
    return true;
  }

  unsigned q() const noexcept { return q_; }
  unsigned p() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }
  E primitive() const noexcept { return exp_[q_ > 2 ? 1 : 0]; }
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  E add(E a, E b) const noexcept { return add_[a * q_ + b]; }
  E neg(E a) const noexcept { return neg_[a]; }
  E sub(E a, E b) const noexcept { return add_[a * q_ + neg_[b]]; }
  E mul(E a, E b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  E inv(E a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  E div(E a, E b) const { return mul(a, inv(b)); }
  E pow(E a, long long k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    long long m = static_cast<long long>(q_ - 1);
    long long r = ((k % m) + m) % m;
    return exp_[static_cast<std::size_t>((log_[a] * r) % m)];
  }
  // omega^k for the fixed primitive element omega.
  E power_of_primitive(long long k) const {
    long long m = static_cast<long long>(q_ - 1);
    return exp_[static_cast<std::size_t>(((k % m) + m) % m)];
  }
  unsigned log(E a) const {
    if (a == 0) throw PreconditionError("log of zero");
    return log_[a];
  }
  E frobenius(E a, unsigned times = 1) const {
    for (unsigned i = 0; i < times; ++i) a = pow(a, p_);
    return a;
  }
  bool is_square(E a) const noexcept { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }
  E from_int(long long v) const {
    long long r = ((v % static_cast<long long>(p_)) + p_) % p_;
    return static_cast<E>(r);
  }

  std::string to_string(E a) const {
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    return "w^" + std::to_string(log_[a]);
  }

private:
  explicit Field(unsigned q) : q_(q) {
    if (!is_prime_power(q, &p_, &e_)) throw StructuralError("GF(" + std::to_string(q) + "): not a prime power");
    if (q > 256) throw CapacityError("fields larger than GF(256) are not supported");
    neg_.resize(q);
    add_.resize(static_cast<std::size_t>(q) * q);
    for (E a = 0; a < q; ++a)
      for (E b = 0; b < q; ++b) add_[a * q + b] = digit_add(a, b);
    for (E a = 0; a < q; ++a)
      for (E b = 0; b < q; ++b)
        if (add_[a * q + b] == 0) neg_[a] = b;
    find_primitive_modulus();
    check_axioms();
  }

  E digit_add(E a, E b) const {
    E r = 0, w = 1;
    for (unsigned i = 0; i < e_; ++i) {
      r += ((a % p_ + b % p_) % p_) * w;
      a /= p_; b /= p_; w *= p_;
    }
    return r;
  }

  // First monic degree-e polynomial (in digit order) whose root generates the unit group.
  void find_primitive_modulus() {
    if (e_ == 1) {
      for (E g = 1; g < q_; ++g) {
        if (build_tables([&](E x) { return static_cast<E>((x * g) % p_); })) {
          modulus_ = {static_cast<unsigned>((p_ - g) % p_), 1};
          return;
        }
      }
      throw Error("no primitive root found");
    }
    unsigned total = q_;  // lower coefficients c_0..c_{e-1}
    for (unsigned code = 1; code < total; ++code) {
      std::vector<unsigned> c(e_);
      unsigned v = code;
      for (unsigned i = 0; i < e_; ++i) { c[i] = v % p_; v /= p_; }
      if (c[0] == 0) continue;
      // multiply by x: shift digits up, reduce x^e = -(c_0 + ... + c_{e-1} x^{e-1})
      auto times_x = [&](E a) {
        std::vector<unsigned> d(e_ + 1, 0);
        E t = a;
        for (unsigned i = 0; i < e_; ++i) { d[i + 1] = t % p_; t /= p_; }
        unsigned top = d[e_];
        E r = 0, w = 1;
        for (unsigned i = 0; i < e_; ++i) {
          unsigned coef = (d[i] + (p_ - (top * c[i]) % p_)) % p_;
          r += coef * w;
          w *= p_;
        }
        return r;
      };
      if (build_tables(times_x)) {
        modulus_ = c;
        modulus_.push_back(1);
        return;
      }
    }
    throw Error("no primitive polynomial found");
  }

  template <class Step>
  bool build_tables(Step step) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::vector<char> seen(q_, 0);
    E x = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      if (x == 0 || seen[x]) return false;
      seen[x] = 1;
      exp_[i] = x;
      log_[x] = i;
      x = step(x);
    }
    return x == 1;
  }

  void check_axioms() const {
    for (E a = 0; a < q_; ++a)
      for (E b = 0; b < q_; ++b) {
        if (mul(a, b) != mul(b, a) || add(a, b) != add(b, a)) throw Error("field tables not commutative");
        for (E c = 0; c < q_; ++c) {
          if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) throw Error("field tables not distributive");
          if (add(a, add(b, c)) != add(add(a, b), c)) throw Error("field addition not associative");
        }
      }
  }

  unsigned q_ = 0, p_ = 0, e_ = 0;
  std::vector<E> add_, neg_, exp_;
  std::vector<unsigned> log_;
  std::vector<unsigned> modulus_;
};

using FieldPtr = std::shared_ptr<const Field>;

} // namespace selfsep
