#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "actions.hpp"
#include "errors.hpp"
#include "filters.hpp"
#include "group.hpp"
#include "numeric_bounds.hpp"
#include "separability.hpp"
#include "zoo.hpp"

namespace selfsep {

// ---------- bound report ----------

struct BoundEntry {
  std::string name;
  std::string value;
  std::string provenance;  // which result the value comes from
};

struct BoundReport {
  std::size_t n = 0;
  QInt order;
  QInt stabilizer_order;
  std::size_t neumann_lower = 0;
  std::size_t trivial_upper = 0;
  std::vector<BoundEntry> entries;
  std::optional<OrderFilterResult> order_filter;
  std::optional<FilterReport> counting_filter;
};

namespace detail {
inline bool is_full_symmetric(const PermGroup& g) {
  QInt f = 1;
  for (std::size_t i = 2; i <= g.degree(); ++i) f *= i;
  return g.order() == f;
}

inline std::optional<std::size_t> small_m(const Elaborated& e, const MOptions& opt) {
  if (e.degree() > opt.max_degree || !e.group.is_transitive()) return std::nullopt;
  try {
    auto r = compute_m(e.group, opt);
    return r.m;
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}
} // namespace detail

inline BoundReport bound_report(const Elaborated& e, const MOptions& factor_opt = {}, std::uint64_t filter_limit = 2'000'000) {
  const PermGroup& g = e.group;
  if (!g.is_transitive()) throw PreconditionError("bounds need a transitive group");
  BoundReport r;
  r.n = g.degree();
  r.order = g.order();
  r.stabilizer_order = exact_div(r.order, r.n);
  r.trivial_upper = trivial_upper(r.n);
  if (r.n >= 2) {
    r.neumann_lower = static_cast<std::size_t>(neumann_lower(QInt(r.n), r.stabilizer_order));
    r.entries.push_back({"lower", std::to_string(r.neumann_lower), "neumann-lower"});
    r.order_filter = order_filter(r.n, r.order);
  } else {
    r.neumann_lower = 1;
  }
  r.entries.push_back({"upper", std::to_string(r.trivial_upper), "half-degree-upper"});
  if (e.factor_h && e.factor_k) {
    auto mh = detail::small_m(*e.factor_h, factor_opt);
    auto mk = detail::small_m(*e.factor_k, factor_opt);
    if (!e.product_action) {
      if (mh && mk && *mh >= 2 && *mk >= 2) {
        auto [lo, hi] = wreath_bounds(*mh, *mk);
        r.entries.push_back({"wreath-lower", std::to_string(lo), "imprimitive-wreath-lower"});
        r.entries.push_back({"wreath-upper", std::to_string(hi), "imprimitive-wreath-upper"});
      }
      std::size_t a = e.factor_h->degree(), b = e.factor_k->degree();
      if (a >= 2 && b >= 2 && detail::is_full_symmetric(e.factor_h->group) && detail::is_full_symmetric(e.factor_k->group))
        r.entries.push_back({"exact", std::to_string(sym_wreath_exact(a, b)), "sym-wreath-exact"});
    } else if (mh) {
      r.entries.push_back({"product-upper", product_action_upper(*mh, e.factor_k->degree()).str(), "product-action-upper"});
    }
  }
  if (g.order() <= filter_limit) r.counting_filter = counting_filter(g, r.n <= 24);
  return r;
}

// ---------- finite group tables ----------

// Multiplication table of an abstract group; element 0 is the identity.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::uint32_t> mul;  // mul[i*order + j] = e_i e_j
  std::vector<std::uint32_t> inv;
  std::vector<Permutation> elements;  // empty for Z_n, whose element i is the residue i

  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[std::size_t(a) * order + b]; }

  static GroupTable cyclic(std::size_t n) {
    GroupTable t;
    t.order = n;
    t.mul.resize(n * n);
    t.inv.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      t.inv[a] = static_cast<std::uint32_t>((n - a) % n);
      for (std::size_t b = 0; b < n; ++b) t.mul[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
    }
    return t;
  }

  static GroupTable of(const PermGroup& g, std::size_t max_order = 5000) {
    if (g.order() > max_order) throw CapacityError("group table: order " + g.order().str() + " too large");
    GroupTable t;
    t.elements = g.elements(max_order);
    // identity first
    for (std::size_t i = 0; i < t.elements.size(); ++i)
      if (t.elements[i].is_identity()) {
        std::rotate(t.elements.begin(), t.elements.begin() + static_cast<std::ptrdiff_t>(i), t.elements.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        break;
      }
    t.order = t.elements.size();
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> pos;
    for (std::size_t i = 0; i < t.order; ++i) pos.emplace(t.elements[i], static_cast<std::uint32_t>(i));
    t.mul.resize(t.order * t.order);
    t.inv.resize(t.order);
    for (std::size_t a = 0; a < t.order; ++a) {
      t.inv[a] = pos.at(t.elements[a].inverse());
      for (std::size_t b = 0; b < t.order; ++b) t.mul[a * t.order + b] = pos.at(t.elements[a] * t.elements[b]);
    }
    return t;
  }
};

struct DifferenceBasis {
  std::size_t order = 0;
  std::vector<std::uint32_t> basis;  // element indices of the group table
  bool planar = false;
  bool exact = true;  // false when a search ran out of budget
  std::string method;

  std::size_t size() const { return basis.size(); }
};

// Representations of each element as a b^-1 with a, b in the basis.
inline std::vector<std::size_t> difference_counts(const GroupTable& t, const std::vector<std::uint32_t>& basis) {
  std::vector<std::size_t> c(t.order, 0);
  for (auto a : basis)
    for (auto b : basis) ++c[t.times(a, t.inv[b])];
  return c;
}

inline bool is_difference_basis(const GroupTable& t, const std::vector<std::uint32_t>& basis) {
  auto c = difference_counts(t, basis);
  return std::all_of(c.begin(), c.end(), [](std::size_t x) { return x > 0; });
}

inline bool is_planar(const GroupTable& t, const std::vector<std::uint32_t>& basis) {
  auto c = difference_counts(t, basis);
  for (std::size_t i = 1; i < t.order; ++i)
    if (c[i] != 1) return false;
  return true;
}

inline DifferenceBasis make_basis(const GroupTable& t, std::vector<std::uint32_t> b, std::string method, bool exact) {
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (!is_difference_basis(t, b)) throw Error("internal: " + method + " produced a set that is not a difference basis");
  DifferenceBasis d;
  d.order = t.order;
  d.basis = std::move(b);
  d.planar = is_planar(t, d.basis);
  d.exact = exact;
  d.method = std::move(method);
  return d;
}

inline std::vector<std::uint32_t> greedy_difference_basis(const GroupTable& t) {
  std::vector<std::uint32_t> b{0};
  std::vector<char> cov(t.order, 0);
  cov[0] = 1;
  std::size_t covered = 1;
  while (covered < t.order) {
    std::size_t best_gain = 0;
    std::uint32_t best = 0;
    for (std::uint32_t x = 0; x < t.order; ++x) {
      if (std::find(b.begin(), b.end(), x) != b.end()) continue;
      std::vector<std::uint32_t> fresh;
      for (auto a : b) {
        fresh.push_back(t.times(x, t.inv[a]));
        fresh.push_back(t.times(a, t.inv[x]));
      }
      std::sort(fresh.begin(), fresh.end());
      fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
      std::size_t gain = 0;
      for (auto y : fresh) gain += !cov[y];
      if (gain > best_gain) {
        best_gain = gain;
        best = x;
      }
    }
    for (auto a : b) {
      std::uint32_t u = t.times(best, t.inv[a]), v = t.times(a, t.inv[best]);
      covered += !cov[u];
      cov[u] = 1;
      covered += !cov[v];
      cov[v] = 1;
    }
    b.push_back(best);
  }
  return b;
}

namespace detail {

class BasisSearch {
public:
  BasisSearch(const GroupTable& t, std::size_t k, Clock::time_point deadline) : t_(t), k_(k), deadline_(deadline) {
    cov_.assign(t.order, 0);
  }

  bool run(std::vector<std::uint32_t>& out) {
    chosen_ = {0};
    cov_[0] = 1;
    covered_ = 1;
    bool ok = dfs(1);
    if (ok) out = chosen_;
    return ok;
  }
  bool timed_out() const { return timed_out_; }

private:
  // the s-th element can add at most 2s new differences
  bool dfs(std::uint32_t from) {
    if (covered_ == t_.order) return true;
    const std::size_t s = chosen_.size();
    if (s == k_) return false;
    std::size_t potential = 0;
    for (std::size_t j = s; j < k_; ++j) potential += 2 * j;
    if (covered_ + potential < t_.order) return false;
    if ((++nodes_ & 4095) == 0 && Clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return false;
    for (std::uint32_t x = from; x < t_.order; ++x) {
      std::vector<std::uint32_t> added;
      for (auto a : chosen_) {
        for (std::uint32_t y : {t_.times(x, t_.inv[a]), t_.times(a, t_.inv[x])})
          if (!cov_[y]) {
            cov_[y] = 1;
            added.push_back(y);
          }
      }
      covered_ += added.size();
      chosen_.push_back(x);
      if (dfs(x + 1)) return true;
      chosen_.pop_back();
      covered_ -= added.size();
      for (auto y : added) cov_[y] = 0;
      if (timed_out_) return false;
    }
    return false;
  }

  const GroupTable& t_;
  std::size_t k_;
  Clock::time_point deadline_;
  std::vector<char> cov_;
  std::vector<std::uint32_t> chosen_;
  std::size_t covered_ = 0;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

} // namespace detail

// Smallest A with A A^-1 = G; the identity is always taken into A.
inline DifferenceBasis min_difference_basis(const GroupTable& t, double budget_secs = 60) {
  if (t.order == 0) throw PreconditionError("empty group");
  if (t.order == 1) return make_basis(t, {0}, "exhaustive", true);
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget_secs));
  std::size_t k = 1;
  while (k * (k - 1) + 1 < t.order) ++k;
  for (;; ++k) {
    detail::BasisSearch s(t, k, deadline);
    std::vector<std::uint32_t> out;
    if (s.run(out)) return make_basis(t, out, "exhaustive", true);
    if (s.timed_out()) return make_basis(t, greedy_difference_basis(t), "greedy", false);
  }
}

inline DifferenceBasis min_difference_basis(const PermGroup& g, double budget_secs = 60) {
  return min_difference_basis(GroupTable::of(g), budget_secs);
}

namespace detail {

inline std::vector<std::uint32_t> closure(const GroupTable& t, const std::vector<std::uint32_t>& gens) {
  std::vector<char> in(t.order, 0);
  std::vector<std::uint32_t> el{0};
  in[0] = 1;
  for (std::size_t i = 0; i < el.size(); ++i)
    for (auto s : gens) {
      auto y = t.times(el[i], s);
      if (!in[y]) {
        in[y] = 1;
        el.push_back(y);
      }
    }
  std::sort(el.begin(), el.end());
  return el;
}

// Left coset representatives of H, the identity representing H itself.
inline std::vector<std::uint32_t> left_transversal(const GroupTable& t, const std::vector<std::uint32_t>& h) {
  std::vector<char> seen(t.order, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < t.order; ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (auto y : h) seen[t.times(x, y)] = 1;
  }
  return reps;
}

} // namespace detail

struct TransversalBasis {
  DifferenceBasis basis;
  std::vector<std::uint32_t> subgroup;  // the H used, empty on greedy fallback
  std::size_t candidates = 0;
};

// A = X ∪ H with X a left transversal of H, so A A^-1 ⊇ X H = G. Candidate subgroups are
// cyclic subgroups of sampled elements and their powers, and subgroups generated by sampled pairs.
inline TransversalBasis transversal_difference_basis(const GroupTable& t, std::optional<std::vector<std::uint32_t>> h = std::nullopt,
                                                     std::uint64_t seed = 1, std::size_t samples = 64) {
  TransversalBasis out;
  std::vector<std::vector<std::uint32_t>> cands;
  if (h) {
    auto sub = detail::closure(t, *h);
    if (sub.size() <= 1 || sub.size() >= t.order) throw PreconditionError("transversal basis needs a proper non-trivial subgroup");
    cands.push_back(sub);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(t.order - 1));
    std::vector<std::uint32_t> sampled;
    for (std::size_t i = 0; i < samples; ++i) sampled.push_back(d(rng));
    for (auto x : sampled) {
      auto c = detail::closure(t, {x});
      const std::size_t o = c.size();
      for (std::size_t e = 1; e < o; ++e) {
        if (o % e) continue;
        std::uint32_t y = 0;
        for (std::size_t i = 0; i < e; ++i) y = t.times(y, x);
        cands.push_back(detail::closure(t, {y}));
      }
    }
    for (std::size_t i = 0; i + 1 < sampled.size(); i += 2) cands.push_back(detail::closure(t, {sampled[i], sampled[i + 1]}));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::size_t best_size = SIZE_MAX;
  for (const auto& sub : cands) {
    if (sub.size() <= 1 || sub.size() >= t.order) continue;
    ++out.candidates;
    auto x = detail::left_transversal(t, sub);
    std::vector<std::uint32_t> a = x;
    a.insert(a.end(), sub.begin(), sub.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.size() < best_size) {
      best_size = a.size();
      out.basis = make_basis(t, a, "transversal", false);
      out.subgroup = sub;
    }
  }
  if (best_size == SIZE_MAX) out.basis = make_basis(t, greedy_difference_basis(t), "greedy", false);
  return out;
}

// Planar difference set of size q+1 in Z_{q^2+q+1}, found by exhaustive search.
namespace detail {

// Multiply two elements of GF(q)[x]/(x^3 - c2 x^2 - c1 x - c0).
inline std::array<Field::E, 3> cubic_mul(const Field& F, const std::array<Field::E, 3>& a, const std::array<Field::E, 3>& b,
                                          const std::array<Field::E, 3>& c) {
  std::array<Field::E, 5> p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i + j] = F.add(p[i + j], F.mul(a[i], b[j]));
  for (int d = 4; d >= 3; --d)
    for (int i = 0; i < 3; ++i) p[d - 3 + i] = F.add(p[d - 3 + i], F.mul(p[d], c[i]));
  return {p[0], p[1], p[2]};
}

} // namespace detail

// Singer set: the exponents i with x^i in span{1, x} inside GF(q^3) = GF(q)[x]/(f), f primitive, read mod q^2+q+1.
inline DifferenceBasis singer_difference_set(std::size_t q) {
  if (q < 2 || q > 64) throw UnsupportedError("singer_difference_set supports 2 <= q <= 64");
  const auto F = Field::get(static_cast<unsigned>(q));
  const std::size_t n = q * q + q + 1, big = n * (q - 1);
  using E = Field::E;
  for (E c0 = 1; c0 < q; ++c0)
    for (E c1 = 0; c1 < q; ++c1)
      for (E c2 = 0; c2 < q; ++c2) {
        const std::array<E, 3> c{c0, c1, c2};
        std::array<E, 3> y{1, 0, 0};
        const std::array<E, 3> x{0, 1, 0};
        std::vector<std::uint32_t> b;
        std::size_t i = 0;
        for (; i < big; ++i) {
          if (i > 0 && y == std::array<E, 3>{1, 0, 0}) break;  // order of x below q^3-1
          if (y[2] == 0 && i < n) b.push_back(static_cast<std::uint32_t>(i));
          y = detail::cubic_mul(*F, y, x, c);
        }
        if (i != big || y != std::array<E, 3>{1, 0, 0}) continue;
        DifferenceBasis d = make_basis(GroupTable::cyclic(n), b, "singer", true);
        if (d.size() != q + 1 || !d.planar) throw Error("internal: Singer set is not planar");
        return d;
      }
  throw Error("internal: no primitive cubic found");
}

// ---------- nested coset actions ----------

struct NestedReport {
  std::size_t index_kh = 0;
  std::size_t degree_h = 0, degree_k = 0;
  std::size_t m_h = 0, m_k = 0;  // m(G on G/H), m(G on G/K)
  bool lower_holds = false;      // m_h / |K:H| <= m_k
  bool upper_holds = false;      // m_k <= m_h
  bool holds() const { return lower_holds && upper_holds; }
};

inline NestedReport nested_action_check(const PermGroup& g, const PermGroup& h, const PermGroup& k, const MOptions& opt = {}) {
  if (!is_subgroup(h, k) || !is_subgroup(k, g)) throw PreconditionError("nested_action_check needs H <= K <= G");
  NestedReport r;
  r.index_kh = static_cast<std::size_t>(to_u64(exact_div(k.order(), h.order())));
  auto ah = coset_action(g, h, opt.max_degree);
  auto ak = coset_action(g, k, opt.max_degree);
  r.degree_h = ah.image.degree();
  r.degree_k = ak.image.degree();
  auto mh = compute_m(ah.image, opt);
  auto mk = compute_m(ak.image, opt);
  if (!mh.m || !mk.m) throw CapacityError("nested_action_check: compute_m ran out of budget");
  r.m_h = *mh.m;
  r.m_k = *mk.m;
  r.lower_holds = r.m_h <= r.m_k * r.index_kh;
  r.upper_holds = r.m_k <= r.m_h;
  return r;
}

} // namespace selfsep
