#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actions.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "numeric_bounds.hpp"
#include "point_set.hpp"
#include "qint.hpp"
#include "separability.hpp"

namespace selfsep {

// c(g): number of cycles, fixed points included. Odd cycles are counted with fixed points.
struct CycleStats {
  std::size_t cycles = 0;
  std::size_t odd_cycles = 0;
  std::size_t shortest_odd = 0;  // 0 when g has no odd cycle
};

inline CycleStats cycle_stats(const Permutation& g) {
  CycleStats s;
  for (std::size_t len : g.cycle_type()) {
    ++s.cycles;
    if (len % 2) {
      ++s.odd_cycles;
      if (s.shortest_odd == 0 || len < s.shortest_odd) s.shortest_odd = len;
    }
  }
  return s;
}

struct FilterReport {
  std::size_t n = 0;
  QInt order;
  bool even = true;
  QInt sum;        // over O_0 of 2^c(g) (even n) or over O_1 of 2^(c(g)-1) l(g) (odd n)
  QInt threshold;  // C(n, floor(n/2))
  std::optional<std::size_t> r;  // orbits on floor(n/2)-subsets
  bool pass = false;
};

inline void check_enumerable(const PermGroup& g, std::uint64_t limit) {
  if (g.order() > limit) throw CapacityError("group order " + g.order().str() + " exceeds the enumeration limit " + std::to_string(limit));
}

// The sum counts pairs (A, g) with |A| = floor(n/2) and A^g disjoint from A.
inline FilterReport counting_filter(const PermGroup& g, bool with_orbit_count = true, std::uint64_t limit = 10'000'000) {
  check_enumerable(g, limit);
  FilterReport r;
  r.n = g.degree();
  r.order = g.order();
  r.even = r.n % 2 == 0;
  r.threshold = binomial(static_cast<long long>(r.n), static_cast<long long>(r.n / 2));
  g.for_each_element([&](const Permutation& x) {
    auto s = cycle_stats(x);
    if (r.even && s.odd_cycles == 0) r.sum += QInt(1) << s.cycles;
    if (!r.even && s.odd_cycles == 1) r.sum += (QInt(1) << (s.cycles - 1)) * s.shortest_odd;
  });
  if (with_orbit_count && r.n <= 64 && binom64(r.n, r.n / 2) <= 50'000'000) r.r = ksubset_orbit_count(g, r.n / 2);
  r.pass = r.threshold <= r.sum;
  return r;
}

struct PrzReport {
  std::size_t n = 0;
  std::size_t m = 0;
  QInt order;
  std::size_t r = 0;
  QInt r_times_order;   // r(G)|G|
  QInt stabilizer_sum;  // sum over floor(n/2)-subsets A of |G_A|
  QInt cycle_sum;       // the counting_filter sum
  QInt upper;           // ceil(n/2) r(G)|G| (odd n)
  bool even = true;
  bool holds = false;
};

// Requires m(G) = ceil((n+1)/2); pass the established value or let it be computed.
inline PrzReport prz_identity_check(const PermGroup& g, std::optional<std::size_t> established_m = std::nullopt,
                                    std::uint64_t work_limit = 2'000'000'000) {
  const std::size_t n = g.degree();
  if (n > 64) throw CapacityError("prz_identity_check needs degree <= 64");
  PrzReport rep;
  rep.n = n;
  rep.even = n % 2 == 0;
  rep.m = established_m ? *established_m : *compute_m(g).m;
  if (rep.m != trivial_upper(n))
    throw PreconditionError("prz_identity_check needs m(G) = " + std::to_string(trivial_upper(n)) + ", got " + std::to_string(rep.m));
  const std::size_t h = n / 2;
  const std::uint64_t sets = binom64(n, h);
  rep.order = g.order();
  if (QInt(sets) * rep.order * h > work_limit) throw CapacityError("prz_identity_check: stabilizer counting too large");
  rep.r = ksubset_orbit_count(g, h);
  rep.r_times_order = rep.order * rep.r;
  auto filt = counting_filter(g, false);
  rep.cycle_sum = filt.sum;
  // |G_A| counted directly per set
  std::vector<std::uint64_t> stab(sets, 0);
  g.for_each_element([&](const Permutation& x) {
    std::uint64_t a = low_mask(h);
    for (std::uint64_t i = 0; i < sets; ++i, a = next_colex(a)) {
      std::uint64_t im = 0;
      for (std::uint64_t y = a; y; y &= y - 1) im |= std::uint64_t(1) << x[static_cast<Point>(std::countr_zero(y))];
      if (im == a) ++stab[i];
    }
  });
  for (auto s : stab) rep.stabilizer_sum += s;
  rep.upper = rep.r_times_order * ((n + 1) / 2);
  if (rep.even) rep.holds = rep.r_times_order == rep.stabilizer_sum && rep.stabilizer_sum == rep.cycle_sum;
  else rep.holds = rep.r_times_order == rep.stabilizer_sum && rep.stabilizer_sum <= rep.cycle_sum && rep.cycle_sum <= rep.upper;
  return rep;
}

struct NeumannReport {
  QInt total;  // sum over g of |A ∩ B^g|
  QInt order;
  std::size_t n = 0, a = 0, b = 0;
  Rational average;    // total / |G|
  Rational predicted;  // |A||B| / n
  bool holds = false;
};

inline NeumannReport neumann_average_check(const PermGroup& g, const PointSet& a, const PointSet& b, std::uint64_t limit = 10'000'000) {
  if (a.degree() != g.degree() || b.degree() != g.degree()) throw PreconditionError("set degree differs from group degree");
  if (!g.is_transitive()) throw PreconditionError("neumann_average_check needs a transitive group");
  check_enumerable(g, limit);
  NeumannReport r;
  r.n = g.degree();
  r.a = a.size();
  r.b = b.size();
  r.order = g.order();
  auto bp = b.points();
  std::uint64_t total = 0;
  g.for_each_element([&](const Permutation& x) {
    for (Point p : bp) total += a.contains(x[p]);
  });
  r.total = total;
  r.average = {r.total, r.order};
  r.predicted = {QInt(r.a) * r.b, QInt(r.n)};
  r.holds = r.total * r.n == QInt(r.a) * r.b * r.order;
  return r;
}

struct DisjointMappingReport {
  std::size_t k = 0;
  bool premise = false;          // all disjoint k-set pairs lie in one orbit
  bool k_homogeneous = false;
  std::size_t orbits = 0;
  bool holds() const { return !premise || k_homogeneous; }
};

inline DisjointMappingReport disjoint_mapping_check(const PermGroup& g, std::size_t k, std::uint64_t limit = 2'000'000) {
  const std::size_t n = g.degree();
  if (n > 64) throw CapacityError("disjoint_mapping_check needs degree <= 64");
  if (k < 1 || k + 1 > (n + 1) / 2) throw PreconditionError("disjoint_mapping_check needs 1 <= k <= ceil(n/2) - 1");
  const std::uint64_t total = binom64(n, k);
  if (total > limit) throw CapacityError("too many k-subsets");
  UnionFind uf(static_cast<std::size_t>(total));
  std::vector<std::uint64_t> masks(total);
  std::uint64_t m = low_mask(k);
  for (std::uint64_t i = 0; i < total; ++i, m = next_colex(m)) masks[i] = m;
  for (std::uint64_t i = 0; i < total; ++i)
    for (const auto& s : g.generators()) {
      std::uint64_t im = 0;
      for (std::uint64_t y = masks[i]; y; y &= y - 1) im |= std::uint64_t(1) << s[static_cast<Point>(std::countr_zero(y))];
      uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(colex_rank(im)));
    }
  DisjointMappingReport r;
  r.k = k;
  r.orbits = uf.sets();
  r.k_homogeneous = r.orbits == 1;
  r.premise = true;
  for (std::uint64_t i = 0; i < total && r.premise; ++i)
    for (std::uint64_t j = i + 1; j < total; ++j)
      if (!(masks[i] & masks[j]) && uf.find(static_cast<std::uint32_t>(i)) != uf.find(static_cast<std::uint32_t>(j))) {
        r.premise = false;
        break;
      }
  return r;
}

} // namespace selfsep
