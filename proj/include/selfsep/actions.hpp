#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "qint.hpp"

namespace selfsep {

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;  // each sorted, ordered by least element
  std::vector<std::uint32_t> block_of;     // point -> block index

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  std::size_t count() const { return blocks.size(); }
};

namespace detail {

inline BlockSystem minimal_block_system(const PermGroup& g, const std::vector<Point>& seed) {
  const std::size_t n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  for (std::size_t i = 1; i < seed.size(); ++i)
    if (uf.unite(seed[0], seed[i])) queue.emplace_back(seed[0], seed[i]);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [x, y] = queue[qi];
    for (const auto& s : g.generators()) {
      Point a = s[x], b = s[y];
      if (uf.unite(a, b)) queue.emplace_back(a, b);
    }
  }
  BlockSystem bs;
  bs.block_of.assign(n, 0);
  std::vector<std::int64_t> id(n, -1);
  for (Point p = 0; p < n; ++p) {
    auto r = uf.find(p);
    if (id[r] < 0) {
      id[r] = static_cast<std::int64_t>(bs.blocks.size());
      bs.blocks.emplace_back();
    }
    bs.block_of[p] = static_cast<std::uint32_t>(id[r]);
    bs.blocks[static_cast<std::size_t>(id[r])].push_back(p);
  }
  return bs;
}

} // namespace detail

// All block systems other than the two trivial ones, by increasing block size.
inline std::vector<BlockSystem> block_systems(const PermGroup& g) {
  if (!g.is_transitive()) throw PreconditionError("block systems need a transitive group");
  const std::size_t n = g.degree();
  std::map<std::vector<Point>, BlockSystem> found;  // keyed by block of 0
  std::vector<std::vector<Point>> work;
  for (Point b = 1; b < n; ++b) {
    auto bs = detail::minimal_block_system(g, {0, b});
    auto key = bs.blocks[bs.block_of[0]];
    if (found.emplace(key, bs).second) work.push_back(key);
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Point> u;
      std::set_union(work[i].begin(), work[i].end(), work[j].begin(), work[j].end(), std::back_inserter(u));
      if (u == work[i] || u == work[j]) continue;
      auto bs = detail::minimal_block_system(g, u);
      auto key = bs.blocks[bs.block_of[0]];
      if (found.emplace(key, bs).second) work.push_back(key);
    }
  }
  std::vector<BlockSystem> out;
  for (auto& [k, bs] : found)
    if (k.size() > 1 && k.size() < n) out.push_back(bs);
  std::stable_sort(out.begin(), out.end(), [](const BlockSystem& a, const BlockSystem& b) { return a.block_size() < b.block_size(); });
  return out;
}

inline bool is_primitive(const PermGroup& g) {
  if (!g.is_transitive()) return false;
  if (g.degree() <= 2) return true;
  for (Point b = 1; b < g.degree(); ++b)
    if (detail::minimal_block_system(g, {0, b}).blocks.size() != 1) return false;
  return true;
}

// Image of g on the blocks of a G-invariant partition.
inline PermGroup action_on_blocks(const PermGroup& g, const BlockSystem& bs) {
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(bs.blocks.size());
    for (std::size_t i = 0; i < bs.blocks.size(); ++i) img[i] = bs.block_of[s[bs.blocks[i][0]]];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(bs.blocks.size(), std::move(gens));
}

struct CosetAction {
  PermGroup image;                 // action on right cosets Hx
  std::vector<Permutation> reps;   // canonical (lexicographically least) representatives
  QInt kernel_order;
  bool faithful() const { return kernel_order == 1; }
};

// Lexicographically least element of the right coset Hg; chain must use the full base 0..n-1.
inline Permutation least_in_coset(const StabChain& h_full, Permutation g) {
  for (std::size_t l = 0; l < h_full.depth(); ++l) {
    const auto& L = h_full.level(l);
    if (L.orbit.size() == 1) continue;
    std::size_t best = 0;
    Point best_img = g[L.orbit[0]];
    for (std::size_t a = 1; a < L.orbit.size(); ++a) {
      Point v = g[L.orbit[a]];
      if (v < best_img) { best_img = v; best = a; }
    }
    if (best) g = L.transversal[best] * g;
  }
  return g;
}

inline CosetAction coset_action(const PermGroup& g, const PermGroup& h, std::size_t max_index = 1u << 20) {
  if (!is_subgroup(h, g)) throw PreconditionError("coset action: H is not a subgroup of G");
  QInt index = exact_div(g.order(), h.order());
  if (index > max_index) throw CapacityError("coset action index " + index.str() + " too large");
  StabChain hc = h.chain_with_base({}, true);
  CosetAction ca;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> pos;
  ca.reps.push_back(least_in_coset(hc, Permutation(g.degree())));
  pos.emplace(ca.reps[0], 0);
  std::vector<std::vector<Point>> imgs(g.generators().size());
  for (std::size_t i = 0; i < ca.reps.size(); ++i) {
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      Permutation c = least_in_coset(hc, ca.reps[i] * g.generators()[s]);
      auto it = pos.find(c);
      std::uint32_t j;
      if (it == pos.end()) {
        j = static_cast<std::uint32_t>(ca.reps.size());
        pos.emplace(c, j);
        ca.reps.push_back(std::move(c));
      } else {
        j = it->second;
      }
      imgs[s].push_back(j);
    }
  }
  std::vector<Permutation> gens;
  for (auto& im : imgs) gens.emplace_back(std::move(im));
  ca.image = PermGroup(ca.reps.size(), std::move(gens));
  ca.kernel_order = exact_div(g.order(), ca.image.order());
  return ca;
}

// Number of orbits of g on k-subsets (degree <= 64).
inline std::size_t ksubset_orbit_count(const PermGroup& g, std::size_t k, std::uint64_t limit = 50'000'000) {
  const std::size_t n = g.degree();
  if (n > 64) throw CapacityError("k-subset orbit counting needs degree <= 64");
  if (k > n) return 0;
  if (k == 0 || k == n) return 1;
  std::uint64_t total = binom64(n, k);
  if (total > limit) throw CapacityError("too many k-subsets: " + std::to_string(total));
  UnionFind uf(static_cast<std::size_t>(total));
  std::uint64_t m = low_mask(k);
  for (std::uint64_t r = 0; r < total; ++r, m = next_colex(m)) {
    for (const auto& s : g.generators()) {
      std::uint64_t im = 0, x = m;
      while (x) {
        im |= std::uint64_t(1) << s[static_cast<Point>(std::countr_zero(x))];
        x &= x - 1;
      }
      uf.unite(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(colex_rank(im)));
    }
  }
  return uf.sets();
}

// Largest h <= k_max with g transitive on h-subsets for every 1..h.
inline std::size_t homogeneity_degree(const PermGroup& g, std::size_t k_max, std::uint64_t limit = 50'000'000) {
  std::size_t h = 0;
  for (std::size_t k = 1; k <= k_max && k <= g.degree(); ++k) {
    if (binom64(g.degree(), k) > limit) break;
    if (ksubset_orbit_count(g, k, limit) != 1) break;
    h = k;
  }
  return h;
}

struct Action {
  PermGroup group;
  std::vector<std::vector<Point>> tuples;  // label per point (subset, pair or function)
};

// Induced action on k-subsets; labels are sorted subsets in colex order.
inline Action ksubset_action(const PermGroup& g, std::size_t k, std::size_t max_degree = 100000) {
  const std::size_t n = g.degree();
  if (n > 64) throw CapacityError("k-subset action needs base degree <= 64");
  if (k == 0 || k > n) throw PreconditionError("k-subset action needs 1 <= k <= n");
  std::uint64_t total = binom64(n, k);
  if (total > max_degree) throw CapacityError("k-subset action degree " + std::to_string(total) + " too large");
  Action act;
  std::uint64_t m = low_mask(k);
  std::vector<std::uint64_t> masks;
  for (std::uint64_t r = 0; r < total; ++r, m = next_colex(m)) {
    masks.push_back(m);
    std::vector<Point> t;
    for (std::uint64_t x = m; x; x &= x - 1) t.push_back(static_cast<Point>(std::countr_zero(x)));
    act.tuples.push_back(std::move(t));
  }
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(total);
    for (std::uint64_t r = 0; r < total; ++r) {
      std::uint64_t im = 0;
      for (std::uint64_t x = masks[r]; x; x &= x - 1) im |= std::uint64_t(1) << s[static_cast<Point>(std::countr_zero(x))];
      img[r] = static_cast<Point>(colex_rank(im));
    }
    gens.emplace_back(std::move(img));
  }
  act.group = PermGroup(total, std::move(gens));
  return act;
}

struct RegularAction {
  PermGroup group;
  std::vector<Permutation> elements;  // point i is elements[i]
};

// Right regular action x -> x s on the elements of g.
inline RegularAction regular_action(const PermGroup& g, std::size_t max_order = 100000) {
  if (g.order() > max_order) throw CapacityError("regular action of a group of order " + g.order().str());
  RegularAction ra;
  ra.elements = g.elements(max_order);
  std::unordered_map<Permutation, Point, PermutationHash> pos;
  for (std::size_t i = 0; i < ra.elements.size(); ++i) pos.emplace(ra.elements[i], static_cast<Point>(i));
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(ra.elements.size());
    for (std::size_t i = 0; i < ra.elements.size(); ++i) img[i] = pos.at(ra.elements[i] * s);
    gens.emplace_back(std::move(img));
  }
  ra.group = PermGroup(ra.elements.size(), std::move(gens));
  return ra;
}

// Imprimitive wreath product: point (d, c) has index c*|Delta| + d.
// The element (h_0..h_{b-1}) k maps (d, c) to (d^{h_c}, c^k).
inline Permutation wreath_imprimitive_element(const std::vector<Permutation>& hs, const Permutation& k) {
  const std::size_t a = hs.empty() ? 0 : hs[0].degree(), b = k.degree();
  if (hs.size() != b) throw PreconditionError("need one base coordinate per top point");
  std::vector<Point> img(a * b);
  for (std::size_t c = 0; c < b; ++c)
    for (std::size_t d = 0; d < a; ++d) img[c * a + d] = static_cast<Point>(k[static_cast<Point>(c)] * a + hs[c][static_cast<Point>(d)]);
  return Permutation(std::move(img));
}

// Product action on functions f: Gamma -> Delta encoded as sum f(c) a^c.
// The element (h_c) k sends f to f' with f'(c^k) = f(c)^{h_c}.
inline Permutation wreath_product_element(const std::vector<Permutation>& hs, const Permutation& k) {
  const std::size_t a = hs.empty() ? 0 : hs[0].degree(), b = k.degree();
  if (hs.size() != b) throw PreconditionError("need one base coordinate per top point");
  std::size_t total = 1;
  for (std::size_t i = 0; i < b; ++i) total *= a;
  std::vector<Point> img(total);
  std::vector<std::size_t> f(b), pw(b, 1);
  for (std::size_t c = 1; c < b; ++c) pw[c] = pw[c - 1] * a;
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t v = x;
    for (std::size_t c = 0; c < b; ++c) { f[c] = v % a; v /= a; }
    std::size_t y = 0;
    for (std::size_t c = 0; c < b; ++c) y += hs[c][static_cast<Point>(f[c])] * pw[k[static_cast<Point>(c)]];
    img[x] = static_cast<Point>(y);
  }
  return Permutation(std::move(img));
}

namespace detail {
inline std::vector<Permutation> wreath_generators(const PermGroup& h, const PermGroup& k, bool product) {
  const std::size_t a = h.degree(), b = k.degree();
  std::vector<Permutation> gens;
  auto build = [&](const std::vector<Permutation>& hs, const Permutation& t) {
    return product ? wreath_product_element(hs, t) : wreath_imprimitive_element(hs, t);
  };
  std::vector<Permutation> ids(b, Permutation(a));
  for (const auto& orb : k.orbits()) {
    for (const auto& s : h.generators()) {
      auto hs = ids;
      hs[orb[0]] = s;
      gens.push_back(build(hs, Permutation(b)));
    }
  }
  for (const auto& t : k.generators()) gens.push_back(build(ids, t));
  return gens;
}
} // namespace detail

inline Action wreath_imprimitive(const PermGroup& h, const PermGroup& k) {
  const std::size_t a = h.degree(), b = k.degree();
  Action act;
  for (std::size_t c = 0; c < b; ++c)
    for (std::size_t d = 0; d < a; ++d) act.tuples.push_back({static_cast<Point>(d), static_cast<Point>(c)});
  act.group = PermGroup(a * b, detail::wreath_generators(h, k, false));
  return act;
}

inline BlockSystem wreath_blocks(std::size_t a, std::size_t b) {
  BlockSystem bs;
  bs.block_of.resize(a * b);
  for (std::size_t c = 0; c < b; ++c) {
    bs.blocks.emplace_back();
    for (std::size_t d = 0; d < a; ++d) {
      bs.blocks.back().push_back(static_cast<Point>(c * a + d));
      bs.block_of[c * a + d] = static_cast<std::uint32_t>(c);
    }
  }
  return bs;
}

inline Action wreath_product_action(const PermGroup& h, const PermGroup& k, std::size_t max_degree = 100000) {
  const std::size_t a = h.degree(), b = k.degree();
  QInt total = qpow(QInt(a), static_cast<long long>(b));
  if (total > max_degree) throw CapacityError("product action degree " + total.str() + " too large");
  Action act;
  auto n = static_cast<std::size_t>(total);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Point> f(b);
    std::size_t v = x;
    for (std::size_t c = 0; c < b; ++c) { f[c] = static_cast<Point>(v % a); v /= a; }
    act.tuples.push_back(std::move(f));
  }
  act.group = PermGroup(n, detail::wreath_generators(h, k, true));
  return act;
}

} // namespace selfsep
