#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "qint.hpp"

namespace selfsep {

struct ChainLevel {
  Point base = 0;
  std::vector<std::uint32_t> gens;       // indices into StabChain::strong_generators()
  std::vector<Point> orbit;
  std::vector<std::int32_t> where;       // point -> index in orbit, or -1
  std::vector<Permutation> transversal;  // base^transversal[j] == orbit[j]
  std::vector<Permutation> inverse;      // inverses of transversal
  std::vector<std::size_t> done;         // per generator: Schreier pairs already sifted

  std::size_t orbit_size() const noexcept { return orbit.size(); }
  const Permutation& rep(Point y) const { return transversal[static_cast<std::size_t>(where[y])]; }
  bool in_orbit(Point y) const noexcept { return where[y] >= 0; }
};

// Stabilizer chain built by deterministic Schreier-Sims with explicit transversals.
// An element is g = u_{k-1} ... u_1 u_0 with u_i from level i (right action).
class StabChain {
public:
  StabChain() = default;

  // base_prefix points become the first levels, in order. With full_base every
  // point gets a level (trivial levels included), which the coset code relies on.
  StabChain(std::size_t degree, const std::vector<Permutation>& gens,
            std::span<const Point> base_prefix = {}, bool full_base = false)
      : degree_(degree) {
    std::vector<char> in_prefix(degree, 0);
    for (Point p : base_prefix) {
      if (p >= degree) throw PreconditionError("base point out of range");
      if (in_prefix[p]) continue;
      in_prefix[p] = 1;
      order_.push_back(p);
    }
    for (Point p = 0; p < degree; ++p)
      if (!in_prefix[p]) order_.push_back(p);
    std::size_t forced = full_base ? degree : count_unique(base_prefix, degree);
    for (std::size_t i = 0; i < forced; ++i) add_level(order_[i]);

    for (const auto& g : gens) {
      if (g.degree() != degree) throw PreconditionError("generator degree mismatch");
      if (g.is_identity()) continue;
      bool dup = false;
      for (const auto& s : strong_) dup = dup || s == g;
      if (dup) continue;
      if (fixes_base(g)) add_level(first_moved(g));
      add_strong(g, levels_.size());
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) extend_orbit(l);
    schreier_sims();
    if (!full_base)
      while (!levels_.empty() && levels_.back().orbit.size() == 1) levels_.pop_back();
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  const ChainLevel& level(std::size_t i) const { return levels_[i]; }
  const std::vector<ChainLevel>& levels() const noexcept { return levels_; }
  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  QInt order() const {
    QInt o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  // Returns the residue and the level at which sifting stopped (depth() if it passed all).
  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t start = 0) const {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const auto& L = levels_[l];
      Point y = h[L.base];
      if (L.where[y] < 0) return {std::move(h), l};
      h = h * L.inverse[static_cast<std::size_t>(L.where[y])];
    }
    return {std::move(h), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    auto [r, l] = sift(g);
    return l == levels_.size() && r.is_identity();
  }

  // Strong generators of the stabilizer of the first `l` base points.
  std::vector<Permutation> stabilizer_generators(std::size_t l) const {
    std::vector<Permutation> out;
    if (l < levels_.size())
      for (auto i : levels_[l].gens) out.push_back(strong_[i]);
    return out;
  }

  Permutation random_element(std::mt19937_64& rng) const {
    Permutation g(degree_);
    for (std::size_t l = levels_.size(); l-- > 0;) {
      const auto& L = levels_[l];
      std::uniform_int_distribution<std::size_t> d(0, L.orbit.size() - 1);
      g = g * L.transversal[d(rng)];
    }
    return g;
  }

  // Visits every element exactly once; level 0 varies fastest.
  template <class F>
  void for_each_element(F&& f) const {
    const std::size_t k = levels_.size();
    if (k == 0) {
      f(Permutation(degree_));
      return;
    }
    std::vector<std::size_t> idx(k, 0);
    // suffix[l] = u_{k-1} ... u_{l}
    std::vector<Permutation> suffix(k + 1, Permutation(degree_));
    for (std::size_t l = k; l-- > 1;) suffix[l] = suffix[l + 1] * levels_[l].transversal[0];
    std::vector<Point> img(degree_);
    for (;;) {
      const Permutation& s = suffix[1];
      const auto& L0 = levels_[0];
      for (std::size_t a = 0; a < L0.orbit.size(); ++a) {
        Permutation g = s * L0.transversal[a];
        if constexpr (std::is_same_v<std::invoke_result_t<F, const Permutation&>, bool>) {
          if (!f(g)) return;
        } else {
          f(g);
        }
      }
      std::size_t l = 1;
      while (l < k && ++idx[l] == levels_[l].orbit.size()) idx[l++] = 0;
      if (l >= k) return;
      for (std::size_t m = l + 1; m-- > 1;) suffix[m] = suffix[m + 1] * levels_[m].transversal[idx[m]];
    }
  }

private:
  static std::size_t count_unique(std::span<const Point> pts, std::size_t degree) {
    std::vector<char> seen(degree, 0);
    std::size_t c = 0;
    for (Point p : pts)
      if (p < degree && !seen[p]) { seen[p] = 1; ++c; }
    return c;
  }

  bool fixes_base(const Permutation& g) const {
    for (const auto& l : levels_)
      if (g[l.base] != l.base) return false;
    return true;
  }

  Point first_moved(const Permutation& g) const {
    for (Point p : order_)
      if (g[p] != p) return p;
    throw Error("internal: identity has no moved point");
  }

  void add_level(Point b) {
    ChainLevel L;
    L.base = b;
    L.where.assign(degree_, -1);
    L.orbit.push_back(b);
    L.where[b] = 0;
    L.transversal.emplace_back(degree_);
    L.inverse.emplace_back(degree_);
    levels_.push_back(std::move(L));
  }

  // Registers g in every level l with g fixing the first l base points, up to `upto`.
  void add_strong(const Permutation& g, std::size_t upto) {
    auto id = static_cast<std::uint32_t>(strong_.size());
    strong_.push_back(g);
    for (std::size_t l = 0; l < levels_.size() && l <= upto; ++l) {
      levels_[l].gens.push_back(id);
      levels_[l].done.push_back(0);
      if (g[levels_[l].base] != levels_[l].base) break;
    }
  }

  void extend_orbit(std::size_t l) {
    auto& L = levels_[l];
    for (std::size_t a = 0; a < L.orbit.size(); ++a) {
      for (auto gi : L.gens) {
        const auto& s = strong_[gi];
        Point y = s[L.orbit[a]];
        if (L.where[y] >= 0) continue;
        L.where[y] = static_cast<std::int32_t>(L.orbit.size());
        L.orbit.push_back(y);
        Permutation t = L.transversal[a] * s;
        L.inverse.push_back(t.inverse());
        L.transversal.push_back(std::move(t));
      }
    }
  }

  void schreier_sims() {
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restarted = false;
      for (std::size_t gpos = 0; gpos < levels_[i].gens.size() && !restarted; ++gpos) {
        while (levels_[i].done[gpos] < levels_[i].orbit.size()) {
          auto& L = levels_[i];
          std::size_t a = L.done[gpos]++;
          const Permutation& s = strong_[L.gens[gpos]];
          Point y = s[L.orbit[a]];
          Permutation h = L.transversal[a] * s * L.inverse[static_cast<std::size_t>(L.where[y])];
          if (h.is_identity()) continue;
          auto [r, j] = sift(std::move(h), i + 1);
          if (r.is_identity()) continue;
          if (j == levels_.size()) add_level(first_moved(r));
          add_strong(r, j);
          for (std::size_t l = 0; l <= j; ++l) extend_orbit(l);
          i = j + 1;
          restarted = true;
          break;
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Point> order_;
  std::vector<ChainLevel> levels_;
  std::vector<Permutation> strong_;
};

class PermGroup {
public:
  PermGroup() : lazy_(std::make_shared<Lazy>()) {}

  PermGroup(std::size_t degree, std::vector<Permutation> gens)
      : degree_(degree), gens_(std::move(gens)), lazy_(std::make_shared<Lazy>()) {
    for (const auto& g : gens_)
      if (g.degree() != degree) throw StructuralError("generator degree " + std::to_string(g.degree()) + " differs from group degree " + std::to_string(degree));
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }

  const StabChain& chain() const {
    std::call_once(lazy_->flag, [&] { lazy_->chain = std::make_shared<const StabChain>(degree_, gens_); });
    return *lazy_->chain;
  }

  StabChain chain_with_base(std::span<const Point> prefix, bool full_base = false) const {
    return StabChain(degree_, gens_, prefix, full_base);
  }

  QInt order() const { return chain().order(); }
  bool contains(const Permutation& g) const { return chain().contains(g); }

  std::vector<Point> orbit(Point x) const {
    if (x >= degree_) throw PreconditionError("point out of range");
    std::vector<char> seen(degree_, 0);
    std::vector<Point> out{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens_) {
        Point y = g[out[i]];
        if (!seen[y]) { seen[y] = 1; out.push_back(y); }
      }
    return out;
  }

  std::vector<std::vector<Point>> orbits() const {
    std::vector<char> seen(degree_, 0);
    std::vector<std::vector<Point>> out;
    for (Point p = 0; p < degree_; ++p) {
      if (seen[p]) continue;
      auto o = orbit(p);
      for (Point q : o) seen[q] = 1;
      out.push_back(std::move(o));
    }
    return out;
  }

  bool is_transitive() const { return degree_ <= 1 || orbit(0).size() == degree_; }

  Permutation random_element(std::mt19937_64& rng) const { return chain().random_element(rng); }

  template <class F>
  void for_each_element(F&& f) const { chain().for_each_element(std::forward<F>(f)); }

  std::vector<Permutation> elements(std::size_t limit = 1u << 22) const {
    if (order() > limit) throw CapacityError("group order " + order().str() + " exceeds enumeration limit");
    std::vector<Permutation> out;
    for_each_element([&](const Permutation& g) { out.push_back(g); });
    return out;
  }

private:
  struct Lazy {
    std::once_flag flag;
    std::shared_ptr<const StabChain> chain;
  };
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::shared_ptr<Lazy> lazy_;
};

inline std::vector<Point> orbit_of(const PermGroup& g, Point x) { return g.orbit(x); }

inline StabChain build_chain(const PermGroup& g, std::span<const Point> base_hint = {}) {
  return g.chain_with_base(base_hint);
}

inline PermGroup point_stabilizer(const PermGroup& g, Point x) {
  if (x >= g.degree()) throw PreconditionError("point out of range");
  Point b[1] = {x};
  StabChain c = g.chain_with_base(b);
  auto gens = c.depth() > 1 ? c.stabilizer_generators(1) : std::vector<Permutation>{};
  if (c.depth() == 0 || c.level(0).base != x) gens = c.strong_generators();
  return PermGroup(g.degree(), std::move(gens));
}

inline bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) return false;
  for (const auto& s : h.generators())
    if (!g.contains(s)) return false;
  return true;
}

} // namespace selfsep
