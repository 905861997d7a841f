#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "actions.hpp"
#include "bitset.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "numeric_bounds.hpp"
#include "point_set.hpp"

namespace selfsep {

enum class Strategy { automatic, enumeration, backtrack };
enum class Verdict { separable, not_separable };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "automatic";
    case Strategy::enumeration: return "enumeration";
    case Strategy::backtrack: return "backtrack";
  }
  return "?";
}
inline std::string to_string(Verdict v) { return v == Verdict::separable ? "separable" : "not_separable"; }

struct SeparabilityResult {
  Verdict verdict = Verdict::not_separable;
  std::optional<Permutation> witness;
  Strategy strategy = Strategy::backtrack;
  std::uint64_t nodes_explored = 0;

  bool separable() const noexcept { return verdict == Verdict::separable; }
};

struct SeparabilityOptions {
  Strategy strategy = Strategy::automatic;
  std::uint64_t enumeration_limit = 10'000'000;
  std::uint64_t automatic_enumeration_below = 20'000;
};

using Clock = std::chrono::steady_clock;

// Depth-first search over a stabilizer chain for g with A^g inside the complement.
// A node fixes u_0..u_{i-1}; the undetermined part lies in G^(i), so each G^(i)-orbit
// O must satisfy |O ∩ C'| >= |O ∩ A| where C' is the preimage of the complement.
class Backtracker {
public:
  enum class Outcome { found, exhausted, timeout };

  explicit Backtracker(const StabChain& chain) : chain_(chain), n_(chain.degree()) {
    const std::size_t k = chain.depth();
    orbit_id_.assign(k + 1, std::vector<std::uint32_t>(n_));
    orbit_count_.assign(k + 1, 0);
    for (std::size_t l = 0; l <= k; ++l) {
      UnionFind uf(n_);
      if (l < k)
        for (const auto& s : chain.stabilizer_generators(l))
          for (Point x = 0; x < n_; ++x) uf.unite(x, s[x]);
      std::vector<std::int64_t> id(n_, -1);
      std::uint32_t next = 0;
      for (Point x = 0; x < n_; ++x) {
        auto r = uf.find(x);
        if (id[r] < 0) id[r] = next++;
        orbit_id_[l][x] = static_cast<std::uint32_t>(id[r]);
      }
      orbit_count_[l] = next;
    }
  }

  Outcome search(const Bits& a, std::optional<Permutation>& witness, std::uint64_t& nodes,
                 std::optional<Clock::time_point> deadline = std::nullopt) {
    a_ = &a;
    a_points_.clear();
    a.for_each([&](Point p) { a_points_.push_back(p); });
    const std::size_t k = chain_.depth();
    need_.assign(k + 1, {});
    for (std::size_t l = 0; l <= k; ++l) {
      need_[l].assign(orbit_count_[l], 0);
      for (Point p : a_points_) ++need_[l][orbit_id_[l][p]];
    }
    have_.assign(k + 1, {});
    for (std::size_t l = 0; l <= k; ++l) have_[l].assign(orbit_count_[l], 0);
    nodes_ = 0;
    deadline_ = deadline;
    timed_out_ = false;
    std::vector<Point> r(n_);
    for (Point x = 0; x < n_; ++x) r[x] = x;
    bool found = dfs(0, r);
    nodes += nodes_;
    if (found) {
      witness = Permutation(found_);
      return Outcome::found;
    }
    return timed_out_ ? Outcome::timeout : Outcome::exhausted;
  }

private:
  bool separates(const std::vector<Point>& r) const {
    for (Point p : a_points_)
      if (a_->test(r[p])) return false;
    return true;
  }

  bool dfs(std::size_t level, const std::vector<Point>& r) {
    ++nodes_;
    if (deadline_ && (nodes_ & 1023) == 0 && Clock::now() > *deadline_) {
      timed_out_ = true;
      return false;
    }
    if (timed_out_) return false;
    if (separates(r)) {
      found_ = r;
      return true;
    }
    const std::size_t k = chain_.depth();
    if (level == k) return false;
    auto& have = have_[level];
    std::fill(have.begin(), have.end(), 0);
    const auto& oid = orbit_id_[level];
    for (Point x = 0; x < n_; ++x)
      if (!a_->test(r[x])) ++have[oid[x]];
    const auto& need = need_[level];
    for (std::size_t o = 0; o < need.size(); ++o)
      if (have[o] < need[o]) return false;
    const auto& L = chain_.level(level);
    std::vector<Point> next(n_);
    for (std::size_t j = 0; j < L.orbit.size(); ++j) {
      const auto& u = L.transversal[j];
      // the image of the base point is fixed from here on
      Point img = r[u[L.base]];
      if (a_->test(L.base) && a_->test(img)) continue;
      for (Point x = 0; x < n_; ++x) next[x] = r[u[x]];
      if (dfs(level + 1, next)) return true;
      if (timed_out_) return false;
    }
    return false;
  }

  const StabChain& chain_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> orbit_id_;
  std::vector<std::uint32_t> orbit_count_;
  std::vector<std::vector<std::uint32_t>> need_, have_;
  const Bits* a_ = nullptr;
  std::vector<Point> a_points_;
  std::vector<Point> found_;
  std::uint64_t nodes_ = 0;
  std::optional<Clock::time_point> deadline_;
  bool timed_out_ = false;
};

namespace detail {
inline void check_inputs(const PermGroup& g, const PointSet& a) {
  if (a.degree() != g.degree()) throw PreconditionError("set degree differs from group degree");
  if (a.empty()) throw PreconditionError("self-separability needs a non-empty set");
  if (!g.is_transitive()) throw PreconditionError("self-separability needs a transitive group");
}

inline void verify_witness(const PointSet& a, const Permutation& g) {
  if (a.image(g).intersects(a)) throw Error("internal: separating witness failed re-verification");
}
} // namespace detail

inline SeparabilityResult is_self_separable(const PermGroup& g, const PointSet& a, const SeparabilityOptions& opt = {}) {
  detail::check_inputs(g, a);
  SeparabilityResult res;
  Strategy s = opt.strategy;
  if (s == Strategy::automatic) s = g.order() <= opt.automatic_enumeration_below ? Strategy::enumeration : Strategy::backtrack;
  res.strategy = s;
  if (2 * a.size() > g.degree()) {
    res.verdict = Verdict::not_separable;
    return res;
  }
  if (s == Strategy::enumeration) {
    if (g.order() > opt.enumeration_limit) throw CapacityError("group order " + g.order().str() + " exceeds the enumeration limit");
    Bits bits(a);
    auto pts = a.points();
    g.for_each_element([&](const Permutation& x) -> bool {
      ++res.nodes_explored;
      for (Point p : pts)
        if (bits.test(x[p])) return true;
      res.witness = x;
      return false;
    });
  } else {
    auto pts = a.points();
    StabChain chain = g.chain_with_base(pts);
    Backtracker bt(chain);
    Bits bits(a);
    bt.search(bits, res.witness, res.nodes_explored);
  }
  res.verdict = res.witness ? Verdict::separable : Verdict::not_separable;
  if (res.witness) detail::verify_witness(a, *res.witness);
  return res;
}

// Flat table of element images for groups small enough to list.
class ElementTable {
public:
  ElementTable(const PermGroup& g, std::size_t max_bytes) : n_(g.degree()) {
    if (n_ > 255) throw CapacityError("element table needs degree <= 255");
    QInt bytes = g.order() * n_;
    if (bytes > max_bytes) throw CapacityError("element table too large");
    data_.reserve(static_cast<std::size_t>(bytes));
    g.for_each_element([&](const Permutation& x) {
      if (x.is_identity()) return;
      for (Point p = 0; p < n_; ++p) data_.push_back(static_cast<std::uint8_t>(x[p]));
    });
    count_ = data_.size() / (n_ ? n_ : 1);
  }
  std::size_t size() const noexcept { return count_; }
  const std::uint8_t* row(std::size_t i) const noexcept { return data_.data() + i * n_; }
  Permutation element(std::size_t i) const {
    std::vector<Point> img(row(i), row(i) + n_);
    return Permutation(std::move(img));
  }

private:
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> data_;  // non-identity elements only
};

struct SizeStat {
  std::size_t size = 0;
  std::uint64_t tested = 0;
};

struct MOptions {
  std::size_t max_degree = 64;
  double budget_secs = 600;
  unsigned threads = 1;
  Strategy strategy = Strategy::automatic;
  std::size_t table_bytes = std::size_t(1) << 30;
  bool use_homogeneity = true;
  std::uint64_t homogeneity_limit = 5'000'000;
};

struct MResult {
  bool complete = false;
  std::optional<std::size_t> m;
  std::optional<PointSet> minimal_witness;
  std::size_t lower_bound_used = 0;
  std::size_t upper_bound = 0;
  std::size_t homogeneity = 0;
  std::vector<SizeStat> sizes_exhausted;
  Strategy strategy = Strategy::enumeration;
  double elapsed_secs = 0;
  std::uint64_t candidates_tested = 0;
};

namespace detail {

struct MaskTester {
  virtual ~MaskTester() = default;
  // true if some element maps the set into its complement
  virtual bool separable(std::uint64_t mask) = 0;
};

class TableTester : public MaskTester {
public:
  explicit TableTester(const ElementTable& t) : t_(t) {}
  bool separable(std::uint64_t mask) override {
    std::uint8_t pts[64];
    std::size_t k = 0;
    for (std::uint64_t x = mask; x; x &= x - 1) pts[k++] = static_cast<std::uint8_t>(std::countr_zero(x));
    for (std::size_t c = 0; c < recent_.size(); ++c)
      if (works(t_.row(recent_[c]), pts, k, mask)) return true;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (works(t_.row(i), pts, k, mask)) {
        if (recent_.size() < 32) recent_.push_back(i);
        else recent_[next_++ % 32] = i;
        return true;
      }
    }
    return false;
  }

private:
  static bool works(const std::uint8_t* img, const std::uint8_t* pts, std::size_t k, std::uint64_t mask) {
    for (std::size_t j = 0; j < k; ++j)
      if ((mask >> img[pts[j]]) & 1u) return false;
    return true;
  }
  const ElementTable& t_;
  std::vector<std::size_t> recent_;
  std::size_t next_ = 0;
};

class BacktrackTester : public MaskTester {
public:
  BacktrackTester(const StabChain& c, std::size_t n) : bt_(c), n_(n) {}
  bool separable(std::uint64_t mask) override {
    Bits b(n_);
    b.word(0) = mask;
    std::optional<Permutation> w;
    std::uint64_t nodes = 0;
    return bt_.search(b, w, nodes) == Backtracker::Outcome::found;
  }

private:
  Backtracker bt_;
  std::size_t n_;
};

} // namespace detail

// Exact m(G): ascends from the Neumann lower bound; candidates contain {0..k-1}
// where k is the certified homogeneity degree, and are visited in colex order.
inline MResult compute_m(const PermGroup& g, const MOptions& opt = {}) {
  auto start = Clock::now();
  const std::size_t n = g.degree();
  if (n > 64 || n > opt.max_degree) throw CapacityError("compute_m: degree " + std::to_string(n) + " exceeds limit " + std::to_string(std::min<std::size_t>(64, opt.max_degree)));
  if (!g.is_transitive()) throw PreconditionError("compute_m needs a transitive group");
  MResult res;
  if (n == 1) {
    res.m = 1;
    res.minimal_witness = PointSet(1, {0});
    res.lower_bound_used = res.upper_bound = res.homogeneity = 1;
    res.complete = true;
    return res;
  }
  const QInt order = g.order();
  QInt s = exact_div(order, n);
  res.lower_bound_used = neumann_lower(n, s);
  res.upper_bound = trivial_upper(n);
  res.homogeneity = 1;
  if (opt.use_homogeneity) res.homogeneity = std::max<std::size_t>(1, homogeneity_degree(g, res.upper_bound, opt.homogeneity_limit));
  Strategy strat = opt.strategy;
  if (strat == Strategy::automatic)
    strat = order * n <= opt.table_bytes && order <= 50'000'000 ? Strategy::enumeration : Strategy::backtrack;
  res.strategy = strat;
  std::unique_ptr<ElementTable> table;
  std::unique_ptr<StabChain> chain;
  if (strat == Strategy::enumeration) table = std::make_unique<ElementTable>(g, opt.table_bytes);
  else chain = std::make_unique<StabChain>(g.chain_with_base({}));
  auto make_tester = [&]() -> std::unique_ptr<detail::MaskTester> {
    if (table) return std::make_unique<detail::TableTester>(*table);
    return std::make_unique<detail::BacktrackTester>(*chain, n);
  };
  auto deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opt.budget_secs));
  const unsigned threads = std::max(1u, opt.threads);

  for (std::size_t size = res.lower_bound_used; size <= res.upper_bound; ++size) {
    const std::size_t p = std::min(res.homogeneity, size);
    const std::size_t r = size - p;
    const std::uint64_t prefix = low_mask(p);
    const std::uint64_t total = binom64(n - p, r);
    std::atomic<std::uint64_t> best{UINT64_MAX};
    std::atomic<bool> out_of_time{false};
    std::atomic<std::uint64_t> tested{0};
    const std::uint64_t block = 4096;
    const std::uint64_t blocks = (total + block - 1) / block;
    auto worker = [&](unsigned w) {
      auto tester = make_tester();
      for (std::uint64_t b = w; b < blocks; b += threads) {
        std::uint64_t lo = b * block, hi = std::min(total, lo + block);
        if (lo >= best.load()) return;
        std::uint64_t rest = r == 0 ? 0 : colex_unrank(lo, r);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          if (idx >= best.load()) return;
          std::uint64_t mask = prefix | (rest << p);
          tested.fetch_add(1, std::memory_order_relaxed);
          if (!tester->separable(mask)) {
            std::uint64_t cur = best.load();
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {}
            return;
          }
          if (r > 0) rest = next_colex(rest);
          if ((idx & 255) == 0 && Clock::now() > deadline) {
            out_of_time = true;
            return;
          }
        }
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    res.candidates_tested += tested.load();
    if (best.load() != UINT64_MAX && !out_of_time) {
      std::uint64_t rest = r == 0 ? 0 : colex_unrank(best.load(), r);
      res.m = size;
      res.minimal_witness = PointSet::from_mask(n, prefix | (rest << p));
      res.complete = true;
      break;
    }
    if (out_of_time) {
      // a witness found before the deadline is still a valid upper bound
      if (best.load() != UINT64_MAX) {
        std::uint64_t rest = r == 0 ? 0 : colex_unrank(best.load(), r);
        res.minimal_witness = PointSet::from_mask(n, prefix | (rest << p));
      }
      break;
    }
    res.sizes_exhausted.push_back({size, total});
  }
  res.elapsed_secs = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

} // namespace selfsep
