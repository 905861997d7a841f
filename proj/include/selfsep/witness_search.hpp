#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "point_set.hpp"
#include "separability.hpp"

namespace selfsep {

struct WitnessSearchOptions {
  double budget_secs = 60;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t max_samples = UINT64_MAX;
  std::size_t pool_size = 256;
  std::size_t epoch = 64;  // samples per worker between synchronisation points
};

struct WitnessSearchResult {
  std::optional<PointSet> witness;
  std::uint64_t samples = 0;
  std::uint64_t pool_rejections = 0;
  std::uint64_t backtrack_calls = 0;
  std::uint64_t nodes_explored = 0;
  double elapsed_secs = 0;
  bool budget_exhausted = false;
};

namespace detail {

class SampleWorker {
public:
  SampleWorker(const PermGroup& g, std::size_t size, std::uint64_t seed, unsigned index, std::size_t pool_size)
      : g_(g), n_(g.degree()), size_(size), rng_(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1))), pool_size_(pool_size) {
    perm_.resize(n_);
    std::iota(perm_.begin(), perm_.end(), 0u);
  }

  // Runs up to `count` samples; returns the first verified non-separable set.
  std::optional<PointSet> run(std::size_t count, WitnessSearchResult& stats) {
    for (std::size_t t = 0; t < count; ++t) {
      // partial Fisher-Yates draws a uniform size-subset
      for (std::size_t i = 0; i < size_; ++i) {
        std::uniform_int_distribution<std::size_t> d(i, n_ - 1);
        std::swap(perm_[i], perm_[d(rng_)]);
      }
      ++stats.samples;
      Bits a(n_);
      for (std::size_t i = 0; i < size_; ++i) a.set(perm_[i]);
      if (pool_hit(a)) {
        ++stats.pool_rejections;
        continue;
      }
      std::vector<Point> base(perm_.begin(), perm_.begin() + static_cast<std::ptrdiff_t>(size_));
      StabChain chain = g_.chain_with_base(base);
      Backtracker bt(chain);
      std::optional<Permutation> w;
      ++stats.backtrack_calls;
      if (bt.search(a, w, stats.nodes_explored) == Backtracker::Outcome::found) {
        remember(*w);
        continue;
      }
      std::sort(base.begin(), base.end());
      return PointSet::of(n_, base);
    }
    return std::nullopt;
  }

private:
  bool pool_hit(const Bits& a) const {
    for (const auto& g : pool_) {
      bool ok = true;
      for (std::size_t i = 0; i < size_ && ok; ++i) ok = !a.test(g[perm_[i]]);
      if (ok) return true;
    }
    return false;
  }
  void remember(const Permutation& g) {
    if (pool_.size() < pool_size_) pool_.push_back(g);
    else if (pool_size_ > 0) pool_[next_++ % pool_size_] = g;
  }

  const PermGroup& g_;
  std::size_t n_, size_;
  std::mt19937_64 rng_;
  std::size_t pool_size_;
  std::vector<Point> perm_;
  std::vector<Permutation> pool_;
  std::size_t next_ = 0;
};

} // namespace detail

// Seeded random sampling of size-subsets; each candidate surviving a pool of known
// separators is decided exactly by backtrack. Workers advance in lock-step epochs
// so the reported witness depends only on the seed and the thread count.
inline WitnessSearchResult random_witness_search(const PermGroup& g, std::size_t size, const WitnessSearchOptions& opt = {}) {
  if (!g.is_transitive()) throw PreconditionError("witness search needs a transitive group");
  if (size < 1 || size > g.degree()) throw PreconditionError("witness size must lie in 1..degree");
  auto start = Clock::now();
  auto deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opt.budget_secs));
  (void)g.order();  // build the shared chain before workers start
  const unsigned threads = std::max(1u, opt.threads);
  std::vector<detail::SampleWorker> workers;
  for (unsigned w = 0; w < threads; ++w) workers.emplace_back(g, size, opt.seed, w, opt.pool_size);
  std::vector<WitnessSearchResult> stats(threads);
  std::vector<std::optional<PointSet>> found(threads);
  WitnessSearchResult res;
  std::uint64_t done = 0;
  while (!res.witness) {
    if (Clock::now() > deadline || done >= opt.max_samples) {
      res.budget_exhausted = true;
      break;
    }
    std::uint64_t left = opt.max_samples - done;
    std::size_t chunk = static_cast<std::size_t>(std::min<std::uint64_t>(opt.epoch, left / threads + (left % threads != 0)));
    if (threads == 1) {
      found[0] = workers[0].run(chunk, stats[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back([&, w] { found[w] = workers[w].run(chunk, stats[w]); });
      for (auto& t : pool) t.join();
    }
    done += chunk * threads;
    for (unsigned w = 0; w < threads && !res.witness; ++w)
      if (found[w]) res.witness = found[w];
  }
  for (const auto& s : stats) {
    res.samples += s.samples;
    res.pool_rejections += s.pool_rejections;
    res.backtrack_calls += s.backtrack_calls;
    res.nodes_explored += s.nodes_explored;
  }
  if (res.witness && is_self_separable(g, *res.witness, {Strategy::backtrack}).separable())
    throw Error("internal: sampled witness failed re-verification");
  res.elapsed_secs = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

} // namespace selfsep
