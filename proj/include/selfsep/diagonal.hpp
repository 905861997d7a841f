#pragma once

#include <random>
#include <unordered_map>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "qformulas.hpp"
#include "zoo.hpp"

namespace selfsep {

// Simple diagonal setting: T^k ⋊ (Out(T) × Sym(k)) on the cosets of diag(T) in T^k,
// a coset being written (t_1, ..., t_{k-1}, 1) and stored as a mixed-radix index.
class DiagonalGroup {
public:
  DiagonalGroup(const PermGroup& t, std::vector<Permutation> outer, std::size_t k, std::size_t max_degree = 100000)
      : k_(k) {
    if (k < 3) throw PreconditionError("diagonal group needs k >= 3");
    if (t.order() > 5000) throw CapacityError("diagonal group: T too large");
    const std::size_t n = static_cast<std::size_t>(t.order());
    std::size_t deg = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      deg *= n;
      if (deg > max_degree) throw CapacityError("diagonal domain of size " + std::to_string(deg) + "+ exceeds limit");
    }
    degree_ = deg;
    table_ = GroupTable::of(t, 5000);
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> pos;
    for (std::size_t i = 0; i < table_.order; ++i) pos.emplace(table_.elements[i], static_cast<std::uint32_t>(i));
    for (const auto& g : t.generators()) t_gens_.push_back(pos.at(g));
    for (const auto& o : outer) {
      // conjugation inside the ambient symmetric group
      std::vector<std::uint32_t> aut(table_.order);
      Permutation oi = o.inverse();
      for (std::size_t i = 0; i < table_.order; ++i) {
        auto it = pos.find(oi * table_.elements[i] * o);
        if (it == pos.end()) throw PreconditionError("outer element does not normalise T");
        aut[i] = it->second;
      }
      outer_.push_back(std::move(aut));
    }
    build_generators();
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t k() const noexcept { return k_; }
  const GroupTable& table() const noexcept { return table_; }
  QInt order() const {
    QInt o = qpow(QInt(table_.order), static_cast<long long>(k_));
    for (std::size_t i = 2; i <= k_; ++i) o *= i;
    return o * (outer_.empty() ? 1 : 2);
  }

  std::vector<std::uint32_t> decode(std::size_t idx) const {
    std::vector<std::uint32_t> t(k_, 0);
    for (std::size_t i = 0; i + 1 < k_; ++i) {
      t[i] = static_cast<std::uint32_t>(idx % table_.order);
      idx /= table_.order;
    }
    return t;
  }
  std::size_t encode(const std::vector<std::uint32_t>& t) const {
    std::size_t idx = 0;
    for (std::size_t i = k_ - 1; i-- > 0;) idx = idx * table_.order + t[i];
    return idx;
  }

  // Right multiplication by (x_1, ..., x_k) followed by renormalisation.
  std::vector<std::uint32_t> right(std::vector<std::uint32_t> t, const std::vector<std::uint32_t>& x) const {
    for (std::size_t i = 0; i < k_; ++i) t[i] = table_.times(t[i], x[i]);
    return normalise(std::move(t));
  }
  // Coordinate permutation: position i receives t_{i a^-1}.
  std::vector<std::uint32_t> permute(const std::vector<std::uint32_t>& t, const Permutation& a) const {
    std::vector<std::uint32_t> s(k_);
    for (std::size_t i = 0; i < k_; ++i) s[a[static_cast<Point>(i)]] = t[i];
    return normalise(std::move(s));
  }
  std::vector<std::uint32_t> automorphism(std::vector<std::uint32_t> t, std::size_t which) const {
    for (auto& x : t) x = outer_.at(which)[x];
    return t;
  }

  const std::vector<Permutation>& right_generators() const noexcept { return right_; }
  const std::vector<Permutation>& left_generators() const noexcept { return left_; }
  const std::vector<Permutation>& sym_generators() const noexcept { return sym_; }
  const std::vector<Permutation>& out_generators() const noexcept { return out_; }
  const std::vector<Permutation>& sym_coordinate_perms() const noexcept { return sym_coord_; }
  const std::vector<std::uint32_t>& t_generators() const noexcept { return t_gens_; }
  std::size_t outer_count() const noexcept { return outer_.size(); }

  // Generator of the socle acting by x on coordinate j (j = k-1 is the left-diagonal action).
  Permutation coordinate_generator(std::size_t j, std::uint32_t x) const {
    std::vector<std::uint32_t> xs(k_, 0);
    xs[j] = x;
    return make([&](const std::vector<std::uint32_t>& t) { return right(t, xs); });
  }

  template <class F>
  Permutation make(F&& f) const {
    std::vector<Point> img(degree_);
    for (std::size_t i = 0; i < degree_; ++i) img[i] = static_cast<Point>(encode(f(decode(i))));
    return Permutation(std::move(img));
  }

private:
  std::vector<std::uint32_t> normalise(std::vector<std::uint32_t> t) const {
    const std::uint32_t c = table_.inv[t[k_ - 1]];
    for (auto& x : t) x = table_.times(c, x);
    return t;
  }

  void build_generators() {
    for (std::size_t j = 0; j + 1 < k_; ++j)
      for (auto x : t_gens_) right_.push_back(coordinate_generator(j, x));
    for (auto x : t_gens_) left_.push_back(coordinate_generator(k_ - 1, x));
    sym_coord_ = {Permutation::from_cycles(k_, {{0, 1}})};
    std::vector<Point> cyc(k_);
    for (std::size_t i = 0; i < k_; ++i) cyc[i] = static_cast<Point>(i);
    sym_coord_.push_back(Permutation::from_cycles(k_, {cyc}));
    for (const auto& a : sym_coord_) sym_.push_back(make([&](const std::vector<std::uint32_t>& t) { return permute(t, a); }));
    for (std::size_t w = 0; w < outer_.size(); ++w) out_.push_back(make([&](const std::vector<std::uint32_t>& t) { return automorphism(t, w); }));
  }

  std::size_t k_ = 0, degree_ = 0;
  GroupTable table_;
  std::vector<std::uint32_t> t_gens_;
  std::vector<std::vector<std::uint32_t>> outer_;
  std::vector<Permutation> right_, left_, sym_, out_, sym_coord_;
};

// Alt(5) with Out = <conjugation by (0 1)>.
inline DiagonalGroup diagonal_witness_group(std::size_t k, std::size_t max_degree = 100000) {
  return DiagonalGroup(alternating_group(5), {Permutation::from_cycles(5, {{0, 1}})}, k, max_degree);
}

struct DiagonalReport {
  WitnessConstruction construction;
  std::size_t degree = 0;
  QInt group_order;
  std::vector<std::uint32_t> b;  // element indices of T
  std::size_t a0 = 0, a1 = 0;
  bool coverage = false;         // B^-1 B = T
  bool left_invariant = false, sym_invariant = false, out_invariant = false;
  bool commute = false;          // left-diagonal and right generators commute
  bool sym_formula = false;      // Sym(k) generators permute socle coordinates
  std::size_t samples = 0, disjoint = 0;
  bool ok() const { return coverage && left_invariant && sym_invariant && out_invariant && commute && sym_formula && disjoint == 0; }
};

inline DiagonalReport diagonal_witness(const DiagonalGroup& g, std::uint64_t seed = 1, std::size_t samples = 10000) {
  DiagonalReport r;
  const GroupTable& t = g.table();
  const std::size_t k = g.k();
  r.degree = g.degree();
  r.group_order = g.order();

  // D D^-1 = T for the transversal basis, so B = D^-1 has B^-1 B = T.
  auto tb = transversal_difference_basis(t, std::nullopt, seed);
  for (auto d : tb.basis.basis) r.b.push_back(t.inv[d]);
  std::sort(r.b.begin(), r.b.end());
  {
    std::vector<char> hit(t.order, 0);
    for (auto x : r.b)
      for (auto y : r.b) hit[t.times(t.inv[x], y)] = 1;
    r.coverage = std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
  }

  // A0 = B^{k-1}, A1 = T A0 (left diagonal), A = A1^{Out}
  PointSet a0(g.degree());
  std::vector<std::uint32_t> tup(k, 0);
  std::vector<std::size_t> digit(k - 1, 0);
  for (;;) {
    for (std::size_t i = 0; i + 1 < k; ++i) tup[i] = r.b[digit[i]];
    a0.insert(static_cast<Point>(g.encode(tup)));
    std::size_t i = 0;
    while (i + 1 < k && ++digit[i] == r.b.size()) digit[i++] = 0;
    if (i + 1 == k) break;
  }
  r.a0 = a0.size();
  PointSet a1(g.degree());
  for (Point p : a0.points()) {
    auto base = g.decode(p);
    for (std::uint32_t c = 0; c < t.order; ++c) {
      auto s = base;
      for (std::size_t i = 0; i + 1 < k; ++i) s[i] = t.times(c, s[i]);
      a1.insert(static_cast<Point>(g.encode(s)));
    }
  }
  r.a1 = a1.size();
  PointSet a = a1;
  for (std::size_t w = 0; w < g.outer_count(); ++w)
    for (Point p : a1.points()) a.insert(static_cast<Point>(g.encode(g.automorphism(g.decode(p), w))));

  auto invariant = [&](const std::vector<Permutation>& gens) {
    return std::all_of(gens.begin(), gens.end(), [&](const Permutation& x) { return a.image(x) == a; });
  };
  r.left_invariant = invariant(g.left_generators());
  r.sym_invariant = invariant(g.sym_generators());
  r.out_invariant = invariant(g.out_generators());

  r.commute = true;
  for (const auto& l : g.left_generators())
    for (const auto& x : g.right_generators()) r.commute = r.commute && l * x == x * l;

  // a^-1 * c_j(x) * a = c_{j^a}(x)
  r.sym_formula = true;
  for (std::size_t s = 0; s < g.sym_generators().size(); ++s) {
    const auto& pa = g.sym_generators()[s];
    const auto& ca = g.sym_coordinate_perms()[s];
    for (std::size_t j = 0; j < k; ++j)
      for (auto x : g.t_generators())
        r.sym_formula = r.sym_formula && pa.inverse() * g.coordinate_generator(j, x) * pa == g.coordinate_generator(ca[static_cast<Point>(j)], x);
  }

  // random elements x · out · a of the full group
  std::mt19937_64 rng(seed);
  std::vector<Point> pts = a.points();
  std::vector<Point> sk(k);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<std::uint32_t> x(k);
    for (auto& v : x) v = static_cast<std::uint32_t>(rng() % t.order);
    const bool use_out = g.outer_count() && (rng() & 1);
    for (std::size_t i = 0; i < k; ++i) sk[i] = static_cast<Point>(i);
    std::shuffle(sk.begin(), sk.end(), rng);
    Permutation perm(sk);
    bool meet = false;
    for (Point p : pts) {
      auto img = g.right(g.decode(p), x);
      if (use_out) img = g.automorphism(std::move(img), 0);
      img = g.permute(img, perm);
      if (a.contains(static_cast<Point>(g.encode(img)))) {
        meet = true;
        break;
      }
    }
    r.disjoint += !meet;
  }
  r.samples = samples;

  auto& w = r.construction;
  w.spec = "diagonal:alt5:" + std::to_string(k);
  w.domain_kind = "diagonal";
  w.witness = a;
  w.actual = a.size();
  w.predicted = a.size();
  return r;
}

} // namespace selfsep
