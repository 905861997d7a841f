#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "actions.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "group.hpp"
#include "linalg.hpp"

namespace selfsep {

enum class LabelKind { point, subset, tuple, vector, subspace, element, coset };

struct LabeledDomain {
  std::string kind = "natural";
  LabelKind label_kind = LabelKind::point;
  std::size_t n = 0;
  std::vector<std::vector<Point>> tuples;  // subset / tuple labels
  std::vector<Vec> vectors;
  std::vector<Matrix> subspaces;
  std::vector<Permutation> elements;  // regular elements or coset representatives

  std::size_t size() const noexcept { return n; }

  std::string label(std::size_t i, Point offset = 0) const {
    auto join = [&](const auto& xs, Point off, const char* open, const char* close) {
      std::string s = open;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(xs[j] + off);
      }
      return s + close;
    };
    switch (label_kind) {
      case LabelKind::point: return std::to_string(i + offset);
      case LabelKind::subset: return join(tuples[i], offset, "{", "}");
      case LabelKind::tuple: return join(tuples[i], offset, "(", ")");
      case LabelKind::vector: return join(vectors[i], 0, "[", "]");
      case LabelKind::subspace: {
        std::string s = "<";
        for (std::size_t r = 0; r < subspaces[i].rows; ++r) {
          if (r) s += ';';
          s += join(subspaces[i].row(r), 0, "", "");
        }
        return s + ">";
      }
      case LabelKind::element:
      case LabelKind::coset: return elements[i].to_string(offset);
    }
    return {};
  }

  static LabeledDomain points(std::size_t n) {
    LabeledDomain d;
    d.n = n;
    return d;
  }
};

struct Elaborated {
  PermGroup group;
  LabeledDomain domain;
  std::string description;
  std::optional<FormedSpace> form;
  FieldPtr field;  // subspace domains
  std::optional<BlockSystem> blocks;
  std::optional<QInt> kernel_order;
  // Wreath factors when the group is H wr K.
  std::shared_ptr<const Elaborated> factor_h, factor_k;
  bool product_action = false;

  std::size_t degree() const { return group.degree(); }
};

// ---------- permutation families ----------

inline PermGroup symmetric_group(std::size_t n) {
  if (n == 0) throw StructuralError("Sym(0) is not supported");
  std::vector<Permutation> g;
  if (n >= 2) {
    std::vector<Point> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
    g.push_back(Permutation::from_cycles(n, {c}));
    g.push_back(Permutation::from_cycles(n, {{0, 1}}));
  }
  return PermGroup(n, std::move(g));
}

inline PermGroup alternating_group(std::size_t n) {
  if (n == 0) throw StructuralError("Alt(0) is not supported");
  std::vector<Permutation> g;
  if (n >= 3) {
    g.push_back(Permutation::from_cycles(n, {{0, 1, 2}}));
    std::vector<Point> c;
    for (std::size_t i = n % 2 ? 0 : 1; i < n; ++i) c.push_back(static_cast<Point>(i));
    if (c.size() > 1) g.push_back(Permutation::from_cycles(n, {c}));
  }
  return PermGroup(n, std::move(g));
}

inline PermGroup cyclic_group(std::size_t n) {
  if (n == 0) throw StructuralError("cyclic group of order 0");
  std::vector<Point> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
  return PermGroup(n, {Permutation::from_cycles(n, {c})});
}

// Dihedral group of order 2n on the n-gon.
inline PermGroup dihedral_group(std::size_t n) {
  if (n < 3) throw StructuralError("dihedral group needs n >= 3");
  std::vector<Point> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
  return PermGroup(n, {cyclic_group(n).generators()[0], Permutation(refl)});
}

inline PermGroup mathieu_group(unsigned which) {
  if (which == 11) {
    PermGroup g(11, {Permutation::parse("(0,1,2,3,4,5,6,7,8,9,10)", 11), Permutation::parse("(2,6,10,7)(3,9,4,5)", 11)});
    if (g.order() != 7920) throw Error("internal: M11 order check failed");
    return g;
  }
  if (which == 12) {
    PermGroup g(12, {Permutation::parse("(0,1,2,3,4,5,6,7,8,9,10)", 12), Permutation::parse("(2,6,10,7)(3,9,4,5)", 12),
                     Permutation::parse("(0,11)(1,10)(2,5)(3,7)(4,8)(6,9)", 12)});
    if (g.order() != 95040) throw Error("internal: M12 order check failed");
    return g;
  }
  throw UnsupportedError("only M11 and M12 are available");
}

// ---------- matrix groups ----------

// v -> frob^f(v) M
struct Semilinear {
  Matrix m;
  unsigned frob = 0;
};

inline Vec apply(const Field& F, const Semilinear& s, Vec v) {
  if (s.frob)
    for (auto& x : v) x = F.frobenius(x, s.frob);
  return vec_mul(F, v, s.m);
}

inline Matrix apply_to_subspace(const Field& F, const Semilinear& s, const Matrix& x) {
  Matrix y = s.frob ? frobenius(F, x, s.frob) : x;
  return row_space(F, mat_mul(F, y, s.m));
}

inline QInt gl_order(std::size_t d, unsigned q) {
  QInt o = qpow(q, static_cast<long long>(d * (d - 1) / 2));
  for (std::size_t i = 1; i <= d; ++i) o *= qpow(q, static_cast<long long>(i)) - 1;
  return o;
}

inline std::vector<Semilinear> sl_generators(const Field& F, std::size_t d) {
  std::vector<Semilinear> gens;
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (unsigned t = 0; t < F.degree(); ++t) {
      auto a = F.power_of_primitive(t);
      Matrix up = Matrix::identity(d), down = Matrix::identity(d);
      up.at(i, i + 1) = a;
      down.at(i + 1, i) = a;
      gens.push_back({up, 0});
      gens.push_back({down, 0});
    }
  return gens;
}

inline std::vector<Semilinear> gl_generators(const Field& F, std::size_t d) {
  auto gens = sl_generators(F, d);
  if (F.q() > 2) {
    Matrix m = Matrix::identity(d);
    m.at(0, 0) = F.primitive();
    gens.push_back({m, 0});
  }
  return gens;
}

inline PermGroup act_on_vectors(const Field& F, std::size_t d, const std::vector<Semilinear>& gens, bool include_zero,
                                const std::vector<Vec>* translations = nullptr) {
  const std::size_t total = ipow(F.q(), d);
  const std::size_t off = include_zero ? 0 : 1;
  std::vector<Permutation> perms;
  for (const auto& s : gens) {
    std::vector<Point> img(total - off);
    for (std::size_t i = off; i < total; ++i)
      img[i - off] = static_cast<Point>(vector_index(apply(F, s, vector_from_index(i, d, F.q())), F.q()) - off);
    perms.emplace_back(std::move(img));
  }
  if (translations)
    for (const auto& t : *translations) {
      std::vector<Point> img(total);
      for (std::size_t i = 0; i < total; ++i) {
        Vec v = vector_from_index(i, d, F.q());
        for (std::size_t j = 0; j < d; ++j) v[j] = F.add(v[j], t[j]);
        img[i] = static_cast<Point>(vector_index(v, F.q()));
      }
      perms.emplace_back(std::move(img));
    }
  return PermGroup(total - off, std::move(perms));
}

inline PermGroup act_on_subspaces(const Field& F, const std::vector<Matrix>& dom, const std::vector<Semilinear>& gens) {
  SubspaceIndex idx(dom);
  std::vector<Permutation> perms;
  for (const auto& s : gens) {
    std::vector<Point> img(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) img[i] = idx.at(apply_to_subspace(F, s, dom[i]));
    perms.emplace_back(std::move(img));
  }
  return PermGroup(dom.size(), std::move(perms));
}

enum class Family { gl, sl, pgl, psl, pgammal, sp, gu, go_plus, go_minus, go_parabolic };

struct DomainSpec {
  enum Kind { natural, grass, isotropic, nondeg } kind = natural;
  std::size_t k = 1;
  std::optional<SubspaceKind> nondeg_kind;  // for orthogonal groups
};

inline bool is_classical_family(Family f) { return f == Family::sp || f == Family::gu || f == Family::go_plus || f == Family::go_minus || f == Family::go_parabolic; }

inline FormedSpace standard_form(Family f, std::size_t d, unsigned q) {
  switch (f) {
    case Family::sp: return FormedSpace::symplectic(q, d);
    case Family::gu: return FormedSpace::unitary(q, d);
    case Family::go_plus: return FormedSpace::orthogonal(1, q, d);
    case Family::go_minus: return FormedSpace::orthogonal(-1, q, d);
    case Family::go_parabolic: return FormedSpace::orthogonal(0, q, d);
    default: throw PreconditionError("family has no form");
  }
}

// Isometry generators: seeded random isometries added until the image on
// projective points reaches |Isom| / |scalar isometries|.
inline std::vector<Semilinear> isometry_generators(const FormedSpace& V) {
  const Field& F = V.field();
  QInt target = exact_div(V.isometry_order(), V.scalar_isometries());
  auto pts = enumerate_subspaces(F, V.dim(), 1);
  std::mt19937_64 rng(0x5e1f5e9aULL ^ (static_cast<std::uint64_t>(V.dim()) << 32) ^ (static_cast<std::uint64_t>(F.q()) << 8) ^
                      static_cast<std::uint64_t>(V.type()));
  std::vector<Semilinear> gens;
  for (int attempt = 0; attempt < 40; ++attempt) {
    gens.push_back({V.random_isometry(rng), 0});
    if (gens.size() < 2) continue;
    QInt o = act_on_subspaces(F, pts, gens).order();
    if (o == target) return gens;
    if (o > target) throw Error("internal: isometry image larger than expected");
  }
  throw Error("could not generate the isometry group");
}

inline Elaborated classical_action(Family fam, std::size_t d, unsigned q, DomainSpec dom, std::size_t max_degree = 100000) {
  if (!Field::is_prime_power(q)) throw StructuralError("q = " + std::to_string(q) + " is not a prime power");
  if (d == 0) throw StructuralError("dimension must be positive");
  Elaborated e;
  std::optional<FormedSpace> V;
  FieldPtr Fp;
  std::vector<Semilinear> gens;
  QInt expected_natural = 0;
  if (is_classical_family(fam)) {
    V = standard_form(fam, d, q);
    if (V->field().q() > 81) throw UnsupportedError("field GF(" + std::to_string(V->field().q()) + ") outside the supported table");
    Fp = V->field_ptr();
    gens = isometry_generators(*V);
    expected_natural = exact_div(V->isometry_order(), V->scalar_isometries());
  } else {
    if (q > 81) throw UnsupportedError("field GF(" + std::to_string(q) + ") outside the supported table");
    Fp = Field::get(q);
    const Field& F = *Fp;
    bool special = fam == Family::sl || fam == Family::psl;
    gens = special ? sl_generators(F, d) : gl_generators(F, d);
    QInt glo = gl_order(d, q);
    QInt slo = exact_div(glo, q - 1);
    switch (fam) {
      case Family::gl: expected_natural = glo; break;
      case Family::sl: expected_natural = slo; break;
      case Family::pgl: expected_natural = slo; break;
      case Family::psl: expected_natural = exact_div(slo, std::gcd<unsigned long, unsigned long>(d, q - 1)); break;
      case Family::pgammal:
        expected_natural = slo * F.degree();
        if (F.degree() > 1) gens.push_back({Matrix::identity(d), 1});
        break;
      default: break;
    }
    if ((fam == Family::pgl || fam == Family::psl || fam == Family::pgammal) && d < 2)
      throw StructuralError("projective groups need dimension >= 2");
  }
  const Field& F = *Fp;
  const bool vector_natural = fam == Family::gl || fam == Family::sl;

  if (dom.kind == DomainSpec::natural && vector_natural) {
    std::size_t total = ipow(F.q(), d);
    if (total - 1 > max_degree) throw CapacityError("domain too large");
    e.group = act_on_vectors(F, d, gens, false);
    e.domain.kind = "vectors";
    e.domain.label_kind = LabelKind::vector;
    for (std::size_t i = 1; i < total; ++i) e.domain.vectors.push_back(vector_from_index(i, d, F.q()));
    e.domain.n = total - 1;
    if (e.group.order() != expected_natural) throw Error("internal: order check failed for linear group");
    return e;
  }

  // The natural domain of a formed space is its singular (isotropic) points.
  if (dom.kind == DomainSpec::natural && V && V->type() != FormType::symplectic) dom = {DomainSpec::isotropic, 1, {}};
  std::size_t k = dom.kind == DomainSpec::natural ? 1 : dom.k;
  if (k == 0 || k >= d) throw PreconditionError("subspace dimension must satisfy 1 <= k < d");
  QInt count = 1;
  {
    // Gaussian binomial bound before enumerating
    QInt num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
      num *= qpow(F.q(), static_cast<long long>(d - i)) - 1;
      den *= qpow(F.q(), static_cast<long long>(i + 1)) - 1;
    }
    count = num / den;
  }
  if (count > 4 * static_cast<QInt>(max_degree) + 1000000) throw CapacityError("subspace domain too large: " + count.str());
  auto all = enumerate_subspaces(F, d, k);
  std::vector<Matrix> chosen;
  std::string kind;
  switch (dom.kind) {
    case DomainSpec::natural: chosen = std::move(all); kind = "points"; break;
    case DomainSpec::grass: chosen = std::move(all); kind = "grass:" + std::to_string(k); break;
    case DomainSpec::isotropic:
      if (!V) throw UnsupportedError("isotropic subspaces need a formed space (sp, gu, go)");
      for (auto& x : all)
        if (V->totally_isotropic(x)) chosen.push_back(std::move(x));
      kind = "isotropic:" + std::to_string(k);
      break;
    case DomainSpec::nondeg:
      if (!V) throw UnsupportedError("nondegenerate subspaces need a formed space (sp, gu, go)");
      for (auto& x : all) {
        auto c = V->classify(x);
        if (c == SubspaceKind::degenerate) continue;
        if (dom.nondeg_kind && c != *dom.nondeg_kind) continue;
        chosen.push_back(std::move(x));
      }
      kind = "nondeg:" + std::string(dom.nondeg_kind ? to_string(*dom.nondeg_kind) + ":" : "") + std::to_string(k);
      break;
  }
  if (chosen.empty()) throw PreconditionError("empty domain for " + kind);
  if (chosen.size() > max_degree) throw CapacityError("domain of size " + std::to_string(chosen.size()) + " exceeds limit");
  e.group = act_on_subspaces(F, chosen, gens);
  if (dom.kind == DomainSpec::natural && !V && e.group.order() != expected_natural)
    throw Error("internal: order check failed on projective points");
  e.domain.kind = kind;
  e.domain.label_kind = LabelKind::subspace;
  e.domain.n = chosen.size();
  e.domain.subspaces = std::move(chosen);
  e.form = V;
  e.field = Fp;
  return e;
}

// AGL(d,q), ASL(d,q) or AGammaL(1,q) on the vectors of GF(q)^d.
inline Elaborated affine_action(std::size_t d, unsigned q, bool special, bool semilinear) {
  if (!Field::is_prime_power(q)) throw StructuralError("q = " + std::to_string(q) + " is not a prime power");
  if (q > 81) throw UnsupportedError("field outside the supported table");
  const Field& F = *Field::get(q);
  auto gens = special ? sl_generators(F, d) : gl_generators(F, d);
  if (semilinear && F.degree() > 1) gens.push_back({Matrix::identity(d), 1});
  Vec t(d, 0);
  t[0] = 1;
  std::vector<Vec> trans{t};
  Elaborated e;
  e.group = act_on_vectors(F, d, gens, true, &trans);
  e.domain.kind = "vectors";
  e.domain.label_kind = LabelKind::vector;
  e.domain.n = ipow(q, d);
  for (std::size_t i = 0; i < e.domain.n; ++i) e.domain.vectors.push_back(vector_from_index(i, d, q));
  QInt expect = qpow(q, static_cast<long long>(d)) * gl_order(d, q);
  if (special) expect = exact_div(expect, q - 1);
  if (semilinear) expect *= F.degree();
  if (e.group.order() != expect) throw Error("internal: affine group order check failed");
  return e;
}

} // namespace selfsep
