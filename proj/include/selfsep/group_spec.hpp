#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "actions.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "zoo.hpp"

namespace selfsep {

inline constexpr const char* kSpecGrammar =
    "spec   := term ( 'wr' term ['@imprimitive' | '@product'] )*\n"
    "term   := ( atom | '(' spec ')' ) decor*\n"
    "atom   := sym:n | alt:n | cyclic:n | dihedral:n | affine1:q | agammal1:q\n"
    "        | agl:d:q | asl:d:q | gl:d:q | sl:d:q | psl:d:q | pgl:d:q | pgammal:d:q\n"
    "        | sp:d:q | gu:d:q | go:(+|-|0):d:q | mathieu:(11|12)\n"
    "        | perm:n:[ (0,1,2)(3,4), (0,1), ... ]\n"
    "decor  := @natural | @regular | @ksubsets:k | @grass:k | @isotropic:k\n"
    "        | @nondeg:k | @nondeg:(plus|minus|parabolic):k | @cosets:[generators]\n"
    "Points are 0-based; names are case-insensitive; whitespace is ignored.\n";

struct SpecParam {
  enum Kind { number, name, generators } kind = number;
  long long num = 0;
  std::string word;
  std::string raw;  // bracketed generator list
  std::size_t pos = 0;
};

struct SpecDecor {
  std::string name;
  std::vector<SpecParam> params;
  std::size_t pos = 0;
};

struct SpecNode {
  bool is_wreath = false;
  std::string name;
  std::vector<SpecParam> params;
  std::vector<SpecDecor> decors;
  std::unique_ptr<SpecNode> left, right, inner;  // inner: parenthesized spec
  bool product = false;
  std::size_t pos = 0;
};

namespace detail {

inline bool known_family(const std::string& s) {
  static const char* names[] = {"sym", "alt", "cyclic", "dihedral", "dih", "affine1", "agl1", "agammal1", "agaml1",
                                "agl", "asl", "gl", "sl", "psl", "pgl", "pgammal", "pgaml", "sp", "gu", "go",
                                "mathieu", "perm"};
  for (auto n : names)
    if (s == n) return true;
  return false;
}

class SpecParser {
public:
  explicit SpecParser(std::string_view t) : text_(t) { lex(); }

  std::unique_ptr<SpecNode> parse() {
    auto n = parse_spec();
    if (i_ < toks_.size()) fail("unexpected '" + toks_[i_].text + "'");
    return n;
  }

private:
  struct Tok {
    enum Kind { ident, number, sym, raw } kind;
    std::string text;
    std::size_t pos;
  };

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t pos = i_ < toks_.size() ? toks_[i_].pos : text_.size();
    throw ParseError("group spec: " + msg, pos);
  }

  void lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string id;
        while (i < text_.size() && std::isalnum(static_cast<unsigned char>(text_[i])))
          id += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[i++])));
        if (id != "wr" && id.size() > 2 && id.rfind("wr", 0) == 0 && known_family(id.substr(2))) {
          toks_.push_back({Tok::ident, "wr", start});
          toks_.push_back({Tok::ident, id.substr(2), start + 2});
        } else {
          toks_.push_back({Tok::ident, id, start});
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) num += text_[i++];
        // "3wr" style: digits directly followed by letters
        toks_.push_back({Tok::number, num, start});
      } else if (c == '[') {
        std::size_t close = text_.find(']', i);
        if (close == std::string_view::npos) throw ParseError("group spec: unterminated '['", i);
        toks_.push_back({Tok::raw, std::string(text_.substr(i + 1, close - i - 1)), start});
        i = close + 1;
      } else if (std::string_view(":@(),+-").find(c) != std::string_view::npos) {
        toks_.push_back({Tok::sym, std::string(1, c), start});
        ++i;
      } else {
        throw ParseError(std::string("group spec: unexpected character '") + c + "'", i);
      }
    }
  }

  bool peek_sym(char c) const { return i_ < toks_.size() && toks_[i_].kind == Tok::sym && toks_[i_].text[0] == c; }
  bool peek_ident(const char* s) const { return i_ < toks_.size() && toks_[i_].kind == Tok::ident && toks_[i_].text == s; }

  std::unique_ptr<SpecNode> parse_spec() {
    auto left = parse_term();
    while (peek_ident("wr")) {
      std::size_t pos = toks_[i_].pos;
      ++i_;
      auto right = parse_term();
      auto w = std::make_unique<SpecNode>();
      w->is_wreath = true;
      w->pos = pos;
      if (peek_sym('@') && i_ + 1 < toks_.size() && (toks_[i_ + 1].text == "product" || toks_[i_ + 1].text == "imprimitive")) {
        w->product = toks_[i_ + 1].text == "product";
        i_ += 2;
      }
      w->left = std::move(left);
      w->right = std::move(right);
      left = std::move(w);
    }
    return left;
  }

  std::unique_ptr<SpecNode> parse_term() {
    auto node = std::make_unique<SpecNode>();
    if (i_ >= toks_.size()) fail("expected a group name");
    node->pos = toks_[i_].pos;
    if (peek_sym('(')) {
      ++i_;
      node->inner = parse_spec();
      if (!peek_sym(')')) fail("expected ')'");
      ++i_;
    } else {
      if (toks_[i_].kind != Tok::ident) fail("expected a group name");
      node->name = toks_[i_++].text;
      if (!known_family(node->name)) {
        --i_;
        fail("unknown group family '" + node->name + "'");
      }
      node->params = parse_params();
    }
    while (peek_sym('@')) {
      if (i_ + 1 < toks_.size() && (toks_[i_ + 1].text == "product" || toks_[i_ + 1].text == "imprimitive")) break;
      SpecDecor d;
      d.pos = toks_[i_].pos;
      ++i_;
      if (i_ >= toks_.size() || toks_[i_].kind != Tok::ident) fail("expected a decorator name after '@'");
      d.name = toks_[i_++].text;
      d.params = parse_params();
      node->decors.push_back(std::move(d));
    }
    return node;
  }

  std::vector<SpecParam> parse_params() {
    std::vector<SpecParam> ps;
    while (peek_sym(':')) {
      ++i_;
      if (i_ >= toks_.size()) fail("expected a parameter after ':'");
      const Tok& t = toks_[i_];
      SpecParam p;
      p.pos = t.pos;
      if (t.kind == Tok::number) {
        if (t.text.size() > 9) fail("parameter too large");
        p.kind = SpecParam::number;
        p.num = std::stoll(t.text);
      } else if (t.kind == Tok::ident) {
        p.kind = SpecParam::name;
        p.word = t.text;
      } else if (t.kind == Tok::raw) {
        p.kind = SpecParam::generators;
        p.raw = t.text;
      } else if (t.kind == Tok::sym && (t.text == "+" || t.text == "-")) {
        p.kind = SpecParam::name;
        p.word = t.text;
      } else {
        fail("bad parameter");
      }
      ++i_;
      ps.push_back(std::move(p));
    }
    return ps;
  }

  std::string_view text_;
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

// Splits "(0,1)(2,3), (0,2)" into generator strings at top-level commas.
inline std::vector<Permutation> parse_generator_list(const std::string& raw, std::size_t degree, std::size_t pos) {
  std::vector<Permutation> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    bool blank = true;
    for (char c : cur) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) {
      try {
        out.push_back(Permutation::parse(cur, degree));
      } catch (const ParseError& e) {
        throw ParseError(std::string("generator list: ") + e.what(), pos);
      }
    }
    cur.clear();
  };
  for (char c : raw) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) flush();
    else cur += c;
  }
  flush();
  return out;
}

inline long long num_param(const SpecNode& n, std::size_t i, const char* what) {
  if (i >= n.params.size() || n.params[i].kind != SpecParam::number)
    throw ParseError("group spec: " + n.name + " needs numeric parameter " + what, n.pos);
  return n.params[i].num;
}

inline void expect_params(const SpecNode& n, std::size_t count) {
  if (n.params.size() != count)
    throw ParseError("group spec: " + n.name + " takes " + std::to_string(count) + " parameter(s)", n.pos);
}

inline std::size_t positive(long long v, std::size_t pos, const char* what) {
  if (v <= 0) throw ParseError(std::string("group spec: ") + what + " must be positive", pos);
  return static_cast<std::size_t>(v);
}

inline std::optional<Family> matrix_family(const std::string& name) {
  if (name == "gl") return Family::gl;
  if (name == "sl") return Family::sl;
  if (name == "pgl") return Family::pgl;
  if (name == "psl") return Family::psl;
  if (name == "pgammal" || name == "pgaml") return Family::pgammal;
  if (name == "sp") return Family::sp;
  if (name == "gu") return Family::gu;
  return std::nullopt;
}

inline Elaborated with_points(PermGroup g, std::string desc) {
  Elaborated e;
  e.domain = LabeledDomain::points(g.degree());
  e.group = std::move(g);
  e.description = std::move(desc);
  return e;
}

inline Elaborated elaborate(const SpecNode& n, const Limits& lim);

inline void apply_decor(Elaborated& e, const SpecDecor& d, const Limits& lim) {
  if (d.name == "natural") return;
  if (d.name == "ksubsets") {
    if (d.params.size() != 1 || d.params[0].kind != SpecParam::number) throw ParseError("group spec: @ksubsets needs k", d.pos);
    long long k = d.params[0].num;
    if (k < 1 || static_cast<std::size_t>(k) >= e.degree()) throw ParseError("group spec: @ksubsets needs 1 <= k < degree", d.pos);
    auto act = ksubset_action(e.group, static_cast<std::size_t>(k), lim.max_action_degree);
    e.group = act.group;
    e.domain = LabeledDomain{};
    e.domain.kind = "ksubsets:" + std::to_string(k);
    e.domain.label_kind = LabelKind::subset;
    e.domain.n = act.tuples.size();
    e.domain.tuples = std::move(act.tuples);
    e.blocks.reset();
    e.factor_h.reset();
    e.factor_k.reset();
    return;
  }
  if (d.name == "regular") {
    if (!d.params.empty()) throw ParseError("group spec: @regular takes no parameters", d.pos);
    auto ra = regular_action(e.group, lim.max_action_degree);
    e.group = ra.group;
    e.domain = LabeledDomain{};
    e.domain.kind = "regular";
    e.domain.label_kind = LabelKind::element;
    e.domain.n = ra.elements.size();
    e.domain.elements = std::move(ra.elements);
    e.blocks.reset();
    e.factor_h.reset();
    e.factor_k.reset();
    return;
  }
  if (d.name == "cosets") {
    if (d.params.size() != 1 || d.params[0].kind != SpecParam::generators)
      throw ParseError("group spec: @cosets needs a generator list [..]", d.pos);
    PermGroup h(e.degree(), parse_generator_list(d.params[0].raw, e.degree(), d.params[0].pos));
    auto ca = coset_action(e.group, h, lim.max_action_degree);
    e.group = ca.image;
    e.kernel_order = ca.kernel_order;
    e.domain = LabeledDomain{};
    e.domain.kind = "cosets";
    e.domain.label_kind = LabelKind::coset;
    e.domain.n = ca.reps.size();
    e.domain.elements = std::move(ca.reps);
    e.blocks.reset();
    e.factor_h.reset();
    e.factor_k.reset();
    return;
  }
  if (d.name == "grass" || d.name == "isotropic" || d.name == "nondeg")
    throw ParseError("group spec: @" + d.name + " must directly follow a matrix group", d.pos);
  throw ParseError("group spec: unknown decorator @" + d.name, d.pos);
}

inline std::optional<DomainSpec> matrix_domain(const SpecDecor& d) {
  DomainSpec ds;
  auto need_k = [&](const SpecParam& p) {
    if (p.kind != SpecParam::number || p.num < 1) throw ParseError("group spec: @" + d.name + " needs a positive dimension", d.pos);
    return static_cast<std::size_t>(p.num);
  };
  if (d.name == "natural") return ds;
  if (d.name == "grass" || d.name == "isotropic") {
    if (d.params.size() != 1) throw ParseError("group spec: @" + d.name + " needs k", d.pos);
    ds.kind = d.name == "grass" ? DomainSpec::grass : DomainSpec::isotropic;
    ds.k = need_k(d.params[0]);
    return ds;
  }
  if (d.name == "nondeg") {
    ds.kind = DomainSpec::nondeg;
    if (d.params.size() == 1) {
      ds.k = need_k(d.params[0]);
    } else if (d.params.size() == 2 && d.params[0].kind == SpecParam::name) {
      const std::string& w = d.params[0].word;
      if (w == "plus" || w == "hyperbolic" || w == "+") ds.nondeg_kind = SubspaceKind::plus;
      else if (w == "minus" || w == "elliptic" || w == "-") ds.nondeg_kind = SubspaceKind::minus;
      else if (w == "parabolic") ds.nondeg_kind = SubspaceKind::parabolic;
      else if (w != "any") throw ParseError("group spec: unknown nondegenerate kind '" + w + "'", d.params[0].pos);
      ds.k = need_k(d.params[1]);
    } else {
      throw ParseError("group spec: @nondeg needs [kind:]k", d.pos);
    }
    return ds;
  }
  return std::nullopt;
}

inline Elaborated elaborate_atom(const SpecNode& n, const Limits& lim, std::size_t& first_decor) {
  const std::string& f = n.name;
  first_decor = 0;
  if (f == "sym" || f == "alt" || f == "cyclic" || f == "dihedral" || f == "dih") {
    expect_params(n, 1);
    std::size_t k = positive(num_param(n, 0, "n"), n.pos, "n");
    if (k > lim.max_action_degree) throw CapacityError("degree too large");
    PermGroup g = f == "sym" ? symmetric_group(k) : f == "alt" ? alternating_group(k) : f == "cyclic" ? cyclic_group(k) : dihedral_group(k);
    return with_points(std::move(g), f + ":" + std::to_string(k));
  }
  if (f == "mathieu") {
    expect_params(n, 1);
    auto which = num_param(n, 0, "11|12");
    if (which != 11 && which != 12) throw UnsupportedError("only mathieu:11 and mathieu:12 are available");
    return with_points(mathieu_group(static_cast<unsigned>(which)), "mathieu:" + std::to_string(which));
  }
  if (f == "perm") {
    if (n.params.size() != 2 || n.params[1].kind != SpecParam::generators)
      throw ParseError("group spec: perm needs perm:degree:[generators]", n.pos);
    std::size_t deg = positive(num_param(n, 0, "degree"), n.pos, "degree");
    return with_points(PermGroup(deg, parse_generator_list(n.params[1].raw, deg, n.params[1].pos)), "perm:" + std::to_string(deg));
  }
  if (f == "affine1" || f == "agl1" || f == "agammal1" || f == "agaml1" || f == "agl" || f == "asl") {
    std::size_t d = 1;
    unsigned q;
    if (f == "agl" || f == "asl") {
      expect_params(n, 2);
      d = positive(num_param(n, 0, "d"), n.pos, "d");
      q = static_cast<unsigned>(positive(num_param(n, 1, "q"), n.pos, "q"));
    } else {
      expect_params(n, 1);
      q = static_cast<unsigned>(positive(num_param(n, 0, "q"), n.pos, "q"));
    }
    if (ipow(q, d) > lim.max_action_degree) throw CapacityError("affine domain too large");
    bool semi = f == "agammal1" || f == "agaml1";
    auto e = affine_action(d, q, f == "asl", semi);
    e.description = f + ":" + (f == "agl" || f == "asl" ? std::to_string(d) + ":" : "") + std::to_string(q);
    if (!n.decors.empty() && n.decors[0].name == "natural") first_decor = 1;
    return e;
  }
  Family fam;
  std::size_t d;
  unsigned q;
  std::string desc;
  if (f == "go") {
    expect_params(n, 3);
    const auto& p0 = n.params[0];
    std::string eps = p0.kind == SpecParam::name ? p0.word : std::to_string(p0.num);
    if (eps == "+" || eps == "plus" || eps == "1") fam = Family::go_plus;
    else if (eps == "-" || eps == "minus") fam = Family::go_minus;
    else if (eps == "0" || eps == "o" || eps == "parabolic") fam = Family::go_parabolic;
    else throw ParseError("group spec: go needs sign +, - or 0", p0.pos);
    d = positive(num_param(n, 1, "d"), n.pos, "d");
    q = static_cast<unsigned>(positive(num_param(n, 2, "q"), n.pos, "q"));
    desc = "go:" + std::string(fam == Family::go_plus ? "+" : fam == Family::go_minus ? "-" : "0") + ":" + std::to_string(d) + ":" + std::to_string(q);
  } else {
    auto mf = matrix_family(f);
    if (!mf) throw ParseError("group spec: unknown group family '" + f + "'", n.pos);
    fam = *mf;
    expect_params(n, 2);
    d = positive(num_param(n, 0, "d"), n.pos, "d");
    q = static_cast<unsigned>(positive(num_param(n, 1, "q"), n.pos, "q"));
    desc = f + ":" + std::to_string(d) + ":" + std::to_string(q);
  }
  DomainSpec ds;
  if (!n.decors.empty()) {
    if (auto m = matrix_domain(n.decors[0])) {
      ds = *m;
      first_decor = 1;
    }
  }
  auto e = classical_action(fam, d, q, ds, lim.max_action_degree);
  e.description = desc + "@" + e.domain.kind;
  return e;
}

inline Elaborated elaborate(const SpecNode& n, const Limits& lim) {
  if (n.is_wreath) {
    auto h = std::make_shared<Elaborated>(elaborate(*n.left, lim));
    auto k = std::make_shared<Elaborated>(elaborate(*n.right, lim));
    Action act = n.product ? wreath_product_action(h->group, k->group, lim.max_action_degree) : wreath_imprimitive(h->group, k->group);
    Elaborated e;
    e.group = act.group;
    e.domain.kind = n.product ? "product" : "imprimitive";
    e.domain.label_kind = LabelKind::tuple;
    e.domain.n = act.tuples.size();
    e.domain.tuples = std::move(act.tuples);
    if (!n.product) e.blocks = wreath_blocks(h->degree(), k->degree());
    e.description = "(" + h->description + ") wr (" + k->description + ")@" + e.domain.kind;
    e.factor_h = h;
    e.factor_k = k;
    e.product_action = n.product;
    return e;
  }
  std::size_t first = 0;
  Elaborated e = n.inner ? elaborate(*n.inner, lim) : elaborate_atom(n, lim, first);
  for (std::size_t i = first; i < n.decors.size(); ++i) {
    apply_decor(e, n.decors[i], lim);
    e.description += "@" + n.decors[i].name;
    for (const auto& p : n.decors[i].params)
      e.description += ":" + (p.kind == SpecParam::number ? std::to_string(p.num) : p.kind == SpecParam::name ? p.word : "[" + p.raw + "]");
  }
  return e;
}

} // namespace detail

inline std::unique_ptr<SpecNode> parse_spec_tree(std::string_view text) { return detail::SpecParser(text).parse(); }

// Parses and elaborates a group spec; the result is always a transitive action.
inline Elaborated parse_group_spec(std::string_view text, const Limits& lim = {}) {
  auto tree = parse_spec_tree(text);
  Elaborated e = detail::elaborate(*tree, lim);
  if (!e.group.is_transitive()) throw StructuralError("group spec '" + std::string(text) + "' does not give a transitive action");
  return e;
}

} // namespace selfsep
