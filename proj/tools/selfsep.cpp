// Command-line front end for the selfsep library.
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "selfsep/actions.hpp"
#include "selfsep/bounds.hpp"
#include "selfsep/config.hpp"
#include "selfsep/filters.hpp"
#include "selfsep/group_spec.hpp"
#include "selfsep/qformulas.hpp"
#include "selfsep/report.hpp"
#include "selfsep/reproduce.hpp"
#include "selfsep/separability.hpp"
#include "selfsep/witness_search.hpp"

using namespace selfsep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitSuiteFailed = 3;

struct Common {
  std::string json_path;
  std::string csv_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double budget = 60;
  std::size_t max_degree = 16;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool json_to_stdout(const Common& c) { return c.json_path == "-"; }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

// Emits the JSON envelope; the payload goes under "result", timing stays outside it.
void emit(const Common& c, Json envelope, const Json& result, double secs) {
  envelope["seed"] = c.seed;
  envelope["result"] = result;
  envelope["timing"] = {{"elapsed_secs", secs}};
  if (!c.json_path.empty()) write_text(c.json_path, envelope.dump(2) + "\n");
}

void emit_csv(const Common& c, const CsvTable& t) {
  if (!c.csv_path.empty()) write_text(c.csv_path, t.str());
}

std::ostream& human(const Common& c) {
  static std::ostringstream sink;
  if (json_to_stdout(c) || c.csv_path == "-") {
    sink.str("");
    return sink;
  }
  return std::cout;
}

Limits limits(const Common& c) {
  Limits l = limits_from_env();
  l.max_degree = c.max_degree;
  return l;
}

Elaborated group_of(const std::string& spec, const Common& c) { return parse_group_spec(spec, limits(c)); }

MOptions m_options(const Common& c) {
  MOptions o;
  o.max_degree = c.max_degree;
  o.threads = c.threads;
  o.budget_secs = c.budget;
  return o;
}

Strategy strategy_of(const std::string& s) {
  if (s == "auto") return Strategy::automatic;
  if (s == "enumeration") return Strategy::enumeration;
  if (s == "backtrack") return Strategy::backtrack;
  throw PreconditionError("unknown strategy '" + s + "'");
}

PointSet parse_set(const std::string& text, std::size_t degree, bool one_based) {
  PointSet s(degree);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t{}");
    auto e = item.find_last_not_of(" \t{}");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    long long v;
    try {
      std::size_t used = 0;
      v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("set: '" + item + "' is not a point", 0);
    }
    if (one_based) --v;
    if (v < 0 || static_cast<std::size_t>(v) >= degree)
      throw PreconditionError("set: point " + item + " outside the domain of size " + std::to_string(degree));
    s.insert(static_cast<Point>(v));
  }
  return s;
}

// ---------- subcommands ----------

int cmd_info(const Common& c, const std::string& spec, bool labels) {
  auto t0 = Clock::now();
  auto e = group_of(spec, c);
  const auto& g = e.group;
  Json r;
  r["degree"] = e.degree();
  r["order"] = g.order().str();
  r["domain"] = e.domain.kind;
  r["description"] = e.description;
  const bool transitive = g.is_transitive();
  r["transitive"] = transitive;
  auto& os = human(c);
  os << "group      " << spec << "\n";
  os << "domain     " << e.domain.kind << ", degree " << e.degree() << "\n";
  os << "order      " << g.order() << "\n";
  os << "transitive " << (transitive ? "yes" : "no") << "\n";
  if (transitive && e.degree() <= 64) {
    const bool primitive = is_primitive(g);
    r["primitive"] = primitive;
    os << "primitive  " << (primitive ? "yes" : "no") << "\n";
    if (!primitive) {
      auto bs = block_systems(g);
      r["block_systems"] = bs.size();
      os << "blocks     " << bs.size() << " non-trivial system(s)\n";
    }
    try {
      std::size_t h = homogeneity_degree(g, e.degree() / 2, 5'000'000);
      r["homogeneity"] = h;
      os << "homogeneous up to k = " << h << "\n";
    } catch (const CapacityError&) {
    }
  }
  if (e.kernel_order) {
    r["kernel_order"] = e.kernel_order->str();
    os << "kernel     " << *e.kernel_order << "\n";
  }
  if (labels) {
    Json ls = Json::array();
    for (std::size_t i = 0; i < e.domain.size(); ++i) {
      ls.push_back(e.domain.label(i));
      os << "  " << i + 1 << "  " << e.domain.label(i, 1) << "\n";
    }
    r["labels"] = ls;
  }
  emit(c, make_envelope("info", spec), r, seconds_since(t0));
  return kExitOk;
}

int cmd_m(const Common& c, const std::string& spec, const std::string& strategy, bool no_homogeneity) {
  auto t0 = Clock::now();
  auto e = group_of(spec, c);
  auto opt = m_options(c);
  opt.strategy = strategy_of(strategy);
  opt.use_homogeneity = !no_homogeneity;
  auto r = compute_m(e.group, opt);
  auto& os = human(c);
  os << "group   " << spec << " (degree " << e.degree() << ", order " << e.group.order() << ")\n";
  os << "bounds  " << r.lower_bound_used << " <= m <= " << r.upper_bound << "\n";
  if (r.complete) {
    os << "m       " << *r.m << "\n";
    os << "witness " << r.minimal_witness->to_string(1) << "\n";
  } else {
    os << "m       unknown (budget of " << c.budget << " s exhausted)\n";
  }
  for (const auto& s : r.sizes_exhausted) os << "  size " << s.size << ": " << s.tested << " candidate(s), all separable\n";
  os << "strategy " << to_string(r.strategy) << ", homogeneity " << r.homogeneity << ", " << std::fixed << std::setprecision(3)
     << r.elapsed_secs << " s\n";
  emit(c, make_envelope("m", spec), to_json(r), seconds_since(t0));
  return r.complete ? kExitOk : kExitCapacity;
}

int cmd_separable(const Common& c, const std::string& spec, const std::string& set, bool one_based, const std::string& strategy) {
  auto t0 = Clock::now();
  auto e = group_of(spec, c);
  auto a = parse_set(set, e.degree(), one_based);
  SeparabilityOptions opt;
  opt.strategy = strategy_of(strategy);
  auto r = is_self_separable(e.group, a, opt);
  auto& os = human(c);
  os << "set      " << a.to_string(1) << " (1-based)\n";
  os << "verdict  " << to_string(r.verdict) << "\n";
  if (r.witness) {
    os << "element  " << r.witness->to_string(1) << "\n";
    os << "image    " << a.image(*r.witness).to_string(1) << "\n";
  }
  os << "strategy " << to_string(r.strategy) << ", " << r.nodes_explored << " node(s)\n";
  Json j = to_json(r);
  j["set"] = to_json(a);
  emit(c, make_envelope("separable", spec), j, seconds_since(t0));
  return kExitOk;
}

std::optional<SubspaceKind> nondeg_kind_of(const std::string& domain) {
  if (domain.find("plus") != std::string::npos) return SubspaceKind::plus;
  if (domain.find("minus") != std::string::npos) return SubspaceKind::minus;
  if (domain.find("parabolic") != std::string::npos) return SubspaceKind::parabolic;
  return std::nullopt;
}

int cmd_witness(const Common& c, const std::string& spec, std::size_t size, bool construct, std::uint64_t samples) {
  auto t0 = Clock::now();
  auto& os = human(c);
  if (construct) {
    auto e = group_of(spec, c);
    WitnessConstruction w;
    const std::string& kind = e.domain.kind;
    if (kind.rfind("ksubsets", 0) == 0) {
      std::size_t m = 0;
      for (const auto& t : e.domain.tuples)
        for (Point p : t) m = std::max<std::size_t>(m, p + 1);
      QInt fact = 1;
      for (std::size_t i = 2; i <= m; ++i) fact *= i;
      if (e.group.order() != fact) throw UnsupportedError("k-subset construction needs sym:m@ksubsets:k");
      const std::size_t k = e.domain.tuples.front().size();
      w = ksubset_witness(m, k, e.degree() <= 35);
    } else if (kind.rfind("grass", 0) == 0) {
      w = subspace_witness(e, WitnessRule::linear, e.domain.subspaces.front().rows, std::nullopt);
    } else if (kind.rfind("isotropic", 0) == 0) {
      w = subspace_witness(e, WitnessRule::totally_isotropic, e.domain.subspaces.front().rows, std::nullopt);
    } else if (kind.rfind("nondeg", 0) == 0) {
      w = subspace_witness(e, WitnessRule::nondegenerate, e.domain.subspaces.front().rows, nondeg_kind_of(kind));
    } else {
      throw UnsupportedError("no witness construction for domain '" + kind + "'");
    }
    os << "construction " << w.spec << " on " << w.domain_kind << "\n";
    os << "size         " << w.actual << " (predicted " << w.predicted << ")\n";
    if (w.verification_run) os << "verified     " << (w.verified ? "not separable" : "SEPARABLE") << ", " << w.nodes << " node(s)\n";
    else os << "verified     skipped (domain too large)\n";
    os << "set          " << w.witness.to_string(1) << "\n";
    emit(c, make_envelope("witness", spec), to_json(w), seconds_since(t0));
    return kExitOk;
  }
  auto e = group_of(spec, c);
  if (size == 0) throw PreconditionError("witness needs --size or --construct");
  WitnessSearchOptions opt;
  opt.budget_secs = c.budget;
  opt.seed = c.seed;
  opt.threads = c.threads;
  if (samples) opt.max_samples = samples;
  auto r = random_witness_search(e.group, size, opt);
  if (r.witness) {
    os << "found    " << r.witness->to_string(1) << "\n";
  } else {
    os << "found    none\n";
  }
  os << "samples  " << r.samples << " (" << r.pool_rejections << " rejected by the pool, " << r.backtrack_calls << " backtracks)\n";
  os << "elapsed  " << std::fixed << std::setprecision(3) << r.elapsed_secs << " s\n";
  emit(c, make_envelope("witness", spec), to_json(r), seconds_since(t0));
  return r.witness ? kExitOk : kExitCapacity;
}

int cmd_bounds(const Common& c, const std::string& spec) {
  auto t0 = Clock::now();
  auto e = group_of(spec, c);
  auto b = bound_report(e, m_options(c));
  auto& os = human(c);
  os << "degree " << b.n << ", order " << b.order << ", point stabilizer order " << b.stabilizer_order << "\n";
  for (const auto& en : b.entries) os << "  " << std::left << std::setw(14) << en.name << std::setw(8) << en.value << en.provenance << "\n";
  if (b.order_filter) os << "  order filter   " << (b.order_filter->pass ? "pass" : "fail") << " (threshold " << b.order_filter->threshold.str() << ")\n";
  if (b.counting_filter)
    os << "  counting sum   " << b.counting_filter->sum << " vs " << b.counting_filter->threshold << ": " << (b.counting_filter->pass ? "pass" : "fail")
       << "\n";
  CsvTable t{{"name", "value", "provenance"}, {}};
  for (const auto& en : b.entries) t.rows.push_back({en.name, en.value, en.provenance});
  emit_csv(c, t);
  emit(c, make_envelope("bounds", spec), to_json(b), seconds_since(t0));
  return kExitOk;
}

int cmd_filter(const Common& c, const std::string& spec, bool prz, std::size_t disjoint_k) {
  auto t0 = Clock::now();
  auto e = group_of(spec, c);
  auto& os = human(c);
  Json j;
  auto of = order_filter(e.degree(), e.group.order());
  j["order_filter"] = to_json(of);
  os << "order filter    |G| = " << of.order << ", threshold " << of.threshold.str() << ": " << (of.pass ? "pass" : "fail") << "\n";
  auto f = counting_filter(e.group, e.degree() <= 24);
  j["counting_filter"] = to_json(f);
  os << "counting filter sum " << f.sum << ", threshold " << f.threshold << ": " << (f.pass ? "pass" : "fail") << "\n";
  if (f.r) os << "                orbits on " << e.degree() / 2 << "-subsets: " << *f.r << "\n";
  if (prz) {
    auto p = prz_identity_check(e.group);
    j["prz"] = to_json(p);
    os << "identity        r|G| = " << p.r_times_order << ", sum |G_A| = " << p.stabilizer_sum << ", cycle sum = " << p.cycle_sum << ": "
       << (p.holds ? "holds" : "FAILS") << "\n";
  }
  if (disjoint_k) {
    auto d = disjoint_mapping_check(e.group, disjoint_k);
    j["disjoint_mapping"] = {{"k", d.k}, {"premise", d.premise}, {"k_homogeneous", d.k_homogeneous}, {"orbits", d.orbits}, {"holds", d.holds()}};
    os << "disjoint k=" << d.k << "     premise " << (d.premise ? "yes" : "no") << ", " << d.orbits << " orbit(s) on k-sets\n";
  }
  emit(c, make_envelope("filter", spec), j, seconds_since(t0));
  return kExitOk;
}

int cmd_diffbasis(const Common& c, const std::string& spec, std::size_t cyclic, const std::string& method, std::size_t singer_q) {
  auto t0 = Clock::now();
  auto& os = human(c);
  DifferenceBasis b;
  std::string label;
  if (method == "singer") {
    b = singer_difference_set(singer_q);
    label = "Z" + std::to_string(b.order);
  } else {
    GroupTable t;
    if (cyclic) {
      t = GroupTable::cyclic(cyclic);
      label = "Z" + std::to_string(cyclic);
    } else {
      if (spec.empty()) throw PreconditionError("diffbasis needs a group spec or --cyclic");
      t = GroupTable::of(group_of(spec, c).group);
      label = spec;
    }
    if (method == "exact") b = min_difference_basis(t, c.budget);
    else if (method == "greedy") b = make_basis(t, greedy_difference_basis(t), "greedy", false);
    else if (method == "transversal") b = transversal_difference_basis(t, std::nullopt, c.seed).basis;
    else throw PreconditionError("unknown method '" + method + "'");
  }
  os << "group  " << label << " (order " << b.order << ")\n";
  os << "basis  size " << b.size() << (b.exact ? ", minimum" : ", not proven minimum") << (b.planar ? ", planar" : "") << "\n";
  os << "index  {";
  for (std::size_t i = 0; i < b.basis.size(); ++i) os << (i ? "," : "") << b.basis[i];
  os << "}\n";
  emit(c, make_envelope("diffbasis", label), to_json(b), seconds_since(t0));
  return kExitOk;
}

std::optional<TsRow> ts_row_of(const std::string& s) {
  if (s == "unitary") return TsRow::unitary;
  if (s == "symplectic") return TsRow::symplectic;
  if (s == "orthogonal+") return TsRow::orthogonal_plus;
  if (s == "orthogonal-") return TsRow::orthogonal_minus;
  if (s == "orthogonal-odd") return TsRow::orthogonal_odd;
  return std::nullopt;
}

std::optional<NdRow> nd_row_of(const std::string& s) {
  for (NdRow r : {NdRow::unitary, NdRow::symplectic, NdRow::plus_hyperbolic, NdRow::plus_parabolic, NdRow::plus_elliptic, NdRow::minus_parabolic,
                  NdRow::minus_elliptic, NdRow::odd_hyperbolic, NdRow::odd_elliptic})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

int cmd_qformula(const Common& c, const std::string& table, const std::string& row, long long d, long long k, unsigned q, bool oracle,
                 bool grid) {
  auto t0 = Clock::now();
  auto& os = human(c);
  std::vector<QCheckRow> rows;
  if (grid) {
    rows = qformula_grid();
    oracle = true;
  } else {
    if (table == "ts") {
      auto r = ts_row_of(row);
      if (!r) throw PreconditionError("unknown ts row '" + row + "' (unitary, symplectic, orthogonal+, orthogonal-, orthogonal-odd)");
      if (oracle) rows.push_back(check_ts(*r, static_cast<std::size_t>(d), static_cast<std::size_t>(k), q));
      else {
        QCheckRow x;
        x.table = "TS";
        x.row = row;
        x.d = static_cast<std::size_t>(d);
        x.k = static_cast<std::size_t>(k);
        x.q = q;
        auto f = ts_cardinality(*r, d, k, q);
        x.omega_formula = f.omega;
        x.a_formula = f.a;
        rows.push_back(x);
      }
    } else if (table == "nd") {
      auto r = nd_row_of(row);
      if (!r) throw PreconditionError("unknown nd row '" + row + "'");
      if (oracle) rows.push_back(check_nd(*r, static_cast<std::size_t>(d), static_cast<std::size_t>(k), q));
      else {
        QCheckRow x;
        x.table = "ND";
        x.row = row;
        x.d = static_cast<std::size_t>(d);
        x.k = static_cast<std::size_t>(k);
        x.q = q;
        auto f = nd_cardinality(*r, d, k, q);
        x.omega_formula = f.omega;
        x.a_formula = f.a;
        rows.push_back(x);
      }
    } else {
      throw PreconditionError("--table must be ts or nd");
    }
  }
  for (const auto& r : rows) {
    os << r.table << " " << std::left << std::setw(26) << r.row << (r.space.empty() ? "" : r.space + " ") << "d=" << r.d << " k=" << r.k
       << " q=" << r.q << "  omega " << r.omega_formula << "  |A| " << r.a_formula;
    if (oracle) {
      os << "  | oracle " << r.omega_oracle << " / " << r.a_oracle << (r.omega_match() ? "" : "  OMEGA MISMATCH")
         << (r.a_match() ? "" : "  |A| mismatch");
    }
    os << "\n";
  }
  Json arr = Json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  emit_csv(c, to_csv(rows));
  emit(c, make_envelope("qformula", ""), arr, seconds_since(t0));
  return kExitOk;
}

int cmd_reproduce(const Common& c, std::vector<std::string> suites) {
  auto t0 = Clock::now();
  auto& os = human(c);
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  ReproduceOptions opt;
  opt.threads = c.threads;
  opt.budget_secs = c.budget;
  opt.seed = c.seed;
  Json arr = Json::array();
  CsvTable all{{"suite", "name", "expected", "actual", "provenance", "asserted", "pass", "detail"}, {}};
  bool ok = true;
  for (const auto& name : suites) {
    auto s = reproduce(name, opt);
    ok = ok && s.pass();
    os << "[" << (s.pass() ? "PASS" : "FAIL") << "] " << name << "\n";
    for (const auto& r : s.rows) {
      const char* tag = r.pass ? "ok" : (r.asserted ? "FAIL" : "diff");
      os << "  " << std::left << std::setw(5) << tag << std::setw(58) << r.name << " expected " << r.expected << ", got " << r.actual << "  ["
         << to_string(r.provenance) << "]";
      if (!r.detail.empty()) os << "  " << r.detail;
      os << "\n";
    }
    arr.push_back(to_json(s));
    auto t = to_csv(s);
    all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
  }
  emit_csv(c, all);
  emit(c, make_envelope("reproduce", ""), arr, seconds_since(t0));
  return ok ? kExitOk : kExitSuiteFailed;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--json", c.json_path, "Write a JSON report to a file ('-' for stdout)");
  sub->add_option("--csv", c.csv_path, "Write a CSV table to a file ('-' for stdout), where the command has one");
  sub->add_option("--seed", c.seed, "Seed for randomized searches");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--budget", c.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
  sub->add_option("--max-degree", c.max_degree, "Largest degree accepted for m computations");
}

} // namespace

int main(int argc, char** argv) {
  Common c;
  {
    Limits env = limits_from_env();
    c.threads = env.threads;
    c.budget = env.budget_secs;
    c.max_degree = env.max_degree;
  }

  CLI::App app{"Self-separability of permutation groups.\n\nGroup specs:\n" + std::string(kSpecGrammar)};
  app.require_subcommand(1);
  app.set_version_flag("--version", "selfsep 1.0");

  std::vector<std::string> spec_words;  // an unquoted "sym:3 wr sym:2" arrives as three words
  std::string spec, set, strategy = "auto", method = "exact", table, row;
  bool one_based = false, construct = false, no_homogeneity = false, labels = false, prz = false, oracle = false, grid = false;
  std::size_t size = 0, cyclic = 0, singer_q = 2, disjoint_k = 0;
  std::uint64_t samples = 0;
  long long d = 0, k = 0;
  unsigned q = 2;
  std::vector<std::string> suites;

  auto* info = app.add_subcommand("info", "Degree, order and structure of a group action");
  info->add_option("spec", spec_words, "Group spec")->required();
  info->add_flag("--labels", labels, "List the domain labels");

  auto* m = app.add_subcommand("m", "Smallest non-self-separable set size");
  m->add_option("spec", spec_words, "Group spec")->required();
  m->add_option("--strategy", strategy, "auto, enumeration or backtrack");
  m->add_flag("--no-homogeneity", no_homogeneity, "Do not use k-homogeneity to restrict candidates");

  auto* sep = app.add_subcommand("separable", "Decide whether a set is self-separable");
  sep->add_option("spec", spec_words, "Group spec")->required();
  sep->add_option("--set", set, "Comma-separated points (0-based unless --one-based)")->required();
  sep->add_flag("--one-based", one_based, "Read --set as 1-based points");
  sep->add_option("--strategy", strategy, "auto, enumeration or backtrack");

  auto* wit = app.add_subcommand("witness", "Search for or construct a non-self-separable set");
  wit->add_option("spec", spec_words, "Group spec")->required();
  wit->add_option("--size", size, "Size of the sets to sample");
  wit->add_option("--samples", samples, "Stop after this many samples");
  wit->add_flag("--construct", construct, "Use the explicit construction for the domain type");

  auto* bnd = app.add_subcommand("bounds", "Lower and upper bounds on m");
  bnd->add_option("spec", spec_words, "Group spec")->required();

  auto* flt = app.add_subcommand("filter", "Order and counting filters");
  flt->add_option("spec", spec_words, "Group spec")->required();
  flt->add_flag("--prz", prz, "Also check the orbit/stabilizer/cycle identity (needs m at the upper bound)");
  flt->add_option("--disjoint-k", disjoint_k, "Check the disjoint-mapping premise for k-sets");

  auto* dfb = app.add_subcommand("diffbasis", "Difference bases of finite groups");
  dfb->add_option("spec", spec_words, "Group spec (regular elements are taken from its group)");
  dfb->add_option("--cyclic", cyclic, "Use the cyclic group of this order");
  dfb->add_option("--method", method, "exact, greedy, transversal or singer");
  dfb->add_option("--q", singer_q, "Plane order for --method singer (2, 3 or 4)");

  auto* qf = app.add_subcommand("qformula", "Subspace counts of classical geometries");
  qf->add_option("--table", table, "ts (totally isotropic) or nd (nondegenerate)");
  qf->add_option("--row", row, "Row name");
  qf->add_option("--d", d, "Rank parameter d");
  qf->add_option("--k", k, "Subspace parameter k");
  qf->add_option("--q", q, "Field parameter q");
  qf->add_flag("--compare-oracle", oracle, "Count by enumeration as well");
  qf->add_flag("--grid", grid, "Run the built-in comparison grid");

  auto* rep = app.add_subcommand("reproduce", "Run reproduction suites");
  rep->add_option("suites", suites, "Suite names, or 'all'");

  for (auto* s : {info, m, sep, wit, bnd, flt, dfb, qf, rep}) add_common(s, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\nGroup spec grammar:\n" << kSpecGrammar;
    return kExitUsage;
  }

  for (const auto& w : spec_words) spec += (spec.empty() ? "" : " ") + w;

  try {
    if (*info) return cmd_info(c, spec, labels);
    if (*m) return cmd_m(c, spec, strategy, no_homogeneity);
    if (*sep) return cmd_separable(c, spec, set, one_based, strategy);
    if (*wit) return cmd_witness(c, spec, size, construct, samples);
    if (*bnd) return cmd_bounds(c, spec);
    if (*flt) return cmd_filter(c, spec, prz, disjoint_k);
    if (*dfb) return cmd_diffbasis(c, spec, cyclic, method, singer_q);
    if (*qf) return cmd_qformula(c, table, row, d, k, q, oracle, grid);
    if (*rep) return cmd_reproduce(c, suites);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\nGroup spec grammar:\n" << kSpecGrammar;
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
