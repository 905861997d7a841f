#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bounds.hpp"
#include "filters.hpp"
#include "qformulas.hpp"
#include "reproduce.hpp"
#include "separability.hpp"
#include "witness_search.hpp"

namespace selfsep {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "selfsep/1";

// JSON carries 0-based points; the envelope says so.
inline Json make_envelope(const std::string& command, const std::string& group) {
  Json j;
  j["schema"] = kSchema;
  j["indexing"] = 0;
  j["command"] = command;
  if (!group.empty()) j["group"] = group;
  return j;
}

inline Json to_json(const PointSet& s) { return s.points(); }

inline Json to_json(const Permutation& p) {
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) img[i] = p[static_cast<Point>(i)];
  return Json{{"cycles", p.to_string()}, {"images", img}};
}

inline Json to_json(const SeparabilityResult& r) {
  Json j{{"verdict", to_string(r.verdict)}, {"strategy", to_string(r.strategy)}, {"nodes_explored", r.nodes_explored}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

inline Json to_json(const MResult& r) {
  Json j;
  j["complete"] = r.complete;
  j["m"] = r.m ? Json(*r.m) : Json(nullptr);
  j["witness"] = r.minimal_witness ? to_json(*r.minimal_witness) : Json(nullptr);
  j["lower_bound_used"] = r.lower_bound_used;
  j["upper_bound"] = r.upper_bound;
  j["homogeneity"] = r.homogeneity;
  j["strategy"] = to_string(r.strategy);
  j["candidates_tested"] = r.candidates_tested;
  Json sizes = Json::array();
  for (const auto& s : r.sizes_exhausted) sizes.push_back({{"size", s.size}, {"tested", s.tested}});
  j["sizes_exhausted"] = sizes;
  return j;
}

inline Json to_json(const WitnessSearchResult& r) {
  Json j;
  j["found"] = r.witness.has_value();
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["samples"] = r.samples;
  j["pool_rejections"] = r.pool_rejections;
  j["backtrack_calls"] = r.backtrack_calls;
  j["nodes_explored"] = r.nodes_explored;
  j["budget_exhausted"] = r.budget_exhausted;
  return j;
}

inline Json to_json(const WitnessConstruction& w) {
  return Json{{"spec", w.spec},         {"domain", w.domain_kind},           {"size", w.actual},
              {"predicted", w.predicted.str()}, {"verification_run", w.verification_run}, {"not_separable", w.verified},
              {"nodes_explored", w.nodes}, {"witness", to_json(w.witness)}};
}

inline Json to_json(const FilterReport& f) {
  Json j{{"n", f.n}, {"order", f.order.str()}, {"even", f.even}, {"sum", f.sum.str()}, {"threshold", f.threshold.str()}, {"pass", f.pass}};
  j["orbits"] = f.r ? Json(*f.r) : Json(nullptr);
  return j;
}

inline Json to_json(const OrderFilterResult& f) {
  return Json{{"n", f.n}, {"order", f.order.str()}, {"threshold", f.threshold.str()}, {"pass", f.pass}};
}

inline Json to_json(const PrzReport& p) {
  return Json{{"n", p.n},
              {"m", p.m},
              {"order", p.order.str()},
              {"orbits", p.r},
              {"orbits_times_order", p.r_times_order.str()},
              {"stabilizer_sum", p.stabilizer_sum.str()},
              {"cycle_sum", p.cycle_sum.str()},
              {"upper", p.upper.str()},
              {"holds", p.holds}};
}

inline Json to_json(const BoundReport& b) {
  Json j{{"n", b.n}, {"order", b.order.str()}, {"stabilizer_order", b.stabilizer_order.str()}, {"lower", b.neumann_lower}, {"upper", b.trivial_upper}};
  Json entries = Json::array();
  for (const auto& e : b.entries) entries.push_back({{"name", e.name}, {"value", e.value}, {"provenance", e.provenance}});
  j["entries"] = entries;
  j["order_filter"] = b.order_filter ? to_json(*b.order_filter) : Json(nullptr);
  j["counting_filter"] = b.counting_filter ? to_json(*b.counting_filter) : Json(nullptr);
  return j;
}

inline Json to_json(const DifferenceBasis& d) {
  return Json{{"order", d.order}, {"size", d.size()}, {"basis", d.basis}, {"planar", d.planar}, {"exact", d.exact}, {"method", d.method}};
}

inline Json to_json(const QCheckRow& r) {
  Json j{{"table", r.table}, {"row", r.row}, {"space", r.space}, {"d", r.d}, {"k", r.k}, {"q", r.q},
         {"omega", r.omega_formula.str()}, {"a", r.a_formula.str()}};
  if (r.omega_oracle != 0 || r.a_oracle != 0) {
    j["omega_oracle"] = r.omega_oracle.str();
    j["a_oracle"] = r.a_oracle.str();
    j["omega_match"] = r.omega_match();
    j["a_match"] = r.a_match();
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const SuiteResult& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"name", r.name},
                    {"expected", r.expected},
                    {"actual", r.actual},
                    {"provenance", to_string(r.provenance)},
                    {"asserted", r.asserted},
                    {"pass", r.pass},
                    {"detail", r.detail}});
  return Json{{"suite", s.suite}, {"pass", s.pass()}, {"rows", rows}};
}

// ---------- CSV ----------

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

inline CsvTable to_csv(const SuiteResult& s) {
  CsvTable t{{"suite", "name", "expected", "actual", "provenance", "asserted", "pass", "detail"}, {}};
  for (const auto& r : s.rows)
    t.rows.push_back({s.suite, r.name, r.expected, r.actual, to_string(r.provenance), r.asserted ? "1" : "0", r.pass ? "1" : "0", r.detail});
  return t;
}

inline CsvTable to_csv(const std::vector<QCheckRow>& rows) {
  CsvTable t{{"table", "row", "space", "d", "k", "q", "omega", "omega_oracle", "a", "a_oracle", "note"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({r.table, r.row, r.space, std::to_string(r.d), std::to_string(r.k), std::to_string(r.q), r.omega_formula.str(),
                      r.omega_oracle.str(), r.a_formula.str(), r.a_oracle.str(), r.note});
  return t;
}

} // namespace selfsep
