#include <gtest/gtest.h>

#include <cstdio>

#include "selfsep/group_spec.hpp"
#include "selfsep/report.hpp"
#include "selfsep/reproduce.hpp"

using namespace selfsep;

namespace {

struct Run {
  int code = 0;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(SELFSEP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, {}};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST(Report, Envelope) {
  auto j = make_envelope("m", "sym:4");
  EXPECT_EQ(j["schema"], "selfsep/1");
  EXPECT_EQ(j["indexing"], 0);
  EXPECT_EQ(j.begin().key(), "schema");
  EXPECT_FALSE(make_envelope("diffbasis", "").contains("group"));
}

TEST(Report, PermutationAndSets) {
  auto p = Permutation::parse("(0,2)(1,3)", 4);
  auto j = to_json(p);
  EXPECT_EQ(j["cycles"], "(0,2)(1,3)");
  EXPECT_EQ(j["images"], Json::array({2, 3, 0, 1}));
  EXPECT_EQ(to_json(PointSet(6, {5, 1})), Json::array({1, 5}));
}

TEST(Report, MResult) {
  auto r = compute_m(symmetric_group(4));
  auto j = to_json(r);
  EXPECT_EQ(j["m"], 3);
  EXPECT_TRUE(j["complete"].get<bool>());
  EXPECT_EQ(j["witness"].size(), 3u);
}

TEST(Report, RationalsAsStrings) {
  auto j = to_json(order_filter(8, 8));
  EXPECT_EQ(j["threshold"], "70/16");
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  CsvTable t{{"a", "b"}, {{"1", "x,y"}}};
  EXPECT_EQ(t.str(), "a,b\n1,\"x,y\"\n");
}

TEST(Reproduce, SuiteNames) {
  auto names = suite_names();
  for (auto want : {"pairs-packing", "sym-natural", "sym-wreath", "lower-equality", "filters-small", "complementB-small", "nested", "diagonal", "qtables"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  EXPECT_THROW(reproduce("no-such-suite"), PreconditionError);
}

TEST(Reproduce, FastSuitesPass) {
  for (auto name : {"lower-equality", "filters-small", "nested", "qtables"}) {
    auto s = reproduce(name);
    EXPECT_TRUE(s.pass()) << name;
    EXPECT_FALSE(s.rows.empty());
    for (const auto& r : s.rows) EXPECT_NE(r.provenance, Provenance::untagged) << r.name;
    auto j = to_json(s);
    EXPECT_EQ(j["rows"].size(), s.rows.size());
  }
}

TEST(Reproduce, UnassertedRowsDoNotFailSuite) {
  auto s = reproduce("qtables");
  bool reported = false;
  for (const auto& r : s.rows) reported |= !r.asserted && !r.pass;
  EXPECT_TRUE(reported);
  EXPECT_TRUE(s.pass());
}

TEST(Binary, MJson) {
  auto r = run_cli("m sym:5@ksubsets:2 --json -");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], "selfsep/1");
  EXPECT_EQ(j["result"]["m"], 4);
}

TEST(Binary, OneBasedInput) {
  auto r = run_cli("separable cyclic:4@regular --set 1,3 --one-based --json -");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["verdict"], "separable");
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("m 'sym(5)'").code, 1);
  EXPECT_EQ(run_cli("m sym:20").code, 2);
  EXPECT_EQ(run_cli("separable sym:3 --set 7").code, 1);
  EXPECT_EQ(run_cli("bounds cyclic:7@regular").code, 0);
  EXPECT_EQ(run_cli("reproduce no-such-suite").code, 1);
}

TEST(Binary, CsvOutput) {
  auto r = run_cli("qformula --grid --csv -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("table,row,space", 0), 0u);
}

TEST(Binary, DiffBasisSinger) {
  auto r = run_cli("diffbasis --method singer --q 3 --json -");
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["basis"].size(), 4u);
  EXPECT_TRUE(j["result"]["planar"].get<bool>());
}
