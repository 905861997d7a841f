#include <gtest/gtest.h>

#include <set>

#include "selfsep/diagonal.hpp"
#include "selfsep/group_spec.hpp"
#include "selfsep/qformulas.hpp"
#include "selfsep/zoo.hpp"

using namespace selfsep;

namespace {

struct SpecCase {
  const char* spec;
  std::size_t degree;
  long long order;
};

}  // namespace

TEST(GroupSpec, DegreesAndOrders) {
  const SpecCase cases[] = {
      {"sym:5@natural", 5, 120},
      {"sym:5@ksubsets:2", 10, 120},
      {"cyclic:7@regular", 7, 7},
      {"dihedral:5", 5, 10},
      {"alt:4@regular", 12, 12},
      {"sym:3@regular", 6, 6},
      {"affine1:5", 5, 20},
      {"affine1:8", 8, 56},
      {"agammal1:9", 9, 144},
      {"psl:2:7", 8, 168},
      {"pgl:2:7", 8, 336},
      {"agl:3:2", 8, 1344},
      {"mathieu:11", 11, 7920},
      {"mathieu:12", 12, 95040},
      {"perm:4:[(0,1)(2,3),(0,2)(1,3)]", 4, 4},
      {"sym:4@cosets:[(0,1,2,3)]", 6, 24},
  };
  for (const auto& c : cases) {
    auto e = parse_group_spec(c.spec);
    EXPECT_EQ(e.degree(), c.degree) << c.spec;
    EXPECT_EQ(e.group.order(), c.order) << c.spec;
    EXPECT_EQ(e.domain.size(), c.degree) << c.spec;
  }
}

TEST(GroupSpec, CaseAndWhitespaceInsensitive) {
  auto e = parse_group_spec(" SYM : 4 @ KSubsets : 2 ");
  EXPECT_EQ(e.degree(), 6u);
}

TEST(GroupSpec, Errors) {
  EXPECT_THROW(parse_group_spec("sym(5)"), ParseError);
  EXPECT_THROW(parse_group_spec("frobnicate:3"), ParseError);
  EXPECT_THROW(parse_group_spec("perm:4:[(0,1)]"), Error);  // intransitive
  Limits lim;
  lim.max_action_degree = 20;
  EXPECT_THROW(parse_group_spec("sym:8@ksubsets:4", lim), CapacityError);
}

TEST(Wreath, ImprimitiveLaws) {
  const SpecCase cases[] = {
      {"sym:2 wr sym:2", 4, 8},
      {"sym:3 wr sym:3", 9, 1296},
      {"sym:2 wr sym:3", 6, 48},
      {"cyclic:3 wr cyclic:2", 6, 18},
      {"dihedral:4 wr sym:2", 8, 128},
  };
  for (const auto& c : cases) {
    auto e = parse_group_spec(c.spec);
    EXPECT_EQ(e.degree(), c.degree) << c.spec;
    EXPECT_EQ(e.group.order(), c.order) << c.spec;
    ASSERT_TRUE(e.blocks.has_value()) << c.spec;
    EXPECT_EQ(e.blocks->count() * e.blocks->block_size(), c.degree);
  }
  for (std::size_t a = 2; a <= 4; ++a)
    for (std::size_t b = 2; b <= 4; ++b) {
      auto w = wreath_imprimitive(symmetric_group(a), cyclic_group(b));
      QInt expect = 1;
      for (std::size_t i = 0; i < b; ++i) expect *= symmetric_group(a).order();
      EXPECT_EQ(w.group.order(), expect * b);
      EXPECT_EQ(w.group.degree(), a * b);
    }
}

TEST(Wreath, ProductAction) {
  auto e = parse_group_spec("sym:3 wr sym:2@product");
  EXPECT_EQ(e.degree(), 9u);
  EXPECT_EQ(e.group.order(), 72);
  EXPECT_TRUE(e.product_action);

  auto f = parse_group_spec("sym:2 wr sym:2@product");
  EXPECT_EQ(f.degree(), 4u);
  EXPECT_EQ(f.group.order(), 8);

  auto one = wreath_product_action(PermGroup::trivial(1), symmetric_group(3));
  EXPECT_EQ(one.group.degree(), 1u);
}

TEST(Actions, Ksubsets) {
  EXPECT_EQ(ksubset_action(symmetric_group(4), 2).group.degree(), 6u);
  EXPECT_EQ(ksubset_action(symmetric_group(5), 2).group.degree(), 10u);
  // (n-1)-subsets are complements of points
  auto d = dihedral_group(6);
  auto c = ksubset_action(d, 5);
  EXPECT_EQ(c.group.degree(), 6u);
  EXPECT_EQ(c.group.order(), d.order());
}

TEST(Actions, KsubsetImagesAreSetImages) {
  auto g = parse_group_spec("psl:2:7").group;
  auto act = ksubset_action(g, 3);
  for (std::size_t s = 0; s < g.generators().size(); ++s)
    for (Point i = 0; i < act.group.degree(); ++i) {
      std::vector<Point> img;
      for (auto x : act.tuples[i]) img.push_back(g.generators()[s].image(x));
      std::sort(img.begin(), img.end());
      EXPECT_EQ(act.tuples[act.group.generators()[s].image(i)], img);
    }
}

TEST(Actions, Regular) {
  EXPECT_EQ(regular_action(symmetric_group(3)).group.degree(), 6u);
  EXPECT_EQ(regular_action(cyclic_group(7)).group.degree(), 7u);
  auto a4 = regular_action(alternating_group(4)).group;
  EXPECT_EQ(a4.degree(), 12u);
  EXPECT_EQ(point_stabilizer(a4, 0).order(), 1);
}

TEST(Classical, Degrees) {
  EXPECT_EQ(parse_group_spec("gl:4:2@grass:2").degree(), 35u);
  EXPECT_EQ(parse_group_spec("sp:4:2@isotropic:1").degree(), 15u);
  EXPECT_EQ(parse_group_spec("sp:4:2@nondeg:2").degree(), 20u);
  EXPECT_EQ(parse_group_spec("sp:4:2@isotropic:2").degree(), 15u);
  EXPECT_EQ(parse_group_spec("gu:3:2@isotropic:1").degree(), 9u);
}

TEST(Classical, DegreesMatchGaussianCounts) {
  for (unsigned q : {2u, 3u})
    for (long long d = 2; d <= 4; ++d)
      for (long long k = 1; k < d; ++k) {
        auto e = parse_group_spec("gl:" + std::to_string(d) + ":" + std::to_string(q) + "@grass:" + std::to_string(k));
        EXPECT_EQ(QInt(e.degree()), gaussian_binomial(d, k, q));
      }
}

TEST(Classical, SubspaceLabelsAreDistinct) {
  auto e = parse_group_spec("gl:4:3@grass:2");
  std::set<std::vector<Field::E>> seen;
  for (const auto& m : e.domain.subspaces) seen.insert(m.a);
  EXPECT_EQ(seen.size(), e.degree());
  EXPECT_EQ(e.group.order(), gl_order(4, 3) / 2);  // centre acts trivially
}

TEST(Field, AxiomsForSupportedOrders) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    auto F = Field::get(q);
    EXPECT_EQ(F->q(), q);
    EXPECT_EQ(F->mul(F->primitive(), F->inv(F->primitive())), 1u);
  }
  EXPECT_THROW(Field::get(6), Error);
}

TEST(Diagonal, Alt5CubeLayers) {
  auto g = diagonal_witness_group(3);
  EXPECT_EQ(g.degree(), 3600u);
  EXPECT_EQ(g.order(), QInt(3600) * 6 * 2 * 60);

  for (const auto& l : g.left_generators())
    for (const auto& r : g.right_generators()) EXPECT_EQ(l * r, r * l);
}

TEST(Diagonal, WitnessReport) {
  auto g = diagonal_witness_group(3);
  auto r = diagonal_witness(g, 1, 500);
  EXPECT_TRUE(r.coverage);
  EXPECT_TRUE(r.left_invariant);
  EXPECT_TRUE(r.sym_invariant);
  EXPECT_TRUE(r.out_invariant);
  EXPECT_TRUE(r.commute);
  EXPECT_TRUE(r.sym_formula);
  EXPECT_EQ(r.disjoint, 0u);
}
