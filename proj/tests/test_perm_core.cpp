#include <gtest/gtest.h>

#include <random>
#include <set>

#include "selfsep/actions.hpp"
#include "selfsep/group.hpp"
#include "selfsep/group_spec.hpp"
#include "selfsep/perm.hpp"
#include "selfsep/point_set.hpp"
#include "selfsep/zoo.hpp"

using namespace selfsep;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

std::size_t count_elements(const PermGroup& g) {
  std::size_t c = 0;
  g.for_each_element([&](const Permutation&) { ++c; });
  return c;
}

}  // namespace

TEST(Permutation, ComposeAppliesLeftFactorFirst) {
  auto p = Permutation::parse("(0,1,2)", 3);
  auto q = Permutation::parse("(0,1)", 3);
  EXPECT_EQ(compose(p, q), Permutation::parse("(1,2)", 3));
  EXPECT_EQ((p * q).image(0), 0u);
}

TEST(Permutation, ParseCyclesRoundTrip) {
  auto p = Permutation::parse("(0,3)(1,4,2)", 6);
  EXPECT_EQ(p.degree(), 6u);
  EXPECT_EQ(p.to_string(), "(0,3)(1,4,2)");
  EXPECT_EQ(Permutation::parse(p.to_string(), 6), p);
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ(p.support_size(), 5u);
}

TEST(Permutation, ParseRejectsRepeatedPoint) {
  EXPECT_THROW(Permutation::parse("(0,1,0)", 3), Error);
  EXPECT_THROW(Permutation::parse("(0,5)", 3), Error);
}

TEST(Permutation, GroupLawsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto p = random_perm(9, rng), q = random_perm(9, rng), r = random_perm(9, rng);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ(p.pow(static_cast<long long>(p.order())), Permutation::identity(9));
  }
}

TEST(PermGroup, Orders) {
  EXPECT_EQ(symmetric_group(5).order(), 120);
  EXPECT_EQ(parse_group_spec("psl:2:7").group.order(), 168);
  auto gl = parse_group_spec("gl:4:2");
  EXPECT_EQ(gl.degree(), 15u);
  EXPECT_EQ(gl.group.order(), 20160);
}

TEST(PermGroup, ElementIterationCounts) {
  EXPECT_EQ(count_elements(cyclic_group(4)), 4u);
  std::set<std::vector<Point>> seen;
  symmetric_group(3).for_each_element([&](const Permutation& g) { auto s = g.images(); seen.emplace(s.begin(), s.end()); });
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(count_elements(parse_group_spec("sym:2 wr sym:2").group), 8u);
}

TEST(PermGroup, ChainOrderMatchesEnumeration) {
  for (auto spec : {"dihedral:7", "alt:5", "affine1:8", "psl:2:7", "sym:2 wr sym:3", "sym:3 wr sym:2@product"}) {
    auto g = parse_group_spec(spec).group;
    EXPECT_EQ(QInt(count_elements(g)), g.order()) << spec;
  }
}

TEST(PermGroup, OrbitStabilizer) {
  auto g = parse_group_spec("sym:5@ksubsets:2").group;
  for (Point x = 0; x < g.degree(); ++x) EXPECT_EQ(QInt(g.orbit(x).size()) * point_stabilizer(g, x).order(), g.order());
  // {1,2} in colex order is point 2
  auto e = parse_group_spec("sym:5@ksubsets:2");
  EXPECT_EQ(e.domain.tuples[2], (std::vector<Point>{1, 2}));
  EXPECT_EQ(point_stabilizer(e.group, 2).order(), 12);
  EXPECT_EQ(point_stabilizer(symmetric_group(4), 0).order(), 6);
  EXPECT_EQ(point_stabilizer(cyclic_group(7), 0).order(), 1);
}

TEST(PermGroup, MembershipAndSubgroups) {
  auto s4 = symmetric_group(4);
  auto a4 = alternating_group(4);
  EXPECT_TRUE(is_subgroup(a4, s4));
  EXPECT_FALSE(is_subgroup(s4, a4));
  EXPECT_FALSE(a4.contains(Permutation::parse("(0,1)", 4)));
  EXPECT_TRUE(a4.contains(Permutation::parse("(0,1)(2,3)", 4)));
}

TEST(PermGroup, Orbits) {
  PermGroup g(6, {Permutation::parse("(0,1,2)", 6), Permutation::parse("(3,4)", 6)});
  auto orbs = g.orbits();
  ASSERT_EQ(orbs.size(), 3u);
  EXPECT_EQ(orbs[0], (std::vector<Point>{0, 1, 2}));
  EXPECT_FALSE(g.is_transitive());
  EXPECT_TRUE(cyclic_group(6).is_transitive());
}

TEST(Blocks, Systems) {
  EXPECT_TRUE(block_systems(symmetric_group(4)).empty());
  EXPECT_TRUE(is_primitive(symmetric_group(4)));

  auto c4 = block_systems(cyclic_group(4));
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_EQ(c4[0].count(), 2u);
  EXPECT_EQ(c4[0].block_size(), 2u);

  auto w = parse_group_spec("sym:2 wr sym:3").group;
  bool found = false;
  for (const auto& bs : block_systems(w)) found |= bs.count() == 3 && bs.block_size() == 2;
  EXPECT_TRUE(found);
}

TEST(Blocks, SystemsAreInvariant) {
  for (auto spec : {"cyclic:12", "dihedral:8", "sym:2 wr sym:3", "sym:3 wr sym:2"}) {
    auto g = parse_group_spec(spec).group;
    for (const auto& bs : block_systems(g)) {
      for (const auto& s : g.generators()) {
        for (const auto& b : bs.blocks) {
          std::set<Point> img;
          for (auto x : b) img.insert(s.image(x));
          bool hit = false;
          for (const auto& c : bs.blocks) hit |= std::set<Point>(c.begin(), c.end()) == img;
          EXPECT_TRUE(hit) << spec;
        }
      }
    }
  }
}

TEST(CosetAction, Examples) {
  auto s4 = symmetric_group(4);
  auto nat = coset_action(s4, point_stabilizer(s4, 0));
  EXPECT_EQ(nat.image.degree(), 4u);
  EXPECT_TRUE(nat.faithful());
  EXPECT_EQ(nat.image.order(), 24);

  auto six = coset_action(s4, PermGroup(4, {Permutation::parse("(0,1,2,3)", 4)}));
  EXPECT_EQ(six.image.degree(), 6u);
  EXPECT_TRUE(six.image.is_transitive());

  auto s3 = symmetric_group(3);
  EXPECT_EQ(coset_action(s3, s3).image.degree(), 1u);
}

TEST(CosetAction, StabilizerCosetsMatchOriginalAction) {
  for (auto spec : {"dihedral:6", "affine1:7", "psl:2:5", "sym:2 wr sym:3"}) {
    auto g = parse_group_spec(spec).group;
    auto ca = coset_action(g, point_stabilizer(g, 0));
    ASSERT_EQ(ca.image.degree(), g.degree()) << spec;
    // coset H r corresponds to the point 0^r
    std::vector<Point> to_point(ca.reps.size());
    for (std::size_t i = 0; i < ca.reps.size(); ++i) to_point[i] = ca.reps[i].image(0);
    for (std::size_t j = 0; j < g.generators().size(); ++j)
      for (std::size_t i = 0; i < to_point.size(); ++i)
        EXPECT_EQ(to_point[ca.image.generators()[j].image(static_cast<Point>(i))], g.generators()[j].image(to_point[i])) << spec;
  }
}

TEST(Homogeneity, OrbitCounts) {
  EXPECT_EQ(ksubset_orbit_count(symmetric_group(5), 2), 1u);
  EXPECT_EQ(ksubset_orbit_count(cyclic_group(6), 2), 3u);
  EXPECT_EQ(ksubset_orbit_count(dihedral_group(5), 2), 2u);
  EXPECT_EQ(homogeneity_degree(symmetric_group(6), 3), 3u);
  EXPECT_EQ(homogeneity_degree(cyclic_group(6), 3), 1u);
}

TEST(PointSet, Operations) {
  PointSet a(70, {0, 3, 65});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(65));
  EXPECT_FALSE(a.contains(64));
  PointSet b(70, {3});
  EXPECT_TRUE(a.intersects(b));
  auto shift = Permutation::parse("(3,4)", 70);
  EXPECT_FALSE(b.image(shift).intersects(b));
}
