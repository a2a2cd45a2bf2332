#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/generators.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/random.hpp"

namespace polycalc {
namespace {

using testing::interval;
using testing::poly;
using testing::q;
using testing::square;
using testing::vec;

bool same_points(std::vector<Vec> a, std::vector<Vec> b) {
  std::sort(a.begin(), a.end(), LexLess{});
  std::sort(b.begin(), b.end(), LexLess{});
  return a == b;
}

TEST(Polyhedra, Contains) {
  EXPECT_TRUE(square(-1, 1).contains(vec({0, 0})));
  EXPECT_FALSE(square(-1, 1).contains(vec({2, 0})));
  EXPECT_TRUE(poly(2, {}, {{1, 0, 0}}).contains(vec({0, 5})));
}

TEST(Polyhedra, ProjectTriangle) {
  const HPolyhedron tri = poly(2, {{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}});
  EXPECT_TRUE(set_equal(project(tri, {0}), interval(0, 1)));
}

TEST(Polyhedra, ProjectProductGivesFactor) {
  const HPolyhedron p = poly(2, {{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}});
  const HPolyhedron prod = p.product(interval(3, 5));
  EXPECT_TRUE(set_equal(project_prefix(prod, 2), p));
}

TEST(Polyhedra, ProjectLineIsEverything) {
  // y >= 2x and y <= 2x: eliminating y leaves no constraint on x.
  const HPolyhedron line = poly(2, {{2, -1, 0}, {-2, 1, 0}});
  const HPolyhedron shadow = project(line, {0});
  EXPECT_TRUE(set_equal(shadow, HPolyhedron::universe(1)));
  EXPECT_TRUE(shadow.ineq().empty());
  EXPECT_TRUE(shadow.eq().empty());
}

TEST(Polyhedra, MinkowskiDifference) {
  EXPECT_TRUE(set_equal(minkowski_diff(interval(0, 1), interval(0, 1)), interval(-1, 1)));
  EXPECT_TRUE(set_equal(minkowski_diff(square(0, 1), HPolyhedron::point(vec({2, 2}))),
                        square(-2, -1)));
  EXPECT_TRUE(set_equal(minkowski_diff(HPolyhedron::point(vec({0})), poly(1, {{-1, 0}})),
                        poly(1, {{1, 0}})));
}

TEST(Polyhedra, OriginInInterior) {
  EXPECT_TRUE(origin_in_interior(square(-1, 1)));
  EXPECT_FALSE(origin_in_interior(interval(0, 1)));
  EXPECT_FALSE(origin_in_interior(poly(1, {}, {{1, 0}})));
}

TEST(Polyhedra, ConicHull) {
  const PolyhedralCone ray = conic_hull(HPolyhedron::point(vec({1, 1})));
  EXPECT_TRUE(set_equal(ray.set(), testing::cone_of(2, {vec({1, 1})})));
  EXPECT_TRUE(set_equal(conic_hull(interval(-1, 1)).set(), HPolyhedron::universe(1)));
  // Generated by the vertices 1 and 2 of [1, 2].
  EXPECT_TRUE(set_equal(conic_hull(interval(1, 2)).set(), poly(1, {{-1, 0}})));
}

TEST(Polyhedra, IsSubspace) {
  EXPECT_TRUE(is_subspace(PolyhedralCone::whole(3)));
  EXPECT_FALSE(is_subspace(PolyhedralCone(poly(1, {{-1, 0}}))));
  EXPECT_TRUE(is_subspace(PolyhedralCone::zero(2)));
}

TEST(Polyhedra, HToVSquare) {
  const Generators g = h_to_v(square(0, 1));
  EXPECT_TRUE(same_points(g.vertices, {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})}));
  EXPECT_TRUE(g.rays.empty());
  EXPECT_TRUE(g.lineality.empty());
}

TEST(Polyhedra, HToVHalfLine) {
  const Generators g = h_to_v(poly(1, {{-1, 0}}));
  EXPECT_EQ(g.vertices, std::vector<Vec>{vec({0})});
  ASSERT_EQ(g.rays.size(), 1u);
  EXPECT_GT(g.rays[0][0], 0);
}

TEST(Polyhedra, HToVAbsEpigraph) {
  // y >= |x|: the active-set systems give vertex (0,0) and rays (±1, 1).
  const Generators g = h_to_v(poly(2, {{1, -1, 0}, {-1, -1, 0}}));
  EXPECT_EQ(g.vertices, std::vector<Vec>{vec({0, 0})});
  ASSERT_EQ(g.rays.size(), 2u);
  std::vector<Vec> rays;
  for (const Vec& r : g.rays) rays.push_back(primitive(r));
  EXPECT_TRUE(same_points(rays, {vec({1, 1}), vec({-1, 1})}));
}

TEST(Polyhedra, AffineImageAndPreimage) {
  EXPECT_TRUE(set_equal(affine_image(interval(0, 1), {vec({2})}, vec({1})), interval(1, 3)));
  EXPECT_TRUE(set_equal(affine_preimage(interval(0, 1), {vec({2})}, 1, vec({0})),
                        interval(0, q("1/2"))));
  EXPECT_TRUE(set_equal(affine_image(square(0, 1), {vec({1, 1})}, vec({0})), interval(0, 2)));
}

TEST(Polyhedra, SubsetAndEquality) {
  EXPECT_TRUE(set_subset(interval(0, 1), interval(0, 2)));
  EXPECT_FALSE(set_subset(interval(0, 2), interval(0, 1)));
  const HPolyhedron redundant =
      poly(2, {{1, 0, 1}, {-1, 0, 0}, {0, 1, 1}, {0, -1, 0}, {1, 1, 2}, {2, 0, 2}});
  EXPECT_TRUE(set_equal(redundant, square(0, 1)));
  EXPECT_EQ(canonicalize(redundant), canonicalize(square(0, 1)));
  EXPECT_TRUE(set_subset(HPolyhedron::empty(2), square(0, 1)));
}

TEST(Polyhedra, EmptyAndBounded) {
  EXPECT_TRUE(is_empty(poly(1, {{1, -1}, {-1, -2}})));
  EXPECT_FALSE(is_empty(interval(0, 0)));
  EXPECT_TRUE(is_bounded(square(0, 1)));
  EXPECT_FALSE(is_bounded(poly(1, {{-1, 0}})));
}

TEST(Polyhedra, RelativeInteriorTests) {
  // Collinear segments overlapping in more than a point.
  const HPolyhedron s1 = poly(2, {{1, 0, 1}, {-1, 0, 1}}, {{0, 1, 0}});
  const HPolyhedron s2 = poly(2, {{1, 0, 2}, {-1, 0, 0}}, {{0, 1, 0}});
  EXPECT_TRUE(relative_interiors_meet(s1, s2));
  EXPECT_FALSE(origin_in_interior_of_difference(s1, s2));
  // Touching at an endpoint only.
  const HPolyhedron s3 = poly(2, {{1, 0, 1}, {-1, 0, -1}}, {{0, 1, 0}});
  const HPolyhedron s4 = poly(2, {{1, 0, 2}, {-1, 0, -1}}, {{0, 1, 0}});
  EXPECT_FALSE(relative_interiors_meet(s3, s4));
  // Crossing segments: the difference is a full square.
  const HPolyhedron v = poly(2, {{0, 1, 1}, {0, -1, 1}}, {{1, 0, 0}});
  EXPECT_TRUE(origin_in_interior_of_difference(s1, v));
}

class PolyhedraProperty : public ::testing::TestWithParam<std::size_t> {};

HPolyhedron random_set(std::size_t index, std::size_t stream) {
  Rng rng(5, stream, index);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
  const Vec planted = random_vec(rng, n, -2, 2);
  HPolyhedron p = random_polytope(rng, planted, 2, rng.coin());
  // Sometimes drop the upper box rows to get an unbounded set.
  if (rng.coin()) {
    std::vector<Row> keep;
    for (const Row& r : p.ineq()) {
      const auto nonzero =
          std::count_if(r.a.begin(), r.a.end(), [](const Rational& x) { return x != 0; });
      const bool upper = nonzero == 1 &&
                         std::any_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x > 0; });
      if (!upper) keep.push_back(r);
    }
    p = HPolyhedron(n, keep, p.eq());
  }
  return p;
}

TEST_P(PolyhedraProperty, RoundTripThroughGenerators) {
  const HPolyhedron p = random_set(GetParam(), 1);
  EXPECT_TRUE(set_equal(p, v_to_h(h_to_v(p))));
}

TEST_P(PolyhedraProperty, ProjectionOfProduct) {
  const HPolyhedron p = random_set(GetParam(), 2);
  const HPolyhedron r = random_set(GetParam(), 3);
  EXPECT_TRUE(set_equal(project_prefix(p.product(r), p.dim()), p));
}

TEST_P(PolyhedraProperty, MinkowskiDifferenceIdentities) {
  const HPolyhedron p = random_set(GetParam(), 4);
  EXPECT_TRUE(set_equal(minkowski_diff(p, HPolyhedron::point(zeros(p.dim()))), p));
  EXPECT_TRUE(minkowski_diff(p, p).contains(zeros(p.dim())));
}

TEST_P(PolyhedraProperty, ConicHullIdempotentAndSubspaceSymmetric) {
  const HPolyhedron p = random_set(GetParam(), 5);
  const PolyhedralCone k = conic_hull(p);
  EXPECT_TRUE(set_equal(conic_hull(k.set()).set(), k.set()));
  if (is_subspace(k)) {
    EXPECT_TRUE(set_equal(k.set(), k.set().reflect()));
  }
}

TEST_P(PolyhedraProperty, CanonicalFormIsAnInvariant) {
  const HPolyhedron p = random_set(GetParam(), 6);
  const HPolyhedron scrambled = v_to_h(h_to_v(p));
  EXPECT_EQ(canonicalize(p), canonicalize(scrambled));
}

INSTANTIATE_TEST_SUITE_P(Random, PolyhedraProperty, ::testing::Range<std::size_t>(0, 25));

}  // namespace
}  // namespace polycalc
