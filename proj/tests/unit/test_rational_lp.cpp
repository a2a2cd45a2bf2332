#include <gtest/gtest.h>

#include <variant>

#include "helpers.hpp"
#include "polycalc/errors.hpp"
#include "polycalc/generators.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/random.hpp"

namespace polycalc {
namespace {

using testing::interval;
using testing::poly;
using testing::q;
using testing::square;
using testing::vec;

TEST(Rational, ParsesCanonicalForm) {
  EXPECT_EQ(parse_rational("6/4"), q("3/2"));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-8/4")), "-2");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  const Rational r = parse_rational("-10/4");
  EXPECT_GT(r.get_den(), 0);
  EXPECT_EQ(r, q("-5/2"));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"1/0", "", "abc", "1//2", "1.5", "+inf", "3/-4"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParseError) << bad;
    }
  }
}

TEST(Rational, ArithmeticIsExact) {
  Rational sum = 0;
  for (int k = 1; k <= 20; ++k) sum += Rational(1, k * (k + 1));
  EXPECT_EQ(sum, q("20/21"));
  EXPECT_EQ(q("1/3") * 3, Rational(1));
}

TEST(ExtReal, OrderingAndInfinityRules) {
  const ExtReal inf = ExtReal::plus_infinity();
  const ExtReal ninf = ExtReal::minus_infinity();
  EXPECT_LT(ninf, ExtReal(-1000000));
  EXPECT_LT(ExtReal(1000000), inf);
  EXPECT_EQ(inf + ExtReal(5), inf);
  EXPECT_EQ(ninf + ExtReal(5), ninf);
  EXPECT_EQ(ExtReal(q("1/2")) + ExtReal(q("1/3")), ExtReal(q("5/6")));
  EXPECT_EQ(-inf, ninf);
  EXPECT_THROW(inf + ninf, Error);
  EXPECT_EQ(parse_ext_real("+inf"), inf);
  EXPECT_EQ(to_string(inf), "+inf");
  EXPECT_EQ(parse_ext_real("-3/9"), ExtReal(q("-1/3")));
}

TEST(Lp, BoxVertexOptimum) {
  const HPolyhedron box = square(-1, 1);
  const LpResult r = solve_lp(vec({1, 1}), Sense::kMaximize, box);
  const auto* opt = std::get_if<LpOptimal>(&r);
  ASSERT_NE(opt, nullptr);
  EXPECT_EQ(opt->value, 2);
  EXPECT_EQ(opt->point, vec({1, 1}));
  EXPECT_TRUE(verify_lp_result(vec({1, 1}), Sense::kMaximize, box, r));
}

TEST(Lp, UnboundedRay) {
  const HPolyhedron half = poly(1, {{-1, 0}});
  const LpResult r = solve_lp(vec({1}), Sense::kMaximize, half);
  const auto* unb = std::get_if<LpUnbounded>(&r);
  ASSERT_NE(unb, nullptr);
  EXPECT_EQ(unb->point, vec({0}));
  EXPECT_GT(unb->ray[0], 0);
  EXPECT_TRUE(verify_lp_result(vec({1}), Sense::kMaximize, half, r));
}

TEST(Lp, InfeasibleCertificate) {
  const HPolyhedron p = poly(1, {{1, -1}, {-1, -2}});
  for (const Vec& c : {vec({1}), vec({-3}), vec({0})}) {
    const LpResult r = solve_lp(c, Sense::kMinimize, p);
    const auto* inf = std::get_if<LpInfeasible>(&r);
    ASSERT_NE(inf, nullptr);
    EXPECT_TRUE(verify_lp_result(c, Sense::kMinimize, p, r));
    // y1 (x + 1) + y2 (-x + 2) combination: y ≥ 0, Aᵀy = 0, bᵀy < 0.
    Rational lhs = inf->ineq_multipliers[0] - inf->ineq_multipliers[1];
    Rational rhs = -inf->ineq_multipliers[0] - 2 * inf->ineq_multipliers[1];
    EXPECT_EQ(lhs, 0);
    EXPECT_LT(rhs, 0);
  }
}

TEST(Lp, EqualityRowsAndMinimization) {
  // min x + 2y on {x + y = 1, x, y >= 0} -> 1 at (1, 0).
  const HPolyhedron p = poly(2, {{-1, 0, 0}, {0, -1, 0}}, {{1, 1, 1}});
  const LpResult r = solve_lp(vec({1, 2}), Sense::kMinimize, p);
  const auto* opt = std::get_if<LpOptimal>(&r);
  ASSERT_NE(opt, nullptr);
  EXPECT_EQ(opt->value, 1);
  EXPECT_EQ(opt->point, vec({1, 0}));
  EXPECT_TRUE(verify_lp_result(vec({1, 2}), Sense::kMinimize, p, r));
}

TEST(Lp, DimensionMismatchIsRejected) {
  EXPECT_THROW(solve_lp(vec({1, 2, 3}), Sense::kMaximize, square(0, 1)), Error);
}

TEST(Lp, ImpliesAgreesWithOptimization) {
  const HPolyhedron tri = poly(2, {{-1, 0, 0}, {0, -1, 0}, {1, 1, 1}});
  EXPECT_TRUE(implies(tri, vec({1, 0}), 1));
  EXPECT_TRUE(implies(tri, vec({2, 1}), 2));
  EXPECT_FALSE(implies(tri, vec({2, 1}), q("19/10")));
  EXPECT_FALSE(implies(tri, vec({-1, 0}), -1));
  const HPolyhedron line = poly(2, {}, {{1, -1, 0}});
  EXPECT_TRUE(implies(line, vec({1, -1}), 0));
  EXPECT_FALSE(implies(line, vec({1, 0}), 100));
}

// Strong duality, complementary slackness and determinism on random data.
TEST(LpProperty, CertificatesVerifyOnRandomPrograms) {
  for (std::size_t i = 0; i < 60; ++i) {
    Rng rng(11, 1, i);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    HPolyhedron p(n);
    const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 6));
    for (std::size_t k = 0; k < rows; ++k) {
      p.add_ineq(random_vec(rng, n, -3, 3), Rational(rng.uniform(-3, 3)));
    }
    if (rng.coin()) p.add_eq(random_nonzero_vec(rng, n, -2, 2), Rational(rng.uniform(-2, 2)));
    const Vec c = random_vec(rng, n, -3, 3);
    for (Sense s : {Sense::kMaximize, Sense::kMinimize}) {
      const LpResult r = solve_lp(c, s, p);
      EXPECT_TRUE(verify_lp_result(c, s, p, r)) << "instance " << i;
      const LpResult again = solve_lp(c, s, p);
      EXPECT_EQ(r.index(), again.index());
      if (const auto* opt = std::get_if<LpOptimal>(&r)) {
        const auto& o2 = std::get<LpOptimal>(again);
        EXPECT_EQ(opt->point, o2.point);
        EXPECT_EQ(opt->ineq_duals, o2.ineq_duals);
        Rational dual_value = 0;
        for (std::size_t k = 0; k < p.ineq().size(); ++k) {
          EXPECT_GE(opt->ineq_duals[k], 0);
          dual_value += opt->ineq_duals[k] * p.ineq()[k].b;
        }
        for (std::size_t k = 0; k < p.eq().size(); ++k) {
          dual_value += opt->eq_duals[k] * p.eq()[k].b;
        }
        EXPECT_EQ(s == Sense::kMaximize ? opt->value : -opt->value, dual_value);
      }
    }
  }
}

}  // namespace
}  // namespace polycalc
