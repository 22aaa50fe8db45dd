#include "cluscat/series.hpp"

#include <gtest/gtest.h>

#include <random>

namespace cluscat {
namespace {

TruncatedSeries y(int vars, int order, int idx) {
  return TruncatedSeries::variable(vars, order, idx);
}

// Hand-expanded geometric series 1 + u + u^2 + ... for u = y1*y2.
TruncatedSeries geometric_y1y2(int order) {
  TruncatedSeries s(2, order);
  for (int k = 0; 2 * k <= order; ++k) s.add_term({k, k}, 1);
  return s;
}

// Hand-expanded 1 + 2u + 3u^2 + ... for u = y1*y2.
TruncatedSeries geometric_squared_y1y2(int order) {
  TruncatedSeries s(2, order);
  for (int k = 0; 2 * k <= order; ++k) s.add_term({k, k}, k + 1);
  return s;
}

TEST(SeriesBasics, AdditionMergesAndCancels) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto a = one + y(2, K, 0);
  auto b = one + y(2, K, 1);
  auto sum = a + b;
  EXPECT_EQ(sum.coefficient({0, 0}), 2);
  EXPECT_EQ(sum.coefficient({1, 0}), 1);
  EXPECT_EQ(sum.coefficient({0, 1}), 1);
  EXPECT_EQ(sum.terms().size(), 3u);

  auto u = y(2, K, 0) * y(2, K, 1);
  EXPECT_TRUE(((one - u) + u).is_one());
}

TEST(SeriesBasics, ProductOfBinomials) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto p = (one + y(2, K, 0)) * (one + y(2, K, 1));
  EXPECT_EQ(p.coefficient({0, 0}), 1);
  EXPECT_EQ(p.coefficient({1, 0}), 1);
  EXPECT_EQ(p.coefficient({0, 1}), 1);
  EXPECT_EQ(p.coefficient({1, 1}), 1);
  EXPECT_EQ(p.terms().size(), 4u);
}

TEST(SeriesBasics, TruncationDropsHighDegree) {
  const int K = 2;
  auto one = TruncatedSeries::one(2, K);
  auto u = y(2, K, 0) * y(2, K, 1);
  auto p = (one + u) * (one + u);
  EXPECT_EQ(p.coefficient({1, 1}), 2);
  EXPECT_EQ(p.coefficient({2, 2}), 0);
}

TEST(SeriesInverse, GeometricSeriesOracle) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto u = y(2, K, 0) * y(2, K, 1);
  EXPECT_EQ((one - u).inverse(), geometric_y1y2(K));
}

TEST(SeriesInverse, SquaredGeometricAgainstHandProduct) {
  // (1 - u) * (1 + 2u + 3u^2 + ...) telescopes to the plain geometric
  // series; both factors here are written out by hand, so this pins the
  // multiplication independently of inverse()/pow().
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto u = y(2, K, 0) * y(2, K, 1);
  EXPECT_EQ((one - u) * geometric_squared_y1y2(K), geometric_y1y2(K));
  EXPECT_EQ((one - u).pow(-2), geometric_squared_y1y2(K));
}

TEST(SeriesInverse, TwoSided) {
  const int K = 5;
  TruncatedSeries a(3, K);
  a.add_term({0, 0, 0}, Rational(3, 2));
  a.add_term({1, 0, 0}, -2);
  a.add_term({0, 1, 1}, Rational(5, 7));
  a.add_term({2, 1, 0}, 4);
  auto inv = a.inverse();
  EXPECT_TRUE((a * inv).is_one());
  EXPECT_TRUE((inv * a).is_one());
}

TEST(SeriesPow, IntegerAndBinary) {
  const int K = 8;
  auto one = TruncatedSeries::one(2, K);
  auto f = one + y(2, K, 0);
  auto p5 = f.pow(5);
  for (int k = 0; k <= 5; ++k) {
    EXPECT_EQ(p5.coefficient({k, 0}), binomial(5L, k));
  }
  EXPECT_TRUE(f.pow(0).is_one());
  EXPECT_EQ(f.pow(-3) * f.pow(3), one);
}

TEST(SeriesPowRational, SquareRootOfPerfectSquare) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto f = one + y(2, K, 0);
  EXPECT_EQ((f * f).pow_rational(Rational(1, 2)), f);
}

TEST(SeriesPowRational, NegativeTwoMatchesHandSeries) {
  const int K = 4;
  auto one = TruncatedSeries::one(2, K);
  auto u = y(2, K, 0) * y(2, K, 1);
  EXPECT_EQ((one - u).pow_rational(-2), geometric_squared_y1y2(K));
}

TEST(SeriesPowRational, ExponentAdditivity) {
  const int K = 5;
  auto one = TruncatedSeries::one(2, K);
  auto f = one + y(2, K, 0) + Rational(2) * y(2, K, 1) +
           Rational(3) * y(2, K, 0) * y(2, K, 1);
  for (int pn = -6; pn <= 6; ++pn) {
    for (int pd = 1; pd <= 6; ++pd) {
      const Rational p = make_rational(pn, pd);
      const Rational q = make_rational(5 - pn, pd + 1);
      auto lhs = f.pow_rational(p) * f.pow_rational(q);
      auto rhs = f.pow_rational(p + q);
      ASSERT_EQ(lhs, rhs) << "p=" << to_string(p) << " q=" << to_string(q);
    }
  }
}

TEST(SeriesSqrt, RecoversSquareAndHandlesConstants) {
  const int K = 4;
  auto one = TruncatedSeries::one(2, K);
  auto f = Rational(3, 2) * one + y(2, K, 0) + y(2, K, 1);
  EXPECT_EQ((f * f).sqrt_series(), f);
  auto nine = TruncatedSeries::constant(2, K, 9);
  EXPECT_EQ(nine.sqrt_series(), TruncatedSeries::constant(2, K, 3));
  auto two = TruncatedSeries::constant(2, K, 2);
  EXPECT_THROW(two.sqrt_series(), std::domain_error);
}

TEST(SeriesSqrt, QuadraticFormulaBranch) {
  // (1 + y1 + y1*y2 + sqrt((1 + y1 + y1*y2)^2 - 4*y1*y2)) / 2
  // = 1 + y1 + y1^2*y2 + O(degree 4); derived by hand from the binomial
  // expansion of the square root.
  const int K = 3;
  auto one = TruncatedSeries::one(2, K);
  auto h = one + y(2, K, 0) + y(2, K, 0) * y(2, K, 1);
  auto four_u = Rational(4) * (y(2, K, 0) * y(2, K, 1));
  auto n = Rational(1, 2) * (h + (h * h - four_u).sqrt_series());
  TruncatedSeries expect(2, K);
  expect.add_term({0, 0}, 1);
  expect.add_term({1, 0}, 1);
  expect.add_term({2, 1}, 1);
  EXPECT_EQ(n, expect);
}

TEST(SeriesTruncate, LowersOrderCoherently) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto u = y(2, K, 0) * y(2, K, 1);
  auto inv = (one - u).inverse();
  EXPECT_EQ(inv.truncated(3), geometric_y1y2(3));
  EXPECT_THROW(inv.truncated(7), std::invalid_argument);
}

TEST(SeriesRestrict, KeepsOnlyRayMultiples) {
  const int K = 8;
  TruncatedSeries s(2, K);
  s.add_term({0, 0}, 7);
  s.add_term({1, 2}, 3);
  s.add_term({2, 4}, -5);
  s.add_term({1, 1}, 11);
  s.add_term({2, 3}, 13);
  auto r = s.restrict_exponent_ray({1, 2});
  EXPECT_EQ(r.coefficient({0, 0}), 7);
  EXPECT_EQ(r.coefficient({1, 2}), 3);
  EXPECT_EQ(r.coefficient({2, 4}), -5);
  EXPECT_EQ(r.terms().size(), 3u);
}

TEST(SeriesSubstitute, PlugsSeriesIntoVariables) {
  const int K = 4;
  auto one = TruncatedSeries::one(2, K);
  auto f = (one - y(2, K, 0) * y(2, K, 1)).inverse();
  // Substituting y1 -> y1, y2 -> y2 is the identity.
  std::vector<TruncatedSeries> id = {y(2, K, 0), y(2, K, 1)};
  EXPECT_EQ(f.substitute(id), f);
  // f(u, u) = 1/(1 - u^2).
  std::vector<TruncatedSeries> diag = {y(2, K, 0), y(2, K, 0)};
  auto g = f.substitute(diag);
  TruncatedSeries expect(2, K);
  expect.add_term({0, 0}, 1);
  expect.add_term({2, 0}, 1);
  expect.add_term({4, 0}, 1);
  EXPECT_EQ(g, expect);
  auto bad = std::vector<TruncatedSeries>{one, y(2, K, 1)};
  EXPECT_THROW(f.substitute(bad), std::domain_error);
}

TEST(SeriesSubstitute, CompositionAssociates) {
  const int K = 5;
  auto a = y(2, K, 0) + y(2, K, 1) * y(2, K, 1);
  auto b = y(2, K, 1) + y(2, K, 0) * y(2, K, 1);
  auto f = TruncatedSeries::one(2, K) + y(2, K, 0) * y(2, K, 1);
  auto g = f.inverse();
  std::vector<TruncatedSeries> args = {a, b};
  EXPECT_EQ((f * g).substitute(args),
            f.substitute(args) * g.substitute(args));
}

TEST(SeriesDivide, FiniteOrderWithDegreeBound) {
  const int K = 6;
  auto one = TruncatedSeries::one(2, K);
  auto f = one + y(2, K, 0);
  auto g = one + y(2, K, 1) + y(2, K, 0) * y(2, K, 1);
  auto q = divide_exact(f * g, g, 1);
  EXPECT_EQ(q, f);
  EXPECT_THROW(divide_exact(f * g, g, 0), std::domain_error);
}

TEST(SeriesDivide, ExactPolynomialLongDivision) {
  const int NT = TruncatedSeries::kNoTruncation;
  auto one = TruncatedSeries::one(2, NT);
  auto f = one + y(2, NT, 0) + Rational(2) * y(2, NT, 0) * y(2, NT, 1);
  auto g = one + y(2, NT, 1);
  EXPECT_EQ(divide_exact(f * g, g), f);
  // 1 + y1*y2 does not divide 1 + y1.
  auto h = one + y(2, NT, 0) * y(2, NT, 1);
  EXPECT_THROW(divide_exact(one + y(2, NT, 0), h), std::domain_error);
}

TEST(SeriesRing, AxiomsOnPseudoRandomInputs) {
  const int K = 4;
  std::mt19937 rng(20260825);
  std::uniform_int_distribution<int> expo(0, 2);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto rand_series = [&] {
    TruncatedSeries s(3, K);
    for (int t = 0; t < 6; ++t) {
      s.add_term({expo(rng), expo(rng), expo(rng)}, coef(rng));
    }
    return s;
  };
  for (int trial = 0; trial < 25; ++trial) {
    auto a = rand_series(), b = rand_series(), c = rand_series();
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, TruncatedSeries(3, K));
    ASSERT_EQ((a * b).truncated(2), a.truncated(2) * b.truncated(2));
  }
}

TEST(SeriesText, CanonicalFormAndOrdering) {
  const int K = 8;
  TruncatedSeries s(2, K);
  s.add_term({1, 1}, 1);
  s.add_term({0, 0}, 1);
  EXPECT_EQ(s.to_string(), "1 + y1*y2");

  TruncatedSeries t(3, K);
  t.add_term({0, 0, 0}, 1);
  t.add_term({1, 0, 2}, -3);
  t.add_term({0, 1, 0}, Rational(1, 2));
  t.add_term({2, 1, 1}, 1);
  EXPECT_EQ(t.to_string(), "1 + 1/2*y2 - 3*y1*y3^2 + y1^2*y2*y3");

  EXPECT_EQ(TruncatedSeries(2, K).to_string(), "0");
  TruncatedSeries neg(2, K);
  neg.add_term({1, 0}, -1);
  EXPECT_EQ(neg.to_string(), "-y1");
}

TEST(SeriesText, ParseRoundTrip) {
  const int K = 8;
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> expo(0, 3);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    TruncatedSeries s(3, K);
    for (int t = 0; t < 7; ++t) {
      s.add_term({expo(rng), expo(rng), expo(rng)},
                 make_rational(num(rng), den(rng)));
    }
    auto text = s.to_string();
    auto back = TruncatedSeries::parse(text, 3, K);
    ASSERT_EQ(back, s) << text;
    ASSERT_EQ(back.to_string(), text);
  }
  EXPECT_EQ(TruncatedSeries::parse("0", 2, K), TruncatedSeries(2, K));
  EXPECT_EQ(TruncatedSeries::parse("1 + y1*y2", 2, K).coefficient({1, 1}), 1);
  EXPECT_THROW(TruncatedSeries::parse("1 + $", 2, K), std::invalid_argument);
  EXPECT_THROW(TruncatedSeries::parse("y9", 2, K), std::invalid_argument);
}

TEST(LaurentElementOps, MultiplyAddsExponents) {
  const int K = 4;
  auto one = TruncatedSeries::one(2, K);
  LaurentElement a({1, 0}, {0, 1}, one + y(2, K, 0));
  LaurentElement b({-2, 3}, {1, 0}, one - y(2, K, 1));
  auto p = a * b;
  EXPECT_EQ(p.lambda, (std::vector<long>{-1, 3}));
  EXPECT_EQ(p.beta0, (std::vector<long>{1, 1}));
  EXPECT_EQ(p.coeff, (one + y(2, K, 0)) * (one - y(2, K, 1)));
  auto m = LaurentElement::monomial({2, -1}, K);
  EXPECT_TRUE(m.coeff.is_one());
  EXPECT_EQ(m.beta0, (std::vector<long>{0, 0}));
}

}  // namespace
}  // namespace cluscat
