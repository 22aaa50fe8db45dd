#include <gtest/gtest.h>

#include "cluscat/cluster.hpp"
#include "cluscat/series.hpp"

namespace {

using cluscat::Integer;
using cluscat::narayana_number;
using cluscat::Rational;
using cluscat::TruncatedSeries;

TEST(NarayanaNumbers, TriangleValuesAndSymmetry) {
  EXPECT_EQ(narayana_number(0, 0), 1);
  EXPECT_EQ(narayana_number(1, 1), 1);
  EXPECT_EQ(narayana_number(6, 3), 50);
  EXPECT_EQ(narayana_number(7, 4), 175);
  EXPECT_EQ(narayana_number(8, 4), 490);
  for (long n = 1; n <= 12; ++n) {
    Integer row = 0;
    for (long k = 1; k <= n; ++k) {
      EXPECT_EQ(narayana_number(n, k), narayana_number(n, n + 1 - k));
      row += narayana_number(n, k);
    }
    // Row sums are the Catalan numbers.
    const Integer catalan =
        cluscat::binomial(Integer(2 * n), n) / Integer(n + 1);
    EXPECT_EQ(row, catalan);
  }
}

TEST(NarayanaSeries, ThreeRoutesAgreeAtOrderTwelve) {
  const TruncatedSeries closed = cluscat::narayana_series_closed(12);
  EXPECT_EQ(closed, cluscat::narayana_series_recurrence(12));
  EXPECT_EQ(closed, cluscat::narayana_series_limit(12));
}

TEST(NarayanaSeries, CoefficientsAreSignedNarayanaNumbers) {
  const int order = 12;
  const TruncatedSeries n = cluscat::narayana_series_closed(order);
  EXPECT_EQ(n.coefficient({7, 3}), Rational(-50));
  EXPECT_EQ(n.coefficient({8, 4}), Rational(-175));
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; i + j <= order; ++j) {
      const Rational c = n.coefficient({i, j});
      if (i == 0 && j == 0) {
        EXPECT_EQ(c, Rational(1));
        continue;
      }
      if (j >= i) {
        EXPECT_EQ(c, Rational(0));
        continue;
      }
      Rational expect(narayana_number(i - 1, j));
      if ((i + j) % 2 == 0) expect = -expect;
      EXPECT_EQ(c, expect) << "coefficient at y1^" << i << " y2^" << j;
    }
  }
}

TEST(NarayanaSeries, HypergeometricSidesMatchTheClosedForm) {
  for (long i = 3; i <= 12; ++i) {
    for (long j = 2; j < i; ++j) {
      const auto id = cluscat::narayana_hypergeom_identity(i, j);
      EXPECT_EQ(id.lhs, id.rhs) << "i=" << i << " j=" << j;
      EXPECT_EQ(id.lhs, id.closed) << "i=" << i << " j=" << j;
    }
  }
}

}  // namespace
