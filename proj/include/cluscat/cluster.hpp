#pragma once

// Cluster-algebra machinery with principal coefficients: seed mutation
// tracking the exchange matrix, coefficient (c-vector) matrix, g-vectors and
// F-polynomials; the rank-2 bi-infinite variable walk x_i; closed forms for
// the rank-2 g-vectors and wall normals; the limiting wall function in the
// affine cases; and the Narayana series with its three independent
// computation routes plus the hypergeometric identity behind it.

#include <map>
#include <stdexcept>
#include <vector>

#include "cluscat/rootdata.hpp"
#include "cluscat/series.hpp"

namespace cluscat {

// Integer sequences P_m (m >= -2) and Q_m (m >= 0) attached to the rank-2
// exchange matrix [[0, b], [a, 0]]. P drives the g-vector and wall-normal
// closed forms, Q the exponents in the limiting-wall power product.
inline Integer poly_P(long m, long a, long b) {
  if (m < -2) throw std::invalid_argument("poly_P needs m >= -2");
  Integer prev2 = -1, prev1 = 0;  // P_{-2}, P_{-1}
  if (m == -2) return prev2;
  if (m == -1) return prev1;
  Integer cur = 0;
  for (long k = 0; k <= m; ++k) {
    cur = (k % 2 == 0) ? Integer(-a * b * prev1 - prev2)
                       : Integer(prev1 - prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

inline Integer poly_Q(long m, long a, long b) {
  if (m < 0) throw std::invalid_argument("poly_Q needs m >= 0");
  Integer prev2 = 1, prev1 = -1;  // Q_0, Q_1
  if (m == 0) return prev2;
  if (m == 1) return prev1;
  Integer cur = 0;
  for (long k = 2; k <= m; ++k) {
    cur = (k % 2 == 0) ? Integer(b * prev1 - prev2)
                       : Integer(-a * prev1 - prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

// g-vector of the cluster variable x_i over the basis (rho_1, rho_2).
inline IntVec g_vector(long i, long a, long b) {
  const bool odd = (i % 2) != 0;
  long p1, p2;
  if (i <= 0) {
    p1 = poly_P(-i - 1, a, b).get_si();
    p2 = poly_P(-i - 2, a, b).get_si();
  } else {
    p1 = poly_P(i - 3, a, b).get_si();
    p2 = poly_P(i - 2, a, b).get_si();
  }
  if (odd) return {-p1, -a * p2};
  return {-b * p1, p2};
}

// Normal root of the wall containing the ray of g_i, over (alpha_1, alpha_2).
inline IntVec c_root(long i, long a, long b) {
  if (i == 0) return {1, 0};
  if (i == 1) return {0, 1};
  const bool odd = (i % 2) != 0;
  long p1, p2;
  if (i <= -1) {
    p1 = poly_P(-i - 2, a, b).get_si();
    p2 = poly_P(-i - 1, a, b).get_si();
  } else {
    p1 = poly_P(i - 2, a, b).get_si();
    p2 = poly_P(i - 3, a, b).get_si();
  }
  if (odd) return {b * p1, p2};
  return {p1, -a * p2};
}

// A seed with principal coefficients: exchange matrix B, c-vector matrix C
// (columns are c-vectors; starts as the identity), g-vectors per slot
// (columns start as the identity), and F-polynomials per slot (start at 1).
class PrincipalSeed {
 public:
  PrincipalSeed(IntMat b, int order)
      : b_(std::move(b)), n_(static_cast<int>(b_.size())), order_(order) {
    for (const auto& row : b_) {
      if (static_cast<int>(row.size()) != n_) {
        throw std::invalid_argument("exchange matrix must be square");
      }
    }
    c_.assign(n_, std::vector<long>(n_, 0));
    g_.assign(n_, IntVec(n_, 0));
    for (int i = 0; i < n_; ++i) {
      c_[i][i] = 1;
      g_[i][i] = 1;
    }
    // Columns of the initial B as weight vectors; fixed for all time.
    b0_col_.assign(n_, IntVec(n_, 0));
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) b0_col_[j][i] = b_[i][j];
    }
    f_.assign(n_, TruncatedSeries::one(n_, order_));
  }

  int rank() const { return n_; }
  int order() const { return order_; }
  const IntMat& b() const { return b_; }
  const IntMat& c() const { return c_; }
  const IntVec& g(int slot) const { return g_[slot]; }
  const TruncatedSeries& f(int slot) const { return f_[slot]; }

  void mutate(int k) {
    if (k < 0 || k >= n_) throw std::invalid_argument("bad mutation slot");
    const auto pos = [](long v) { return v > 0 ? v : 0; };
    const auto sgn = [](long v) { return (v > 0) - (v < 0); };

    // F-polynomial exchange: the two terms collect positive parts of the
    // k-th columns of C (coefficient monomial) and B (cluster F-factors).
    TruncatedSeries num1 = TruncatedSeries::one(n_, order_);
    TruncatedSeries num2 = TruncatedSeries::one(n_, order_);
    {
      Exponent e1(n_, 0), e2(n_, 0);
      for (int i = 0; i < n_; ++i) {
        e1[i] = static_cast<int>(pos(c_[i][k]));
        e2[i] = static_cast<int>(pos(-c_[i][k]));
      }
      num1 = TruncatedSeries::monomial(n_, order_, e1, 1);
      num2 = TruncatedSeries::monomial(n_, order_, e2, 1);
      for (int j = 0; j < n_; ++j) {
        if (pos(b_[j][k]) > 0) num1 = num1 * f_[j].pow(pos(b_[j][k]));
        if (pos(-b_[j][k]) > 0) num2 = num2 * f_[j].pow(pos(-b_[j][k]));
      }
    }
    TruncatedSeries fk = divide_exact(num1 + num2, f_[k]);

    // g-vector of the new slot-k variable.
    IntVec gk(n_, 0);
    for (int t = 0; t < n_; ++t) gk[t] = -g_[k][t];
    for (int i = 0; i < n_; ++i) {
      if (b_[i][k] > 0) {
        for (int t = 0; t < n_; ++t) gk[t] += b_[i][k] * g_[i][t];
      }
      if (c_[i][k] > 0) {
        for (int t = 0; t < n_; ++t) gk[t] -= c_[i][k] * b0_col_[i][t];
      }
    }

    // Matrix mutation of the tall matrix [[B], [C]] in direction k.
    IntMat nb = b_, nc = c_;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == k || j == k) {
          nb[i][j] = -b_[i][j];
        } else {
          nb[i][j] = b_[i][j] + sgn(b_[i][k]) * pos(b_[i][k] * b_[k][j]);
        }
        if (j == k) {
          nc[i][j] = -c_[i][j];
        } else {
          nc[i][j] = c_[i][j] + sgn(c_[i][k]) * pos(c_[i][k] * b_[k][j]);
        }
      }
    }

    b_ = std::move(nb);
    c_ = std::move(nc);
    g_[k] = std::move(gk);
    f_[k] = std::move(fk);
  }

 private:
  IntMat b_;
  int n_;
  int order_;
  IntMat c_;
  std::vector<IntVec> b0_col_;
  std::vector<IntVec> g_;
  std::vector<TruncatedSeries> f_;
};

struct ClusterVariableData {
  IntVec g;           // weight coordinates
  TruncatedSeries f;  // F-polynomial
};

// The bi-infinite rank-2 variable walk: x_1, x_2 initial; mutating slot 0
// then slot 1 alternately produces x_3, x_4, ...; mutating slot 1 then
// slot 0 produces x_0, x_{-1}, .... Variable x_m sits in slot 0 when m is
// odd, slot 1 when m is even. Results are cached per index.
class Rank2Walk {
 public:
  Rank2Walk(long a, long b, int order)
      : pos_(IntMat{{0, b}, {a, 0}}, order),
        neg_(IntMat{{0, b}, {a, 0}}, order) {
    if (a > 0 || b < 0) {
      throw std::invalid_argument("rank-2 convention requires a <= 0 <= b");
    }
    cache_.emplace(1, ClusterVariableData{pos_.g(0), pos_.f(0)});
    cache_.emplace(2, ClusterVariableData{pos_.g(1), pos_.f(1)});
  }

  static int slot_of(long m) { return (m % 2 != 0) ? 0 : 1; }

  const ClusterVariableData& variable(long i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    if (i >= 3) {
      while (pos_top_ < i) {
        ++pos_top_;
        pos_.mutate(slot_of(pos_top_));
        cache_.emplace(pos_top_, ClusterVariableData{pos_.g(slot_of(pos_top_)),
                                                     pos_.f(slot_of(pos_top_))});
      }
    } else {
      while (neg_bottom_ > i) {
        --neg_bottom_;
        neg_.mutate(slot_of(neg_bottom_));
        cache_.emplace(neg_bottom_,
                       ClusterVariableData{neg_.g(slot_of(neg_bottom_)),
                                           neg_.f(slot_of(neg_bottom_))});
      }
    }
    return cache_.at(i);
  }

 private:
  PrincipalSeed pos_, neg_;
  long pos_top_ = 2, neg_bottom_ = 1;
  std::map<long, ClusterVariableData> cache_;
};

inline ClusterVariableData rank2_cluster_variable(long a, long b, long i,
                                                  int order) {
  Rank2Walk walk(a, b, order);
  return walk.variable(i);
}

// The limiting wall of the affine rank-2 diagrams (ab = -4): its primitive
// normal root, its ray in (rho_1, rho_2) coordinates, and its function,
// computed from the stabilized power product of deep F-polynomials.
struct LimitingWall {
  IntVec normal;   // c_{p/q}, primitive, over (alpha_1, alpha_2)
  IntVec ray;      // q rho_1 + p rho_2
  TruncatedSeries function;
};

inline LimitingWall limiting_wall_function(long a, long b, int order) {
  if (a * b != -4 || a >= 0 || b <= 0) {
    throw std::invalid_argument("limiting wall requires an affine type");
  }
  // Slope of the limiting ray is p/q = a/2 with p > 0 > q.
  const long red = gcd_positive(-a, 2);
  const long p = -a / red, q = -2 / red;
  const long g = gcd_positive(b * p, a * q);
  const IntVec normal = {b * p / g, a * q / g};
  const IntVec ray = {q, p};

  Rank2Walk walk(a, b, order);
  auto product = [&](long i) {
    const Integer e1 = poly_Q(-i - 1, a, b);
    const Integer e2 = poly_Q(-i, a, b);
    const TruncatedSeries& fi = walk.variable(i).f;
    const TruncatedSeries& fi1 = walk.variable(i + 1).f;
    return fi.pow(e1.get_si()) * fi1.pow(-e2.get_si());
  };
  long deep = -(order + 4);
  if (deep % 2 != 0) --deep;
  TruncatedSeries limit = product(deep);
  if (limit != product(deep - 2)) {
    throw std::runtime_error("limiting power product has not stabilized");
  }
  Exponent dir = {static_cast<int>(normal[0]), static_cast<int>(normal[1])};
  TruncatedSeries f =
      limit.pow_rational(make_rational(1, p - q)).restrict_exponent_ray(dir);
  return {normal, ray, f};
}

// Narayana number Nar(i, j).
inline Integer narayana_number(long i, long j) {
  if (i == 0 && j == 0) return 1;
  if (i == 0 || j == 0) return 0;
  Integer prod = binomial(Integer(i), j) * binomial(Integer(i), j - 1);
  Integer out;
  mpz_divexact_ui(out.get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(i));
  return out;
}

// Route 1: the stabilized ratio F_{i-1} / F_i of deep F-polynomials in the
// skew-symmetric affine type (a, b) = (-2, 2).
inline TruncatedSeries narayana_series_limit(int order) {
  Rank2Walk walk(-2, 2, order);
  auto ratio = [&](long i) {
    return walk.variable(i - 1).f * walk.variable(i).f.inverse();
  };
  const long deep = -(order + 4);
  TruncatedSeries n = ratio(deep);
  if (n != ratio(deep - 1)) {
    throw std::runtime_error("Narayana limit has not stabilized");
  }
  return n;
}

// Route 2: the closed form (1 + y1 + y1 y2 + sqrt((1+y1+y1 y2)^2 - 4 y1 y2))/2.
inline TruncatedSeries narayana_series_closed(int order) {
  auto one = TruncatedSeries::one(2, order);
  auto y1 = TruncatedSeries::variable(2, order, 0);
  auto y2 = TruncatedSeries::variable(2, order, 1);
  auto h = one + y1 + y1 * y2;
  auto rad = h * h - Rational(4) * (y1 * y2);
  return Rational(1, 2) * (h + rad.sqrt_series());
}

// Route 3: coefficient recurrence. With N = sum n_ij y1^i y2^j, the
// coefficients satisfy
//   sum_{k=0..j} n_ik C(-2i+1, j-k) = sum_{k=0..i} n_jk C(-2j+1, i-k)
// with boundary n_00 = 1 and n_ij = 0 for i <= j otherwise, which
// determines n_ij for i > j by induction on j.
inline TruncatedSeries narayana_series_recurrence(int order) {
  std::vector<std::vector<Rational>> n(order + 1,
                                       std::vector<Rational>(order + 1, 0));
  n[0][0] = 1;
  for (long j = 0; j <= order; ++j) {
    for (long i = j + 1; i + j <= order; ++i) {
      Rational rhs = 0;
      for (long k = 0; k <= std::min<long>(i, order); ++k) {
        if (n[j][k] == 0) continue;
        rhs += n[j][k] * Rational(binomial(Integer(-2 * j + 1), i - k));
      }
      Rational lhs_partial = 0;
      for (long k = 0; k < j; ++k) {
        if (n[i][k] == 0) continue;
        lhs_partial += n[i][k] * Rational(binomial(Integer(-2 * i + 1), j - k));
      }
      n[i][j] = rhs - lhs_partial;
    }
  }
  TruncatedSeries out(2, order);
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; i + j <= order; ++j) {
      if (n[i][j] != 0) out.add_term({i, j}, n[i][j]);
    }
  }
  return out;
}

// The three-term identity underlying the Narayana coefficient theorem:
// both hypergeometric sides and the closed form, as exact rationals.
// They coincide for all integers i > j > 1.
struct HypergeomIdentity {
  Rational lhs, rhs, closed;
};

inline HypergeomIdentity narayana_hypergeom_identity(long i, long j) {
  auto side = [](long i_, long j_) {
    Rational sum = 0;
    for (long k = 1; k <= j_; ++k) {
      const Rational num = rising_factorial(Rational(2 - i_), k - 1) *
                           rising_factorial(Rational(1 - i_), k - 1) *
                           rising_factorial(Rational(1 - j_), k - 1);
      const Rational den = rising_factorial(Rational(2), k - 1) *
                           rising_factorial(Rational(-2 * i_ - j_ + 3), k - 1) *
                           rising_factorial(Rational(1), k - 1);
      sum += num / den;
    }
    const Rational pref =
        Rational(binomial(Integer(-2 * i_ + 1), j_ - 1)) * sum;
    return (i_ % 2 == 0) ? pref : Rational(-pref);
  };
  HypergeomIdentity out;
  out.lhs = side(i, j);
  out.rhs = side(j, i);
  Rational closed = make_rational(1, i + j) *
                    Rational(binomial(Integer(i + j - 2), j - 1)) *
                    Rational(binomial(Integer(i + j), j));
  out.closed = ((i + j - 1) % 2 == 0) ? closed : Rational(-closed);
  return out;
}

}  // namespace cluscat
