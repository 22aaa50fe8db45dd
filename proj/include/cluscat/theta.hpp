#pragma once

// Broken lines and theta functions over a completed rank-2 scattering
// diagram. A broken line with endpoint p is a piecewise-linear path that
// comes in from infinity and ends at p, carrying a monomial c x^lambda
// y^beta on each domain of linearity and travelling with velocity -lambda.
// It may bend only at points of wall rays: bending at a wall with primitive
// normal beta and function f multiplies the carried monomial by one
// nonconstant term of f^e, where e = |<lambda, beta_vee>| for the primitive
// coroot beta_vee, and shifts lambda by power * B*beta. The pairing
// <lambda, beta_vee> is unchanged by the shift, so the crossing exponent is
// well defined on both sides of the wall. The theta function of lambda is
// the sum of the final monomials over all broken lines.
//
// Feasibility of a bend sequence is exact integer arithmetic: bend points
// z_j = mu_j d_j on rays d_j satisfy z_{j+1} = z_j - t_j lambda_j, and the
// requirements mu_j > 0, t_j > 0 plus reaching p with positive time reduce
// to sign conditions on 2x2 cross products of d_j, lambda_j and p. Paths
// through the origin make one of the cross products vanish and are pruned.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cluscat/scat.hpp"

namespace cluscat {

// One wall crossing where a nonconstant term was chosen: the u^power term
// of f^e, where u = yhat^normal and f is the wall function. The crossing
// bends the path unless B*normal = 0.
struct BendChoice {
  IntVec ray;
  IntVec normal;
  long power = 0;
  Rational coeff;

  bool operator==(const BendChoice&) const = default;
};

// One domain of linearity with its monomial c x^lambda y^beta. The bend
// field records how this domain's monomial arose from the previous one; it
// is empty on the initial unbounded domain.
struct BrokenSegment {
  Rational c;
  IntVec lambda;
  IntVec beta;
  std::optional<BendChoice> bend;

  IntVec direction() const { return {-lambda[0], -lambda[1]}; }

  LaurentElement monomial(int order) const {
    return LaurentElement(lambda, beta,
                          TruncatedSeries::constant(2, order, c));
  }

  bool operator==(const BrokenSegment&) const = default;
};

struct BrokenLine {
  std::vector<BrokenSegment> segments;  // initial unbounded segment first
  std::vector<Rational> endpoint;

  const BrokenSegment& final_segment() const { return segments.back(); }
};

// The endpoint lies on a wall ray, or some broken line for the requested
// weight would pass through the origin. A nearby endpoint in the same
// chamber avoids the degeneracy.
struct NonGenericEndpoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// A ray where broken lines may bend, with everything the search needs:
// the univariate wall function, the primitive coroot of the normal, and
// the direction shift B*normal per unit power.
struct BendSite {
  IntVec ray;
  IntVec normal;
  IntVec covee;
  IntVec shift;
  int degree = 0;            // total degree of the primitive normal
  TruncatedSeries uni{1, 0};
};

inline IntVec add_scaled(const IntVec& v, long k, const IntVec& w) {
  return {v[0] + k * w[0], v[1] + k * w[1]};
}

inline std::vector<BendSite> bend_sites(const Scat2& d) {
  const RootData& rd = d.root_data();
  std::vector<BendSite> sites;
  auto add = [&](IntVec ray, IntVec normal, const TruncatedSeries& func) {
    BendSite s;
    // When B*normal = 0 (singular B, e.g. the zero matrix) a crossing leaves
    // the direction unchanged but still multiplies the monomial by a term of
    // f^e; the path continues straight through the wall.
    s.shift = rd.omega_weight_of_root(normal);
    s.covee = rd.coroot_of_root(normal).first;
    s.degree = static_cast<int>(normal[0] + normal[1]);
    s.uni = univariate_wall_function(RayWall{ray, normal, func});
    s.ray = std::move(ray);
    s.normal = std::move(normal);
    sites.push_back(std::move(s));
  };
  for (long sgn : {1L, -1L}) {
    add({0, sgn}, {1, 0}, d.axis_func(0));
    add({sgn, 0}, {0, 1}, d.axis_func(1));
  }
  for (const auto& [ray, w] : d.diagonal_walls()) add(w.ray, w.normal, w.func);
  return sites;
}

class BrokenLineSearch {
 public:
  BrokenLineSearch(const Scat2& d, IntVec lambda, IntVec p,
                   std::vector<Rational> endpoint, int budget)
      : sites_(bend_sites(d)),
        p_(std::move(p)),
        endpoint_(std::move(endpoint)),
        budget_(budget) {
    stack_.push_back(BrokenSegment{Rational(1), std::move(lambda), {0, 0}, {}});
  }

  std::vector<BrokenLine> run() {
    descend(-1, 0);
    return std::move(found_);
  }

 private:
  void descend(int prev, int used) {
    // Copies, not references: pushing onto stack_ may reallocate.
    const IntVec lam = stack_.back().lambda;
    const IntVec beta = stack_.back().beta;
    const Rational c = stack_.back().c;
    if (prev < 0) {
      // The straight line for lambda through p always exists.
      found_.push_back(BrokenLine{stack_, endpoint_});
    } else {
      // Close: p = mu * d - t * lam with mu, t > 0, after scaling by
      // q = d x lam. q == 0 would put the segment inside the wall line.
      const IntVec& d = sites_[prev].ray;
      const long q = cross2(d, lam);
      if (q != 0) {
        const long mu_num = cross2(p_, lam), t_num = cross2(p_, d);
        const bool mu_pos = mu_num != 0 && (mu_num > 0) == (q > 0);
        const bool t_pos = t_num != 0 && (t_num > 0) == (q > 0);
        if (mu_pos && t_pos) {
          found_.push_back(BrokenLine{stack_, endpoint_});
        } else if (mu_num == 0 && t_pos) {
          // The closing segment would hit the origin exactly; endpoints
          // on one side of this position carry a genuine broken line, so
          // counting is ill defined at p itself.
          throw NonGenericEndpoint(
              "endpoint is not generic for this weight: a broken line "
              "through it would pass through the origin");
        }
      }
    }
    for (int s = 0; s < static_cast<int>(sites_.size()); ++s) {
      if (s == prev) continue;
      const BendSite& site = sites_[s];
      if (used + site.degree > budget_) continue;
      if (prev >= 0) {
        // mu ratio and segment time must stay positive along the chain.
        const IntVec& dp = sites_[prev].ray;
        const long c1 = cross2(dp, lam), c2 = cross2(site.ray, lam);
        if (c1 == 0 || c2 == 0 || (c1 > 0) != (c2 > 0)) continue;
        const long c3 = cross2(dp, site.ray);
        if (c3 == 0 || (c3 > 0) == (c2 > 0)) continue;
      }
      const long e = std::labs(rd_pair(lam, site.covee));
      if (e == 0) continue;
      for (const auto& [exp, coeff] : powered(s, e).terms()) {
        const long k = exp[0];
        if (k < 1) continue;
        if (used + static_cast<int>(k) * site.degree > budget_) break;
        const IntVec lam2 = add_scaled(lam, k, site.shift);
        if (lam2 == IntVec{0, 0}) continue;
        stack_.push_back(BrokenSegment{
            c * coeff, lam2, add_scaled(beta, k, site.normal),
            BendChoice{site.ray, site.normal, k, coeff}});
        descend(s, used + static_cast<int>(k) * site.degree);
        stack_.pop_back();
      }
    }
  }

  static long rd_pair(const IntVec& u, const IntVec& covee) {
    return u[0] * covee[0] + u[1] * covee[1];
  }

  const TruncatedSeries& powered(int s, long e) {
    auto it = memo_.find({s, e});
    if (it == memo_.end()) {
      it = memo_.emplace(std::make_pair(s, e), sites_[s].uni.pow(e)).first;
    }
    return it->second;
  }

  std::vector<BendSite> sites_;
  IntVec p_;
  std::vector<Rational> endpoint_;
  int budget_;
  std::vector<BrokenSegment> stack_;
  std::vector<BrokenLine> found_;
  std::map<std::pair<int, long>, TruncatedSeries> memo_;
};

// Clears denominators and common factors; positivity conditions are
// homogeneous in p, so broken lines are unchanged.
inline IntVec endpoint_to_integer(const std::vector<Rational>& p) {
  if (p.size() != 2) throw std::invalid_argument("endpoint needs 2 coordinates");
  Integer den;
  mpz_lcm(den.get_mpz_t(), p[0].get_den().get_mpz_t(),
          p[1].get_den().get_mpz_t());
  IntVec v(2);
  for (int i = 0; i < 2; ++i) {
    const Rational scaled = p[i] * Rational(den);
    if (!scaled.get_num().fits_slong_p()) {
      throw std::invalid_argument("endpoint coordinates too large");
    }
    v[i] = scaled.get_num().get_si();
  }
  if (v == IntVec{0, 0}) throw std::invalid_argument("endpoint is the origin");
  return primitive_vector(v);
}

inline void require_generic_endpoint(const Scat2& d, const IntVec& lambda,
                                     const IntVec& p) {
  auto on_ray = [&](const IntVec& ray) {
    return cross2(p, ray) == 0 && dot2(p, ray) > 0;
  };
  for (const IntVec& ray : {IntVec{1, 0}, IntVec{-1, 0}, IntVec{0, 1},
                           IntVec{0, -1}}) {
    if (on_ray(ray)) throw NonGenericEndpoint("endpoint lies on a wall");
  }
  for (const auto& [ray, w] : d.diagonal_walls()) {
    if (on_ray(ray)) throw NonGenericEndpoint("endpoint lies on a wall");
  }
  if (cross2(p, lambda) == 0 && dot2(p, lambda) < 0) {
    throw NonGenericEndpoint(
        "endpoint antiparallel to lambda; the straight line would pass "
        "through the origin");
  }
}

}  // namespace detail

// All broken lines for lambda with endpoint p whose final monomial has
// yhat-degree at most K. The endpoint must be generic: on no wall ray of
// the diagram and not antiparallel to lambda.
inline std::vector<BrokenLine> enumerate_broken_lines(
    const Scat2& d, const IntVec& lambda, const std::vector<Rational>& p,
    int K) {
  if (lambda.size() != 2 || lambda == IntVec{0, 0}) {
    throw std::invalid_argument("lambda must be a nonzero weight");
  }
  if (K < 0 || K > d.order()) {
    throw std::invalid_argument("broken-line order must lie in [0, diagram order]");
  }
  const IntVec pi = detail::endpoint_to_integer(p);
  detail::require_generic_endpoint(d, lambda, pi);
  return detail::BrokenLineSearch(d, lambda, pi, p, K).run();
}

// Theta function at a specific generic endpoint: x^lambda times the sum of
// the yhat-monomials carried by the broken lines. Depends only on the
// chamber containing p.
inline LaurentElement theta_function_at(const Scat2& d, const IntVec& lambda,
                                        const std::vector<Rational>& p,
                                        int K) {
  TruncatedSeries sum(2, K);
  for (const BrokenLine& line : enumerate_broken_lines(d, lambda, p, K)) {
    const BrokenSegment& last = line.final_segment();
    sum.add_term(
        {static_cast<int>(last.beta[0]), static_cast<int>(last.beta[1])},
        last.c);
  }
  return LaurentElement(lambda, {0, 0}, sum);
}

// Theta function with endpoint in the interior of the dominant chamber,
// recomputed at a second generic endpoint as a consistency check. The
// endpoints come from a fixed candidate list; a candidate is skipped when
// some broken line for lambda degenerates through it (for example any
// endpoint proportional to -lambda), so the result stays deterministic.
inline LaurentElement theta_function(const Scat2& d, const IntVec& lambda,
                                     int K) {
  static const std::vector<std::vector<Rational>> kEndpoints = {
      {Rational(7), Rational(3)},  {Rational(5), Rational(4)},
      {Rational(19), Rational(2)}, {Rational(11), Rational(7)},
      {Rational(23), Rational(5)}, {Rational(13), Rational(11)}};
  std::vector<LaurentElement> values;
  for (const auto& p : kEndpoints) {
    try {
      values.push_back(theta_function_at(d, lambda, p, K));
    } catch (const NonGenericEndpoint&) {
      continue;
    }
    if (values.size() == 2) break;
  }
  if (values.size() < 2) {
    throw std::runtime_error(
        "no pair of generic endpoints found in the dominant chamber");
  }
  if (values[0] != values[1]) {
    throw std::logic_error("theta function differs between generic endpoints");
  }
  return values[0];
}

// Closed form for theta of m1*rho1 + m2*rho2 when -b <= m1 <= 0 and
// m2 >= 0 (a < 0 < b): broken lines bend only on the coordinate lines, and
//   theta = x^lambda * sum_{i=0}^{-m1} C(-m1,i) yhat1^i (1+yhat2)^{[-m2-ai]+}
// with [x]+ = max(x,0).
inline LaurentElement theta_closed_form_m1b(long a, long b, long m1, long m2,
                                            int order) {
  if (!(a < 0 && b > 0)) {
    throw std::invalid_argument("closed form requires a < 0 < b");
  }
  if (!(-b <= m1 && m1 <= 0 && m2 >= 0)) {
    throw std::invalid_argument("closed form requires -b <= m1 <= 0 <= m2");
  }
  TruncatedSeries s(2, order);
  for (long i = 0; i <= -m1; ++i) {
    const Integer ci = binomial(-m1, i);
    const long ee = std::max(0L, -m2 - a * i);
    for (long j = 0; j <= ee; ++j) {
      s.add_term({static_cast<int>(i), static_cast<int>(j)},
                 Rational(ci * binomial(ee, j)));
    }
  }
  return LaurentElement({m1, m2}, {0, 0}, s);
}

// Closed form for theta of m1*rho1 + m2*rho2 when m1 < -b < 0 and
// 0 <= m2 < -a: diagonal walls are unreachable, and
//   theta = x^lambda * (1 + sum_{i>=1, 0<=j<=m2} C(-m1-bj,i) C(m2,j)
//                           yhat1^i yhat2^j (1+yhat2)^{-m2-ai}).
// C(-m1-bj, i) counts subsets, so it vanishes whenever -m1-bj < i; the
// generalized binomial would not vanish for negative tops.
inline LaurentElement theta_closed_form_m2a(long a, long b, long m1, long m2,
                                            int order) {
  if (!(b > 0 && m1 < -b)) {
    throw std::invalid_argument("closed form requires m1 < -b < 0");
  }
  if (!(a < 0 && 0 <= m2 && m2 < -a)) {
    throw std::invalid_argument("closed form requires 0 <= m2 < -a");
  }
  TruncatedSeries s(2, order);
  s.add_term({0, 0}, 1);
  for (long i = 1; i <= -m1; ++i) {
    for (long j = 0; j <= m2; ++j) {
      const long top = -m1 - b * j;
      if (top < i) continue;
      const Integer cij = binomial(top, i) * binomial(m2, j);
      const long ee = -m2 - a * i;  // positive: m2 < -a <= -a*i
      for (long l = 0; l <= ee; ++l) {
        s.add_term({static_cast<int>(i), static_cast<int>(j + l)},
                   Rational(cij * binomial(ee, l)));
      }
    }
  }
  return LaurentElement({m1, m2}, {0, 0}, s);
}

}  // namespace cluscat
