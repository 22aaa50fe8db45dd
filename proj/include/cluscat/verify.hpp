#pragma once
// Named end-to-end verification routines shared by the command-line
// `verify` command and the acceptance suite. Every routine rebuilds its
// expected values from scratch (closed forms, hand-tabulated figure data,
// independent recursions) and compares them against the engine's output.

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cluscat/cluster.hpp"
#include "cluscat/coxeter.hpp"
#include "cluscat/scat.hpp"
#include "cluscat/shards.hpp"
#include "cluscat/theta.hpp"

namespace cluscat {

struct CheckResult {
  bool pass = true;
  std::string detail;
};

namespace detail_verify {

inline void note(CheckResult& r, bool ok, const std::string& what) {
  if (ok) return;
  r.pass = false;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += what;
}

inline const std::vector<std::pair<std::string, IntMat>>& fan_table() {
  static const std::vector<std::pair<std::string, IntMat>> t = {
      {"A1xA1", {{0, 0}, {0, 0}}},
      {"A2", {{0, 1}, {-1, 0}}},
      {"B2", {{0, 1}, {-2, 0}}},
      {"G2", {{0, 1}, {-3, 0}}},
      {"A3", {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}},
      {"B3", {{0, 1, 0}, {-1, 0, 2}, {0, -1, 0}}},
  };
  return t;
}

}  // namespace detail_verify

// The two affine diagrams: the wall on the limiting ray carries
// (1 - y1 y2)^-2 (skew case, a=-2, b=2) and (1 + y1 y2^2)(1 - y1 y2^2)^-2
// (asymmetric case, a=-4, b=1), and the independent deep-F-polynomial
// route produces the identical wall.
inline CheckResult check_affine_walls(int order) {
  CheckResult r;
  const TruncatedSeries one = TruncatedSeries::one(2, order);
  {
    const Scat2 d = complete_rank2(-2, 2, order);
    const TruncatedSeries u = TruncatedSeries::monomial(2, order, {1, 1}, 1);
    const TruncatedSeries closed = (one - u).pow(-2);
    const auto it = d.diagonal_walls().find(IntVec{-1, 1});
    const bool found = it != d.diagonal_walls().end();
    detail_verify::note(r,
                        found && it->second.normal == IntVec{1, 1} &&
                            it->second.func == closed,
                        "skew-affine wall differs from (1 - y1 y2)^-2");
    const LimitingWall lw = limiting_wall_function(-2, 2, order);
    detail_verify::note(r,
                        found && lw.normal == IntVec{1, 1} &&
                            lw.ray == IntVec{-1, 1} &&
                            lw.function == it->second.func,
                        "skew-affine deep-ratio route differs");
  }
  {
    const Scat2 d = complete_rank2(-4, 1, order);
    const TruncatedSeries u = TruncatedSeries::monomial(2, order, {1, 2}, 1);
    const TruncatedSeries closed = (one + u) * (one - u).pow(-2);
    const auto it = d.diagonal_walls().find(IntVec{-1, 2});
    const bool found = it != d.diagonal_walls().end();
    detail_verify::note(
        r,
        found && it->second.normal == IntVec{1, 2} && it->second.func == closed,
        "asymmetric-affine wall differs from (1 + y1 y2^2)(1 - y1 y2^2)^-2");
    const LimitingWall lw = limiting_wall_function(-4, 1, order);
    detail_verify::note(r,
                        found && lw.normal == IntVec{1, 2} &&
                            lw.ray == IntVec{-1, 2} &&
                            lw.function == it->second.func,
                        "asymmetric-affine deep-ratio route differs");
  }
  if (r.pass) {
    r.detail =
        "both affine limiting walls match their closed forms and the "
        "deep-F-polynomial route";
  }
  return r;
}

// The alternating series with signed Narayana coefficients: the closed
// square-root form, the coefficient recurrence and the deep F-polynomial
// ratio agree, and the coefficient triangle matches the hand-tabulated
// rows through y1^8 (entries beyond the truncation order are skipped).
inline CheckResult check_narayana_routes(int order) {
  CheckResult r;
  const TruncatedSeries closed = narayana_series_closed(order);
  detail_verify::note(r, closed == narayana_series_recurrence(order),
                      "coefficient-recurrence route differs");
  detail_verify::note(r, closed == narayana_series_limit(order),
                      "deep-F-polynomial route differs");
  const std::vector<std::vector<std::pair<int, long>>> rows = {
      {{0, 1}},
      {{0, 1}},
      {{1, 1}},
      {{1, -1}, {2, 1}},
      {{1, 1}, {2, -3}, {3, 1}},
      {{1, -1}, {2, 6}, {3, -6}, {4, 1}},
      {{1, 1}, {2, -10}, {3, 20}, {4, -10}, {5, 1}},
      {{1, -1}, {2, 15}, {3, -50}, {4, 50}, {5, -15}, {6, 1}},
      {{1, 1}, {2, -21}, {3, 105}, {4, -175}, {5, 105}, {6, -21}, {7, 1}}};
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    const std::map<int, long> expect(rows[i].begin(), rows[i].end());
    for (int j = 0; i + j <= order; ++j) {
      const auto it = expect.find(j);
      const long want = it == expect.end() ? 0 : it->second;
      detail_verify::note(r, closed.coefficient({i, j}) == want,
                          "triangle entry y1^" + std::to_string(i) + " y2^" +
                              std::to_string(j) + " differs");
    }
  }
  if (r.pass) {
    r.detail = "three routes agree; triangle rows through y1^8 match";
  }
  return r;
}

// Structure of the deep F-polynomials in both affine walks, checked with
// exact (untruncated) arithmetic down to variable index -10: the leading
// slice in y1, the super-diagonal terms and the diagonal coefficients.
inline CheckResult check_f_polynomial_structure() {
  CheckResult r;
  const int NT = TruncatedSeries::kNoTruncation;
  const TruncatedSeries one = TruncatedSeries::one(2, NT);
  const TruncatedSeries y2 = TruncatedSeries::variable(2, NT, 1);
  {
    Rank2Walk walk(-2, 2, NT);
    for (long i = 0; i >= -10; --i) {
      const TruncatedSeries f = walk.variable(i).f;
      bool ok = f.max_degree_in(0) == -i &&
                f.coefficient_slice(0, static_cast<int>(-i)) ==
                    (one + y2).pow(-i + 1);
      TruncatedSeries super(2, NT);
      for (const auto& [e, c] : f.terms()) {
        if (e[1] > e[0]) super.add_term(e, c);
      }
      ok = ok && super == TruncatedSeries::monomial(
                              2, NT,
                              {static_cast<int>(-i), static_cast<int>(-i + 1)},
                              1);
      for (long j = 0; j <= -i; ++j) {
        ok = ok && f.coefficient({static_cast<int>(j), static_cast<int>(j)}) ==
                       j + 1;
      }
      detail_verify::note(
          r, ok, "skew-affine F_" + std::to_string(i) + " structure differs");
    }
  }
  {
    Rank2Walk walk(-4, 1, NT);
    for (long i = 0; i >= -5; --i) {
      const TruncatedSeries f = walk.variable(2 * i).f;
      bool ok = f.max_degree_in(0) == -i &&
                f.coefficient_slice(0, static_cast<int>(-i)) ==
                    (one + y2).pow(-2 * i + 1);
      TruncatedSeries super(2, NT);
      for (const auto& [e, c] : f.terms()) {
        if (e[1] > 2 * e[0]) super.add_term(e, c);
      }
      ok = ok && super == TruncatedSeries::monomial(
                              2, NT,
                              {static_cast<int>(-i),
                               static_cast<int>(-2 * i + 1)},
                              1);
      for (long j = 0; j <= -i; ++j) {
        ok = ok && f.coefficient({static_cast<int>(j),
                                  static_cast<int>(2 * j)}) == 2 * j + 1;
      }
      detail_verify::note(r, ok,
                          "asymmetric-affine F_" + std::to_string(2 * i) +
                              " structure differs");
    }
    for (long i = -1; i >= -5; --i) {
      const TruncatedSeries f = walk.variable(2 * i + 1).f;
      bool ok = f.max_degree_in(0) == -2 * i - 1 &&
                f.coefficient_slice(0, static_cast<int>(-2 * i - 1)) ==
                    (one + y2).pow(-4 * i);
      TruncatedSeries super(2, NT);
      for (const auto& [e, c] : f.terms()) {
        if (e[1] > 2 * e[0]) super.add_term(e, c);
      }
      TruncatedSeries expect_super = TruncatedSeries::monomial(
          2, NT, {static_cast<int>(-2 * i - 1), static_cast<int>(-4 * i)}, 1);
      for (long j = 1; j <= -i; ++j) {
        expect_super.add_term({static_cast<int>(-i + j - 1),
                               static_cast<int>(-2 * i + 2 * j - 1)},
                              4 * j);
      }
      ok = ok && super == expect_super;
      for (long j = 0; j <= -i; ++j) {
        Rational expect = 0;
        for (long m = 0; m <= j; ++m) {
          expect += Rational((2 * m + 1) * (2 * (j - m) + 1));
        }
        ok = ok && f.coefficient({static_cast<int>(j),
                                  static_cast<int>(2 * j)}) == expect;
      }
      detail_verify::note(r, ok,
                          "asymmetric-affine F_" + std::to_string(2 * i + 1) +
                              " structure differs");
    }
  }
  if (r.pass) {
    r.detail =
        "leading slices, super-diagonal terms and diagonal coefficients all "
        "match down to index -10";
  }
  return r;
}

// The four finite rank-2 diagrams: the completed wall set is exactly one
// wall 1 + yhat^beta per positive root beta off the axes (the hand-drawn
// panels), and the merged sortable-cone fan yields the identical ray walls.
inline CheckResult check_finite_rank2_figures(int order) {
  CheckResult r;
  const std::vector<std::pair<long, long>> types = {
      {0, 0}, {-1, 1}, {-2, 1}, {-3, 1}};
  const std::vector<std::vector<IntVec>> panel_normals = {
      {},
      {{1, 1}},
      {{1, 1}, {1, 2}},
      {{1, 1}, {1, 2}, {1, 3}, {2, 3}}};
  for (size_t t = 0; t < types.size(); ++t) {
    const auto [a, b] = types[t];
    const std::string name = "(" + std::to_string(a) + "," +
                             std::to_string(b) + ")";
    const Scat2 d = complete_rank2(a, b, order);
    std::set<IntVec> got;
    bool funcs = true;
    for (const auto& [ray, w] : d.diagonal_walls()) {
      got.insert(w.normal);
      TruncatedSeries expect = TruncatedSeries::one(2, order);
      expect.add_term(
          {static_cast<int>(w.normal[0]), static_cast<int>(w.normal[1])}, 1);
      funcs = funcs && w.func == expect;
    }
    const std::set<IntVec> want(panel_normals[t].begin(),
                                panel_normals[t].end());
    detail_verify::note(r, got == want && funcs,
                        name + ": walls differ from the panel");
    const CambrianDiagram cd =
        CambrianDiagram::from_exchange({{0, b}, {a, 0}}, order);
    detail_verify::note(r, rank2_cambrian_ray_walls(cd) == d.diagonal_walls(),
                        name + ": sortable-cone route differs");
  }
  if (r.pass) {
    r.detail =
        "all four finite panels match, by completion and by merged sortable "
        "cones";
  }
  return r;
}

// The three displayed theta polynomials, plus 20 random weights per closed
// form (bounded-m1 and bounded-m2 hypotheses) compared against the
// broken-line enumeration.
inline CheckResult check_theta_examples() {
  CheckResult r;
  const auto one2 = [](int k) { return TruncatedSeries::one(2, k); };
  const auto yhat = [](int i, int k) {
    return TruncatedSeries::variable(2, k, i);
  };
  {
    const int K = 8;
    const Scat2 d = complete_rank2(-1, 3, K);
    TruncatedSeries s(2, K);
    s.add_term({0, 0}, 1);
    s.add_term({1, 0}, 3);
    s.add_term({2, 0}, 3);
    s.add_term({3, 0}, 1);
    s.add_term({3, 1}, 1);
    const LaurentElement expected({-3, 2}, {0, 0}, s);
    detail_verify::note(r, theta_function(d, {-3, 2}, K) == expected,
                        "first displayed theta differs");
    detail_verify::note(r,
                        theta_closed_form_m1b(-1, 3, -3, 2, K) == expected,
                        "first displayed theta closed form differs");
  }
  {
    const int K = 8;
    const Scat2 d = complete_rank2(-4, 1, K);
    const TruncatedSeries ax = one2(K) + yhat(1, K);
    const TruncatedSeries s =
        one2(K) + Rational(2) * (yhat(0, K) * ax) +
        Rational(3) * (yhat(0, K) * yhat(1, K) * ax) +
        yhat(0, K) * yhat(0, K) * ax.pow(5);
    const LaurentElement expected({-2, 3}, {0, 0}, s);
    detail_verify::note(r, theta_function(d, {-2, 3}, K) == expected,
                        "second displayed theta differs");
    detail_verify::note(r,
                        theta_closed_form_m2a(-4, 1, -2, 3, K) == expected,
                        "second displayed theta closed form differs");
  }
  {
    const int K = 10;
    const Scat2 d = complete_rank2(-3, 1, K);
    const TruncatedSeries ax = one2(K) + yhat(1, K);
    const TruncatedSeries s = one2(K) + Rational(2) * yhat(0, K) +
                              Rational(3) * (yhat(0, K) * yhat(1, K)) +
                              yhat(0, K) * yhat(0, K) * ax.pow(3);
    const LaurentElement expected({-2, 3}, {0, 0}, s);
    detail_verify::note(r, theta_function(d, {-2, 3}, K) == expected,
                        "third displayed theta differs");
  }
  {
    std::mt19937 rng(20240817);
    const std::vector<std::pair<long, long>> pool{
        {-1, 1}, {-2, 1}, {-3, 1}, {-1, 2}, {-1, 3}, {-2, 2}, {-4, 1},
        {-1, 4}};
    int done = 0;
    while (done < 20) {
      const auto [a, b] = pool[rng() % pool.size()];
      const long m1 = -static_cast<long>(rng() % (b + 1));
      const long m2 = static_cast<long>(rng() % 4);
      if (m1 == 0 && m2 == 0) continue;
      const int deg = static_cast<int>(-m1 + std::max(0L, a * m1 - m2));
      if (deg > 12) continue;
      const int K = std::max(deg, 1);
      const Scat2 d = complete_rank2(a, b, K);
      detail_verify::note(
          r,
          theta_function(d, {m1, m2}, K) ==
              theta_closed_form_m1b(a, b, m1, m2, K),
          "bounded-m1 random case a=" + std::to_string(a) + " b=" +
              std::to_string(b) + " m=(" + std::to_string(m1) + "," +
              std::to_string(m2) + ") differs");
      ++done;
    }
  }
  {
    std::mt19937 rng(20240818);
    const std::vector<std::pair<long, long>> pool{{-2, 1}, {-3, 1}, {-4, 1}};
    int done = 0;
    while (done < 20) {
      const auto [a, b] = pool[rng() % pool.size()];
      const long m1 = -static_cast<long>(2 + rng() % 3);
      const long m2 = static_cast<long>(rng() % (-a));
      const int deg = static_cast<int>((-m1) * (1 - a) - m2);
      if (deg > 12) continue;
      const Scat2 d = complete_rank2(a, b, deg);
      detail_verify::note(
          r,
          theta_function(d, {m1, m2}, deg) ==
              theta_closed_form_m2a(a, b, m1, m2, deg),
          "bounded-m2 random case a=" + std::to_string(a) + " b=" +
              std::to_string(b) + " m=(" + std::to_string(m1) + "," +
              std::to_string(m2) + ") differs");
      ++done;
    }
  }
  if (r.pass) {
    r.detail =
        "three displayed polynomials and 2x20 random closed-form cases match "
        "the enumeration";
  }
  return r;
}

// Acyclic finite-type fans: every wall is outgoing, every codimension-2
// loop fixes all coordinate monomials, and every loop's wall-function cycle
// reduces to its rank-2 parabolic diagram up to the twist. Sortable counts
// are anchored for A2, A1xA1 and G2. `only` restricts to one named type.
inline CheckResult check_cambrian_fans(int order, const std::string& only = "") {
  CheckResult r;
  const std::map<std::string, size_t> expected_sortables = {
      {"A1xA1", 4}, {"A2", 5}, {"G2", 8}};
  bool found = only.empty();
  for (const auto& [name, bmat] : detail_verify::fan_table()) {
    if (!only.empty() && name != only) continue;
    found = true;
    const CambrianDiagram d = CambrianDiagram::from_exchange(bmat, order);
    detail_verify::note(r, check_outgoing(d).empty(),
                        name + ": wall fails the outgoing condition");
    const auto loops = codim2_loops(d);
    const LoopConsistencyReport rep = check_consistency(d);
    detail_verify::note(
        r,
        rep.consistent &&
            rep.checked_loops == static_cast<int>(loops.size()) &&
            !loops.empty(),
        name + ": some loop moves a coordinate monomial");
    for (size_t li = 0; li < loops.size(); ++li) {
      const StarData star = star_of_face_auto(d, loops[li].face_rays);
      detail_verify::note(r, star_matches_rank2(d, loops[li], star),
                          name + ": loop " + std::to_string(li) +
                              " does not reduce to its rank-2 diagram");
    }
    const auto it = expected_sortables.find(name);
    if (it != expected_sortables.end()) {
      detail_verify::note(r, d.sortables().size() == it->second,
                          name + ": sortable count differs");
    }
  }
  if (!found) throw std::invalid_argument("unknown type: " + only);
  if (r.pass) {
    r.detail =
        "walls outgoing, all loops fix the coordinate monomials and reduce "
        "to their rank-2 diagrams; sortable counts anchored";
  }
  return r;
}

// Every positive root's hyperplane carries exactly one gregarious shard,
// the shard equals the union of fan facets in that hyperplane, and the
// merged diagram stays consistent.
inline CheckResult check_gregarious_shards(int order = 8) {
  CheckResult r;
  for (const auto& [name, bmat] : detail_verify::fan_table()) {
    if (name == "A1xA1" || name == "B3") continue;
    const CambrianDiagram d = CambrianDiagram::from_exchange(bmat, order);
    const ShardCheck sc = check_shards(d);
    detail_verify::note(
        r,
        sc.ok() && sc.roots ==
                       static_cast<int>(d.group().positive_roots().size()),
        name + ": gregarious shard check fails");
    const LoopConsistencyReport rep = check_shard_consistency(d);
    detail_verify::note(r, rep.consistent,
                        name + ": merged shard diagram inconsistent");
  }
  if (r.pass) {
    r.detail =
        "one gregarious shard per positive root, equal to the fan facets; "
        "merged diagrams consistent";
  }
  return r;
}

// x^{g_i} transported from the chamber of the i-th cluster variable to the
// dominant chamber picks up exactly the F-polynomial F_i: every variable of
// the four finite types, indices |i| <= 5 in both affine types.
inline CheckResult check_transport_cluster_variables(int order) {
  CheckResult r;
  const auto run = [&](long a, long b, long lo, long hi) {
    const Scat2 d = complete_rank2(a, b, order);
    for (long i = lo; i <= hi; ++i) {
      const auto var = rank2_cluster_variable(a, b, i, order);
      const IntVec gi = g_vector(i, a, b);
      const IntVec gi1 = g_vector(i + 1, a, b);
      const IntVec q = {gi[0] + gi1[0], gi[1] + gi1[1]};
      const LaurentElement got = d.transport(
          LaurentElement::monomial({gi[0], gi[1]}, order), q, IntVec{1, 1});
      detail_verify::note(
          r,
          var.g == gi && got.lambda == std::vector<long>{gi[0], gi[1]} &&
              got.coeff == var.f,
          "transport of x^g differs from x^g F for a=" + std::to_string(a) +
              " b=" + std::to_string(b) + " i=" + std::to_string(i));
    }
  };
  run(0, 0, 0, 3);
  run(-1, 1, 0, 4);
  run(-2, 1, 0, 5);
  run(-3, 1, 0, 7);
  run(-2, 2, -5, 5);
  run(-4, 1, -5, 5);
  if (r.pass) {
    r.detail =
        "path-ordered products reproduce every tested cluster variable";
  }
  return r;
}

// Both hypergeometric sides and the closed product form agree for all
// 1 < j < i <= 12.
inline CheckResult check_hypergeometric_identity() {
  CheckResult r;
  for (long i = 3; i <= 12; ++i) {
    for (long j = 2; j < i; ++j) {
      const HypergeomIdentity id = narayana_hypergeom_identity(i, j);
      detail_verify::note(r, id.lhs == id.rhs && id.lhs == id.closed,
                          "identity differs at i=" + std::to_string(i) +
                              " j=" + std::to_string(j));
    }
  }
  if (r.pass) {
    r.detail = "both sides equal the closed form for all 1 < j < i <= 12";
  }
  return r;
}

}  // namespace cluscat
