#pragma once

// Rank-2 scattering diagrams with principal coefficients: walls, the
// wall-crossing automorphism, path-ordered products, consistency checking,
// and order-by-order consistent completion from the two initial walls.
//
// Geometry lives in the weight plane. The dominant chamber D is the first
// quadrant. The two coordinate lines always carry the functions 1 + yhat_i;
// every further wall is the outgoing ray spanned by -B*beta for its primitive
// normal beta, which lies in the open second quadrant when a < 0 < b and in
// the open fourth quadrant in the mirrored orientation a > 0 > b.

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cluscat/rootdata.hpp"
#include "cluscat/series.hpp"

namespace cluscat {

inline long cross2(const IntVec& u, const IntVec& v) {
  return u[0] * v[1] - u[1] * v[0];
}

inline long dot2(const IntVec& u, const IntVec& v) {
  return u[0] * v[0] + u[1] * v[1];
}

inline Exponent to_exponent(const IntVec& v) {
  Exponent e(v.size());
  for (size_t i = 0; i < v.size(); ++i) e[i] = static_cast<int>(v[i]);
  return e;
}

// One wall supported on a single ray of the weight plane.
struct RayWall {
  IntVec ray;            // primitive direction of the ray
  IntVec normal;         // primitive positive root orthogonal to the ray
  TruncatedSeries func;  // constant term 1, exponents on multiples of normal

  bool operator==(const RayWall&) const = default;
};

// The wall function written in the single variable u = yhat^normal.
inline TruncatedSeries univariate_wall_function(const RayWall& w) {
  const int deg = static_cast<int>(w.normal[0] + w.normal[1]);
  TruncatedSeries uni(1, w.func.order() / deg);
  for (const auto& [e, c] : w.func.terms()) {
    uni.add_term({total_degree(e) / deg}, c);
  }
  return uni;
}

// Apply the wall-crossing automorphism of (normal, func) to m, using the
// coroot eps * beta_vee where beta_vee is the primitive coroot of normal.
// The crossing that matches a concrete travel direction gamma' uses
// eps = +1 exactly when <gamma', normal> < 0.
inline LaurentElement cross_wall(const RootData& rd, const LaurentElement& m,
                                 const IntVec& normal,
                                 const TruncatedSeries& func, int eps) {
  if (m.order() == TruncatedSeries::kNoTruncation) {
    throw std::invalid_argument("cross_wall requires a truncated element");
  }
  if (func.order() != TruncatedSeries::kNoTruncation &&
      func.order() < m.order()) {
    throw std::invalid_argument("wall function order below element order");
  }
  const TruncatedSeries f =
      func.order() == m.order() ? func : func.truncated(m.order());
  const IntVec covee = rd.coroot_of_root(normal).first;
  const long base = rd.pair_weight_coroot(m.lambda, covee);

  // Group terms of the coefficient series by their crossing exponent
  // n = <lambda, eps beta_vee> + omega(eps beta_vee, phi).
  std::map<long, TruncatedSeries> buckets;
  for (const auto& [e, c] : m.coeff.terms()) {
    IntVec phi(e.begin(), e.end());
    const long n = eps * (base + rd.omega_form(covee, phi));
    auto it = buckets.find(n);
    if (it == buckets.end()) {
      it = buckets.emplace(n, TruncatedSeries(m.vars(), m.order())).first;
    }
    it->second.add_term(e, c);
  }

  TruncatedSeries out(m.vars(), m.order());
  for (const auto& [n, part] : buckets) {
    out += n == 0 ? part : part * f.pow(n);
  }
  return LaurentElement(m.lambda, m.beta0, std::move(out));
}

// One wall passage within an oriented path.
struct CrossEvent {
  IntVec ray;
  IntVec normal;
  TruncatedSeries func;
  int eps;
};

struct ConsistencyReport {
  bool consistent;
  int first_failure_order;  // -1 when consistent
};

class Scat2 {
 public:
  Scat2(long a, long b, int order)
      : a_(a), b_(b), order_(order), rd_(rank2_root_data(a, b)) {
    if (order < 1 || order == TruncatedSeries::kNoTruncation) {
      throw std::invalid_argument("Scat2 requires a finite positive order");
    }
  }

  long a() const { return a_; }
  long b() const { return b_; }
  int order() const { return order_; }
  const RootData& root_data() const { return rd_; }

  // Walls other than the two coordinate lines, keyed by their ray.
  const std::map<IntVec, RayWall>& diagonal_walls() const { return walls_; }

  // The function 1 + yhat_{i+1} carried by the i-th coordinate line.
  TruncatedSeries axis_func(int i) const {
    return TruncatedSeries::one(2, order_) +
           TruncatedSeries::variable(2, order_, i);
  }

  // The outgoing ray spanned by -B*normal, primitive.
  IntVec outgoing_ray(const IntVec& normal) const {
    IntVec w = rd_.omega_weight_of_root(normal);
    if (w[0] == 0 && w[1] == 0) {
      throw std::invalid_argument("normal has no outgoing ray when B = 0");
    }
    return primitive_vector({-w[0], -w[1]});
  }

  // Add coeff * yhat^(multiple * normal) to the wall on the outgoing ray of
  // the (primitive, strictly positive) normal, creating the wall if needed.
  void add_wall_term(const IntVec& normal_in, long multiple,
                     const Rational& coeff) {
    if (coeff == 0) return;
    const IntVec normal = primitive_vector(normal_in);
    if (normal.size() != 2 || normal[0] <= 0 || normal[1] <= 0) {
      throw std::invalid_argument("wall normal must be strictly positive");
    }
    if (multiple < 1 || multiple * (normal[0] + normal[1]) > order_) {
      throw std::invalid_argument("wall term degree out of range");
    }
    const IntVec ray = outgoing_ray(normal);
    auto it = walls_.find(ray);
    if (it == walls_.end()) {
      it = walls_
               .emplace(ray, RayWall{ray, normal,
                                     TruncatedSeries::one(2, order_)})
               .first;
    } else if (it->second.normal != normal) {
      throw std::logic_error("two normals map to one ray");
    }
    Exponent e = to_exponent(normal);
    for (int& x : e) x = static_cast<int>(x * multiple);
    it->second.func.add_term(e, coeff);
  }

  // Drop walls whose function has become trivial.
  void normalize() {
    for (auto it = walls_.begin(); it != walls_.end();) {
      it = it->second.func.is_one() ? walls_.erase(it) : std::next(it);
    }
  }

  // Crossing events for one full counterclockwise loop starting and ending
  // in the interior of the dominant chamber.
  std::vector<CrossEvent> full_loop_events() const {
    std::vector<CrossEvent> ev = all_ray_events(+1);
    const IntVec d0 = {1, 1};
    std::sort(ev.begin(), ev.end(),
              [&](const CrossEvent& r, const CrossEvent& s) {
                const int sr = sector_from(d0, r.ray);
                const int ss = sector_from(d0, s.ray);
                if (sr != ss) return sr < ss;
                return cross2(r.ray, s.ray) > 0;
              });
    return ev;
  }

  // Crossing events for the arc of less than a half turn from one direction
  // to another; orientation is the sign of their cross product.
  std::vector<CrossEvent> arc_events(const IntVec& from,
                                     const IntVec& to) const {
    const long o = cross2(from, to);
    if (o == 0) {
      throw std::invalid_argument("arc endpoints collinear; add a waypoint");
    }
    require_generic(from);
    require_generic(to);
    const int dir = o > 0 ? +1 : -1;
    std::vector<CrossEvent> ev;
    for (CrossEvent& e : all_ray_events(dir)) {
      const long c1 = cross2(from, e.ray);
      const long c2 = cross2(e.ray, to);
      if ((dir > 0 && c1 > 0 && c2 > 0) || (dir < 0 && c1 < 0 && c2 < 0)) {
        ev.push_back(std::move(e));
      }
    }
    std::sort(ev.begin(), ev.end(),
              [dir](const CrossEvent& r, const CrossEvent& s) {
                return dir * cross2(r.ray, s.ray) > 0;
              });
    return ev;
  }

  LaurentElement apply_events(LaurentElement m,
                              const std::vector<CrossEvent>& ev) const {
    for (const CrossEvent& e : ev) {
      m = cross_wall(rd_, m, e.normal, e.func, e.eps);
    }
    return m;
  }

  // Path-ordered product along the arc between two generic directions. When
  // the directions are opposite, the path is split on the counterclockwise
  // side; for a consistent diagram the choice of side does not matter.
  LaurentElement transport(const LaurentElement& m, const IntVec& from,
                           const IntVec& to) const {
    if (cross2(from, to) != 0) return apply_events(m, arc_events(from, to));
    if (dot2(from, to) > 0) return m;
    const IntVec mid = generic_direction(from, to);
    return apply_events(apply_events(m, arc_events(from, mid)),
                        arc_events(mid, to));
  }

  // Path-ordered product along a chain of waypoints; each consecutive pair
  // must subtend an arc of less than a half turn.
  LaurentElement transport(LaurentElement m,
                           const std::vector<IntVec>& waypoints) const {
    for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
      m = apply_events(std::move(m), arc_events(waypoints[i], waypoints[i + 1]));
    }
    return m;
  }

  LaurentElement full_ccw_loop(const LaurentElement& m) const {
    return apply_events(m, full_loop_events());
  }

  // A direction strictly between from and to (on the counterclockwise side
  // of from when they are opposite) that lies on no wall ray.
  IntVec generic_direction(const IntVec& from, const IntVec& to) const {
    IntVec mid;
    if (cross2(from, to) != 0) {
      mid = {from[0] + to[0], from[1] + to[1]};
    } else if (dot2(from, to) < 0) {
      mid = {-from[1], from[0]};
    } else {
      throw std::invalid_argument("no direction strictly between a ray and itself");
    }
    while (on_wall_ray(mid)) {
      mid = {mid[0] + from[0], mid[1] + from[1]};
    }
    return primitive_vector(mid);
  }

  // Full-loop identity check on x^{rho_1} and x^{rho_2}; the automorphism is
  // determined by its values on these, so this certifies consistency.
  ConsistencyReport consistency() const {
    bool ok = true;
    int first = -1;
    for (int j = 0; j < 2; ++j) {
      LaurentElement m = LaurentElement::monomial(
          {j == 0 ? 1L : 0L, j == 0 ? 0L : 1L}, order_);
      const LaurentElement r = full_ccw_loop(m);
      TruncatedSeries defect = r.coeff - TruncatedSeries::one(2, order_);
      if (!defect.is_zero()) {
        ok = false;
        const int d = defect.min_total_degree();
        if (first < 0 || d < first) first = d;
      }
    }
    return {ok, first};
  }

 private:
  // The four coordinate-line passages plus one passage per diagonal wall,
  // with the crossing sign for the given loop orientation (+1 = ccw).
  std::vector<CrossEvent> all_ray_events(int orientation) const {
    std::vector<CrossEvent> ev;
    const TruncatedSeries f1 = axis_func(0);
    const TruncatedSeries f2 = axis_func(1);
    ev.push_back({{0, 1}, {1, 0}, f1, 0});
    ev.push_back({{0, -1}, {1, 0}, f1, 0});
    ev.push_back({{1, 0}, {0, 1}, f2, 0});
    ev.push_back({{-1, 0}, {0, 1}, f2, 0});
    for (const auto& [ray, w] : walls_) {
      if (w.func.is_one()) continue;
      ev.push_back({ray, w.normal, w.func, 0});
    }
    for (CrossEvent& e : ev) {
      const IntVec tau = orientation > 0
                             ? IntVec{-e.ray[1], e.ray[0]}
                             : IntVec{e.ray[1], -e.ray[0]};
      e.eps = rd_.pair_weight_root(tau, e.normal) < 0 ? +1 : -1;
    }
    return ev;
  }

  // Sector of r in the counterclockwise sweep starting just after d0:
  // 0 for angles in (0, pi), 1 for [pi, 2pi). Angle 0 cannot occur because
  // no wall ray enters the interior of the dominant chamber.
  static int sector_from(const IntVec& d0, const IntVec& r) {
    const long c = cross2(d0, r);
    if (c > 0) return 0;
    if (c < 0 || dot2(d0, r) < 0) return 1;
    throw std::logic_error("wall ray through the base direction");
  }

  bool on_wall_ray(const IntVec& d) const {
    static const std::array<IntVec, 4> axes = {
        IntVec{1, 0}, IntVec{-1, 0}, IntVec{0, 1}, IntVec{0, -1}};
    for (const IntVec& r : axes) {
      if (cross2(d, r) == 0 && dot2(d, r) > 0) return true;
    }
    for (const auto& [ray, w] : walls_) {
      if (cross2(d, ray) == 0 && dot2(d, ray) > 0) return true;
    }
    return false;
  }

  void require_generic(const IntVec& d) const {
    if (d.size() != 2 || (d[0] == 0 && d[1] == 0)) {
      throw std::invalid_argument("path direction must be a nonzero 2-vector");
    }
    if (on_wall_ray(d)) {
      throw std::invalid_argument("path endpoint lies on a wall");
    }
  }

  long a_;
  long b_;
  int order_;
  RootData rd_;
  std::map<IntVec, RayWall> walls_;
};

// Consistent completion: append outgoing ray walls order by order until the
// full-loop automorphism is the identity mod m^{order+1}.
inline Scat2 complete_rank2(long a, long b, int order) {
  Scat2 d(a, b, order);
  for (int k = 2; k <= order; ++k) {
    // Loop defects on x^{rho_1}, x^{rho_2}, computed mod m^{k+1}.
    std::array<TruncatedSeries, 2> defect = {TruncatedSeries(2, k),
                                             TruncatedSeries(2, k)};
    for (int j = 0; j < 2; ++j) {
      LaurentElement m =
          LaurentElement::monomial({j == 0 ? 1L : 0L, j == 0 ? 0L : 1L}, k);
      defect[j] = d.full_ccw_loop(m).coeff - TruncatedSeries::one(2, k);
      if (!defect[j].is_zero() && defect[j].min_total_degree() < k) {
        throw std::logic_error("loop defect below the current order");
      }
    }
    std::map<Exponent, int, GradedLex> exponents;
    for (int j = 0; j < 2; ++j) {
      for (const auto& [e, c] : defect[j].terms()) exponents.emplace(e, 0);
    }
    for (const auto& [e, unused] : exponents) {
      if (e[0] == 0 || e[1] == 0) {
        throw std::logic_error("axis-direction loop defect");
      }
      const IntVec phi = {e[0], e[1]};
      const IntVec beta0 = primitive_vector(phi);
      const long mult = phi[0] / beta0[0];
      const IntVec covee = d.root_data().coroot_of_root(beta0).first;
      // Crossing sign of the counterclockwise loop at this wall's ray.
      const IntVec ray = d.outgoing_ray(beta0);
      const IntVec tau = {-ray[1], ray[0]};
      const int eps =
          d.root_data().pair_weight_root(tau, beta0) < 0 ? +1 : -1;
      // A term c * u^mult changes the degree-k defect on x^{rho_j} by
      // c * eps * covee_j, so both components must give the same c.
      const Rational c0 = -defect[0].coefficient(e) / (eps * covee[0]);
      const Rational c1 = -defect[1].coefficient(e) / (eps * covee[1]);
      if (c0 != c1) {
        throw std::logic_error("loop defect not correctable by one wall");
      }
      d.add_wall_term(beta0, mult, c0);
    }
  }
  const ConsistencyReport rep = d.consistency();
  if (!rep.consistent) {
    throw std::logic_error("completion failed certification");
  }
  return d;
}

inline Scat2 complete_rank2(const RootData& rd, int order) {
  if (rd.rank != 2) {
    throw std::invalid_argument("complete_rank2 requires rank 2");
  }
  return complete_rank2(rd.b[1][0], rd.b[0][1], order);
}

// The diagram for -B: same normals and functions, all rays negated.
inline Scat2 antipodal_transform(const Scat2& d) {
  Scat2 out(-d.a(), -d.b(), d.order());
  for (const auto& [ray, w] : d.diagonal_walls()) {
    const int deg = static_cast<int>(w.normal[0] + w.normal[1]);
    for (const auto& [e, c] : w.func.terms()) {
      if (total_degree(e) == 0) continue;
      out.add_wall_term(w.normal, total_degree(e) / deg, c);
    }
  }
  return out;
}

}  // namespace cluscat
