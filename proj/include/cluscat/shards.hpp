#pragma once

// Shards: the pieces into which each reflection hyperplane is cut along its
// codimension-2 intersections with the other hyperplanes of every rank-2
// subsystem in which the root is not an angular extreme. Each hyperplane
// carries exactly one gregarious shard, the one whose relative interior
// meets the outgoing direction -omega(., beta), and the union of fan facets
// orthogonal to beta is expected to be exactly that shard.
//
// Exact sector arithmetic is implemented for ambient rank 2 and 3, where
// hyperplanes are lines and planes; higher ranks throw.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cluscat/coxeter.hpp"
#include "cluscat/rootdata.hpp"
#include "cluscat/scat.hpp"

namespace cluscat {

// One shard of the hyperplane orthogonal to `normal`. Proper shards are
// closed sectors in an oriented integer basis of the hyperplane: from `lo`
// counterclockwise to `hi` (angle at most pi). In rank 2 the basis has one
// vector and lo == hi is (1) or (-1), a single ray.
struct Shard {
  IntVec normal;
  bool whole = false;
  std::vector<IntVec> plane_basis;  // ambient weight coordinates
  IntVec lo, hi;                    // basis coordinates, primitive

  bool operator==(const Shard&) const = default;
};

namespace detail_shard {

inline int upper_half(const IntVec& v) {
  return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
}

// Strict counterclockwise order of 2D directions starting just above the
// positive x-axis.
inline bool ccw_less(const IntVec& u, const IntVec& v) {
  const int hu = upper_half(u), hv = upper_half(v);
  if (hu != hv) return hu < hv;
  return cross2(u, v) > 0;
}

// Coordinates of an ambient direction inside the hyperplane, as a primitive
// integer vector; throws when the vector is outside the span.
inline IntVec plane_coordinates(const std::vector<IntVec>& basis,
                                const IntVec& x) {
  const auto sol = solve_in_span(basis, to_rational_vector(x));
  if (!sol) throw std::logic_error("direction is not in the hyperplane");
  return primitive_integer_direction(*sol);
}

}  // namespace detail_shard

// Integer basis of the hyperplane orthogonal to beta (weight coordinates).
inline std::vector<IntVec> hyperplane_basis(const RootData& rd,
                                            const IntVec& beta) {
  const IntVec e = rd.coroot_of_root(beta).first;
  const int n = rd.rank;
  int piv = -1;
  for (int i = 0; i < n && piv < 0; ++i) {
    if (e[i] != 0) piv = i;
  }
  if (piv < 0) throw std::invalid_argument("zero root");
  std::vector<IntVec> basis;
  for (int j = 0; j < n; ++j) {
    if (j == piv) continue;
    IntVec v(n, 0);
    v[j] = e[piv];
    v[piv] = -e[j];
    basis.push_back(primitive_vector(v));
  }
  return basis;
}

// All shards of the hyperplane of a positive root, by cutting it along the
// rank-2 subsystems that contain the root strictly inside their cone.
inline std::vector<Shard> shards_of_root(const CoxeterGroup& W,
                                         const IntVec& beta) {
  const RootData& rd = W.root_data();
  const int n = rd.rank;
  if (n != 2 && n != 3) {
    throw std::invalid_argument("shard sectors require ambient rank 2 or 3");
  }
  if (!W.is_positive_root(beta)) {
    throw std::invalid_argument("shards are indexed by positive roots");
  }
  const std::vector<IntVec> basis = hyperplane_basis(rd, beta);

  // Rank-2 subsystems through beta, keyed by their positive-root sets.
  std::set<std::vector<IntVec>> subsystems;
  for (const IntVec& gamma : W.positive_roots()) {
    if (gamma == beta) continue;
    std::vector<IntVec> members;
    for (const IntVec& rho : W.positive_roots()) {
      if (solve_in_span({beta, gamma}, to_rational_vector(rho))) {
        members.push_back(rho);
      }
    }
    std::sort(members.begin(), members.end());
    subsystems.insert(std::move(members));
  }

  // Cut directions in hyperplane coordinates (rank 3) or a cut flag (rank 2).
  std::set<IntVec> cut_rays;
  bool cut_at_origin = false;
  for (const std::vector<IntVec>& members : subsystems) {
    // beta is extreme when all other members sit weakly on one side of its
    // line within the subsystem plane; use coordinates in a plane basis.
    IntVec gamma0;
    for (const IntVec& rho : members) {
      if (rho != beta) {
        gamma0 = rho;
        break;
      }
    }
    bool nonneg = true, nonpos = true;
    for (const IntVec& rho : members) {
      const auto co = solve_in_span({beta, gamma0}, to_rational_vector(rho));
      const Rational side = (*co)[1];
      nonneg = nonneg && side >= 0;
      nonpos = nonpos && side <= 0;
    }
    if (nonneg || nonpos) continue;  // beta extreme: no cut

    if (n == 2) {
      cut_at_origin = true;
      continue;
    }
    // Cut locus: common kernel of the two coroot functionals, a line.
    const IntVec eb = rd.coroot_of_root(beta).first;
    const IntVec eg = rd.coroot_of_root(gamma0).first;
    const IntVec dir = primitive_vector({eb[1] * eg[2] - eb[2] * eg[1],
                                         eb[2] * eg[0] - eb[0] * eg[2],
                                         eb[0] * eg[1] - eb[1] * eg[0]});
    const IntVec c = detail_shard::plane_coordinates(basis, dir);
    IntVec neg = c;
    for (long& x : neg) x = -x;
    cut_rays.insert(c);
    cut_rays.insert(neg);
  }

  std::vector<Shard> out;
  if (n == 2) {
    if (!cut_at_origin) {
      out.push_back({beta, true, basis, {}, {}});
    } else {
      out.push_back({beta, false, basis, {1}, {1}});
      out.push_back({beta, false, basis, {-1}, {-1}});
    }
    return out;
  }
  if (cut_rays.empty()) {
    out.push_back({beta, true, basis, {}, {}});
    return out;
  }
  std::vector<IntVec> rays(cut_rays.begin(), cut_rays.end());
  std::sort(rays.begin(), rays.end(), detail_shard::ccw_less);
  for (size_t i = 0; i < rays.size(); ++i) {
    out.push_back(
        {beta, false, basis, rays[i], rays[(i + 1) % rays.size()]});
  }
  return out;
}

// A shard is gregarious when -omega(., normal) lies in its relative
// interior; the whole hyperplane always contains it (omega(., beta) pairs
// to zero with beta).
inline bool is_gregarious(const RootData& rd, const Shard& s) {
  if (s.whole) return true;
  IntVec x = rd.omega_weight_of_root(s.normal);
  for (long& v : x) v = -v;
  const auto sol = solve_in_span(s.plane_basis, to_rational_vector(x));
  if (!sol) throw std::logic_error("outgoing direction left the hyperplane");
  if (rd.rank == 2) {
    const Rational t = (*sol)[0];
    return (t > 0) == (s.lo[0] > 0) && t != 0;
  }
  // Strict interior of the sector; for a half-plane (hi == -lo) both cross
  // conditions coincide and give the open half-plane.
  const Rational c1 = s.lo[0] * (*sol)[1] - s.lo[1] * (*sol)[0];
  const Rational c2 = (*sol)[0] * s.hi[1] - (*sol)[1] * s.hi[0];
  return c1 > 0 && c2 > 0;
}

// Fan facets orthogonal to beta, as sectors in the hyperplane basis:
// counterclockwise (start, end) pairs of primitive basis coordinates.
inline std::vector<std::pair<IntVec, IntVec>> facet_sectors(
    const CambrianDiagram& d, const IntVec& beta,
    const std::vector<IntVec>& basis) {
  std::vector<std::pair<IntVec, IntVec>> out;
  for (const FacetWall& w : d.walls()) {
    if (w.normal != beta) continue;
    if (d.group().rank() == 2) {
      out.push_back({detail_shard::plane_coordinates(basis, w.rays[0]),
                     IntVec{}});
      continue;
    }
    IntVec a = detail_shard::plane_coordinates(basis, w.rays[0]);
    IntVec b = detail_shard::plane_coordinates(basis, w.rays[1]);
    if (cross2(a, b) == 0) throw std::logic_error("degenerate facet");
    if (cross2(a, b) < 0) std::swap(a, b);
    out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

namespace detail_shard {

// Containment in the closed sector from lo counterclockwise to hi, which
// spans at most a half turn.
inline bool sector_contains(const IntVec& lo, const IntVec& hi,
                            const IntVec& x) {
  return cross2(lo, x) >= 0 && cross2(x, hi) >= 0;
}

// Chain the sectors end-to-start from `from` until `to`; true when they
// tile the sector [from, to] exactly, using every piece once. Passing
// from == to == nullptr asks for a full-circle tiling instead.
inline bool sectors_tile(const std::vector<std::pair<IntVec, IntVec>>& pieces,
                         const IntVec* from, const IntVec* to) {
  if (pieces.empty()) return false;
  std::map<IntVec, size_t> by_start;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (from != nullptr &&
        !(sector_contains(*from, *to, pieces[i].first) &&
          sector_contains(*from, *to, pieces[i].second))) {
      return false;
    }
    if (!by_start.emplace(pieces[i].first, i).second) return false;
  }
  IntVec at = from ? *from : pieces[0].first;
  const IntVec stop = to ? *to : at;
  size_t used = 0;
  do {
    auto it = by_start.find(at);
    if (it == by_start.end()) return false;
    at = pieces[it->second].second;
    by_start.erase(it);
    ++used;
  } while (!(at == stop && (from != nullptr || used == pieces.size())));
  return used == pieces.size();
}

}  // namespace detail_shard

// Index of the unique shard tiled exactly by the fan facets orthogonal to
// beta, or -1 if the facets match no single shard.
inline int matching_shard_index(const CambrianDiagram& d, const IntVec& beta,
                                const std::vector<Shard>& shards) {
  if (shards.empty()) return -1;
  const std::vector<IntVec>& basis = shards[0].plane_basis;
  const auto pieces = facet_sectors(d, beta, basis);
  if (pieces.empty()) return -1;
  int found = -1;
  for (size_t si = 0; si < shards.size(); ++si) {
    const Shard& s = shards[si];
    bool match = false;
    if (d.group().rank() == 2) {
      std::set<long> dirs;
      for (const auto& p : pieces) dirs.insert(p.first[0] > 0 ? +1 : -1);
      if (dirs.size() != pieces.size()) return -1;  // duplicate ray
      if (s.whole) {
        match = dirs.size() == 2;
      } else {
        match = dirs.size() == 1 && *dirs.begin() == s.lo[0];
      }
    } else if (s.whole) {
      match = detail_shard::sectors_tile(pieces, nullptr, nullptr);
    } else {
      match = detail_shard::sectors_tile(pieces, &s.lo, &s.hi);
    }
    if (match) {
      if (found >= 0) return -1;  // ambiguous
      found = static_cast<int>(si);
    }
  }
  return found;
}

struct ShardCheck {
  int roots = 0;
  int not_unique_gregarious = 0;  // roots without exactly one gregarious shard
  int fan_mismatch = 0;           // roots whose facets do not tile it
  bool ok() const { return not_unique_gregarious == 0 && fan_mismatch == 0; }
};

// For every positive root: the cutting construction yields exactly one
// gregarious shard, and the fan facets orthogonal to the root tile exactly
// that shard.
inline ShardCheck check_shards(const CambrianDiagram& d) {
  const CoxeterGroup& W = d.group();
  ShardCheck rep;
  for (const IntVec& beta : W.positive_roots()) {
    ++rep.roots;
    const std::vector<Shard> shards = shards_of_root(W, beta);
    int greg = -1;
    bool unique = true;
    for (size_t si = 0; si < shards.size(); ++si) {
      if (is_gregarious(W.root_data(), shards[si])) {
        unique = unique && greg < 0;
        greg = static_cast<int>(si);
      }
    }
    if (greg < 0 || !unique) {
      ++rep.not_unique_gregarious;
      continue;
    }
    if (matching_shard_index(d, beta, shards) != greg) ++rep.fan_mismatch;
  }
  return rep;
}

// The shard diagram carries one wall per positive root, supported on the
// union of the fan facets orthogonal to it with the same function; crossing
// a merged wall is crossing its facet, so loop consistency of the facet
// diagram certifies the merged one once merging itself is validated.
inline LoopConsistencyReport check_shard_consistency(const CambrianDiagram& d) {
  merge_equivalent(d);
  return check_consistency(d);
}

}  // namespace cluscat
