#pragma once
// JSON import/export. A rank-2 diagram dump lists every wall with its
// normal, support cone and function text; loading a dump reproduces a
// diagram equal to the original. Cambrian fan dumps are export-only and
// list the sortable elements (as words) with their cone data.

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "cluscat/coxeter.hpp"
#include "cluscat/scat.hpp"

namespace cluscat {

// Insertion-ordered JSON keeps dumps stable and readable.
using Json = nlohmann::ordered_json;

// {"B": [[0,b],[a,0]], "order": K, "walls": [{normal, cone, function}]}.
// Axis walls come first (cone kind "line" with a spanning direction), then
// the diagonal walls in ray order (cone kind "ray").
inline Json diagram_to_json(const Scat2& d) {
  Json walls = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json wall;
    wall["normal"] = IntVec{i == 0 ? 1L : 0L, i == 0 ? 0L : 1L};
    wall["cone"] = {{"kind", "line"},
                    {"direction", IntVec{i == 0 ? 0L : 1L, i == 0 ? 1L : 0L}}};
    wall["function"] = d.axis_func(i).to_string();
    walls.push_back(std::move(wall));
  }
  for (const auto& [ray, w] : d.diagonal_walls()) {
    Json wall;
    wall["normal"] = w.normal;
    wall["cone"] = {{"kind", "ray"}, {"ray", w.ray}};
    wall["function"] = w.func.to_string();
    walls.push_back(std::move(wall));
  }
  Json j;
  j["B"] = IntMat{{0, d.b()}, {d.a(), 0}};
  j["order"] = d.order();
  j["walls"] = std::move(walls);
  return j;
}

inline Scat2 diagram_from_json(const Json& j) {
  const Json& B = j.at("B");
  if (!B.is_array() || B.size() != 2 || B[0].size() != 2 ||
      B[1].size() != 2 || B[0][0].get<long>() != 0 ||
      B[1][1].get<long>() != 0) {
    throw std::invalid_argument("diagram JSON needs B = [[0,b],[a,0]]");
  }
  const long b = B[0][1].get<long>();
  const long a = B[1][0].get<long>();
  const int order = j.at("order").get<int>();
  Scat2 d(a, b, order);
  for (const Json& wall : j.at("walls")) {
    const IntVec normal = primitive_vector(wall.at("normal").get<IntVec>());
    const std::string kind = wall.at("cone").at("kind").get<std::string>();
    const TruncatedSeries f = TruncatedSeries::parse(
        wall.at("function").get<std::string>(), 2, order);
    if (kind == "line") {
      // Coordinate-axis walls are part of every diagram; verify, don't add.
      if (normal != IntVec{1, 0} && normal != IntVec{0, 1}) {
        throw std::invalid_argument("line wall must sit on a coordinate axis");
      }
      const int i = normal[0] == 1 ? 0 : 1;
      if (f != d.axis_func(i)) {
        throw std::invalid_argument("axis wall function mismatch");
      }
    } else if (kind == "ray") {
      if (normal.size() != 2 || normal[0] <= 0 || normal[1] <= 0) {
        throw std::invalid_argument("ray wall normal must be positive");
      }
      const IntVec ray = wall.at("cone").at("ray").get<IntVec>();
      if (ray != d.outgoing_ray(normal)) {
        throw std::invalid_argument("ray wall is not on its outgoing ray");
      }
      const int deg = static_cast<int>(normal[0] + normal[1]);
      for (const auto& [e, c] : f.terms()) {
        if (total_degree(e) == 0) {
          if (c != 1) {
            throw std::invalid_argument("wall function constant term must be 1");
          }
          continue;
        }
        if (e[0] * normal[1] != e[1] * normal[0] ||
            total_degree(e) % deg != 0) {
          throw std::invalid_argument(
              "wall function exponents must be multiples of the normal");
        }
        d.add_wall_term(normal, total_degree(e) / deg, c);
      }
    } else {
      throw std::invalid_argument("unknown cone kind: " + kind);
    }
  }
  return d;
}

inline bool diagrams_equal(const Scat2& x, const Scat2& y) {
  return x.a() == y.a() && x.b() == y.b() && x.order() == y.order() &&
         x.diagonal_walls() == y.diagonal_walls();
}

// "x1^-3*x2^2" style power product; empty for the zero vector.
inline std::string power_product(const std::string& base,
                                 const std::vector<long>& e) {
  std::string out;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += base + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

// Canonical text form of a Laurent element: the x^lambda y^beta0 monomial,
// then the series factor in parentheses unless it is 1.
inline std::string laurent_to_string(const LaurentElement& t) {
  std::string mono = power_product("x", t.lambda);
  const std::string yb = power_product("y", t.beta0);
  if (!yb.empty()) mono = mono.empty() ? yb : mono + "*" + yb;
  if (t.coeff.is_one()) return mono.empty() ? "1" : mono;
  const std::string series = t.coeff.to_string();
  return mono.empty() ? series : mono + " * (" + series + ")";
}

// Fan dump of an acyclic finite-type diagram: the exchange matrix, the
// Coxeter word, every sortable element as a word with its cone roots and
// cone generators, and every wall with its cone rays and function.
inline Json fan_to_json(const CambrianDiagram& d) {
  Json j;
  j["B"] = d.root_data().b;
  j["order"] = d.order();
  j["coxeter_word"] = d.coxeter_word();
  Json sorts = Json::array();
  for (const SortableElement& s : d.sortables()) {
    Json e;
    e["word"] = s.word;
    e["c_roots"] = s.c_roots;
    e["rays"] = s.rays;
    sorts.push_back(std::move(e));
  }
  j["sortables"] = std::move(sorts);
  Json walls = Json::array();
  for (const FacetWall& w : d.walls()) {
    Json e;
    e["normal"] = w.normal;
    e["cone"] = {{"kind", "cone"}, {"rays", w.rays}};
    e["function"] = d.wall_function(w.normal).to_string();
    walls.push_back(std::move(e));
  }
  j["walls"] = std::move(walls);
  return j;
}

}  // namespace cluscat
