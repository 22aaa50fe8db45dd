#pragma once
// SVG rendering of rank-2 diagrams and broken lines. Presentation only:
// geometry is drawn in floating point and nothing here feeds back into the
// exact computations.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cluscat/scat.hpp"
#include "cluscat/theta.hpp"

namespace cluscat {
namespace detail_svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Canvas {
  double size = 560.0;
  double cx = 280.0;
  double cy = 280.0;
  double scale = 50.0;
  std::ostringstream body;

  std::pair<double, double> map(double x, double y) const {
    return {cx + scale * x, cy - scale * y};
  }

  void line(double x1, double y1, double x2, double y2,
            const std::string& color, double width) {
    const auto [px1, py1] = map(x1, y1);
    const auto [px2, py2] = map(x2, y2);
    body << "<line x1=\"" << num(px1) << "\" y1=\"" << num(py1) << "\" x2=\""
         << num(px2) << "\" y2=\"" << num(py2) << "\" stroke=\"" << color
         << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& color) {
    body << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"2.00\" points=\"";
    for (const auto& [x, y] : pts) {
      const auto [px, py] = map(x, y);
      body << num(px) << "," << num(py) << " ";
    }
    body << "\"/>\n";
  }

  void dot(double x, double y, const std::string& color) {
    const auto [px, py] = map(x, y);
    body << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py)
         << "\" r=\"3.50\" fill=\"" << color << "\"/>\n";
  }

  void text(double x, double y, const std::string& s,
            const std::string& anchor) {
    const auto [px, py] = map(x, y);
    body << "<text x=\"" << num(px) << "\" y=\"" << num(py)
         << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\""
         << anchor << "\">" << s << "</text>\n";
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << num(size) << "\" height=\"" << num(size) << "\" viewBox=\"0 0 "
        << num(size) << " " << num(size) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

inline std::string short_label(const std::string& s) {
  constexpr size_t kMax = 34;
  if (s.size() <= kMax) return s;
  size_t cut = s.rfind(" + ", kMax);
  const size_t cut2 = s.rfind(" - ", kMax);
  if (cut == std::string::npos || (cut2 != std::string::npos && cut2 > cut)) {
    cut = cut2;
  }
  if (cut == std::string::npos || cut == 0) cut = kMax;
  return s.substr(0, cut) + " + ...";
}

// XML-escape the few characters that can appear in function strings.
inline std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '<') {
      out += "&lt;";
    } else if (ch == '>') {
      out += "&gt;";
    } else if (ch == '&') {
      out += "&amp;";
    } else {
      out += ch;
    }
  }
  return out;
}

// Vertices of a broken line, start of the unbounded segment first. Bend
// points are recovered exactly by walking backward from the endpoint:
// segment j arrived along -lambda_j, so its start is the intersection of
// {p + t lambda_j} with the recorded bend ray.
inline std::vector<std::pair<double, double>> broken_line_points(
    const BrokenLine& bl) {
  Rational px = bl.endpoint[0];
  Rational py = bl.endpoint[1];
  std::vector<std::pair<Rational, Rational>> pts = {{px, py}};
  for (size_t j = bl.segments.size(); j-- > 1;) {
    const BrokenSegment& seg = bl.segments[j];
    const IntVec& d = seg.bend->ray;
    const IntVec& lam = seg.lambda;
    const Rational cpd = px * d[1] - py * d[0];
    const Rational cld = Rational(lam[0]) * d[1] - Rational(lam[1]) * d[0];
    const Rational t = -cpd / cld;
    px += t * lam[0];
    py += t * lam[1];
    pts.push_back({px, py});
  }
  // Extend the initial unbounded segment a fixed visual length backward.
  {
    const IntVec& lam = bl.segments.front().lambda;
    const double n = std::sqrt(static_cast<double>(lam[0] * lam[0] +
                                                   lam[1] * lam[1]));
    const double sx = pts.back().first.get_d() + 2.2 * lam[0] / n;
    const double sy = pts.back().second.get_d() + 2.2 * lam[1] / n;
    std::vector<std::pair<double, double>> out = {{sx, sy}};
    for (size_t j = pts.size(); j-- > 0;) {
      out.push_back({pts[j].first.get_d(), pts[j].second.get_d()});
    }
    return out;
  }
}

}  // namespace detail_svg

// Renders the walls of a rank-2 diagram (axes as full lines, diagonal walls
// as rays from the origin) with truncated function labels, plus an optional
// overlay of broken lines ending at a common endpoint.
inline std::string render_svg(const Scat2& d,
                              const std::vector<BrokenLine>& lines = {}) {
  detail_svg::Canvas cv;
  const double reach = 0.5 * cv.size / cv.scale;

  cv.line(-reach, 0, reach, 0, "#555555", 1.2);
  cv.line(0, -reach, 0, reach, "#555555", 1.2);
  cv.text(0.12, reach - 0.25, detail_svg::escape(d.axis_func(0).to_string()),
          "start");
  cv.text(reach - 0.15, -0.25, detail_svg::escape(d.axis_func(1).to_string()),
          "end");

  for (const auto& [ray, w] : d.diagonal_walls()) {
    const double n = std::sqrt(static_cast<double>(ray[0] * ray[0] +
                                                   ray[1] * ray[1]));
    const double ux = ray[0] / n;
    const double uy = ray[1] / n;
    cv.line(0, 0, reach * ux, reach * uy, "#1f4e9c", 1.6);
    const std::string label =
        detail_svg::short_label(w.func.to_string());
    const double lx = 0.80 * reach * ux;
    const double ly = 0.80 * reach * uy + 0.18;
    cv.text(lx, ly, detail_svg::escape(label), ux < 0 ? "end" : "start");
  }

  const std::vector<std::string> palette = {"#c01818", "#0a7a3c", "#b86a00",
                                            "#7a0ac0", "#0a90b8"};
  for (size_t i = 0; i < lines.size(); ++i) {
    cv.polyline(detail_svg::broken_line_points(lines[i]),
                palette[i % palette.size()]);
  }
  if (!lines.empty()) {
    cv.dot(lines.front().endpoint[0].get_d(),
           lines.front().endpoint[1].get_d(), "#000000");
  }

  std::ostringstream title;
  title << "B = [[0," << d.b() << "],[" << d.a() << ",0]]  order "
        << d.order();
  cv.text(-reach + 0.15, reach - 0.25, title.str(), "start");
  return cv.finish();
}

}  // namespace cluscat
