#include "cluscat/json_io.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cluscat/coxeter.hpp"
#include "cluscat/scat.hpp"
#include "cluscat/svg.hpp"
#include "cluscat/theta.hpp"

namespace {

using cluscat::CambrianDiagram;
using cluscat::IntMat;
using cluscat::IntVec;
using cluscat::Json;
using cluscat::LaurentElement;
using cluscat::Rational;
using cluscat::Scat2;
using cluscat::TruncatedSeries;

TEST(JsonIo, DumpShape) {
  const Scat2 d = cluscat::complete_rank2(-1, 1, 8);
  const Json j = cluscat::diagram_to_json(d);
  EXPECT_EQ(j.at("order").get<int>(), 8);
  EXPECT_EQ(j.at("B").get<IntMat>(), (IntMat{{0, 1}, {-1, 0}}));
  ASSERT_EQ(j.at("walls").size(), 3u);
  EXPECT_EQ(j["walls"][0]["cone"]["kind"], "line");
  EXPECT_EQ(j["walls"][0]["normal"].get<IntVec>(), (IntVec{1, 0}));
  EXPECT_EQ(j["walls"][0]["function"], "1 + y1");
  EXPECT_EQ(j["walls"][1]["cone"]["kind"], "line");
  EXPECT_EQ(j["walls"][2]["cone"]["kind"], "ray");
  EXPECT_EQ(j["walls"][2]["cone"]["ray"].get<IntVec>(), (IntVec{-1, 1}));
  EXPECT_EQ(j["walls"][2]["normal"].get<IntVec>(), (IntVec{1, 1}));
  EXPECT_EQ(j["walls"][2]["function"], "1 + y1*y2");
}

TEST(JsonIo, RoundTripAcrossTypesAndOrders) {
  const std::vector<std::pair<long, long>> types = {
      {0, 0}, {-1, 1}, {-2, 1}, {-3, 1}, {-2, 2}, {-4, 1}, {-3, 2}, {1, -1}};
  for (const auto& [a, b] : types) {
    for (int order : {6, 9}) {
      const Scat2 d = cluscat::complete_rank2(a, b, order);
      const Scat2 back = cluscat::diagram_from_json(cluscat::diagram_to_json(d));
      EXPECT_TRUE(cluscat::diagrams_equal(back, d))
          << "a=" << a << " b=" << b << " order=" << order;
    }
  }
}

TEST(JsonIo, TextRoundTrip) {
  const Scat2 d = cluscat::complete_rank2(-2, 2, 9);
  const std::string text = cluscat::diagram_to_json(d).dump(2);
  const Scat2 back = cluscat::diagram_from_json(Json::parse(text));
  EXPECT_TRUE(cluscat::diagrams_equal(back, d));
}

TEST(JsonIo, RejectsMalformedDumps) {
  const Json good = cluscat::diagram_to_json(cluscat::complete_rank2(-1, 1, 6));
  {
    Json bad = good;
    bad["B"][0][0] = 1;
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
  {
    Json bad = good;
    bad["walls"][2]["cone"]["kind"] = "blob";
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
  {
    Json bad = good;
    bad["walls"][2]["cone"]["ray"] = IntVec{1, 1};  // not the outgoing ray
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
  {
    Json bad = good;
    bad["walls"][2]["function"] = "2 + y1*y2";  // constant term must be 1
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
  {
    Json bad = good;
    bad["walls"][2]["function"] = "1 + y1";  // not a power of the normal
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
  {
    Json bad = good;
    bad["walls"][0]["function"] = "1 + 2*y1";  // wrong axis function
    EXPECT_THROW(cluscat::diagram_from_json(bad), std::invalid_argument);
  }
}

TEST(JsonIo, FanDumpListsSortablesAndWalls) {
  const CambrianDiagram d = CambrianDiagram::from_exchange(
      {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, 8);
  const Json j = cluscat::fan_to_json(d);
  EXPECT_EQ(j.at("order").get<int>(), 8);
  EXPECT_EQ(j.at("coxeter_word").get<std::vector<int>>(),
            (std::vector<int>{0, 1, 2}));
  ASSERT_EQ(j.at("sortables").size(), 14u);
  ASSERT_EQ(j.at("walls").size(), 21u);
  // The identity cone comes first: empty word, the three fundamental rays.
  EXPECT_TRUE(j["sortables"][0]["word"].empty());
  EXPECT_EQ(j["sortables"][0]["rays"].size(), 3u);
  EXPECT_EQ(j["sortables"][0]["c_roots"].size(), 3u);
  for (const auto& w : j["walls"]) {
    EXPECT_EQ(w["cone"]["kind"], "cone");
    EXPECT_EQ(w["cone"]["rays"].size(), 2u);
    const auto f = w["function"].get<std::string>();
    EXPECT_EQ(f.rfind("1 + ", 0), 0u) << f;
  }
}

TEST(JsonIo, LaurentFormatting) {
  EXPECT_EQ(cluscat::laurent_to_string(LaurentElement::monomial({1, 0}, 4)),
            "x1");
  EXPECT_EQ(cluscat::laurent_to_string(LaurentElement::monomial({-3, 2}, 4)),
            "x1^-3*x2^2");
  EXPECT_EQ(cluscat::laurent_to_string(LaurentElement::monomial({0, 0}, 4)),
            "1");
  TruncatedSeries s = TruncatedSeries::one(2, 4);
  s.add_term({1, 0}, 1);
  EXPECT_EQ(cluscat::laurent_to_string(LaurentElement({-1, 1}, {0, 0}, s)),
            "x1^-1*x2 * (1 + y1)");
  EXPECT_EQ(cluscat::laurent_to_string(LaurentElement({0, 0}, {1, 2}, s)),
            "y1*y2^2 * (1 + y1)");
}

TEST(SvgRender, WellFormedWithWallsAndBrokenLines) {
  const Scat2 d = cluscat::complete_rank2(-1, 3, 8);
  const std::string plain = cluscat::render_svg(d);
  EXPECT_EQ(plain.rfind("<svg", 0), 0u);
  EXPECT_NE(plain.find("</svg>"), std::string::npos);
  size_t lines = 0;
  for (size_t p = plain.find("<line"); p != std::string::npos;
       p = plain.find("<line", p + 1)) {
    ++lines;
  }
  EXPECT_EQ(lines, 2 + d.diagonal_walls().size());

  const auto broken = cluscat::enumerate_broken_lines(
      d, {-3, 2}, {Rational(7), Rational(3)}, 8);
  ASSERT_EQ(broken.size(), 5u);
  const std::string overlay = cluscat::render_svg(d, broken);
  size_t polys = 0;
  for (size_t p = overlay.find("<polyline"); p != std::string::npos;
       p = overlay.find("<polyline", p + 1)) {
    ++polys;
  }
  EXPECT_EQ(polys, broken.size());
  for (const auto& line : broken) {
    const auto pts = cluscat::detail_svg::broken_line_points(line);
    ASSERT_EQ(pts.size(), line.segments.size() + 1);
    EXPECT_DOUBLE_EQ(pts.back().first, line.endpoint[0].get_d());
    EXPECT_DOUBLE_EQ(pts.back().second, line.endpoint[1].get_d());
  }
}

}  // namespace
