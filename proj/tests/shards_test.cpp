#include "cluscat/shards.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "cluscat/coxeter.hpp"

namespace {

using cluscat::CambrianDiagram;
using cluscat::IntMat;
using cluscat::IntVec;
using cluscat::Shard;

const IntMat kA2 = {{0, 1}, {-1, 0}};
const IntMat kB2 = {{0, 1}, {-2, 0}};
const IntMat kG2 = {{0, 1}, {-3, 0}};
const IntMat kA3 = {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};

TEST(Shards, SimpleRootHyperplanesStayWhole) {
  const CambrianDiagram d = CambrianDiagram::from_exchange(kA2, 8);
  const auto s1 = cluscat::shards_of_root(d.group(), {1, 0});
  ASSERT_EQ(s1.size(), 1u);
  EXPECT_TRUE(s1[0].whole);
  EXPECT_TRUE(cluscat::is_gregarious(d.root_data(), s1[0]));
}

TEST(Shards, NonSimpleRankTwoRootsSplitIntoTwoRays) {
  const CambrianDiagram d = CambrianDiagram::from_exchange(kA2, 8);
  const auto shards = cluscat::shards_of_root(d.group(), {1, 1});
  ASSERT_EQ(shards.size(), 2u);
  int gregarious = 0;
  for (const Shard& s : shards) {
    EXPECT_FALSE(s.whole);
    gregarious += cluscat::is_gregarious(d.root_data(), s) ? 1 : 0;
  }
  EXPECT_EQ(gregarious, 1);
  // The fan facets pick out exactly the gregarious ray.
  const int match = cluscat::matching_shard_index(d, {1, 1}, shards);
  ASSERT_GE(match, 0);
  EXPECT_TRUE(cluscat::is_gregarious(d.root_data(), shards[match]));
}

TEST(Shards, HighestRootPlaneIsCutTwiceInRankThree) {
  const CambrianDiagram d = CambrianDiagram::from_exchange(kA3, 8);
  // Two distinct rank-2 subsystems keep (1,1,1) strictly inside their cone,
  // so its plane splits into four sectors.
  const auto shards = cluscat::shards_of_root(d.group(), {1, 1, 1});
  EXPECT_EQ(shards.size(), 4u);
  int gregarious = 0;
  for (const Shard& s : shards) {
    gregarious += cluscat::is_gregarious(d.root_data(), s) ? 1 : 0;
  }
  EXPECT_EQ(gregarious, 1);
  // A once-cut plane splits into two half-planes.
  const auto half = cluscat::shards_of_root(d.group(), {1, 1, 0});
  EXPECT_EQ(half.size(), 2u);
}

TEST(Shards, FanFacetsTileExactlyTheGregariousShard) {
  for (const IntMat& b : {kA2, kB2, kG2, kA3}) {
    const CambrianDiagram d = CambrianDiagram::from_exchange(b, 8);
    const auto rep = cluscat::check_shards(d);
    EXPECT_EQ(rep.roots,
              static_cast<int>(d.group().positive_roots().size()));
    EXPECT_EQ(rep.not_unique_gregarious, 0);
    EXPECT_EQ(rep.fan_mismatch, 0);
  }
}

TEST(Shards, MergedDiagramRemainsConsistent) {
  for (const IntMat& b : {kB2, kA3}) {
    const CambrianDiagram d = CambrianDiagram::from_exchange(b, 8);
    const auto rep = cluscat::check_shard_consistency(d);
    EXPECT_TRUE(rep.consistent);
    EXPECT_GE(rep.checked_loops, 1);
  }
}

TEST(Shards, RejectsUnsupportedInputs) {
  const CambrianDiagram d = CambrianDiagram::from_exchange(kA2, 8);
  EXPECT_THROW(cluscat::shards_of_root(d.group(), {0, -1}),
               std::invalid_argument);
  EXPECT_THROW(cluscat::shards_of_root(d.group(), {2, 1}),
               std::invalid_argument);
}

}  // namespace
