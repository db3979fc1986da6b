#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "zmc/parallel.hpp"
#include "zmc/polyline.hpp"

using namespace zmc::geom;

TEST(Geometry, SegmentDistance) {
  EXPECT_DOUBLE_EQ(segment_distance({0, 0}, {1, 0}, {0, 1}, {1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(segment_distance({0, 0}, {1, 1}, {0, 1}, {1, 0}), 0.0);
  EXPECT_NEAR(segment_distance({0, 0}, {1, 0}, {2, 1}, {3, 1}), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(segment_distance({0, 0}, {0, 0}, {3, 4}, {3, 4}), 5.0);
}

TEST(Geometry, CloseSegmentsCrossing) {
  const std::vector<std::vector<Point2>> curves = {{{0, 0}, {1, 1}, {2, 2}}, {{0, 2}, {1, 1.0001}, {2, 0}}};
  const auto hits = find_close_segments(curves, 1e-9);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits.front().curve_a, 0u);
  EXPECT_EQ(hits.front().curve_b, 1u);
  EXPECT_TRUE(find_close_segments(curves, 1e-9, true, false).empty());
}

TEST(Geometry, SelfIntersectionAndAdjacency) {
  const std::vector<std::vector<Point2>> loop = {{{0, 0}, {2, 0}, {2, 1}, {1, -1}}};
  const auto hits = find_close_segments(loop, 1e-12, true, false);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].segment_a, 0u);
  EXPECT_EQ(hits[0].segment_b, 2u);
  const std::vector<std::vector<Point2>> straight = {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}};
  EXPECT_TRUE(find_close_segments(straight, 1e-12).empty());
}

TEST(Geometry, PolylineDistance) {
  const std::vector<Point2> a = {{0, 0}, {1, 0}};
  const std::vector<Point2> b = {{0, 2}, {0.5, 0.5}, {1, 2}};
  EXPECT_NEAR(polyline_distance(a, b), 0.5, 1e-15);
}

TEST(Geometry, ClippedArea) {
  EXPECT_NEAR(clipped_area({}, 1.0), 4.0, 1e-12);
  const std::vector<HalfPlane> half = {{1, 0, 0}};
  EXPECT_NEAR(clipped_area(half, 1.0), 2.0, 1e-12);
  const std::vector<HalfPlane> tri = {{1, 0, 0}, {0, 1, 0}, {-1, -1, 1}};
  EXPECT_NEAR(clipped_area(tri, 2.0), 0.5, 1e-12);
  const std::vector<HalfPlane> empty = {{1, 0, -0.5}, {-1, 0, -0.5}};
  EXPECT_NEAR(clipped_area(empty, 2.0), 0.0, 1e-12);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  zmc::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(zmc::worker_count(), 1u);
  EXPECT_THROW(zmc::parallel_for(10, [](std::size_t i) {
                 if (i == 3) throw std::runtime_error("x");
               }),
               std::runtime_error);
}
