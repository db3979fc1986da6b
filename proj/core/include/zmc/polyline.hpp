#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zmc::geom {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Euclidean distance between closed segments [a0,a1] and [b0,b1].
double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1);

struct SegmentHit {
  std::size_t curve_a;
  std::size_t segment_a;
  std::size_t curve_b;
  std::size_t segment_b;
  double distance;
};

// All pairs of segments closer than tol (distance <= tol). Segments of the same
// curve that share a vertex are never reported. Uses a sweep over x-sorted
// bounding boxes; the result is sorted by (curve_a, segment_a, curve_b, segment_b).
std::vector<SegmentHit> find_close_segments(std::span<const std::vector<Point2>> curves, double tol,
                                            bool same_curve = true, bool cross_curve = true);

// Minimum distance between two polylines (brute force over segment pairs).
double polyline_distance(std::span<const Point2> a, std::span<const Point2> b);

// Area of the intersection of the convex region {p : a_i x + b_i y + c_i > 0 for all i}
// with the box [-half_width, half_width]^2.
struct HalfPlane {
  double a;
  double b;
  double c;
};
double clipped_area(std::span<const HalfPlane> planes, double half_width);

}  // namespace zmc::geom
