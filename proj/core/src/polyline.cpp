#include "zmc/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace zmc::geom {
namespace {

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + s * dx), p.y - (a.y + s * dy));
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_cross(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  const double d1 = cross(b0, b1, a0);
  const double d2 = cross(b0, b1, a1);
  const double d3 = cross(a0, a1, b0);
  const double d4 = cross(a0, a1, b1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(b0, b1, a0)) return true;
  if (d2 == 0 && on_segment(b0, b1, a1)) return true;
  if (d3 == 0 && on_segment(a0, a1, b0)) return true;
  if (d4 == 0 && on_segment(a0, a1, b1)) return true;
  return false;
}

struct Box {
  double xmin, xmax, ymin, ymax;
  std::size_t curve;
  std::size_t seg;
};

}  // namespace

double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
  if (segments_cross(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

std::vector<SegmentHit> find_close_segments(std::span<const std::vector<Point2>> curves, double tol, bool same_curve,
                                            bool cross_curve) {
  std::vector<Box> boxes;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& pts = curves[c];
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Point2 a = pts[i];
      const Point2 b = pts[i + 1];
      boxes.push_back({std::min(a.x, b.x) - tol, std::max(a.x, b.x) + tol, std::min(a.y, b.y) - tol,
                       std::max(a.y, b.y) + tol, c, i});
    }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& l, const Box& r) {
    return std::tie(l.xmin, l.curve, l.seg) < std::tie(r.xmin, r.curve, r.seg);
  });

  std::vector<SegmentHit> hits;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const Box& cur = boxes[k];
    std::erase_if(active, [&](std::size_t idx) { return boxes[idx].xmax < cur.xmin; });
    for (std::size_t idx : active) {
      const Box& other = boxes[idx];
      if (other.ymax < cur.ymin || cur.ymax < other.ymin) continue;
      const bool same = other.curve == cur.curve;
      if (same && !same_curve) continue;
      if (!same && !cross_curve) continue;
      if (same && (other.seg + 1 == cur.seg || cur.seg + 1 == other.seg || other.seg == cur.seg)) continue;
      const auto& pa = curves[cur.curve];
      const auto& pb = curves[other.curve];
      const double d = segment_distance(pa[cur.seg], pa[cur.seg + 1], pb[other.seg], pb[other.seg + 1]);
      if (d <= tol) {
        SegmentHit h{cur.curve, cur.seg, other.curve, other.seg, d};
        if (std::tie(h.curve_b, h.segment_b) < std::tie(h.curve_a, h.segment_a)) {
          std::swap(h.curve_a, h.curve_b);
          std::swap(h.segment_a, h.segment_b);
        }
        hits.push_back(h);
      }
    }
    active.push_back(k);
  }
  std::sort(hits.begin(), hits.end(), [](const SegmentHit& l, const SegmentHit& r) {
    return std::tie(l.curve_a, l.segment_a, l.curve_b, l.segment_b) <
           std::tie(r.curve_a, r.segment_a, r.curve_b, r.segment_b);
  });
  return hits;
}

double polyline_distance(std::span<const Point2> a, std::span<const Point2> b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.size(); ++j) best = std::min(best, segment_distance(a[i], a[i + 1], b[j], b[j + 1]));
  return best;
}

double clipped_area(std::span<const HalfPlane> planes, double half_width) {
  const double w = half_width;
  std::vector<Point2> poly = {{-w, -w}, {w, -w}, {w, w}, {-w, w}};
  for (const HalfPlane& hp : planes) {
    std::vector<Point2> out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point2 p = poly[i];
      const Point2 q = poly[(i + 1) % m];
      const double fp = hp.a * p.x + hp.b * p.y + hp.c;
      const double fq = hp.a * q.x + hp.b * q.y + hp.c;
      if (fp > 0) out.push_back(p);
      if ((fp > 0) != (fq > 0)) {
        const double s = fp / (fp - fq);
        out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
      }
    }
    poly = std::move(out);
    if (poly.size() < 3) return 0.0;
  }
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 p = poly[i];
    const Point2 q = poly[(i + 1) % poly.size()];
    area += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(area);
}

}  // namespace zmc::geom
