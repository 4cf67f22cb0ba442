#include "trajkit/broken_line.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trajkit {

namespace {

constexpr double kPointMergeEpsilon = 1e-12;  // m
constexpr double kTurnMergeEpsilon = 1e-12;   // rad

double turn_between(Point2 a, Point2 b, Point2 c) {
  const Point2 u = b - a;
  const Point2 v = c - b;
  return std::atan2(cross(u, v), dot(u, v));
}

}  // namespace

BrokenLine BrokenLine::from_points(const std::vector<Point2>& points,
                                   const std::vector<double>& clearances) {
  if (points.size() < 2) throw Error(Status::EmptyPath, "broken line needs at least two points");
  if (!clearances.empty() && clearances.size() != points.size() - 2)
    throw Error(Status::InvalidArgument, "expected one clearance per interior point");

  std::vector<Point2> pts;
  std::vector<double> cls;
  pts.reserve(points.size());
  cls.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2 p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(Status::InvalidArgument, "non-finite point coordinates", i);
    double c = kUnbounded;
    if (i > 0 && i + 1 < points.size() && !clearances.empty()) {
      c = clearances[i - 1];
      if (std::isnan(c) || c <= 0.0)
        throw Error(Status::InvalidArgument, "clearance must be positive", i);
    }
    if (!pts.empty() && distance(pts.back(), p) < kPointMergeEpsilon) continue;
    // Merge collinear interior points; keep the tighter clearance.
    if (pts.size() >= 2 && std::abs(turn_between(pts[pts.size() - 2], pts.back(), p)) <
                               kTurnMergeEpsilon) {
      pts.back() = p;
      cls.back() = std::min(cls.back(), c);
      continue;
    }
    pts.push_back(p);
    cls.push_back(c);
  }
  if (pts.size() < 2) throw Error(Status::EmptyPath, "broken line collapsed to a single point");
  cls.front() = kUnbounded;
  cls.back() = kUnbounded;
  return BrokenLine(std::move(pts), std::move(cls));
}

double BrokenLine::segment_length(std::size_t i) const {
  return distance(points_[i], points_[i + 1]);
}

double BrokenLine::turn_angle(std::size_t i) const {
  return turn_between(points_[i - 1], points_[i], points_[i + 1]);
}

const char* violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::AcuteTurn: return "AcuteTurn";
    case ViolationKind::ZeroTurn: return "ZeroTurn";
    case ViolationKind::DuplicatePoint: return "DuplicatePoint";
    case ViolationKind::NonPositiveClearance: return "NonPositiveClearance";
  }
  return "Unknown";
}

std::vector<Violation> validate(const BrokenLine& line) {
  std::vector<Violation> out;
  const std::size_t n = line.point_count() - 1;
  for (std::size_t i = 0; i + 1 <= n; ++i) {
    if (line.segment_length(i) < kPointMergeEpsilon)
      out.push_back({ViolationKind::DuplicatePoint, i + 1});
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double beta = line.turn_angle(i);
    if (std::abs(beta) < kTurnMergeEpsilon)
      out.push_back({ViolationKind::ZeroTurn, i});
    else if (std::abs(beta) > kPi / 2.0)
      out.push_back({ViolationKind::AcuteTurn, i});
    if (!(line.clearance(i) > 0.0))
      out.push_back({ViolationKind::NonPositiveClearance, i});
  }
  return out;
}

BrokenLine split_acute(const BrokenLine& line, const SplitOptions& opts) {
  const std::size_t n = line.point_count() - 1;
  std::vector<Point2> pts;
  std::vector<double> cls;  // interior clearances aligned with pts[1..]
  pts.push_back(line.point(0));

  // Per-side budget on each original segment, so neighboring chamfers never
  // overlap: each corner may consume strictly less than half a segment.
  const double half = 0.5 * (1.0 - 1e-9);

  for (std::size_t i = 1; i < n; ++i) {
    const double beta = line.turn_angle(i);
    const Point2 p = line.point(i);
    if (std::abs(beta) <= kPi / 2.0) {
      pts.push_back(p);
      cls.push_back(line.clearance(i));
      continue;
    }
    const Point2 u = unit_vector(std::atan2(p.y - line.point(i - 1).y, p.x - line.point(i - 1).x));
    const Point2 v = unit_vector(
        std::atan2(line.point(i + 1).y - p.y, line.point(i + 1).x - p.x));
    // Chamfer endpoints a = p - h u and b = p + h v turn the corner into two
    // half turns; the chamfer [a, b] is orthogonal to the inner bisector.
    // h is capped so the chamfer chord clears the clearance disk:
    // the chord at offset h stays outside D_i iff h sin(|b|/2) <= c tan(|b|/4).
    const double ab = std::abs(beta);
    double c_eff = line.clearance(i);
    if (!std::isfinite(c_eff))
      c_eff = std::min(line.segment_length(i - 1), line.segment_length(i));
    double h = std::min({c_eff * std::tan(ab / 4.0) / std::sin(ab / 2.0),
                         half * line.segment_length(i - 1), half * line.segment_length(i)});
    const double chamfer = 2.0 * h * std::cos(ab / 2.0);
    if (!(chamfer > opts.min_chamfer_length))
      throw Error(Status::Unsplittable,
                  "corner too tight to host a chamfer at point " + std::to_string(i), i);
    const Point2 a = p - h * u;
    const Point2 b = p + h * v;
    const double c_new = std::min(h, 0.5 * chamfer);
    pts.push_back(a);
    cls.push_back(c_new);
    pts.push_back(b);
    cls.push_back(c_new);
  }
  pts.push_back(line.point(n));
  return BrokenLine::from_points(pts, cls);
}

std::vector<Corner> tangent_lengths(const BrokenLine& line) {
  const std::size_t n = line.point_count() - 1;
  std::vector<Corner> corners;
  if (n < 2) return corners;
  corners.reserve(n - 1);

  std::vector<double> tau(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) tau[i] = std::abs(std::tan(line.turn_angle(i) / 2.0));

  for (std::size_t i = 1; i < n; ++i) {
    const double beta = line.turn_angle(i);
    const double len_prev = line.segment_length(i - 1);
    const double len_next = line.segment_length(i);
    // Backward and forward tangent-length candidates; a missing neighbor
    // corner leaves the full adjacent segment as the only bound on that side.
    const double back = (i >= 2) ? tau[i] * len_prev / (tau[i - 1] + tau[i]) : len_prev;
    const double fwd = (i + 1 < n) ? tau[i] * len_next / (tau[i] + tau[i + 1]) : len_next;
    double c_eff = line.clearance(i);
    if (!std::isfinite(c_eff)) c_eff = std::min(len_prev, len_next);
    const double ell = std::min({back, fwd, c_eff});
    Corner corner;
    corner.index = i;
    corner.beta = beta;
    corner.tau = tau[i];
    corner.ell = ell;
    corner.kappa_c = (beta >= 0.0 ? 1.0 : -1.0) * tau[i] / ell;
    corners.push_back(corner);
  }

  // Guard against shared-segment over-consumption: rescale both tangent
  // lengths proportionally when a segment cannot host them.
  for (std::size_t k = 0; k + 1 < corners.size(); ++k) {
    Corner& a = corners[k];
    Corner& b = corners[k + 1];
    if (b.index != a.index + 1) continue;
    const double seg = line.segment_length(a.index);
    const double sum = a.ell + b.ell;
    if (sum > seg) {
      const double scale = seg / sum;
      a.ell *= scale;
      a.kappa_c = (a.beta >= 0.0 ? 1.0 : -1.0) * a.tau / a.ell;
      b.ell *= scale;
      b.kappa_c = (b.beta >= 0.0 ? 1.0 : -1.0) * b.tau / b.ell;
    }
  }
  return corners;
}

namespace {

double point_segment_distance(Point2 q, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(q, a);
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return distance(q, a + t * ab);
}

}  // namespace

bool safe_zone_contains(const BrokenLine& line, const std::vector<Corner>& corners, Point2 q,
                        double tol) {
  for (std::size_t i = 0; i + 1 < line.point_count(); ++i) {
    if (point_segment_distance(q, line.point(i), line.point(i + 1)) <= tol) return true;
  }
  for (const Corner& corner : corners) {
    const std::size_t i = corner.index;
    const Point2 p = line.point(i);
    const double len_prev = line.segment_length(i - 1);
    const double len_next = line.segment_length(i);
    double c_eff = line.clearance(i);
    c_eff = std::min({c_eff, len_prev, len_next});

    const Point2 u = (1.0 / len_prev) * (p - line.point(i - 1));
    const Point2 v = (1.0 / len_next) * (line.point(i + 1) - p);
    // Wedge coordinates: q - p = a1 (-u) + a2 v.
    const Point2 w1{-u.x, -u.y};
    const Point2 w2 = v;
    const double det = cross(w1, w2);
    if (std::abs(det) < 1e-15) continue;
    const Point2 d = q - p;
    const double a1 = cross(d, w2) / det;
    const double a2 = cross(w1, d) / det;
    if (a1 < -tol || a2 < -tol || a1 > c_eff + tol || a2 > c_eff + tol) continue;
    // Clearance disk: tangent to both rays at distance c_eff from p, center on
    // the inner bisector, radius c_eff / tau.
    const double tau = corner.tau;
    Point2 bis = w1 + w2;
    const double bis_norm = norm(bis);
    if (bis_norm < 1e-15 || tau < 1e-15) continue;
    bis = (1.0 / bis_norm) * bis;
    const double half_angle = 0.5 * (kPi - std::abs(corner.beta));
    const Point2 center = p + (c_eff / std::cos(half_angle)) * bis;
    const double radius = c_eff / tau;
    if (distance(q, center) >= radius - tol) return true;
  }
  return false;
}

}  // namespace trajkit
