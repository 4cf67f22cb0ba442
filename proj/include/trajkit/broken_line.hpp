#pragma once

#include <limits>
#include <vector>

#include "trajkit/geometry.hpp"

namespace trajkit {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Annotated polyline: points p_0..p_n plus clearance parameters c_i at the
/// interior points. Consecutive duplicates and collinear interior points are
/// merged at construction, so every remaining corner has a nonzero turn.
class BrokenLine {
 public:
  /// clearances has one entry per interior point (points.size() - 2) or is
  /// empty, meaning all unbounded. Throws EmptyPath for fewer than two points
  /// and InvalidArgument for non-finite points or non-positive clearances.
  static BrokenLine from_points(const std::vector<Point2>& points,
                                const std::vector<double>& clearances = {});

  std::size_t point_count() const { return points_.size(); }
  std::size_t segment_count() const { return points_.size() - 1; }
  const std::vector<Point2>& points() const { return points_; }
  Point2 point(std::size_t i) const { return points_[i]; }

  /// Clearance of interior point i (1 <= i <= n-1), kUnbounded if unset.
  double clearance(std::size_t i) const { return clearances_[i]; }

  double segment_length(std::size_t i) const;

  /// Signed turn angle beta_i at interior point i.
  double turn_angle(std::size_t i) const;

 private:
  BrokenLine(std::vector<Point2> points, std::vector<double> clearances)
      : points_(std::move(points)), clearances_(std::move(clearances)) {}

  std::vector<Point2> points_;
  std::vector<double> clearances_;  // aligned with points_; ends unused
};

enum class ViolationKind {
  AcuteTurn,             // |beta| > pi/2
  ZeroTurn,              // collinear interior point
  DuplicatePoint,        // coincident consecutive points
  NonPositiveClearance,
};

struct Violation {
  ViolationKind kind;
  std::size_t index;
};

const char* violation_name(ViolationKind kind);

/// Diagnostic check; empty result means the line is ready for interpolation.
std::vector<Violation> validate(const BrokenLine& line);

struct SplitOptions {
  double min_chamfer_length = 1e-6;  // m
};

/// Replaces every corner with |beta| > pi/2 by two corners of half the turn,
/// joined by a chamfer segment orthogonal to the inner bisector. Throws
/// Unsplittable when the corner cannot host a chamfer of the minimum length.
BrokenLine split_acute(const BrokenLine& line, const SplitOptions& opts = {});

/// Circle-arc fit at one corner.
struct Corner {
  std::size_t index = 0;  // interior point index
  double beta = 0.0;      // signed turn (rad)
  double tau = 0.0;       // |tan(beta/2)|
  double ell = 0.0;       // tangent length (m)
  double kappa_c = 0.0;   // arc curvature, signed by turn direction (1/m)
};

/// Tangent lengths and arc curvatures for all interior corners. The line must
/// pass validate().
std::vector<Corner> tangent_lengths(const BrokenLine& line);

/// True iff q lies on a segment or inside some corner's safe zone (the region
/// bounded by the corner's segments and its clearance disk).
bool safe_zone_contains(const BrokenLine& line, const std::vector<Corner>& corners, Point2 q,
                        double tol = 1e-9);

}  // namespace trajkit
