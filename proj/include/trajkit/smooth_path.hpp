#pragma once

#include <vector>

#include "trajkit/geometry.hpp"

namespace trajkit {

/// Ordered sequence of curve pieces forming one continuous path.
struct SmoothPath {
  std::vector<CurvePiece> pieces;

  /// False in arc-only mode and when a corner fell back to its circle arc;
  /// the curvature-continuity invariant applies only when true.
  bool curvature_continuous = true;

  /// Corners (interior point indices) kept as plain arcs after a clothoid fit
  /// failed to converge.
  std::vector<std::size_t> unsmoothed_corners;

  double length() const;
  Pose end_pose() const;

  /// Pose and curvature at global arc length s in [0, length()].
  PiecePoint eval(double s) const;
};

struct ContinuityReport {
  double max_position_gap = 0.0;
  double max_heading_gap = 0.0;
  double max_curvature_gap = 0.0;
  double start_curvature = 0.0;
  double end_curvature = 0.0;
};

/// Junction gaps between consecutive pieces plus the extremity curvatures.
ContinuityReport check_continuity(const SmoothPath& path);

}  // namespace trajkit
