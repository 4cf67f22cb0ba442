#pragma once

#include <optional>

#include "trajkit/broken_line.hpp"
#include "trajkit/smooth_path.hpp"

namespace trajkit {

/// A pair of clothoid arcs replacing one circle arc: curvature ramps from
/// kappa1 up to kappa_m over s_m, then down to kappa2 over s_f - s_m.
struct ClothoidPairFit {
  double s_f = 0.0;      // total arc length
  double s_m = 0.0;      // junction arc length
  double d1 = 0.0;       // curvature rate of the first arc (> 0)
  double d2 = 0.0;       // curvature drop rate of the second arc (> 0)
  double kappa_m = 0.0;  // peak curvature, > kappa_c
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  int iterations = 0;
  double position_residual = 0.0;  // relative to the tangent length
  double heading_residual = 0.0;
};

struct FitOptions {
  int max_iterations = 50;
  /// Acceptance thresholds: position residual relative to the tangent length,
  /// heading residual absolute. Iteration continues toward tighter internal
  /// targets while it keeps improving.
  double position_tolerance = 1e-9;
  double heading_tolerance = 1e-10;
};

/// Solves the two-clothoid interpolation for one corner; input is normalized
/// to a left turn (kappa_c > 0, 0 < beta <= pi/2, 0 <= kappa1, kappa2 < kappa_c).
/// Returns nullopt when Newton-Raphson fails to converge.
std::optional<ClothoidPairFit> fit_clothoid_pair(double kappa1, double kappa2, double kappa_c,
                                                 double beta, const FitOptions& opts = {});

/// Junction curvature between two adjacent curved regions: 0 when either is
/// straight or the turn directions differ, f * min magnitude otherwise.
double junction_curvature(double kappa_ca, double kappa_cb, double f = 0.70);

struct InterpolateOptions {
  double junction_factor = 0.70;  // f in (0, 1)
  bool arc_only = false;          // stop after the circle-arc step
  bool auto_split_acute = false;  // run split_acute on the input first
  /// Keep the circle arc when a clothoid fit fails (recorded in
  /// SmoothPath::unsmoothed_corners) instead of throwing NonConvergence.
  bool keep_arc_on_failure = true;
  FitOptions fit;
  SplitOptions split;
};

/// Full interpolation: validates, fits circle arcs at corners, and replaces
/// each arc by a clothoid pair (unless arc_only). Throws ValidationFailed /
/// EmptyPath / NonConvergence.
SmoothPath interpolate(const BrokenLine& line, const InterpolateOptions& opts = {});

namespace detail {
/// Initial estimate for the clothoid-pair solve: ratio s_f / s_m.
inline double initial_length_ratio(double kappa1, double kappa2, double kappa_c) {
  return 1.0 + (kappa_c - kappa1) / (kappa_c - kappa2);
}
}  // namespace detail

}  // namespace trajkit
