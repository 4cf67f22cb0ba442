#pragma once

#include <vector>

#include "trajkit/smooth_path.hpp"

namespace trajkit {

/// Circle-arc model of one step between consecutive configurations.
struct StepGeom {
  double delta = 0.0;   // turn, normalized (rad)
  double lambda = 0.0;  // chord length (m)
  double kappa = 0.0;   // arc curvature (1/m)
  double s = 0.0;       // arc length (m)
};

/// Step geometry between two configurations; requires distinct positions and
/// |delta| < pi.
StepGeom step_geometry(const Pose& a, const Pose& b);

/// Discretized path: configurations plus the per-step circle-arc quantities.
struct DiscretizedPath {
  std::vector<Pose> configs;
  std::vector<StepGeom> steps;  // configs.size() - 1

  std::size_t step_count() const { return steps.size(); }
  double total_arc_length() const;

  /// Curvature at a path index: the curvature of the step starting there, and
  /// of the last step at the final index.
  double kappa_at(std::size_t index) const;
};

/// Samples the path along arc length with spacing <= target_step; piece
/// boundaries are always included.
DiscretizedPath discretize(const SmoothPath& path, double target_step);

struct IngestOptions {
  bool force = false;                  // skip the endpoint-curvature check
  double endpoint_tolerance = 1e-6;    // 1/m
};

/// Wraps an externally produced configuration sequence, computing step
/// geometry. Throws CoincidentConfigs / EndpointCurvature.
DiscretizedPath ingest(const std::vector<Pose>& configs, const IngestOptions& opts = {});

}  // namespace trajkit
