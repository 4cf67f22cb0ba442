#include "trajkit/discretizer.hpp"

#include <cmath>
#include <string>

namespace trajkit {

StepGeom step_geometry(const Pose& a, const Pose& b) {
  StepGeom g;
  g.lambda = distance(a.position, b.position);
  if (!(g.lambda > 0.0))
    throw Error(Status::CoincidentConfigs, "coincident consecutive configurations");
  g.delta = normalize_angle(b.heading - a.heading);
  if (std::abs(std::abs(g.delta) - kPi) < 1e-12)
    throw Error(Status::InvalidArgument, "step turn magnitude must be below pi");
  g.kappa = 2.0 / g.lambda * std::sin(0.5 * g.delta);
  g.s = (g.kappa != 0.0) ? g.delta / g.kappa : g.lambda;
  return g;
}

double DiscretizedPath::total_arc_length() const {
  double total = 0.0;
  for (const StepGeom& g : steps) total += g.s;
  return total;
}

double DiscretizedPath::kappa_at(std::size_t index) const {
  if (index < steps.size()) return steps[index].kappa;
  return steps.back().kappa;
}

namespace {

DiscretizedPath from_configs(std::vector<Pose> configs) {
  DiscretizedPath path;
  path.steps.reserve(configs.size() - 1);
  for (std::size_t i = 0; i + 1 < configs.size(); ++i)
    path.steps.push_back(step_geometry(configs[i], configs[i + 1]));
  path.configs = std::move(configs);
  return path;
}

}  // namespace

DiscretizedPath discretize(const SmoothPath& path, double target_step) {
  if (!(target_step > 0.0)) throw Error(Status::InvalidArgument, "step must be positive");
  if (path.pieces.empty()) throw Error(Status::EmptyPath, "empty smooth path");

  const double total = path.length();
  if (target_step > total) {
    // Degenerate request: acceptable only over a fully straight path, where
    // the two endpoints describe the path exactly.
    for (const CurvePiece& p : path.pieces)
      if (p.kind != PieceKind::Line)
        throw Error(Status::InvalidArgument, "step exceeds the length of a curved path");
    return from_configs({path.pieces.front().start, path.end_pose()});
  }

  std::vector<Pose> configs;
  configs.reserve(static_cast<std::size_t>(total / target_step) + path.pieces.size() + 2);
  configs.push_back(path.pieces.front().start);
  for (const CurvePiece& piece : path.pieces) {
    const int subdivisions = std::max(1, static_cast<int>(std::ceil(piece.length / target_step)));
    const double h = piece.length / subdivisions;
    for (int j = 1; j <= subdivisions; ++j)
      configs.push_back(eval_piece(piece, j * h).pose);
  }
  return from_configs(std::move(configs));
}

DiscretizedPath ingest(const std::vector<Pose>& configs, const IngestOptions& opts) {
  if (configs.size() < 2)
    throw Error(Status::EmptyPath, "need at least two configurations");
  DiscretizedPath path = from_configs(configs);
  if (!opts.force) {
    const double k0 = std::abs(path.steps.front().kappa);
    const double k1 = std::abs(path.steps.back().kappa);
    if (k0 > opts.endpoint_tolerance || k1 > opts.endpoint_tolerance)
      throw Error(Status::EndpointCurvature,
                  "endpoint step curvature " + std::to_string(std::max(k0, k1)) +
                      " exceeds tolerance; paths must start and end straight");
  }
  return path;
}

}  // namespace trajkit
