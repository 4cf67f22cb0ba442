#include "trajkit/smooth_path.hpp"

#include <algorithm>
#include <cmath>

namespace trajkit {

double SmoothPath::length() const {
  double total = 0.0;
  for (const CurvePiece& p : pieces) total += p.length;
  return total;
}

Pose SmoothPath::end_pose() const {
  if (pieces.empty()) throw Error(Status::EmptyPath, "empty smooth path");
  const CurvePiece& last = pieces.back();
  return eval_piece(last, last.length).pose;
}

PiecePoint SmoothPath::eval(double s) const {
  if (pieces.empty()) throw Error(Status::EmptyPath, "empty smooth path");
  const double total = length();
  const double slack = 1e-9 * std::max(total, 1.0);
  if (s < -slack || s > total + slack)
    throw Error(Status::InvalidArgument, "arc length outside path");
  s = std::clamp(s, 0.0, total);
  for (const CurvePiece& p : pieces) {
    if (s <= p.length) return eval_piece(p, s);
    s -= p.length;
  }
  const CurvePiece& last = pieces.back();
  return eval_piece(last, last.length);
}

ContinuityReport check_continuity(const SmoothPath& path) {
  ContinuityReport report;
  if (path.pieces.empty()) return report;
  report.start_curvature = path.pieces.front().kappa_start;
  report.end_curvature = path.pieces.back().kappa_end();
  for (std::size_t i = 0; i + 1 < path.pieces.size(); ++i) {
    const CurvePiece& a = path.pieces[i];
    const CurvePiece& b = path.pieces[i + 1];
    const PiecePoint end = eval_piece(a, a.length);
    report.max_position_gap =
        std::max(report.max_position_gap, distance(end.pose.position, b.start.position));
    report.max_heading_gap = std::max(
        report.max_heading_gap, std::abs(normalize_angle(end.pose.heading - b.start.heading)));
    report.max_curvature_gap =
        std::max(report.max_curvature_gap, std::abs(end.kappa - b.kappa_start));
  }
  return report;
}

}  // namespace trajkit
