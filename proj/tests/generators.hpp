#pragma once

// Shared random-instance generators for tests.

#include <cmath>
#include <random>
#include <vector>

#include "trajkit/broken_line.hpp"
#include "trajkit/discretizer.hpp"

namespace generators {

/// Random valid broken line: 3..max_points points, turns within (0, pi/2],
/// mixed finite/unbounded clearances.
inline trajkit::BrokenLine random_broken_line(std::mt19937& rng, int max_points = 30) {
  std::uniform_int_distribution<int> n_points(3, max_points);
  std::uniform_real_distribution<double> seg_len(0.2, 1.5);
  std::uniform_real_distribution<double> turn_mag(0.05, trajkit::kPi / 2.0);
  std::uniform_real_distribution<double> clearance(0.05, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const int n = n_points(rng);
  std::vector<trajkit::Point2> pts;
  std::vector<double> cls;
  double heading = std::uniform_real_distribution<double>(-trajkit::kPi, trajkit::kPi)(rng);
  trajkit::Point2 p{0.0, 0.0};
  pts.push_back(p);
  for (int i = 1; i < n; ++i) {
    p = p + seg_len(rng) * trajkit::unit_vector(heading);
    pts.push_back(p);
    if (i + 1 < n) {
      heading += (coin(rng) < 0.5 ? 1.0 : -1.0) * turn_mag(rng);
      cls.push_back(coin(rng) < 0.5 ? trajkit::kUnbounded : clearance(rng));
    }
  }
  return trajkit::BrokenLine::from_points(pts, cls);
}

/// Random discretized path with straight first/last steps and bounded step
/// curvature, built directly from per-step turn/chord draws.
inline trajkit::DiscretizedPath random_discrete_path(std::mt19937& rng, int max_steps = 50,
                                                     double max_turn = 0.25) {
  std::uniform_int_distribution<int> n_steps(4, max_steps);
  std::uniform_real_distribution<double> chord(0.02, 0.05);
  std::uniform_real_distribution<double> turn(-max_turn, max_turn);

  const int m = n_steps(rng);
  std::vector<trajkit::Pose> configs;
  trajkit::Pose pose{{0.0, 0.0},
                     std::uniform_real_distribution<double>(-trajkit::kPi, trajkit::kPi)(rng)};
  configs.push_back(pose);
  for (int i = 0; i < m; ++i) {
    const double delta = (i == 0 || i + 1 == m) ? 0.0 : turn(rng);
    const double lambda = chord(rng);
    // Chord direction bisects the headings of a circle-arc step.
    const double dir = pose.heading + 0.5 * delta;
    pose.position = pose.position + lambda * trajkit::unit_vector(dir);
    pose.heading = trajkit::normalize_angle(pose.heading + delta);
    configs.push_back(pose);
  }
  return trajkit::ingest(configs);
}

}  // namespace generators
