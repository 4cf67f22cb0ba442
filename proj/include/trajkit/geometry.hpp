#pragma once

#include <cmath>

#include "trajkit/errors.hpp"

namespace trajkit {

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 p) { return {k * p.x, k * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Normalizes an angle into (-pi, pi].
double normalize_angle(double a);

struct Pose {
  Point2 position;
  double heading = 0.0;  // radians, (-pi, pi]
};

/// C(u) and S(u), the cosine and sine Fresnel integrals with the
/// sin(pi t^2 / 2) normalization.
struct FresnelPair {
  double c = 0.0;
  double s = 0.0;
};

FresnelPair fresnel(double u);

enum class PieceKind { Line, Arc, Clothoid };

/// One curve piece: curvature varies linearly along arc length,
/// kappa(s) = kappa_start + kappa_rate * s.
struct CurvePiece {
  PieceKind kind = PieceKind::Line;
  Pose start;
  double length = 0.0;       // m, > 0
  double kappa_start = 0.0;  // 1/m
  double kappa_rate = 0.0;   // 1/m^2, zero for Line and Arc

  static CurvePiece line(const Pose& start, double length);
  static CurvePiece arc(const Pose& start, double length, double kappa);
  static CurvePiece clothoid(const Pose& start, double length, double kappa_start,
                             double kappa_rate);

  double kappa_end() const { return kappa_start + kappa_rate * length; }
};

struct PiecePoint {
  Pose pose;
  double kappa = 0.0;
};

/// Pose and curvature at arc length s from the piece start, 0 <= s <= length.
PiecePoint eval_piece(const CurvePiece& piece, double s);

/// Total heading change over the piece (area under the curvature line).
double integrate_heading(const CurvePiece& piece);

}  // namespace trajkit
