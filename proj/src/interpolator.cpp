#include "trajkit/interpolator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace trajkit {

namespace {

constexpr double kGapEpsilon = 1e-9;  // m; shorter inter-piece gaps are dropped

struct PairState {
  double s_f = 0.0;
  double a = 0.0;
  double d = 0.0;
};

struct PairShape {
  double s_m = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double kappa_m = 0.0;
  bool valid = false;
};

PairShape shape_from_state(const PairState& v, double kappa1, double kappa2) {
  PairShape shape;
  if (!(v.d > 0.0) || std::abs(v.a) >= 1.0 || !(v.s_f > 0.0)) return shape;
  shape.d1 = v.d * (1.0 + v.a);
  shape.d2 = v.d * (1.0 - v.a);
  // Curvature continuity at the junction: kappa1 + d1 s_m = kappa2 + d2 (s_f - s_m).
  shape.s_m = (kappa2 - kappa1 + shape.d2 * v.s_f) / (shape.d1 + shape.d2);
  if (!(shape.s_m > 0.0) || !(shape.s_m < v.s_f)) return shape;
  shape.kappa_m = kappa1 + shape.d1 * shape.s_m;
  if (!(shape.kappa_m > std::max(kappa1, kappa2))) return shape;
  shape.valid = true;
  return shape;
}

struct Residual {
  std::array<double, 3> r{};  // heading, x / ell, y / ell
  double norm = std::numeric_limits<double>::infinity();
  bool valid = false;
};

Residual pair_residual(const PairState& v, double kappa1, double kappa2, double beta,
                       double ell, Point2 target) {
  Residual res;
  const PairShape shape = shape_from_state(v, kappa1, kappa2);
  if (!shape.valid) return res;
  CurvePiece first{PieceKind::Clothoid, Pose{}, shape.s_m, kappa1, shape.d1};
  const PiecePoint mid = eval_piece(first, shape.s_m);
  CurvePiece second{PieceKind::Clothoid, mid.pose, v.s_f - shape.s_m, shape.kappa_m, -shape.d2};
  const PiecePoint end = eval_piece(second, v.s_f - shape.s_m);
  res.r[0] = normalize_angle(end.pose.heading - beta);
  res.r[1] = (end.pose.position.x - target.x) / ell;
  res.r[2] = (end.pose.position.y - target.y) / ell;
  res.norm = std::sqrt(res.r[0] * res.r[0] + res.r[1] * res.r[1] + res.r[2] * res.r[2]);
  res.valid = true;
  return res;
}

// Solves J x = -r in place; returns false on a singular matrix.
bool solve3(std::array<std::array<double, 3>, 3> j, std::array<double, 3> r,
            std::array<double, 3>& x) {
  std::array<int, 3> perm{0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(j[perm[row]][col]) > std::abs(j[perm[pivot]][col])) pivot = row;
    std::swap(perm[col], perm[pivot]);
    const double diag = j[perm[col]][col];
    if (std::abs(diag) < 1e-300) return false;
    for (int row = col + 1; row < 3; ++row) {
      const double f = j[perm[row]][col] / diag;
      for (int k = col; k < 3; ++k) j[perm[row]][k] -= f * j[perm[col]][k];
      r[perm[row]] -= f * r[perm[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double acc = -r[perm[col]];
    for (int k = col + 1; k < 3; ++k) acc -= j[perm[col]][k] * x[k];
    x[col] = acc / j[perm[col]][col];
  }
  return true;
}

}  // namespace

std::optional<ClothoidPairFit> fit_clothoid_pair(double kappa1, double kappa2, double kappa_c,
                                                 double beta, const FitOptions& opts) {
  if (!(kappa_c > 0.0) || !(beta > 0.0) || beta > kPi / 2.0 + 1e-12)
    throw Error(Status::InvalidArgument, "fit requires kappa_c > 0 and 0 < beta <= pi/2");
  if (kappa1 < 0.0 || kappa2 < 0.0 || kappa1 >= kappa_c || kappa2 >= kappa_c)
    throw Error(Status::InvalidArgument, "endpoint curvatures must lie in [0, kappa_c)");

  const double ell = std::tan(beta / 2.0) / kappa_c;
  const Point2 target{ell * (1.0 + std::cos(beta)), ell * std::sin(beta)};

  // s_f is confined between the circle-arc length and the smaller of the
  // combined tangent lengths and the largest distance that keeps the
  // curvature above kappa1, kappa2.
  const double s_lo = beta / kappa_c;
  double s_hi = 2.0 * ell;
  const double kappa_min = std::min(kappa1, kappa2);
  if (kappa_min > 0.0) s_hi = std::min(s_hi, beta / kappa_min);

  const auto clip = [&](PairState v) {
    v.s_f = std::clamp(v.s_f, s_lo * (1.0 + 1e-12), s_hi * (1.0 - 1e-12));
    v.a = std::clamp(v.a, -1.0 + 1e-9, 1.0 - 1e-9);
    v.d = std::max(v.d, 1e-12);
    return v;
  };

  PairState v;
  v.s_f = 0.5 * (s_lo + s_hi);
  {
    const double ratio = detail::initial_length_ratio(kappa1, kappa2, kappa_c);
    const double s_m = v.s_f / ratio;
    // Peak curvature making the area under the curvature line equal beta.
    const double kappa_m = (2.0 * beta - kappa1 * s_m - kappa2 * (v.s_f - s_m)) / v.s_f;
    const double d1 = (kappa_m - kappa1) / s_m;
    const double d2 = (kappa_m - kappa2) / (v.s_f - s_m);
    v.a = (d1 - d2) / (d1 + d2);
    v.d = 0.5 * (d1 + d2);
  }
  v = clip(v);

  Residual res = pair_residual(v, kappa1, kappa2, beta, ell, target);
  if (!res.valid) return std::nullopt;

  const double target_pos = 1e-13;
  const double target_heading = 1e-13;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const double pos_res = std::hypot(res.r[1], res.r[2]);
    if (pos_res <= target_pos && std::abs(res.r[0]) <= target_heading) break;

    std::array<std::array<double, 3>, 3> jac{};
    const std::array<double, 3> steps{1e-7 * std::max(v.s_f, ell), 1e-7, 1e-7 * v.d};
    bool jac_ok = true;
    for (int col = 0; col < 3 && jac_ok; ++col) {
      PairState lo = v, hi = v;
      (col == 0 ? hi.s_f : col == 1 ? hi.a : hi.d) += steps[col];
      (col == 0 ? lo.s_f : col == 1 ? lo.a : lo.d) -= steps[col];
      const Residual rh = pair_residual(clip(hi), kappa1, kappa2, beta, ell, target);
      const Residual rl = pair_residual(clip(lo), kappa1, kappa2, beta, ell, target);
      if (!rh.valid || !rl.valid) {
        jac_ok = false;
        break;
      }
      for (int row = 0; row < 3; ++row)
        jac[row][col] = (rh.r[row] - rl.r[row]) / (2.0 * steps[col]);
    }
    if (!jac_ok) break;

    std::array<double, 3> delta{};
    if (!solve3(jac, res.r, delta)) break;

    // Damped update: halve the step until the residual norm decreases.
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving) {
      PairState cand = clip({v.s_f + lambda * delta[0], v.a + lambda * delta[1],
                             v.d + lambda * delta[2]});
      const Residual cand_res = pair_residual(cand, kappa1, kappa2, beta, ell, target);
      if (cand_res.valid && cand_res.norm < res.norm) {
        v = cand;
        res = cand_res;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }

  const double pos_res = std::hypot(res.r[1], res.r[2]);
  if (!(pos_res <= opts.position_tolerance) || !(std::abs(res.r[0]) <= opts.heading_tolerance))
    return std::nullopt;

  const PairShape shape = shape_from_state(v, kappa1, kappa2);
  if (!shape.valid || !(shape.kappa_m > kappa_c)) return std::nullopt;
  ClothoidPairFit fit;
  fit.s_f = v.s_f;
  fit.s_m = shape.s_m;
  fit.d1 = shape.d1;
  fit.d2 = shape.d2;
  fit.kappa_m = shape.kappa_m;
  fit.kappa1 = kappa1;
  fit.kappa2 = kappa2;
  fit.iterations = iter;
  fit.position_residual = pos_res;
  fit.heading_residual = std::abs(res.r[0]);
  return fit;
}

double junction_curvature(double kappa_ca, double kappa_cb, double f) {
  if (kappa_ca == 0.0 || kappa_cb == 0.0) return 0.0;
  if ((kappa_ca > 0.0) != (kappa_cb > 0.0)) return 0.0;
  const double sign = kappa_ca > 0.0 ? 1.0 : -1.0;
  return sign * f * std::min(std::abs(kappa_ca), std::abs(kappa_cb));
}

SmoothPath interpolate(const BrokenLine& input, const InterpolateOptions& opts) {
  if (!(opts.junction_factor > 0.0) || !(opts.junction_factor < 1.0))
    throw Error(Status::InvalidArgument, "junction factor must lie in (0, 1)");

  const BrokenLine line = opts.auto_split_acute ? split_acute(input, opts.split) : input;
  const std::vector<Violation> violations = validate(line);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw Error(Status::ValidationFailed,
                std::string(violation_name(v.kind)) + " at point " + std::to_string(v.index),
                v.index);
  }

  SmoothPath path;
  const std::size_t n = line.point_count() - 1;
  const double theta0 =
      std::atan2(line.point(1).y - line.point(0).y, line.point(1).x - line.point(0).x);
  if (n == 1) {
    path.pieces.push_back(
        CurvePiece::line(Pose{line.point(0), theta0}, line.segment_length(0)));
    return path;
  }

  const std::vector<Corner> corners = tangent_lengths(line);

  // Junction curvatures: nonzero only where two same-direction arcs meet with
  // no straight piece left between them.
  std::vector<double> entry(corners.size(), 0.0), exit(corners.size(), 0.0);
  for (std::size_t k = 0; k + 1 < corners.size(); ++k) {
    const double gap =
        line.segment_length(k + 1) - corners[k].ell - corners[k + 1].ell;
    if (gap <= kGapEpsilon) {
      const double kj = junction_curvature(corners[k].kappa_c, corners[k + 1].kappa_c,
                                           opts.junction_factor);
      exit[k] = kj;
      entry[k + 1] = kj;
    }
  }

  Pose cursor{line.point(0), theta0};
  for (std::size_t k = 0; k < corners.size(); ++k) {
    const Corner& corner = corners[k];
    const std::size_t i = corner.index;
    const Point2 p = line.point(i);
    const Point2 u = (1.0 / line.segment_length(i - 1)) * (p - line.point(i - 1));
    const Point2 v = (1.0 / line.segment_length(i)) * (line.point(i + 1) - p);
    const Point2 t1 = p - corner.ell * u;
    const Point2 t2 = p + corner.ell * v;
    const double theta_in = std::atan2(u.y, u.x);
    const double theta_out = std::atan2(v.y, v.x);

    const double gap = (k == 0 ? line.segment_length(0) - corner.ell
                               : line.segment_length(i - 1) - corners[k - 1].ell - corner.ell);
    if (gap > kGapEpsilon)
      path.pieces.push_back(CurvePiece::line(cursor, gap));

    const Pose arc_start{t1, theta_in};
    bool use_arc = opts.arc_only;
    if (!use_arc) {
      const double sign = corner.beta >= 0.0 ? 1.0 : -1.0;
      const std::optional<ClothoidPairFit> fit =
          fit_clothoid_pair(std::abs(entry[k]), std::abs(exit[k]), std::abs(corner.kappa_c),
                            std::abs(corner.beta), opts.fit);
      if (fit) {
        CurvePiece first = CurvePiece::clothoid(arc_start, fit->s_m, sign * fit->kappa1,
                                                sign * fit->d1);
        const Pose mid = eval_piece(first, first.length).pose;
        CurvePiece second = CurvePiece::clothoid(mid, fit->s_f - fit->s_m, sign * fit->kappa_m,
                                                 -sign * fit->d2);
        path.pieces.push_back(first);
        path.pieces.push_back(second);
      } else if (opts.keep_arc_on_failure) {
        use_arc = true;
        path.unsmoothed_corners.push_back(i);
        path.curvature_continuous = false;
      } else {
        throw Error(Status::NonConvergence,
                    "clothoid fit did not converge at point " + std::to_string(i), i);
      }
    }
    if (use_arc)
      path.pieces.push_back(
          CurvePiece::arc(arc_start, std::abs(corner.beta) / std::abs(corner.kappa_c),
                          corner.kappa_c));
    cursor = Pose{t2, theta_out};
  }

  const double tail = line.segment_length(n - 1) - corners.back().ell;
  if (tail > kGapEpsilon) path.pieces.push_back(CurvePiece::line(cursor, tail));

  if (opts.arc_only && !corners.empty()) path.curvature_continuous = false;
  return path;
}

}  // namespace trajkit
