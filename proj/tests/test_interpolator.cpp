#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "trajkit/interpolator.hpp"

using namespace trajkit;

namespace {

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind, std::size_t index) {
  for (const Violation& v : vs)
    if (v.kind == kind && v.index == index) return true;
  return false;
}

}  // namespace

TEST_CASE("validate examples") {
  const BrokenLine gentle = BrokenLine::from_points({{0, 0}, {1, 0}, {2, 0.5}});
  CHECK(validate(gentle).empty());
  CHECK(gentle.turn_angle(1) == doctest::Approx(0.4636476090008061));

  const BrokenLine acute = BrokenLine::from_points({{0, 0}, {1, 0}, {0.5, -0.2}});
  const auto violations = validate(acute);
  CHECK(violations.size() == 1);
  CHECK(has_violation(violations, ViolationKind::AcuteTurn, 1));

  const BrokenLine segment = BrokenLine::from_points({{0, 0}, {1, 0}});
  CHECK(validate(segment).empty());
}

TEST_CASE("construction merges collinear points and duplicates") {
  const BrokenLine line =
      BrokenLine::from_points({{0, 0}, {1, 0}, {2, 0}, {2, 0}, {3, 1}}, {0.4, 0.3, kUnbounded});
  CHECK(line.point_count() == 3);  // (0,0), (2,0), (3,1)
  CHECK(line.clearance(1) == doctest::Approx(0.3));  // tighter of the merged pair
  CHECK(validate(line).empty());
  CHECK_THROWS_AS(BrokenLine::from_points({{0, 0}}), Error);
  CHECK_THROWS_AS(BrokenLine::from_points({{0, 0}, {1, 0}, {2, 1}}, {-0.5}), Error);
}

TEST_CASE("split_acute is a no-op on valid lines") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    const BrokenLine line = generators::random_broken_line(rng, 12);
    const BrokenLine out = split_acute(line);
    REQUIRE(out.point_count() == line.point_count());
    for (std::size_t k = 0; k < line.point_count(); ++k) {
      CHECK(out.point(k).x == line.point(k).x);
      CHECK(out.point(k).y == line.point(k).y);
    }
  }
}

TEST_CASE("split_acute halves an acute corner") {
  const BrokenLine line = BrokenLine::from_points({{0, 0}, {1, 0}, {0, 0.1}});
  const double beta = line.turn_angle(1);
  REQUIRE(std::abs(beta) > kPi / 2.0);

  const BrokenLine out = split_acute(line);
  CHECK(out.point_count() == 4);
  CHECK(validate(out).empty());
  CHECK(out.turn_angle(1) == doctest::Approx(beta / 2.0).epsilon(1e-9));
  CHECK(out.turn_angle(2) == doctest::Approx(beta / 2.0).epsilon(1e-9));

  // Chamfer endpoints stay within the clearance and half-segment budget.
  const double budget = std::min({std::min(line.segment_length(0), line.segment_length(1)),
                                  0.5 * line.segment_length(0), 0.5 * line.segment_length(1)});
  CHECK(distance(out.point(1), line.point(1)) <= budget + 1e-12);
  CHECK(distance(out.point(2), line.point(1)) <= budget + 1e-12);
  // Endpoints lie on the original segments.
  const auto corners = tangent_lengths(out);
  CHECK(safe_zone_contains(line, tangent_lengths(line), out.point(1)));
  CHECK(safe_zone_contains(line, tangent_lengths(line), out.point(2)));
  (void)corners;
}

TEST_CASE("split_acute handles chains of acute corners") {
  const BrokenLine line =
      BrokenLine::from_points({{0, 0}, {1, 0}, {0.3, 0.4}, {1.2, 0.8}, {0.2, 1.0}});
  REQUIRE_FALSE(validate(line).empty());
  const BrokenLine out = split_acute(line);
  CHECK(validate(out).empty());
}

TEST_CASE("split_acute rejects a full reversal") {
  const BrokenLine line = BrokenLine::from_points({{0, 0}, {1, 0}, {0, 1e-9}});
  CHECK_THROWS_AS(split_acute(line), Error);
}

TEST_CASE("tangent_lengths on a regular octagon chain") {
  const int n = 8;
  const double R = 1.0;
  std::vector<Point2> pts;
  for (int k = 0; k <= n; ++k) {
    const double ang = 2.0 * kPi * k / n;
    pts.push_back({R * std::cos(ang), R * std::sin(ang)});
  }
  const BrokenLine line = BrokenLine::from_points(pts);
  const double L = line.segment_length(0);
  const auto corners = tangent_lengths(line);
  REQUIRE(corners.size() == static_cast<std::size_t>(n - 1));
  for (const Corner& c : corners) {
    CHECK(std::abs(c.beta) == doctest::Approx(2.0 * kPi / n).epsilon(1e-12));
    CHECK(c.ell == doctest::Approx(L / 2.0).epsilon(1e-12));
    CHECK(std::abs(c.kappa_c) == doctest::Approx(1.0 / (R * std::cos(kPi / n))).epsilon(1e-12));
  }
}

TEST_CASE("tangent_lengths boundary rule and clearance clamp") {
  const BrokenLine free_line = BrokenLine::from_points({{0, 0}, {2, 0}, {2, 2}});
  const auto corners = tangent_lengths(free_line);
  REQUIRE(corners.size() == 1);
  CHECK(corners[0].beta == doctest::Approx(kPi / 2.0));
  CHECK(corners[0].tau == doctest::Approx(1.0));
  CHECK(corners[0].ell == doctest::Approx(2.0));
  CHECK(corners[0].kappa_c == doctest::Approx(0.5));
  // The arc of radius ell / tau is tangent to both segments at distance ell.
  const double r = corners[0].ell / corners[0].tau;
  const Point2 center{2.0 - corners[0].ell, corners[0].ell};  // on the inner bisector
  CHECK(std::abs(center.y - r * 1.0) <= 1e-12);

  const BrokenLine clamped = BrokenLine::from_points({{0, 0}, {2, 0}, {2, 2}}, {0.5});
  const auto clamped_corners = tangent_lengths(clamped);
  CHECK(clamped_corners[0].ell == doctest::Approx(0.5));
  CHECK(clamped_corners[0].kappa_c == doctest::Approx(2.0));
}

TEST_CASE("circumscribed polygons give ell = r tau") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> radius(0.3, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = radius(rng);
    // Random tangent lines to a circle of radius r: successive tangent
    // directions produce vertices at the intersections.
    const int n_lines = std::uniform_int_distribution<int>(5, 9)(rng);
    std::vector<double> angles;
    double a = 0.0;
    for (int i = 0; i < n_lines; ++i) {
      a += std::uniform_real_distribution<double>(0.25, kPi / 2.0 - 0.05)(rng);
      angles.push_back(a);
    }
    std::vector<Point2> pts;
    for (int i = 0; i + 1 < n_lines; ++i) {
      // Vertex between tangent lines i and i+1 of the circle centered at 0.
      const double a1 = angles[i], a2 = angles[i + 1];
      const double half = 0.5 * (a2 - a1);
      const double mid = 0.5 * (a1 + a2);
      pts.push_back({r / std::cos(half) * std::cos(mid), r / std::cos(half) * std::sin(mid)});
    }
    if (pts.size() < 4) continue;
    const BrokenLine line = BrokenLine::from_points(pts);
    if (!validate(line).empty()) continue;
    // Corners shared between tangent segments reproduce the circle; a lone
    // corner falls under the boundary full-segment rule instead.
    const auto corners = tangent_lengths(line);
    for (const Corner& c : corners)
      CHECK(c.ell == doctest::Approx(r * c.tau).epsilon(1e-9));
  }
}

TEST_CASE("clipping monotonicity: smaller clearance never lengthens ell") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const BrokenLine line = generators::random_broken_line(rng, 10);
    const auto base = tangent_lengths(line);
    std::vector<double> cls;
    for (std::size_t i = 1; i + 1 < line.point_count(); ++i) {
      double c = line.clearance(i);
      if (!std::isfinite(c)) c = std::min(line.segment_length(i - 1), line.segment_length(i));
      cls.push_back(0.5 * c);
    }
    const BrokenLine tighter = BrokenLine::from_points(line.points(), cls);
    const auto shrunk = tangent_lengths(tighter);
    REQUIRE(shrunk.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k)
      CHECK(shrunk[k].ell <= base[k].ell + 1e-12);
  }
}

TEST_CASE("fit initial estimate follows the curvature ratio") {
  CHECK(detail::initial_length_ratio(0.5, 0.0, 1.0) == doctest::Approx(1.5));
  CHECK(detail::initial_length_ratio(0.0, 0.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("fit_clothoid_pair symmetric case") {
  const double beta = kPi / 2.0;
  const auto fit = fit_clothoid_pair(0.0, 0.0, 1.0, beta);
  REQUIRE(fit.has_value());
  CHECK(fit->iterations <= 50);
  // Symmetry forces equal rates and a junction at midlength.
  CHECK(fit->d1 == doctest::Approx(fit->d2).epsilon(1e-9));
  CHECK(fit->s_m == doctest::Approx(fit->s_f / 2.0).epsilon(1e-9));
  CHECK(fit->s_f > beta / 1.0);
  CHECK(fit->s_f < 2.0 * std::tan(beta / 2.0));
  CHECK(fit->kappa_m > 1.0);

  const double oracle_sf = oracles::symmetric_pair_length(1.0, beta);
  CHECK(fit->s_f == doctest::Approx(oracle_sf).epsilon(1e-8));
}

TEST_CASE("fit_clothoid_pair asymmetric case vs Newton oracle") {
  const auto fit = fit_clothoid_pair(0.5, 0.0, 1.0, kPi / 3.0);
  REQUIRE(fit.has_value());
  const auto oracle = oracles::solve_pair(0.5, 0.0, 1.0, kPi / 3.0);
  REQUIRE(oracle.converged);
  CHECK(fit->s_f == doctest::Approx(oracle.s_f).epsilon(1e-7));
  CHECK(fit->s_m == doctest::Approx(oracle.s_m).epsilon(1e-6));
  CHECK(fit->kappa_m == doctest::Approx(oracle.kappa_m).epsilon(1e-6));
}

TEST_CASE("fit_clothoid_pair junction-policy case") {
  const double kappa_c = 2.0;
  const auto fit = fit_clothoid_pair(0.7 * kappa_c, 0.7 * kappa_c, kappa_c, kPi / 4.0);
  REQUIRE(fit.has_value());
  CHECK(fit->kappa_m > kappa_c);
  CHECK(fit->d1 == doctest::Approx(fit->d2).epsilon(1e-8));
  const auto oracle = oracles::solve_pair(1.4, 1.4, 2.0, kPi / 4.0);
  REQUIRE(oracle.converged);
  CHECK(fit->s_f == doctest::Approx(oracle.s_f).epsilon(1e-7));
}

TEST_CASE("fit_clothoid_pair closure residuals") {
  // The converged pair must land on the second tangency point.
  for (const double beta : {kPi / 12.0, kPi / 4.0, kPi / 2.0}) {
    for (const double kc : {0.5, 1.0, 4.0}) {
      const auto fit = fit_clothoid_pair(0.2 * kc, 0.5 * kc, kc, beta);
      REQUIRE(fit.has_value());
      CHECK(fit->position_residual <= 1e-9);
      CHECK(fit->heading_residual <= 1e-10);
      CHECK(fit->kappa_m > kc);
      // Curvature continuity at the junction.
      CHECK(fit->kappa1 + fit->d1 * fit->s_m ==
            doctest::Approx(fit->kappa_m).epsilon(1e-10));
      CHECK(fit->kappa2 + fit->d2 * (fit->s_f - fit->s_m) ==
            doctest::Approx(fit->kappa_m).epsilon(1e-10));
    }
  }
}

TEST_CASE("junction_curvature policy") {
  CHECK(junction_curvature(0.0, 1.2) == 0.0);
  CHECK(junction_curvature(1.0, -0.5) == 0.0);
  CHECK(junction_curvature(1.0, 0.5) == doctest::Approx(0.35));
  CHECK(junction_curvature(-1.0, -0.5) == doctest::Approx(-0.35));
  CHECK(junction_curvature(0.5, 1.0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("interpolate two points") {
  const BrokenLine line = BrokenLine::from_points({{0, 0}, {3, 4}});
  const SmoothPath path = interpolate(line);
  REQUIRE(path.pieces.size() == 1);
  CHECK(path.pieces[0].kind == PieceKind::Line);
  CHECK(path.pieces[0].length == doctest::Approx(5.0));
  CHECK(path.curvature_continuous);
}

TEST_CASE("interpolate right-angle corner") {
  const BrokenLine line = BrokenLine::from_points({{0, 0}, {2, 0}, {2, 2}}, {0.5});
  const SmoothPath path = interpolate(line);
  REQUIRE(path.pieces.size() == 4);
  CHECK(path.pieces[0].kind == PieceKind::Line);
  CHECK(path.pieces[0].length == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(path.pieces[1].kind == PieceKind::Clothoid);
  CHECK(path.pieces[2].kind == PieceKind::Clothoid);
  CHECK(path.pieces[3].kind == PieceKind::Line);

  double heading_sum = 0.0;
  for (const CurvePiece& p : path.pieces) heading_sum += integrate_heading(p);
  CHECK(heading_sum == doctest::Approx(kPi / 2.0).epsilon(1e-9));

  const ContinuityReport report = check_continuity(path);
  CHECK(report.max_position_gap <= 1e-9);
  CHECK(report.max_heading_gap <= 1e-9);
  CHECK(report.max_curvature_gap <= 1e-9);
  CHECK(report.start_curvature == 0.0);
  CHECK(report.end_curvature == 0.0);
}

TEST_CASE("interpolate octagon in arc-only mode reproduces the inscribed circle") {
  const int n = 8;
  const double R = 1.0;
  std::vector<Point2> pts;
  for (int k = 0; k <= n; ++k)
    pts.push_back({R * std::cos(2.0 * kPi * k / n), R * std::sin(2.0 * kPi * k / n)});
  const BrokenLine line = BrokenLine::from_points(pts);
  InterpolateOptions opts;
  opts.arc_only = true;
  const SmoothPath path = interpolate(line, opts);
  const double r = R * std::cos(kPi / n);
  int arcs = 0;
  for (const CurvePiece& p : path.pieces) {
    if (p.kind != PieceKind::Arc) continue;
    ++arcs;
    CHECK(std::abs(p.kappa_start) == doctest::Approx(1.0 / r).epsilon(1e-9));
  }
  CHECK(arcs == n - 1);
  CHECK_FALSE(path.curvature_continuous);
  // Tangent continuity still holds.
  const ContinuityReport report = check_continuity(path);
  CHECK(report.max_position_gap <= 1e-9);
  CHECK(report.max_heading_gap <= 1e-9);
}

TEST_CASE("interpolate octagon in clothoid mode chains junction curvatures") {
  const int n = 8;
  std::vector<Point2> pts;
  for (int k = 0; k <= n; ++k)
    pts.push_back({std::cos(2.0 * kPi * k / n), std::sin(2.0 * kPi * k / n)});
  const SmoothPath path = interpolate(BrokenLine::from_points(pts));
  CHECK(path.unsmoothed_corners.empty());
  CHECK(path.curvature_continuous);
  const ContinuityReport report = check_continuity(path);
  CHECK(report.max_position_gap <= 1e-9);
  CHECK(report.max_heading_gap <= 1e-9);
  CHECK(report.max_curvature_gap <= 1e-9);
  CHECK(std::abs(report.start_curvature) <= 1e-12);
  CHECK(std::abs(report.end_curvature) <= 1e-12);
}

TEST_CASE("interpolate keeps corners within their safe zones") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const BrokenLine line = generators::random_broken_line(rng, 12);
    const auto corners = tangent_lengths(line);
    const SmoothPath path = interpolate(line);
    REQUIRE(path.unsmoothed_corners.empty());
    const double total = path.length();
    const int samples = 400;
    for (int k = 0; k <= samples; ++k) {
      const Point2 q = path.eval(total * k / samples).pose.position;
      CHECK(safe_zone_contains(line, corners, q, 1e-7));
    }
  }
}

TEST_CASE("interpolate continuity and per-corner turn conservation") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const BrokenLine line = generators::random_broken_line(rng);
    const SmoothPath path = interpolate(line);
    REQUIRE(path.unsmoothed_corners.empty());
    const ContinuityReport report = check_continuity(path);
    CHECK(report.max_position_gap <= 1e-9);
    CHECK(report.max_heading_gap <= 1e-9);
    CHECK(report.max_curvature_gap <= 1e-9);
    CHECK(std::abs(report.start_curvature) <= 1e-12);
    CHECK(std::abs(report.end_curvature) <= 1e-12);

    // Group non-line pieces pairwise: one clothoid pair per corner.
    std::vector<double> corner_turns;
    for (std::size_t i = 0; i < path.pieces.size();) {
      if (path.pieces[i].kind == PieceKind::Line) {
        ++i;
        continue;
      }
      REQUIRE(i + 1 < path.pieces.size() + 1);
      const double turn =
          integrate_heading(path.pieces[i]) + integrate_heading(path.pieces[i + 1]);
      corner_turns.push_back(turn);
      i += 2;
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i + 1 < line.point_count(); ++i, ++k) {
      REQUIRE(k < corner_turns.size());
      CHECK(std::abs(corner_turns[k] - line.turn_angle(i)) <= 1e-9);
    }
  }
}

TEST_CASE("interpolate rejects invalid input") {
  const BrokenLine acute = BrokenLine::from_points({{0, 0}, {1, 0}, {0.5, -0.2}});
  CHECK_THROWS_AS(interpolate(acute), Error);
  InterpolateOptions opts;
  opts.auto_split_acute = true;
  const SmoothPath path = interpolate(acute, opts);
  CHECK(path.pieces.size() >= 3);
  const ContinuityReport report = check_continuity(path);
  CHECK(report.max_position_gap <= 1e-9);
}

TEST_CASE("safe_zone_contains examples") {
  const BrokenLine line = BrokenLine::from_points({{0, 0}, {1, 0}, {1, 1}}, {0.5});
  const auto corners = tangent_lengths(line);
  CHECK(safe_zone_contains(line, corners, {0.5, 0.0}));           // segment midpoint
  CHECK(safe_zone_contains(line, corners, {0.9, 0.02}));          // inside the corner zone
  CHECK_FALSE(safe_zone_contains(line, corners, {0.62, 0.38}));   // inside the clearance disk
  CHECK_FALSE(safe_zone_contains(line, corners, {0.5, 0.5}));     // far outside
  CHECK_FALSE(safe_zone_contains(line, corners, {0.9, -0.02}));   // outer side of the corner
}
