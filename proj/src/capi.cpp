#include "trajkit.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "trajkit/discretizer.hpp"
#include "trajkit/interpolator.hpp"
#include "trajkit/speed_profile.hpp"

struct tk_broken_line {
  trajkit::BrokenLine impl;
};
struct tk_smooth_path {
  trajkit::SmoothPath impl;
};
struct tk_discrete_path {
  trajkit::DiscretizedPath impl;
};
struct tk_constraint_set {
  trajkit::ConstraintSet impl;
};
struct tk_speed_profile {
  trajkit::SpeedProfile impl;
};

namespace {

thread_local std::string g_last_error;
thread_local size_t g_last_error_index = static_cast<size_t>(-1);

tk_status to_c_status(trajkit::Status s) {
  using trajkit::Status;
  switch (s) {
    case Status::Ok: return TK_OK;
    case Status::InvalidArgument: return TK_ERROR_INVALID_ARGUMENT;
    case Status::EmptyPath: return TK_ERROR_EMPTY_PATH;
    case Status::ValidationFailed: return TK_ERROR_VALIDATION;
    case Status::Unsplittable: return TK_ERROR_UNSPLITTABLE;
    case Status::NonConvergence: return TK_ERROR_NONCONVERGENCE;
    case Status::InfeasibleInitialSpeed: return TK_ERROR_INFEASIBLE_INITIAL_SPEED;
    case Status::InfeasibleCap: return TK_ERROR_INFEASIBLE_CAP;
    case Status::StalledStep: return TK_ERROR_STALLED_STEP;
    case Status::EndpointCurvature: return TK_ERROR_ENDPOINT_CURVATURE;
    case Status::CoincidentConfigs: return TK_ERROR_COINCIDENT_CONFIGS;
  }
  return TK_ERROR_INVALID_ARGUMENT;
}

template <typename F>
tk_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    g_last_error_index = static_cast<size_t>(-1);
    return f();
  } catch (const trajkit::Error& e) {
    g_last_error = e.what();
    g_last_error_index = e.index();
    return to_c_status(e.status());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TK_ERROR_INVALID_ARGUMENT;
  } catch (...) {
    g_last_error = "unknown error";
    return TK_ERROR_INVALID_ARGUMENT;
  }
}

tk_status invalid(const char* message) {
  g_last_error = message;
  g_last_error_index = static_cast<size_t>(-1);
  return TK_ERROR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* tk_status_name(tk_status status) {
  switch (status) {
    case TK_OK: return "ok";
    case TK_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case TK_ERROR_EMPTY_PATH: return "empty path";
    case TK_ERROR_VALIDATION: return "validation failed";
    case TK_ERROR_UNSPLITTABLE: return "unsplittable corner";
    case TK_ERROR_NONCONVERGENCE: return "no convergence";
    case TK_ERROR_INFEASIBLE_INITIAL_SPEED: return "infeasible initial speed";
    case TK_ERROR_INFEASIBLE_CAP: return "infeasible velocity cap";
    case TK_ERROR_STALLED_STEP: return "stalled step";
    case TK_ERROR_ENDPOINT_CURVATURE: return "endpoint curvature";
    case TK_ERROR_COINCIDENT_CONFIGS: return "coincident configurations";
  }
  return "unknown";
}

const char* tk_last_error(void) { return g_last_error.c_str(); }

size_t tk_last_error_index(void) { return g_last_error_index; }

/* ---- broken lines ------------------------------------------------------ */

tk_status tk_broken_line_create(const double* xs, const double* ys, size_t n_points,
                                const double* clearances, tk_broken_line** out) {
  if (!xs || !ys || !out) return invalid("null argument");
  return guarded([&]() {
    std::vector<trajkit::Point2> pts(n_points);
    for (size_t i = 0; i < n_points; ++i) pts[i] = {xs[i], ys[i]};
    std::vector<double> cls;
    if (clearances && n_points >= 2)
      cls.assign(clearances, clearances + (n_points - 2));
    *out = new tk_broken_line{trajkit::BrokenLine::from_points(pts, cls)};
    return TK_OK;
  });
}

void tk_broken_line_destroy(tk_broken_line* line) { delete line; }

size_t tk_broken_line_point_count(const tk_broken_line* line) {
  return line ? line->impl.point_count() : 0;
}

tk_status tk_broken_line_get_point(const tk_broken_line* line, size_t i, double* x, double* y,
                                   double* clearance) {
  if (!line) return invalid("null handle");
  if (i >= line->impl.point_count()) return invalid("point index out of range");
  const trajkit::Point2 p = line->impl.point(i);
  if (x) *x = p.x;
  if (y) *y = p.y;
  if (clearance)
    *clearance = (i > 0 && i + 1 < line->impl.point_count()) ? line->impl.clearance(i)
                                                             : trajkit::kUnbounded;
  return TK_OK;
}

tk_status tk_broken_line_validate(const tk_broken_line* line, tk_violation* out,
                                  size_t capacity, size_t* count) {
  if (!line || !count) return invalid("null argument");
  return guarded([&]() {
    const std::vector<trajkit::Violation> violations = trajkit::validate(line->impl);
    *count = violations.size();
    if (out) {
      const size_t n = std::min(capacity, violations.size());
      for (size_t i = 0; i < n; ++i)
        out[i] = {static_cast<int>(violations[i].kind), violations[i].index};
    }
    return TK_OK;
  });
}

tk_status tk_broken_line_split_acute(const tk_broken_line* line, double min_chamfer_length,
                                     tk_broken_line** out) {
  if (!line || !out) return invalid("null argument");
  return guarded([&]() {
    trajkit::SplitOptions opts;
    if (min_chamfer_length > 0.0) opts.min_chamfer_length = min_chamfer_length;
    *out = new tk_broken_line{trajkit::split_acute(line->impl, opts)};
    return TK_OK;
  });
}

/* ---- interpolation ----------------------------------------------------- */

void tk_interpolate_options_init(tk_interpolate_options* opts) {
  if (!opts) return;
  opts->junction_factor = 0.70;
  opts->arc_only = 0;
  opts->auto_split_acute = 0;
  opts->keep_arc_on_failure = 1;
  opts->newton_max_iterations = 50;
}

tk_status tk_interpolate(const tk_broken_line* line, const tk_interpolate_options* opts,
                         tk_smooth_path** out) {
  if (!line || !out) return invalid("null argument");
  return guarded([&]() {
    trajkit::InterpolateOptions o;
    if (opts) {
      o.junction_factor = opts->junction_factor;
      o.arc_only = opts->arc_only != 0;
      o.auto_split_acute = opts->auto_split_acute != 0;
      o.keep_arc_on_failure = opts->keep_arc_on_failure != 0;
      o.fit.max_iterations = opts->newton_max_iterations;
    }
    *out = new tk_smooth_path{trajkit::interpolate(line->impl, o)};
    return TK_OK;
  });
}

tk_status tk_smooth_path_create(const tk_piece* pieces, size_t n_pieces, tk_smooth_path** out) {
  if (!pieces || !out) return invalid("null argument");
  return guarded([&]() {
    trajkit::SmoothPath path;
    path.pieces.reserve(n_pieces);
    for (size_t i = 0; i < n_pieces; ++i) {
      const tk_piece& p = pieces[i];
      const trajkit::Pose start{{p.x, p.y}, trajkit::normalize_angle(p.heading)};
      switch (p.kind) {
        case TK_PIECE_LINE:
          path.pieces.push_back(trajkit::CurvePiece::line(start, p.length));
          break;
        case TK_PIECE_ARC:
          path.pieces.push_back(trajkit::CurvePiece::arc(start, p.length, p.kappa_start));
          break;
        case TK_PIECE_CLOTHOID:
          path.pieces.push_back(
              trajkit::CurvePiece::clothoid(start, p.length, p.kappa_start, p.kappa_rate));
          break;
        default:
          throw trajkit::Error(trajkit::Status::InvalidArgument, "unknown piece kind", i);
      }
    }
    if (path.pieces.empty())
      throw trajkit::Error(trajkit::Status::EmptyPath, "no pieces");
    // The piece table must already chain continuously.
    const trajkit::ContinuityReport report = trajkit::check_continuity(path);
    if (report.max_position_gap > 1e-6 || report.max_heading_gap > 1e-6)
      throw trajkit::Error(trajkit::Status::ValidationFailed,
                           "piece table is not continuous");
    if (report.max_curvature_gap > 1e-6) path.curvature_continuous = false;
    *out = new tk_smooth_path{std::move(path)};
    return TK_OK;
  });
}

void tk_smooth_path_destroy(tk_smooth_path* path) { delete path; }

size_t tk_smooth_path_piece_count(const tk_smooth_path* path) {
  return path ? path->impl.pieces.size() : 0;
}

tk_status tk_smooth_path_get_piece(const tk_smooth_path* path, size_t i, tk_piece* out) {
  if (!path || !out) return invalid("null argument");
  if (i >= path->impl.pieces.size()) return invalid("piece index out of range");
  const trajkit::CurvePiece& p = path->impl.pieces[i];
  out->kind = static_cast<int>(p.kind);
  out->x = p.start.position.x;
  out->y = p.start.position.y;
  out->heading = p.start.heading;
  out->length = p.length;
  out->kappa_start = p.kappa_start;
  out->kappa_rate = p.kappa_rate;
  return TK_OK;
}

double tk_smooth_path_length(const tk_smooth_path* path) {
  return path ? path->impl.length() : 0.0;
}

int tk_smooth_path_curvature_continuous(const tk_smooth_path* path) {
  return path && path->impl.curvature_continuous ? 1 : 0;
}

size_t tk_smooth_path_unsmoothed_count(const tk_smooth_path* path) {
  return path ? path->impl.unsmoothed_corners.size() : 0;
}

tk_status tk_smooth_path_eval(const tk_smooth_path* path, double s, double* x, double* y,
                              double* heading, double* kappa) {
  if (!path) return invalid("null handle");
  return guarded([&]() {
    const trajkit::PiecePoint p = path->impl.eval(s);
    if (x) *x = p.pose.position.x;
    if (y) *y = p.pose.position.y;
    if (heading) *heading = p.pose.heading;
    if (kappa) *kappa = p.kappa;
    return TK_OK;
  });
}

/* ---- discretization ---------------------------------------------------- */

tk_status tk_discretize(const tk_smooth_path* path, double target_step,
                        tk_discrete_path** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&]() {
    *out = new tk_discrete_path{trajkit::discretize(path->impl, target_step)};
    return TK_OK;
  });
}

tk_status tk_ingest(const double* xs, const double* ys, const double* thetas, size_t n_configs,
                    int force, tk_discrete_path** out) {
  if (!xs || !ys || !thetas || !out) return invalid("null argument");
  return guarded([&]() {
    std::vector<trajkit::Pose> configs(n_configs);
    for (size_t i = 0; i < n_configs; ++i)
      configs[i] = {{xs[i], ys[i]}, trajkit::normalize_angle(thetas[i])};
    trajkit::IngestOptions opts;
    opts.force = force != 0;
    *out = new tk_discrete_path{trajkit::ingest(configs, opts)};
    return TK_OK;
  });
}

void tk_discrete_path_destroy(tk_discrete_path* path) { delete path; }

size_t tk_discrete_path_count(const tk_discrete_path* path) {
  return path ? path->impl.configs.size() : 0;
}

tk_status tk_discrete_path_get_config(const tk_discrete_path* path, size_t i, double* x,
                                      double* y, double* theta) {
  if (!path) return invalid("null handle");
  if (i >= path->impl.configs.size()) return invalid("config index out of range");
  const trajkit::Pose& p = path->impl.configs[i];
  if (x) *x = p.position.x;
  if (y) *y = p.position.y;
  if (theta) *theta = p.heading;
  return TK_OK;
}

tk_status tk_discrete_path_get_step(const tk_discrete_path* path, size_t i, double* delta,
                                    double* lambda, double* kappa, double* s) {
  if (!path) return invalid("null handle");
  if (i >= path->impl.steps.size()) return invalid("step index out of range");
  const trajkit::StepGeom& g = path->impl.steps[i];
  if (delta) *delta = g.delta;
  if (lambda) *lambda = g.lambda;
  if (kappa) *kappa = g.kappa;
  if (s) *s = g.s;
  return TK_OK;
}

/* ---- constraints ------------------------------------------------------- */

tk_status tk_constraint_set_create(double track_width, tk_constraint_set** out) {
  if (!out) return invalid("null argument");
  if (!(track_width > 0.0)) return invalid("track width must be positive");
  auto* cs = new tk_constraint_set;
  cs->impl.geometry.track_width = track_width;
  *out = cs;
  return TK_OK;
}

void tk_constraint_set_destroy(tk_constraint_set* cs) { delete cs; }

namespace {

tk_status set_pointwise(tk_constraint_set* cs, trajkit::PointwiseKind kind, double value) {
  if (!cs) return invalid("null handle");
  if (!(value > 0.0)) return invalid("constraint bound must be positive");
  for (auto& c : cs->impl.group1)
    if (c.kind == kind) {
      c.value = value;
      return TK_OK;
    }
  cs->impl.group1.push_back({kind, value});
  return TK_OK;
}

tk_status set_pairwise(tk_constraint_set* cs, trajkit::PairwiseConstraint constraint) {
  if (!cs) return invalid("null handle");
  for (auto& c : cs->impl.group2)
    if (c.kind == constraint.kind && c.kind != trajkit::PairwiseKind::Custom) {
      c = std::move(constraint);
      return TK_OK;
    }
  cs->impl.group2.push_back(std::move(constraint));
  return TK_OK;
}

tk_status add_override(tk_constraint_set* cs, size_t i0, size_t i1,
                       std::variant<trajkit::PointwiseConstraint, trajkit::PairwiseConstraint>
                           constraint) {
  if (!cs) return invalid("null handle");
  if (i1 < i0) return invalid("override range is inverted");
  cs->impl.overrides.push_back({{i0, i1}, std::move(constraint)});
  return TK_OK;
}

}  // namespace

tk_status tk_constraint_set_wheel_speed_max(tk_constraint_set* cs, double v_max) {
  return set_pointwise(cs, trajkit::PointwiseKind::WheelSpeedMax, v_max);
}
tk_status tk_constraint_set_center_speed_max(tk_constraint_set* cs, double v_max) {
  return set_pointwise(cs, trajkit::PointwiseKind::CenterSpeedMax, v_max);
}
tk_status tk_constraint_set_angular_speed_max(tk_constraint_set* cs, double w_max) {
  return set_pointwise(cs, trajkit::PointwiseKind::AngularSpeedMax, w_max);
}
tk_status tk_constraint_set_radial_accel_max(tk_constraint_set* cs, double a_max) {
  return set_pointwise(cs, trajkit::PointwiseKind::RadialAccelMax, a_max);
}
tk_status tk_constraint_set_tangential_accel_bounds(tk_constraint_set* cs, double a_min,
                                                    double a_max) {
  if (!cs) return invalid("null handle");
  return guarded([&]() {
    set_pairwise(cs, trajkit::PairwiseConstraint::tangential(a_min, a_max));
    return TK_OK;
  });
}
tk_status tk_constraint_set_wheel_accel_bounds(tk_constraint_set* cs, double a_min,
                                               double a_max) {
  if (!cs) return invalid("null handle");
  return guarded([&]() {
    set_pairwise(cs, trajkit::PairwiseConstraint::wheel(a_min, a_max));
    return TK_OK;
  });
}

tk_status tk_constraint_override_wheel_speed_max(tk_constraint_set* cs, size_t i0, size_t i1,
                                                 double v_max) {
  if (!(v_max > 0.0)) return invalid("constraint bound must be positive");
  return add_override(cs, i0, i1,
                      trajkit::PointwiseConstraint{trajkit::PointwiseKind::WheelSpeedMax, v_max});
}
tk_status tk_constraint_override_center_speed_max(tk_constraint_set* cs, size_t i0, size_t i1,
                                                  double v_max) {
  if (!(v_max > 0.0)) return invalid("constraint bound must be positive");
  return add_override(cs, i0, i1,
                      trajkit::PointwiseConstraint{trajkit::PointwiseKind::CenterSpeedMax, v_max});
}
tk_status tk_constraint_override_angular_speed_max(tk_constraint_set* cs, size_t i0, size_t i1,
                                                   double w_max) {
  if (!(w_max > 0.0)) return invalid("constraint bound must be positive");
  return add_override(
      cs, i0, i1, trajkit::PointwiseConstraint{trajkit::PointwiseKind::AngularSpeedMax, w_max});
}
tk_status tk_constraint_override_radial_accel_max(tk_constraint_set* cs, size_t i0, size_t i1,
                                                  double a_max) {
  if (!(a_max > 0.0)) return invalid("constraint bound must be positive");
  return add_override(
      cs, i0, i1, trajkit::PointwiseConstraint{trajkit::PointwiseKind::RadialAccelMax, a_max});
}
tk_status tk_constraint_override_tangential_accel_bounds(tk_constraint_set* cs, size_t i0,
                                                         size_t i1, double a_min,
                                                         double a_max) {
  if (!cs) return invalid("null handle");
  return guarded([&]() {
    add_override(cs, i0, i1, trajkit::PairwiseConstraint::tangential(a_min, a_max));
    return TK_OK;
  });
}
tk_status tk_constraint_override_wheel_accel_bounds(tk_constraint_set* cs, size_t i0, size_t i1,
                                                    double a_min, double a_max) {
  if (!cs) return invalid("null handle");
  return guarded([&]() {
    add_override(cs, i0, i1, trajkit::PairwiseConstraint::wheel(a_min, a_max));
    return TK_OK;
  });
}

tk_status tk_constraint_set_add_custom_pairwise(tk_constraint_set* cs, tk_pairwise_fn fn,
                                                void* user) {
  if (!cs || !fn) return invalid("null argument");
  cs->impl.group2.push_back(trajkit::PairwiseConstraint::custom(
      [fn, user](size_t step, double z_a, double z_b) { return fn(user, step, z_a, z_b) != 0; }));
  return TK_OK;
}

/* ---- speed profiles ----------------------------------------------------- */

tk_status tk_profile_solve(const tk_discrete_path* path, const tk_constraint_set* cs, double z0,
                           double z_final_max, tk_speed_profile** out) {
  if (!path || !cs || !out) return invalid("null argument");
  return guarded([&]() {
    *out = new tk_speed_profile{trajkit::solve(path->impl, cs->impl, z0, z_final_max)};
    return TK_OK;
  });
}

void tk_speed_profile_destroy(tk_speed_profile* profile) { delete profile; }

size_t tk_speed_profile_count(const tk_speed_profile* profile) {
  return profile ? profile->impl.z.size() : 0;
}

tk_status tk_speed_profile_get(const tk_speed_profile* profile, size_t i, double* z, double* t,
                               double* cap) {
  if (!profile) return invalid("null handle");
  if (i >= profile->impl.z.size()) return invalid("profile index out of range");
  if (z) *z = profile->impl.z[i];
  if (t) *t = profile->impl.t[i];
  if (cap) *cap = profile->impl.caps[i];
  return TK_OK;
}

tk_status tk_speed_profile_wheel_speeds(const tk_speed_profile* profile, size_t i,
                                        double* v_left, double* v_right) {
  if (!profile) return invalid("null handle");
  if (i >= profile->impl.z.size()) return invalid("profile index out of range");
  const trajkit::WheelSpeeds w = profile->impl.wheel_speeds_at(i);
  if (v_left) *v_left = w.left;
  if (v_right) *v_right = w.right;
  return TK_OK;
}

tk_status tk_speed_profile_tangential_accel(const tk_speed_profile* profile, size_t i,
                                            double* a) {
  if (!profile || !a) return invalid("null argument");
  if (i >= profile->impl.step_arc_length.size()) return invalid("step index out of range");
  *a = profile->impl.tangential_accel(i);
  return TK_OK;
}

double tk_speed_profile_total_time(const tk_speed_profile* profile) {
  return profile ? profile->impl.total_time() : 0.0;
}

/* ---- kinematic helpers -------------------------------------------------- */

double tk_omega(double kappa, double track_width) { return trajkit::omega(kappa, track_width); }

void tk_wheel_speeds(double z, double kappa, double track_width, double* v_left,
                     double* v_right) {
  const trajkit::WheelSpeeds w = trajkit::wheel_speeds(z, kappa, track_width);
  if (v_left) *v_left = w.left;
  if (v_right) *v_right = w.right;
}

} /* extern "C" */
