/* trajkit: broken-line interpolation with circle arcs and clothoid pairs,
 * discretization, and time-optimal speed profiles for differential-drive
 * robots.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return TK_OK on success; on failure tk_last_error() carries a
 * human-readable message and tk_last_error_index() the path or corner index
 * involved, when there is one.
 */
#ifndef TRAJKIT_H
#define TRAJKIT_H

#include <stddef.h>

#if defined(_WIN32)
#define TK_API __declspec(dllexport)
#else
#define TK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tk_status {
  TK_OK = 0,
  TK_ERROR_INVALID_ARGUMENT = 1,
  TK_ERROR_EMPTY_PATH = 2,
  TK_ERROR_VALIDATION = 3,
  TK_ERROR_UNSPLITTABLE = 4,
  TK_ERROR_NONCONVERGENCE = 5,
  TK_ERROR_INFEASIBLE_INITIAL_SPEED = 6,
  TK_ERROR_INFEASIBLE_CAP = 7,
  TK_ERROR_STALLED_STEP = 8,
  TK_ERROR_ENDPOINT_CURVATURE = 9,
  TK_ERROR_COINCIDENT_CONFIGS = 10,
} tk_status;

TK_API const char* tk_status_name(tk_status status);
TK_API const char* tk_last_error(void);
TK_API size_t tk_last_error_index(void); /* (size_t)-1 when not applicable */

typedef struct tk_broken_line tk_broken_line;
typedef struct tk_smooth_path tk_smooth_path;
typedef struct tk_discrete_path tk_discrete_path;
typedef struct tk_constraint_set tk_constraint_set;
typedef struct tk_speed_profile tk_speed_profile;

/* ---- broken lines ------------------------------------------------------ */

/* clearances: one entry per interior point (n_points - 2), or NULL meaning
 * all unbounded; INFINITY marks an individual unbounded clearance. */
TK_API tk_status tk_broken_line_create(const double* xs, const double* ys, size_t n_points,
                                       const double* clearances, tk_broken_line** out);
TK_API void tk_broken_line_destroy(tk_broken_line* line);
TK_API size_t tk_broken_line_point_count(const tk_broken_line* line);
TK_API tk_status tk_broken_line_get_point(const tk_broken_line* line, size_t i, double* x,
                                          double* y, double* clearance);

typedef enum tk_violation_kind {
  TK_VIOLATION_ACUTE_TURN = 0,
  TK_VIOLATION_ZERO_TURN = 1,
  TK_VIOLATION_DUPLICATE_POINT = 2,
  TK_VIOLATION_NON_POSITIVE_CLEARANCE = 3,
} tk_violation_kind;

typedef struct tk_violation {
  int kind;     /* tk_violation_kind */
  size_t index; /* offending point index */
} tk_violation;

/* Writes up to capacity violations; *count receives the total found. */
TK_API tk_status tk_broken_line_validate(const tk_broken_line* line, tk_violation* out,
                                         size_t capacity, size_t* count);

TK_API tk_status tk_broken_line_split_acute(const tk_broken_line* line,
                                            double min_chamfer_length, tk_broken_line** out);

/* ---- interpolation ----------------------------------------------------- */

typedef struct tk_interpolate_options {
  double junction_factor;    /* (0, 1), default 0.70 */
  int arc_only;              /* curvature-bounded-only mode */
  int auto_split_acute;      /* run the acute-corner split first */
  int keep_arc_on_failure;   /* fall back to the circle arc per corner */
  int newton_max_iterations; /* default 50 */
} tk_interpolate_options;

TK_API void tk_interpolate_options_init(tk_interpolate_options* opts);

TK_API tk_status tk_interpolate(const tk_broken_line* line,
                                const tk_interpolate_options* opts, tk_smooth_path** out);

typedef enum tk_piece_kind {
  TK_PIECE_LINE = 0,
  TK_PIECE_ARC = 1,
  TK_PIECE_CLOTHOID = 2,
} tk_piece_kind;

typedef struct tk_piece {
  int kind; /* tk_piece_kind */
  double x, y, heading;  /* start pose */
  double length;
  double kappa_start;
  double kappa_rate;
} tk_piece;

/* Builds a smooth path from an explicit piece table (e.g. a parsed file). */
TK_API tk_status tk_smooth_path_create(const tk_piece* pieces, size_t n_pieces,
                                       tk_smooth_path** out);
TK_API void tk_smooth_path_destroy(tk_smooth_path* path);
TK_API size_t tk_smooth_path_piece_count(const tk_smooth_path* path);
TK_API tk_status tk_smooth_path_get_piece(const tk_smooth_path* path, size_t i, tk_piece* out);
TK_API double tk_smooth_path_length(const tk_smooth_path* path);
TK_API int tk_smooth_path_curvature_continuous(const tk_smooth_path* path);
/* Corners kept as circle arcs after a failed clothoid fit. */
TK_API size_t tk_smooth_path_unsmoothed_count(const tk_smooth_path* path);
TK_API tk_status tk_smooth_path_eval(const tk_smooth_path* path, double s, double* x, double* y,
                                     double* heading, double* kappa);

/* ---- discretization ---------------------------------------------------- */

TK_API tk_status tk_discretize(const tk_smooth_path* path, double target_step,
                               tk_discrete_path** out);
/* force != 0 skips the endpoint-curvature check. */
TK_API tk_status tk_ingest(const double* xs, const double* ys, const double* thetas,
                           size_t n_configs, int force, tk_discrete_path** out);
TK_API void tk_discrete_path_destroy(tk_discrete_path* path);
TK_API size_t tk_discrete_path_count(const tk_discrete_path* path);
TK_API tk_status tk_discrete_path_get_config(const tk_discrete_path* path, size_t i, double* x,
                                             double* y, double* theta);
/* Step i links configurations i and i+1. */
TK_API tk_status tk_discrete_path_get_step(const tk_discrete_path* path, size_t i,
                                           double* delta, double* lambda, double* kappa,
                                           double* s);

/* ---- constraints ------------------------------------------------------- */

TK_API tk_status tk_constraint_set_create(double track_width, tk_constraint_set** out);
TK_API void tk_constraint_set_destroy(tk_constraint_set* cs);

/* Base (whole-path) constraints; setting a kind again replaces it. */
TK_API tk_status tk_constraint_set_wheel_speed_max(tk_constraint_set* cs, double v_max);
TK_API tk_status tk_constraint_set_center_speed_max(tk_constraint_set* cs, double v_max);
TK_API tk_status tk_constraint_set_angular_speed_max(tk_constraint_set* cs, double w_max);
TK_API tk_status tk_constraint_set_radial_accel_max(tk_constraint_set* cs, double a_max);
TK_API tk_status tk_constraint_set_tangential_accel_bounds(tk_constraint_set* cs, double a_min,
                                                           double a_max);
TK_API tk_status tk_constraint_set_wheel_accel_bounds(tk_constraint_set* cs, double a_min,
                                                      double a_max);

/* Context overrides over the inclusive index range [i0, i1]; later overrides
 * win where ranges overlap. */
TK_API tk_status tk_constraint_override_wheel_speed_max(tk_constraint_set* cs, size_t i0,
                                                        size_t i1, double v_max);
TK_API tk_status tk_constraint_override_center_speed_max(tk_constraint_set* cs, size_t i0,
                                                         size_t i1, double v_max);
TK_API tk_status tk_constraint_override_angular_speed_max(tk_constraint_set* cs, size_t i0,
                                                          size_t i1, double w_max);
TK_API tk_status tk_constraint_override_radial_accel_max(tk_constraint_set* cs, size_t i0,
                                                         size_t i1, double a_max);
TK_API tk_status tk_constraint_override_tangential_accel_bounds(tk_constraint_set* cs,
                                                                size_t i0, size_t i1,
                                                                double a_min, double a_max);
TK_API tk_status tk_constraint_override_wheel_accel_bounds(tk_constraint_set* cs, size_t i0,
                                                           size_t i1, double a_min,
                                                           double a_max);

/* Custom pairwise predicate phi(step_index, z_a, z_b) -> nonzero when the
 * step is admissible. For each fixed z_a the feasible z_b set must be a
 * closed interval, and symmetrically (see the library documentation). */
typedef int (*tk_pairwise_fn)(void* user, size_t step_index, double z_a, double z_b);
TK_API tk_status tk_constraint_set_add_custom_pairwise(tk_constraint_set* cs, tk_pairwise_fn fn,
                                                       void* user);

/* ---- speed profiles ----------------------------------------------------- */

/* z_final_max may be INFINITY for an unconstrained final speed. */
TK_API tk_status tk_profile_solve(const tk_discrete_path* path, const tk_constraint_set* cs,
                                  double z0, double z_final_max, tk_speed_profile** out);
TK_API void tk_speed_profile_destroy(tk_speed_profile* profile);
TK_API size_t tk_speed_profile_count(const tk_speed_profile* profile);
TK_API tk_status tk_speed_profile_get(const tk_speed_profile* profile, size_t i, double* z,
                                      double* t, double* cap);
TK_API tk_status tk_speed_profile_wheel_speeds(const tk_speed_profile* profile, size_t i,
                                               double* v_left, double* v_right);
/* Center tangential acceleration over step i. */
TK_API tk_status tk_speed_profile_tangential_accel(const tk_speed_profile* profile, size_t i,
                                                   double* a);
TK_API double tk_speed_profile_total_time(const tk_speed_profile* profile);

/* ---- kinematic helpers -------------------------------------------------- */

TK_API double tk_omega(double kappa, double track_width);
TK_API void tk_wheel_speeds(double z, double kappa, double track_width, double* v_left,
                            double* v_right);

#ifdef __cplusplus
}
#endif

#endif /* TRAJKIT_H */
