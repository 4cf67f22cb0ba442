#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "trajkit/discretizer.hpp"

namespace trajkit {

struct RobotGeometry {
  double track_width = 0.0;  // e, distance between the wheels (m)
};

/// Auxiliary angle encoding the left/right wheel-speed split:
/// tan(omega) = (1 + e k / 2) / (1 - e k / 2), omega in (-pi/4, 3pi/4).
double omega(double kappa, double track_width);

struct WheelSpeeds {
  double right = 0.0;
  double left = 0.0;
};

/// v_R = z sqrt(2) sin(omega), v_L = z sqrt(2) cos(omega); z is the quadratic
/// mean of the two.
WheelSpeeds wheel_speeds(double z, double kappa, double track_width);

/// Speed measured at the midpoint between the wheels.
double center_speed(double z, double kappa, double track_width);

enum class PointwiseKind {
  WheelSpeedMax,    // per-wheel speed in [-v, v]
  CenterSpeedMax,
  AngularSpeedMax,
  RadialAccelMax,
};

struct PointwiseConstraint {
  PointwiseKind kind = PointwiseKind::WheelSpeedMax;
  double value = 0.0;  // positive bound
};

/// Largest z >= 0 satisfying the constraint at the step's curvature; may be
/// +infinity for constraints inactive there.
double pointwise_cap(const PointwiseConstraint& c, const StepGeom& step, double track_width);

enum class PairwiseKind {
  TangentialAccelBounds,  // center tangential acceleration in [a_min, a_max]
  WheelAccelBounds,       // per-wheel acceleration over the wheel arc length
  Custom,
};

/// Custom predicate phi(step_index, z_a, z_b). For each fixed z_a the feasible
/// z_b set must be a closed interval (and symmetrically), and satisfiability
/// against an upper bound must be monotone: if some z_b <= c works for z_a,
/// one also works for any smaller z_a. The built-in kinds obey this contract.
using PairwisePredicate = std::function<bool(std::size_t, double, double)>;

struct PairwiseConstraint {
  PairwiseKind kind = PairwiseKind::TangentialAccelBounds;
  double a_min = 0.0;  // < 0
  double a_max = 0.0;  // > 0
  PairwisePredicate predicate;  // Custom only

  static PairwiseConstraint tangential(double a_min, double a_max);
  static PairwiseConstraint wheel(double a_min, double a_max);
  static PairwiseConstraint custom(PairwisePredicate predicate);
};

/// Geometry context of one step: its StepGeom plus the omega values at the two
/// path indices it links (the end index of the last step reuses that step's
/// curvature).
struct StepContext {
  StepGeom geom;
  double omega_a = 0.0;
  double omega_b = 0.0;
  double track_width = 0.0;
  std::size_t index = 0;
};

StepContext make_step_context(const DiscretizedPath& path, std::size_t step,
                              double track_width);

/// True iff the constraint holds for the step with the given end velocities.
bool pairwise_holds(const PairwiseConstraint& c, const StepContext& ctx, double z_a, double z_b);

/// Convenience overload matching the per-step geometry directly; the omega at
/// the far end is derived from kappa_next (defaults to the step's own).
bool pairwise_holds(const PairwiseConstraint& c, const StepGeom& step, double z_a, double z_b,
                    double track_width, double kappa_next);

/// Largest z_b in [0, hint_cap] such that every constraint holds given z_a;
/// nullopt when no feasible value exists.
std::optional<double> solve_max_second(const std::vector<PairwiseConstraint>& cs,
                                       const StepContext& ctx, double z_a, double hint_cap);

/// Mirror image: largest feasible z_a in [0, hint_cap] given z_b.
std::optional<double> solve_max_first(const std::vector<PairwiseConstraint>& cs,
                                      const StepContext& ctx, double z_b, double hint_cap);

struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  bool contains(std::size_t i) const { return lo <= i && i <= hi; }
};

/// Context-sensitive replacement or addition, applied over an index range.
/// Later overrides win where ranges overlap.
struct ConstraintOverride {
  IndexRange range;
  std::variant<PointwiseConstraint, PairwiseConstraint> constraint;
};

struct ConstraintSet {
  RobotGeometry geometry;
  std::vector<PointwiseConstraint> group1;
  std::vector<PairwiseConstraint> group2;
  std::vector<ConstraintOverride> overrides;

  /// Effective constraints at a path index (group 1) or step (group 2) after
  /// override resolution. A pairwise override applies to the steps fully
  /// inside its range.
  std::vector<PointwiseConstraint> pointwise_at(std::size_t index) const;
  std::vector<PairwiseConstraint> pairwise_at(std::size_t step) const;
};

struct SpeedProfile {
  std::vector<double> z;     // velocity per index (m/s)
  std::vector<double> t;     // timestamp per index (s), t[0] = 0
  std::vector<double> caps;  // z_imax used by the solver

  // Geometry snapshot for derived quantities.
  std::vector<double> kappa_index;
  std::vector<double> step_arc_length;
  double track_width = 0.0;

  WheelSpeeds wheel_speeds_at(std::size_t index) const;
  /// Center tangential acceleration over step i.
  double tangential_accel(std::size_t step) const;
  double total_time() const { return t.back(); }
};

/// Stage 1: per-index caps from group-1 constraints, narrowed (backward then
/// forward sweeps, to a fixpoint) so every pairwise constraint stays
/// satisfiable. Throws InfeasibleCap.
std::vector<double> stage1_caps(const DiscretizedPath& path, const ConstraintSet& cs);

/// Stage 2: forward maximizing pass from the fixed initial velocity.
/// Throws InfeasibleInitialSpeed.
std::vector<double> stage2_forward(const DiscretizedPath& path, const ConstraintSet& cs,
                                   const std::vector<double>& caps, double z0);

/// Stage 3: backward lowering pass; also applies the final-speed bound.
std::vector<double> stage3_backward(const DiscretizedPath& path, const ConstraintSet& cs,
                                    const std::vector<double>& caps, std::vector<double> z,
                                    double z_final_max);

/// t[0] = 0, t[i+1] = t[i] + 2 s_i / (z_i + z_{i+1}). Throws StalledStep.
std::vector<double> timestamps(const DiscretizedPath& path, const std::vector<double>& z);

/// Full three-stage solve. Throws InfeasibleInitialSpeed / InfeasibleCap /
/// StalledStep.
SpeedProfile solve(const DiscretizedPath& path, const ConstraintSet& cs, double z0,
                   double z_final_max);

}  // namespace trajkit
