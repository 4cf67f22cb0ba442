#include "trajkit/speed_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace trajkit {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kZTol = 1e-9;        // binary-search tolerance on z
constexpr double kHoldSlack = 1e-9;   // acceleration feasibility slack
constexpr double kSqrt2 = 1.41421356237309504880;

double center_factor(double om) { return (std::sin(om) + std::cos(om)) / kSqrt2; }

}  // namespace

double omega(double kappa, double track_width) {
  if (!(track_width > 0.0))
    throw Error(Status::InvalidArgument, "track width must be positive");
  const double half = 0.5 * track_width * kappa;
  return std::atan2(1.0 + half, 1.0 - half);
}

WheelSpeeds wheel_speeds(double z, double kappa, double track_width) {
  const double om = omega(kappa, track_width);
  return {z * kSqrt2 * std::sin(om), z * kSqrt2 * std::cos(om)};
}

double center_speed(double z, double kappa, double track_width) {
  return z * center_factor(omega(kappa, track_width));
}

double pointwise_cap(const PointwiseConstraint& c, const StepGeom& step, double track_width) {
  if (!(c.value > 0.0)) throw Error(Status::InvalidArgument, "constraint bound must be positive");
  const double om = omega(step.kappa, track_width);
  const double s = std::sin(om), co = std::cos(om);
  switch (c.kind) {
    case PointwiseKind::WheelSpeedMax:
      // The faster wheel binds: sin on (pi/4, 3pi/4), cos on (-pi/4, pi/4).
      return c.value / (kSqrt2 * std::max(s, co));
    case PointwiseKind::CenterSpeedMax: {
      const double f = center_factor(om);
      return f > 1e-15 ? c.value / f : kInfinity;
    }
    case PointwiseKind::AngularSpeedMax: {
      const double rate = kSqrt2 * std::abs(s - co) / track_width;
      return rate > 1e-15 ? c.value / rate : kInfinity;
    }
    case PointwiseKind::RadialAccelMax: {
      const double ak = std::abs(step.kappa);
      if (ak < 1e-15) return kInfinity;
      const double f = center_factor(om);
      return f > 1e-15 ? std::sqrt(c.value / ak) / f : kInfinity;
    }
  }
  throw Error(Status::InvalidArgument, "unknown pointwise constraint");
}

PairwiseConstraint PairwiseConstraint::tangential(double a_min, double a_max) {
  if (!(a_min < 0.0) || !(a_max > 0.0))
    throw Error(Status::InvalidArgument, "acceleration bounds need a_min < 0 < a_max");
  return {PairwiseKind::TangentialAccelBounds, a_min, a_max, {}};
}

PairwiseConstraint PairwiseConstraint::wheel(double a_min, double a_max) {
  if (!(a_min < 0.0) || !(a_max > 0.0))
    throw Error(Status::InvalidArgument, "acceleration bounds need a_min < 0 < a_max");
  return {PairwiseKind::WheelAccelBounds, a_min, a_max, {}};
}

PairwiseConstraint PairwiseConstraint::custom(PairwisePredicate predicate) {
  if (!predicate) throw Error(Status::InvalidArgument, "custom constraint needs a predicate");
  return {PairwiseKind::Custom, 0.0, 0.0, std::move(predicate)};
}

StepContext make_step_context(const DiscretizedPath& path, std::size_t step,
                              double track_width) {
  StepContext ctx;
  ctx.geom = path.steps[step];
  ctx.omega_a = omega(path.kappa_at(step), track_width);
  ctx.omega_b = omega(path.kappa_at(step + 1), track_width);
  ctx.track_width = track_width;
  ctx.index = step;
  return ctx;
}

namespace {

// One quadratic acceleration channel: (B z_b^2 - A z_a^2) / (2 S) in [lo, hi].
// Tangential has one channel, wheel-acceleration one per wheel (over the
// first-order wheel arc length s (1 +- e kappa / 2)).
struct QuadChannel {
  double A = 0.0, B = 0.0, S = 0.0, lo = 0.0, hi = 0.0;
};

int channels_for(const PairwiseConstraint& c, const StepContext& ctx, QuadChannel out[2]) {
  switch (c.kind) {
    case PairwiseKind::TangentialAccelBounds: {
      const double wa = center_factor(ctx.omega_a), wb = center_factor(ctx.omega_b);
      out[0] = {wa * wa, wb * wb, ctx.geom.s, c.a_min, c.a_max};
      return 1;
    }
    case PairwiseKind::WheelAccelBounds: {
      int n = 0;
      const double half = 0.5 * ctx.track_width * ctx.geom.kappa;
      const double s_right = ctx.geom.s * std::abs(1.0 + half);
      const double s_left = ctx.geom.s * std::abs(1.0 - half);
      const double sa = std::sin(ctx.omega_a), sb = std::sin(ctx.omega_b);
      const double ca = std::cos(ctx.omega_a), cb = std::cos(ctx.omega_b);
      // A (near-)stationary wheel travels no arc; its channel is skipped.
      if (s_right > 1e-12) out[n++] = {2.0 * sa * sa, 2.0 * sb * sb, s_right, c.a_min, c.a_max};
      if (s_left > 1e-12) out[n++] = {2.0 * ca * ca, 2.0 * cb * cb, s_left, c.a_min, c.a_max};
      return n;
    }
    case PairwiseKind::Custom:
      return 0;
  }
  return 0;
}

struct ZInterval {
  double lo = 0.0;
  double hi = kInfinity;
};

std::optional<ZInterval> channel_second_interval(const QuadChannel& ch, double z_a) {
  const double base = ch.A * z_a * z_a;
  const double num_lo = base + 2.0 * ch.S * ch.lo;
  const double num_hi = base + 2.0 * ch.S * ch.hi;
  if (ch.B < 1e-15) {
    const double accel = -base / (2.0 * ch.S);
    if (accel < ch.lo - kHoldSlack || accel > ch.hi + kHoldSlack) return std::nullopt;
    return ZInterval{};
  }
  if (num_hi < 0.0) return std::nullopt;
  ZInterval iv;
  iv.lo = num_lo > 0.0 ? std::sqrt(num_lo / ch.B) : 0.0;
  iv.hi = std::sqrt(num_hi / ch.B);
  return iv;
}

std::optional<ZInterval> channel_first_interval(const QuadChannel& ch, double z_b) {
  const double base = ch.B * z_b * z_b;
  const double num_lo = base - 2.0 * ch.S * ch.hi;
  const double num_hi = base - 2.0 * ch.S * ch.lo;
  if (ch.A < 1e-15) {
    const double accel = base / (2.0 * ch.S);
    if (accel < ch.lo - kHoldSlack || accel > ch.hi + kHoldSlack) return std::nullopt;
    return ZInterval{};
  }
  ZInterval iv;
  iv.lo = num_lo > 0.0 ? std::sqrt(num_lo / ch.A) : 0.0;
  iv.hi = num_hi > 0.0 ? std::sqrt(num_hi / ch.A) : 0.0;
  return iv;
}

// Boundary search between a feasible and an infeasible point.
template <typename Pred>
double bisect_boundary(Pred ok, double feasible, double infeasible) {
  while (std::abs(infeasible - feasible) > kZTol) {
    const double mid = 0.5 * (feasible + infeasible);
    (ok(mid) ? feasible : infeasible) = mid;
  }
  return feasible;
}

// Feasible interval of a custom predicate over [0, cap], found numerically.
template <typename Pred>
std::optional<ZInterval> custom_interval(Pred ok, double cap) {
  double anchor = std::numeric_limits<double>::quiet_NaN();
  if (ok(cap)) {
    anchor = cap;
  } else if (ok(0.0)) {
    anchor = 0.0;
  } else {
    constexpr int kGrid = 32;
    for (int k = 1; k < kGrid && std::isnan(anchor); ++k) {
      const double z = cap * k / kGrid;
      if (ok(z)) anchor = z;
    }
  }
  if (std::isnan(anchor)) return std::nullopt;
  ZInterval iv;
  iv.hi = ok(cap) ? cap : bisect_boundary(ok, anchor, cap);
  iv.lo = ok(0.0) ? 0.0 : bisect_boundary(ok, anchor, 0.0);
  return iv;
}

std::optional<ZInterval> second_interval(const PairwiseConstraint& c, const StepContext& ctx,
                                         double z_a, double cap) {
  if (c.kind == PairwiseKind::Custom)
    return custom_interval([&](double zb) { return c.predicate(ctx.index, z_a, zb); }, cap);
  QuadChannel channels[2];
  const int n = channels_for(c, ctx, channels);
  ZInterval acc;
  for (int k = 0; k < n; ++k) {
    const auto iv = channel_second_interval(channels[k], z_a);
    if (!iv) return std::nullopt;
    acc.lo = std::max(acc.lo, iv->lo);
    acc.hi = std::min(acc.hi, iv->hi);
  }
  if (acc.hi < acc.lo - 1e-12) return std::nullopt;
  return acc;
}

std::optional<ZInterval> first_interval(const PairwiseConstraint& c, const StepContext& ctx,
                                        double z_b, double cap) {
  if (c.kind == PairwiseKind::Custom)
    return custom_interval([&](double za) { return c.predicate(ctx.index, za, z_b); }, cap);
  QuadChannel channels[2];
  const int n = channels_for(c, ctx, channels);
  ZInterval acc;
  for (int k = 0; k < n; ++k) {
    const auto iv = channel_first_interval(channels[k], z_b);
    if (!iv) return std::nullopt;
    acc.lo = std::max(acc.lo, iv->lo);
    acc.hi = std::min(acc.hi, iv->hi);
  }
  if (acc.hi < acc.lo - 1e-12) return std::nullopt;
  return acc;
}

}  // namespace

bool pairwise_holds(const PairwiseConstraint& c, const StepContext& ctx, double z_a,
                    double z_b) {
  if (c.kind == PairwiseKind::Custom) return c.predicate(ctx.index, z_a, z_b);
  QuadChannel channels[2];
  const int n = channels_for(c, ctx, channels);
  for (int k = 0; k < n; ++k) {
    const QuadChannel& ch = channels[k];
    const double accel = (ch.B * z_b * z_b - ch.A * z_a * z_a) / (2.0 * ch.S);
    if (accel < ch.lo - kHoldSlack || accel > ch.hi + kHoldSlack) return false;
  }
  return true;
}

bool pairwise_holds(const PairwiseConstraint& c, const StepGeom& step, double z_a, double z_b,
                    double track_width, double kappa_next) {
  StepContext ctx;
  ctx.geom = step;
  ctx.omega_a = omega(step.kappa, track_width);
  ctx.omega_b = omega(kappa_next, track_width);
  ctx.track_width = track_width;
  return pairwise_holds(c, ctx, z_a, z_b);
}

std::optional<double> solve_max_second(const std::vector<PairwiseConstraint>& cs,
                                       const StepContext& ctx, double z_a, double hint_cap) {
  double ub = hint_cap, lb = 0.0;
  for (const PairwiseConstraint& c : cs) {
    const auto iv = second_interval(c, ctx, z_a, hint_cap);
    if (!iv) return std::nullopt;
    ub = std::min(ub, iv->hi);
    lb = std::max(lb, iv->lo);
  }
  if (ub < lb - 1e-12) return std::nullopt;
  return std::max(ub, 0.0);
}

std::optional<double> solve_max_first(const std::vector<PairwiseConstraint>& cs,
                                      const StepContext& ctx, double z_b, double hint_cap) {
  double ub = hint_cap, lb = 0.0;
  for (const PairwiseConstraint& c : cs) {
    const auto iv = first_interval(c, ctx, z_b, hint_cap);
    if (!iv) return std::nullopt;
    ub = std::min(ub, iv->hi);
    lb = std::max(lb, iv->lo);
  }
  if (ub < lb - 1e-12) return std::nullopt;
  return std::max(ub, 0.0);
}

std::vector<PointwiseConstraint> ConstraintSet::pointwise_at(std::size_t index) const {
  std::vector<PointwiseConstraint> out = group1;
  for (const ConstraintOverride& ovr : overrides) {
    if (!ovr.range.contains(index)) continue;
    const PointwiseConstraint* c = std::get_if<PointwiseConstraint>(&ovr.constraint);
    if (!c) continue;
    bool replaced = false;
    for (PointwiseConstraint& existing : out) {
      if (existing.kind == c->kind) {
        existing = *c;
        replaced = true;
      }
    }
    if (!replaced) out.push_back(*c);
  }
  return out;
}

std::vector<PairwiseConstraint> ConstraintSet::pairwise_at(std::size_t step) const {
  std::vector<PairwiseConstraint> out = group2;
  for (const ConstraintOverride& ovr : overrides) {
    // A pairwise override applies to the steps fully inside its index range.
    if (!(ovr.range.lo <= step && step + 1 <= ovr.range.hi)) continue;
    const PairwiseConstraint* c = std::get_if<PairwiseConstraint>(&ovr.constraint);
    if (!c) continue;
    bool replaced = false;
    for (PairwiseConstraint& existing : out) {
      if (existing.kind == c->kind) {
        existing = *c;
        replaced = true;
      }
    }
    if (!replaced) out.push_back(*c);
  }
  return out;
}

namespace {

struct Workspace {
  std::vector<StepContext> ctxs;
  std::vector<std::vector<PairwiseConstraint>> per_step;  // single entry when shared
  bool shared = true;

  const std::vector<PairwiseConstraint>& at(std::size_t step) const {
    return shared ? per_step.front() : per_step[step];
  }
};

Workspace make_workspace(const DiscretizedPath& path, const ConstraintSet& cs) {
  if (path.step_count() == 0) throw Error(Status::EmptyPath, "path has no steps");
  Workspace ws;
  const std::size_t m = path.step_count();
  ws.ctxs.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    ws.ctxs.push_back(make_step_context(path, i, cs.geometry.track_width));
  bool any_pairwise_override = false;
  for (const ConstraintOverride& ovr : cs.overrides)
    if (std::holds_alternative<PairwiseConstraint>(ovr.constraint)) any_pairwise_override = true;
  if (any_pairwise_override) {
    ws.shared = false;
    ws.per_step.reserve(m);
    for (std::size_t i = 0; i < m; ++i) ws.per_step.push_back(cs.pairwise_at(i));
  } else {
    ws.per_step.push_back(cs.group2);
  }
  return ws;
}

// Largest z_a <= cap_a from which some z_b <= cap_b keeps all constraints
// satisfiable; relies on the monotone-solvability contract.
std::optional<double> max_first_reaching(const std::vector<PairwiseConstraint>& cs,
                                         const StepContext& ctx, double cap_a, double cap_b) {
  const auto sat = [&](double za) { return solve_max_second(cs, ctx, za, cap_b).has_value(); };
  if (sat(cap_a)) return cap_a;
  if (!sat(0.0)) return std::nullopt;
  return bisect_boundary(sat, 0.0, cap_a);
}

std::optional<double> max_second_reaching(const std::vector<PairwiseConstraint>& cs,
                                          const StepContext& ctx, double cap_b, double cap_a) {
  const auto sat = [&](double zb) { return solve_max_first(cs, ctx, zb, cap_a).has_value(); };
  if (sat(cap_b)) return cap_b;
  if (!sat(0.0)) return std::nullopt;
  return bisect_boundary(sat, 0.0, cap_b);
}

std::vector<double> raw_caps(const DiscretizedPath& path, const ConstraintSet& cs) {
  const std::size_t m = path.step_count();
  std::vector<double> caps(m + 1, kInfinity);
  for (std::size_t i = 0; i <= m; ++i) {
    const StepGeom& geom = path.steps[std::min(i, m - 1)];
    for (const PointwiseConstraint& c : cs.pointwise_at(i))
      caps[i] = std::min(caps[i], pointwise_cap(c, geom, cs.geometry.track_width));
    if (!(caps[i] < kInfinity))
      throw Error(Status::InvalidArgument,
                  "no group-1 constraint bounds the velocity at index " + std::to_string(i), i);
  }
  return caps;
}

}  // namespace

std::vector<double> stage1_caps(const DiscretizedPath& path, const ConstraintSet& cs) {
  const Workspace ws = make_workspace(path, cs);
  std::vector<double> caps = raw_caps(path, cs);
  const std::size_t m = path.step_count();

  // Backward then forward narrowing sweeps, repeated to a fixpoint (one pair
  // suffices for interval-feasible constraints; the loop guard covers custom
  // hooks).
  const std::size_t max_sweeps = std::max<std::size_t>(2, m);
  bool changed = true;
  for (std::size_t sweep = 0; changed && sweep < max_sweeps; ++sweep) {
    changed = false;
    for (std::size_t i = m; i-- > 0;) {
      const auto v = max_first_reaching(ws.at(i), ws.ctxs[i], caps[i], caps[i + 1]);
      if (!v)
        throw Error(Status::InfeasibleCap,
                    "no feasible velocity cap at index " + std::to_string(i), i);
      if (*v < caps[i] - 1e-12) {
        caps[i] = *v;
        changed = true;
      }
    }
    for (std::size_t i = 1; i <= m; ++i) {
      const auto v = max_second_reaching(ws.at(i - 1), ws.ctxs[i - 1], caps[i], caps[i - 1]);
      if (!v)
        throw Error(Status::InfeasibleCap,
                    "no feasible velocity cap at index " + std::to_string(i), i);
      if (*v < caps[i] - 1e-12) {
        caps[i] = *v;
        changed = true;
      }
    }
  }
  return caps;
}

std::vector<double> stage2_forward(const DiscretizedPath& path, const ConstraintSet& cs,
                                   const std::vector<double>& caps, double z0) {
  const Workspace ws = make_workspace(path, cs);
  const std::size_t m = path.step_count();
  if (z0 < 0.0) throw Error(Status::InvalidArgument, "initial speed must be nonnegative");
  if (z0 > caps[0] + kZTol)
    throw Error(Status::InfeasibleInitialSpeed,
                "initial speed " + std::to_string(z0) + " exceeds the cap at index 0", 0);
  std::vector<double> z(m + 1, 0.0);
  z[0] = std::min(z0, caps[0]);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto v = solve_max_second(ws.at(i - 1), ws.ctxs[i - 1], z[i - 1], caps[i]);
    if (!v) {
      if (i == 1)
        throw Error(Status::InfeasibleInitialSpeed,
                    "initial speed makes step 0 unsatisfiable", 0);
      throw Error(Status::InfeasibleCap,
                  "pairwise constraints unsatisfiable at step " + std::to_string(i - 1), i - 1);
    }
    z[i] = *v;
  }
  return z;
}

std::vector<double> stage3_backward(const DiscretizedPath& path, const ConstraintSet& cs,
                                    const std::vector<double>& caps, std::vector<double> z,
                                    double z_final_max) {
  (void)caps;
  const Workspace ws = make_workspace(path, cs);
  const std::size_t m = path.step_count();
  if (z_final_max < 0.0)
    throw Error(Status::InvalidArgument, "final speed bound must be nonnegative");
  z[m] = std::min(z[m], z_final_max);
  for (std::size_t i = m; i-- > 0;) {
    bool ok = true;
    for (const PairwiseConstraint& c : ws.at(i))
      if (!pairwise_holds(c, ws.ctxs[i], z[i], z[i + 1])) {
        ok = false;
        break;
      }
    if (ok) continue;
    const auto v = solve_max_first(ws.at(i), ws.ctxs[i], z[i + 1], z[i]);
    if (!v)
      throw Error(Status::InfeasibleCap,
                  "backward pass has no feasible velocity at step " + std::to_string(i), i);
    z[i] = std::min(z[i], *v);
  }
  return z;
}

std::vector<double> timestamps(const DiscretizedPath& path, const std::vector<double>& z) {
  const std::size_t m = path.step_count();
  if (z.size() != m + 1)
    throw Error(Status::InvalidArgument, "velocity list does not match the path");
  std::vector<double> t(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double zsum = z[i] + z[i + 1];
    if (!(zsum > 0.0))
      throw Error(Status::StalledStep,
                  "both endpoint velocities vanish on step " + std::to_string(i), i);
    t[i + 1] = t[i] + 2.0 * path.steps[i].s / zsum;
  }
  return t;
}

SpeedProfile solve(const DiscretizedPath& path, const ConstraintSet& cs, double z0,
                   double z_final_max) {
  const std::vector<double> caps = stage1_caps(path, cs);
  std::vector<double> z = stage2_forward(path, cs, caps, z0);
  z = stage3_backward(path, cs, caps, std::move(z), z_final_max);
  if (z[0] < z0 - kZTol)
    throw Error(Status::InfeasibleInitialSpeed,
                "the backward pass lowered the initial velocity at index 0 below " +
                    std::to_string(z0) + "; the path cannot be followed at that speed",
                0);

  SpeedProfile profile;
  profile.t = timestamps(path, z);
  profile.z = std::move(z);
  profile.caps = caps;
  profile.track_width = cs.geometry.track_width;
  const std::size_t m = path.step_count();
  profile.kappa_index.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) profile.kappa_index[i] = path.kappa_at(i);
  profile.step_arc_length.resize(m);
  for (std::size_t i = 0; i < m; ++i) profile.step_arc_length[i] = path.steps[i].s;
  return profile;
}

WheelSpeeds SpeedProfile::wheel_speeds_at(std::size_t index) const {
  return wheel_speeds(z[index], kappa_index[index], track_width);
}

double SpeedProfile::tangential_accel(std::size_t step) const {
  const double wa = center_factor(omega(kappa_index[step], track_width));
  const double wb = center_factor(omega(kappa_index[step + 1], track_width));
  const double va = wa * z[step], vb = wb * z[step + 1];
  return (vb * vb - va * va) / (2.0 * step_arc_length[step]);
}

}  // namespace trajkit
