#pragma once

// Test-only reference computations, kept independent of the library's
// evaluation paths: adaptive quadrature for Fresnel integrals, RK4 integration
// of the Frenet ODE for curve positions, and a one-dimensional bisection
// solver for the symmetric clothoid pair.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "trajkit/geometry.hpp"

namespace oracles {

/// Adaptive Simpson integration to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-13);

/// Fresnel integrals evaluated by adaptive quadrature on the defining
/// integrands.
trajkit::FresnelPair fresnel_quadrature(double u, double tol = 1e-13);

/// Pose after arc length s along a curve with kappa(t) = kappa0 + rate * t,
/// integrated with classical RK4 from the start pose.
trajkit::Pose rk4_frenet(const trajkit::Pose& start, double kappa0, double rate, double s,
                         int steps = 4096);

/// Endpoint of a symmetric clothoid pair (kappa 0 -> peak -> 0, equal rates)
/// of total length s_f turning through beta, starting from pose (0,0,0).
trajkit::Pose symmetric_pair_end(double s_f, double beta, int steps = 4096);

/// Total length of the symmetric clothoid pair interpolating a corner with
/// arc curvature kappa_c > 0 and turn beta, solved by bisection on the
/// closure residual along the chord.
double symmetric_pair_length(double kappa_c, double beta);

struct PairOracle {
  double s_f = 0.0;
  double s_m = 0.0;
  double kappa_m = 0.0;
  bool converged = false;
};

/// Independent damped-Newton solve of the general clothoid pair over
/// (s_m, s_f, kappa_m), with residuals evaluated by RK4.
PairOracle solve_pair(double kappa1, double kappa2, double kappa_c, double beta);

}  // namespace oracles
