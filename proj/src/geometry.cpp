#include "trajkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace trajkit {

namespace {

// Chebyshev coefficients for the Fresnel auxiliary functions on 1.6 <= u <= 8,
// fitted in w = 1/u^2 (see scripts/gen_fresnel_coeffs.py):
//   C(u) = 1/2 + f(u) sin(pi u^2 / 2) - g(u) cos(pi u^2 / 2)
//   S(u) = 1/2 - f(u) cos(pi u^2 / 2) - g(u) sin(pi u^2 / 2)
// with f(u) = F(w)/u and g(u) = G(w)/u^3.
constexpr double kFresnelAuxF[] = {
    0.31383299194493979460, -0.0055204468530727939161, -0.00092911834528632769317,
    0.00013426742777634576458, -6.2096951268080437889e-6, -1.7524568351661909854e-6,
    5.9237365674944253060e-7, -9.7480215634771071991e-8, 4.3733606662959275780e-9,
    3.3181329306443954910e-9, -1.4428189267214652156e-9, 3.5745190447711410696e-10,
    -5.1332740237564797799e-11, -3.3030116179159152252e-12, 5.4010916278791644648e-12,
    -2.2723983363419908033e-12, 6.4698146129700494274e-13, -1.2232065967798083715e-13,
    2.8748066064859093797e-15, 1.0403846544366842045e-14, -5.9806375157577545118e-15,
    2.2551222318876344068e-15, -6.4094772392880002734e-16, 1.2176871828187751431e-16,
    1.3777315873442292380e-18, -1.5237261078411804559e-17, 9.2128526444717144782e-18,
    -3.8722780855737577124e-18, 1.2970601272514207866e-18, -3.3881723999037702116e-19};
constexpr double kFresnelAuxG[] = {
    0.095163632673424167668, -0.0073632335240399994400, -0.00096319104125531613492,
    0.00025785713055521674693, -0.000026219461612975937936, -2.0318039486367898004e-6,
    1.5820561657514527944e-6, -3.9487851569805564320e-7, 5.1126282786916462133e-8,
    4.3410129177576246205e-9, -5.0047231896081035466e-9, 1.7853467094651189824e-9,
    -4.0791154057480692638e-10, 4.4345687603636249442e-11, 1.3390274270578947518e-11,
    -1.0589938690819858672e-11, 4.1649564645384413716e-12, -1.1604702186508808364e-12,
    2.0516518575423655307e-13, 8.3782783904106949204e-15, -2.7107558526388993539e-14,
    1.4780092214380830729e-14, -5.6054809712093799481e-15, 1.6191965109278086959e-15,
    -3.0828298929756336040e-16, -1.0505255805145704639e-17, 4.6154088551197116244e-17,
    -2.8302299616859302504e-17, 1.2275850174690412296e-17, -4.0545127294508950283e-18};

constexpr double kSeriesCutoff = 1.6;
constexpr double kAsymptoticCutoff = 8.0;
constexpr double kChebWLo = 1.0 / 64.0;      // w at u = 8
constexpr double kChebWHi = 1.0 / 2.56;      // w at u = 1.6

double clenshaw(const double* coeffs, std::size_t n, double y) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t i = n; i-- > 1;) {
    const double b0 = 2.0 * y * b1 - b2 + coeffs[i];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + coeffs[0];
}

// Maclaurin series of C and S, summed to convergence. Terms decay fast for
// |u| < 1.6 and the partial sums are free of cancellation there.
FresnelPair fresnel_series(double u) {
  const double h = 0.5 * kPi * u * u;
  double even = u;  // (+-) h^{2k} u / (2k)!
  double cs = 0.0, ss = 0.0;
  for (int k = 0; k < 64; ++k) {
    cs += even / (4 * k + 1);
    const double odd = even * h / (2 * k + 1);
    ss += odd / (4 * k + 3);
    even = -odd * h / (2 * k + 2);
    if (std::abs(even) < 1e-18 && std::abs(odd) < 1e-18) break;
  }
  return {cs, ss};
}

FresnelPair fresnel_from_aux(double u, double f, double g) {
  const double arg = 0.5 * kPi * u * u;
  const double s = std::sin(arg), c = std::cos(arg);
  return {0.5 + f * s - g * c, 0.5 - f * c - g * s};
}

FresnelPair fresnel_chebyshev(double u) {
  const double w = 1.0 / (u * u);
  const double y = (2.0 * w - (kChebWLo + kChebWHi)) / (kChebWHi - kChebWLo);
  const double f = clenshaw(kFresnelAuxF, std::size(kFresnelAuxF), y) / u;
  const double g = clenshaw(kFresnelAuxG, std::size(kFresnelAuxG), y) / (u * u * u);
  return fresnel_from_aux(u, f, g);
}

FresnelPair fresnel_asymptotic(double u) {
  // f ~ (pi u)^-1 sum (-1)^m (4m-1)!! q^2m, g ~ (pi u)^-1 q sum (-1)^m (4m+1)!! q^2m
  // with q = 1/(pi u^2); five terms suffice to full precision for u > 8.
  const double q = 1.0 / (kPi * u * u);
  const double q2 = q * q;
  double f = 0.0, g = 0.0;
  double nf = 1.0, ng = 1.0, p = 1.0;
  for (int m = 0; m <= 4; ++m) {
    f += nf * p;
    g += ng * p;
    nf *= -static_cast<double>((4 * m + 1) * (4 * m + 3));
    ng *= -static_cast<double>((4 * m + 3) * (4 * m + 5));
    p *= q2;
  }
  f /= kPi * u;
  g *= q / (kPi * u);
  return fresnel_from_aux(u, f, g);
}

}  // namespace

double normalize_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

FresnelPair fresnel(double u) {
  const double x = std::abs(u);
  FresnelPair p;
  if (x < kSeriesCutoff) {
    p = fresnel_series(x);
  } else if (x <= kAsymptoticCutoff) {
    p = fresnel_chebyshev(x);
  } else {
    p = fresnel_asymptotic(x);
  }
  if (u < 0.0) {
    p.c = -p.c;
    p.s = -p.s;
  }
  return p;
}

CurvePiece CurvePiece::line(const Pose& start, double length) {
  if (!(length > 0.0)) throw Error(Status::InvalidArgument, "piece length must be positive");
  return {PieceKind::Line, start, length, 0.0, 0.0};
}

CurvePiece CurvePiece::arc(const Pose& start, double length, double kappa) {
  if (!(length > 0.0)) throw Error(Status::InvalidArgument, "piece length must be positive");
  if (kappa == 0.0) throw Error(Status::InvalidArgument, "arc curvature must be nonzero");
  return {PieceKind::Arc, start, length, kappa, 0.0};
}

CurvePiece CurvePiece::clothoid(const Pose& start, double length, double kappa_start,
                                double kappa_rate) {
  if (!(length > 0.0)) throw Error(Status::InvalidArgument, "piece length must be positive");
  if (kappa_rate == 0.0)
    throw Error(Status::InvalidArgument, "clothoid curvature rate must be nonzero");
  return {PieceKind::Clothoid, start, length, kappa_start, kappa_rate};
}

namespace {

// Below this curvature rate a clothoid is evaluated as an arc (or line): the
// Fresnel scaling factor sqrt(pi/|rate|) diverges at the arc limit.
constexpr double kRateEpsilon = 1e-12;

PiecePoint eval_line(const CurvePiece& piece, double s) {
  Pose pose = piece.start;
  pose.position = pose.position + s * unit_vector(pose.heading);
  return {pose, 0.0};
}

PiecePoint eval_arc_like(const CurvePiece& piece, double kappa, double s) {
  if (std::abs(kappa) < 1e-300) return eval_line(piece, s);
  const double th0 = piece.start.heading;
  const double th1 = th0 + kappa * s;
  const double inv_k = 1.0 / kappa;
  Pose pose;
  pose.position.x = piece.start.position.x + inv_k * (std::sin(th1) - std::sin(th0));
  pose.position.y = piece.start.position.y - inv_k * (std::cos(th1) - std::cos(th0));
  pose.heading = normalize_angle(th1);
  return {pose, kappa};
}

PiecePoint eval_clothoid(const CurvePiece& piece, double s) {
  const double k0 = piece.kappa_start;
  const double d = piece.kappa_rate;
  const double th0 = piece.start.heading;
  // Completing the square puts the heading in canonical Fresnel form:
  //   theta(t) = phi + sigma (pi/2) u(t)^2,  u(t) = a (t + k0/d),
  //   a = sqrt(|d|/pi),  phi = theta0 - k0^2/(2d),  sigma = sign(d).
  const double sigma = d > 0.0 ? 1.0 : -1.0;
  const double a = std::sqrt(std::abs(d) / kPi);
  const double phi = th0 - k0 * k0 / (2.0 * d);
  const double shift = k0 / d;
  const FresnelPair f0 = fresnel(a * shift);
  const FresnelPair f1 = fresnel(a * (s + shift));
  const double dc = f1.c - f0.c;
  const double ds = f1.s - f0.s;
  const double inv_a = 1.0 / a;
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  Pose pose;
  pose.position.x = piece.start.position.x + inv_a * (cphi * dc - sigma * sphi * ds);
  pose.position.y = piece.start.position.y + inv_a * (sphi * dc + sigma * cphi * ds);
  pose.heading = normalize_angle(th0 + k0 * s + 0.5 * d * s * s);
  return {pose, k0 + d * s};
}

}  // namespace

PiecePoint eval_piece(const CurvePiece& piece, double s) {
  const double slack = 1e-9 * std::max(piece.length, 1.0);
  if (s < -slack || s > piece.length + slack)
    throw Error(Status::InvalidArgument, "arc length outside piece");
  s = std::clamp(s, 0.0, piece.length);
  switch (piece.kind) {
    case PieceKind::Line:
      return eval_line(piece, s);
    case PieceKind::Arc:
      return eval_arc_like(piece, piece.kappa_start, s);
    case PieceKind::Clothoid:
      if (std::abs(piece.kappa_rate) < kRateEpsilon) {
        PiecePoint p = eval_arc_like(piece, piece.kappa_start, s);
        p.kappa = piece.kappa_start + piece.kappa_rate * s;
        return p;
      }
      return eval_clothoid(piece, s);
  }
  throw Error(Status::InvalidArgument, "unknown piece kind");
}

double integrate_heading(const CurvePiece& piece) {
  return piece.kappa_start * piece.length + 0.5 * piece.kappa_rate * piece.length * piece.length;
}

}  // namespace trajkit
