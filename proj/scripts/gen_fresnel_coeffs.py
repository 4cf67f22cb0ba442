#!/usr/bin/env python3
"""Generates Chebyshev coefficients for the Fresnel auxiliary functions.

The C++ evaluator uses three regimes:
  |u| < 1.6          power series (computed at run time, no tables)
  1.6 <= |u| <= 8    auxiliary functions f, g via Chebyshev fits in w = 1/u^2
  |u| > 8            truncated asymptotic series for f, g

This script fits F(w) = u*f(u) and G(w) = u^3*g(u) on w in [1/64, 1/1.6^2]
with mpmath at 50 digits, then verifies the resulting double-precision
evaluator against mpmath on a dense grid. Output is a C++ source fragment.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 50

W_LO = mp.mpf(1) / 64          # u = 8
W_HI = mp.mpf(1) / mp.mpf("2.56")  # u = 1.6
DEGREE = 29


def aux_fg(u):
    """Auxiliary f, g with C = 1/2 + f sin - g cos, S = 1/2 - f cos - g sin."""
    c = mp.fresnelc(u)
    s = mp.fresnels(u)
    arg = mp.pi * u * u / 2
    half_c = mp.mpf(1) / 2 - c
    half_s = mp.mpf(1) / 2 - s
    f = half_s * mp.cos(arg) - half_c * mp.sin(arg)
    g = half_c * mp.cos(arg) + half_s * mp.sin(arg)
    return f, g


def cheb_fit(func, lo, hi, degree):
    n = degree + 1
    nodes = [mp.cos(mp.pi * (k + mp.mpf(1) / 2) / n) for k in range(n)]
    xs = [(hi - lo) / 2 * t + (hi + lo) / 2 for t in nodes]
    ys = [func(x) for x in xs]
    coeffs = []
    for j in range(n):
        acc = mp.mpf(0)
        for k in range(n):
            acc += ys[k] * mp.cos(mp.pi * j * (k + mp.mpf(1) / 2) / n)
        coeffs.append(acc * 2 / n)
    coeffs[0] /= 2
    return coeffs


def clenshaw64(coeffs, y):
    b1 = b2 = np.float64(0)
    for c in coeffs[:0:-1]:
        b1, b2 = np.float64(2) * y * b1 - b2 + np.float64(c), b1
    return y * b1 - b2 + np.float64(coeffs[0])


def F_of_w(w):
    u = 1 / mp.sqrt(w)
    f, _ = aux_fg(u)
    return f * u


def G_of_w(w):
    u = 1 / mp.sqrt(w)
    _, g = aux_fg(u)
    return g * u ** 3


def verify(cf, cg):
    lo = float(W_LO)
    hi = float(W_HI)
    cf64 = [np.float64(c) for c in cf]
    cg64 = [np.float64(c) for c in cg]
    worst = 0.0
    for u in np.linspace(1.6, 8.0, 4001):
        w = np.float64(1) / (np.float64(u) * np.float64(u))
        y = (np.float64(2) * w - np.float64(lo + hi)) / np.float64(hi - lo)
        fv = clenshaw64(cf64, y) / np.float64(u)
        gv = clenshaw64(cg64, y) / np.float64(u) ** 3
        arg = np.float64(np.pi) * np.float64(u) ** 2 / 2
        c = np.float64(0.5) + fv * np.sin(arg) - gv * np.cos(arg)
        s = np.float64(0.5) - fv * np.cos(arg) - gv * np.sin(arg)
        ec = abs(c - float(mp.fresnelc(mp.mpf(float(u)))))
        es = abs(s - float(mp.fresnels(mp.mpf(float(u)))))
        worst = max(worst, ec, es)
    return worst


def emit(name, coeffs):
    lines = [f"constexpr double {name}[] = {{"]
    for i in range(0, len(coeffs), 3):
        chunk = ", ".join(mp.nstr(c, 20, strip_zeros=False) for c in coeffs[i:i + 3])
        lines.append(f"    {chunk},")
    lines[-1] = lines[-1].rstrip(",")
    lines.append("};")
    return "\n".join(lines)


def main():
    cf = cheb_fit(F_of_w, W_LO, W_HI, DEGREE)
    cg = cheb_fit(G_of_w, W_LO, W_HI, DEGREE)
    print(f"// tail coefficients before truncation: |cf|={float(abs(cf[-1])):.3e} "
          f"|cg|={float(abs(cg[-1])):.3e}")
    worst = verify(cf, cg)
    print(f"// max |error| vs mpmath on u in [1.6, 8], 4001 pts: {worst:.3e}")
    print(emit("kFresnelAuxF", cf))
    print(emit("kFresnelAuxG", cg))


if __name__ == "__main__":
    main()
