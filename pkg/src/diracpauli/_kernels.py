"""Hot numerical kernels, numba-compiled when possible.

Every kernel ships in two variants: a plain Python/NumPy implementation
(the ``*_py`` names below) and an ``@njit``-compiled one.  The compiled
variant is selected at import time unless numba is missing or the
environment variable ``DIRACPAULI_NO_NUMBA`` is set to a truthy value
(``1``, ``true``, ``yes``, ``on``).  Public names always point at the
selected variant; the ``*_py`` twins stay importable so the benchmark in
``benchmarks/bench_kernels.py`` can time both paths and tests can assert
that they agree.

The two hot spots are the generalized-Laguerre recurrence evaluated over
grids (wavefunction sampling, residual scans) and the adaptive Cash-Karp
integrator driven thousands of times per eigenvalue bisection.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_disabled() -> bool:
    flag = os.environ.get("DIRACPAULI_NO_NUMBA", "")
    return flag.strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = False
if not _numba_disabled():
    try:
        from numba import njit as _njit

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if USE_NUMBA:
    def _jit(fn):
        return _njit(cache=True)(fn)
else:
    def _jit(fn):
        return fn


def laguerre_scalar_py(n: int, alpha: float, z: float) -> float:
    """L_n^alpha(z) by the stable upward three-term recurrence."""
    if n == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 + alpha - z
    for m in range(1, n):
        nxt = ((2.0 * m + 1.0 + alpha - z) * cur - (m + alpha) * prev) / (m + 1.0)
        prev = cur
        cur = nxt
    return cur


laguerre_scalar = _jit(laguerre_scalar_py)


def laguerre_grid_py(n: int, alpha: float, z: np.ndarray) -> np.ndarray:
    """Vectorized recurrence over a 1-d grid (pure NumPy path)."""
    prev = np.ones_like(z)
    if n == 0:
        return prev
    cur = 1.0 + alpha - z
    for m in range(1, n):
        nxt = ((2.0 * m + 1.0 + alpha - z) * cur - (m + alpha) * prev) / (m + 1.0)
        prev = cur
        cur = nxt
    return cur


def _laguerre_grid_loop(n: int, alpha: float, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    for i in range(z.shape[0]):
        out[i] = laguerre_scalar(n, alpha, z[i])
    return out


# Same per-element arithmetic in both variants, so results are bit-identical.
laguerre_grid = _jit(_laguerre_grid_loop) if USE_NUMBA else laguerre_grid_py


def shoot_integrate_py(c1: float, c2: float, c3sq: float, L: float,
                       r0: float, rmax: float, rtol: float,
                       node_cut: float) -> tuple:
    """Integrate y'' + (3/r) y' - (c1/r + c2^2 + c3sq/r^2) y = 0 outward.

    Starts at ``r0`` from a four-term Frobenius series around the regular
    singular point (leading exponent L - 1, rescaled away since the ODE is
    linear) and steps to ``rmax`` with an embedded Cash-Karp 5(4) pair.
    The local error is held below ``rtol`` per unit step.  Sign changes of
    y are counted for r <= ``node_cut`` only, which keeps far-tail roundoff
    out of the node count.

    Returns ``(y_end, nodes, steps, ok)``.  Only the sign of ``y_end`` is
    meaningful to callers: the state vector is rescaled whenever it grows
    past 1e250.
    """
    c2sq = c2 * c2
    a0 = 1.0
    a1 = c1 * a0 / (2.0 * L + 1.0)
    a2 = (c1 * a1 + c2sq * a0) / (2.0 * (2.0 * L + 2.0))
    a3 = (c1 * a2 + c2sq * a1) / (3.0 * (2.0 * L + 3.0))
    a4 = (c1 * a3 + c2sq * a2) / (4.0 * (2.0 * L + 4.0))
    s = L - 1.0
    y = a0 + r0 * (a1 + r0 * (a2 + r0 * (a3 + r0 * a4)))
    v = (s * a0 + r0 * ((s + 1.0) * a1 + r0 * ((s + 2.0) * a2
         + r0 * ((s + 3.0) * a3 + r0 * (s + 4.0) * a4)))) / r0

    r = r0
    h = 0.01 * r0
    nodes = 0
    sgn = 1.0 if y > 0.0 else (-1.0 if y < 0.0 else 0.0)
    steps = 0
    ok = True
    while r < rmax:
        steps += 1
        if steps > 5_000_000:
            ok = False
            break
        if h > rmax - r:
            h = rmax - r

        k1y = v
        k1v = -(3.0 / r) * v + (c1 / r + c2sq + c3sq / (r * r)) * y

        rr = r + 0.2 * h
        yy = y + h * (0.2 * k1y)
        vv = v + h * (0.2 * k1v)
        k2y = vv
        k2v = -(3.0 / rr) * vv + (c1 / rr + c2sq + c3sq / (rr * rr)) * yy

        rr = r + 0.3 * h
        yy = y + h * (0.075 * k1y + 0.225 * k2y)
        vv = v + h * (0.075 * k1v + 0.225 * k2v)
        k3y = vv
        k3v = -(3.0 / rr) * vv + (c1 / rr + c2sq + c3sq / (rr * rr)) * yy

        rr = r + 0.6 * h
        yy = y + h * (0.3 * k1y - 0.9 * k2y + 1.2 * k3y)
        vv = v + h * (0.3 * k1v - 0.9 * k2v + 1.2 * k3v)
        k4y = vv
        k4v = -(3.0 / rr) * vv + (c1 / rr + c2sq + c3sq / (rr * rr)) * yy

        rr = r + h
        yy = y + h * (-11.0 / 54.0 * k1y + 2.5 * k2y - 70.0 / 27.0 * k3y
                      + 35.0 / 27.0 * k4y)
        vv = v + h * (-11.0 / 54.0 * k1v + 2.5 * k2v - 70.0 / 27.0 * k3v
                      + 35.0 / 27.0 * k4v)
        k5y = vv
        k5v = -(3.0 / rr) * vv + (c1 / rr + c2sq + c3sq / (rr * rr)) * yy

        rr = r + 0.875 * h
        yy = y + h * (1631.0 / 55296.0 * k1y + 175.0 / 512.0 * k2y
                      + 575.0 / 13824.0 * k3y + 44275.0 / 110592.0 * k4y
                      + 253.0 / 4096.0 * k5y)
        vv = v + h * (1631.0 / 55296.0 * k1v + 175.0 / 512.0 * k2v
                      + 575.0 / 13824.0 * k3v + 44275.0 / 110592.0 * k4v
                      + 253.0 / 4096.0 * k5v)
        k6y = vv
        k6v = -(3.0 / rr) * vv + (c1 / rr + c2sq + c3sq / (rr * rr)) * yy

        y5 = y + h * (37.0 / 378.0 * k1y + 250.0 / 621.0 * k3y
                      + 125.0 / 594.0 * k4y + 512.0 / 1771.0 * k6y)
        v5 = v + h * (37.0 / 378.0 * k1v + 250.0 / 621.0 * k3v
                      + 125.0 / 594.0 * k4v + 512.0 / 1771.0 * k6v)
        y4 = y + h * (2825.0 / 27648.0 * k1y + 18575.0 / 48384.0 * k3y
                      + 13525.0 / 55296.0 * k4y + 277.0 / 14336.0 * k5y
                      + 0.25 * k6y)
        v4 = v + h * (2825.0 / 27648.0 * k1v + 18575.0 / 48384.0 * k3v
                      + 13525.0 / 55296.0 * k4v + 277.0 / 14336.0 * k5v
                      + 0.25 * k6v)

        ey = abs(y5 - y4)
        ev = abs(v5 - v4)
        ay = abs(y)
        ay5 = abs(y5)
        av = abs(v)
        av5 = abs(v5)
        sy = rtol * (ay if ay > ay5 else ay5) * h + 1e-300
        sv = rtol * (av if av > av5 else av5) * h + 1e-300
        ratio = ey / sy
        rv = ev / sv
        if rv > ratio:
            ratio = rv

        if ratio <= 1.0:
            r = r + h
            y = y5
            v = v5
            if r <= node_cut:
                sn = 1.0 if y > 0.0 else (-1.0 if y < 0.0 else 0.0)
                if sn != 0.0:
                    if sgn != 0.0 and sn != sgn:
                        nodes += 1
                    sgn = sn
            if abs(y) > 1e250 or abs(v) > 1e250:
                y *= 1e-200
                v *= 1e-200

        if ratio == 0.0:
            fac = 5.0
        else:
            fac = 0.9 * ratio ** -0.2
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
        h *= fac
        if h < 1e-14 * r:
            ok = False
            break

    return y, nodes, steps, ok


shoot_integrate = _jit(shoot_integrate_py)
