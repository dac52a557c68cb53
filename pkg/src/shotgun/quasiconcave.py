"""Maximizers for unimodal objectives and checks for quasiconcavity on grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Grid values this far below an enclosing pair still count as quasiconcave.
QC_TOL = 1e-9


@dataclass(frozen=True)
class PeakResult:
    """Location and value of a maximum, plus the final search bracket."""

    location: float
    value: float
    attained: bool
    bracket: tuple[float, float]


def unimodal_max(f: Callable[[float], float], domain: tuple[float, float],
                 tol: float = 1e-10) -> PeakResult:
    """Golden-section search for the peak of a unimodal f on [lo, hi].

    Shrinks the bracket to width tol with one evaluation per step. The
    reported value is f at the bracket midpoint.
    """
    lo, hi = domain
    if not hi > lo:
        raise ValueError(f"unimodal_max: empty domain [{lo:g},{hi:g}]")
    if not tol > 0:
        raise ValueError(f"unimodal_max: tol must be positive, got {tol:g}")

    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
    x = 0.5 * (a + b)
    return PeakResult(location=x, value=float(f(x)), attained=True, bracket=(a, b))


def golden_max_batch(f: Callable[[np.ndarray], np.ndarray], lo, hi,
                     tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized golden-section: maximize f along axis 0 for many brackets.

    lo and hi broadcast against each other; f maps an array of points to an
    array of values of the same shape. Returns (argmax, max) arrays. Each
    step evaluates both interior probes, shrinking every bracket by the
    golden ratio.
    """
    a = np.array(np.broadcast_arrays(np.asarray(lo, float), np.asarray(hi, float))[0],
                 dtype=float, copy=True)
    b = np.array(np.broadcast_arrays(np.asarray(lo, float), np.asarray(hi, float))[1],
                 dtype=float, copy=True)
    if np.any(b < a):
        raise ValueError("golden_max_batch: some brackets have hi < lo")
    while True:
        span = b - a
        if float(span.max(initial=0.0)) <= tol:
            break
        c = b - _INVPHI * span
        d = a + _INVPHI * span
        move_up = f(c) < f(d)
        a = np.where(move_up, c, a)
        b = np.where(move_up, b, d)
    x = 0.5 * (a + b)
    return x, f(x)


def qc_grid_check(f: Callable[[float], float], domain: tuple[float, float],
                  n: int = 201) -> tuple[float, float, float] | None:
    """Scan n grid points for a quasiconcavity violation.

    A violation is a triple x_i < x_j < x_k with f(x_j) more than QC_TOL
    below min(f(x_i), f(x_k)). Returns the first such triple (smallest j,
    then smallest i and k), or None if the sampled values are consistent
    with quasiconcavity.
    """
    lo, hi = domain
    if n < 3:
        raise ValueError(f"qc_grid_check: need n >= 3, got {n}")
    xs = np.linspace(lo, hi, n)
    vals = np.array([float(f(x)) for x in xs])

    # prefix_max[j] = max over i < j, suffix_max[j] = max over k > j
    prefix_max = np.concatenate(([-np.inf], np.maximum.accumulate(vals)[:-1]))
    suffix_max = np.concatenate((np.maximum.accumulate(vals[::-1])[:-1][::-1], [-np.inf]))
    floor = np.minimum(prefix_max, suffix_max)
    bad = np.nonzero(vals < floor - QC_TOL)[0]
    if not bad.size:
        return None

    j = int(bad[0])
    thresh = vals[j] + QC_TOL
    i = int(np.nonzero(vals[:j] > thresh)[0][0])
    k = j + 1 + int(np.nonzero(vals[j + 1:] > thresh)[0][0])
    return (float(xs[i]), float(xs[j]), float(xs[k]))


def min_peak(m_f: float, m_g: float, crossing: float | None = None) -> float:
    """Peak location of the piecewise curve that follows g, then f.

    The envelope equals the unimodal curve g (peak m_g) up to the crossing
    point and the unimodal curve f (peak m_f) beyond it. crossing=None means
    the switch never happens inside the domain, so the envelope is g
    throughout and the peak is m_g. Raises ValueError when m_g < crossing
    < m_f: g already falls before the switch and f still rises after it, so
    the envelope has two local peaks and no single answer.
    """
    if crossing is None:
        return m_g
    if m_g < crossing < m_f:
        raise ValueError(
            f"min_peak: envelope is bimodal (g peaks at {m_g:g} before the "
            f"crossing {crossing:g}, f peaks at {m_f:g} after it)"
        )
    if crossing < m_f:
        return m_f
    if crossing > m_g:
        return m_g
    return crossing
