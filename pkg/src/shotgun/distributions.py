"""Piecewise-smooth CDF toolkit: closed-form families, medians, hazard slope checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

# Slopes this far below zero still count as nondecreasing (FD noise allowance).
SLOPE_TOL = 1e-9

# Atom masses below this are dropped as numerical dust.
ATOM_EPS = 1e-15


class ZeroDensityError(ValueError):
    """Raised when a computation needs f(x) > 0 but the density vanishes."""


# ---------------------------------------------------------------------------
# core CDF object
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Cdf:
    """A CDF on a bounded support, with explicit atoms and kink locations.

    cdf_fn and pdf_fn only need to be correct on the support; eval() clamps
    to 0 below and 1 at or above the top endpoint. Atoms are (location, mass)
    pairs; pdf_fn describes the absolutely continuous part only.
    """

    support: tuple[float, float]
    cdf_fn: Callable[[np.ndarray], np.ndarray]
    pdf_fn: Callable[[np.ndarray], np.ndarray]
    kinks: tuple[float, ...] = ()
    atoms: tuple[tuple[float, float], ...] = ()
    exact_median: float | None = None
    label: str = ""

    def eval(self, x):
        """Right-continuous CDF value, scalar in -> scalar out."""
        scalar = np.ndim(x) == 0
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        with np.errstate(divide="ignore", invalid="ignore"):
            inner = self.cdf_fn(np.clip(x_arr, lo, hi))
        out = np.where(x_arr < lo, 0.0, np.where(x_arr >= hi, 1.0, inner))
        return float(out[0]) if scalar else out

    def left_limit(self, x):
        """Limit of the CDF from the left: eval minus any atom sitting at x."""
        scalar = np.ndim(x) == 0
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.asarray(self.eval(x_arr), dtype=float).copy()
        for loc, mass in self.atoms:
            out = out - mass * (x_arr == loc)
        out = np.where(x_arr <= self.support[0], 0.0, out)
        return float(out[0]) if scalar else out

    def density(self, x):
        """Density of the absolutely continuous part, zero off the support."""
        scalar = np.ndim(x) == 0
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        with np.errstate(divide="ignore", invalid="ignore"):
            inner = self.pdf_fn(np.clip(x_arr, lo, hi))
        out = np.where((x_arr >= lo) & (x_arr <= hi), inner, 0.0)
        return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# parametric families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistFamily:
    """A named continuous family plus its parameter tuple."""

    kind: str
    params: tuple[float, ...]

    def describe(self) -> str:
        args = ",".join(format(p, "g") for p in self.params)
        return f"{self.kind}({args})"


def uniform(a: float, b: float) -> DistFamily:
    return DistFamily("uniform", (float(a), float(b)))


def triangular(a: float, b: float, c: float) -> DistFamily:
    return DistFamily("triangular", (float(a), float(b), float(c)))


def truncnormal(lo: float, hi: float, mu: float, sigma: float) -> DistFamily:
    return DistFamily("truncnormal", (float(lo), float(hi), float(mu), float(sigma)))


def beta(alpha: float, beta_param: float) -> DistFamily:
    return DistFamily("beta", (float(alpha), float(beta_param)))


def _uniform_cdf(a: float, b: float) -> Cdf:
    width = b - a

    def cdf_fn(x):
        return (x - a) / width

    def pdf_fn(x):
        return np.full_like(x, 1.0 / width)

    return Cdf(
        support=(a, b),
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=(a, b),
        exact_median=a + 0.5 * width,
        label=f"uniform({a:g},{b:g})",
    )


def _triangular_cdf(a: float, b: float, c: float) -> Cdf:
    width = b - a

    def cdf_fn(x):
        y = np.zeros_like(x)
        if c > a:
            m = (x >= a) & (x < c)
            y[m] = (x[m] - a) ** 2 / (width * (c - a))
        if b > c:
            m = x >= c
            y[m] = 1.0 - (b - x[m]) ** 2 / (width * (b - c))
        else:
            y[x >= c] = 1.0
        return y

    def pdf_fn(x):
        y = np.zeros_like(x)
        if c > a:
            m = (x >= a) & (x < c)
            y[m] = 2.0 * (x[m] - a) / (width * (c - a))
        if b > c:
            m = x >= c
            y[m] = 2.0 * (b - x[m]) / (width * (b - c))
        else:
            # mode at the top endpoint, density peaks there
            y[x == c] = 2.0 / width
        return y

    # median sits left or right of the mode depending on which side holds mass 1/2
    if (c - a) >= 0.5 * width:
        med = a + math.sqrt(0.5 * width * (c - a))
    else:
        med = b - math.sqrt(0.5 * width * (b - c))

    kinks = tuple(sorted({a, c, b}))
    return Cdf(
        support=(a, b),
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=kinks,
        exact_median=med,
        label=f"triangular({a:g},{b:g},{c:g})",
    )


def _truncnormal_cdf(lo: float, hi: float, mu: float, sigma: float) -> Cdf:
    z_lo = (lo - mu) / sigma
    z_hi = (hi - mu) / sigma
    mass = special.ndtr(z_hi) - special.ndtr(z_lo)
    if mass <= 0.0:
        raise ValueError(
            f"truncnormal: window [{lo:g},{hi:g}] carries no normal mass"
        )

    def cdf_fn(x):
        return (special.ndtr((x - mu) / sigma) - special.ndtr(z_lo)) / mass

    def pdf_fn(x):
        z = (x - mu) / sigma
        return np.exp(-0.5 * z * z) / (sigma * mass * math.sqrt(2.0 * math.pi))

    med = mu + sigma * special.ndtri(special.ndtr(z_lo) + 0.5 * mass)
    return Cdf(
        support=(lo, hi),
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=(lo, hi),
        exact_median=float(med),
        label=f"truncnormal({lo:g},{hi:g},{mu:g},{sigma:g})",
    )


def _beta_cdf(alpha: float, beta_param: float) -> Cdf:
    norm = special.beta(alpha, beta_param)

    def cdf_fn(x):
        return special.betainc(alpha, beta_param, x)

    def pdf_fn(x):
        return x ** (alpha - 1.0) * (1.0 - x) ** (beta_param - 1.0) / norm

    # betaincinv can be ~1e-8 off near flat densities; Newton-polish the seed
    med = float(special.betaincinv(alpha, beta_param, 0.5))
    for _ in range(3):
        step = (special.betainc(alpha, beta_param, med) - 0.5) / pdf_fn(med)
        med -= step
        if abs(step) < 1e-15:
            break
    med = float(min(max(med, 0.0), 1.0))
    return Cdf(
        support=(0.0, 1.0),
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=(0.0, 1.0),
        exact_median=med,
        label=f"beta({alpha:g},{beta_param:g})",
    )


def make_cdf(family: DistFamily) -> Cdf:
    """Build the Cdf for a family, validating parameters first."""
    kind, p = family.kind, family.params
    if kind == "uniform":
        a, b = p
        if not a < b:
            raise ValueError(f"uniform: need a < b, got a={a:g}, b={b:g}")
        return _uniform_cdf(a, b)
    if kind == "triangular":
        a, b, c = p
        if not a < b:
            raise ValueError(f"triangular: need a < b, got a={a:g}, b={b:g}")
        if not (a <= c <= b):
            raise ValueError(f"triangular: mode c={c:g} outside [{a:g},{b:g}]")
        return _triangular_cdf(a, b, c)
    if kind == "truncnormal":
        lo, hi, mu, sigma = p
        if not lo < hi:
            raise ValueError(f"truncnormal: need lo < hi, got lo={lo:g}, hi={hi:g}")
        if not sigma > 0:
            raise ValueError(f"truncnormal: need sigma > 0, got {sigma:g}")
        return _truncnormal_cdf(lo, hi, mu, sigma)
    if kind == "beta":
        alpha, beta_param = p
        if not (alpha > 0 and beta_param > 0):
            raise ValueError(
                f"beta: need both shape parameters > 0, got ({alpha:g},{beta_param:g})"
            )
        return _beta_cdf(alpha, beta_param)
    raise ValueError(f"unknown distribution family: {kind!r}")


# ---------------------------------------------------------------------------
# medians
# ---------------------------------------------------------------------------

def _snap_candidates(f: Cdf) -> list[float]:
    pts = {loc for loc, _ in f.atoms}
    pts.update(f.kinks)
    pts.update(f.support)
    return sorted(pts)


def median_bracket(f: Cdf) -> tuple[float, float]:
    """Return (mu_minus, mu_plus): the smallest and largest medians of f.

    mu_minus = inf{x : F(x) >= 1/2}, mu_plus = sup{x : F(x-) <= 1/2}. Found
    by bisection, then snapped onto nearby atoms/kinks so that Dirac and
    piecewise cases come out exact.
    """
    if f.exact_median is not None:
        return (f.exact_median, f.exact_median)

    lo, hi = f.support
    width = hi - lo
    snap_tol = 1e-9 * max(width, 1.0)
    candidates = _snap_candidates(f)

    # smallest median
    if f.eval(lo) >= 0.5:
        mu_minus = lo
    else:
        a, b = lo, hi
        while b - a > 1e-14 * max(width, 1.0):
            mid = 0.5 * (a + b)
            if f.eval(mid) >= 0.5:
                b = mid
            else:
                a = mid
        mu_minus = b
        for c in candidates:
            if abs(c - mu_minus) <= snap_tol and f.eval(c) >= 0.5:
                mu_minus = c
                break

    # largest median
    if f.left_limit(hi) <= 0.5:
        mu_plus = hi
    else:
        a, b = lo, hi
        while b - a > 1e-14 * max(width, 1.0):
            mid = 0.5 * (a + b)
            if f.left_limit(mid) <= 0.5:
                a = mid
            else:
                b = mid
        mu_plus = a
        for c in reversed(candidates):
            if abs(c - mu_plus) <= snap_tol and f.left_limit(c) <= 0.5:
                mu_plus = c
                break

    return (mu_minus, mu_plus)


# ---------------------------------------------------------------------------
# hazard-rate slope check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShrcReport:
    """Result of the two monotone-hazard slope conditions on a grid."""

    holds: bool
    min_slope_up: float
    min_slope_down: float
    violations: tuple[float, ...]
    grid_n: int


def check_shrc(f: Cdf, grid_n: int = 2001) -> ShrcReport:
    """Check that x + F/f and x - (1-F)/f are both nondecreasing.

    Central finite differences with step 1e-5 * support width, evaluated on
    grid_n interior points. Slopes above -SLOPE_TOL count as passing. Raises
    ZeroDensityError if the density vanishes at any probe point.
    """
    if grid_n < 3:
        raise ValueError(f"check_shrc: grid_n must be >= 3, got {grid_n}")
    lo, hi = f.support
    width = hi - lo
    h = 1e-5 * width
    xs = lo + (np.arange(1, grid_n + 1) / (grid_n + 1)) * width

    def probe(pts):
        dens = np.asarray(f.density(pts), dtype=float)
        bad = np.nonzero(~(dens > 0.0))[0]
        if bad.size:
            raise ZeroDensityError(
                f"density vanishes at x={pts[bad[0]]:.6g} inside the support of {f.label}"
            )
        cdf = np.asarray(f.eval(pts), dtype=float)
        return cdf, dens

    cdf_m, dens_m = probe(xs - h)
    cdf_p, dens_p = probe(xs + h)

    up_m = (xs - h) + cdf_m / dens_m
    up_p = (xs + h) + cdf_p / dens_p
    down_m = (xs - h) - (1.0 - cdf_m) / dens_m
    down_p = (xs + h) - (1.0 - cdf_p) / dens_p

    slope_up = (up_p - up_m) / (2.0 * h)
    slope_down = (down_p - down_m) / (2.0 * h)

    bad_mask = (slope_up < -SLOPE_TOL) | (slope_down < -SLOPE_TOL)
    violations = tuple(float(v) for v in xs[bad_mask])
    return ShrcReport(
        holds=not violations,
        min_slope_up=float(slope_up.min()),
        min_slope_down=float(slope_down.min()),
        violations=violations,
        grid_n=grid_n,
    )
