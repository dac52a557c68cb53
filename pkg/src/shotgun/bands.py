"""Distribution bands: two CDF bounds bracketing the opponent's belief set."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .distributions import ATOM_EPS, Cdf, make_cdf, median_bracket, triangular

# Pointwise dominance g0 <= g1 is enforced up to this slack on a check grid.
DOMINANCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Band:
    """All CDFs squeezed between two bounds on a common support.

    g0 is the dominating bound (lowest CDF values, optimistic for a seller)
    and g1 the dominated one (highest CDF values). alpha marks where g0
    leaves zero; beta_pt marks where g1 first hits one. mu_g1_minus and
    mu_g0_plus are the extreme medians across the band: the smallest median
    of g1 and the largest median of g0.
    """

    g0: Cdf
    g1: Cdf
    alpha: float
    beta_pt: float
    mu_g1_minus: float
    mu_g0_plus: float
    label: str = ""

    @property
    def support(self) -> tuple[float, float]:
        return self.g0.support

    @property
    def median_window(self) -> tuple[float, float]:
        return (self.mu_g1_minus, self.mu_g0_plus)


def _validate_band(band: Band, n: int = 1001) -> Band:
    if band.g0.support != band.g1.support:
        raise ValueError(
            f"band bounds disagree on support: {band.g0.support} vs {band.g1.support}"
        )
    lo, hi = band.support
    if not hi > lo:
        raise ValueError(f"band support is empty: [{lo:g},{hi:g}]")
    xs = np.linspace(lo, hi, n)
    gap = band.g0.eval(xs) - band.g1.eval(xs)
    worst = float(gap.max())
    if worst > DOMINANCE_TOL:
        where = float(xs[int(np.argmax(gap))])
        raise ValueError(
            f"band bounds cross: g0 exceeds g1 by {worst:.3g} at x={where:.6g}"
        )
    if not band.mu_g1_minus <= band.mu_g0_plus + 1e-12:
        raise ValueError(
            f"band medians out of order: {band.mu_g1_minus:g} > {band.mu_g0_plus:g}"
        )
    return band


# ---------------------------------------------------------------------------
# epsilon-shift bands
# ---------------------------------------------------------------------------

def eps_shift_band(f: Cdf, eps: float) -> Band:
    """Band of all CDFs within a horizontal shift eps of the reference f.

    The dominating bound pushes mass up: g0(x) = f(x - eps), except that
    everything left over piles into an atom at the top endpoint. The
    dominated bound pulls mass down: g1(x) = f(x + eps), with the mass
    already reachable at the bottom endpoint sitting there as an atom.
    eps = 0 reproduces f on both sides.
    """
    if eps < 0:
        raise ValueError(f"eps_shift_band: need eps >= 0, got {eps:g}")
    if f.atoms:
        raise ValueError("eps_shift_band: reference distribution must be atomless")
    lo, hi = f.support
    width = hi - lo

    def shifted_kinks(shift: float) -> tuple[float, ...]:
        pts = {lo, hi}
        pts.update(min(max(k + shift, lo), hi) for k in f.kinks)
        return tuple(sorted(pts))

    # dominating bound: f shifted right, residual atom at the top
    top_mass = 1.0 - f.eval(hi - eps)

    def g0_cdf(x):
        return np.where(x >= hi, 1.0, f.eval(x - eps))

    def g0_pdf(x):
        return f.density(x - eps)

    g0 = Cdf(
        support=(lo, hi),
        cdf_fn=g0_cdf,
        pdf_fn=g0_pdf,
        kinks=shifted_kinks(eps),
        atoms=((hi, top_mass),) if top_mass > ATOM_EPS else (),
        exact_median=None,
        label=f"{f.label} shifted +{eps:g}",
    )

    # dominated bound: f shifted left, early mass collected at the bottom
    bottom_mass = f.eval(lo + eps)

    def g1_cdf(x):
        return f.eval(x + eps)

    def g1_pdf(x):
        return f.density(x + eps)

    g1 = Cdf(
        support=(lo, hi),
        cdf_fn=g1_cdf,
        pdf_fn=g1_pdf,
        kinks=shifted_kinks(-eps),
        atoms=((lo, bottom_mass),) if bottom_mass > ATOM_EPS else (),
        exact_median=None,
        label=f"{f.label} shifted -{eps:g}",
    )

    med = f.exact_median if f.exact_median is not None else median_bracket(f)[0]
    band = Band(
        g0=g0,
        g1=g1,
        alpha=min(lo + eps, hi),
        beta_pt=max(hi - eps, lo),
        mu_g1_minus=min(max(med - eps, lo), hi),
        mu_g0_plus=min(max(med + eps, lo), hi),
        label=f"{f.label}|eps={eps:g}",
    )
    return _validate_band(band)


# ---------------------------------------------------------------------------
# degenerate interval bands
# ---------------------------------------------------------------------------

def _dirac_cdf(loc: float, support: tuple[float, float]) -> Cdf:
    def cdf_fn(x):
        return np.where(x >= loc, 1.0, 0.0)

    def pdf_fn(x):
        return np.zeros_like(x)

    return Cdf(
        support=support,
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=(loc,),
        atoms=((loc, 1.0),),
        exact_median=None,
        label=f"point({loc:g})",
    )


def interval_band(a: float, b: float,
                  support: tuple[float, float] = (0.0, 1.0)) -> Band:
    """Band of every CDF supported inside [a, b]: pure interval uncertainty.

    The bounds are point masses at the interval's ends, so the opponent's
    value is known only up to a <= x <= b.
    """
    lo, hi = support
    if not (lo <= a <= b <= hi):
        raise ValueError(
            f"interval_band: need {lo:g} <= a <= b <= {hi:g}, got a={a:g}, b={b:g}"
        )
    band = Band(
        g0=_dirac_cdf(b, support),
        g1=_dirac_cdf(a, support),
        alpha=b,
        beta_pt=a,
        mu_g1_minus=a,
        mu_g0_plus=b,
        label=f"interval[{a:g},{b:g}]",
    )
    return _validate_band(band)


# ---------------------------------------------------------------------------
# value-dependent bands
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BandFactory:
    """Produces the band the announcer faces, possibly depending on their value.

    mode "iid" means one fixed band for every announcer value; "correlated"
    rebuilds the band around each value.
    """

    mode: str
    builder: Callable[[float], Band]
    support: tuple[float, float]
    label: str = ""

    def band_for(self, x_d: float) -> Band:
        return self.builder(x_d)


def iid_factory(band: Band) -> BandFactory:
    return BandFactory(mode="iid", builder=lambda _x: band,
                       support=band.support, label=band.label)


def correlated_triangular_factory(eps: float,
                                  support: tuple[float, float] = (0.0, 1.0)) -> BandFactory:
    """Shift band around a triangular reference whose mode tracks the value.

    Models positively correlated values: an announcer holding value x treats
    the opponent's value as triangular on the support with mode x, blurred
    by an eps shift band.
    """
    if eps < 0:
        raise ValueError(f"correlated_triangular_factory: need eps >= 0, got {eps:g}")
    lo, hi = support

    @lru_cache(maxsize=512)
    def builder(x_d: float) -> Band:
        mode = min(max(x_d, lo), hi)
        return eps_shift_band(make_cdf(triangular(lo, hi, mode)), eps)

    return BandFactory(
        mode="correlated",
        builder=builder,
        support=support,
        label=f"triangular-mode|eps={eps:g}",
    )
