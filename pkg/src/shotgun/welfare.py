"""Interim guarantees for both roles, their slopes, and misallocation regions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bands import Band
from .distributions import ATOM_EPS, Cdf
from .integrate import cdf_expectation
from .payoff import Utility, worst_case_payoff
from .solver import (
    REGIME_APPROX_SUP,
    REGIME_BAYES_LOW,
    REGIME_HEDGE,
    PricePolicy,
)

DEFAULT_QUAD_TOL = 1e-8

# Derivatives are refused this close to a regime boundary.
# regime boundaries carry golden-section location noise near 1e-8, so the
# refusal margin must sit comfortably above that
KINK_MARGIN = 1e-6


class UnsupportedUtilityError(ValueError):
    """Raised when a welfare routine is asked to run with a nonlinear utility."""


class KinkError(ValueError):
    """Raised when a slope is requested at or next to a regime boundary."""


def _require_identity(u: Utility) -> None:
    if u.kind != "identity":
        raise UnsupportedUtilityError(
            f"welfare guarantees are closed-form only for the identity utility, "
            f"got {u.describe()}"
        )


# ---------------------------------------------------------------------------
# announcer side
# ---------------------------------------------------------------------------

def phi_divider(x_d: float, policy: PricePolicy, band: Band) -> float:
    """Worst-case interim utility of the announcing side at value x_d."""
    _require_identity(policy.utility)
    price, _ = policy.rule(x_d)
    return float(worst_case_payoff(price, x_d, band, policy.utility))


# ---------------------------------------------------------------------------
# responder side
# ---------------------------------------------------------------------------

def _price_inverse(policy: PricePolicy, target: float) -> float:
    """Value z at which the announcement rule crosses the target price."""
    lo, hi = policy.support
    if policy.kink_lo <= 2.0 * target <= policy.kink_hi:
        # inside the hedge window the rule is exactly x/2
        return 2.0 * target
    if target <= policy.rule(lo)[0]:
        return lo
    if target >= policy.rule(hi)[0]:
        return hi
    if 2.0 * target < policy.kink_lo:
        a, b = lo, policy.kink_lo
    else:
        a, b = policy.kink_hi, hi
    while b - a > 1e-12 * (hi - lo):
        mid = 0.5 * (a + b)
        if policy.rule(mid)[0] < target:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _chooser_weight(x_c: float, policy: PricePolicy):
    def weight(zs: np.ndarray) -> np.ndarray:
        prices = policy.price_many(np.asarray(zs, dtype=float))
        return np.maximum(x_c - prices, prices)

    return weight


def phi_chooser(x_c: float, policy: PricePolicy, band: Band,
                quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Worst-case interim utility of the responding side at value x_c.

    Facing announcement m(z), the responder nets max(x_c - m(z), m(z)).
    The adversary spends the band's freedom pushing announcer values toward
    the bottom of that V shape: the dominating bound below the crossing
    value, the dominated bound above it, and any band slack parked exactly
    at the crossing.
    """
    _require_identity(policy.utility)
    lo, hi = policy.support
    weight = _chooser_weight(x_c, policy)
    splits = (policy.kink_lo, policy.kink_hi)
    m_lo = policy.rule(lo)[0]
    m_hi = policy.rule(hi)[0]

    if x_c < 2.0 * m_lo:
        # responder always sells: worst belief is the dominated bound
        return cdf_expectation(band.g1, weight, lo, hi,
                               splits=splits, tol=quad_tol)
    if x_c > 2.0 * m_hi:
        # responder always buys: worst belief is the dominating bound
        return cdf_expectation(band.g0, weight, lo, hi,
                               splits=splits, tol=quad_tol)

    z = _price_inverse(policy, 0.5 * x_c)
    left = cdf_expectation(band.g0, weight, lo, z,
                           include_hi=False, splits=splits, tol=quad_tol)
    right = cdf_expectation(band.g1, weight, z, hi,
                            include_lo=False, splits=splits, tol=quad_tol)
    pinched = band.g1.eval(z) - band.g0.left_limit(z)
    mid = pinched * float(weight(np.array([z]))[0]) if pinched > 0.0 else 0.0
    return left + mid + right


def chooser_worst_cdf(x_c: float, policy: PricePolicy, band: Band) -> Cdf:
    """The belief inside the band attaining the responder's worst case.

    Splices the dominating bound below the crossing value with the
    dominated bound above it; the leftover band slack becomes an atom at
    the crossing itself.
    """
    _require_identity(policy.utility)
    lo, hi = policy.support
    m_lo = policy.rule(lo)[0]
    m_hi = policy.rule(hi)[0]
    if x_c < 2.0 * m_lo:
        return band.g1
    if x_c > 2.0 * m_hi:
        return band.g0

    z = _price_inverse(policy, 0.5 * x_c)
    g0, g1 = band.g0, band.g1

    def cdf_fn(x):
        return np.where(x < z, g0.eval(x), g1.eval(x))

    def pdf_fn(x):
        return np.where(x < z, g0.density(x), g1.density(x))

    atoms = [(loc, mass) for loc, mass in g0.atoms if loc < z]
    jump = g1.eval(z) - g0.left_limit(z)
    if jump > ATOM_EPS:
        atoms.append((z, jump))
    atoms.extend((loc, mass) for loc, mass in g1.atoms if loc > z)

    kinks = sorted({lo, hi, z}
                   | {k for k in g0.kinks if k < z}
                   | {k for k in g1.kinks if k > z})
    return Cdf(
        support=(lo, hi),
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        kinks=tuple(kinks),
        atoms=tuple(atoms),
        exact_median=None,
        label=f"spliced@{z:.6g}",
    )


# ---------------------------------------------------------------------------
# slopes
# ---------------------------------------------------------------------------

def phi_derivatives(x: float, policy: PricePolicy, band: Band) -> tuple[float, float]:
    """Closed-form slopes of both guarantees at a value x between boundaries.

    Raises KinkError within KINK_MARGIN of any regime boundary, where the
    one-sided slopes differ.
    """
    _require_identity(policy.utility)
    lo, hi = policy.support
    scale = max(hi - lo, 1.0)
    m_lo = policy.rule(lo)[0]
    m_hi = policy.rule(hi)[0]
    boundaries = (policy.kink_lo, policy.kink_hi, 2.0 * m_lo, 2.0 * m_hi)
    nearest = min(abs(x - b) for b in boundaries)
    if nearest < KINK_MARGIN * scale:
        raise KinkError(
            f"x={x:.12g} is within {KINK_MARGIN:g} of a regime boundary; "
            f"one-sided slopes differ there"
        )

    price, regime = policy.rule(x)
    if regime == REGIME_HEDGE:
        d_divider = 0.5
    elif regime in (REGIME_BAYES_LOW, REGIME_APPROX_SUP):
        # envelope: only the direct dependence on x survives
        d_divider = band.g1.eval(2.0 * price)
    else:
        d_divider = band.g0.eval(2.0 * price)

    if x < 2.0 * m_lo:
        d_chooser = 0.0
    elif x > 2.0 * m_hi:
        d_chooser = 1.0
    else:
        z = _price_inverse(policy, 0.5 * x)
        d_chooser = 0.5 * (band.g1.eval(z) + band.g0.left_limit(z))

    return float(d_divider), float(d_chooser)


# ---------------------------------------------------------------------------
# curves and misallocation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WelfareCurve:
    """Both guarantees tabulated on a value grid, plus where they coincide."""

    grid: tuple[float, ...]
    phi_d: tuple[float, ...]
    phi_c: tuple[float, ...]
    equality_band: tuple[float, float] | None
    label: str = ""


def compare_roles(policy: PricePolicy, band: Band, grid_n: int = 101,
                  quad_tol: float = DEFAULT_QUAD_TOL) -> WelfareCurve:
    """Tabulate both interim guarantees and basic sanity facts about them.

    Raises ValueError if the computed curves break dominance (the responder
    is never worse off than the announcer) or monotonicity.
    """
    _require_identity(policy.utility)
    lo, hi = policy.support
    xs = np.linspace(lo, hi, grid_n)
    phi_d = np.array([phi_divider(float(x), policy, band) for x in xs])
    phi_c = np.array([phi_chooser(float(x), policy, band, quad_tol=quad_tol)
                      for x in xs])

    worst = float((phi_d - phi_c).max())
    if worst > 1e-7:
        where = float(xs[int(np.argmax(phi_d - phi_c))])
        raise ValueError(
            f"announcer guarantee exceeds responder guarantee by {worst:.3g} "
            f"at x={where:.6g}"
        )
    for name, vals in (("announcer", phi_d), ("responder", phi_c)):
        if float(np.diff(vals).min(initial=0.0)) < -1e-9:
            raise ValueError(f"{name} guarantee is not nondecreasing")

    if band.beta_pt <= band.alpha:
        equality = (band.beta_pt, band.alpha)
    else:
        equality = None
    return WelfareCurve(
        grid=tuple(float(v) for v in xs),
        phi_d=tuple(float(v) for v in phi_d),
        phi_c=tuple(float(v) for v in phi_c),
        equality_band=equality,
        label=policy.label,
    )


@dataclass(frozen=True)
class EfficiencyRegion:
    """Responder values misallocated against announcer value x_d, if any."""

    x_d: float
    bad_lo: float | None
    bad_hi: float | None

    @property
    def is_empty(self) -> bool:
        return self.bad_lo is None

    @property
    def length(self) -> float:
        if self.bad_lo is None:
            return 0.0
        return self.bad_hi - self.bad_lo


def efficiency_region(x_d: float, policy: PricePolicy) -> EfficiencyRegion:
    """Interval of responder values where the asset lands on the wrong side.

    The split is efficient when the responder's value passes the announced
    threshold 2p exactly at x_d, which is what hedging achieves. Any other
    announcement opens a wedge between x_d and 2p.
    """
    price, regime = policy.rule(x_d)
    if regime == REGIME_HEDGE:
        return EfficiencyRegion(x_d=x_d, bad_lo=None, bad_hi=None)
    two_p = 2.0 * price
    lo, hi = sorted((x_d, two_p))
    if hi - lo <= 0.0:
        return EfficiencyRegion(x_d=x_d, bad_lo=None, bad_hi=None)
    return EfficiencyRegion(x_d=x_d, bad_lo=lo, bad_hi=hi)


def inefficiency_area(policy: PricePolicy, grid_n: int | None = None) -> float:
    """Area of the misallocation wedge, integrated over announcer values."""
    if grid_n is None:
        xs = np.asarray(policy.grid, dtype=float)
        prices = np.asarray(policy.prices, dtype=float)
    else:
        xs = np.linspace(policy.support[0], policy.support[1], grid_n)
        prices = policy.price_many(xs)
    lengths = np.abs(2.0 * prices - xs)
    return float(np.trapezoid(lengths, xs))
