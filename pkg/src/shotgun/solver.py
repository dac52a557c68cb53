"""Optimal announcements: single-prior, band-robust, interval, and value-linked."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bands import Band, BandFactory
from .distributions import Cdf
from .payoff import Utility, bayes_payoff, identity_utility
from .quasiconcave import golden_max_batch, unimodal_max

REGIME_BAYES_LOW = "bayes-low"
REGIME_HEDGE = "hedge"
REGIME_BAYES_HIGH = "bayes-high"
REGIME_APPROX_SUP = "approx-sup"
REGIMES = (REGIME_BAYES_LOW, REGIME_HEDGE, REGIME_BAYES_HIGH, REGIME_APPROX_SUP)

DEFAULT_TOL = 1e-10
DEFAULT_DELTA = 1e-6


def bayes_price(x_d: float, f: Cdf, u: Utility | None = None,
                tol: float = DEFAULT_TOL) -> float:
    """Price maximizing expected utility against a single belief f.

    Only announcements with 2p inside the support of f are searched: below
    that range the responder surely buys and above it surely sells, so such
    prices are dominated by the nearest endpoint.
    """
    u = u if u is not None else identity_utility()
    lo, hi = f.support

    def objective(p: float) -> float:
        return bayes_payoff(p, x_d, f, u)

    return unimodal_max(objective, (0.5 * lo, 0.5 * hi), tol=tol).location


def bayes_price_many(xs, f: Cdf, u: Utility | None = None,
                     tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized bayes_price over an array of announcer values."""
    u = u if u is not None else identity_utility()
    lo, hi = f.support
    xs_arr = np.asarray(xs, dtype=float)

    def objective(p: np.ndarray) -> np.ndarray:
        return bayes_payoff(p, xs_arr, f, u)

    locs, _ = golden_max_batch(
        objective, np.full_like(xs_arr, 0.5 * lo), np.full_like(xs_arr, 0.5 * hi),
        tol=tol,
    )
    return locs


def knight_price(x_d: float, band: Band, u: Utility | None = None,
                 tol: float = DEFAULT_TOL) -> tuple[float, str]:
    """Robust price against every belief in the band, with its regime tag.

    Below the band's smallest median the binding worst case is the
    dominated bound g1 and the best response is its single-prior price;
    above the largest median it is g0. In between, any aggressive move can
    be punished from both sides and the full hedge p = x_d / 2 is optimal.
    """
    u = u if u is not None else identity_utility()
    if x_d < band.mu_g1_minus:
        return bayes_price(x_d, band.g1, u, tol=tol), REGIME_BAYES_LOW
    if x_d > band.mu_g0_plus:
        return bayes_price(x_d, band.g0, u, tol=tol), REGIME_BAYES_HIGH
    return 0.5 * x_d, REGIME_HEDGE


def interval_price(x_d: float, a: float, b: float,
                   delta: float = DEFAULT_DELTA) -> tuple[float, str]:
    """Robust price under pure interval uncertainty over [a, b].

    Inside the interval the announcer hedges. Above b the announcer wants a
    guaranteed sale, which takes 2p >= b, and the payoff falls in p from
    there, so b / 2 is optimal and attained. Below a a guaranteed purchase
    needs 2p strictly under a: the supremum a / 2 is never attained, so the
    rule backs off by delta and tags the regime approx-sup.
    """
    if not a <= b:
        raise ValueError(f"interval_price: need a <= b, got a={a:g}, b={b:g}")
    if not delta > 0:
        raise ValueError(f"interval_price: need delta > 0, got {delta:g}")
    if x_d < a:
        return 0.5 * a - delta, REGIME_APPROX_SUP
    if x_d > b:
        return 0.5 * b, REGIME_BAYES_HIGH
    return 0.5 * x_d, REGIME_HEDGE


def correlated_price(x_d: float, factory: BandFactory, u: Utility | None = None,
                     tol: float = DEFAULT_TOL) -> tuple[float, str]:
    """Robust price when the band itself depends on the announcer's value."""
    return knight_price(x_d, factory.band_for(x_d), u, tol=tol)


def triangular_hedge_test(x_d: float, eps: float) -> bool:
    """Closed-form hedging test for the value-linked triangular family on [0,1].

    Evaluates the published inequality pair directly: for x <= 1/2 hedging
    requires sqrt(x/2) - eps <= x, and for x >= 1/2 it requires
    x <= 1 + eps - sqrt((1-x)/2).
    """
    if not 0.0 <= x_d <= 1.0:
        raise ValueError(f"triangular_hedge_test: value {x_d:g} outside [0,1]")
    if eps < 0:
        raise ValueError(f"triangular_hedge_test: need eps >= 0, got {eps:g}")
    if x_d <= 0.5:
        return math.sqrt(0.5 * x_d) - eps <= x_d
    return x_d <= 1.0 + eps - math.sqrt(0.5 * (1.0 - x_d))


# ---------------------------------------------------------------------------
# policies over a grid of values
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PricePolicy:
    """An announcement rule tabulated on a value grid.

    grid, prices, and regimes align elementwise. kink_lo and kink_hi bound
    the hedging window; rule evaluates the exact price and regime at any
    value and price_many does the same for arrays of values.
    """

    grid: tuple[float, ...]
    prices: tuple[float, ...]
    regimes: tuple[str, ...]
    kink_lo: float
    kink_hi: float
    support: tuple[float, float]
    utility: Utility
    rule: Callable[[float], tuple[float, str]]
    price_many: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def price_at(self, x: float) -> float:
        return self.rule(x)[0]

    def regime_at(self, x: float) -> str:
        return self.rule(x)[1]


def validate_policy(policy: PricePolicy) -> PricePolicy:
    """Raise ValueError if the tabulated policy breaks a structural invariant."""
    n = len(policy.grid)
    if not (len(policy.prices) == n and len(policy.regimes) == n):
        raise ValueError("policy columns have mismatched lengths")
    prices = np.asarray(policy.prices)
    if np.any(np.diff(prices) < -1e-9):
        i = int(np.nonzero(np.diff(prices) < -1e-9)[0][0])
        raise ValueError(
            f"policy prices decrease between x={policy.grid[i]:g} "
            f"and x={policy.grid[i + 1]:g}"
        )
    for x, p, r in zip(policy.grid, policy.prices, policy.regimes):
        if r not in REGIMES:
            raise ValueError(f"unknown regime tag {r!r} at x={x:g}")
        if r == REGIME_HEDGE and p != 0.5 * x:
            raise ValueError(f"hedge price at x={x:g} is {p!r}, expected x/2")
        near_kink = (abs(x - policy.kink_lo) < 1e-9
                     or abs(x - policy.kink_hi) < 1e-9)
        if near_kink:
            continue
        in_window = policy.kink_lo <= x <= policy.kink_hi
        if (r == REGIME_HEDGE) != in_window:
            raise ValueError(
                f"regime {r!r} at x={x:g} contradicts hedge window "
                f"[{policy.kink_lo:g},{policy.kink_hi:g}]"
            )
    return policy


def _is_interval_band(band: Band) -> bool:
    def degenerate(g: Cdf) -> bool:
        return len(g.atoms) == 1 and abs(g.atoms[0][1] - 1.0) <= 1e-12

    return degenerate(band.g0) and degenerate(band.g1)


def _hedge_window(factory: BandFactory, support: tuple[float, float]) -> tuple[float, float]:
    """Bisect for the edges of the set {x : the robust rule hedges at x}.

    Relies on x - mu_g1_minus(x) growing and mu_g0_plus(x) - x shrinking in
    x, which holds whenever the band's medians move less than one-for-one
    with the value.
    """
    lo, hi = support
    width = hi - lo

    def above_low_median(x: float) -> bool:
        return x >= factory.band_for(x).mu_g1_minus

    def below_high_median(x: float) -> bool:
        return x <= factory.band_for(x).mu_g0_plus

    if above_low_median(lo):
        kink_lo = lo
    else:
        a, b = lo, hi
        while b - a > 1e-12 * width:
            mid = 0.5 * (a + b)
            if above_low_median(mid):
                b = mid
            else:
                a = mid
        kink_lo = 0.5 * (a + b)

    if below_high_median(hi):
        kink_hi = hi
    else:
        a, b = lo, hi
        while b - a > 1e-12 * width:
            mid = 0.5 * (a + b)
            if below_high_median(mid):
                a = mid
            else:
                b = mid
        kink_hi = 0.5 * (a + b)

    return kink_lo, kink_hi


def _interval_rule(band: Band, delta: float):
    a, b = band.mu_g1_minus, band.mu_g0_plus

    def rule(x: float) -> tuple[float, str]:
        return interval_price(x, a, b, delta=delta)

    def price_many(xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return np.where(xs < a, 0.5 * a - delta,
                        np.where(xs > b, 0.5 * b, 0.5 * xs))

    return rule, price_many, (a, b)


def _band_rule(band: Band, u: Utility, tol: float):
    def rule(x: float) -> tuple[float, str]:
        return knight_price(x, band, u, tol=tol)

    def price_many(xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = 0.5 * xs
        low = xs < band.mu_g1_minus
        if low.any():
            out[low] = bayes_price_many(xs[low], band.g1, u, tol=tol)
        high = xs > band.mu_g0_plus
        if high.any():
            out[high] = bayes_price_many(xs[high], band.g0, u, tol=tol)
        return out

    return rule, price_many, band.median_window


def _factory_rule(factory: BandFactory, u: Utility, tol: float):
    def rule(x: float) -> tuple[float, str]:
        return correlated_price(x, factory, u, tol=tol)

    def price_many(xs: np.ndarray) -> np.ndarray:
        return np.array([rule(float(x))[0] for x in np.asarray(xs, dtype=float)])

    return rule, price_many, _hedge_window(factory, factory.support)


def _make_rule(uncertainty, u: Utility, tol: float, delta: float):
    if isinstance(uncertainty, Band):
        if _is_interval_band(uncertainty):
            return _interval_rule(uncertainty, delta)
        return _band_rule(uncertainty, u, tol)
    if isinstance(uncertainty, BandFactory):
        return _factory_rule(uncertainty, u, tol)
    raise ValueError(
        f"expected Band or BandFactory, got {type(uncertainty).__name__}"
    )


def price_rule(uncertainty, u: Utility | None = None, tol: float = DEFAULT_TOL,
               delta: float = DEFAULT_DELTA) -> Callable[[float], tuple[float, str]]:
    """The exact announcement rule for one uncertainty model, untabulated."""
    u = u if u is not None else identity_utility()
    return _make_rule(uncertainty, u, tol, delta)[0]


def sweep_policy(uncertainty, u: Utility | None = None, grid_n: int = 101,
                 tol: float = DEFAULT_TOL, delta: float = DEFAULT_DELTA,
                 label: str = "") -> PricePolicy:
    """Tabulate the robust announcement rule on an even value grid.

    uncertainty is a Band (one fixed belief set), an interval Band (point
    mass bounds), or a BandFactory (belief set rebuilt around each value).
    """
    if grid_n < 2:
        raise ValueError(f"sweep_policy: need grid_n >= 2, got {grid_n}")
    u = u if u is not None else identity_utility()
    rule, price_many, window = _make_rule(uncertainty, u, tol, delta)
    support = uncertainty.support

    xs = np.linspace(support[0], support[1], grid_n)
    pairs = [rule(float(x)) for x in xs]
    policy = PricePolicy(
        grid=tuple(float(x) for x in xs),
        prices=tuple(p for p, _ in pairs),
        regimes=tuple(r for _, r in pairs),
        kink_lo=window[0],
        kink_hi=window[1],
        support=support,
        utility=u,
        rule=rule,
        price_many=price_many,
        label=label or getattr(uncertainty, "label", ""),
    )
    return validate_policy(policy)
