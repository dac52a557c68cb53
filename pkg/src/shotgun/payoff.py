"""Payoffs for the buy-sell game: announcer's expected and worst-case utility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bands import Band
from .distributions import Cdf


@dataclass(frozen=True, eq=False)
class Utility:
    """Wealth utility: identity, or constant absolute risk aversion."""

    kind: str
    rho: float = 0.0

    def apply(self, w):
        if self.kind == "identity":
            return np.asarray(w, dtype=float) if np.ndim(w) else float(w)
        # CARA normalized so u(0) = 0 and u'(0) = 1
        return -np.expm1(-self.rho * np.asarray(w, dtype=float)) / self.rho

    def describe(self) -> str:
        if self.kind == "identity":
            return "identity"
        return f"cara(rho={self.rho:g})"


def identity_utility() -> Utility:
    return Utility(kind="identity")


def cara_utility(rho: float) -> Utility:
    if not rho > 0:
        raise ValueError(f"cara_utility: need rho > 0, got {rho:g}")
    return Utility(kind="cara", rho=float(rho))


def chooser_decision(x_c: float, p: float) -> str:
    """What the responder does at announced price p: ties go to selling."""
    return "buy" if x_c > 2.0 * p else "sell"


def bayes_payoff(p, x_d, f: Cdf, u: Utility):
    """Announcer's expected utility at price p when the responder draws from f.

    The responder buys the announcer's share at p when their value exceeds
    2p, otherwise sells their own share at p. Vectorized over p and x_d.
    """
    q = f.eval(2.0 * np.asarray(p, dtype=float))
    sell_side = u.apply(np.asarray(x_d, dtype=float) - np.asarray(p, dtype=float))
    buy_side = u.apply(p)
    out = sell_side * q + buy_side * (1.0 - q)
    return float(out) if np.ndim(out) == 0 else out


def worst_case_payoff(p, x_d, band: Band, u: Utility):
    """Announcer's utility at price p against the least favorable CDF in the band.

    Below the announcer's own value (2p < x_d) the adversary concentrates
    mass low, so the dominating bound g0 is worst; above it the dominated
    bound g1 is worst; at 2p = x_d every CDF in the band gives exactly
    u(x_d / 2). Vectorized over p and x_d.
    """
    p_arr = np.asarray(p, dtype=float)
    x_arr = np.asarray(x_d, dtype=float)
    low = bayes_payoff(p_arr, x_arr, band.g0, u)
    high = bayes_payoff(p_arr, x_arr, band.g1, u)
    hedged = u.apply(0.5 * x_arr)
    two_p = 2.0 * p_arr
    out = np.where(two_p < x_arr, low, np.where(two_p > x_arr, high, hedged))
    return float(out) if (np.ndim(p) == 0 and np.ndim(x_d) == 0) else out


def maxmin_price(x_d: float) -> float:
    """The fully hedged announcement: half one's own value.

    At p = x_d / 2 the announcer nets x_d - p = p either way, so the payoff
    is u(x_d / 2) no matter what the responder believes or does.
    """
    return 0.5 * x_d
