"""Brute-force cross-checks for policies: dense grids instead of closed forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bands import (
    Band,
    BandFactory,
    correlated_triangular_factory,
    eps_shift_band,
    interval_band,
)
from .distributions import make_cdf, triangular, uniform
from .payoff import Utility, worst_case_payoff
from .quasiconcave import golden_max_batch
from .solver import PricePolicy


@dataclass(frozen=True)
class OracleReport:
    """Outcome of checking a policy against a dense price grid."""

    passed: bool
    max_abs_gap: float
    worst_input: float
    samples: int


def grid_argmax_price(x_d: float, band: Band, u: Utility,
                      n: int = 20001) -> tuple[float, float]:
    """Best worst-case price by exhaustive search over n announcement levels."""
    lo, hi = band.support
    ps = np.linspace(0.5 * lo, 0.5 * hi, n)
    vals = np.asarray(worst_case_payoff(ps, x_d, band, u))
    i = int(np.argmax(vals))
    return float(ps[i]), float(vals[i])


def _strip_atoms(g, zs: np.ndarray) -> np.ndarray:
    # CDF values with all point masses removed: continuous, so per-cell
    # increments integrate the smooth part exactly even across density kinks
    vals = np.asarray(g.eval(zs), dtype=float).copy()
    for loc, mass in g.atoms:
        vals -= mass * (zs >= loc)
    return vals


@lru_cache(maxsize=16)
def _scan_tables(policy: PricePolicy, band: Band, n: int):
    # everything about the scan that does not depend on the responder value
    lo, hi = band.support
    zs = np.linspace(lo, hi, n)
    ms = policy.price_many(zs)
    s0 = _strip_atoms(band.g0, zs)
    s1 = _strip_atoms(band.g1, zs)
    pinch = np.asarray(band.g1.eval(zs)) - np.asarray(band.g0.left_limit(zs))
    atom_prices0 = tuple((loc, mass, policy.rule(loc)[0]) for loc, mass in band.g0.atoms)
    atom_prices1 = tuple((loc, mass, policy.rule(loc)[0]) for loc, mass in band.g1.atoms)
    return zs, ms, s0, s1, pinch, atom_prices0, atom_prices1


def chooser_worst_scan(x_c: float, policy: PricePolicy, band: Band,
                       n: int = 20001) -> float:
    """Responder's worst expected payoff, scanning every splice point.

    For each candidate z the adversary follows the dominating bound below
    z, parks the slack at z, and follows the dominated bound above. Each
    integral pairs trapezoid weights with exact CDF increments, so density
    kinks inside a cell cost nothing; the objective has a corner where the
    responder is indifferent, so the grid minimum is polished by a golden
    search over the two bracketing cells.
    """
    zs, ms, s0, s1, pinch, atoms0, atoms1 = _scan_tables(policy, band, n)
    w = np.maximum(x_c - ms, ms)

    def cum_against(s):
        cell = 0.5 * (w[:-1] + w[1:]) * np.diff(s)
        return np.concatenate(([0.0], np.cumsum(cell)))

    below_ac = cum_against(s0)
    cum1 = cum_against(s1)
    above_ac = cum1[-1] - cum1

    def atom_terms(z_arr):
        lo_sum = np.zeros_like(z_arr)
        hi_sum = np.zeros_like(z_arr)
        for loc, mass, price in atoms0:
            lo_sum = lo_sum + mass * max(x_c - price, price) * (z_arr > loc)
        for loc, mass, price in atoms1:
            hi_sum = hi_sum + mass * max(x_c - price, price) * (z_arr < loc)
        return lo_sum, hi_sum

    lo_sum, hi_sum = atom_terms(zs)
    totals = below_ac + lo_sum + pinch * w + above_ac + hi_sum
    i = int(np.argmin(totals))
    best = float(totals[i])

    # polish inside the two cells around the grid minimum
    left = zs[max(i - 1, 0)]
    right = zs[min(i + 1, len(zs) - 1)]
    if right > left:
        def value_at(z_probe: np.ndarray) -> np.ndarray:
            z_probe = np.asarray(z_probe, dtype=float)
            j = np.clip(np.searchsorted(zs, z_probe, side="right") - 1, 0, len(zs) - 2)
            m_z = policy.price_many(z_probe)
            w_z = np.maximum(x_c - m_z, m_z)
            s0_z = _strip_atoms(band.g0, z_probe)
            s1_z = _strip_atoms(band.g1, z_probe)
            below_z = below_ac[j] + 0.5 * (w[j] + w_z) * (s0_z - s0[j])
            above_z = above_ac[j + 1] + 0.5 * (w_z + w[j + 1]) * (s1[j + 1] - s1_z)
            pinch_z = (np.asarray(band.g1.eval(z_probe))
                       - np.asarray(band.g0.left_limit(z_probe)))
            lo_z, hi_z = atom_terms(z_probe)
            return below_z + lo_z + pinch_z * w_z + above_z + hi_z

        _, refined = golden_max_batch(lambda z: -value_at(z),
                                      np.array([left]), np.array([right]),
                                      tol=1e-12 * (zs[-1] - zs[0]))
        best = min(best, float(-refined[0]))
    return best


def verify_policy(policy: PricePolicy, uncertainty, u: Utility | None = None,
                  tol: float = 1e-6, n: int = 20001) -> OracleReport:
    """Check every tabulated price against exhaustive search.

    The gap at each grid value is the shortfall of the stored price's
    worst-case payoff against the grid maximum; negative shortfalls (the
    policy beating every on-grid price, possible next to a supremum) clamp
    to zero. Passes when the largest shortfall stays within tol.
    """
    u = u if u is not None else policy.utility
    if isinstance(uncertainty, BandFactory):
        band_at = uncertainty.band_for
    elif isinstance(uncertainty, Band):
        band_at = lambda _x: uncertainty
    else:
        raise ValueError(
            f"verify_policy: expected Band or BandFactory, got {type(uncertainty).__name__}"
        )

    worst_gap = 0.0
    worst_x = policy.grid[0]
    for x, p in zip(policy.grid, policy.prices):
        band = band_at(x)
        achieved = float(worst_case_payoff(p, x, band, u))
        _, best = grid_argmax_price(x, band, u, n=n)
        gap = best - achieved
        if gap > worst_gap:
            worst_gap = gap
            worst_x = x
    return OracleReport(
        passed=worst_gap <= tol,
        max_abs_gap=worst_gap,
        worst_input=worst_x,
        samples=len(policy.grid),
    )


def oracle_scenarios() -> tuple[tuple[str, object], ...]:
    """Named uncertainty models every release is expected to clear.

    Spans the fixed shift bands at representative widths, a peaked
    reference, the value-linked family, and pure interval uncertainty.
    """
    uni = make_cdf(uniform(0.0, 1.0))
    tri = make_cdf(triangular(0.0, 1.0, 0.5))
    rows: list[tuple[str, object]] = []
    for eps in (0.0, 0.05, 0.2, 0.4, 0.6):
        rows.append((f"uniform eps={eps:g}", eps_shift_band(uni, eps)))
    rows.append(("triangular(0,1,0.5) eps=0.2", eps_shift_band(tri, 0.2)))
    for eps in (0.05, 0.2):
        rows.append((f"correlated eps={eps:g}", correlated_triangular_factory(eps)))
    rows.append(("interval[0.2,0.7]", interval_band(0.2, 0.7)))
    return tuple(rows)
