"""Release gate: twelve checks, one verdict line each.

Every test prints exactly one 'Cxx <name>: PASS|FAIL' line and then
asserts, so a verbose run reads as a checklist. Expected values come from
closed forms derived independently of the solver code; tolerances are part
of the contract and must not be loosened.
"""

import math

import numpy as np

from shotgun import (
    REGIME_APPROX_SUP,
    REGIME_BAYES_HIGH,
    REGIME_HEDGE,
    bayes_price,
    beta,
    check_shrc,
    compare_roles,
    eps_shift_band,
    identity_utility,
    interval_band,
    interval_price,
    knight_price,
    make_cdf,
    phi_chooser,
    phi_derivatives,
    phi_divider,
    efficiency_region,
    inefficiency_area,
    oracle_scenarios,
    qc_grid_check,
    sweep_policy,
    triangular,
    triangular_hedge_test,
    truncnormal,
    uniform,
    verify_policy,
    worst_case_payoff,
)
from shotgun.cli import main as cli_main

UNIFORM = make_cdf(uniform(0.0, 1.0))


def _verdict(code: str, name: str, failures: list[str]) -> None:
    print(f"{code} {name}: {'FAIL' if failures else 'PASS'}")
    assert not failures, f"{code} {name}: " + " | ".join(failures[:5])


# ---------------------------------------------------------------------------
# reference formulas, derived by hand from the model primitives
# ---------------------------------------------------------------------------


def price_formula(x: float, eps: float) -> float:
    """Optimal announcement for the uniform reference with shift width eps."""
    if eps >= 0.5:
        return 0.5 * x
    if x < 0.5 - eps:
        return x / 4 - eps / 4 + 0.125
    if x > 0.5 + eps:
        return x / 4 + eps / 4 + 0.125
    return 0.5 * x


def divider_formula(x: float, eps: float) -> float:
    """Announcer guarantee for the uniform reference."""
    if x < 0.5 - eps:
        return x * x / 4 + (0.25 + eps / 2) * x + eps * eps / 4 - eps / 4 + 1 / 16
    if x > 0.5 + eps:
        return x * x / 4 + (0.25 - eps / 2) * x + eps * eps / 4 + eps / 4 + 1 / 16
    return 0.5 * x


def chooser_formula(x: float, eps: float) -> float:
    """Responder guarantee for the uniform reference, piecewise by eps range."""
    if eps > 0.5:
        if x < 1 - eps:
            return x * x / 4 + eps * x / 2 + (1 - eps) ** 2 / 4
        if x <= eps:
            return x / 2
        return x * x / 4 + (1 - eps) * x / 2 + eps * eps / 4
    if eps > 0.25:
        if x < 0.25 - eps / 2:
            return eps * eps / 8 - eps / 2 + 9 / 32
        if x < 0.5 - eps:
            return x * x / 2 + (eps - 0.25) * x + eps * eps / 2 - 3 * eps / 4 + 5 / 16
        if x < eps:
            return x * x / 4 + eps * x / 2 + eps * eps / 4 - eps / 2 + 0.25
        if x <= 1 - eps:
            return x * x / 2 + eps * eps / 2 - eps / 2 + 0.25
        if x <= 0.5 + eps:
            return x * x / 4 + (1 - eps) * x / 2 + eps * eps / 4
        if x <= 0.75 + eps / 2:
            return x * x / 2 + (0.25 - eps) * x + eps * eps / 2 + eps / 4 + 1 / 16
        return x + eps * eps / 8 - eps / 2 - 7 / 32
    if x < 0.25 - eps / 2:
        return -3 * eps * eps / 8 - eps / 4 + 0.25
    if x < 0.25:
        return x * x / 2 + (eps - 0.25) * x - eps / 2 + 9 / 32
    if x < 0.5 - eps:
        return x * x + (eps - 0.5) * x - eps / 2 + 5 / 16
    if x <= 0.5 + eps:
        return x * x / 2 - eps * eps / 2 + 3 / 16
    if x <= 0.75:
        return x * x - (eps + 0.5) * x + eps / 2 + 5 / 16
    if x <= 0.75 + eps / 2:
        return x * x / 2 + (0.25 - eps) * x + eps / 2 + 1 / 32
    return x - 3 * eps * eps / 8 - eps / 4 - 0.25


# ---------------------------------------------------------------------------
# the twelve criteria
# ---------------------------------------------------------------------------


def test_c01_single_belief_price_closed_form():
    failures = []
    for x in np.linspace(0.0, 1.0, 101):
        got = bayes_price(float(x), UNIFORM)
        want = x / 4 + 0.125
        if abs(got - want) > 1e-6:
            failures.append(f"x={x:g}: price {got:.9f} vs {want:.9f}")
    _verdict("C01", "single-belief price x/4 + 1/8", failures)


def test_c02_robust_price_three_branches():
    failures = []
    for eps in (0.05, 0.2, 0.4):
        band = eps_shift_band(UNIFORM, eps)
        for x in np.linspace(0.0, 1.0, 101):
            got, _ = knight_price(float(x), band)
            want = price_formula(float(x), eps)
            if abs(got - want) > 1e-6:
                failures.append(f"eps={eps} x={x:g}: {got:.9f} vs {want:.9f}")
        pol = sweep_policy(band, grid_n=101)
        if abs(pol.kink_lo - (0.5 - eps)) > 1e-6:
            failures.append(f"eps={eps}: lower boundary {pol.kink_lo:.9f}")
        if abs(pol.kink_hi - (0.5 + eps)) > 1e-6:
            failures.append(f"eps={eps}: upper boundary {pol.kink_hi:.9f}")
    for eps in (0.5, 0.6, 0.8):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=41)
        if any(tag != REGIME_HEDGE for tag in pol.regimes):
            failures.append(f"eps={eps}: not all-hedge")
    _verdict("C02", "robust price, branch formulas and boundaries", failures)


def test_c03_oracle_equivalence_all_scenarios():
    failures = []
    for label, uncertainty in oracle_scenarios():
        pol = sweep_policy(uncertainty, grid_n=21)
        report = verify_policy(pol, uncertainty, tol=1e-6, n=20001)
        if not report.passed:
            failures.append(
                f"{label}: gap {report.max_abs_gap:.3g} at x={report.worst_input:g}"
            )
    _verdict("C03", "oracle equivalence across scenario list", failures)


def test_c04_announcer_guarantee_curves():
    failures = []
    for eps in (0.02, 0.4, 0.6):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=101)
        for x in np.linspace(0.0, 1.0, 101):
            got = phi_divider(float(x), pol, band)
            want = divider_formula(float(x), eps)
            if abs(got - want) > 1e-6:
                failures.append(f"eps={eps} x={x:g}: {got:.9f} vs {want:.9f}")
    for eps, want in ((0.02, 0.0576), (0.4, 0.0025)):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=11)
        got = phi_divider(0.0, pol, band)
        if abs(got - want) > 1e-6:
            failures.append(f"spot eps={eps}: {got:.9f} vs {want}")
    _verdict("C04", "announcer guarantee piecewise quadratics", failures)


def test_c05_responder_guarantee_curves():
    failures = []
    for eps in (0.02, 0.4, 0.6):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=101)
        for x in np.linspace(0.0, 1.0, 101):
            got = phi_chooser(float(x), pol, band)
            want = chooser_formula(float(x), eps)
            if abs(got - want) > 1e-4:
                failures.append(f"eps={eps} x={x:g}: {got:.9f} vs {want:.9f}")
    for eps, want in ((0.02, 0.24485), (0.4, 0.10125)):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=101)
        got = phi_chooser(0.0, pol, band)
        if abs(got - want) > 1e-4:
            failures.append(f"spot eps={eps}: {got:.9f} vs {want}")
    _verdict("C05", "responder guarantee piecewise formulas", failures)


def test_c06_role_dominance_and_equality_band():
    failures = []
    for eps in (0.0, 0.02, 0.2, 0.4, 0.6):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=101)
        curve = compare_roles(pol, band, grid_n=101)
        gaps = np.asarray(curve.phi_c) - np.asarray(curve.phi_d)
        if gaps.min() < -1e-7:
            failures.append(f"eps={eps}: announcer exceeds responder by {-gaps.min():.3g}")
        if eps <= 0.4 and curve.equality_band is not None:
            failures.append(f"eps={eps}: unexpected equality band {curve.equality_band}")
        if eps == 0.6:
            if curve.equality_band is None:
                failures.append("eps=0.6: equality band missing")
            else:
                lo, hi = curve.equality_band
                if abs(lo - 0.4) > 1e-3 or abs(hi - 0.6) > 1e-3:
                    failures.append(f"eps=0.6: band [{lo:.6f},{hi:.6f}] vs [0.4,0.6]")
    _verdict("C06", "announcer never beats responder; equality band", failures)


def test_c07_misallocation_regions_and_area():
    failures = []
    band = eps_shift_band(UNIFORM, 0.2)
    pol = sweep_policy(band, grid_n=101)
    low = efficiency_region(0.0, pol)
    if low.is_empty or abs(low.bad_lo - 0.0) > 1e-6 or abs(low.bad_hi - 0.15) > 1e-6:
        failures.append(f"x=0 region ({low.bad_lo},{low.bad_hi}) vs (0,0.15)")
    high = efficiency_region(1.0, pol)
    if high.is_empty or abs(high.bad_lo - 0.85) > 1e-6 or abs(high.bad_hi - 1.0) > 1e-6:
        failures.append(f"x=1 region ({high.bad_lo},{high.bad_hi}) vs (0.85,1)")
    for x in np.linspace(0.3, 0.7, 9):
        if not efficiency_region(float(x), pol).is_empty:
            failures.append(f"x={x:g}: expected empty region")

    # total area (1/2 - eps)^2 / 2, falling to zero at eps = 1/2
    areas = []
    for eps in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
        area = inefficiency_area(sweep_policy(eps_shift_band(UNIFORM, eps), grid_n=101))
        areas.append(area)
        want = (0.5 - eps) ** 2 / 2
        if abs(area - want) > 1e-6:
            failures.append(f"eps={eps}: area {area:.9f} vs {want:.9f}")
    if any(b > a + 1e-9 for a, b in zip(areas, areas[1:])):
        failures.append(f"areas not nonincreasing: {areas}")
    if abs(areas[-1]) > 1e-9:
        failures.append(f"eps=0.5 area {areas[-1]:.3g} != 0")
    _verdict("C07", "misallocation wedges and shrinking area", failures)


def test_c08_value_linked_triangular_family():
    failures = []
    for eps in (0.2, 0.125):
        bad = [x for x in np.linspace(0.0, 1.0, 101)
               if not triangular_hedge_test(float(x), eps)]
        if bad:
            failures.append(f"eps={eps}: hedge test false at {bad[:3]}")
    if triangular_hedge_test(0.125, 0.12):
        failures.append("eps=0.12: hedge test unexpectedly true at x=1/8")

    band = eps_shift_band(make_cdf(triangular(0.0, 1.0, 0.5)), 0.2)
    pol = sweep_policy(band, grid_n=101)
    for x in np.linspace(0.0, 1.0, 101):
        got = pol.price_at(float(x))
        if x < 0.3:
            want = x / 6 + math.sqrt(100 * x * x + 40 * x + 79) / 60 - 1 / 15
        elif x > 0.7:
            want = x / 6 - math.sqrt(100 * x * x - 240 * x + 219) / 60 + 2 / 5
        else:
            want = 0.5 * x
        if abs(got - want) > 1e-6:
            failures.append(f"x={x:g}: {got:.9f} vs {want:.9f}")
    # exact endpoint values, sqrt(79)/60 apart from rational terms
    end_lo = math.sqrt(79) / 60 - 1 / 15
    end_hi = 1 / 6 - math.sqrt(79) / 60 + 2 / 5
    if abs(pol.price_at(0.0) - end_lo) > 1e-6 or abs(end_lo - 0.08148) > 5e-5:
        failures.append(f"left endpoint {pol.price_at(0.0):.7f} vs {end_lo:.7f}")
    if abs(pol.price_at(1.0) - end_hi) > 1e-6 or abs(end_hi - 0.41853) > 5e-5:
        failures.append(f"right endpoint {pol.price_at(1.0):.7f} vs {end_hi:.7f}")
    _verdict("C08", "peaked-reference hedge test and radical prices", failures)


def test_c09_guarantee_slopes_match_finite_differences():
    failures = []
    h = 1e-5
    for eps in (0.0, 0.2):
        band = eps_shift_band(UNIFORM, eps)
        pol = sweep_policy(band, grid_n=101)
        for x in np.linspace(0.02, 0.98, 20):
            x = float(x)
            d_ann, d_resp = phi_derivatives(x, pol, band)
            fd_ann = (phi_divider(x + h, pol, band)
                      - phi_divider(x - h, pol, band)) / (2 * h)
            # quadrature noise must sit well under the h scale
            fd_resp = (phi_chooser(x + h, pol, band, quad_tol=1e-11)
                       - phi_chooser(x - h, pol, band, quad_tol=1e-11)) / (2 * h)
            if abs(d_ann - fd_ann) > 1e-4:
                failures.append(f"eps={eps} x={x:g}: announcer {d_ann:.6f} vs {fd_ann:.6f}")
            if abs(d_resp - fd_resp) > 1e-4:
                failures.append(f"eps={eps} x={x:g}: responder {d_resp:.6f} vs {fd_resp:.6f}")
    _verdict("C09", "closed-form slopes vs finite differences", failures)


def test_c10_hazard_slopes_and_payoff_shape():
    failures = []
    passing = [
        uniform(0.0, 1.0),
        triangular(0.0, 1.0, 0.25),
        triangular(0.0, 1.0, 0.5),
        triangular(0.0, 1.0, 0.75),
        truncnormal(0.0, 1.0, 0.0, 1.0),
        beta(2.0, 1.0),
    ]
    for family in passing:
        report = check_shrc(make_cdf(family))
        if not report.holds:
            failures.append(f"{family.describe()}: unexpected violations")

    heavy = check_shrc(make_cdf(beta(0.5, 1.0)))
    if heavy.holds:
        failures.append("beta(0.5,1): expected hazard-slope violations")
    elif max(heavy.violations) >= 1 / 9 + 1e-3:
        failures.append(f"beta(0.5,1): violation at {max(heavy.violations):.6f} >= 1/9")

    # the payoff curves those violations warn about are still single-peaked
    u = identity_utility()
    for eps in (0.0, 0.1):
        band = eps_shift_band(make_cdf(beta(0.5, 1.0)), eps)
        for x_d in (0.1, 0.5, 0.9):
            bad = qc_grid_check(
                lambda p: float(worst_case_payoff(p, x_d, band, u)), (0.0, 0.5)
            )
            if bad is not None:
                failures.append(f"eps={eps} x={x_d}: payoff dip at {bad[1]:.6f}")
    _verdict("C10", "hazard-slope screen with single-peak fallback", failures)


def test_c11_interval_uncertainty_rule():
    failures = []
    a, b, delta = 0.2, 0.7, 1e-6
    cases = [
        (0.0, 0.5 * a - delta, REGIME_APPROX_SUP),
        (0.1999999, 0.5 * a - delta, REGIME_APPROX_SUP),
        (0.2, 0.1, REGIME_HEDGE),
        (0.45, 0.225, REGIME_HEDGE),
        (0.7, 0.35, REGIME_HEDGE),
        (0.9, 0.35, REGIME_BAYES_HIGH),
        (1.0, 0.35, REGIME_BAYES_HIGH),
    ]
    for x, want_p, want_tag in cases:
        got_p, got_tag = interval_price(x, a, b, delta=delta)
        if got_p != want_p or got_tag != want_tag:
            failures.append(f"x={x}: ({got_p},{got_tag}) vs ({want_p},{want_tag})")

    band = interval_band(a, b)
    u = identity_utility()
    for x in (0.0, 0.1, 0.19):
        p, _ = interval_price(x, a, b, delta=delta)
        achieved = float(worst_case_payoff(p, x, band, u))
        if abs(0.5 * a - achieved) > delta + 1e-12:
            failures.append(f"x={x}: payoff {achieved:.9f} not within delta of {0.5 * a}")
    _verdict("C11", "interval rule and supremum backoff", failures)


def test_c12_deterministic_sweep_output(tmp_path, capsys):
    failures = []
    out_a = tmp_path / "first.csv"
    out_b = tmp_path / "second.csv"
    for out in (out_a, out_b):
        code = cli_main(["sweep", "--eps", "0.2", "--out", str(out)])
        if code != 0:
            failures.append(f"sweep exited {code}")
    capsys.readouterr()
    if out_a.read_bytes() != out_b.read_bytes():
        failures.append("sweep outputs differ between runs")
    _verdict("C12", "byte-identical sweep reruns", failures)
