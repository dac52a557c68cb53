"""Deterministic SVG figures for the tabulated CSV outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .scenario import ConfigError

# Fixed viewport so repeated renders are byte-identical and diff-friendly.
FIG_WIDTH_PT = 800
FIG_HEIGHT_PT = 600
_HASH_SALT = "shotgun-figures"


def _new_axes():
    plt.rcParams["svg.hashsalt"] = _HASH_SALT
    fig, ax = plt.subplots(figsize=(FIG_WIDTH_PT / 72.0, FIG_HEIGHT_PT / 72.0))
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, out_path: str) -> None:
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)


def render_sweep(xs, prices, regimes, out_path: str) -> None:
    """Price curve with the half-value reference and regime-change markers."""
    xs = np.asarray(xs, dtype=float)
    prices = np.asarray(prices, dtype=float)
    fig, ax = _new_axes()
    ax.plot(xs, prices, color="tab:blue", label="price")
    ax.plot(xs, 0.5 * xs, color="gray", linestyle="--", label="x/2")
    seen_marker = False
    for i in range(1, len(regimes)):
        if regimes[i] != regimes[i - 1]:
            ax.axvline(xs[i], color="tab:red", linestyle=":",
                       label=None if seen_marker else "regime change")
            seen_marker = True
    ax.set_xlabel("x")
    ax.set_ylabel("price")
    ax.legend(loc="upper left")
    _save(fig, out_path)


def render_welfare(xs, phi_d, phi_c, equality_band, out_path: str) -> None:
    """Both guarantees, with the coincidence window shaded when present."""
    xs = np.asarray(xs, dtype=float)
    fig, ax = _new_axes()
    ax.plot(xs, np.asarray(phi_d, dtype=float), color="tab:blue", label="phi_d")
    ax.plot(xs, np.asarray(phi_c, dtype=float), color="tab:orange", label="phi_c")
    ax.plot(xs, 0.5 * xs, color="gray", linestyle="--", label="x/2")
    if equality_band is not None:
        ax.axvspan(equality_band[0], equality_band[1], color="tab:green",
                   alpha=0.15, label="equal guarantees")
    ax.set_xlabel("x")
    ax.set_ylabel("guarantee")
    ax.legend(loc="upper left")
    _save(fig, out_path)


def render_efficiency(xs, bad_lo, bad_hi, area, out_path: str) -> None:
    """Misallocation wedge across announcer values; NaN rows mean efficient."""
    xs = np.asarray(xs, dtype=float)
    lo = np.asarray(bad_lo, dtype=float)
    hi = np.asarray(bad_hi, dtype=float)
    fig, ax = _new_axes()
    ax.fill_between(xs, np.where(np.isnan(lo), xs, lo),
                    np.where(np.isnan(hi), xs, hi),
                    color="tab:red", alpha=0.3, label="misallocated")
    ax.plot(xs, xs, color="gray", linestyle="--", label="x_c = x_d")
    ax.set_xlabel("x_d")
    ax.set_ylabel("x_c")
    ax.set_title(f"wedge area = {area:.6g}")
    ax.legend(loc="upper left")
    _save(fig, out_path)


# ---------------------------------------------------------------------------
# rendering straight from a CSV file
# ---------------------------------------------------------------------------

def _read_rows(path: str) -> tuple[str, list[list[str]], dict[str, str]]:
    header = None
    rows: list[list[str]] = []
    footer: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, val = body.split("=", 1)
                    footer[key.strip()] = val.strip()
                continue
            if header is None:
                header = line
            else:
                rows.append(line.split(","))
    if header is None:
        raise ConfigError(f"{path}: no header row found")
    return header, rows, footer


def render_csv(in_path: str, out_path: str) -> None:
    """Detect the CSV schema by its header and render the matching figure."""
    header, rows, footer = _read_rows(in_path)
    if header == "x,price,regime":
        xs = [float(r[0]) for r in rows]
        prices = [float(r[1]) for r in rows]
        regimes = [r[2] for r in rows]
        render_sweep(xs, prices, regimes, out_path)
        return
    if header == "x,phi_d,phi_c":
        xs = [float(r[0]) for r in rows]
        phi_d = [float(r[1]) for r in rows]
        phi_c = [float(r[2]) for r in rows]
        band_text = footer.get("equality_band", "none")
        band = None
        if band_text != "none":
            lo_text, hi_text = band_text.split(",")
            band = (float(lo_text), float(hi_text))
        render_welfare(xs, phi_d, phi_c, band, out_path)
        return
    if header == "x_d,bad_lo,bad_hi":
        xs = [float(r[0]) for r in rows]
        lo = [float(r[1]) if r[1] else np.nan for r in rows]
        hi = [float(r[2]) if r[2] else np.nan for r in rows]
        area = float(footer.get("area", "nan"))
        render_efficiency(xs, lo, hi, area, out_path)
        return
    raise ConfigError(f"{in_path}: unrecognized CSV header {header!r}")
