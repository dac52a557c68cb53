"""Plain-text scenario files: key = value lines that drive the CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .bands import correlated_triangular_factory, eps_shift_band, interval_band
from .distributions import (
    DistFamily,
    beta,
    make_cdf,
    triangular,
    truncnormal,
    uniform,
)
from .payoff import Utility, cara_utility, identity_utility
from .solver import PricePolicy, sweep_policy


class ConfigError(ValueError):
    """A scenario file problem the user can fix: bad key, value, or combo."""


_MODES = ("iid", "correlated", "interval")
_UTILITIES = ("identity", "cara")

_FAMILIES = {
    "uniform": (uniform, 2),
    "triangular": (triangular, 3),
    "truncnormal": (truncnormal, 4),
    "beta": (beta, 2),
}

_DIST_RE = re.compile(r"^([a-z_]+)\s*\((.*)\)$")


@dataclass(frozen=True)
class Scenario:
    """Everything a CLI run needs: the uncertainty model and numeric knobs."""

    dist: DistFamily
    eps: float = 0.2
    mode: str = "iid"
    utility: str = "identity"
    rho: float = 1.0
    a: float = 0.2
    b: float = 0.7
    grid_n: int = 101
    tol: float = 1e-10
    quad_tol: float = 1e-8
    delta: float = 1e-6

    def make_utility(self) -> Utility:
        if self.utility == "identity":
            return identity_utility()
        return cara_utility(self.rho)

    def make_uncertainty(self):
        ref = make_cdf(self.dist)
        if self.mode == "iid":
            return eps_shift_band(ref, self.eps)
        if self.mode == "interval":
            return interval_band(self.a, self.b, support=ref.support)
        return correlated_triangular_factory(self.eps, support=ref.support)

    def make_policy(self, grid_n: int | None = None) -> PricePolicy:
        return sweep_policy(
            self.make_uncertainty(),
            u=self.make_utility(),
            grid_n=grid_n if grid_n is not None else self.grid_n,
            tol=self.tol,
            delta=self.delta,
        )


def default_scenario() -> Scenario:
    return Scenario(dist=uniform(0.0, 1.0))


def _parse_dist(value: str, lineno: int) -> DistFamily:
    m = _DIST_RE.match(value)
    if not m:
        raise ConfigError(
            f"line {lineno}: dist must look like name(arg,...), got {value!r}"
        )
    name, arg_text = m.group(1), m.group(2)
    if name not in _FAMILIES:
        raise ConfigError(
            f"line {lineno}: unknown distribution family {name!r} "
            f"(choices: {', '.join(sorted(_FAMILIES))})"
        )
    ctor, arity = _FAMILIES[name]
    parts = [p.strip() for p in arg_text.split(",")] if arg_text.strip() else []
    if len(parts) != arity:
        raise ConfigError(
            f"line {lineno}: {name} takes {arity} parameters, got {len(parts)}"
        )
    try:
        args = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"line {lineno}: non-numeric parameter in {value!r}") from None
    family = ctor(*args)
    try:
        make_cdf(family)
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: {exc}") from None
    return family


def _parse_float(key: str, value: str, lineno: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} needs a number, got {value!r}") from None


def _parse_int(key: str, value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} needs an integer, got {value!r}") from None


def parse_scenario(text: str) -> Scenario:
    """Parse key = value lines into a Scenario; # starts a comment."""
    scn = default_scenario()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "dist":
            scn = replace(scn, dist=_parse_dist(value, lineno))
        elif key == "eps":
            scn = replace(scn, eps=_parse_float(key, value, lineno))
        elif key == "mode":
            if value not in _MODES:
                raise ConfigError(
                    f"line {lineno}: mode must be one of {', '.join(_MODES)}, got {value!r}"
                )
            scn = replace(scn, mode=value)
        elif key == "utility":
            if value not in _UTILITIES:
                raise ConfigError(
                    f"line {lineno}: utility must be one of {', '.join(_UTILITIES)}, "
                    f"got {value!r}"
                )
            scn = replace(scn, utility=value)
        elif key == "rho":
            scn = replace(scn, rho=_parse_float(key, value, lineno))
        elif key == "a":
            scn = replace(scn, a=_parse_float(key, value, lineno))
        elif key == "b":
            scn = replace(scn, b=_parse_float(key, value, lineno))
        elif key == "grid_n":
            scn = replace(scn, grid_n=_parse_int(key, value, lineno))
        elif key == "tol":
            scn = replace(scn, tol=_parse_float(key, value, lineno))
        elif key == "quad_tol":
            scn = replace(scn, quad_tol=_parse_float(key, value, lineno))
        elif key == "delta":
            scn = replace(scn, delta=_parse_float(key, value, lineno))
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    validate_scenario(scn)
    return scn


def validate_scenario(scn: Scenario) -> None:
    """Cross-field checks, also applied after CLI flag overrides."""
    if scn.eps < 0:
        raise ConfigError(f"eps must be nonnegative, got {scn.eps:g}")
    if scn.grid_n < 2:
        raise ConfigError(f"grid_n must be at least 2, got {scn.grid_n}")
    for name in ("tol", "quad_tol", "delta"):
        val = getattr(scn, name)
        if not val > 0:
            raise ConfigError(f"{name} must be positive, got {val:g}")
    if scn.utility == "cara" and not scn.rho > 0:
        raise ConfigError(f"rho must be positive for cara utility, got {scn.rho:g}")
    if scn.mode == "interval":
        lo, hi = make_cdf(scn.dist).support
        if not (lo <= scn.a <= scn.b <= hi):
            raise ConfigError(
                f"interval mode needs {lo:g} <= a <= b <= {hi:g}, "
                f"got a={scn.a:g}, b={scn.b:g}"
            )


def load_scenario(path: str) -> Scenario:
    """Read and parse a scenario file, tagging errors with the file name."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_scenario(text)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
