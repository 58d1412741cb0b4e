"""Bell-type inequality checks against pluggable correlation sources.

Every check consumes a CorrelationProvider, so the same code paths test
exact local-model predictions, full quantum values, and Monte Carlo
estimates.  A report's margin is positive when the inequality is satisfied
with room to spare and negative when violated; "violated" applies a small
tolerance so exact boundary cases do not flip on rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .correlations import (
    correlation,
    lc_correlation_closed,
    rho_elements_closed,
    wigner_joint,
)
from .spins import Direction
from .states import CatState

__all__ = [
    "CorrelationProvider",
    "InequalityReport",
    "lc_provider",
    "full_provider",
    "sampled_provider",
    "bell_check",
    "chsh_check",
    "wigner_check",
    "quadratic_check",
    "VIOLATION_TOL",
]

VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class CorrelationProvider:
    """Source of pair correlations P(a, b) and joint probabilities.

    provenance is one of "lc-only", "full", "sampled".  joint(a, b,
    sign_a, sign_b) is required by the Wigner check only and may be None
    for providers that cannot supply it.
    """

    provenance: str
    correlation: Callable[[Direction, Direction], float]
    joint: Optional[Callable[[Direction, Direction, int, int], float]] = None


def lc_provider(state: CatState) -> CorrelationProvider:
    """Predictions of the local part alone: what a classical mixture of the
    two branches would produce."""
    s = state.s

    def corr(a: Direction, b: Direction) -> float:
        return lc_correlation_closed(s, a, b)

    def joint(a: Direction, b: Direction, sign_a: int, sign_b: int) -> float:
        return wigner_joint(state, a, b, sign_a, sign_b, part="lc")

    return CorrelationProvider("lc-only", corr, joint)


def full_provider(state: CatState, mode: str = "raw") -> CorrelationProvider:
    """Exact quantum correlations, raw or postselected."""
    if mode not in ("raw", "postselected"):
        raise ValueError(f"mode must be 'raw' or 'postselected', got {mode!r}")

    def corr(a: Direction, b: Direction) -> float:
        return correlation(state, a, b, mode=mode).p_total

    def joint(a: Direction, b: Direction, sign_a: int, sign_b: int) -> float:
        p = wigner_joint(state, a, b, sign_a, sign_b, part="full")
        if mode == "postselected":
            p /= rho_elements_closed(state, a, b).weight
        return p

    return CorrelationProvider("full", corr, joint)


def sampled_provider(state: CatState, n: int, seed: int,
                     postselect: bool = False) -> CorrelationProvider:
    """Monte Carlo estimates with n draws per distinct direction pair.

    Each pair gets its own deterministic substream derived from (seed, a,
    b), so estimates for different pairs are independent and a repeated
    pair reproduces its first estimate exactly (results are cached).
    """
    from . import rng
    from .sampling import sample_outcomes

    cache: dict[tuple[float, float, float, float], object] = {}

    def stats_for(a: Direction, b: Direction):
        key = (a.theta, a.phi, b.theta, b.phi)
        hit = cache.get(key)
        if hit is None:
            pair_seed = rng.derive(seed, *key)
            hit = sample_outcomes(state, a, b, n, pair_seed, postselect=postselect)
            cache[key] = hit
        return hit

    def corr(a: Direction, b: Direction) -> float:
        return stats_for(a, b).estimate

    labels = {(+1, +1): "++", (+1, -1): "+-", (-1, +1): "-+", (-1, -1): "--"}

    def joint(a: Direction, b: Direction, sign_a: int, sign_b: int) -> float:
        stats = stats_for(a, b)
        count = stats.counts[labels[(int(sign_a), int(sign_b))]]
        denom = stats.n_conclusive if postselect else stats.n_total
        return count / denom

    return CorrelationProvider("sampled", corr, joint)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality check at one angle configuration.

    margin >= 0 means satisfied; violated is margin < -VIOLATION_TOL.  For
    "bell" and "wigner" the margin is rhs - lhs, for "chsh" it is
    2 - |combination|, and for "quadratic" it is lhs - rhs because that
    inequality bounds its left side from below.
    """

    kind: str
    lhs: float
    rhs: float
    margin: float
    violated: bool
    config: tuple[Direction, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "violated": self.violated,
            "config": [[d.theta, d.phi] for d in self.config],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "InequalityReport":
        return cls(
            str(data["kind"]),
            float(data["lhs"]),
            float(data["rhs"]),
            float(data["margin"]),
            bool(data["violated"]),
            tuple(Direction(t, p) for t, p in data["config"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "InequalityReport":
        return cls.from_dict(json.loads(text))

    def csv_header(self) -> str:
        labels = "abcd"[: len(self.config)]
        cols = [f"theta_{x},phi_{x}" for x in labels]
        return "kind," + ",".join(cols) + ",lhs,rhs,margin,violated"

    def csv_row(self) -> str:
        angles = [repr(v) for d in self.config for v in (d.theta, d.phi)]
        return ",".join(
            [self.kind, *angles, repr(self.lhs), repr(self.rhs),
             repr(self.margin), str(self.violated).lower()]
        )


def _report(kind: str, lhs: float, rhs: float, margin: float,
            config: tuple[Direction, ...]) -> InequalityReport:
    return InequalityReport(kind, lhs, rhs, margin, margin < -VIOLATION_TOL, config)


def bell_check(provider: CorrelationProvider, a: Direction, b: Direction,
               c: Direction) -> InequalityReport:
    """Three-axis inequality |P(a,b) - P(a,c)| <= 1 + P(b,c)."""
    lhs = abs(provider.correlation(a, b) - provider.correlation(a, c))
    rhs = 1.0 + provider.correlation(b, c)
    return _report("bell", lhs, rhs, rhs - lhs, (a, b, c))


def chsh_check(provider: CorrelationProvider, a: Direction, b: Direction,
               c: Direction, d: Direction) -> InequalityReport:
    """Four-axis inequality |P(a,b) + P(a,c) + P(d,b) - P(d,c)| <= 2."""
    combo = (
        provider.correlation(a, b)
        + provider.correlation(a, c)
        + provider.correlation(d, b)
        - provider.correlation(d, c)
    )
    lhs = abs(combo)
    return _report("chsh", lhs, 2.0, 2.0 - lhs, (a, b, c, d))


def wigner_check(provider: CorrelationProvider, a: Direction, b: Direction,
                 c: Direction) -> InequalityReport:
    """Joint-probability inequality P(+b,+c) <= P(+a,+b) + P(+a,+c)."""
    if provider.joint is None:
        raise ValueError(f"provider {provider.provenance!r} supplies no joint probabilities")
    lhs = provider.joint(b, c, +1, +1)
    rhs = provider.joint(a, b, +1, +1) + provider.joint(a, c, +1, +1)
    return _report("wigner", lhs, rhs, rhs - lhs, (a, b, c))


def quadratic_check(provider: CorrelationProvider, a: Direction, b: Direction,
                    c: Direction) -> InequalityReport:
    """Quadratic bound 4 |P(b,c)| >= 4 P(a,b) P(a,c).

    Unlike the linear inequalities this one bounds the lhs from below, so
    the margin is lhs - rhs.
    """
    lhs = 4.0 * abs(provider.correlation(b, c))
    rhs = 4.0 * provider.correlation(a, b) * provider.correlation(a, c)
    return _report("quadratic", lhs, rhs, lhs - rhs, (a, b, c))


_CHECKS = {
    "bell": bell_check,
    "chsh": chsh_check,
    "wigner": wigner_check,
    "quadratic": quadratic_check,
}


def check(provider: CorrelationProvider, kind: str,
          *config: Direction) -> InequalityReport:
    """Dispatch to the named check; config must carry 3 axes (4 for chsh)."""
    if kind not in _CHECKS:
        raise ValueError(f"unknown inequality kind {kind!r}")
    needed = 4 if kind == "chsh" else 3
    if len(config) != needed:
        raise ValueError(f"{kind} takes {needed} directions, got {len(config)}")
    return _CHECKS[kind](provider, *config)
