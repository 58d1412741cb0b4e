"""Seeded Monte Carlo emulation of joint spin measurements.

Each run draws one of five categories per shot: the four conclusive
outcome pairs in basis order, then "inconclusive" for the probability mass
the extremal-outcome postselection discards (absent for s = 1/2, where
every outcome is extremal).  Draws are inverse-CDF lookups against the
deterministic uniform stream, so a (state, angles, n, seed) tuple fixes
the counts exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .correlations import rho_elements_closed
from .spins import Direction
from .states import CatState

__all__ = [
    "CATEGORIES",
    "SampleStats",
    "PhotonEmulation",
    "NegativeProbabilityError",
    "ZeroConclusiveError",
    "UnsupportedScenarioError",
    "outcome_probabilities",
    "sample_outcomes",
    "photon_emulation",
]

CATEGORIES = ("++", "+-", "-+", "--", "inconclusive")

# Probabilities smaller than this are snapped to zero so that outcomes the
# physics forbids can never be drawn through CDF rounding.
PROB_SNAP = 1e-14

_NEG_TOL = 1e-12


class NegativeProbabilityError(ValueError):
    """A category probability is negative beyond rounding noise."""


class ZeroConclusiveError(ValueError):
    """Postselected statistics requested but every draw was inconclusive."""


class UnsupportedScenarioError(ValueError):
    """The requested emulation is defined for a different spin."""


@dataclass(frozen=True)
class SampleStats:
    """Counts and the correlation estimate from one sampling run.

    estimate averages the +-1 outcome product, counting inconclusive shots
    as zero in raw mode and discarding them in postselect mode.  stderr is
    the sample standard deviation of the averaged quantity divided by the
    square root of the number of shots entering the average.
    """

    n_total: int
    counts: dict[str, int]
    estimate: float
    stderr: float
    seed: int
    postselect: bool

    @property
    def n_conclusive(self) -> int:
        return self.n_total - self.counts["inconclusive"]

    def to_dict(self) -> dict:
        return {
            "n_total": self.n_total,
            "counts": dict(self.counts),
            "estimate": self.estimate,
            "stderr": self.stderr,
            "seed": self.seed,
            "postselect": self.postselect,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SampleStats":
        counts = {k: int(data["counts"][k]) for k in CATEGORIES}
        return cls(
            int(data["n_total"]), counts, float(data["estimate"]),
            float(data["stderr"]), int(data["seed"]), bool(data["postselect"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "SampleStats":
        return cls.from_dict(json.loads(text))


def outcome_probabilities(state: CatState, a: Direction, b: Direction) -> np.ndarray:
    """The five category probabilities for one measurement scenario.

    Entries follow CATEGORIES order.  The inconclusive entry is pinned to
    exactly 0.0 for s = 1/2.
    """
    totals = rho_elements_closed(state, a, b).totals
    probs = np.empty(5)
    for i, p in enumerate(totals):
        p = float(p)
        if p < -_NEG_TOL:
            raise NegativeProbabilityError(
                f"outcome {CATEGORIES[i]} has probability {p:.3e}"
            )
        probs[i] = 0.0 if p < PROB_SNAP else p
    if state.s.two_s == 1:
        # every outcome is extremal for s = 1/2, so nothing is discarded
        probs[4] = 0.0
    else:
        leftover = 1.0 - float(probs[:4].sum())
        if leftover < -_NEG_TOL:
            raise NegativeProbabilityError(
                f"conclusive probabilities sum to {1.0 - leftover:.17g} > 1"
            )
        probs[4] = 0.0 if leftover < PROB_SNAP else leftover
    return probs


def _draw_counts(probs: np.ndarray, n: int, seed: int) -> np.ndarray:
    cdf = np.cumsum(probs[:4])
    if probs[4] == 0.0:
        # no inconclusive mass: make the last bin swallow CDF rounding slack
        cdf[3] = 1.0
    u = rng.uniforms(seed, n)
    cats = np.searchsorted(cdf, u, side="right")
    return np.bincount(cats, minlength=5)


def _stats_from_counts(counts: np.ndarray, n: int, seed: int,
                       postselect: bool) -> SampleStats:
    signed = float(counts[0] - counts[1] - counts[2] + counts[3])
    conclusive = int(n - counts[4])
    if postselect:
        if conclusive == 0:
            raise ZeroConclusiveError("all draws were inconclusive")
        estimate = signed / conclusive
        denom = conclusive
        mean_square = 1.0
    else:
        estimate = signed / n
        denom = n
        mean_square = conclusive / n
    variance = max(mean_square - estimate * estimate, 0.0)
    if denom > 1:
        variance *= denom / (denom - 1)
    stderr = math.sqrt(variance / denom)
    count_map = {name: int(counts[i]) for i, name in enumerate(CATEGORIES)}
    return SampleStats(n, count_map, estimate, stderr, seed, postselect)


def sample_outcomes(state: CatState, a: Direction, b: Direction, n: int,
                    seed: int, postselect: bool = False) -> SampleStats:
    """Draw n measurement shots and summarize them.

    Parameters
    ----------
    state : CatState
    a, b : Direction
        Measurement axes.
    n : int
        Number of shots, at least 1.
    seed : int
        Stream seed; equal seeds reproduce counts exactly.
    postselect : bool
        When True the estimate conditions on conclusive shots.

    Raises
    ------
    ZeroConclusiveError
        In postselect mode when no shot was conclusive.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    probs = outcome_probabilities(state, a, b)
    counts = _draw_counts(probs, n, seed)
    return _stats_from_counts(counts, n, seed, postselect)


@dataclass(frozen=True)
class PhotonEmulation:
    """Spin-1 sampling summarized the way a photon-pair experiment would.

    stats.estimate is the coincidence-based correlation (the per-shot
    product, inconclusive shots counting zero).  product_estimate instead
    multiplies the two single-side intensity differences, the quantity a
    beam-splitter intensity measurement reports; the two differ because
    the product of averages is not the average product.
    """

    stats: SampleStats
    joint: tuple[float, float, float, float]
    product_estimate: float

    def to_dict(self) -> dict:
        return {
            "stats": self.stats.to_dict(),
            "joint": list(self.joint),
            "product_estimate": self.product_estimate,
        }


def photon_emulation(state: CatState, a: Direction, b: Direction, n: int,
                     seed: int) -> PhotonEmulation:
    """Sample a spin-1 cat state and report photon-experiment estimators."""
    if state.s.two_s != 2:
        raise UnsupportedScenarioError(
            f"photon pair emulation is defined for 2s=2, got 2s={state.s.two_s}"
        )
    stats = sample_outcomes(state, a, b, n, seed, postselect=False)
    c = stats.counts
    joint = tuple(c[k] / n for k in CATEGORIES[:4])
    plus_a = (c["++"] + c["+-"]) / n
    minus_a = (c["-+"] + c["--"]) / n
    plus_b = (c["++"] + c["-+"]) / n
    minus_b = (c["+-"] + c["--"]) / n
    product = (plus_a - minus_a) * (plus_b - minus_b)
    return PhotonEmulation(stats, joint, product)
