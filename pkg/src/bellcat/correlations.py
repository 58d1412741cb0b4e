"""Joint measurement statistics for two spins measured along tilted axes.

Each party measures the spin projection along its own axis and the run is
kept only when the outcomes are extremal (m = +s or m = -s); the four
conclusive outcomes are ordered

    1: (+a, +b)   2: (+a, -b)   3: (-a, +b)   4: (-a, -b).

Every diagonal element of the density matrix in that outcome basis splits
into a local contribution (from the branch dyads) and a non-local one (from
the interference dyads), and the +-1 product correlation inherits the same
split.  The closed forms below are cross-checked against a brute-force
dyad-summation oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spins import Direction, SpinQuantum, coherent_state, spin_matrices
from .states import CatState, ProductKet, density_dyads

__all__ = [
    "OutcomeBasis",
    "DiagonalElements",
    "CorrelationBreakdown",
    "DegeneratePostselectionError",
    "InternalConsistencyError",
    "outcome_basis",
    "rho_elements_oracle",
    "rho_elements_closed",
    "correlation",
    "lc_correlation_closed",
    "nlc_correlation_closed",
    "wigner_joint",
    "unrestricted_correlation",
]

# Product value assigned to each conclusive outcome, in basis order.
OUTCOME_SIGNS = (1.0, -1.0, -1.0, 1.0)

# Below this conclusive weight, postselected correlations are undefined.
WEIGHT_TOL = 1e-12

_IMAG_TOL = 1e-12


class DegeneratePostselectionError(ValueError):
    """Conclusive-outcome weight too small to condition on."""


class InternalConsistencyError(RuntimeError):
    """A quantity that must be real came out with a significant imaginary part."""


@dataclass(frozen=True)
class OutcomeBasis:
    """The four conclusive product states for axes a and b, in outcome order."""

    s: SpinQuantum
    a: Direction
    b: Direction
    kets: tuple[ProductKet, ProductKet, ProductKet, ProductKet]


def outcome_basis(s: SpinQuantum, a: Direction, b: Direction) -> OutcomeBasis:
    """Build |+a,+b>, |+a,-b>, |-a,+b>, |-a,-b> from coherent states."""
    pa = coherent_state(s, a, +1)
    ma = coherent_state(s, a, -1)
    pb = coherent_state(s, b, +1)
    mb = coherent_state(s, b, -1)
    kets = (
        ProductKet(pa, pb),
        ProductKet(pa, mb),
        ProductKet(ma, pb),
        ProductKet(ma, mb),
    )
    return OutcomeBasis(s, a, b, kets)


@dataclass(frozen=True)
class DiagonalElements:
    """Outcome probabilities split into local and non-local parts.

    lc[i] and nlc[i] are the two contributions to <i|rho|i> for outcome
    i+1 in basis order; their sums over i give the conclusive weight.
    Local entries are non-negative; non-local entries may have either sign.
    """

    lc: np.ndarray
    nlc: np.ndarray

    def __post_init__(self) -> None:
        for name in ("lc", "nlc"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (4,):
                raise ValueError(f"{name} must have shape (4,), got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def totals(self) -> np.ndarray:
        return self.lc + self.nlc

    @property
    def weight(self) -> float:
        """Total conclusive probability, the mass kept by postselection."""
        return float(self.lc.sum() + self.nlc.sum())


@dataclass(frozen=True)
class CorrelationBreakdown:
    """The +-1 product correlation and its local/non-local split.

    In raw mode inconclusive outcomes count as zero and p_total lies in
    [-1, 1]; in postselected mode all three correlation fields are divided
    by the conclusive weight.  postselect_weight always reports the raw
    conclusive weight.
    """

    p_total: float
    p_lc: float
    p_nlc: float
    postselect_weight: float
    mode: str

    def to_dict(self) -> dict:
        return {
            "p_total": self.p_total,
            "p_lc": self.p_lc,
            "p_nlc": self.p_nlc,
            "postselect_weight": self.postselect_weight,
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CorrelationBreakdown":
        return cls(
            float(data["p_total"]),
            float(data["p_lc"]),
            float(data["p_nlc"]),
            float(data["postselect_weight"]),
            str(data["mode"]),
        )


def rho_elements_oracle(state: CatState, a: Direction, b: Direction) -> DiagonalElements:
    """Diagonal elements by direct dyad summation.

    Slow reference path: expands every coherent state and sums
    <i|u><v|i> over the four dyads.  Exists to pin down phase conventions;
    production code uses rho_elements_closed.
    """
    basis = outcome_basis(state.s, a, b)
    dyads = density_dyads(state)
    lc = np.empty(4)
    nlc = np.empty(4)
    for i, ket in enumerate(basis.kets):
        for target, terms in ((lc, dyads.local), (nlc, dyads.cross)):
            val = 0.0 + 0.0j
            for weight, u, v in terms:
                val += weight * ket.overlap(u) * v.overlap(ket)
            if abs(val.imag) > _IMAG_TOL:
                raise InternalConsistencyError(
                    f"diagonal element {i + 1} has imaginary part {val.imag:.3e}"
                )
            target[i] = val.real
    return DiagonalElements(lc, nlc)


def rho_elements_closed(state: CatState, a: Direction, b: Direction) -> DiagonalElements:
    """Diagonal elements from the closed forms.

    With Ka = cos(theta_a/2)^(2s), Ga = sin(theta_a/2)^(2s) (same for b),
    w1 = |c1|^2, w2 = |c2|^2:

        lc = (w1 Ka^2 Gb^2 + w2 Ga^2 Kb^2,  w1 Ka^2 Kb^2 + w2 Ga^2 Gb^2,
              w1 Ga^2 Gb^2 + w2 Ka^2 Kb^2,  w1 Ga^2 Kb^2 + w2 Ka^2 Gb^2)

        nlc_1 = nlc_4 = sin(2 alpha) cos(2s (phi_a - phi_b) + delta) Ka Ga Kb Gb
        nlc_2 = nlc_3 = (-1)^(2s) * nlc_1

    The (-1)^(2s) factor is the geometric phase picked up when one party's
    outcome is flipped; it is what makes integer and half-integer spins
    behave differently.
    """
    two_s = state.s.two_s
    ka = math.cos(a.theta / 2.0) ** two_s
    ga = math.sin(a.theta / 2.0) ** two_s
    kb = math.cos(b.theta / 2.0) ** two_s
    gb = math.sin(b.theta / 2.0) ** two_s
    ka2, ga2, kb2, gb2 = ka * ka, ga * ga, kb * kb, gb * gb
    w1 = state.coeffs.weight1
    w2 = state.coeffs.weight2
    lc = np.array(
        [
            w1 * ka2 * gb2 + w2 * ga2 * kb2,
            w1 * ka2 * kb2 + w2 * ga2 * gb2,
            w1 * ga2 * gb2 + w2 * ka2 * kb2,
            w1 * ga2 * kb2 + w2 * ka2 * gb2,
        ]
    )
    cross = (
        state.coeffs.interference
        * math.cos(two_s * (a.phi - b.phi) + state.coeffs.delta)
        * ka * ga * kb * gb
    )
    par = state.s.parity
    nlc = np.array([cross, par * cross, par * cross, cross])
    return DiagonalElements(lc, nlc)


def _signed_sum(values: np.ndarray) -> float:
    # Fixed association (v1 - v2) + (v4 - v3) so equal-and-opposite pairs
    # cancel to exactly 0.0 in floating point.
    return (float(values[0]) - float(values[1])) + (float(values[3]) - float(values[2]))


def correlation(state: CatState, a: Direction, b: Direction,
                mode: str = "raw") -> CorrelationBreakdown:
    """Correlation of the +-1 outcome products for axes a and b.

    Parameters
    ----------
    state : CatState
    a, b : Direction
        Measurement axes of the two parties.
    mode : str
        "raw" counts inconclusive runs as zero product; "postselected"
        conditions on the conclusive outcomes by dividing through by the
        conclusive weight.

    Raises
    ------
    DegeneratePostselectionError
        In postselected mode when the conclusive weight is below WEIGHT_TOL.
    """
    if mode not in ("raw", "postselected"):
        raise ValueError(f"mode must be 'raw' or 'postselected', got {mode!r}")
    elements = rho_elements_closed(state, a, b)
    p_lc = _signed_sum(elements.lc)
    p_nlc = _signed_sum(elements.nlc)
    weight = elements.weight
    if mode == "postselected":
        if weight < WEIGHT_TOL:
            raise DegeneratePostselectionError(
                f"conclusive weight {weight:.3e} below {WEIGHT_TOL:.0e}"
            )
        p_lc /= weight
        p_nlc /= weight
    return CorrelationBreakdown(p_lc + p_nlc, p_lc, p_nlc, weight, mode)


def lc_correlation_closed(s: SpinQuantum, a: Direction, b: Direction) -> float:
    """Local part of the correlation; independent of the cat coefficients.

    Equals -(Ka^2 - Ga^2)(Kb^2 - Gb^2) with the same K, G shorthand as
    rho_elements_closed, i.e. -cos(theta_a) cos(theta_b) for s = 1/2.
    """
    two_s = s.two_s
    xa = math.cos(a.theta / 2.0) ** (2 * two_s) - math.sin(a.theta / 2.0) ** (2 * two_s)
    xb = math.cos(b.theta / 2.0) ** (2 * two_s) - math.sin(b.theta / 2.0) ** (2 * two_s)
    return -xa * xb


def nlc_correlation_closed(state: CatState, a: Direction, b: Direction) -> float:
    """Non-local part of the correlation.

    Exactly 0.0 for integer spin; for half-integer spin equals four times
    the first interference element.
    """
    if state.s.is_integer:
        return 0.0
    two_s = state.s.two_s
    ka = math.cos(a.theta / 2.0) ** two_s
    ga = math.sin(a.theta / 2.0) ** two_s
    kb = math.cos(b.theta / 2.0) ** two_s
    gb = math.sin(b.theta / 2.0) ** two_s
    cross = (
        state.coeffs.interference
        * math.cos(two_s * (a.phi - b.phi) + state.coeffs.delta)
        * ka * ga * kb * gb
    )
    return 4.0 * cross


_SIGN_INDEX = {(+1, +1): 0, (+1, -1): 1, (-1, +1): 2, (-1, -1): 3}


def wigner_joint(state: CatState, a: Direction, b: Direction,
                 sign_a: int = +1, sign_b: int = +1, part: str = "lc") -> float:
    """Joint probability of the outcome pair (sign_a at a, sign_b at b).

    part selects the local contribution alone ("lc", the probability a
    local hidden-variable mixture of the two branches would assign) or the
    full quantum value ("full").
    """
    key = (int(sign_a), int(sign_b))
    if key not in _SIGN_INDEX:
        raise ValueError(f"signs must be +1 or -1, got {key}")
    if part not in ("lc", "full"):
        raise ValueError(f"part must be 'lc' or 'full', got {part!r}")
    elements = rho_elements_closed(state, a, b)
    idx = _SIGN_INDEX[key]
    if part == "lc":
        return float(elements.lc[idx])
    return float(elements.totals[idx])


def unrestricted_correlation(state: CatState, a: Direction, b: Direction,
                             normalization: str = "raw") -> float:
    """Expectation <(S.a)(S.b)> without restricting to extremal outcomes.

    Computed directly from the spin matrices, so it holds for any cat
    coefficients.  For s >= 1 the closed result is
    -s^2 cos(theta_a) cos(theta_b); transverse spin components only
    connect m values differing by 1, and the two branches differ by 2s.
    normalization="per_s2" divides by s^2 to compare across spins.
    """
    if normalization not in ("raw", "per_s2"):
        raise ValueError(
            f"normalization must be 'raw' or 'per_s2', got {normalization!r}"
        )
    mats = spin_matrices(state.s)
    op_a = mats.along(a)
    op_b = mats.along(b)
    dim = state.s.dim
    c = state.coeffs
    psi = np.zeros((dim, dim), dtype=complex)
    psi[0, -1] = c.c1
    psi[-1, 0] = c.c2
    # <psi|(A x B)|psi> via the reshape identity (A x B) vec(M) = vec(A M B^T)
    value = np.sum(psi.conj() * (op_a @ psi @ op_b.T))
    if abs(value.imag) > _IMAG_TOL:
        raise InternalConsistencyError(
            f"unrestricted correlation has imaginary part {value.imag:.3e}"
        )
    result = float(value.real)
    if normalization == "per_s2":
        result /= state.s.s ** 2
    return result
