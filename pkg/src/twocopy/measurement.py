"""Beam-splitter measurements in the particle-number basis.

Each party mixes its two input modes on a beam splitter and counts
particles in the outputs.  An outcome ``(n, m)`` is mapped to a dichotomic
value by the weighting coefficient :func:`epsilon`, and the effective
measurement applied to the input modes is the basis returned by
:func:`effective_basis`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .fock import (
    LinearModeMap,
    ModePolynomial,
    fock_amplitudes,
    monomial_state,
    substitute,
)
from .states import ALICE_MODES, BOB_MODES, CompositeState, sector_basis

BALANCED_ALPHA = 1.0 / math.sqrt(2.0)
PROB_TOL = 1e-10
_SETTING_TOL = 1e-12


@dataclass(frozen=True)
class BeamSplitterSetting:
    """One party's beam splitter: amplitudes (alpha, beta) and phase angle."""

    alpha: float
    beta: float
    phase: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise ValueError("alpha and beta must lie in [0, 1]")
        if abs(self.alpha ** 2 + self.beta ** 2 - 1.0) > _SETTING_TOL:
            raise ValueError("alpha^2 + beta^2 must equal 1")

    @classmethod
    def balanced(cls, phase: float) -> "BeamSplitterSetting":
        return cls(BALANCED_ALPHA, BALANCED_ALPHA, phase)

    @classmethod
    def from_alpha(cls, alpha: float, phase: float) -> "BeamSplitterSetting":
        return cls(alpha, math.sqrt(max(0.0, 1.0 - alpha * alpha)), phase)

    @classmethod
    def from_reflectivity(cls, reflectivity: float, phase: float) -> "BeamSplitterSetting":
        """Setting with power reflectivity ``r``, i.e. alpha = sqrt(r)."""
        if not 0.0 <= reflectivity <= 1.0:
            raise ValueError("reflectivity must lie in [0, 1]")
        return cls.from_alpha(math.sqrt(reflectivity), phase)


class Outcome(NamedTuple):
    """Joint particle counts in the four output modes (c, C, d, D)."""

    n_c: int
    m_C: int
    n_d: int
    m_D: int


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probability mapping over joint outcomes at fixed settings."""

    probabilities: tuple[tuple[Outcome, float], ...]

    def __post_init__(self):
        probs = tuple(sorted((Outcome(*o), float(p)) for o, p in self.probabilities))
        if any(p < -PROB_TOL for _, p in probs):
            raise ValueError("negative probability")
        object.__setattr__(self, "probabilities", probs)

    def total(self) -> float:
        return sum(p for _, p in self.probabilities)

    def items(self) -> tuple[tuple[Outcome, float], ...]:
        return self.probabilities

    def probability(self, outcome: Iterable[int]) -> float:
        target = Outcome(*outcome)
        for o, p in self.probabilities:
            if o == target:
                return p
        return 0.0


def epsilon(n: int, m: int) -> int:
    """Dichotomic weight (-1)^(m + (m+n)(m+n+1)/2) for outcome (n, m)."""
    s = n + m
    return -1 if (m + s * (s + 1) // 2) % 2 else 1


def outcome_count(n_total: int) -> int:
    """Number of local outcome pairs (n, m) with n + m <= n_total."""
    if n_total < 0:
        raise ValueError("particle number must be nonnegative")
    return (n_total + 1) * (n_total + 2) // 2


def local_outcomes(n_total: int) -> list[tuple[int, int]]:
    """Lexicographic list of local outcomes (n, m) with n + m <= n_total."""
    return [(n, m) for n in range(n_total + 1) for m in range(n_total + 1 - n)]


def measurement_map(setting: BeamSplitterSetting,
                    inputs: tuple[str, str],
                    outputs: tuple[str, str]) -> LinearModeMap:
    """Creation-operator substitution onto the output modes.

    With inputs (a, A) and outputs (c, C):
    a† -> alpha c† + beta C†  and  A† -> e^{i phase}(beta c† - alpha C†).
    This is the inverse of the annihilation-operator mixing, so measuring
    output occupations is equivalent to projecting onto the effective basis.
    """
    a, b, ph = setting.alpha, setting.beta, np.exp(1j * setting.phase)
    matrix = np.array([[a, b * ph],
                       [b, -a * ph]])
    return LinearModeMap(tuple(inputs), tuple(outputs), matrix)


def joint_map(alice: BeamSplitterSetting, bob: BeamSplitterSetting) -> LinearModeMap:
    """Both parties' substitutions, (a,A)->(c,C) and (b,B)->(d,D)."""
    return LinearModeMap.combine(
        measurement_map(alice, ALICE_MODES, ("c", "C")),
        measurement_map(bob, BOB_MODES, ("d", "D")),
    )


@dataclass(frozen=True)
class BasisVector:
    """One effective measurement vector with its dichotomic weight."""

    outcome: tuple[int, int]
    vector: ModePolynomial
    weight: int


def effective_basis(n_total: int, setting: BeamSplitterSetting,
                    input_modes: tuple[str, str] = ALICE_MODES) -> tuple[BasisVector, ...]:
    """Effective measurement vectors on the input modes, one per outcome.

    The vector for outcome (n, m) is
    ((alpha a† + beta e^{-i phase} A†)^n / sqrt(n!))
    ((beta a† - alpha e^{-i phase} A†)^m / sqrt(m!)) |0,0>,
    obtained here as the adjoint substitution applied to the output Fock
    state.  Vectors of equal total particle number are orthonormal.
    """
    out_modes = ("_o1", "_o2")
    back = measurement_map(setting, input_modes, out_modes).adjoint()
    vectors = []
    for (n, m) in local_outcomes(n_total):
        state = monomial_state({out_modes[0]: n, out_modes[1]: m}, out_modes)
        vectors.append(BasisVector((n, m), substitute(state, back), epsilon(n, m)))
    return tuple(vectors)


def monomial_view(vector: ModePolynomial) -> dict[tuple[int, ...], complex]:
    """Raw creation-monomial coefficients of a basis vector.

    This is the unnormalized-ket convention in which printed basis tables
    are usually typeset; :func:`fock_amplitudes` gives the physical
    amplitudes instead.
    """
    return dict(vector.terms)


def joint_distribution(state: CompositeState,
                       alice: BeamSplitterSetting,
                       bob: BeamSplitterSetting) -> OutcomeDistribution:
    """Joint particle-count distribution over the four output modes."""
    mapping = joint_map(alice, bob)
    probs: dict[Outcome, float] = {}
    for weight, member in state.entries:
        if weight == 0.0:
            continue
        for occ, amp in fock_amplitudes(substitute(member, mapping)).items():
            p = weight * (amp.real ** 2 + amp.imag ** 2)
            if p > 0.0:
                key = Outcome(*occ)
                probs[key] = probs.get(key, 0.0) + p
    dist = OutcomeDistribution(tuple(probs.items()))
    total = dist.total()
    if abs(total - 1.0) > PROB_TOL:
        raise ValueError(f"distribution sums to {total}, expected 1")
    return dist


def weighted_parity(dist: OutcomeDistribution) -> float:
    """Correlation functional: sum of eps(n_c,m_C) eps(n_d,m_D) P(outcome)."""
    return sum(epsilon(o.n_c, o.m_C) * epsilon(o.n_d, o.m_D) * p
               for o, p in dist.items())


def sector_trace_product(n1: int, n2: int,
                         alice: BeamSplitterSetting,
                         bob: BeamSplitterSetting,
                         alice2: BeamSplitterSetting | None = None,
                         sign: float = 1.0) -> float:
    """Trace of the joint dichotomic observable over the (n1, n2) sector.

    Sums the correlation of every sector basis state; with ``alice2`` given,
    the Alice observable is A(alice) + sign * A(alice2).  Equals the sector
    dimension times the correlation of the sector white-noise mixture.
    """
    total = 0.0
    for member in sector_basis(n1, n2):
        composite = CompositeState(((1.0, member),), n1=n1, n2=n2)
        total += weighted_parity(joint_distribution(composite, alice, bob))
        if alice2 is not None:
            total += sign * weighted_parity(joint_distribution(composite, alice2, bob))
    return total
