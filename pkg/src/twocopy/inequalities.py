"""Correlation functions, CHSH Bell and steering functionals, reference
closed forms, and white-noise visibility thresholds.

The correlation of a valid composite state depends on the two phase angles
only through their difference, as a trigonometric polynomial of small
degree.  The evaluator below samples the exact engine at a handful of
angles, recovers that polynomial, and caches it per (state, reflectivity),
so repeated evaluations during optimization are cheap without any
closed-form shortcuts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .measurement import (
    BALANCED_ALPHA,
    BeamSplitterSetting,
    joint_distribution,
    weighted_parity,
)
from .states import CompositeState, NoiseModel, admix, bec_pair, noon_pair

TWO_PI = 2.0 * math.pi
CLASSICAL_BOUND = 2.0
QUANTUM_BOUND = 2.0 * math.sqrt(2.0)

ANGLE_NAMES = ("phi1", "phi2", "theta1", "theta2")


class NoViolationError(RuntimeError):
    """Raised when a visibility threshold is requested without a violation."""


class NegativeRadicandError(ValueError):
    """Raised when a reference form's square-root argument is negative.

    Carries the offending radicand so callers can report it.
    """

    def __init__(self, family: str, radicand: float):
        super().__init__(f"{family}: radicand {radicand} is negative")
        self.family = family
        self.radicand = radicand


@dataclass(frozen=True)
class AngleQuad:
    """The four measurement angles, in radians."""

    phi1: float
    phi2: float
    theta1: float
    theta2: float

    def __post_init__(self):
        for name in ANGLE_NAMES:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name}={v} is not finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.phi1, self.phi2, self.theta1, self.theta2)

    def canonical(self) -> "AngleQuad":
        """Representative with every angle folded into [0, 2*pi)."""
        return AngleQuad(*(v % TWO_PI for v in self.as_tuple()))

    def replace(self, **kwargs: float) -> "AngleQuad":
        vals = dict(zip(ANGLE_NAMES, self.as_tuple()))
        vals.update(kwargs)
        return AngleQuad(**vals)


@dataclass(frozen=True)
class CorrelationVector:
    """The four correlations <A(phi_j) B(theta_k)>."""

    e11: float
    e12: float
    e21: float
    e22: float


class _TrigSeries:
    """Real trigonometric polynomial c0 + sum_k (a_k cos k*d + b_k sin k*d)."""

    __slots__ = ("c0", "cos_coeffs", "sin_coeffs")

    def __init__(self, samples: np.ndarray, degree: int):
        coeffs = np.fft.fft(samples) / len(samples)
        self.c0 = float(coeffs[0].real)
        self.cos_coeffs = [2.0 * float(coeffs[k].real) for k in range(1, degree + 1)]
        self.sin_coeffs = [-2.0 * float(coeffs[k].imag) for k in range(1, degree + 1)]

    def evaluate(self, delta: float) -> float:
        value = self.c0
        for k, (a, b) in enumerate(zip(self.cos_coeffs, self.sin_coeffs), start=1):
            value += a * math.cos(k * delta) + b * math.sin(k * delta)
        return value


def _phase_degree(state: CompositeState) -> int:
    """Bound on the Fourier degree of the correlation in phi - theta."""
    degree = 0
    for _, member in state.entries:
        exps_a = {e[2] for e in member.terms}  # A-mode exponent
        totals_1 = {e[0] + e[1] for e in member.terms}
        totals_2 = {e[2] + e[3] for e in member.terms}
        if len(totals_1) > 1 or len(totals_2) > 1:
            raise ValueError(
                "ensemble member superposes different particle-number sectors"
            )
        if exps_a:
            degree = max(degree, max(exps_a) - min(exps_a))
    return degree


@lru_cache(maxsize=512)
def _profile(state: CompositeState, alpha: float, bob_alpha: float) -> _TrigSeries:
    degree = _phase_degree(state)
    n_samples = 2 * degree + 3
    bob = BeamSplitterSetting.from_alpha(bob_alpha, 0.0)
    samples = np.empty(n_samples)
    for i in range(n_samples):
        delta = TWO_PI * i / n_samples
        alice = BeamSplitterSetting.from_alpha(alpha, delta)
        samples[i] = weighted_parity(joint_distribution(state, alice, bob))
    return _TrigSeries(samples, degree)


def correlation(state: CompositeState, alice_angle: float, bob_angle: float,
                alpha: float = BALANCED_ALPHA, bob_alpha: float | None = None) -> float:
    """<A(alice_angle) B(bob_angle)> for the given reflectivity amplitudes.

    ``alpha`` is each party's first beam-splitter amplitude; pass
    ``bob_alpha`` to give Bob a different one.  Always lies in [-1, 1].
    """
    if bob_alpha is None:
        bob_alpha = alpha
    series = _profile(state, float(alpha), float(bob_alpha))
    return series.evaluate(alice_angle - bob_angle)


def correlation_vector(state: CompositeState, q: AngleQuad,
                       alpha: float = BALANCED_ALPHA,
                       bob_alpha: float | None = None) -> CorrelationVector:
    if bob_alpha is None:
        bob_alpha = alpha
    series = _profile(state, float(alpha), float(bob_alpha))
    return CorrelationVector(
        e11=series.evaluate(q.phi1 - q.theta1),
        e12=series.evaluate(q.phi1 - q.theta2),
        e21=series.evaluate(q.phi2 - q.theta1),
        e22=series.evaluate(q.phi2 - q.theta2),
    )


def bell_value(state: CompositeState, q: AngleQuad,
               alpha: float = BALANCED_ALPHA,
               bob_alpha: float | None = None) -> float:
    """Standard CHSH combination E11 + E12 + E21 - E22 (signed)."""
    e = correlation_vector(state, q, alpha, bob_alpha)
    return e.e11 + e.e12 + e.e21 - e.e22


def steering_value(state: CompositeState, q: AngleQuad,
                   alpha: float = BALANCED_ALPHA,
                   bob_alpha: float | None = None) -> float:
    """CHSH-type steering functional built from the same correlations.

    sqrt((E11+E21)^2 + (E12+E22)^2) + sqrt((E11-E21)^2 + (E12-E22)^2);
    nonnegative, and at most 2*sqrt(2) for quantum correlations.
    """
    e = correlation_vector(state, q, alpha, bob_alpha)
    return (math.hypot(e.e11 + e.e21, e.e12 + e.e22)
            + math.hypot(e.e11 - e.e21, e.e12 - e.e22))


# --------------------------------------------------------------------------
# Reference closed forms for the three documented state families, balanced
# beam splitters.  They exist as test oracles only; nothing in the engine
# evaluates them.  Each is transcribed verbatim from its tabulated source.


def _steer_bec1(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    first = math.hypot(
        math.cos(t1 - p1) + math.cos(t1 - p2) - 2.0,
        math.cos(t2 - p1) + math.cos(t2 - p2) - 2.0,
    )
    radicand = math.sin((p1 - p2) / 2.0) ** 2 * (
        2.0 - math.cos(2.0 * t1 - p1 - p2) - math.cos(2.0 * t2 - p1 - p2)
    )
    return 0.5 * (first + math.sqrt(2.0) * math.sqrt(max(radicand, 0.0)))


def _bell_bec1(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    return 0.5 * (-math.cos(t1 - p1) - math.cos(t1 - p2)
                  - math.cos(t2 - p1) + math.cos(t2 - p2) + 2.0)


def _quarter_sine(x: float) -> float:
    return math.sin(x / 2.0) ** 4


def _steer_bec2(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    s11, s21 = _quarter_sine(p1 - t1), _quarter_sine(p2 - t1)
    s12, s22 = _quarter_sine(p1 - t2), _quarter_sine(p2 - t2)
    return math.hypot(s11 - s21, s12 - s22) + math.hypot(s11 + s21, s12 + s22)


def _bell_bec2(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    return (_quarter_sine(p1 - t1) + _quarter_sine(p2 - t1)
            + _quarter_sine(p1 - t2) - _quarter_sine(p2 - t2))


def _steer_noon(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    first = math.hypot(
        math.cos(t1 - p1) ** 2 + math.cos(t1 - p2) ** 2,
        math.cos(t2 - p1) ** 2 + math.cos(t2 - p2) ** 2,
    )
    radicand = math.sin(p1 - p2) ** 2 * (
        2.0 - math.cos(4.0 * t1 - 2.0 * (p1 + p2))
        - math.cos(4.0 * t2 - 2.0 * (p1 + p2)) - 2.0
    )
    if radicand < 0.0:
        raise NegativeRadicandError("steer_noon", radicand)
    return first + math.sqrt(radicand) / math.sqrt(2.0)


def _bell_noon(q: AngleQuad) -> float:
    p1, p2, t1, t2 = q.as_tuple()
    return (-math.sin(t1 - t2) * math.sin(t1 + t2 - 2.0 * p2)
            + math.cos(t1 - p1) ** 2 + math.cos(t2 - p1) ** 2)


_CLOSED_FORMS: dict[str, Callable[[AngleQuad], float]] = {
    "steer_bec1": _steer_bec1,
    "bell_bec1": _bell_bec1,
    "steer_bec2": _steer_bec2,
    "bell_bec2": _bell_bec2,
    "steer_noon": _steer_noon,
    "bell_noon": _bell_noon,
}

# Engine value = orientation * closed form.  The bell form of the
# single-particle condensate pair is tabulated with the opposite overall
# sign relative to the weighted-parity convention used throughout the
# engine; its |value| and maxima are unaffected.  The steer_noon form is
# excluded: its second radicand is negative on most of the angle domain
# (see NegativeRadicandError), so it cannot equal the engine anywhere.
FORM_ORIENTATION: dict[str, float] = {
    "steer_bec1": 1.0,
    "bell_bec1": -1.0,
    "steer_bec2": 1.0,
    "bell_bec2": 1.0,
    "bell_noon": 1.0,
}

CLOSED_FORM_FAMILIES = tuple(_CLOSED_FORMS)


def closed_form(family: str, q: AngleQuad) -> float:
    """Evaluate a reference closed form verbatim."""
    try:
        form = _CLOSED_FORMS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; "
                         f"choose from {CLOSED_FORM_FAMILIES}") from None
    return form(q)


def closed_form_state(family: str) -> CompositeState:
    """The composite state whose engine values the family describes."""
    if family.endswith("bec1"):
        return bec_pair(1)
    if family.endswith("bec2"):
        return bec_pair(2)
    if family.endswith("noon"):
        return noon_pair(2, 0)
    raise ValueError(f"unknown family {family!r}")


def closed_form_engine_value(family: str, q: AngleQuad) -> float:
    """Engine-side quantity matching a reference family (balanced splitters)."""
    state = closed_form_state(family)
    if family.startswith("steer"):
        return steering_value(state, q)
    return bell_value(state, q)


def verify_closed_forms(draws: int = 100, seed: int = 7) -> dict:
    """Compare engine values against every orientable reference form.

    Returns per-family maximum absolute deviations over ``draws`` uniform
    random angle quads, plus the overall maximum.
    """
    rng = np.random.default_rng(seed)
    deviations: dict[str, float] = {}
    for family, orientation in FORM_ORIENTATION.items():
        worst = 0.0
        for _ in range(draws):
            q = AngleQuad(*rng.uniform(0.0, TWO_PI, 4))
            engine = closed_form_engine_value(family, q)
            reference = orientation * closed_form(family, q)
            worst = max(worst, abs(engine - reference))
        deviations[family] = worst
    return {
        "families": deviations,
        "max_abs_deviation": max(deviations.values()),
        "draws": draws,
        "seed": seed,
    }


_OBJECTIVES: dict[str, Callable[..., float]] = {}


def objective_function(name: str) -> Callable[..., float]:
    """Look up an inequality objective by name.

    ``steering`` is the steering functional; ``bell`` and ``bell_abs`` both
    mean |bell_value| (the violation criterion is two-sided).
    """
    try:
        return _OBJECTIVES[name]
    except KeyError:
        raise ValueError(f"unknown objective {name!r}; "
                         f"choose from {sorted(_OBJECTIVES)}") from None


def _abs_bell(state, q, alpha=BALANCED_ALPHA, bob_alpha=None) -> float:
    return abs(bell_value(state, q, alpha, bob_alpha))


_OBJECTIVES.update({
    "steering": steering_value,
    "bell": _abs_bell,
    "bell_abs": _abs_bell,
})


def visibility_threshold(state: CompositeState, objective: str, q: AngleQuad,
                         alpha: float = BALANCED_ALPHA,
                         bob_alpha: float | None = None,
                         noise: NoiseModel = "factorized",
                         tol: float = 1e-9) -> float:
    """Smallest admixing probability at which the violation survives.

    Bisects the objective of ``admix(state, p, noise)`` to ``tol`` for the
    point where it equals the classical bound 2.  With the factorized noise
    model the objective is exactly linear in ``p`` for states whose parity
    observables are traceless on the per-party measurement space, so the
    result then equals 2 / objective(p=1).
    """
    func = objective_function(objective)

    def value_at(p: float) -> float:
        return func(admix(state, p, noise=noise), q, alpha, bob_alpha)

    top = value_at(1.0)
    if top <= CLASSICAL_BOUND:
        raise NoViolationError(
            f"objective at p=1 is {top:.6f}, not above {CLASSICAL_BOUND}"
        )
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if value_at(mid) >= CLASSICAL_BOUND:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
