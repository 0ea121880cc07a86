"""Constructors for two-mode condensate and N00N states, their two-copy
composites, and white-noise mixtures.

The composite convention throughout: system 1 lives on modes ``(a, b)``,
system 2 on ``(A, B)``; Alice controls ``(a, A)`` and Bob ``(b, B)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .fock import ModePolynomial, ModeMismatchError, monomial_state, tensor

SYSTEM1_MODES = ("a", "b")
SYSTEM2_MODES = ("A", "B")
COMPOSITE_MODES = ("a", "b", "A", "B")
ALICE_MODES = ("a", "A")
BOB_MODES = ("b", "B")

WEIGHT_TOL = 1e-12

NoiseModel = Literal["sector", "factorized"]


class DegenerateComponentError(ValueError):
    """Raised for a N00N state whose two components coincide (2m == N)."""


@dataclass(frozen=True)
class StateEnsemble:
    """A convex mixture of pure states over a common mode set."""

    entries: tuple[tuple[float, ModePolynomial], ...]

    def __post_init__(self):
        entries = tuple((float(w), s) for w, s in self.entries)
        if not entries:
            raise ValueError("ensemble must contain at least one entry")
        if any(w < -WEIGHT_TOL for w, _ in entries):
            raise ValueError("ensemble weights must be nonnegative")
        total = sum(w for w, _ in entries)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"ensemble weights sum to {total}, expected 1")
        modes = entries[0][1].modes
        for w, s in entries:
            if s.modes != modes:
                raise ModeMismatchError("all ensemble members must share one mode set")
            if w > WEIGHT_TOL and not s.is_normalized(1e-10):
                raise ValueError("ensemble members must be normalized")
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class CompositeState:
    """Two systems split between Alice and Bob, possibly mixed.

    ``n1`` and ``n2`` are the particle numbers of the signal sector (system 1
    on modes a,b and system 2 on modes A,B).  Noise entries added by
    :func:`admix` with the factorized model may live outside that sector;
    ``sector_pure`` records whether every entry obeys it.
    """

    entries: tuple[tuple[float, ModePolynomial], ...]
    n1: int
    n2: int
    alice: tuple[str, str] = ALICE_MODES
    bob: tuple[str, str] = BOB_MODES
    sector_pure: bool = True

    def __post_init__(self):
        StateEnsemble(self.entries)  # weight/normalization validation
        for _, s in self.entries:
            if s.modes != COMPOSITE_MODES:
                raise ModeMismatchError(f"composite states use modes {COMPOSITE_MODES}")
        if self.sector_pure:
            for _, s in self.entries:
                for (ea, eb, eA, eB) in s.terms:
                    if ea + eb != self.n1 or eA + eB != self.n2:
                        raise ValueError(
                            f"monomial {(ea, eb, eA, eB)} violates sector "
                            f"(n1={self.n1}, n2={self.n2})"
                        )

    @property
    def n_total(self) -> int:
        return self.n1 + self.n2

    def is_pure(self) -> bool:
        return len(self.entries) == 1


def bec_state(n: int, modes: tuple[str, str] = SYSTEM1_MODES) -> ModePolynomial:
    """Zero-temperature noninteracting condensate of ``n`` bosons split
    symmetrically over two modes: (1/sqrt(2))^n sum_k sqrt(C(n,k)) |k, n-k>.
    """
    if n < 0:
        raise ValueError("particle number must be nonnegative")
    terms = {}
    for k in range(n + 1):
        amp = math.sqrt(math.comb(n, k)) / 2 ** (n / 2)
        terms[(k, n - k)] = amp / math.sqrt(math.factorial(k) * math.factorial(n - k))
    return ModePolynomial(tuple(modes), terms)


def noon_state(n: int, m: int = 0,
               modes: tuple[str, str] = SYSTEM1_MODES) -> ModePolynomial:
    """Generalized N00N state (|n-m, m> + |m, n-m>)/sqrt(2)."""
    if n <= 0 or m < 0:
        raise ValueError("need n > 0 and m >= 0")
    if 2 * m == n:
        raise DegenerateComponentError(
            f"components |{n - m},{m}> and |{m},{n - m}> coincide"
        )
    amp = 1.0 / math.sqrt(2.0)
    terms = {}
    for occ in ((n - m, m), (m, n - m)):
        terms[occ] = amp / math.sqrt(math.factorial(occ[0]) * math.factorial(occ[1]))
    return ModePolynomial(tuple(modes), terms)


def two_copy(s1: ModePolynomial, s2: ModePolynomial) -> CompositeState:
    """Tensor a system-1 state on (a,b) with a system-2 state on (A,B)."""
    if s1.modes != SYSTEM1_MODES:
        raise ModeMismatchError(f"first factor must use modes {SYSTEM1_MODES}")
    if s2.modes != SYSTEM2_MODES:
        raise ModeMismatchError(f"second factor must use modes {SYSTEM2_MODES}")
    n1 = s1.particle_number()
    n2 = s2.particle_number()
    if n1 is None or n2 is None:
        raise ValueError("each factor must have a fixed particle number")
    if not (s1.is_normalized(1e-10) and s2.is_normalized(1e-10)):
        raise ValueError("factors must be normalized")
    return CompositeState(((1.0, tensor(s1, s2)),), n1=n1, n2=n2)


def bec_pair(n1: int, n2: int | None = None) -> CompositeState:
    """Convenience: two_copy of condensate states with n1 and n2 bosons."""
    if n2 is None:
        n2 = n1
    return two_copy(bec_state(n1, SYSTEM1_MODES), bec_state(n2, SYSTEM2_MODES))


def noon_pair(n: int, m: int = 0) -> CompositeState:
    """Convenience: two_copy of identical N00N states."""
    return two_copy(noon_state(n, m, SYSTEM1_MODES), noon_state(n, m, SYSTEM2_MODES))


def sector_basis(n1: int, n2: int) -> list[ModePolynomial]:
    """The (n1+1)(n2+1) product Fock states |k, n1-k> (x) |l, n2-l>."""
    out = []
    for k in range(n1 + 1):
        for l in range(n2 + 1):
            out.append(monomial_state(
                {"a": k, "b": n1 - k, "A": l, "B": n2 - l}, COMPOSITE_MODES))
    return out


def white_noise_ensemble(n1: int, n2: int) -> StateEnsemble:
    """Uniform mixture over the fixed-number sector (n1, n2)."""
    if n1 < 0 or n2 < 0:
        raise ValueError("particle numbers must be nonnegative")
    basis = sector_basis(n1, n2)
    w = 1.0 / len(basis)
    return StateEnsemble(tuple((w, s) for s in basis))


def factorized_noise_basis(n_total: int) -> list[ModePolynomial]:
    """Product Fock states over the two parties' truncated measurement spaces:
    all |i, j>_(a,A) (x) |k, l>_(b,B) with i+j <= n_total and k+l <= n_total.
    """
    out = []
    for i in range(n_total + 1):
        for j in range(n_total + 1 - i):
            for k in range(n_total + 1):
                for l in range(n_total + 1 - k):
                    out.append(monomial_state(
                        {"a": i, "b": k, "A": j, "B": l}, COMPOSITE_MODES))
    return out


def factorized_noise_ensemble(n_total: int) -> StateEnsemble:
    """Uniform mixture over the factorized per-party measurement space.

    On this space the weighted-parity observables of both parties are
    traceless whenever the per-party outcome-space trace vanishes, which is
    what makes inequality values scale linearly under admixture.
    """
    basis = factorized_noise_basis(n_total)
    w = 1.0 / len(basis)
    return StateEnsemble(tuple((w, s) for s in basis))


def admix(state: CompositeState, p: float,
          noise: NoiseModel = "sector") -> CompositeState:
    """Mix a composite state with white noise: weight ``p`` on the state and
    ``1 - p`` spread uniformly over the chosen noise basis.

    ``noise="sector"`` depolarizes within the fixed-number sector
    ((n1+1)(n2+1) basis states); ``noise="factorized"`` depolarizes over the
    two parties' truncated measurement spaces, which is the model under which
    violation values scale exactly linearly in ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"admixing probability {p} outside [0, 1]")
    if noise == "sector":
        basis = sector_basis(state.n1, state.n2)
    elif noise == "factorized":
        basis = factorized_noise_basis(state.n_total)
    else:
        raise ValueError(f"unknown noise model {noise!r}")
    w = (1.0 - p) / len(basis)
    entries = tuple((p * ws, s) for ws, s in state.entries)
    entries += tuple((w, s) for s in basis)
    entries = tuple((ws, s) for ws, s in entries if ws > 0.0)
    has_noise = p < 1.0
    sector_pure = state.sector_pure and (noise == "sector" or not has_noise)
    return CompositeState(entries, n1=state.n1, n2=state.n2,
                          sector_pure=sector_pure)
