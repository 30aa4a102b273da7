"""Dense state-vector simulation of the two-register mask-probing circuit.

The circuit is: prepare |0..0>|0..0>, Hadamard every first-register qubit,
apply the oracle as U_f |x>|y> = |x>|y + f(x) mod 2^n>, Hadamard the first
register again, measure the first register.

Exactness: every amplitude this circuit ever produces is a dyadic rational
times an integer power of sqrt(2).  Gates therefore work on exact dyadic
entries and count the 1/sqrt(2) factors separately; pairs of pending
factors collapse into exact powers of two.  The materialized `amplitudes`
view applies any odd leftover factor in floating point, while measurement
probabilities (where the factors always pair up) stay exact, so the final
distribution carries no rounding at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .bitstring import BitString
from .oracle import MaskedOracle, MaskVariant

SIMULATOR_CAP = 10  # 2^(2n) amplitudes; full runs stay under a second


class CapacityError(Exception):
    """Register width exceeds what the dense simulator will allocate."""


RngLike = Union[int, np.random.Generator, None]


def as_rng(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True)
class TrialOutcome:
    """Measured first-register string from one circuit execution."""

    k: BitString
    queries_used: int = 1


class StateVector:
    """State of the two n-qubit registers, indexed as (first, second)."""

    def __init__(self, n: int, _amps: Optional[np.ndarray] = None,
                 _pending_half: int = 0):
        if not 1 <= n <= SIMULATOR_CAP:
            raise CapacityError(f"n={n} outside simulator range 1..{SIMULATOR_CAP}")
        self.n = n
        dim = 1 << n
        if _amps is None:
            _amps = np.zeros((dim, dim), dtype=np.complex128)
            _amps[0, 0] = 1.0
        self._amps = _amps
        self._pending_half = _pending_half  # count of deferred 1/sqrt(2) factors

    @classmethod
    def from_basis(cls, n: int, x: BitString, y: BitString) -> "StateVector":
        state = cls(n)
        state._amps[0, 0] = 0.0
        state._amps[x.bits, y.bits] = 1.0
        return state

    @property
    def amplitudes(self) -> np.ndarray:
        """Materialized amplitude matrix (copies; applies deferred scaling)."""
        return self._amps * self._scale()

    def _scale(self) -> float:
        half, rem = divmod(self._pending_half, 2)
        factor = 2.0 ** (-half)
        if rem:
            factor *= np.sqrt(0.5)
        return factor

    def _settle(self) -> None:
        """Fold pending factor pairs into the array (exact powers of two)."""
        half, rem = divmod(self._pending_half, 2)
        if half:
            self._amps = self._amps * 2.0 ** (-half)
            self._pending_half = rem

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self._amps) ** 2) * 2.0 ** (-self._pending_half))

    def first_register_distribution(self) -> np.ndarray:
        """Exact Born probabilities of a first-register measurement."""
        return np.sum(np.abs(self._amps) ** 2, axis=1) * 2.0 ** (-self._pending_half)


def hadamard_first_register(state: StateVector) -> StateVector:
    """Hadamard on each first-register qubit: butterflies plus n deferred
    1/sqrt(2) factors."""
    n = state.n
    amps = state._amps.copy()
    view = amps.reshape((2,) * n + (1 << n,))
    for axis in range(n):
        lo = np.take(view, 0, axis=axis)
        hi = np.take(view, 1, axis=axis)
        total, diff = lo + hi, lo - hi
        index_lo = (slice(None),) * axis + (0,)
        index_hi = (slice(None),) * axis + (1,)
        view[index_lo] = total
        view[index_hi] = diff
    out = StateVector(n, amps, state._pending_half + n)
    out._settle()
    return out


def apply_oracle(state: StateVector, oracle: MaskedOracle) -> StateVector:
    """U_f: permute second-register values by y -> y + f(x) mod 2^n.

    One application is one oracle query regardless of superposition width.
    """
    if oracle.n != state.n:
        raise ValueError(f"oracle width {oracle.n} != register width {state.n}")
    n = state.n
    amps = np.empty_like(state._amps)
    for x in range(1 << n):
        shift = oracle.label(BitString(n, x)).bits
        amps[x] = np.roll(state._amps[x], shift)
    oracle.query_count += 1
    return StateVector(n, amps, state._pending_half)


def measure_first_register(state: StateVector, rng: RngLike = None) -> TrialOutcome:
    """Sample the first register in the computational basis (Born rule)."""
    generator = as_rng(rng)
    probs = state.first_register_distribution()
    cdf = np.cumsum(probs)
    draw = generator.random() * cdf[-1]
    k = int(np.searchsorted(cdf, draw, side="right"))
    return TrialOutcome(BitString(state.n, min(k, (1 << state.n) - 1)))


def run_trial_full(n: int, oracle: MaskedOracle, rng: RngLike = None) -> TrialOutcome:
    """One full circuit execution; costs exactly one oracle query."""
    state = StateVector(n)
    state = hadamard_first_register(state)
    state = apply_oracle(state, oracle)
    state = hadamard_first_register(state)
    return measure_first_register(state, rng)


@lru_cache(maxsize=4096)
def _bit_offsets(width: int, bits: int) -> tuple:
    """LSB offsets of the set bits of `bits`."""
    offsets = []
    while bits:
        low = bits & -bits
        offsets.append(low.bit_length() - 1)
        bits ^= low
    return tuple(offsets)


def run_trial_fast(n: int, s: BitString, variant: MaskVariant,
                   rng: RngLike = None) -> TrialOutcome:
    """Analytic sampler: k is uniform over subsets of the measurable support
    (the one-bits of s for the AND variant, of its complement for OR).

    Matches the full circuit distribution exactly and works up to n = 64.
    """
    if s.width != n:
        raise ValueError(f"mask width {s.width} != n = {n}")
    support = s.bits if variant is MaskVariant.AND_MASK else (~s).bits
    offsets = _bit_offsets(n, support)
    m = len(offsets)
    generator = as_rng(rng)
    draw = int(generator.integers(0, 1 << m)) if m else 0
    k_bits = 0
    while draw:
        low = draw & -draw
        k_bits |= 1 << offsets[low.bit_length() - 1]
        draw ^= low
    return TrialOutcome(BitString(n, k_bits))
