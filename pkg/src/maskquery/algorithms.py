"""Mask-recovery procedures and their exact query accounting.

Quantum: repeat the one-query circuit, OR the measured strings together
(AND their complements for the OR-masked dual) until the accumulated weight
matches the promised mask weight.  Classical: a bit-interrogating binary
search for weight-1 masks, a sequential bit-by-bit scan, and a repeated
binary search that locates the one-bits one at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Union

from .analytics import ceil_log2
from .bitstring import BitString
from .oracle import MaskedOracle, MaskVariant, PromiseViolation
from .qsim import RngLike, TrialOutcome, as_rng, run_trial_fast, run_trial_full

# P(quantum accumulation unfinished after t trials) <= m * 2^-t, so a run
# that is still going after this many trials is observing a broken promise.
MAX_TRIALS_MARGIN = 1000


@dataclass
class RecoveryResult:
    """Recovered mask plus exact query bookkeeping for one run."""

    s_found: BitString
    queries: int
    trials: int = 0
    transcript: list = field(default_factory=list)


TrialSource = Union[str, Callable[[MaskedOracle, "object"], TrialOutcome]]


def _resolve_trial_source(trial_source: TrialSource) -> Callable:
    if callable(trial_source):
        return trial_source
    if trial_source == "fast":
        return lambda oracle, rng: _fast_metered(oracle, rng)
    if trial_source == "full":
        return lambda oracle, rng: run_trial_full(oracle.n, oracle, rng)
    raise ValueError(f"unknown trial source {trial_source!r}")


def _fast_metered(oracle: MaskedOracle, rng) -> TrialOutcome:
    # The analytic sampler bypasses the circuit; still bill one query.
    outcome = run_trial_fast(oracle.n, oracle.s, oracle.variant, rng)
    oracle.query_count += 1
    return outcome


def _require_and_variant(oracle: MaskedOracle) -> None:
    if oracle.variant is not MaskVariant.AND_MASK:
        raise ValueError("classical searches are defined for AND-masked oracles")


def quantum_find_s(oracle: MaskedOracle, m: int, trial_source: TrialSource = "fast",
                   rng: RngLike = None, record_transcript: bool = True) -> RecoveryResult:
    """Recover an AND mask of promised weight m by OR-accumulating trials."""
    if oracle.variant is not MaskVariant.AND_MASK:
        raise ValueError("quantum_find_s expects an AND-masked oracle")
    source = _resolve_trial_source(trial_source)
    generator = as_rng(rng)
    transcript: List[BitString] = []
    accumulated = BitString.zeros(oracle.n)
    trials = 0
    limit = MAX_TRIALS_MARGIN + 10 * m
    while accumulated.weight() < m:
        outcome = source(oracle, generator)
        trials += 1
        accumulated = accumulated | outcome.k
        if record_transcript:
            transcript.append(outcome.k)
        if accumulated.weight() > m:
            raise PromiseViolation(
                f"accumulated weight {accumulated.weight()} exceeds promised {m}")
        if trials > limit:
            raise PromiseViolation(
                f"no weight-{m} accumulation after {trials} trials; promise suspect")
    return RecoveryResult(accumulated, queries=trials, trials=trials,
                          transcript=transcript)


def quantum_find_s_or(oracle: MaskedOracle, m: int, trial_source: TrialSource = "fast",
                      rng: RngLike = None, record_transcript: bool = True) -> RecoveryResult:
    """Recover an OR mask of promised weight n - m by AND-accumulating the
    complements of measured strings."""
    if oracle.variant is not MaskVariant.OR_MASK:
        raise ValueError("quantum_find_s_or expects an OR-masked oracle")
    source = _resolve_trial_source(trial_source)
    generator = as_rng(rng)
    transcript: List[BitString] = []
    target = oracle.n - m
    accumulated = BitString.ones(oracle.n)
    trials = 0
    limit = MAX_TRIALS_MARGIN + 10 * m
    while accumulated.weight() > target:
        outcome = source(oracle, generator)
        trials += 1
        accumulated = accumulated & ~outcome.k
        if record_transcript:
            transcript.append(outcome.k)
        if accumulated.weight() < target:
            raise PromiseViolation(
                f"accumulated weight {accumulated.weight()} fell below promised {target}")
        if trials > limit:
            raise PromiseViolation(
                f"no weight-{target} accumulation after {trials} trials; promise suspect")
    return RecoveryResult(accumulated, queries=trials, trials=trials,
                          transcript=transcript)


def classical_binary_search_m1(oracle: MaskedOracle, n: int) -> RecoveryResult:
    """Locate the single one-bit by interrogating the bits of its index.

    Probe l has ones at every position whose (index - 1) has bit l-1 set;
    the comparison against f(0) reads off that bit of the answer directly.
    Always exactly 1 + ceil(log2(n)) queries, which meets the
    information-theoretic lower bound.
    """
    _require_and_variant(oracle)
    zeros = BitString.zeros(n)
    transcript = []
    f0 = oracle.evaluate(zeros)
    transcript.append((zeros, f0))
    index = 0
    for level in range(ceil_log2(n), 0, -1):
        probe = BitString.from_positions(
            n, (i for i in range(1, n + 1) if (i - 1) >> (level - 1) & 1))
        answer = oracle.evaluate(probe)
        transcript.append((probe, answer))
        if answer != f0:
            index |= 1 << (level - 1)
    if index >= n:
        raise PromiseViolation("inconsistent comparisons: located index out of range")
    return RecoveryResult(BitString.unit(n, index + 1), queries=len(transcript),
                          transcript=transcript)


def classical_sequential_search(oracle: MaskedOracle, n: int, m: int) -> RecoveryResult:
    """Decide bits left to right by comparing f at unit strings against f(0).

    Stops as soon as either the m one-bits or the n-m zero-bits are all
    found, at which point the promise forces the remaining bits.
    """
    _require_and_variant(oracle)
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    zeros = BitString.zeros(n)
    transcript = []
    f0 = oracle.evaluate(zeros)
    transcript.append((zeros, f0))
    one_positions = []
    zero_count = 0
    position = 0
    while len(one_positions) < m and zero_count < n - m:
        position += 1
        probe = BitString.unit(n, position)
        answer = oracle.evaluate(probe)
        transcript.append((probe, answer))
        if answer == f0:
            zero_count += 1
        else:
            one_positions.append(position)
    if len(one_positions) == m:
        found = BitString.from_positions(n, one_positions)
    else:
        # all zeros located: every remaining position is a one
        rest = range(position + 1, n + 1)
        found = BitString.from_positions(n, list(one_positions) + list(rest))
    return RecoveryResult(found, queries=len(transcript), transcript=transcript)


def classical_binary_search_adapted(oracle: MaskedOracle, n: int, m: int) -> RecoveryResult:
    """Locate the m one-bits one at a time, each by a binary search.

    Each round splits the still-undecided positions, probes the larger
    right part (already-found one-bits are pinned to zero in every probe),
    and keeps whichever part must contain a one-bit.  Round h ranges over
    n - h + 1 positions, so the total is at most
    1 + sum_h ceil(log2(n - h + 1)) queries.
    """
    _require_and_variant(oracle)
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    zeros = BitString.zeros(n)
    transcript = []
    f0 = oracle.evaluate(zeros)
    transcript.append((zeros, f0))
    found: List[int] = []
    for _ in range(m):
        candidates = [p for p in range(1, n + 1) if p not in found]
        while len(candidates) > 1:
            half = len(candidates) // 2
            left, right = candidates[:half], candidates[half:]
            probe = BitString.from_positions(n, right)
            answer = oracle.evaluate(probe)
            transcript.append((probe, answer))
            # answer != f0 means the probed part overlaps the mask
            candidates = right if answer != f0 else left
        found.append(candidates[0])
    return RecoveryResult(BitString.from_positions(n, found),
                          queries=len(transcript), transcript=transcript)


STRATEGIES = ("quantum", "quantum-or", "binary", "sequential", "binary-adapted")


def recover_with_budget(oracle: MaskedOracle, n: int, m: int, strategy: str,
                        rng: RngLike = None, trial_source: TrialSource = "fast",
                        record_transcript: bool = True) -> RecoveryResult:
    """Uniform entry point dispatching to the named recovery strategy."""
    if strategy == "quantum":
        return quantum_find_s(oracle, m, trial_source, rng, record_transcript)
    if strategy == "quantum-or":
        return quantum_find_s_or(oracle, m, trial_source, rng, record_transcript)
    if strategy == "binary":
        if m != 1:
            raise ValueError("binary strategy requires claimed weight m = 1; "
                             "use binary-adapted for heavier masks")
        return classical_binary_search_m1(oracle, n)
    if strategy == "sequential":
        return classical_sequential_search(oracle, n, m)
    if strategy == "binary-adapted":
        return classical_binary_search_adapted(oracle, n, m)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
