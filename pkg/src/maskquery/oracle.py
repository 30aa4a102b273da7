"""Promise oracles: black-box functions invariant under a hidden bit mask.

An AND-masked oracle satisfies f(x) = f(y) iff x AND s = y AND s, so the
output depends only on the bits of x selected by the one-bits of s.  The
OR-masked dual satisfies g(x) = g(y) iff x OR s = y OR s and depends only
on the bits where s is zero.  Either way the function is 2^(n-m)-to-one,
where m is the number of bits it actually reads.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from .bitstring import BitString


class MaskVariant(Enum):
    AND_MASK = "and"
    OR_MASK = "or"


class PromiseViolation(Exception):
    """The structural promise on the oracle (or its claimed weight) is broken."""


TABLE_WIDTH_CAP = 20  # full truth tables only below this


def _seeded_scrambler(n: int, seed: int):
    """Reproducible bijection on n-bit integers (xorshift/odd-multiply rounds).

    Every round is invertible mod 2^n, so the whole map is a permutation;
    restricted to class representatives it is the injective labeling.
    """
    prng = random.Random(seed)
    mask = (1 << n) - 1
    mults = [prng.randrange(1, 1 << n, 2) for _ in range(2)]
    top = max(1, n - 1)
    shifts = [prng.randint(1, top) for _ in range(3)]

    def mix(v: int) -> int:
        v ^= v >> shifts[0]
        v = (v * mults[0]) & mask
        v ^= v >> shifts[1]
        v = (v * mults[1]) & mask
        v ^= v >> shifts[2]
        return v

    return mix


class MaskedOracle:
    """Metered oracle with hidden mask s; one query per evaluate() call.

    Outputs are n-bit labels, materialized lazily so wide inputs (n up to 64)
    stay cheap: f(x) = label(x AND s) for the AND variant, label(x OR s) for
    the OR variant, with label either the identity on class representatives
    ("canonical") or a seeded bijective scramble ("seeded").
    """

    def __init__(self, n: int, s: BitString, variant: MaskVariant,
                 labeling: str = "seeded", seed: Optional[int] = None):
        if s.width != n:
            raise ValueError(f"mask width {s.width} != n = {n}")
        if s.is_zeros() or s.is_ones():
            raise PromiseViolation(
                "trivial mask: all-zeros and all-ones masks are excluded")
        if labeling not in ("canonical", "seeded"):
            raise ValueError(f"unknown labeling {labeling!r}")
        if labeling == "seeded" and seed is None:
            raise ValueError("seeded labeling requires an explicit seed")
        self.n = n
        self.s = s
        self.variant = variant
        self.labeling = labeling
        self.seed = seed
        self.query_count = 0
        self._mix = _seeded_scrambler(n, seed) if labeling == "seeded" else None

    @property
    def m(self) -> int:
        """Number of bits the function reads (weight of the effective mask)."""
        if self.variant is MaskVariant.AND_MASK:
            return self.s.weight()
        return self.n - self.s.weight()

    def representative(self, x: BitString) -> BitString:
        if self.variant is MaskVariant.AND_MASK:
            return x & self.s
        return x | self.s

    def label(self, x: BitString) -> BitString:
        """Output value without metering (internal/bulk use)."""
        rep = self.representative(x)
        if self._mix is None:
            return rep
        return BitString(self.n, self._mix(rep.bits))

    def evaluate(self, x: BitString) -> BitString:
        """One metered query."""
        if x.width != self.n:
            raise ValueError(f"input width {x.width} != n = {self.n}")
        self.query_count += 1
        return self.label(x)

    def table(self) -> list:
        """Full (unmetered) truth table, index = integer value of x."""
        if self.n > TABLE_WIDTH_CAP:
            raise ValueError(f"truth table only available for n <= {TABLE_WIDTH_CAP}")
        return [self.label(BitString(self.n, x)) for x in range(1 << self.n)]

    def spec(self) -> dict:
        """Serializable description for run manifests."""
        return {
            "n": self.n,
            "s": str(self.s),
            "variant": self.variant.value,
            "labeling": self.labeling,
            "seed": self.seed,
        }

    @classmethod
    def from_spec(cls, record: dict) -> "MaskedOracle":
        return cls(
            record["n"],
            BitString.parse(record["s"]),
            MaskVariant(record["variant"]),
            record["labeling"],
            record.get("seed"),
        )


def make_oracle(n: int, s: BitString, variant: MaskVariant,
                labeling: str = "seeded", seed: Optional[int] = None) -> MaskedOracle:
    return MaskedOracle(n, s, variant, labeling, seed)


@dataclass
class PromiseCheck:
    """Result of verifying the mask promise on a full truth table."""

    holds: bool
    mask: Optional[BitString] = None
    violation: Optional[Tuple[BitString, BitString]] = None
    detail: str = ""


def verify_promise(source, n: int, claimed_m: int,
                   variant: MaskVariant = MaskVariant.AND_MASK) -> PromiseCheck:
    """Find the unique mask of the claimed weight, or report a violating pair.

    `source` is a MaskedOracle or a sequence of 2^n output values indexed by
    the integer value of x.  The sensitivity of each input bit pins the mask
    down directly: the function must change under flips of exactly the bits
    it is promised to read.
    """
    if n > TABLE_WIDTH_CAP:
        raise ValueError(f"promise verification needs a full table (n <= {TABLE_WIDTH_CAP})")
    if isinstance(source, MaskedOracle):
        table: Sequence = source.table()
    else:
        table = source
    size = 1 << n
    if len(table) != size:
        raise ValueError(f"table has {len(table)} entries, expected {size}")

    sensitive = 0
    for p in range(n):
        step = 1 << p
        for x in range(size):
            if not x & step and table[x] != table[x | step]:
                sensitive |= step
                break
    if variant is MaskVariant.AND_MASK:
        mask = BitString(n, sensitive)
    else:
        mask = ~BitString(n, sensitive)

    # Constant on each class?
    for x in range(size):
        if variant is MaskVariant.AND_MASK:
            rep = x & mask.bits
        else:
            rep = x | mask.bits
        if table[x] != table[rep]:
            return PromiseCheck(
                False,
                violation=(BitString(n, x), BitString(n, rep)),
                detail="outputs differ inside one equivalence class",
            )
    # Distinct across classes?
    seen = {}
    for x in range(size):
        if variant is MaskVariant.AND_MASK:
            rep = x & mask.bits
        else:
            rep = x | mask.bits
        if rep != x:
            continue
        value = table[rep]
        if value in seen:
            return PromiseCheck(
                False,
                violation=(BitString(n, seen[value]), BitString(n, rep)),
                detail="two distinct classes share an output value",
            )
        seen[value] = rep

    if mask.weight() != claimed_m:
        witness = _weight_mismatch_witness(table, n, mask, claimed_m, variant)
        return PromiseCheck(
            False,
            violation=witness,
            detail=(f"promise holds with mask {mask} of weight {mask.weight()}, "
                    f"not the claimed {claimed_m}"),
        )
    return PromiseCheck(True, mask=mask, detail=f"holds with mask {mask}")


def _weight_mismatch_witness(table, n, true_mask, claimed_m, variant):
    """Best-effort witness pair when the true mask weight differs from the claim.

    Too many sensitive bits: a claimed-weight mask must ignore one of them,
    and a flip of that bit changes the output.  Too few: a claimed-weight
    mask must read an insensitive bit, and a flip of it does not change the
    output.  Either flip pair contradicts the offending masks.
    """
    if variant is MaskVariant.AND_MASK:
        sensitive = true_mask.bits
    else:
        sensitive = (~true_mask).bits
    want_sensitive_flip = true_mask.weight() > claimed_m
    for p in range(n):
        step = 1 << p
        if bool(sensitive & step) != want_sensitive_flip:
            continue
        for x in range(1 << n):
            if x & step:
                continue
            changed = table[x] != table[x | step]
            if changed == want_sensitive_flip:
                return (BitString(n, x), BitString(n, x | step))
    return None


@dataclass
class QueryStats:
    """Aggregated query counts over repeated runs."""

    runs: int
    total_queries: int
    mean: float
    std_error: float


class StatsAccumulator:
    """Mergeable (count, sum, sum of squares) accumulator for query counts."""

    def __init__(self):
        self.count = 0
        self.total = 0
        self.total_sq = 0

    def add(self, queries: int) -> None:
        self.count += 1
        self.total += queries
        self.total_sq += queries * queries

    def merge(self, other: "StatsAccumulator") -> "StatsAccumulator":
        merged = StatsAccumulator()
        merged.count = self.count + other.count
        merged.total = self.total + other.total
        merged.total_sq = self.total_sq + other.total_sq
        return merged

    def to_stats(self) -> QueryStats:
        if self.count == 0:
            raise ValueError("no runs accumulated")
        mean = self.total / self.count
        if self.count > 1:
            var = (self.total_sq - self.total * self.total / self.count) / (self.count - 1)
            std_error = math.sqrt(max(var, 0.0) / self.count)
        else:
            std_error = 0.0
        return QueryStats(self.count, self.total, mean, std_error)
