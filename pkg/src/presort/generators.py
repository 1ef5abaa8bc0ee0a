"""Deterministic input generators for benchmarks and tests.

Every family is a pure function of its GenSpec, seed included.  Keys are
1..n except for the multiset family, which draws from 1..h with every
value present at least once.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Optional

from .core import Sequence
from .measures import decompose_maximal

log = logging.getLogger(__name__)

FAMILIES = (
    "sorted",
    "reverse",
    "random",
    "displacement",
    "transpose",
    "sorted-type",
    "multiset",
)

# How many reseeds realize_sorted_type tries before giving up.
_REALIZE_ATTEMPTS = 32


class GenerationError(RuntimeError):
    """A generator could not produce a sequence meeting its contract."""


@dataclass(frozen=True)
class GenSpec:
    """One generator request.

    k is the displacement bound (displacement family), sizes the block
    sizes (sorted-type family), h the distinct key count (multiset
    family); the rest ignore them.
    """

    family: str
    n: int
    k: Optional[int] = None
    sizes: Optional[tuple[int, ...]] = None
    h: Optional[int] = None
    seed: int = 0

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if self.family == "displacement":
            if self.k is None or not 0 <= self.k <= max(self.n - 1, 0):
                raise ValueError(f"displacement family needs 0 <= k <= n-1, got k={self.k} n={self.n}")
        elif self.family == "sorted-type":
            if not self.sizes:
                raise ValueError("sorted-type family needs a non-empty sizes tuple")
            if any(b <= 0 for b in self.sizes):
                raise ValueError(f"block sizes must be positive: {self.sizes}")
            if sum(self.sizes) != self.n:
                raise ValueError(f"block sizes sum to {sum(self.sizes)}, expected n={self.n}")
        elif self.family == "multiset":
            if self.h is None or self.n < 1 or not 1 <= self.h <= self.n:
                raise ValueError(f"multiset family needs 1 <= h <= n, got h={self.h} n={self.n}")


def generate(spec: GenSpec) -> Sequence:
    """Produce the sequence a GenSpec describes.  Same spec, same bytes."""
    spec.validate()
    n = spec.n
    if spec.family == "sorted":
        return Sequence.from_keys(range(1, n + 1))
    if spec.family == "reverse":
        return Sequence.from_keys(range(n, 0, -1))
    if spec.family == "random":
        keys = list(range(1, n + 1))
        random.Random(spec.seed).shuffle(keys)
        return Sequence.from_keys(keys)
    if spec.family == "displacement":
        return _displacement(n, spec.k, spec.seed)
    if spec.family == "transpose":
        half = n // 2
        return Sequence.from_keys(list(range(half + 1, n + 1)) + list(range(1, half + 1)))
    if spec.family == "sorted-type":
        return realize_sorted_type(spec.sizes, spec.seed)
    return _multiset(n, spec.h, spec.seed)


def _rotate_right(block: list[int], s: int) -> list[int]:
    s %= len(block)
    return block[-s:] + block[:-s] if s else block


def _displacement(n: int, k: int, seed: int) -> Sequence:
    """Sorted keys with every other (k+1)-block cyclically shifted.

    A right shift by s moves s items k+1-s slots left and the rest s slots
    right, so any 1 <= s <= k keeps displacement at most k.  The first
    block's shift is forced to 1 or k, both of which displace one element
    by exactly k, so the maximum is hit, not just bounded.
    """
    keys = list(range(1, n + 1))
    if k == 0 or n == 0:
        return Sequence.from_keys(keys)
    rng = random.Random(seed)
    width = k + 1
    for bi, lo in enumerate(range(0, n, width)):
        if bi % 2 == 1:
            continue
        block = keys[lo : lo + width]
        if len(block) < 2:
            continue
        if bi == 0:
            s = rng.choice((1, k))
        else:
            # Partial tail blocks shift within their own length.
            s = rng.randint(1, min(k, len(block) - 1))
        keys[lo : lo + width] = _rotate_right(block, s)
    return Sequence.from_keys(keys)


def _multiset(n: int, h: int, seed: int) -> Sequence:
    if n == 0:
        return Sequence.from_keys(())
    rng = random.Random(seed)
    keys = list(range(1, h + 1)) + [rng.randint(1, h) for _ in range(n - h)]
    rng.shuffle(keys)
    return Sequence.from_keys(keys)


def realize_sorted_type(sizes, seed: int = 0) -> Sequence:
    """Build a sequence whose maximal-block decomposition has these sizes.

    Block i is handed the next run of consecutive keys, the block labels
    are shuffled into a random interleaving, and each block's keys are
    written in increasing order at its label positions.  That alone can
    leave adjacent rank-blocks mergeable (the later block starting past
    the earlier one's end), so a repair loop sweeps the boundaries left to
    right, swapping the offending end pair until no boundary merges.  If a
    layout refuses to settle within n sweeps the whole thing is redone
    with the next seed; the result is always verified against
    decompose_maximal before being returned.
    """
    sizes = list(sizes)
    if not sizes or any(b <= 0 for b in sizes):
        raise ValueError(f"block sizes must be positive and non-empty: {sizes}")
    n = sum(sizes)
    want = tuple(sorted(sizes, reverse=True))
    starts = []
    acc = 0
    for b in sizes:
        starts.append(acc)
        acc += b
    for attempt in range(_REALIZE_ATTEMPTS):
        rng = random.Random(seed + attempt)
        labels = [b for b, size in enumerate(sizes) for _ in range(size)]
        rng.shuffle(labels)
        keys = [0] * n
        positions: list[list[int]] = [[] for _ in sizes]
        handed = list(starts)
        for pos, b in enumerate(labels):
            handed[b] += 1
            keys[pos] = handed[b]
            positions[b].append(pos)
        if _repair(keys, positions, n):
            got = decompose_maximal(Sequence.from_keys(keys)).size_multiset()
            if got == want:
                return Sequence.from_keys(keys)
            log.debug("sorted-type repair settled on %s instead of %s, reseeding", got, want)
        else:
            log.debug("sorted-type repair did not settle for seed %d, reseeding", seed + attempt)
    raise GenerationError(f"could not realize block sizes {want} within {_REALIZE_ATTEMPTS} seeds")


def _repair(keys: list[int], positions: list[list[int]], cap: int) -> bool:
    """Sweep rank-block boundaries, unmerging any that chain.

    Boundary b merges when block b ends before block b+1 begins; swapping
    those two endpoint items breaks the chain while keeping both blocks
    valid (each block's keys stay increasing along increasing positions).
    Returns True once a full sweep makes no swap, False after cap sweeps.
    """
    nblocks = len(positions)
    if nblocks <= 1:
        return True
    for _ in range(max(cap, 1)):
        swapped = False
        for b in range(nblocks - 1):
            left, right = positions[b], positions[b + 1]
            p, q = left[-1], right[0]
            if p < q:
                keys[p], keys[q] = keys[q], keys[p]
                left[-1], right[0] = q, p
                swapped = True
        if not swapped:
            return True
    return False
