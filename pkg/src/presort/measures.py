"""Measures of existing order in a sequence.

The central one is the decomposition of the input into maximal sorted
subsequences whose keys are contiguous in sorted order.  Its block-size
multiset is the canonical "sorted type" of the input; the entropy of that
multiset gives a per-input comparison budget that the adaptive sorters are
tested against.  Classical measures (inversions, max displacement, run
count) ride along for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Sequence


@dataclass(frozen=True)
class Decomposition:
    """Maximal sorted-subsequence decomposition of a sequence.

    blocks holds input positions, one tuple per block, in increasing rank
    order (block i covers the i-th slice of the sorted key order); sizes
    are the matching block lengths.  Positions within a block strictly
    increase, and at every block boundary the next block starts at a
    smaller input position than the previous block ends on, which is what
    makes each block maximal.
    """

    blocks: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return len(self.sizes)

    def size_multiset(self) -> tuple[int, ...]:
        """Canonical form: block sizes as a non-increasing tuple."""
        return tuple(sorted(self.sizes, reverse=True))


@dataclass(frozen=True)
class Profile:
    """Everything the measures module knows about one input."""

    n: int
    sizes: tuple[int, ...]  # canonical non-increasing block-size multiset
    block_count: int
    entropy: float  # bits
    bound: float  # adaptive comparison budget for this type
    inversions: int
    displacement: int
    runs: int
    distinct_keys: int


def decompose_maximal(s: Sequence) -> Decomposition:
    """Split s into its maximal sorted blocks, greedily along rank order.

    Items are ranked by (key, tag); ties inherit input order.  Walking the
    ranks, a block keeps growing while input positions increase and a new
    block starts the moment they step backwards.  The result is the unique
    maximal decomposition: no block can absorb an adjacent rank without
    breaking position order.
    """
    items = s.items
    n = len(items)
    if n == 0:
        return Decomposition(blocks=(), sizes=())
    order = sorted(range(n), key=items.__getitem__)
    blocks: list[tuple[int, ...]] = []
    current = [order[0]]
    last = order[0]
    for pos in order[1:]:
        if pos > last:
            current.append(pos)
        else:
            blocks.append(tuple(current))
            current = [pos]
        last = pos
    blocks.append(tuple(current))
    return Decomposition(blocks=tuple(blocks), sizes=tuple(len(b) for b in blocks))


def inversions(s: Sequence) -> int:
    """Number of pairs i < j with key_i > key_j (ties are not inversions).

    Merge-counting, O(n log n); tests hold it against the quadratic
    all-pairs definition.
    """
    keys = s.keys()
    total = 0
    width = 1
    n = len(keys)
    while width < n:
        merged = []
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j = lo, mid
            while i < mid and j < hi:
                if keys[i] <= keys[j]:
                    merged.append(keys[i])
                    i += 1
                else:
                    total += mid - i
                    merged.append(keys[j])
                    j += 1
            merged.extend(keys[i:mid])
            merged.extend(keys[j:hi])
        keys = merged
        width *= 2
    return total


def max_displacement(s: Sequence) -> int:
    """Largest |position - stable sorted position| over all items.

    The sorted position of an item is its rank by (key, tag), so duplicate
    keys settle in input order and contribute no artificial displacement.
    """
    items = s.items
    order = sorted(range(len(items)), key=items.__getitem__)
    return max((abs(pos - rank) for rank, pos in enumerate(order)), default=0)


def count_runs(s: Sequence) -> int:
    """Number of maximal non-decreasing contiguous runs (0 for empty)."""
    keys = s.keys()
    if not keys:
        return 0
    runs = 1
    prev = keys[0]
    for k in keys[1:]:
        if prev > k:
            runs += 1
        prev = k
    return runs


def _check_sizes(sizes, n: int) -> list[int]:
    sizes = list(sizes)
    if not sizes:
        raise ValueError("empty block-size list")
    if any(b <= 0 for b in sizes):
        raise ValueError(f"block sizes must be positive: {sizes}")
    if sum(sizes) != n:
        raise ValueError(f"block sizes sum to {sum(sizes)}, expected n={n}")
    return sizes


def entropy(sizes, n: int) -> float:
    """Entropy in bits of the block-size distribution: -sum (b/n) log2 (b/n)."""
    sizes = _check_sizes(sizes, n)
    # + 0.0 keeps the one-block case at 0.0 rather than -0.0
    return -sum(b / n * math.log2(b / n) for b in sizes) + 0.0


def entropy_bound(sizes, n: int) -> float:
    """Adaptive comparison budget for a block-size multiset.

    B = sum_i b_i * log2(n / b_i + 1) + n.  Sits within n of n*H + n:
    n*H <= B - n <= n*H + n for every valid multiset, which the property
    tests pin down.  A single sorted block gives B = 2n; n singleton
    blocks give n*log2(n+1) + n.
    """
    sizes = _check_sizes(sizes, n)
    return sum(b * math.log2(n / b + 1) for b in sizes) + n


def profile(s: Sequence) -> Profile:
    """Compute the full order profile of a sequence."""
    n = s.n
    if n == 0:
        return Profile(0, (), 0, 0.0, 0.0, 0, 0, 0, 0)
    deco = decompose_maximal(s)
    sizes = deco.size_multiset()
    return Profile(
        n=n,
        sizes=sizes,
        block_count=len(sizes),
        entropy=entropy(sizes, n),
        bound=entropy_bound(sizes, n),
        inversions=inversions(s),
        displacement=max_displacement(s),
        runs=count_runs(s),
        distinct_keys=len(set(s.keys())),
    )
