"""Canonical indexing for (n, d)-symmetric hypermatrices.

A variable of the quotient ring is named by one sorted multiset per factor,
e.g. ``x[{1,2,2};{1}]``; sorting inside each block picks the representative,
so the symmetry relations never need to be stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb, prod

from .field import QQ
from .hypermatrix import Hypermatrix, IndexOutOfRange
from .poly import PolyRing

__all__ = [
    "SymProfile",
    "CanonicalIndex",
    "canonicalize",
    "canonical_indices",
    "count_variables",
    "generic_sym_hypermatrix",
    "sym_label",
    "parse_sym_label",
]


@dataclass(frozen=True)
class SymProfile:
    n: tuple
    d: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        d = tuple(int(v) for v in self.d)
        if len(n) != len(d) or not n:
            raise ValueError(f"profile needs matching nonempty n and d, got {n}, {d}")
        if any(v < 1 for v in n + d):
            raise ValueError(f"profile entries must be positive, got n={n}, d={d}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    @property
    def shape(self) -> tuple:
        return tuple(nj for nj, dj in zip(self.n, self.d) for _ in range(dj))

    @property
    def axis_blocks(self) -> tuple:
        """For each factor, the 1-based axes it occupies."""
        out, a = [], 1
        for dj in self.d:
            out.append(tuple(range(a, a + dj)))
            a += dj
        return tuple(out)

    def block_of_axis(self, axis: int) -> int:
        for j, blk in enumerate(self.axis_blocks):
            if axis in blk:
                return j
        raise IndexOutOfRange(f"axis {axis} outside 1..{sum(self.d)}")

    def after_section(self, axis: int) -> "SymProfile | None":
        """Profile of a section along ``axis``; None when no axis remains."""
        j = self.block_of_axis(axis)
        n, d = list(self.n), list(self.d)
        d[j] -= 1
        if d[j] == 0:
            del n[j], d[j]
        return SymProfile(tuple(n), tuple(d)) if n else None


CanonicalIndex = tuple  # tuple of sorted tuples, one per factor, 1-based


def count_variables(profile: SymProfile) -> int:
    return prod(comb(nj + dj - 1, dj) for nj, dj in zip(profile.n, profile.d))


def canonicalize(profile: SymProfile, raw) -> CanonicalIndex:
    """Sort each block of a raw 1-based index.

    ``raw`` is either grouped per factor (``((2,), (2, 1))``) or flat over
    all axes (``(2, 2, 1)``).
    """
    raw = tuple(raw)
    if raw and all(isinstance(r, int) for r in raw):
        groups, a = [], 0
        for dj in profile.d:
            groups.append(raw[a:a + dj])
            a += dj
        if a != len(raw):
            raise IndexOutOfRange(f"index {raw} has wrong length for {profile}")
        raw = tuple(groups)
    if len(raw) != len(profile.n):
        raise IndexOutOfRange(f"index {raw} has wrong number of blocks for {profile}")
    out = []
    for blk, nj, dj in zip(raw, profile.n, profile.d):
        blk = tuple(int(i) for i in blk)
        if len(blk) != dj or any(not 1 <= i <= nj for i in blk):
            raise IndexOutOfRange(f"block {blk} invalid for n={nj}, d={dj}")
        out.append(tuple(sorted(blk)))
    return tuple(out)


def canonical_indices(profile: SymProfile) -> list:
    """All canonical indices, lexicographically ordered."""
    per_block = [
        list(combinations_with_replacement(range(1, nj + 1), dj))
        for nj, dj in zip(profile.n, profile.d)
    ]
    return list(product(*per_block))


def sym_label(ci: CanonicalIndex, name="x") -> str:
    return f"{name}[" + ";".join("{" + ",".join(map(str, b)) + "}" for b in ci) + "]"


def parse_sym_label(label: str) -> CanonicalIndex:
    body = label[label.index("[") + 1: label.rindex("]")]
    return tuple(tuple(int(v) for v in b.strip("{}").split(",")) for b in body.split(";"))


def generic_sym_hypermatrix(profile: SymProfile, name="x", field=QQ) -> Hypermatrix:
    """The generic (n, d)-symmetric hypermatrix on ``count_variables`` variables."""
    labels = [sym_label(ci, name) for ci in canonical_indices(profile)]
    ring = PolyRing(labels, "degrevlex", field)
    gens = {lab: g for lab, g in zip(labels, ring.gens)}
    entries = []
    for raw in product(*(range(1, n + 1) for n in profile.shape)):
        entries.append(gens[sym_label(canonicalize(profile, raw), name)])
    A = Hypermatrix(profile.shape, entries, ring)
    A.profile = profile
    return A
