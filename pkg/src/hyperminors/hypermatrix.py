"""Hypermatrices of polynomials: sections, flattenings, d-minors, I_d.

Axis numbers and index values in the public functions are 1-based, matching
the usual mathematical notation ``A_{i_k}^{(l)}``; storage is a flat row-major
list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import comb, prod

from .field import QQ
from .groebner import IdealBasis
from .poly import FormMatrix, PolyRing, Polynomial, dedup_polys, variable_names_in

__all__ = [
    "AxisOutOfRange",
    "IndexOutOfRange",
    "InvalidAxisSubset",
    "NotVariableEntries",
    "Hypermatrix",
    "Flattening",
    "generic_hypermatrix",
    "section",
    "flatten",
    "d_minors",
    "ideal_of_minors",
    "WeakGenericReport",
    "SectionClass",
    "classify_weak_generic",
    "classify_pattern",
    "symmetric_structure",
]


class AxisOutOfRange(IndexError):
    pass


class IndexOutOfRange(IndexError):
    pass


class InvalidAxisSubset(ValueError):
    pass


class NotVariableEntries(ValueError):
    pass


class Hypermatrix:
    def __init__(self, shape, entries, ring: PolyRing):
        shape = tuple(int(n) for n in shape)
        if any(n < 1 for n in shape):
            raise ValueError(f"extents must be positive: {shape}")
        entries = [ring(e) for e in entries]
        if len(entries) != prod(shape):
            raise ValueError(f"{len(entries)} entries for shape {shape}")
        self.shape = shape
        self.entries = entries
        self.ring = ring
        self._strides = []
        s = 1
        for n in reversed(shape):
            self._strides.append(s)
            s *= n
        self._strides.reverse()

    @property
    def ndim(self):
        return len(self.shape)

    def flat_index(self, idx) -> int:
        return sum(i * s for i, s in zip(idx, self._strides))

    def __getitem__(self, idx):
        """Entry at a 0-based multi-index."""
        if len(idx) != self.ndim:
            raise IndexOutOfRange(f"index {idx} for shape {self.shape}")
        for i, n in zip(idx, self.shape):
            if not 0 <= i < n:
                raise IndexOutOfRange(f"index {idx} for shape {self.shape}")
        return self.entries[self.flat_index(idx)]

    def indices(self):
        return product(*(range(n) for n in self.shape))

    def __eq__(self, other):
        return (
            isinstance(other, Hypermatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Hypermatrix(shape={self.shape})"

    def to_matrix(self) -> FormMatrix:
        if self.ndim != 2:
            raise ValueError("to_matrix needs a 2-axis hypermatrix")
        r, c = self.shape
        return FormMatrix([self.entries[i * c:(i + 1) * c] for i in range(r)], self.ring)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "entries": [str(e) for e in self.entries]}

    @classmethod
    def from_json(cls, data, ring: PolyRing | None = None) -> "Hypermatrix":
        if isinstance(data, str):
            data = json.loads(data)
        texts = data["entries"]
        if ring is None:
            ring = PolyRing(variable_names_in(texts))
        return cls(data["shape"], [ring.parse(t) for t in texts], ring)


def generic_hypermatrix(shape, name="x", field=QQ) -> Hypermatrix:
    """Hypermatrix whose entries are distinct variables ``x[i1,...,it]`` (1-based)."""
    shape = tuple(shape)
    idxs = list(product(*(range(1, n + 1) for n in shape)))
    names = [f"{name}[{','.join(map(str, i))}]" for i in idxs]
    ring = PolyRing(names, "degrevlex", field)
    return Hypermatrix(shape, ring.gens, ring)


def section(A: Hypermatrix, axis: int, value: int) -> Hypermatrix:
    """The hypermatrix obtained by pinning index ``axis`` to ``value`` (both 1-based)."""
    if not 1 <= axis <= A.ndim:
        raise AxisOutOfRange(f"axis {axis} outside 1..{A.ndim}")
    if not 1 <= value <= A.shape[axis - 1]:
        raise IndexOutOfRange(f"value {value} outside 1..{A.shape[axis - 1]}")
    k = axis - 1
    new_shape = A.shape[:k] + A.shape[k + 1:]
    entries = []
    for idx in product(*(range(n) for n in new_shape)):
        full = idx[:k] + (value - 1,) + idx[k:]
        entries.append(A.entries[A.flat_index(full)])
    if not new_shape:
        # 0-axis hypermatrix: a single entry
        out = Hypermatrix.__new__(Hypermatrix)
        out.shape, out.entries, out.ring, out._strides = (), entries, A.ring, []
        return out
    return Hypermatrix(new_shape, entries, A.ring)


@dataclass
class Flattening:
    J1: tuple
    J2: tuple
    matrix: FormMatrix


def flatten(A: Hypermatrix, J1) -> Flattening:
    """The (J1, J2)-flattening; rows are J1 sub-indices in lexicographic order."""
    J1 = tuple(sorted(set(J1)))
    axes = tuple(range(1, A.ndim + 1))
    if not J1 or len(J1) >= A.ndim or any(a not in axes for a in J1):
        raise InvalidAxisSubset(f"J1={J1} must be a nonempty proper subset of {axes}")
    J2 = tuple(a for a in axes if a not in J1)
    rows_idx = list(product(*(range(A.shape[a - 1]) for a in J1)))
    cols_idx = list(product(*(range(A.shape[a - 1]) for a in J2)))
    rows = []
    for ri in rows_idx:
        row = []
        for ci in cols_idx:
            full = [0] * A.ndim
            for a, v in zip(J1, ri):
                full[a - 1] = v
            for a, v in zip(J2, ci):
                full[a - 1] = v
            row.append(A.entries[A.flat_index(full)])
        rows.append(row)
    return Flattening(J1, J2, FormMatrix(rows, A.ring))


def _flattening_subsets(t):
    # one representative per unordered partition: J1 contains axis 1
    for r in range(1, t):
        for J1 in combinations(range(1, t + 1), r):
            if 1 in J1:
                yield J1


def d_minors(A: Hypermatrix, d: int) -> list[Polynomial]:
    """All d-minors over all flattenings, sign-canonicalized, deduplicated, sorted."""
    if d < 1:
        raise ValueError("d must be positive")
    out = []
    for J1 in _flattening_subsets(A.ndim):
        m = flatten(A, J1).matrix
        if d > min(m.nrows, m.ncols):
            continue
        out.extend(m.minors(d))
    return dedup_polys(out)


def ideal_of_minors(A: Hypermatrix, d: int) -> IdealBasis:
    return IdealBasis(A.ring, d_minors(A, d))


# weak-generic classification


@dataclass
class SectionClass:
    axis: int
    value: int
    kind: str
    detail: dict = dc_field(default_factory=dict)

    @property
    def recognized_prime(self):
        return self.kind != "unrecognized"


@dataclass
class WeakGenericReport:
    entries_are_variables: bool
    has_unique_entry: bool
    sections_prime: bool
    unique_entry_index: tuple | None = None
    sections: list = dc_field(default_factory=list)

    @property
    def is_weak_generic(self):
        return self.entries_are_variables and self.has_unique_entry and self.sections_prime

    def as_tuple(self):
        return (self.entries_are_variables, self.has_unique_entry, self.sections_prime)

    def to_json(self):
        return {
            "entries_are_variables": self.entries_are_variables,
            "has_unique_entry": self.has_unique_entry,
            "sections_prime": self.sections_prime,
            "unique_entry_index": list(self.unique_entry_index) if self.unique_entry_index else None,
            "sections": [
                {"axis": s.axis, "value": s.value, "kind": s.kind, **s.detail} for s in self.sections
            ],
        }


def _variable_ids(A: Hypermatrix):
    ids = []
    for e in A.entries:
        if len(e.terms) != 1:
            raise NotVariableEntries(f"entry {e} is not a single variable")
        (exp, c), = e.terms.items()
        if sum(exp) != 1 or not A.ring.field.is_one(c):
            raise NotVariableEntries(f"entry {e} is not a single variable")
        ids.append(exp.index(1))
    return ids


def _pattern(A: Hypermatrix):
    """Entries as small integers, numbered by first appearance."""
    seen = {}
    return [seen.setdefault(v, len(seen)) for v in _variable_ids(A)]


def symmetric_structure(shape, pattern):
    """Detect an (n, d)-symmetric pattern.

    Returns ``(blocks, n, d)`` with ``blocks`` a list of axis groups (0-based)
    such that entries are invariant under permutations inside each group and
    distinct across orbits; ``None`` if the pattern is not of that form.
    """
    t = len(shape)
    strides = []
    s = 1
    for n in reversed(shape):
        strides.append(s)
        s *= n
    strides.reverse()
    idxs = list(product(*(range(n) for n in shape)))

    def flat(idx):
        return sum(i * st for i, st in zip(idx, strides))

    parent = list(range(t))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(t), 2):
        if shape[a] != shape[b] or find(a) == find(b):
            continue
        ok = True
        for idx in idxs:
            sw = list(idx)
            sw[a], sw[b] = sw[b], sw[a]
            if pattern[flat(idx)] != pattern[flat(sw)]:
                ok = False
                break
        if ok:
            parent[find(b)] = find(a)
    groups = {}
    for a in range(t):
        groups.setdefault(find(a), []).append(a)
    blocks = sorted(groups.values())
    label_of = {}
    for idx in idxs:
        canon = tuple(tuple(sorted(idx[a] for a in blk)) for blk in blocks)
        v = pattern[flat(idx)]
        if label_of.setdefault(canon, v) != v:
            return None
    if len(set(label_of.values())) != len(label_of):
        return None
    n = tuple(shape[blk[0]] for blk in blocks)
    d = tuple(len(blk) for blk in blocks)
    expected = prod(comb(nj + dj - 1, dj) for nj, dj in zip(n, d))
    if expected != len(label_of):
        return None
    return blocks, n, d


def _catalecticant_structure(shape, pattern):
    """Detect the pattern of a catalecticant: entry (i, beta) labeled beta + e_i."""
    from .poly import monomials_of_degree

    if len(shape) != 2:
        return None
    for transpose in (False, True):
        rows, cols = (shape[1], shape[0]) if transpose else shape
        nvars = rows
        deg = 0
        while comb(nvars - 1 + deg, nvars - 1) < cols:
            deg += 1
        if comb(nvars - 1 + deg, nvars - 1) != cols:
            continue
        betas = monomials_of_degree(nvars, deg)
        label_of = {}
        ok = True
        for i in range(rows):
            for j, beta in enumerate(betas):
                lab = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
                v = pattern[j * shape[1] + i] if transpose else pattern[i * shape[1] + j]
                if label_of.setdefault(lab, v) != v:
                    ok = False
                    break
            if not ok:
                break
        if ok and len(set(label_of.values())) == len(label_of):
            return {"n": nvars - 1, "column_degree": deg, "transposed": transpose}
    return None


def _has_minors(shape):
    return sum(1 for n in shape if n >= 2) >= 2


def classify_pattern(A: Hypermatrix, _depth=0):
    """Structural class of a variable hypermatrix whose I_2 is known to be prime.

    Returns ``(kind, detail)`` with ``kind`` one of ``trivial`` (no 2-minors:
    zero ideal), ``generic``, ``symmetric``, ``catalecticant``,
    ``weak-generic`` or ``unrecognized``.
    """
    if not _has_minors(A.shape):
        return "trivial", {}
    pat = _pattern(A)
    sym = symmetric_structure(A.shape, pat)
    if sym is not None:
        blocks, n, d = sym
        kind = "generic" if all(dj == 1 for dj in d) else "symmetric"
        return kind, {"n": list(n), "d": list(d), "blocks": [[a + 1 for a in b] for b in blocks]}
    cat = _catalecticant_structure(A.shape, pat)
    if cat is not None:
        return "catalecticant", cat
    if _depth < 4:
        rep = classify_weak_generic(A, _depth=_depth + 1)
        if rep.is_weak_generic:
            return "weak-generic", {}
    return "unrecognized", {}


def classify_weak_generic(A: Hypermatrix, _depth=0) -> WeakGenericReport:
    """Check the three conditions defining a weak generic hypermatrix.

    (1) every entry is a registry variable; (2) some entry occurs exactly
    once; (3) every section has a 2-minor ideal in a structurally recognized
    prime class.  Condition (3) is conservative: unknown structure is
    reported as ``unrecognized`` and the condition fails.
    """
    pat = _pattern(A)
    counts = {}
    for v in pat:
        counts[v] = counts.get(v, 0) + 1
    unique = None
    for idx, v in zip(A.indices(), pat):
        if counts[v] == 1:
            unique = tuple(i + 1 for i in idx)
            break
    sections = []
    cache = {}
    for axis in range(1, A.ndim + 1):
        for value in range(1, A.shape[axis - 1] + 1):
            S = section(A, axis, value)
            if S.ndim == 0:
                kind, detail = "trivial", {}
            else:
                key = (S.shape, tuple(_pattern(S)))
                if key not in cache:
                    cache[key] = classify_pattern(S, _depth)
                kind, detail = cache[key]
            sections.append(SectionClass(axis, value, kind, dict(detail)))
    return WeakGenericReport(
        entries_are_variables=True,
        has_unique_entry=unique is not None,
        sections_prime=all(s.recognized_prime for s in sections),
        unique_entry_index=unique,
        sections=sections,
    )
