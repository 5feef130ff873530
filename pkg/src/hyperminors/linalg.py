"""Exact linear algebra on coefficient vectors.

Two routes, chosen by field:

* QQ: rows are scaled to primitive integer vectors and eliminated
  fraction-free (cross-multiplication followed by content removal); dense
  constant matrices use Bareiss.
* GF(p): ordinary Gaussian elimination with normalized pivots.

Sparse rows are ``dict col -> value``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .field import QQ, PrimeField, RationalField
from .poly import FormMatrix, monomials_of_degree

__all__ = [
    "NonConstantEntry",
    "InhomogeneousInput",
    "Echelon",
    "bareiss_rank",
    "exact_rank",
    "sparse_rank",
    "span_dimension",
    "coefficient_rows",
    "left_kernel",
    "rref",
]


class NonConstantEntry(ValueError):
    pass


class InhomogeneousInput(ValueError):
    pass


def _primitive(row: dict) -> dict:
    g = gcd(*row.values())
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    # sign: leading (min column) entry positive
    if row[min(row)] < 0:
        row = {c: -v for c, v in row.items()}
    return row


def _to_int_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // gcd(den, v.denominator)
    if den == 1:
        return {c: int(v) for c, v in row.items() if v}
    return {c: int(v * den) for c, v in row.items() if v}


class Echelon:
    """Incrementally built row-echelon basis of sparse vectors.

    Each stored row has a distinct pivot column (its smallest column), so the
    number of stored rows is the rank of everything added so far.
    """

    def __init__(self, field=QQ):
        self.field = field
        self.pivots: dict[int, dict] = {}
        self._modular = isinstance(field, PrimeField)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prepare(self, row):
        if self._modular:
            p = self.field.p
            return {c: v % p for c, v in row.items() if v % p}
        return _to_int_row(row)

    def reduce(self, row: dict) -> dict:
        """Reduce ``row`` until its smallest column is not a pivot column."""
        row = self._prepare(row)
        pivots = self.pivots
        if self._modular:
            p = self.field.p
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    break
                a = row[c]
                for j, v in piv.items():
                    w = (row.get(j, 0) - a * v) % p
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
            return row
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                break
            a = row[c]
            b = piv[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {j: v * ma for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - v * mb
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True iff it was independent of the basis."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        if self._modular:
            p = self.field.p
            inv = pow(row[c], -1, p)
            row = {j: v * inv % p for j, v in row.items()}
        else:
            row = _primitive(row)
        self.pivots[c] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def sparse_rank(rows, field=QQ) -> int:
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def bareiss_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def _gauss_rank_mod(matrix, p) -> int:
    a = [[v % p for v in r] for r in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], -1, p)
        row_r = [v * inv % p for v in a[rank]]
        a[rank] = row_r
        for i in range(rank + 1, nrows):
            f = a[i][col]
            if f:
                row_i = a[i]
                for j in range(col, ncols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % p
        rank += 1
    return rank


def exact_rank(m, field=None) -> int:
    """Rank of a matrix of constants.

    ``m`` is a :class:`FormMatrix` with degree-0 entries (otherwise
    :class:`NonConstantEntry`) or a nested list of numbers.
    """
    if isinstance(m, FormMatrix):
        field = field or m.ring.field
        rows = m.constant_rows()
    else:
        field = field or QQ
        rows = [[field.convert(v) for v in r] for r in m]
    if not rows or not rows[0]:
        return 0
    if isinstance(field, PrimeField):
        return _gauss_rank_mod(rows, field.p)
    return bareiss_rank([QQ.integerize(r) for r in rows])


def coefficient_rows(polys, degree=None, nvars=None, index=None):
    """Coefficient vectors of polynomials as sparse rows.

    Columns index the monomials of ``degree`` in decreasing lex order when a
    degree is given (homogeneity is then enforced); otherwise monomials are
    numbered in order of first appearance.  Returns ``(rows, index)``.
    """
    polys = list(polys)
    if index is None:
        index = {}
        if degree is not None and polys:
            n = nvars if nvars is not None else polys[0].ring.nvars
            index = {e: i for i, e in enumerate(monomials_of_degree(n, degree))}
    rows = []
    for p in polys:
        if degree is not None and not p.is_homogeneous(degree):
            raise InhomogeneousInput(f"not homogeneous of degree {degree}: {p}")
        row = {}
        for e, c in p.terms.items():
            col = index.get(e)
            if col is None:
                col = index[e] = len(index)
            row[col] = c
        rows.append(row)
    return rows, index


def span_dimension(polys, degree: int, field=None) -> int:
    """Dimension of the linear span of homogeneous forms of the given degree."""
    polys = list(polys)
    if not polys:
        return 0
    field = field or polys[0].ring.field
    rows, _ = coefficient_rows(polys, degree)
    return sparse_rank(rows, field)


def rref(rows, field=QQ) -> list[dict]:
    """Reduced row echelon form (pivot entries 1), sorted by pivot column."""
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    basis = {}
    for c in sorted(ech.pivots):
        row = ech.pivots[c]
        if isinstance(field, RationalField):
            lead = row[c]
            row = {j: Fraction(v, lead) for j, v in row.items()}
            row = {j: (v.numerator if v.denominator == 1 else v) for j, v in row.items()}
        basis[c] = dict(row)
    cols = sorted(basis, reverse=True)
    for c in cols:
        pr = basis[c]
        for other in cols:
            if other >= c:
                continue
            orow = basis[other]
            a = orow.get(c)
            if not a:
                continue
            for j, v in pr.items():
                w = field.sub(orow.get(j, 0), field.mul(a, v))
                if field.is_zero(w):
                    orow.pop(j, None)
                else:
                    orow[j] = w
    return [basis[c] for c in sorted(basis)]


def left_kernel(rows, field=QQ) -> list[dict]:
    """Basis (in RREF) of ``{c : sum_i c_i rows[i] = 0}``; vectors are dicts ``i -> c_i``."""
    rows = list(rows)
    width = 1 + max((max(r) for r in rows if r), default=-1)
    ech = Echelon(field)
    kernel = []
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[width + i] = 1
        red = ech.reduce(aug)
        if min(red) >= width:
            kernel.append({j - width: v for j, v in red.items()})
        else:
            ech.add(red)
    return rref(kernel, field)
