"""Sparse multivariate polynomials over a named variable registry.

A :class:`PolyRing` fixes the variables (by position), the monomial order and
the coefficient field.  Polynomials are dicts ``exponent-tuple -> coeff`` with
no zero coefficients; exponent tuples are dense, one slot per ring variable.

Text form (round-trips through :func:`PolyRing.parse`)::

    x[1,1]*x[2,2] - x[1,2]*x[2,1]
    3/2*w0^2*w1 - w2 + 7

Terms are printed in decreasing monomial order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations

from .field import QQ, PrimeField, FieldMismatch

__all__ = [
    "RegistryMismatch",
    "UnassignedVariable",
    "UnknownVariable",
    "NotSquareSelection",
    "PolyRing",
    "Polynomial",
    "FormMatrix",
    "Substitution",
    "substitute",
    "minor",
    "monomials_of_degree",
    "degrevlex_key",
    "sort_polys",
    "dedup_polys",
]


class RegistryMismatch(ValueError):
    pass


class UnassignedVariable(KeyError):
    pass


class UnknownVariable(KeyError):
    pass


class NotSquareSelection(ValueError):
    pass


def degrevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def _lex_key(e):
    return e


def _order_key(order, nvars):
    if order == "degrevlex":
        return degrevlex_key
    if order == "lex":
        return _lex_key
    if isinstance(order, tuple) and order[0] == "block":
        k = order[1]
        if not 0 <= k <= nvars:
            raise ValueError(f"block split {k} outside 0..{nvars}")

        def block_key(e):
            return (degrevlex_key(e[:k]), degrevlex_key(e[k:]))

        return block_key
    raise ValueError(f"unknown monomial order {order!r}")


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in decreasing lex order.

    >>> monomials_of_degree(3, 2)
    [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    """
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


class PolyRing:
    """Variable registry + monomial order + coefficient field.

    ``order`` is ``"degrevlex"``, ``"lex"`` or ``("block", k)``; the block
    order compares the first ``k`` variables (degrevlex) before the rest
    (degrevlex), which makes it an elimination order for the prefix.
    """

    def __init__(self, names, order="degrevlex", field=QQ):
        names = tuple(str(n) for n in names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable labels: {dup}")
        self.names = names
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.order = order
        self.field = field
        self.key = _order_key(order, self.nvars)
        self.zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"PolyRing({self.nvars} vars, order={self.order!r}, field={self.field!r})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order == other.order
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.order, self.field))

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.names, order, self.field)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.names, self.order, field)

    # constructors

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero
        return Polynomial(self, {self.zero_exp: c})

    def gen(self, var) -> "Polynomial":
        i = self.var_index(var)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var_index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise UnknownVariable(var)
            return var
        try:
            return self.index[var]
        except KeyError:
            raise UnknownVariable(var) from None

    def monomial(self, exp, coeff=1):
        coeff = self.field.convert(coeff)
        if self.field.is_zero(coeff):
            return self.zero
        return Polynomial(self, {tuple(exp): coeff})

    def from_dict(self, terms):
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f.convert(c)
            if not f.is_zero(c):
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            raise RegistryMismatch("polynomial from a different registry")
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    # text

    def parse(self, text: str) -> "Polynomial":
        return _parse(text, self)

    def format_monomial(self, e) -> str:
        parts = []
        for name, a in zip(self.names, e):
            if a == 1:
                parts.append(name)
            elif a:
                parts.append(f"{name}^{a}")
        return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial; see the module docstring for the text form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree=None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def variables(self) -> list[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    # arithmetic

    def _check(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise RegistryMismatch("polynomials from different registries")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        from .field import Scalar

        if isinstance(other, Scalar):
            if other.field != self.ring.field:
                raise FieldMismatch("scalar field differs from ring field")
            return self.ring.constant(other.value)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out.get(e, 0), c)
            if f.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        f = self.ring.field
        c = f.convert(c)
        if f.is_zero(c):
            return self.ring.zero
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = f.add(out.get(e, 0), f.mul(c1, c2))
                if f.is_zero(v):
                    del out[e]
                else:
                    out[e] = v
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exp, coeff=1):
        f = self.ring.field
        coeff = f.convert(coeff)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): f.mul(c, coeff) for e, c in self.terms.items()},
        )

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def canonical_sign(self):
        """Return ``self`` or ``-self`` so that the leading coefficient is positive.

        Over GF(p) "positive" means the representative lies in ``[1, p/2]``.
        """
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        f = self.ring.field
        if isinstance(f, PrimeField):
            return -self if lc > f.p // 2 else self
        return -self if lc < 0 else self

    # evaluation / substitution

    def evaluate(self, point):
        """Evaluate at ``point`` (sequence aligned with ring variables, or dict)."""
        f = self.ring.field
        if isinstance(point, dict):
            vals = [None] * self.ring.nvars
            for k, v in point.items():
                vals[self.ring.var_index(k)] = f.convert(v)
        else:
            vals = [f.convert(v) for v in point]
        total = f.zero
        for e, c in self.terms.items():
            term = c
            for i, a in enumerate(e):
                if a:
                    if vals[i] is None:
                        raise UnassignedVariable(self.ring.names[i])
                    term = f.mul(term, vals[i] ** a if a > 1 else vals[i])
            total = f.add(total, term)
        if isinstance(f, PrimeField):
            total %= f.p
        return total

    def substitute(self, assignment, target_ring=None):
        return substitute(self, assignment, target_ring)

    # text

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            neg = not isinstance(f, PrimeField) and c < 0
            mag = -c if neg else c
            mono = self.ring.format_monomial(e)
            cs = f.to_str(mag)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"

    def sort_key(self):
        key = self.ring.key
        return tuple((key(e), c) for e, c in self.sorted_terms())


def sort_polys(polys):
    """Deterministic order: decreasing by terms under the ring's monomial order."""
    return sorted(polys, key=lambda p: p.sort_key(), reverse=True)


def dedup_polys(polys):
    """Drop zeros, canonicalize signs, deduplicate, sort."""
    seen = set()
    out = []
    for p in polys:
        if not p:
            continue
        q = p.canonical_sign()
        if q not in seen:
            seen.add(q)
            out.append(q)
    return sort_polys(out)


# substitution


class Substitution:
    """A ring map ``var -> polynomial`` with memoized monomial images.

    Reusing one instance across many polynomials (pullback of thousands of
    minors) shares the products of variable images.
    """

    def __init__(self, source: PolyRing, assignment, target_ring=None):
        self.source = source
        images = [None] * source.nvars
        for k, v in assignment.items():
            images[source.var_index(k)] = v
        ring = target_ring
        for v in images:
            if isinstance(v, Polynomial):
                if ring is None:
                    ring = v.ring
                elif v.ring != ring:
                    raise RegistryMismatch("assignment images live in different registries")
        if ring is None:
            ring = source
        self.target = ring
        self.images = [ring(v) if v is not None else None for v in images]
        self._cache = {source.zero_exp: ring.one}

    def monomial_image(self, e):
        img = self._cache.get(e)
        if img is not None:
            return img
        # peel one variable off the last nonzero slot
        i = max(j for j, a in enumerate(e) if a)
        if self.images[i] is None:
            raise UnassignedVariable(self.source.names[i])
        rest = list(e)
        rest[i] -= 1
        img = self.monomial_image(tuple(rest)) * self.images[i]
        self._cache[e] = img
        return img

    def __call__(self, p: Polynomial) -> Polynomial:
        if p.ring != self.source:
            raise RegistryMismatch("polynomial is not in the source registry")
        f = self.target.field
        out = {}
        for e, c in p.terms.items():
            c = f.convert(c)
            for e2, c2 in self.monomial_image(e).terms.items():
                v = f.add(out.get(e2, 0), f.mul(c, c2))
                if f.is_zero(v):
                    del out[e2]
                else:
                    out[e2] = v
        return Polynomial(self.target, out)


def substitute(p: Polynomial, assignment, target_ring=None) -> Polynomial:
    """Image of ``p`` under ``var -> assignment[var]``.

    Keys may be variable names or indices.  Raises :class:`UnassignedVariable`
    if a variable occurring in ``p`` has no image.
    """
    return Substitution(p.ring, assignment, target_ring)(p)


# matrices


class FormMatrix:
    """A rectangular matrix of polynomials sharing one registry."""

    def __init__(self, rows, ring: PolyRing | None = None):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        if ring is None:
            for r in rows:
                for x in r:
                    if isinstance(x, Polynomial):
                        ring = x.ring
                        break
                if ring is not None:
                    break
        if ring is None:
            raise ValueError("cannot infer registry; pass ring=")
        self.ring = ring
        self.entries = [[ring(x) for x in r] for r in rows]
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def transpose(self):
        return FormMatrix(list(map(list, zip(*self.entries))) if self.entries else [], self.ring)

    def map(self, fn):
        return FormMatrix([[fn(x) for x in r] for r in self.entries])

    def submatrix(self, rows, cols):
        return FormMatrix([[self.entries[i][j] for j in cols] for i in rows], self.ring)

    def minor(self, rows, cols) -> Polynomial:
        return minor(self, rows, cols)

    def minors(self, size: int):
        """All ``size x size`` minors (raw, unsigned-canonical, with zeros)."""
        out = []
        for rs in combinations(range(self.nrows), size):
            for cs in combinations(range(self.ncols), size):
                out.append(minor(self, rs, cs))
        return out

    def is_constant(self):
        return all(x.is_constant() for r in self.entries for x in r)

    def constant_rows(self):
        from .linalg import NonConstantEntry

        rows = []
        for r in self.entries:
            row = []
            for x in r:
                if not x.is_constant():
                    raise NonConstantEntry(str(x))
                row.append(x.constant_value())
            rows.append(row)
        return rows

    def __eq__(self, other):
        return isinstance(other, FormMatrix) and self.entries == other.entries

    def __str__(self):
        return "\n".join("[ " + ", ".join(str(x) for x in r) + " ]" for r in self.entries)

    def __repr__(self):
        return f"FormMatrix({self.nrows}x{self.ncols})"


def minor(m: FormMatrix, rows, cols) -> Polynomial:
    """Determinant of the submatrix on ``rows`` x ``cols`` (taken in increasing order).

    Laplace expansion along rows, memoized on the remaining column subset.
    """
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise NotSquareSelection(f"{len(rows)} rows vs {len(cols)} columns")
    if any(not 0 <= i < m.nrows for i in rows) or any(not 0 <= j < m.ncols for j in cols):
        raise IndexError("minor selection out of range")
    n = len(rows)
    if n == 0:
        return m.ring.one
    E = m.entries
    if n == 1:
        return E[rows[0]][cols[0]]
    if n == 2:
        (a, b), (c, d) = rows, cols
        return E[a][c] * E[b][d] - E[a][d] * E[b][c]
    memo = {}

    def det(depth, colset):
        if depth == n:
            return m.ring.one
        hit = memo.get(colset)
        if hit is not None:
            return hit
        r = rows[depth]
        total = m.ring.zero
        for pos, j in enumerate(colset):
            entry = E[r][j]
            if not entry:
                continue
            sub = det(depth + 1, colset[:pos] + colset[pos + 1:])
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[colset] = total
        return total

    return det(0, tuple(cols))


# parsing

_NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:\[[^\]]*\])?"
_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>" + _NAME + r")|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.group("num") is not None:
            tokens.append(("num", m.group("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def _parse(text: str, ring: PolyRing) -> Polynomial:
    """Recursive-descent parser for sums of products with ``^`` powers and parentheses."""
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        kind, val = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, v = take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(v)
        return base

    def atom():
        kind, val = take() if i < len(tokens) else (None, None)
        if kind == "num":
            return ring.constant(Fraction(val))
        if kind == "name":
            return ring.gen(val)
        if kind == "op" and val == "(":
            inner = expr()
            k, v = take() if i < len(tokens) else (None, None)
            if v != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -atom()
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    if not tokens:
        raise ValueError("empty polynomial text")
    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def variable_names_in(texts) -> list[str]:
    """Variable labels appearing in polynomial texts, in order of first appearance."""
    seen = {}
    for t in texts:
        for kind, val in _tokenize(t):
            if kind == "name" and val not in seen:
                seen[val] = None
    return list(seen)
