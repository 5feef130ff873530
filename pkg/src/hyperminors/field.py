"""Exact coefficient fields: the rationals and prime fields GF(p).

Polynomials store raw coefficients (``int``/``Fraction`` over QQ, ``int`` in
``[0, p)`` over GF(p)) and delegate arithmetic to a field object, which keeps
the hot loops free of wrapper allocations.  :class:`Scalar` is the boxed,
operator-friendly value for user code and tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

__all__ = [
    "FieldError",
    "DivisionByZero",
    "FieldMismatch",
    "RationalField",
    "PrimeField",
    "QQ",
    "GF",
    "DEFAULT_PRIME",
    "SECOND_PRIME",
    "parse_field",
    "Scalar",
]

# Largest prime below 2^31, and the next one down (fallback on unlucky reduction).
DEFAULT_PRIME = 2147483647
SECOND_PRIME = 2147483629

MIN_PRIME = 1 << 20


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError, TypeError):
    pass


class RationalField:
    """The field QQ.  Values are ``int`` or ``Fraction`` in lowest terms."""

    name = "QQ"
    characteristic = 0
    zero = 0
    one = 1

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def convert(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self.convert(Fraction(x.strip()))
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"cannot convert {x.field!r} element to QQ")
            return x.value
        raise TypeError(f"cannot convert {type(x).__name__} to QQ")

    __call__ = convert

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return Fraction(1, a) if isinstance(a, int) else 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        q = Fraction(a, b) if isinstance(a, int) and isinstance(b, int) else Fraction(a) / b
        return q.numerator if q.denominator == 1 else q

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def integerize(self, values):
        """Scale a coefficient list by the lcm of its denominators."""
        den = 1
        for v in values:
            if isinstance(v, Fraction) and v.denominator != 1:
                den = den * v.denominator // _gcd(den, v.denominator)
        if den == 1:
            return [int(v) for v in values]
        return [int(v * den) for v in values]

    def to_str(self, a):
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def to_json(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime ``p > 2^20``; values are ints in ``[0, p)``."""

    characteristic: int

    def __init__(self, p: int):
        from sympy import isprime

        p = int(p)
        if p <= MIN_PRIME or not isprime(p):
            raise ValueError(f"modulus must be a prime larger than 2^20, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def convert(self, x):
        p = self.p
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            s = x.strip()
            if s.endswith(f"mod {p}"):
                s = s[: -len(f"mod {p}")]
            return self.convert(Fraction(s.strip()))
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"cannot convert {x.field!r} element to {self.name}")
            return x.value
        raise TypeError(f"cannot convert {type(x).__name__} to {self.name}")

    __call__ = convert

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_one(self, a):
        return a % self.p == 1

    def integerize(self, values):
        return list(values)

    def to_str(self, a):
        return str(a)

    def to_json(self):
        return f"GF({self.p})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(spec) -> RationalField | PrimeField:
    """Accept ``"QQ"``, ``"GF"``, ``"GF(p)"``, ``"gf:p"`` or a bare prime."""
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if spec is None:
        return QQ
    s = str(spec).strip()
    if s.upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    if s.upper() in ("GF", "GFP", "PRIME"):
        return GF(DEFAULT_PRIME)
    for prefix in ("GF(", "gf("):
        if s.startswith(prefix) and s.endswith(")"):
            return GF(int(s[len(prefix):-1]))
    if s.lower().startswith("gf:"):
        return GF(int(s[3:]))
    if s.isdigit():
        return GF(int(s))
    raise ValueError(f"unknown field {spec!r}")


@total_ordering
class Scalar:
    """An immutable field element.

    >>> Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3))
    Scalar(5/6)
    >>> Scalar(3, GF(2147483647)) * Scalar(5, GF(2147483647))
    Scalar(15 mod 2147483647)
    """

    __slots__ = ("value", "field")

    def __init__(self, value, field=QQ):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.convert(value))
        if __debug__ and isinstance(field, RationalField) and isinstance(self.value, Fraction):
            v = self.value
            assert v.denominator > 0 and _gcd(abs(v.numerator), v.denominator) == 1

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.add(self.value, b), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.sub(self.value, b), self.field)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.sub(b, self.value), self.field)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.mul(self.value, b), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.div(self.value, b), self.field)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field.div(b, self.value), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self):
        return Scalar(self.field.inv(self.value), self.field)

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __lt__(self, other):
        if isinstance(self.field, PrimeField):
            raise TypeError("GF(p) is not ordered")
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self.value < b

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        s = self.field.to_str(self.value)
        if isinstance(self.field, PrimeField):
            return f"{s} mod {self.field.p}"
        return s

    def __repr__(self):
        return f"Scalar({self})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of ``str``: ``"p/q"``, ``"n"`` or ``"n mod p"``."""
        text = text.strip()
        if " mod " in text:
            n, p = text.split(" mod ")
            return cls(int(n), GF(int(p)))
        return cls(Fraction(text), QQ)
