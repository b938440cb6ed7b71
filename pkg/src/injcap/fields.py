"""Field handles: F_p, F_p[t]/(modulus) and the rational function field F_p(x).

Elements are plain hashable Python values owned by a handle:

* prime field: ``int`` in ``range(p)``
* extension field: coefficient tuple of length ``degree`` (power basis in t)
* rational function field: ``(numerator, denominator)`` pair of polynomials,
  reduced, with monic denominator

Handles do all arithmetic (``F.add(a, b)`` etc.).  Calling a handle wraps a
value in a :class:`FieldElement`, which supports the usual operators and is
handy in tests and at the REPL.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from . import poly as P
from .errors import FieldError

MAX_PRIME = 251
MAX_EXTENSION_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    kind = "abstract"
    p: int
    zero: Any
    one: Any

    # subclasses define add, neg, mul, inv, from_int, canonical, element_at
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> Iterator:
        if self.order is None:
            raise FieldError(f"{self} is infinite")
        return (self.element_at(i) for i in range(self.order))

    def first_elements(self, count: int) -> list:
        """The first ``count`` elements of the canonical enumeration."""
        if self.order is not None and count > self.order:
            raise FieldError(f"{self} has only {self.order} elements")
        return [self.element_at(i) for i in range(count)]

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            value = value.value
        return FieldElement(self, self.canonical(value))

    def fmt(self, a) -> str:
        return str(a)


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise FieldError(f"prime {p} exceeds the supported bound {MAX_PRIME}")
        self.p = p
        self.order = p
        self.degree = 1
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def canonical(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise FieldError(f"expected an integer for F_{self.p}, got {v!r}")
        return v % self.p

    def element_at(self, i: int):
        return i

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField(Field):
    """F_p[t]/(modulus) with elements stored as dense coefficient tuples."""

    kind = "extension"

    def __init__(self, p: int, modulus, check: bool = True):
        if not is_prime(p) or p > MAX_PRIME:
            raise FieldError(f"unsupported characteristic {p}")
        modulus = P.trim(modulus, p)
        if P.deg(modulus) < 1:
            raise FieldError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise FieldError(f"modulus {P.to_str(modulus, 't')} is not monic")
        if P.deg(modulus) > MAX_EXTENSION_DEGREE:
            raise FieldError(f"extension degree {P.deg(modulus)} exceeds {MAX_EXTENSION_DEGREE}")
        if check and not P.is_irreducible(modulus, p):
            raise FieldError(f"modulus {P.to_str(modulus, 't')} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.degree = P.deg(modulus)
        self.order = p ** self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)

    def _dense(self, a) -> tuple:
        return tuple(a) + (0,) * (self.degree - len(a))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p = self.p
        return self._dense(P.mod(P.mul(P.trim(a, p), P.trim(b, p), p), self.modulus, p))

    def inv(self, a):
        p = self.p
        ta = P.trim(a, p)
        if not ta:
            raise ZeroDivisionError("inverse of zero")
        return self._dense(P.inverse_mod(ta, self.modulus, p))

    def from_int(self, n: int):
        return ((n % self.p),) + (0,) * (self.degree - 1)

    def from_poly(self, f):
        return self._dense(P.mod(P.trim(f, self.p), self.modulus, self.p))

    def generator(self):
        """The class of t."""
        return self.from_poly(P.X)

    def canonical(self, v):
        if isinstance(v, int):
            return self.from_int(v)
        v = tuple(v)
        if len(v) > self.degree:
            return self.from_poly(v)
        return self._dense(tuple(x % self.p for x in v))

    def element_at(self, i: int):
        return self._dense(P.from_index(i, self.p))

    def fmt(self, a) -> str:
        return P.to_str(P.trim(a, self.p), "t")

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("extension", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.degree}, {P.to_str(self.modulus, 't')})"


class RationalFunctionField(Field):
    """F_p(x); elements are reduced fractions with monic denominators."""

    kind = "rational-function"

    def __init__(self, p: int):
        if not is_prime(p) or p > MAX_PRIME:
            raise FieldError(f"unsupported characteristic {p}")
        self.p = p
        self.order = None
        self.degree = None
        self.zero = ((), P.ONE)
        self.one = (P.ONE, P.ONE)

    def make(self, num, den=P.ONE):
        p = self.p
        num, den = P.trim(num, p), P.trim(den, p)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = P.gcd(num, den, p)
        if g != P.ONE:
            num, den = P.div(num, g, p), P.div(den, g, p)
        lc = den[-1]
        if lc != 1:
            inv = pow(lc, p - 2, p)
            num, den = P.scale(num, inv, p), P.scale(den, inv, p)
        return (num, den)

    def add(self, a, b):
        p = self.p
        if a[1] == b[1]:
            return self.make(P.add(a[0], b[0], p), a[1])
        return self.make(P.add(P.mul(a[0], b[1], p), P.mul(b[0], a[1], p), p), P.mul(a[1], b[1], p))

    def neg(self, a):
        return (P.neg(a[0], self.p), a[1])

    def mul(self, a, b):
        p = self.p
        if not a[0] or not b[0]:
            return self.zero
        return self.make(P.mul(a[0], b[0], p), P.mul(a[1], b[1], p))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self.make(a[1], a[0])

    def from_int(self, n: int):
        return self.make(P.const(n, self.p))

    def from_poly(self, f):
        return self.make(f)

    def canonical(self, v):
        if isinstance(v, int):
            return self.from_int(v)
        if isinstance(v, tuple) and len(v) == 2 and all(isinstance(t, tuple) for t in v):
            return self.make(v[0], v[1])
        return self.make(tuple(v))

    def element_at(self, i: int):
        return (P.from_index(i, self.p), P.ONE)

    def fmt(self, a) -> str:
        num, den = a
        if den == P.ONE:
            return P.to_str(num)
        return f"({P.to_str(num)})/({P.to_str(den)})"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("ratfun", self.p))

    def __repr__(self):
        return f"GF({self.p})(x)"


def field_make_extension(p: int, modulus) -> ExtensionField:
    """Build F_p[t]/(modulus); rejects non-monic or reducible moduli."""
    return ExtensionField(p, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: Any

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        return self.field.canonical(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.canonical(other)
        except FieldError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __repr__(self):
        return self.field.fmt(self.value)


def all_tuples(field: Field, n: int) -> Iterator[tuple]:
    """All vectors of length n over a finite field, in canonical order."""
    return itertools.product(list(field.elements()), repeat=n)
