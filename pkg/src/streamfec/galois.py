"""Exact arithmetic in small finite fields.

Two families are supported: binary extension fields GF(2^m) for
1 <= m <= 16, represented in the polynomial basis with log/antilog
tables, and prime fields GF(p) for p < 256.  Values are plain ints in
[0, q-1]; :class:`FieldElement` is a thin checked wrapper for use at
API boundaries.  Field objects are immutable once constructed and are
safe to share between threads or worker processes.

The default modulus for GF(2^m) is the lexicographically smallest
irreducible polynomial of degree m (bit-encoded, bit i = coefficient of
x^i), so that descriptors are reproducible across machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

_MAX_EXTENSION_DEGREE = 16
_MAX_PRIME = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, mod: int) -> int:
    """Remainder of carry-less division of a by mod, over GF(2)."""
    dm = _poly_degree(mod)
    while _poly_degree(a) >= dm and a:
        a ^= mod << (_poly_degree(a) - dm)
    return a


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    """Carry-less product of a and b, reduced modulo mod, over GF(2)."""
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
    return _poly_mod(res, mod)


def _is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every lower-degree polynomial up to degree m/2."""
    m = _poly_degree(poly)
    if m < 1:
        return False
    if not poly & 1:  # divisible by x
        return m == 1 and poly == 0b10
    for d in range(1, m // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, div) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m.

    Polynomials are ordered by their bit-encoded integer value, e.g.
    default_modulus(3) == 0b1011 (x^3 + x + 1).
    """
    if not 1 <= m <= _MAX_EXTENSION_DEGREE:
        raise ValueError(f"extension degree must be in [1, {_MAX_EXTENSION_DEGREE}], got {m}")
    for cand in range(1 << m, 1 << (m + 1)):
        if _is_irreducible_gf2(cand):
            return cand
    raise AssertionError("unreachable: irreducible polynomials exist for every degree")


class Field:
    """A finite field GF(p^m): either GF(2^m), m <= 16, or GF(p), p < 256.

    Arithmetic methods (`add`, `mul`, `inv`, ...) operate on plain int
    values; use :meth:`element` to obtain checked :class:`FieldElement`
    wrappers.
    """

    __slots__ = ("p", "m", "q", "modulus", "_exp", "_log")

    def __init__(self, p: int, m: int = 1, modulus: int | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if m == 1:
            if p >= _MAX_PRIME:
                raise ValueError(f"prime fields limited to p < {_MAX_PRIME}, got {p}")
            if modulus is not None:
                raise ValueError("prime fields take no modulus polynomial")
        else:
            if p != 2:
                raise ValueError("extension fields are supported for characteristic 2 only")
            if m > _MAX_EXTENSION_DEGREE:
                raise ValueError(f"extension degree limited to {_MAX_EXTENSION_DEGREE}, got {m}")
            if modulus is None:
                modulus = default_modulus(m)
            if _poly_degree(modulus) != m or not _is_irreducible_gf2(modulus):
                raise ValueError(f"modulus 0b{modulus:b} is not irreducible of degree {m}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m > 1:
            self._build_tables()

    def _build_tables(self) -> None:
        """Find a primitive element and fill the log/antilog tables."""
        q, mod = self.q, self.modulus
        assert mod is not None
        for g in range(2, q):
            exp = [0] * (q - 1)
            x = 1
            ok = True
            for i in range(q - 1):
                exp[i] = x
                x = _poly_mulmod(x, g, mod)
                if x == 1 and i + 1 < q - 1:
                    ok = False
                    break
            if ok and x == 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp = exp
                self._log = log
                return
        raise AssertionError("unreachable: the multiplicative group of a field is cyclic")

    # -- arithmetic on raw int values ------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not a value of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return (self.p - a) % self.p

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        assert self._exp is not None and self._log is not None
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        assert self._exp is not None and self._log is not None
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        res = 1
        while e:
            if e & 1:
                res = self.mul(res, a)
            a = self.mul(a, a)
            e >>= 1
        return res

    # -- element-level API ------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self.check(value), self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> tuple["FieldElement", ...]:
        """All q elements exactly once, ascending by value."""
        return tuple(FieldElement(v, self) for v in range(self.q))

    def values(self) -> Iterator[int]:
        return iter(range(self.q))

    # -- identity and serialization ---------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.q}, modulus=0b{self.modulus:b})"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": self.modulus if self.m > 1 else 0}

    @staticmethod
    def from_dict(d: dict) -> "Field":
        m = d["m"]
        return Field(d["p"], m, d["modulus"] if m > 1 else None)


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus: int | None) -> Field:
    return Field(p, m, modulus)


def GF(q: int, modulus: int | None = None) -> Field:
    """Field of order q: q = 2^m gives the binary extension field, prime q
    the prime field.  Other orders are unsupported."""
    if q >= 2 and q & (q - 1) == 0:  # power of two
        m = q.bit_length() - 1
        return _cached_field(2, m, modulus if m > 1 else None)
    if _is_prime(q):
        if modulus is not None:
            raise ValueError("prime fields take no modulus polynomial")
        return _cached_field(q, 1, None)
    raise ValueError(f"unsupported field order {q}: need 2^m (m <= 16) or a prime < 256")


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific finite field, with checked arithmetic."""

    value: int
    field: Field

    def __post_init__(self) -> None:
        self.field.check(self.value)

    def _coerce(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
        return other.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field.add(self.value, self._coerce(other)), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field.sub(self.value, self._coerce(other)), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field.mul(self.value, self._coerce(other)), self.field)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0
