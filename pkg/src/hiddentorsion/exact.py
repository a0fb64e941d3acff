"""Exact arithmetic in subrings of Q and in the torsion group Z_(2)/Z.

Subrings are described by which primes are inverted: either an explicit
finite set (``Z``, ``Z[1/p]``) or the complement of a finite set
(``Z_(p)``, ``Z_(2)``).  Everything here is integer/`Fraction` based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

__all__ = [
    "SubringSpec",
    "LocalizedRational",
    "TorsionCoset",
    "ZZ",
    "ZZ_2",
    "QQ",
    "localization_at",
    "invert_primes",
    "ring_contains",
    "is_unit",
    "torsion_op",
    "p_primary_part",
    "prime_factors",
    "is_prime",
    "parse_rational",
    "format_rational",
]


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}`` (empty for 0 and 1)."""
    if n == 0:
        return {}
    return dict(_factor(n))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = _factor(n)
    return len(f) == 1 and f[0][1] == 1


@dataclass(frozen=True)
class SubringSpec:
    """A subring of Q determined by a set of inverted primes.

    With ``complement=False`` exactly the primes in ``primes`` are inverted;
    with ``complement=True`` every prime *except* those in ``primes`` is.
    """

    primes: frozenset[int]
    complement: bool = False
    tag: str = ""

    def __post_init__(self):
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not a prime")
        if not self.tag:
            object.__setattr__(self, "tag", self._default_tag())

    def _default_tag(self) -> str:
        ps = sorted(self.primes)
        if not self.complement:
            if not ps:
                return "Z"
            return "Z[" + ",".join(f"1/{p}" for p in ps) + "]"
        if not ps:
            return "Q"
        return "Z_(" + ",".join(map(str, ps)) + ")"

    def inverts(self, p: int) -> bool:
        return (p in self.primes) != self.complement

    def to_json(self) -> dict:
        key = "inverted_complement" if self.complement else "inverted"
        return {key: sorted(self.primes)}

    @classmethod
    def from_json(cls, obj: dict) -> "SubringSpec":
        if "inverted_complement" in obj:
            return cls(frozenset(obj["inverted_complement"]), True)
        return cls(frozenset(obj.get("inverted", [])), False)

    @classmethod
    def parse(cls, text: str) -> "SubringSpec":
        """Parse ``Z``, ``Q``, ``Z_(p)``, ``Z[1/p]`` (also ``Z_(2,3)``, ``Z[1/2,3]``, ``Z[1/2,1/3]``)."""
        s = text.replace(" ", "")
        if s in ("Z", "ZZ"):
            return ZZ
        if s in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"Z_?\((\d+(?:,\d+)*)\)", s)
        if m:
            return cls(frozenset(int(v) for v in m.group(1).split(",")), True)
        m = re.fullmatch(r"Z\[1/(\d+(?:,(?:1/)?\d+)*)\]", s)
        if m:
            return cls(frozenset(int(v.removeprefix("1/")) for v in m.group(1).split(",")), False)
        raise ValueError(f"unrecognised ring {text!r}")

    def __str__(self) -> str:
        return self.tag


ZZ = SubringSpec(frozenset(), False, "Z")
QQ = SubringSpec(frozenset(), True, "Q")
ZZ_2 = SubringSpec(frozenset({2}), True, "Z_(2)")


def localization_at(p: int) -> SubringSpec:
    """``Z_(p)``: every prime but ``p`` inverted."""
    return SubringSpec(frozenset({p}), True)


def invert_primes(*ps: int) -> SubringSpec:
    """``Z[1/p, ...]``."""
    return SubringSpec(frozenset(ps), False)


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, str):
        return parse_rational(q)
    if isinstance(q, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'num/den'")
    return Fraction(q)


def ring_contains(q, ring: SubringSpec) -> bool:
    """True iff every prime factor of the reduced denominator of ``q`` is inverted in ``ring``."""
    den = _as_fraction(q).denominator
    if ring.complement:
        # everything but ``primes`` is inverted
        return all(den % p for p in ring.primes)
    for p in ring.primes:
        while den % p == 0:
            den //= p
    return den == 1


def is_unit(q, ring: SubringSpec) -> bool:
    q = _as_fraction(q)
    if q == 0:
        raise ValueError("zero is never a unit")
    return ring_contains(q, ring) and ring_contains(1 / q, ring)


@dataclass(frozen=True)
class LocalizedRational:
    """A rational certified to lie in ``ring``."""

    value: Fraction
    ring: SubringSpec

    def __post_init__(self):
        object.__setattr__(self, "value", _as_fraction(self.value))
        if not ring_contains(self.value, self.ring):
            raise ValueError(f"{self.value} is not in {self.ring}")

    def __str__(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True, order=True)
class TorsionCoset:
    """An element of Z_(2)/Z, stored as its representative in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        v = _as_fraction(self.value)
        if v.denominator % 2 == 0:
            raise ValueError(f"{v} has even denominator; not in Z_(2)/Z")
        object.__setattr__(self, "value", v - math.floor(v))

    @property
    def order(self) -> int:
        return self.value.denominator

    def __add__(self, other: "TorsionCoset") -> "TorsionCoset":
        return TorsionCoset(self.value + other.value)

    def __neg__(self) -> "TorsionCoset":
        return TorsionCoset(-self.value)

    def __sub__(self, other: "TorsionCoset") -> "TorsionCoset":
        return TorsionCoset(self.value - other.value)

    def __mul__(self, n: int) -> "TorsionCoset":
        return TorsionCoset(self.value * n)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return format_rational(self.value)


def torsion_op(x: TorsionCoset, y: TorsionCoset | None = None, op: str = "add") -> TorsionCoset:
    if op == "add":
        return x + y
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def p_primary_part(x: TorsionCoset, p: int) -> TorsionCoset:
    """The p-primary component of ``x`` under the CRT splitting of Z_(2)/Z.

    For ``x = u/m`` with ``m = p^k r``, ``gcd(p, r) = 1`` this is the unique
    ``a/p^k`` such that ``x - a/p^k`` has order ``r``.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    u, m = x.value.numerator, x.value.denominator
    pk = 1
    while m % p == 0:
        m //= p
        pk *= p
    if pk == 1:
        return TorsionCoset(Fraction(0))
    # u/(pk*r) = a/pk + b/r  <=>  u = a*r + b*pk; a = u * r^{-1} mod pk
    a = (u * pow(m, -1, pk)) % pk
    return TorsionCoset(Fraction(a, pk))


_RAT = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*")


def parse_rational(text: str) -> Fraction:
    m = _RAT.fullmatch(str(text))
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q)


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
