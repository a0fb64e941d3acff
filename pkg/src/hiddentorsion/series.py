"""Lower central series and the mixed-coefficient series P^n of Gamma-hat.

Membership is decided in closed form from the coordinates:

* ``lcs(q)`` for q >= 2: ``c = 0`` and ``a, b`` in ``2^(q-1) Z_(2)``;
* ``omega``: ``c = 0`` and ``a = b = 0`` (the torsion subgroup);
* ``omega1``: the identity;
* ``mixed(1, p)`` = ``lcs(2)``, ``mixed(2, p)`` = ``omega``;
  ``mixed(3, p)`` further requires the order of ``d`` to be prime to ``p``.

``commutator_closure_check`` is the brute-force certificate for the ``lcs``
predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import TorsionCoset, format_rational, is_prime, p_primary_part
from .tower import (
    INFINITY,
    TowerElement,
    commutator,
    gen_t,
    gen_x,
    gen_y,
    gen_z,
)


@dataclass(frozen=True)
class SeriesIndex:
    kind: str  # "lcs" | "omega" | "omega1" | "mixed"
    q: int = 0
    n: int = 0
    p: int = 0

    def __post_init__(self):
        if self.kind == "lcs":
            if self.q < 1:
                raise ValueError("lcs index must be >= 1")
        elif self.kind == "mixed":
            if not 1 <= self.n <= 3:
                raise ValueError("mixed series index n must be 1, 2 or 3")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        elif self.kind not in ("omega", "omega1"):
            raise ValueError(f"unknown series kind {self.kind!r}")

    @classmethod
    def lcs(cls, q: int) -> "SeriesIndex":
        return cls("lcs", q=q)

    @classmethod
    def omega(cls) -> "SeriesIndex":
        return cls("omega")

    @classmethod
    def omega_plus_1(cls) -> "SeriesIndex":
        return cls("omega1")

    @classmethod
    def mixed(cls, n: int, p: int) -> "SeriesIndex":
        return cls("mixed", n=n, p=p)

    def to_json(self) -> dict:
        if self.kind == "lcs":
            return {"kind": "lcs", "q": self.q}
        if self.kind == "mixed":
            return {"kind": "mixed", "n": self.n, "p": self.p}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj: dict) -> "SeriesIndex":
        kind = obj["kind"]
        if kind == "lcs":
            return cls.lcs(int(obj["q"]))
        if kind == "mixed":
            return cls.mixed(int(obj["n"]), int(obj["p"]))
        return cls(kind)

    @classmethod
    def parse(cls, text: str) -> "SeriesIndex":
        """``lcs:5``, ``omega``, ``omega1`` (or ``omega+1``), ``mixed:3:5``."""
        s = text.strip().lower().replace("ω", "omega")
        if s in ("omega", "w"):
            return cls.omega()
        if s in ("omega1", "omega+1", "w+1"):
            return cls.omega_plus_1()
        parts = s.replace("(", ":").replace(")", "").replace(",", ":").split(":")
        if parts[0] == "lcs" and len(parts) == 2:
            return cls.lcs(int(parts[1]))
        if parts[0] == "mixed" and len(parts) == 3:
            return cls.mixed(int(parts[1]), int(parts[2]))
        raise ValueError(f"cannot parse series index {text!r}")


def _in_2power(x: Fraction, k: int) -> bool:
    # x in 2^k Z_(2): denominators are odd, so only the numerator matters
    return x.numerator % (1 << k) == 0


def _abelian_free(g: TowerElement) -> bool:
    return g.c == 0 and g.a == 0 and g.b == 0


def series_member(g: TowerElement, idx: SeriesIndex) -> bool:
    if idx.kind == "lcs":
        if idx.q == 1:
            return True
        return g.c == 0 and _in_2power(g.a, idx.q - 1) and _in_2power(g.b, idx.q - 1)
    if idx.kind == "omega":
        return _abelian_free(g)
    if idx.kind == "omega1":
        return g.is_identity()
    # mixed
    if idx.n == 1:
        return g.c == 0 and _in_2power(g.a, 1) and _in_2power(g.b, 1)
    if not _abelian_free(g):
        return False
    if idx.n == 2:
        return True
    return g.packed[1] % idx.p != 0


@dataclass(frozen=True)
class P3QuotientElement:
    """Image of an element in Gamma-hat / P^3 for the prime ``p``.

    ``dp`` is None when ``p = 2``, where the central factor disappears.
    """

    p: int
    c: int
    a: Fraction
    b: Fraction
    dp: TorsionCoset | None = None

    def __mul__(self, other: "P3QuotientElement") -> "P3QuotientElement":
        if self.p != other.p:
            raise ValueError("cannot multiply images for different primes")
        eps = -1 if other.c % 2 else 1
        dp = None
        if self.p != 2:
            dp = TorsionCoset(self.dp.value + other.dp.value - eps * self.b * other.a)
            dp = p_primary_part(dp, self.p)
        return P3QuotientElement(self.p, self.c + other.c, eps * self.a + other.a,
                                 eps * self.b + other.b, dp)

    def is_identity(self) -> bool:
        return self.c == 0 and self.a == 0 and self.b == 0 and (self.dp is None or not self.dp)

    def to_json(self) -> dict:
        out = {"p": self.p, "c": self.c, "a": format_rational(self.a), "b": format_rational(self.b)}
        if self.dp is not None:
            out["dp"] = format_rational(self.dp.value)
        return out


def project_P3(g: TowerElement, p: int) -> P3QuotientElement:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return P3QuotientElement(2, g.c, g.a, g.b, None)
    return P3QuotientElement(p, g.c, g.a, g.b, p_primary_part(TorsionCoset(g.d), p))


def p3_identity(p: int) -> P3QuotientElement:
    return P3QuotientElement(p, 0, Fraction(0), Fraction(0), None if p == 2 else TorsionCoset(0))


def quotient_order(q: P3QuotientElement):
    if q.c != 0 or q.a != 0 or q.b != 0:
        return INFINITY
    if q.dp is None:
        return 1
    return q.dp.order


def nilpotent_invisible(g: TowerElement, q_max: int) -> bool:
    """Whether ``g`` lies in every ``lcs(q)`` with ``q <= q_max``."""
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    return all(series_member(g, SeriesIndex.lcs(q)) for q in range(1, q_max + 1))


def lcs_quotient(g: TowerElement, q: int) -> tuple:
    """Image of ``g`` in Gamma-hat / lcs(q) as ``(c, a mod 2^(q-1), b mod 2^(q-1))``.

    The central coordinate is absent: it always lies in ``lcs(q)``.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return ()
    mod = 1 << (q - 1)

    def red(x: Fraction) -> int:
        return (x.numerator * pow(x.denominator, -1, mod)) % mod

    return (g.c, red(g.a), red(g.b))


def lcs_length_report(stage: int | None) -> dict:
    """Length of the lower central series of Gamma_stage (``None`` = Gamma-hat)."""
    if stage == 1:
        return {"length_tag": "ω", "witness": None}
    witness = gen_z(stage) if stage is not None else TowerElement(Fraction(1, 3))
    return {"length_tag": "ω+1", "witness": witness}


def commutator_closure_check(samples, q_max: int, stage: int | None = 3) -> list:
    """Return violations of ``[lcs(q), G] in lcs(q+1)`` over ``samples``.

    ``samples`` are tower elements; each one in ``lcs(q)`` is commuted with
    the three generators of the stage.
    """
    gens = (gen_x(stage), gen_y(stage), gen_t())
    bad = []
    for q in range(1, q_max + 1):
        here, there = SeriesIndex.lcs(q), SeriesIndex.lcs(q + 1)
        for g in samples:
            if not series_member(g, here):
                continue
            for h in gens:
                k = commutator(g, h)
                if not series_member(k, there):
                    bad.append((q, g, h, k))
    return bad


def lcs_generators(q: int, stage: int | None = 3) -> list[TowerElement]:
    """Elements generating lcs(q): powers ``x^(2^(q-1))``, ``y^(2^(q-1))`` and ``z``."""
    if q == 1:
        return [gen_x(stage), gen_y(stage), gen_t()]
    e = 1 << (q - 1)
    return [gen_x(stage) ** e, gen_y(stage) ** e, gen_z(stage)]
