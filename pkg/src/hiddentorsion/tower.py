"""Normal forms in the tower groups Gamma_m (m odd) and their union Gamma-hat.

Every element is written ``z^d t^c x^a y^b`` in one coordinate system shared
by all stages: ``a, b`` are rationals with odd denominator, ``d`` lives in
Z_(2)/Z and ``c`` is an integer.  The stage-m generators are

    x_m = (0, 0, 1/m, 0),   y_m = (0, 0, 0, 1/m),   t = (0, 1, 0, 0),

so ``z_m = [x_m, y_m] = (1/m^2, 0, 0, 0)``, and Gamma_m sits inside Gamma_m'
(m | m') as a literal subgroup.  The group law is

    (d, c, a, b) (d', c', a', b') = (d + d' - e b a', c + c', e a + a', e b + b')

with ``e = (-1)^c'``.  It is certified against the string-rewriting oracle in
:mod:`hiddentorsion.rewriting`.

Coordinates relative to a single stage (``x_m`` counted as exponent 1) are
available through :meth:`TowerElement.local`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernel
from .exact import TorsionCoset, format_rational, lcm_all, parse_rational, prime_factors

INFINITY = math.inf
STAGE_INF = None  # stage argument meaning Gamma-hat

ALPHABET = "xXyYtT"


def _frac(v) -> Fraction:
    if isinstance(v, TorsionCoset):
        return v.value
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, float):
        raise TypeError("floats are not accepted")
    return Fraction(v)


class TowerElement:
    """Immutable element of Gamma-hat in unified coordinates."""

    __slots__ = ("_p",)

    def __init__(self, d=0, c: int = 0, a=0, b=0):
        d, a, b = _frac(d), _frac(a), _frac(b)
        for name, v in (("d", d), ("a", a), ("b", b)):
            if v.denominator % 2 == 0:
                raise ValueError(f"coordinate {name}={v} has even denominator")
        if int(c) != c:
            raise ValueError("c must be an integer")
        d -= math.floor(d)
        self._p = (d.numerator, d.denominator, int(c), a.numerator, a.denominator,
                   b.numerator, b.denominator)

    @classmethod
    def _from_packed(cls, p: tuple) -> "TowerElement":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def from_local(cls, stage: int, d=0, c: int = 0, a=0, b=0) -> "TowerElement":
        """Build from stage-``stage`` coordinates, where ``a = 1`` means ``x_stage``."""
        m = _check_stage(stage)
        return cls(d, c, _frac(a) / m, _frac(b) / m)

    # coordinates
    @property
    def packed(self) -> tuple:
        return self._p

    @property
    def d(self) -> Fraction:
        return Fraction(self._p[0], self._p[1])

    @property
    def c(self) -> int:
        return self._p[2]

    @property
    def a(self) -> Fraction:
        return Fraction(self._p[3], self._p[4])

    @property
    def b(self) -> Fraction:
        return Fraction(self._p[5], self._p[6])

    @property
    def torsion(self) -> TorsionCoset:
        return TorsionCoset(self.d)

    def coords(self) -> tuple:
        return (self.d, self.c, self.a, self.b)

    def in_stage(self, stage: int | None) -> bool:
        if stage is None:
            return True
        m = _check_stage(stage)
        return (m % self._p[4] == 0 and m % self._p[6] == 0
                and (m * m) % self._p[1] == 0)

    def local(self, stage: int) -> tuple:
        """Coordinates ``(d, c, m a, m b)`` relative to stage ``m``."""
        m = _check_stage(stage)
        if not self.in_stage(m):
            raise ValueError(f"{self} does not lie in stage {m}")
        return (self.d, self.c, int(m * self.a), int(m * self.b))

    # group structure
    def __mul__(self, other: "TowerElement") -> "TowerElement":
        if not isinstance(other, TowerElement):
            return NotImplemented
        return TowerElement._from_packed(_kernel.tower_mul(self._p, other._p))

    def inverse(self) -> "TowerElement":
        return TowerElement._from_packed(_kernel.tower_inv(self._p))

    def __pow__(self, n: int) -> "TowerElement":
        return TowerElement._from_packed(_kernel.tower_pow(self._p, int(n)))

    def is_identity(self) -> bool:
        return self._p == _kernel.IDENTITY

    def __eq__(self, other) -> bool:
        return isinstance(other, TowerElement) and self._p == other._p

    def __hash__(self) -> int:
        return hash(self._p)

    def __repr__(self) -> str:
        return "TowerElement(d={}, c={}, a={}, b={})".format(
            format_rational(self.d), self.c, format_rational(self.a), format_rational(self.b))

    __str__ = __repr__

    # serialization
    def to_json(self) -> dict:
        return {"d": format_rational(self.d), "c": self.c,
                "a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "TowerElement":
        return cls(obj.get("d", "0"), int(obj.get("c", 0)), obj.get("a", "0"), obj.get("b", "0"))


IDENTITY = TowerElement()


def _check_stage(stage) -> int:
    if stage is None:
        return 1
    m = int(stage)
    if m != stage or m < 1 or m % 2 == 0:
        raise ValueError(f"stage must be a positive odd integer, got {stage!r}")
    return m


def identity() -> TowerElement:
    return IDENTITY


def gen_x(stage: int | None = None) -> TowerElement:
    return TowerElement(0, 0, Fraction(1, _check_stage(stage)), 0)


def gen_y(stage: int | None = None) -> TowerElement:
    return TowerElement(0, 0, 0, Fraction(1, _check_stage(stage)))


def gen_t() -> TowerElement:
    return TowerElement(0, 1, 0, 0)


def gen_z(stage: int | None = None) -> TowerElement:
    m = _check_stage(stage)
    return TowerElement(Fraction(1, m * m), 0, 0, 0)


# words

_TOKEN = re.compile(r"([xyt])(?:\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?|(⁻¹)))?|([XYT])|(\s+)")


class GeneratorWord:
    """A word over ``x, y, t`` and their inverses.

    ``letters`` is a tuple of single characters from ``xXyYtT``; capitals are
    inverses.  Parsing also accepts ``x^-1``, ``x⁻¹`` and ``x^k``.
    """

    __slots__ = ("letters", "stage")

    def __init__(self, letters: Iterable[str] | str = "", stage: int | None = None):
        if isinstance(letters, str):
            letters = parse_letters(letters)
        letters = tuple(letters)
        for ch in letters:
            if ch not in ALPHABET:
                raise ValueError(f"invalid symbol {ch!r}")
        self.letters = letters
        if stage is not None:
            _check_stage(stage)
        self.stage = stage

    def __str__(self) -> str:
        return "".join(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters, self.stage)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple(ch.swapcase() for ch in reversed(self.letters)), self.stage)


def parse_letters(text: str) -> tuple[str, ...]:
    """Expand ``x^-2 y X`` style input to a tuple of letters over ``xXyYtT``."""
    out: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"invalid symbol {text[pos]!r} at position {pos}")
        pos = m.end()
        if m.group(5):
            continue
        if m.group(4):
            out.append(m.group(4))
            continue
        ch = m.group(1)
        if m.group(3):
            k = -1
        elif m.group(2) is not None:
            k = int(m.group(2))
        else:
            k = 1
        out.extend((ch if k > 0 else ch.upper()) * abs(k))
    return tuple(out)


def _letter_table(stage) -> dict:
    x, y, t = gen_x(stage), gen_y(stage), gen_t()
    return {
        "x": x.packed, "X": x.inverse().packed,
        "y": y.packed, "Y": y.inverse().packed,
        "t": t.packed, "T": t.inverse().packed,
    }


def normalize(word, stage: int | None = None) -> TowerElement:
    """Normal form of a word whose letters denote stage-``stage`` generators.

    ``stage=None`` means Gamma-hat with the stage-1 generators.  When ``word``
    is a :class:`GeneratorWord` carrying its own stage and ``stage`` is
    omitted, the word's stage is used.
    """
    if isinstance(word, GeneratorWord):
        if stage is None:
            stage = word.stage
        letters = word.letters
    else:
        letters = parse_letters(word)
    _check_stage(stage)
    table = _letter_table(stage)
    acc = _kernel.IDENTITY
    mul = _kernel.tower_mul
    for ch in letters:
        acc = mul(acc, table[ch])
    return TowerElement._from_packed(acc)


def mul(g: TowerElement, h: TowerElement) -> TowerElement:
    return g * h


def inv(g: TowerElement) -> TowerElement:
    return g.inverse()


def power(g: TowerElement, n: int) -> TowerElement:
    return g ** n


pow = power  # noqa: A001  (name used by the public API)


def commutator(g: TowerElement, h: TowerElement) -> TowerElement:
    return TowerElement._from_packed(_kernel.tower_commutator(g.packed, h.packed))


def order(g: TowerElement):
    """Order of ``g``: an int for torsion elements, ``math.inf`` otherwise."""
    if g.c != 0 or g.a != 0 or g.b != 0:
        return INFINITY
    return g.packed[1]


def minimal_stage(g: TowerElement) -> int:
    """Least odd ``m`` with ``g`` in Gamma_m."""
    need = 1
    for p, e in prime_factors(g.packed[1]).items():
        need *= p ** ((e + 1) // 2)
    return lcm_all((g.packed[4], g.packed[6], need))


def abelianize(g: TowerElement) -> tuple[int, int, int]:
    """Image in (Z/2)^2 x Z: ``(a mod 2, b mod 2, c)``."""
    # odd denominators, so the residue mod 2 is the numerator's parity
    return (g.packed[3] % 2, g.packed[5] % 2, g.c)


def relator_words(stage: int) -> dict[str, str]:
    """The six defining relators of Gamma_stage as words (z written as xyXY)."""
    m = _check_stage(stage)
    z, Z = "xyXY", "yxYX"
    return {
        "z^(m^2)": z * (m * m),
        "[z,t]": z + "t" + Z + "T",
        "[z,x]": z + "x" + Z + "X",
        "[z,y]": z + "y" + Z + "Y",
        "txTx": "txTx",
        "tyTy": "tyTy",
    }


def presentation(stage: int):
    """Generators and relators of Gamma_stage as plain strings."""
    return ["x", "y", "t"], list(relator_words(stage).values())


def random_element(rng, max_den: int = 81, num_range: int = 20, c_range: int = 3,
                   stage: int | None = None) -> TowerElement:
    """A pseudo-random element; with ``stage`` it is drawn from Gamma_stage."""
    if stage is not None:
        m = _check_stage(stage)
        dens_ab = [k for k in range(1, m + 1, 2) if m % k == 0]
        dens_d = [k for k in range(1, m * m + 1, 2) if (m * m) % k == 0]
    else:
        dens_ab = [k for k in range(1, max_den + 1, 2)]
        dens_d = dens_ab
    d = Fraction(rng.randint(0, 10 ** 6), rng.choice(dens_d))
    a = Fraction(rng.randint(-num_range, num_range), rng.choice(dens_ab))
    b = Fraction(rng.randint(-num_range, num_range), rng.choice(dens_ab))
    return TowerElement(d, rng.randint(-c_range, c_range), a, b)


def random_packed(rng, count: int, max_den: int = 81, num_range: int = 20, c_range: int = 3,
                  stage: int | None = None) -> list[tuple]:
    """Like :func:`random_element` but returns packed tuples, for bulk kernel tests."""
    if stage is not None:
        m = _check_stage(stage)
        dens_ab = [k for k in range(1, m + 1, 2) if m % k == 0]
        dens_d = [k for k in range(1, m * m + 1, 2) if (m * m) % k == 0]
    else:
        dens_ab = list(range(1, max_den + 1, 2))
        dens_d = dens_ab
    gcd = math.gcd
    randint, choice = rng.randint, rng.choice
    out = []
    for _ in range(count):
        dd = choice(dens_d)
        dn = randint(0, dd - 1)
        k = gcd(dn, dd)
        an, ad = randint(-num_range, num_range), choice(dens_ab)
        ka = gcd(an, ad)
        bn, bd = randint(-num_range, num_range), choice(dens_ab)
        kb = gcd(bn, bd)
        out.append((dn // k, dd // k, randint(-c_range, c_range), an // ka, ad // ka, bn // kb, bd // kb))
    return out


def stage_label(stage: int | None) -> str:
    return "inf" if stage is None else str(stage)


def parse_stage(text: str | int | None) -> int | None:
    if text is None:
        return None
    if isinstance(text, int):
        return _check_stage(text)
    s = str(text).strip().lower()
    if s in ("inf", "infinity", "∞", "hat"):
        return None
    return _check_stage(int(s))


def mul_words(words: Sequence[str], stage: int | None = None) -> TowerElement:
    acc = IDENTITY
    for w in words:
        acc = acc * normalize(w, stage)
    return acc
