"""Determinant tests for matrices over R[t, t^-1] and the associated solving maps.

For a square Laurent matrix A(t) over a subring R of Z_(2): if det A(1) is a
unit of R then det A(-1) is a unit of Z_(2), because the two determinants
agree mod 2.  Consequently A(-1) g = f has a unique solution over Z_(2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import ZZ, ZZ_2, SubringSpec, format_rational, is_unit, parse_rational, ring_contains
from .linalg import mat_vec, rational_det, rational_solve


class LaurentPoly:
    """Finitely supported map exponent -> rational coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        out = {}
        for k, v in dict(coeffs or {}).items():
            v = parse_rational(v) if isinstance(v, str) else Fraction(v)
            if v:
                out[int(k)] = v
        self.coeffs = out

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def t(cls, k: int = 1) -> "LaurentPoly":
        return cls({k: 1})

    def evaluate(self, t0) -> Fraction:
        t0 = Fraction(t0)
        return sum((c * t0 ** k for k, c in self.coeffs.items()), Fraction(0))

    def __add__(self, other):
        other = other if isinstance(other, LaurentPoly) else LaurentPoly.const(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __mul__(self, other):
        other = other if isinstance(other, LaurentPoly) else LaurentPoly.const(other)
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def to_json(self) -> dict:
        return {str(k): format_rational(v) for k, v in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        if isinstance(obj, str):
            return parse_laurent(obj)
        if isinstance(obj, (int, Fraction)):
            return cls.const(obj)
        return cls({int(k): v for k, v in obj.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in sorted(self.coeffs.items(), reverse=True):
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and v == 1:
                parts.append(mono)
            elif mono and v == -1:
                parts.append("-" + mono)
            else:
                parts.append(format_rational(v) + mono)
        return " + ".join(parts).replace("+ -", "- ")


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(t(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?)?")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse strings like ``2t - 1``, ``t^-1 + 3/5``, ``-t^2``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    out = LaurentPoly()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = parse_rational(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) is not None else 1
        else:
            exp = 0
        out = out + LaurentPoly({exp: sign * coef})
        pos = m.end()
    return out


@dataclass(frozen=True)
class LaurentMatrix:
    rows: tuple
    ring: SubringSpec = ZZ

    def __post_init__(self):
        rows = tuple(tuple(e if isinstance(e, LaurentPoly) else LaurentPoly.from_json(e) for e in r)
                     for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Laurent matrix must be square")
        for r in rows:
            for e in r:
                for c in e.coeffs.values():
                    if not ring_contains(c, self.ring):
                        raise ValueError(f"coefficient {c} not in {self.ring}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "rows": [[e.to_json() for e in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "LaurentMatrix":
        if isinstance(obj, list):
            return cls(tuple(tuple(r) for r in obj))
        ring = SubringSpec.from_json(obj["ring"]) if "ring" in obj else ZZ
        return cls(tuple(tuple(r) for r in obj["rows"]), ring)


def eval_matrix(A: LaurentMatrix, t0: int) -> list[list[Fraction]]:
    if t0 not in (1, -1):
        raise ValueError("only t = 1 and t = -1 are supported")
    return [[e.evaluate(t0) for e in r] for r in A.rows]


def _unit(q: Fraction, R: SubringSpec) -> bool:
    return q != 0 and is_unit(q, R)


def locality_criterion(A: LaurentMatrix, R: SubringSpec) -> dict:
    if R.inverts(2):
        raise ValueError(f"{R} inverts 2; the criterion needs a subring of Z_(2)")
    d1 = rational_det(eval_matrix(A, 1))
    dm = rational_det(eval_matrix(A, -1))
    return {
        "unit_at_1": _unit(d1, R),
        "unit_at_minus1_in_Z2": _unit(dm, ZZ_2),
        "parity_ok": ring_contains((d1 - dm) / 2, R),
        "det_at_1": d1,
        "det_at_minus1": dm,
    }


def solve_local(A: LaurentMatrix, f: Sequence, R: SubringSpec | None = None) -> list[Fraction]:
    """The unique ``g`` over Z_(2) with ``A(-1) g = f``."""
    R = R or A.ring
    crit = locality_criterion(A, R)
    if not crit["unit_at_1"]:
        raise ValueError(f"det A(1) = {format_rational(crit['det_at_1'])} is not a unit in {R}")
    f = [parse_rational(v) if isinstance(v, str) else Fraction(v) for v in f]
    for v in f:
        if not ring_contains(v, ZZ_2):
            raise ValueError(f"right-hand side entry {v} is not in Z_(2)")
    M = eval_matrix(A, -1)
    g = rational_solve(M, f)
    for v in g:
        if not ring_contains(v, ZZ_2):
            raise ArithmeticError(f"solution entry {v} left Z_(2); inconsistent input")
    if mat_vec(M, g) != f:
        raise ArithmeticError("residual check failed")
    return g


def trivial_action_locality(B: Sequence[Sequence[int]], f: Sequence, R: SubringSpec) -> dict:
    """Solve ``B g = f`` over R for an integer matrix with ``det B`` a unit of R."""
    M = [[Fraction(v) for v in r] for r in B]
    det = rational_det(M)
    if not _unit(det, R):
        raise ValueError(f"det = {format_rational(det)} is not a unit in {R}")
    f = [parse_rational(v) if isinstance(v, str) else Fraction(v) for v in f]
    g = rational_solve(M, f)
    members = [ring_contains(v, R) for v in g]
    if not all(members) and all(ring_contains(v, R) for v in f):
        raise ArithmeticError("solution left R although det B is a unit")
    return {"solution": g, "det": det, "in_ring": all(members)}


def random_laurent_matrix(rng, max_size: int = 4, exp_range: int = 3, coeff_range: int = 5,
                          max_terms: int = 2) -> LaurentMatrix:
    n = rng.randint(1, max_size)
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = {}
            for _ in range(rng.randint(0, max_terms)):
                k = rng.randint(-exp_range, exp_range)
                terms[k] = terms.get(k, 0) + rng.randint(-coeff_range, coeff_range)
            row.append(LaurentPoly(terms))
        rows.append(tuple(row))
    return LaurentMatrix(tuple(rows))


def sample_conditioned(rng, count: int, allowed=(1, -1, 3, -3, 5, -5), **kw) -> list[LaurentMatrix]:
    """Rejection-sample matrices with ``det A(1)`` in ``allowed``."""
    out = []
    allowed = set(Fraction(a) for a in allowed)
    while len(out) < count:
        A = random_laurent_matrix(rng, **kw)
        if rational_det(eval_matrix(A, 1)) in allowed:
            out.append(A)
    return out
