"""Finitely presented groups, R-nullhomologous equation systems and adjunction.

A system over a group ``pi`` consists of words ``w_1..w_n`` in the
generators of ``pi`` and variables ``x_1..x_n`` together with an exponent
``e``; the equations are ``x_i^e = w_i``.  The system is R-nullhomologous
when ``1/e`` lies in ``R`` and every variable has exponent sum zero in every
word.  Adjoining a solution gives ``pi_S`` with new generators ``z_i`` and
relators ``z_i^-e w_i(z)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .exact import SubringSpec, is_unit
from .linalg import int_det

Word = tuple  # tuple of (symbol, nonzero exponent), freely reduced


def reduce_word(letters) -> Word:
    out: list[list] = []
    for sym, k in letters:
        if k == 0:
            continue
        if out and out[-1][0] == sym:
            out[-1][1] += k
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([sym, k])
    return tuple((s, k) for s, k in out)


def invert_word(w: Word) -> Word:
    return tuple((s, -k) for s, k in reversed(w))


def word_to_str(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    for s, k in w:
        parts.append(s if k == 1 else f"{s}^{k}")
    return " ".join(parts)


def exponent_sum(w: Word, sym: str) -> int:
    return sum(k for s, k in w if s == sym)


_EXP = re.compile(r"\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?|(⁻¹))")


def parse_word(text: str, symbols: Sequence[str]) -> Word:
    """Parse a word over ``symbols``.

    Accepts juxtaposition or separators (spaces, ``*``, ``.``), powers
    ``g^k``/``g^(-k)``/``g⁻¹``, a capitalised name as the inverse of the
    lower-case generator (``X2`` for ``x2^-1``), parentheses and commutators ``[u, v] = u v u^-1 v^-1``.
    """
    syms = sorted(set(symbols), key=len, reverse=True)
    pos = 0
    s = text

    def skip():
        nonlocal pos
        while pos < len(s) and s[pos] in " \t*.·":
            pos += 1

    def power(w):
        nonlocal pos
        m = _EXP.match(s, pos)
        if not m:
            return w
        pos = m.end()
        k = -1 if m.group(2) else int(m.group(1))
        if k >= 0:
            return w * k
        return invert_word(w) * (-k)

    def seq(stop):
        nonlocal pos
        out: list = []
        while True:
            skip()
            if pos >= len(s) or s[pos] in stop:
                return reduce_word(out)
            out.extend(atom())

    def atom():
        nonlocal pos
        ch = s[pos]
        if ch == "(":
            pos += 1
            w = seq(")")
            if pos >= len(s):
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            return power(w)
        if ch == "[":
            pos += 1
            u = seq(",")
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"malformed commutator in {text!r}")
            pos += 1
            v = seq("]")
            if pos >= len(s):
                raise ValueError(f"unbalanced bracket in {text!r}")
            pos += 1
            return power(reduce_word(u + v + invert_word(u) + invert_word(v)))
        if ch == "1" and (pos + 1 == len(s) or not s[pos + 1].isalnum()):
            pos += 1
            return ()
        for name in syms:
            if s.startswith(name, pos):
                pos += len(name)
                return power(((name, 1),))
        if ch.isupper():
            for name in syms:
                if name[0].islower() and s.startswith(name[0].upper() + name[1:], pos):
                    pos += len(name)
                    return power(((name, -1),))
        m = re.match(r"[A-Za-z_][A-Za-z_0-9]*", s[pos:])
        bad = m.group(0) if m else ch
        raise ValueError(f"undeclared symbol {bad!r} in word {text!r}")

    w = seq("")
    return w


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(reduce_word(r) for r in self.relators))
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            for s, _ in r:
                if s not in gens:
                    raise ValueError(f"relator uses undeclared generator {s!r}")

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Sequence[str]) -> "GroupPresentation":
        return cls(tuple(generators), tuple(parse_word(r, generators) for r in relators))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [word_to_str(r) for r in self.relators]}

    @classmethod
    def from_json(cls, obj: dict) -> "GroupPresentation":
        return cls.parse(obj.get("generators", []), obj.get("relators", []))

    def __str__(self) -> str:
        return "<{} | {}>".format(", ".join(self.generators),
                                  ", ".join(word_to_str(r) for r in self.relators))


TRIVIAL_GROUP = GroupPresentation(())


def free_group(k: int, prefix: str = "a") -> GroupPresentation:
    return GroupPresentation(tuple(f"{prefix}{i + 1}" for i in range(k)))


def tower_presentation(stage: int) -> GroupPresentation:
    from .tower import presentation

    gens, rels = presentation(stage)
    return GroupPresentation.parse(gens, rels)


@dataclass(frozen=True)
class EquationSystem:
    base: GroupPresentation
    n: int
    e: int
    words: tuple
    variables: tuple = field(default=())

    def __post_init__(self):
        vars_ = tuple(self.variables) or tuple(f"x{i + 1}" for i in range(self.n))
        object.__setattr__(self, "variables", vars_)
        if len(vars_) != self.n or len(self.words) != self.n:
            raise ValueError("need exactly n variables and n words")
        if set(vars_) & set(self.base.generators):
            raise ValueError("variable names clash with generators")
        if self.e == 0:
            raise ValueError("e must be nonzero")
        allowed = set(vars_) | set(self.base.generators)
        words = tuple(reduce_word(w) for w in self.words)
        for w in words:
            for s, _ in w:
                if s not in allowed:
                    raise ValueError(f"undeclared symbol {s!r}")
        object.__setattr__(self, "words", words)

    @classmethod
    def parse(cls, base: GroupPresentation, e: int, words: Sequence[str],
              variables: Sequence[str] | None = None) -> "EquationSystem":
        n = len(words)
        vars_ = tuple(variables) if variables else tuple(f"x{i + 1}" for i in range(n))
        syms = list(base.generators) + list(vars_)
        return cls(base, n, int(e), tuple(parse_word(w, syms) for w in words), vars_)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "e": self.e, "variables": list(self.variables),
                "words": [word_to_str(w) for w in self.words]}

    @classmethod
    def from_json(cls, obj: dict) -> "EquationSystem":
        base = GroupPresentation.from_json(obj.get("base", {"generators": []}))
        return cls.parse(base, int(obj["e"]), obj.get("words", []), obj.get("variables"))


def validate_system(S: EquationSystem, R: SubringSpec) -> tuple[bool, list[str]]:
    """``(ok, diagnostics)``; diagnostics name the first violation found."""
    if not is_unit(S.e, R):
        return False, [f"exponent e = {S.e} is not a unit in {R} (1/{abs(S.e)} not in {R})"]
    for i, w in enumerate(S.words):
        for x in S.variables:
            k = exponent_sum(w, x)
            if k:
                return False, [f"exponent sum of {x} in w{i + 1} is {k}"]
    return True, []


def _fresh_names(n: int, taken: set, prefix: str = "z") -> tuple:
    names = []
    i = 1
    while len(names) < n:
        cand = f"{prefix}{i}"
        if cand not in taken:
            names.append(cand)
        i += 1
    return tuple(names)


def adjoin(S: EquationSystem) -> GroupPresentation:
    """Presentation of ``pi_S``: new generators ``z_i``, relators ``z_i^-e w_i(z)``."""
    znames = _fresh_names(S.n, set(S.base.generators))
    ren = dict(zip(S.variables, znames))
    rels = list(S.base.relators)
    for z, w in zip(znames, S.words):
        rels.append(reduce_word(((z, -S.e),) + tuple((ren.get(s, s), k) for s, k in w)))
    return GroupPresentation(S.base.generators + znames, tuple(rels))


def boundary_matrix(S: EquationSystem) -> list[list[int]]:
    """Exponent sum of the j-th new generator in the i-th new relator."""
    return [[(-S.e if i == j else 0) + exponent_sum(w, x) for j, x in enumerate(S.variables)]
            for i, w in enumerate(S.words)]


def boundary_deviations(S: EquationSystem) -> list[int]:
    """Indices of rows differing from ``-e`` times the identity."""
    B = boundary_matrix(S)
    return [i for i, row in enumerate(B)
            if any(v != (-S.e if i == j else 0) for j, v in enumerate(row))]


def homology_certificate(S: EquationSystem, R: SubringSpec) -> dict:
    det = int_det(boundary_matrix(S))
    return {"h_relative_trivial": det != 0 and is_unit(det, R), "det": det}


def relation_matrix(P: GroupPresentation) -> list[list[int]]:
    return [[exponent_sum(r, g) for g in P.generators] for r in P.relators]


def abelianization_snf(P: GroupPresentation) -> dict:
    """Invariant factors (> 1) and free rank of ``H_1`` of the presented group."""
    g = len(P.generators)
    rows = [r for r in relation_matrix(P) if any(r)]
    if g == 0:
        return {"invariant_factors": [], "free_rank": 0}
    if not rows:
        return {"invariant_factors": [], "free_rank": g}
    facs = [abs(int(v)) for v in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [v for v in facs if v != 0]
    return {"invariant_factors": [v for v in nonzero if v != 1], "free_rank": g - len(nonzero)}


def h1_tensor(P: GroupPresentation, R: SubringSpec) -> dict:
    """``H_1 (x) R``: the invariant factors that stay non-units in ``R``, and the rank."""
    snf = abelianization_snf(P)
    return {"invariant_factors": [f for f in snf["invariant_factors"] if not is_unit(f, R)],
            "free_rank": snf["free_rank"]}


def random_system(rng, n: int, base: GroupPresentation, e: int, max_len: int = 40) -> EquationSystem:
    """A random valid system: each word is a product of conjugated commutators
    and base letters, so all variable exponent sums vanish."""
    vars_ = tuple(f"x{i + 1}" for i in range(n))
    pool = list(vars_) + list(base.generators)
    words = []
    for _ in range(n):
        w: list = []
        while len(w) < max_len - 4:
            kind = rng.random()
            if kind < 0.5 and vars_:
                a, b = rng.choice(pool), rng.choice(pool)
                w += [(a, 1), (b, 1), (a, -1), (b, -1)]
            elif kind < 0.75 and vars_:
                v, c = rng.choice(vars_), rng.choice(pool)
                k = rng.choice((1, -1))
                # c v^k c^-1 v^-k
                w += [(c, 1), (v, k), (c, -1), (v, -k)]
            elif base.generators:
                w.append((rng.choice(base.generators), rng.choice((1, -1))))
            if rng.random() < 0.15:
                break
        words.append(reduce_word(w))
    return EquationSystem(base, n, e, tuple(words), vars_)


def load_systems(path: str) -> list[EquationSystem]:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("systems", [data])
    return [EquationSystem.from_json(d) for d in data]


def certificate_json(S: EquationSystem, R: SubringSpec) -> dict:
    ok, diag = validate_system(S, R)
    out = {"valid": ok, "diagnostics": diag, "ring": R.to_json(), "n": S.n, "e": S.e}
    B = boundary_matrix(S)
    out["boundary_matrix"] = B
    out["boundary_is_minus_e_identity"] = not boundary_deviations(S)
    cert = homology_certificate(S, R)
    out["det"] = cert["det"]
    out["h_relative_trivial"] = cert["h_relative_trivial"]
    out["adjoined"] = adjoin(S).to_json()
    return out

