"""Levine-Tristram signatures from Seifert matrices, computed exactly.

For an angle ``s`` in [0, 1) put ``w = exp(2 pi i s)`` and

    sigma(s) = signature((1 - w) A + (1 - conj(w)) A^T).

Writing ``S = A + A^T`` and ``K = A - A^T``, that matrix equals
``(1 - cos 2 pi s) (S - i cot(pi s) K)``, so away from ``s = 0`` the value
only depends on ``u = cot(pi s)``.  Arc values of the step function are
therefore computed over Z[i] at a rational ``u`` inside each arc.  Values at
roots of the Alexander polynomial (and any direct evaluation) use the exact
engine over Z[zeta_n] in :mod:`hiddentorsion.cyclotomic`.

Block-diagonal input is split into blocks first; the results for each
distinct block are cached.
"""

from __future__ import annotations

import bisect
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import sympy

from .cyclotomic import CyclotomicRing, cyclotomic_coeffs, hermitian_signature, iv_precision
from .exact import format_rational, is_prime, parse_rational
from .linalg import int_det, integer_row_kernel, poly_interpolate


class SignatureError(ValueError):
    """Raised when a step function cannot be represented exactly."""


# ---------------------------------------------------------------- matrices


class SeifertMatrix:
    """Square integer matrix with ``det(A - A^T) = 1``; 0x0 is the unknot."""

    __slots__ = ("rows", "label")

    def __init__(self, rows: Sequence[Sequence[int]] = (), label: str = "", validate: bool = True):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Seifert matrix must be square")
        self.rows = rows
        self.label = label or ("unknot" if n == 0 else f"{n}x{n} matrix")
        if validate:
            d = int_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)])
            if d != 1:
                raise ValueError(f"det(A - A^T) = {d}, expected 1")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeifertMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SeifertMatrix({self.label!r}, size={self.size})"

    def transpose(self) -> tuple:
        n = self.size
        return tuple(tuple(self.rows[j][i] for j in range(n)) for i in range(n))

    def to_json(self) -> dict:
        return {"label": self.label, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "SeifertMatrix":
        if isinstance(obj, list):
            return cls(obj)
        return cls(obj.get("rows", []), obj.get("label", ""))

    @classmethod
    def load(cls, path: str) -> "SeifertMatrix":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


UNKNOT = SeifertMatrix((), "unknot")


def torus_knot(n: int) -> SeifertMatrix:
    """T(2, n) for odd ``n``; negative ``n`` gives the mirror image."""
    if n % 2 == 0:
        raise ValueError("T(2, n) is a knot only for odd n")
    if n < 0:
        return mirror(torus_knot(-n))
    size = n - 1
    rows = [[-1 if i == j else (1 if j == i + 1 else 0) for j in range(size)] for i in range(size)]
    return SeifertMatrix(rows, f"T(2,{n})" if n != 1 else "unknot")


def trefoil() -> SeifertMatrix:
    return torus_knot(3)


def connected_sum(*mats: SeifertMatrix) -> SeifertMatrix:
    size = sum(m.size for m in mats)
    rows = [[0] * size for _ in range(size)]
    off = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            rows[off + i][off:off + m.size] = r
        off += m.size
    labels = [m.label for m in mats if m.size]
    return SeifertMatrix(rows, " # ".join(labels) or "unknot", validate=False)


def mirror(A: SeifertMatrix) -> SeifertMatrix:
    rows = [[-v for v in r] for r in A.transpose()]
    if not A.size:
        return A
    lab = A.label[7:-1] if A.label.startswith("mirror(") and A.label.endswith(")") else f"mirror({A.label})"
    return SeifertMatrix(rows, lab, validate=False)


def multiple(A: SeifertMatrix, k: int) -> SeifertMatrix:
    """Connected sum of ``|k|`` copies of ``A`` (mirrored when ``k < 0``)."""
    base = A if k >= 0 else mirror(A)
    if k == 0:
        return UNKNOT
    out = connected_sum(*([base] * abs(k)))
    out.label = f"{abs(k)}*{base.label}" if abs(k) > 1 else base.label
    return out


def random_congruence(A: SeifertMatrix, rng: random.Random, steps: int = 6) -> SeifertMatrix:
    """``P^T A P`` for a random unimodular ``P`` (same knot, mixed basis)."""
    n = A.size
    if n < 2:
        return A
    M = [list(r) for r in A.rows]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        # column i += c * column j ; row i += c * row j
        for r in range(n):
            M[r][i] += c * M[r][j]
        for col in range(n):
            M[i][col] += c * M[j][col]
    return SeifertMatrix(M, A.label, validate=False)


def blocks(A: SeifertMatrix) -> list[tuple[tuple[int, ...], ...]]:
    """Diagonal blocks of ``A`` after permuting to block-diagonal form."""
    n = A.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if i != j and A.rows[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idx in sorted(groups.values()):
        out.append(tuple(tuple(A.rows[i][j] for j in idx) for i in idx))
    return out


def _block_counts(A: SeifertMatrix) -> dict:
    counts: dict = {}
    for b in blocks(A):
        counts[b] = counts.get(b, 0) + 1
    return counts


# ---------------------------------------------------------------- angles


def parse_angle(value) -> Fraction:
    """A reduced angle in [0, 1) (fraction of a full turn)."""
    if isinstance(value, str):
        q = parse_rational(value)
    elif isinstance(value, float):
        raise TypeError("angles must be exact rationals")
    else:
        q = Fraction(value)
    return q - math.floor(q)


# ---------------------------------------------------------------- exact evaluation


def hermitian_at(rows, angle: Fraction):
    """The matrix ``(1 - w) A + (1 - conj w) A^T`` over Z[zeta_n], ``w = zeta_n^u``."""
    angle = parse_angle(angle)
    n, u = angle.denominator, angle.numerator
    ring = CyclotomicRing(n)
    w, wb, one = ring.zeta(u), ring.zeta(-u), ring.one
    size = len(rows)
    H = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            a, at = rows[i][j], rows[j][i]
            v = ring.scale(one, a + at)
            if a:
                v = ring.sub(v, ring.scale(w, a))
            if at:
                v = ring.sub(v, ring.scale(wb, at))
            H[i][j] = v
    return ring, H


@lru_cache(maxsize=65536)
def _block_signature_exact(rows, angle: Fraction) -> tuple[int, int]:
    ring, H = hermitian_at(rows, angle)
    return hermitian_signature(ring, H)


def signature_exact(A: SeifertMatrix, angle, with_nullity: bool = False):
    """Signature at ``angle`` by exact elimination over the cyclotomic field."""
    angle = parse_angle(angle)
    sig = nul = 0
    if angle != 0:
        for b, k in _block_counts(A).items():
            s, z = _block_signature_exact(b, angle)
            sig += k * s
            nul += k * z
    else:
        nul = A.size
    return (sig, nul) if with_nullity else sig


@lru_cache(maxsize=65536)
def _block_signature_u(rows, u: Fraction) -> int:
    """Signature of ``S - i u K`` over Z[i], scaled to integer entries."""
    ring = CyclotomicRing(4)
    p, q = u.numerator, u.denominator
    n = len(rows)
    H = [[(q * (rows[i][j] + rows[j][i]), -p * (rows[i][j] - rows[j][i])) for j in range(n)]
         for i in range(n)]
    return hermitian_signature(ring, H)[0]


def signature_cot(A: SeifertMatrix, u) -> int:
    """Signature at the angle ``s`` in (0, 1) with ``cot(pi s) = u``."""
    u = Fraction(u)
    return sum(k * _block_signature_u(b, u) for b, k in _block_counts(A).items())


# ---------------------------------------------------------------- Alexander polynomial


def alexander_polynomial(A: SeifertMatrix) -> list[int]:
    """Coefficients (low degree first) of ``det(t A - A^T)``."""
    n = A.size
    if n == 0:
        return [1]
    At = A.transpose()
    xs = list(range(n + 1))
    ys = [int_det([[x * A.rows[i][j] - At[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = poly_interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral interpolation")
    out = [int(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return int(sympy.totient(m))


def _divmod_monic(p: list, d: tuple):
    """Quotient and remainder of integer polynomials (low degree first), ``d`` monic."""
    p = list(p)
    n, k = len(p) - 1, len(d) - 1
    if n < k:
        return [], p
    q = [0] * (n - k + 1)
    for i in range(n - k, -1, -1):
        c = p[i + k]
        q[i] = c
        if c:
            for j in range(k + 1):
                p[i + j] -= c * d[j]
    rem = p[:k]
    return q, rem


def unit_root_structure(poly: Sequence[int]) -> dict:
    """Cyclotomic factors of ``poly`` and a check on the leftover factor.

    Returns ``{"factors": {m: multiplicity}, "rest": coeffs, "rest_unit_roots": k}``
    where ``k`` is the number of unit-circle roots of the leftover factor.
    """
    P = [int(c) for c in poly]
    while len(P) > 1 and P[-1] == 0:
        P.pop()
    while len(P) > 1 and P[0] == 0:
        P.pop(0)
    factors: dict[int, int] = {}
    deg = len(P) - 1
    m = 1
    # phi(m) >= sqrt(m / 2), so larger m cannot divide
    while deg > 0 and m <= 2 * deg * deg + 2:
        if _phi(m) <= len(P) - 1:
            C = cyclotomic_coeffs(m)
            while len(P) >= len(C):
                q, r = _divmod_monic(P, C)
                if any(r):
                    break
                P = q
                factors[m] = factors.get(m, 0) + 1
        m += 1
    t = sympy.Symbol("t")
    return {"factors": factors, "rest": P,
            "rest_unit_roots": _unit_circle_root_count(sympy.Poly(list(reversed(P)), t), t)}


def _unit_circle_root_count(P, t) -> int:
    if P.degree() <= 0:
        return 0
    R = sympy.Poly(list(reversed(P.all_coeffs())), t)
    G = sympy.gcd(P, R)
    if G.degree() <= 0:
        return 0
    d = G.degree()
    g = [int(c) for c in reversed(G.all_coeffs())]
    if d % 2 or any(g[i] != g[d - i] for i in range(d + 1)):
        if any(g[i] != -g[d - i] for i in range(d + 1)):
            raise SignatureError("unexpected non-reciprocal factor")
    k = d // 2
    s = sympy.Symbol("s")
    # t^-k G(t) = g_k + sum_j g_{k+j} (t^j + t^-j), and t^j + t^-j = V_j(s)
    V = [sympy.Integer(2), s]
    for _ in range(2, k + 1):
        V.append(sympy.expand(s * V[-1] - V[-2]))
    Q = g[k] + sum(g[k + j] * V[j] for j in range(1, k + 1))
    Qp = sympy.Poly(Q, s)
    if Qp.degree() <= 0:
        return 0
    return int(Qp.count_roots(-2, 2)) * 2


# ---------------------------------------------------------------- step functions


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on the circle.

    Arc ``0`` is the arc through angle 0, ending at ``breakpoints[0]``; arc
    ``i`` (``i >= 1``) runs from ``breakpoints[i-1]`` to ``breakpoints[i]``.
    With no breakpoints there is a single arc.
    """

    breakpoints: tuple
    arc_values: tuple
    point_values: tuple

    def __post_init__(self):
        r = len(self.breakpoints)
        if len(self.arc_values) != max(r, 1) or len(self.point_values) != r:
            raise ValueError("inconsistent step function")

    def arc_of(self, angle: Fraction) -> int | None:
        """Index of the open arc containing ``angle``; ``None`` at a breakpoint."""
        angle = parse_angle(angle)
        bps = self.breakpoints
        if not bps:
            return 0
        i = bisect.bisect_left(bps, angle)
        if i < len(bps) and bps[i] == angle:
            return None
        return 0 if i == len(bps) else i

    def __call__(self, angle) -> int:
        angle = parse_angle(angle)
        i = self.arc_of(angle)
        if i is None:
            return self.point_values[self.breakpoints.index(angle)]
        return self.arc_values[i]

    def arc_bounds(self, i: int) -> tuple[Fraction, Fraction]:
        bps = self.breakpoints
        if not bps:
            return (Fraction(0), Fraction(1))
        if i == 0:
            return (bps[-1], bps[0])
        return (bps[i - 1], bps[i])

    def arc_lengths(self) -> list[Fraction]:
        bps = self.breakpoints
        if not bps:
            return [Fraction(1)]
        return [1 - bps[-1] + bps[0]] + [bps[i] - bps[i - 1] for i in range(1, len(bps))]

    def integral(self) -> Fraction:
        return sum((v * ln for v, ln in zip(self.arc_values, self.arc_lengths())), Fraction(0))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return step_sum([(self, 1), (other, 1)])

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.breakpoints, tuple(-v for v in self.arc_values),
                            tuple(-v for v in self.point_values))

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "arc_values": list(self.arc_values),
            "point_values": list(self.point_values),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StepFunction":
        return cls(tuple(parse_rational(b) for b in obj["breakpoints"]),
                   tuple(int(v) for v in obj["arc_values"]), tuple(int(v) for v in obj["point_values"]))


ZERO_STEP = StepFunction((), (0,), ())


def step_sum(terms) -> StepFunction:
    """``sum k * f`` over ``(f, k)`` pairs."""
    terms = [(f, k) for f, k in terms if k]
    bps = sorted({b for f, _ in terms for b in f.breakpoints})
    if not bps:
        return StepFunction((), (sum(k * f.arc_values[0] for f, k in terms),), ())
    # one sample point inside each arc of the merged partition
    samples = [(bps[-1] + bps[0] + 1) / 2 % 1] + [(bps[i - 1] + bps[i]) / 2 for i in range(1, len(bps))]
    arcs = tuple(sum(k * f(s) for f, k in terms) for s in samples)
    points = tuple(sum(k * f(b) for f, k in terms) for b in bps)
    return StepFunction(tuple(bps), arcs, points)


def _cot_interval(angle: Fraction, prec: int):
    with iv_precision(prec) as iv:
        return iv.cot(iv.pi * angle.numerator / angle.denominator)


def _rational_between(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """A short rational strictly between two bounds (``None`` = unbounded)."""
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(math.floor(hi) - 1)
    if hi is None:
        return Fraction(math.floor(lo) + 1)
    if math.floor(lo) + 1 < hi:
        return Fraction(math.floor(lo) + 1)
    den = 1
    while True:
        cand = Fraction(math.floor(lo * den) + 1, den)
        if lo < cand < hi:
            return cand
        den *= 2


def _endpoint(raw) -> Fraction:
    p, q = mpmath.libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def _cot_bounds(angle: Fraction) -> tuple[Fraction, Fraction]:
    """Rational bounds ``lo < cot(pi angle) < hi``."""
    iv = _cot_interval(angle, 96)
    lo, hi = (_endpoint(r) for r in iv._mpi_)
    return lo - Fraction(1, 2 ** 80), hi + Fraction(1, 2 ** 80)


def _arc_u(lo_angle: Fraction | None, hi_angle: Fraction | None) -> Fraction:
    """Rational ``u`` with ``cot(pi s) = u`` for some ``s`` strictly between the angles.

    ``lo_angle = None`` means the arc starts at angle 0 (``u`` unbounded
    above); ``hi_angle = None`` means it ends at angle 1.
    """
    upper = _cot_bounds(lo_angle)[0] if lo_angle is not None else None
    lower = _cot_bounds(hi_angle)[1] if hi_angle is not None else None
    return _rational_between(lower, upper)


@lru_cache(maxsize=4096)
def _block_step_function(rows) -> StepFunction:
    A = SeifertMatrix(rows, validate=False)
    info = unit_root_structure(alexander_polynomial(A))
    if info["rest_unit_roots"]:
        raise SignatureError(
            "Alexander polynomial has unit-circle roots at irrational angles; offending factor "
            + _poly_str(info["rest"]))
    bps = sorted({Fraction(k, m) for m in info["factors"] if m > 1
                  for k in range(1, m) if math.gcd(k, m) == 1})
    if not bps:
        return StepFunction((), (_block_signature_u(rows, Fraction(1)),), ())
    # sigma(s) = sigma(1 - s): the two matrices are complex conjugates, and
    # the breakpoint set is symmetric, so arc i mirrors arc r - i
    r = len(bps)
    arcs = [_block_signature_u(rows, _arc_u(None, bps[0]))] + [None] * (r - 1)
    for i in range(1, r // 2 + 1):
        arcs[i] = _block_signature_u(rows, _arc_u(bps[i - 1], bps[i]))
    for i in range(r // 2 + 1, r):
        arcs[i] = arcs[r - i]
    half = {b: _block_signature_exact(rows, b)[0] for b in bps if b <= Fraction(1, 2)}
    points = [half[b] if b in half else half[1 - b] for b in bps]
    return StepFunction(tuple(bps), tuple(arcs), tuple(points))


def _poly_str(coeffs) -> str:
    t = sympy.Symbol("t")
    return str(sympy.Poly(list(reversed(coeffs)), t).as_expr())


def signature_function(A: SeifertMatrix) -> StepFunction:
    if A.size == 0:
        return ZERO_STEP
    return step_sum([(_block_step_function(b), k) for b, k in _block_counts(A).items()])


def signature_at(A: SeifertMatrix, angle, method: str = "auto") -> int:
    """Levine-Tristram signature at ``exp(2 pi i angle)``.

    ``method="exact"`` always eliminates over Z[zeta_n]; ``"auto"`` reads the
    cached step function when it exists and falls back to the exact route.
    """
    angle = parse_angle(angle)
    if angle == 0 or A.size == 0:
        return 0
    if method == "exact":
        return signature_exact(A, angle)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    total = 0
    for b, k in _block_counts(A).items():
        try:
            f = _block_step_function(b)
        except SignatureError:
            total += k * _block_signature_exact(b, angle)[0]
            continue
        total += k * f(angle)
    return total


def root_sum(A: SeifertMatrix, p: int, method: str = "auto") -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return sum(signature_at(A, Fraction(k, p), method) for k in range(p))


def circle_integral(A: SeifertMatrix) -> Fraction:
    return signature_function(A).integral()


def float_signature(A: SeifertMatrix, angle: float, tol: float = 1e-9) -> int:
    """Floating-point signature via eigenvalues (an independent oracle)."""
    import numpy as np

    n = A.size
    if n == 0:
        return 0
    M = np.array(A.rows, dtype=float)
    w = np.exp(2j * np.pi * angle)
    H = (1 - w) * M + (1 - np.conj(w)) * M.T
    ev = np.linalg.eigvalsh(H)
    return int(np.sum(ev > tol) - np.sum(ev < -tol))


# ---------------------------------------------------------------- the (*) search


@dataclass(frozen=True)
class StarCertificate:
    coefficients: tuple
    sum_value: int

    def to_json(self) -> dict:
        return {"coefficients": list(self.coefficients), "sum_value": self.sum_value}


def combination_knot(basis: Sequence[SeifertMatrix], coeffs: Sequence[int]) -> SeifertMatrix:
    parts = [multiple(A, c) for A, c in zip(basis, coeffs) if c]
    if not parts:
        return UNKNOT
    out = connected_sum(*parts)
    out.label = " + ".join(
        f"{c}*{A.label}" if c > 0 else f"{-c}*mirror({A.label})" for A, c in zip(basis, coeffs) if c)
    return out


def verify_star(p: int, basis: Sequence[SeifertMatrix], coeffs: Sequence[int]) -> dict:
    """Rebuild the connected sum and recompute both halves of the condition."""
    K = combination_knot(basis, coeffs)
    integral = circle_integral(K)
    rs = root_sum(K, p)
    return {
        "knot": K.label,
        "integral": integral,
        "sum_value": rs,
        "ok": integral == 0 and rs != 0 and any(coeffs),
    }


def search_star(p: int, basis: Sequence[SeifertMatrix], bound: int = 100):
    """Smallest integer combination killing the integral but not the root sum.

    Candidates are ordered by ``(max |c_i|, sum |c_i|, c)`` with the first
    nonzero coefficient positive; returns ``None`` if nothing within
    ``bound`` works.  Cost grows like ``(2 * bound + 1) ** (len(basis) - 1)``.
    """
    if not basis:
        raise ValueError("basis must be nonempty")
    integrals = [circle_integral(A) for A in basis]
    sums = [root_sum(A, p) for A in basis]
    n = len(basis)
    den = 1
    for v in integrals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in integrals]
    pivot = next((i for i in reversed(range(n)) if ints[i]), None)
    free = [i for i in range(n) if i != pivot]

    def candidates(m):
        # every c with max |c_i| == m solving sum c_i ints_i == 0
        rng = range(-m, m + 1)
        for combo in _product(rng, len(free)):
            c = [0] * n
            for i, v in zip(free, combo):
                c[i] = v
            if pivot is not None:
                s = sum(ints[i] * c[i] for i in free)
                if s % ints[pivot]:
                    continue
                c[pivot] = -s // ints[pivot]
                if abs(c[pivot]) > m:
                    continue
            if max(abs(v) for v in c) != m:
                continue
            yield c

    for m in range(1, bound + 1):
        best = None
        for c in candidates(m):
            first = next(v for v in c if v)
            if first < 0:
                continue
            val = sum(a * b for a, b in zip(c, sums))
            if val == 0:
                continue
            key = (sum(abs(v) for v in c), tuple(c))
            if best is None or key < best[0]:
                best = (key, val)
        if best is not None:
            return StarCertificate(best[0][1], best[1])
    return None


def _product(rng, k):
    if k == 0:
        yield ()
        return
    for head in rng:
        for tail in _product(rng, k - 1):
            yield (head,) + tail


def integral_kernel_basis(basis: Sequence[SeifertMatrix]) -> list[list[int]]:
    """Z-basis of the integer combinations with vanishing total integral."""
    integrals = [circle_integral(A) for A in basis]
    den = 1
    for v in integrals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return integer_row_kernel([int(v * den) for v in integrals])


# ---------------------------------------------------------------- library and expressions


def library() -> dict[str, SeifertMatrix]:
    return {
        "unknot": UNKNOT,
        "trefoil": torus_knot(3),
        "T(2,3)": torus_knot(3),
        "T(2,5)": torus_knot(5),
        "T(2,7)": torus_knot(7),
        "T(2,9)": torus_knot(9),
        "4_1": SeifertMatrix([[1, 1], [0, -1]], "4_1"),
        "6_1": SeifertMatrix([[-1, 1], [0, 2]], "6_1"),
    }


def knot_star() -> SeifertMatrix:
    """18 T(2,3) # 7 mirror(T(2,7)), the combination certified for p = 3."""
    return parse_knot("18*T(2,3)+7*mirror(T(2,7))")


class _Parser:
    def __init__(self, text: str, names: dict | None):
        self.s = text.replace(" ", "")
        self.i = 0
        self.names = names or {}

    def error(self, msg):
        raise ValueError(f"knot expression {self.s!r}: {msg} at position {self.i}")

    def peek(self, k=1):
        return self.s[self.i:self.i + k]

    def expect(self, tok):
        if not self.s.startswith(tok, self.i):
            self.error(f"expected {tok!r}")
        self.i += len(tok)

    def number(self):
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            self.error("expected a number")
        return int(self.s[j:self.i])

    def expr(self):
        parts = [self.term(1)]
        while self.peek() in ("+", "-") and self.peek():
            sign = 1 if self.peek() == "+" else -1
            self.i += 1
            parts.append(self.term(sign))
        return connected_sum(*parts) if len(parts) > 1 else parts[0]

    def term(self, sign):
        if self.peek() == "-":
            self.i += 1
            sign = -sign
        k = 1
        if self.peek().isdigit():
            j = self.i
            k = self.number()
            if self.peek() == "*":
                self.i += 1
            elif self.peek() in ("_", ".") or self.peek().isalnum() and self.peek() not in "Tm":
                # a table name such as 4_1, not a multiplier
                self.i, k = j, 1
        atom = self.atom()
        return multiple(atom, sign * k)

    def atom(self):
        s = self.s
        if s.startswith("mirror(", self.i):
            self.i += len("mirror(")
            inner = self.expr()
            self.expect(")")
            return mirror(inner)
        if s.startswith("T(2,", self.i):
            self.i += len("T(2,")
            neg = self.peek() == "-"
            if neg:
                self.i += 1
            n = self.number()
            self.expect(")")
            return torus_knot(-n if neg else n)
        if self.peek() == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        j = self.i
        while self.i < len(s) and (s[self.i].isalnum() or s[self.i] in "_."):
            self.i += 1
        name = s[j:self.i]
        if name in self.names:
            return self.names[name]
        lib = library()
        if name in lib:
            return lib[name]
        self.i = j
        self.error(f"unknown knot {name!r}")


def parse_knot(text: str, names: dict | None = None) -> SeifertMatrix:
    """Parse expressions such as ``18*T(2,3)+7*mirror(T(2,7))``.

    ``+`` is connected sum, ``k*K`` is ``k`` copies, ``-K`` and
    ``mirror(K)`` are mirror images; ``names`` supplies extra matrices.
    """
    p = _Parser(text, names)
    out = p.expr()
    if p.i != len(p.s):
        p.error("unexpected trailing input")
    K = SeifertMatrix(out.rows, text.strip(), validate=False)
    return K
