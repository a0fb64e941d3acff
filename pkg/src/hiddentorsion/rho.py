"""Obstruction values rho(M_K) - rho(M) = root_sum(K, p) / p and their tables.

Only the difference is computed; the base value for the unknotted manifold
is an unknown constant and is reported symbolically as ``rho0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational, is_prime
from .knots import SeifertMatrix, circle_integral, multiple, root_sum

BASE_SYMBOL = "rho0"


def _check_odd_prime(p: int):
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


@dataclass(frozen=True)
class ObstructionValue:
    delta_rho: Fraction
    p: int
    knot: str

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "p": self.p,
            "delta_rho": format_rational(self.delta_rho),
            "decimal": f"{float(self.delta_rho):.6f}",
            "rho": _with_base(self.delta_rho),
        }


def _with_base(delta: Fraction) -> str:
    sign = "-" if delta < 0 else "+"
    return f"{BASE_SYMBOL} {sign} {format_rational(abs(delta))}"


def delta_rho(A: SeifertMatrix, p: int) -> Fraction:
    _check_odd_prime(p)
    return Fraction(root_sum(A, p), p)


def obstruction_value(A: SeifertMatrix, p: int) -> ObstructionValue:
    return ObstructionValue(delta_rho(A, p), p, A.label)


def family_table(A: SeifertMatrix, p: int, n_max: int, verify_upto: int = 0) -> dict:
    """Values for the i-fold connected sums of ``A``, ``i = 0..n_max``.

    Rows are ``i * delta_rho(A, p)``.  For ``i <= verify_upto`` the i-fold sum
    is also built explicitly and its value recomputed from scratch.
    """
    _check_odd_prime(p)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    base = delta_rho(A, p)
    rows = []
    for i in range(n_max + 1):
        val = i * base
        row = {"i": i, "value": val}
        if verify_upto and i <= verify_upto:
            row["direct"] = delta_rho(multiple(A, i), p)
            row["direct_ok"] = row["direct"] == val
        rows.append(row)
    values = [r["value"] for r in rows]
    distinct = len(set(values)) == len(values)
    return {"knot": A.label, "p": p, "rows": rows, "pairwise_distinct": distinct}


def compare_values(vi: Fraction, vj: Fraction) -> dict:
    """Verdict for two obstruction values; equality is only ever ``inconclusive``."""
    return {"verdict": "obstructed" if vi != vj else "inconclusive", "values": (vi, vj)}


def obstruction_report(Ai: SeifertMatrix, Aj: SeifertMatrix, p: int) -> dict:
    return compare_values(delta_rho(Ai, p), delta_rho(Aj, p))


def table_pair_reports(table: dict) -> dict:
    """Verdict counts over all pairs ``i < j`` of a family table."""
    vals = [r["value"] for r in table["rows"]]
    counts = {"obstructed": 0, "inconclusive": 0}
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            counts[compare_values(vals[i], vals[j])["verdict"]] += 1
    return counts


def star_certificate(A: SeifertMatrix, p: int) -> dict:
    _check_odd_prime(p)
    s = root_sum(A, p)
    integral = circle_integral(A)
    return {
        "sum_nonzero": s != 0,
        "integral_zero": integral == 0,
        "star": s != 0 and integral == 0,
        "sum_value": s,
        "integral": integral,
    }


def render_table(table: dict) -> str:
    """Aligned text rendering of :func:`family_table` output."""
    lines = [f"knot: {table['knot']}   p = {table['p']}   rho(M_K) = {BASE_SYMBOL} + delta",
             f"{'i':>5}  {'delta (exact)':>16}  {'decimal':>14}"]
    for r in table["rows"]:
        lines.append(f"{r['i']:>5}  {format_rational(r['value']):>16}  {float(r['value']):>14.6f}")
    lines.append(f"pairwise distinct: {'true' if table['pairwise_distinct'] else 'false'}")
    return "\n".join(lines)


def table_to_json(table: dict) -> dict:
    rows = []
    for r in table["rows"]:
        row = {"i": r["i"], "delta_rho": format_rational(r["value"]), "decimal": f"{float(r['value']):.6f}"}
        if "direct" in r:
            row["direct"] = format_rational(r["direct"])
        rows.append(row)
    return {"knot": table["knot"], "p": table["p"], "base": BASE_SYMBOL, "rows": rows,
            "pairwise_distinct": table["pairwise_distinct"]}
