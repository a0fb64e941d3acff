"""Command-line entry point: ``hiddentorsion <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (and failed reproductions),
2 on usage errors.  JSON output is sorted and therefore byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import tower as tw
from .exact import ZZ, ZZ_2, SubringSpec, format_rational, parse_rational


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(2)


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "to_json"):
        return _jsonable(v.to_json())
    return v


def _emit(args, payload, text: str | None = None):
    if args.format == "json" or text is None:
        print(json.dumps(_jsonable(payload), sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _ring(text: str) -> SubringSpec:
    try:
        return SubringSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _stage(text: str):
    try:
        return tw.parse_stage(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})")


# ---------------------------------------------------------------- group


def _element_json(g: tw.TowerElement, stage):
    out = {"stage": tw.stage_label(stage) if stage is None else stage}
    if stage is not None and g.in_stage(stage):
        d, c, a, b = g.local(stage)
        out.update(d=format_rational(d), c=c, a=str(a), b=str(b))
    out["unified"] = g.to_json()
    return out


def _element_text(g: tw.TowerElement, stage) -> str:
    u = g.to_json()
    line = f"unified: z^{u['d']} t^{u['c']} x^{u['a']} y^{u['b']}"
    if stage is not None and g.in_stage(stage):
        d, c, a, b = g.local(stage)
        line = f"stage {stage}: z^{format_rational(d)} t^{c} x^{a} y^{b}\n" + line
    return line


def _element_arg(text: str, stage) -> tw.TowerElement:
    s = text.strip()
    if s.startswith("{"):
        return tw.TowerElement.from_json(json.loads(s))
    return tw.normalize(s, stage)


def cmd_group(args):
    stage = args.stage
    op = args.op
    if op == "relators":
        if stage is None:
            raise DomainError("relators need a finite --stage")
        rows = {k: tw.normalize(w, stage).is_identity() for k, w in tw.relator_words(stage).items()}
        text = "\n".join(f"{k:>8}  {'identity' if v else 'NOT identity'}" for k, v in rows.items())
        return _emit(args, {"stage": stage, "relators_trivial": rows}, text)
    if not args.words:
        raise DomainError(f"group {op} needs at least one word")
    gs = [_element_arg(w, stage) for w in args.words]
    if op in ("normalize", "mul"):
        g = gs[0]
        for h in gs[1:]:
            g = g * h
        return _emit(args, _element_json(g, stage), _element_text(g, stage))
    g = gs[0]
    if op == "inv":
        h = g.inverse()
        return _emit(args, _element_json(h, stage), _element_text(h, stage))
    if op == "pow":
        if args.n is None:
            raise DomainError("group pow needs --n")
        h = g ** args.n
        return _emit(args, _element_json(h, stage), _element_text(h, stage))
    if op == "commutator":
        if len(gs) != 2:
            raise DomainError("group commutator needs exactly two words")
        h = tw.commutator(gs[0], gs[1])
        return _emit(args, _element_json(h, stage), _element_text(h, stage))
    if op == "order":
        o = tw.order(g)
        return _emit(args, {"order": o}, "inf" if o == tw.INFINITY else str(o))
    if op == "minimal-stage":
        m = tw.minimal_stage(g)
        return _emit(args, {"minimal_stage": m}, str(m))
    if op == "abelianize":
        a, b, c = tw.abelianize(g)
        return _emit(args, {"a_mod_2": a, "b_mod_2": b, "c": c}, f"({a}, {b}, {c}) in (Z/2)^2 x Z")
    raise DomainError(f"unknown group operation {op}")


# ---------------------------------------------------------------- series


def cmd_series(args):
    from . import series as se

    stage = args.stage
    if args.op == "length":
        rep = se.lcs_length_report(stage)
        return _emit(args, rep, f"lcs length: {rep['length_tag']}  witness: {rep['witness']}")
    g = _element_arg(args.word, stage)
    if args.op == "member":
        idx = se.SeriesIndex.parse(args.index)
        ok = se.series_member(g, idx)
        return _emit(args, {"index": idx.to_json(), "member": ok}, "true" if ok else "false")
    if args.op == "project":
        q = se.project_P3(g, args.p)
        o = se.quotient_order(q)
        return _emit(args, {"image": q.to_json(), "order": o},
                     "image: " + " ".join(f"{k}={v}" for k, v in q.to_json().items())
                     + f"\norder: {'inf' if o == tw.INFINITY else o}")
    if args.op == "invisible":
        ok = se.nilpotent_invisible(g, args.q_max)
        return _emit(args, {"q_max": args.q_max, "invisible": ok}, "true" if ok else "false")
    if args.op == "quotient":
        img = se.lcs_quotient(g, args.q)
        return _emit(args, {"q": args.q, "image": list(img)}, str(img))
    raise DomainError(f"unknown series operation {args.op}")


# ---------------------------------------------------------------- knots


def _knot(args, expr: str | None = None):
    from .knots import SeifertMatrix, parse_knot

    names = {}
    for i, path in enumerate(args.matrix or []):
        try:
            A = SeifertMatrix.load(path)
        except OSError as exc:
            raise DomainError(f"cannot read {path}: {exc.strerror}")
        names[f"M{i + 1}"] = A
    if expr is None:
        expr = getattr(args, "knot", None) or getattr(args, "knot_pos", None)
    if expr is None and getattr(args, "knots", None) and len(args.knots) == 1:
        expr = args.knots[0]
    if expr is None:
        if len(names) == 1:
            return names["M1"]
        raise DomainError("give a knot expression or exactly one --matrix")
    return parse_knot(expr, names)


def cmd_sig(args):
    from . import knots as kn

    A = _knot(args)
    if args.op == "at":
        if args.angle is None:
            raise DomainError("sig at needs --angle")
        s = kn.parse_angle(args.angle)
        v = kn.signature_at(A, s, method=args.method)
        return _emit(args, {"knot": A.label, "angle": s, "signature": v}, str(v))
    if args.op == "function":
        f = kn.signature_function(A)
        lines = [f"{'arc':>4}  {'from':>10}  {'to':>10}  {'value':>6}"]
        for i, v in enumerate(f.arc_values):
            lo, hi = f.arc_bounds(i)
            lines.append(f"{i:>4}  {format_rational(lo):>10}  {format_rational(hi):>10}  {v:>6}")
        for b, v in zip(f.breakpoints, f.point_values):
            lines.append(f"at {format_rational(b)}: {v}")
        return _emit(args, {"knot": A.label, "function": f.to_json()}, "\n".join(lines))
    if args.op == "rootsum":
        v = kn.root_sum(A, args.p, method=args.method)
        return _emit(args, {"knot": A.label, "p": args.p, "root_sum": v}, str(v))
    if args.op == "integral":
        v = kn.circle_integral(A)
        return _emit(args, {"knot": A.label, "integral": v}, format_rational(v))
    if args.op == "alexander":
        poly = kn.alexander_polynomial(A)
        return _emit(args, {"knot": A.label, "coefficients": poly}, " ".join(map(str, poly)))
    raise DomainError(f"unknown sig operation {args.op}")


def cmd_rho(args):
    from . import rho

    if args.op == "table":
        A = _knot(args)
        t = rho.family_table(A, args.p, args.n, verify_upto=args.verify)
        return _emit(args, rho.table_to_json(t), rho.render_table(t))
    if args.op == "delta":
        A = _knot(args)
        v = rho.obstruction_value(A, args.p)
        j = v.to_json()
        return _emit(args, j, f"{j['rho']}  ({j['decimal']})")
    if args.op == "report":
        if len(args.knots) != 2:
            raise DomainError("rho report needs two knot expressions")
        Ai, Aj = (_knot(args, k) for k in args.knots)
        rep = rho.obstruction_report(Ai, Aj, args.p)
        vi, vj = rep["values"]
        return _emit(args, {"verdict": rep["verdict"], "values": [vi, vj]},
                     f"{rep['verdict']}  ({format_rational(vi)} vs {format_rational(vj)})")
    if args.op == "star":
        A = _knot(args)
        c = rho.star_certificate(A, args.p)
        return _emit(args, c, "\n".join(f"{k}: {_jsonable(v)}" for k, v in c.items()))
    raise DomainError(f"unknown rho operation {args.op}")


def cmd_search(args):
    from . import knots as kn

    basis = [_knot(args, k) for k in args.basis]
    if args.verify:
        coeffs = [int(v) for v in args.verify.split(",")]
        if len(coeffs) != len(basis):
            raise DomainError("--verify needs one coefficient per basis knot")
        rep = kn.verify_star(args.p, basis, coeffs)
        rep["coefficients"] = coeffs
        text = (f"knot: {rep['knot']}\nintegral: {format_rational(rep['integral'])}\n"
                f"sum value: {rep['sum_value']}\nok: {str(rep['ok']).lower()}")
        _emit(args, rep, text)
        return 0 if rep["ok"] else 1
    cert = kn.search_star(args.p, basis, bound=args.bound)
    if cert is None:
        _emit(args, {"certificate": None}, f"no certificate with coefficients up to {args.bound}")
        return 1
    text = f"coefficients: {list(cert.coefficients)}\nsum value: {cert.sum_value}"
    return _emit(args, {"certificate": cert.to_json()}, text)


# ---------------------------------------------------------------- equations


def cmd_eq(args):
    from . import equations as eq

    if args.op == "check":
        try:
            systems = eq.load_systems(args.file)
        except OSError as exc:
            raise DomainError(f"cannot read {args.file}: {exc.strerror}")
        except (KeyError, ValueError) as exc:
            raise DomainError(f"{args.file}: {exc}")
        certs = [eq.certificate_json(S, args.ring) for S in systems]
        lines = []
        for i, c in enumerate(certs):
            status = "valid" if c["valid"] else "invalid: " + "; ".join(c["diagnostics"])
            lines.append(f"system {i}: {status}; det = {c['det']}; "
                         f"H_*(relative; {args.ring}) = 0: {str(c['h_relative_trivial']).lower()}")
        _emit(args, {"ring": args.ring.to_json(), "certificates": certs}, "\n".join(lines))
        return 0 if all(c["valid"] for c in certs) else 1
    if args.op == "snf":
        if args.stage is not None:
            P = eq.tower_presentation(args.stage)
        elif args.file:
            P = eq.GroupPresentation.from_json(_load_json(args.file))
        else:
            raise DomainError("eq snf needs --stage or a presentation file")
        r = eq.abelianization_snf(P)
        parts = [f"Z/{d}" for d in r["invariant_factors"]] + ["Z"] * r["free_rank"]
        return _emit(args, r, " + ".join(parts) if parts else "0")
    raise DomainError(f"unknown eq operation {args.op}")


# ---------------------------------------------------------------- locality


def _rational_list(text: str):
    return [parse_rational(v) for v in text.split(",") if v.strip()]


def cmd_local(args):
    from . import locality as lo

    if args.op == "trivial":
        B = json.loads(args.B)
        r = lo.trivial_action_locality(B, _rational_list(args.f), args.ring)
        return _emit(args, r, "g = (" + ", ".join(format_rational(v) for v in r["solution"]) + ")")
    if args.matrix:
        A = lo.LaurentMatrix.from_json(_load_json(args.matrix[0]))
    elif args.A:
        A = lo.LaurentMatrix.from_json(json.loads(args.A))
    else:
        raise DomainError("give a matrix with --A or --matrix")
    ring = args.ring or A.ring
    if args.op == "criterion":
        r = lo.locality_criterion(A, ring)
        text = "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else format_rational(v)}"
                         for k, v in r.items())
        return _emit(args, r, text)
    if args.op == "solve":
        g = lo.solve_local(A, _rational_list(args.f), ring)
        return _emit(args, {"solution": g}, "g = (" + ", ".join(format_rational(v) for v in g) + ")")
    raise DomainError(f"unknown local operation {args.op}")


# ---------------------------------------------------------------- reproduce


def cmd_reproduce(args):
    from . import reproduce as rp

    targets = list(rp.TARGETS) if args.target == "all" else [args.target]
    try:
        names = [rp.resolve(t) for t in targets]
    except KeyError as exc:
        raise DomainError(f"unknown target {exc.args[0]!r}; choose from "
                          + ", ".join(list(rp.TARGETS) + list(rp.ALIASES)))
    results = [rp.run(n, seed=args.seed) for n in names]
    payload = {"results": [{"target": r["target"], "ok": r["ok"],
                            "checks": [c.to_json() for c in r["checks"]]} for r in results]}
    def short(v):
        out = json.dumps(v, ensure_ascii=False)
        if isinstance(v, list) and len(out) > 120:
            out = json.dumps(v[:4], ensure_ascii=False)[:-1] + f", ... ({len(v)} items)]"
        return out

    lines = []
    for r in results:
        lines.append(f"== {r['target']}: {'PASS' if r['ok'] else 'FAIL'} ({r['seconds']:.2f} s)")
        for c in r["checks"]:
            j = c.to_json()
            lines.append(f"  [{'ok' if c.ok else 'MISMATCH'}] {c.name} ({c.source}): "
                         f"expected {short(j['expected'])}, computed {short(j['computed'])}")
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r["ok"] for r in results) else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=None,
                     help="output format (default: text)")

    p = _Parser(prog="hiddentorsion", parents=[fmt],
                description="Exact computations for the torus-bundle group tower and its invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, func):
        sp = sub.add_parser(name, help=help_, parents=[fmt])
        sp.set_defaults(func=func)
        return sp

    g = add("group", "normal forms in the tower groups", cmd_group)
    g.add_argument("op", choices=("normalize", "mul", "inv", "pow", "commutator", "order",
                                  "minimal-stage", "abelianize", "relators"))
    g.add_argument("words", nargs="*", help="words over x,y,t (capitals or ^-1 for inverses) or JSON elements")
    g.add_argument("--stage", type=_stage, default=None, help="odd stage m, or 'inf' (default)")
    g.add_argument("--n", type=int, default=None, help="exponent for pow")

    s = add("series", "lower central and mixed series", cmd_series)
    s.add_argument("op", choices=("member", "project", "invisible", "quotient", "length"))
    s.add_argument("word", nargs="?", default="xyXY")
    s.add_argument("--stage", type=_stage, default=None)
    s.add_argument("--index", default="omega", help="lcs:q, omega, omega1 or mixed:3:p")
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--q-max", dest="q_max", type=int, default=64)
    s.add_argument("--q", type=int, default=2)

    def knot_args(sp, positional=True):
        if positional:
            sp.add_argument("knot_pos", nargs="?", default=None, metavar="KNOT",
                            help="expression such as 18*T(2,3)+7*mirror(T(2,7))")
        sp.add_argument("--knot", default=None)
        sp.add_argument("--matrix", action="append", metavar="PATH",
                        help="Seifert matrix JSON file; named M1, M2, ... in expressions")

    k = add("sig", "Levine-Tristram signatures", cmd_sig)
    k.add_argument("op", choices=("at", "function", "rootsum", "integral", "alexander"))
    knot_args(k)
    k.add_argument("--angle", help="exact angle s in [0,1); omega = exp(2 pi i s)")
    k.add_argument("--p", type=int, default=3)
    k.add_argument("--method", choices=("auto", "exact"), default="auto")

    r = add("rho", "obstruction values", cmd_rho)
    r.add_argument("op", choices=("delta", "table", "report", "star"))
    r.add_argument("knots", nargs="*", help="knot expressions (two for report)")
    r.add_argument("--knot", default=None)
    r.add_argument("--matrix", action="append", metavar="PATH")
    r.add_argument("--p", type=int, default=3)
    r.add_argument("--n", type=int, default=10, help="largest multiple in the table")
    r.add_argument("--verify", type=int, default=0, help="recompute rows i <= VERIFY directly")

    se = add("search", "search for a knot with zero integral and nonzero root sum", cmd_search)
    se.add_argument("basis", nargs="+", help="basis knot expressions")
    se.add_argument("--p", type=int, default=3)
    se.add_argument("--bound", type=int, default=100)
    se.add_argument("--verify", default=None, metavar="C1,C2,...", help="check given coefficients instead")
    se.add_argument("--matrix", action="append", metavar="PATH")

    e = add("eq", "equation systems and abelianizations", cmd_eq)
    e.add_argument("op", choices=("check", "snf"))
    e.add_argument("file", nargs="?", default=None)
    e.add_argument("--ring", type=_ring, default=ZZ_2)
    e.add_argument("--stage", type=int, default=None)

    lo = add("local", "determinant locality criteria", cmd_local)
    lo.add_argument("op", choices=("criterion", "solve", "trivial"))
    lo.add_argument("--A", default=None, help='Laurent matrix as JSON, e.g. [["2t-1"]]')
    lo.add_argument("--matrix", action="append", metavar="PATH")
    lo.add_argument("--B", default=None, help="integer matrix as JSON (trivial)")
    lo.add_argument("--f", default="", help="comma-separated right-hand side")
    lo.add_argument("--ring", type=_ring, default=None)

    rp = add("reproduce", "run a canned reproduction scenario", cmd_reproduce)
    rp.add_argument("target", help="scenario name, alias, or 'all'")
    rp.add_argument("--seed", type=int, default=0)
    return p


def _parse(parser: argparse.ArgumentParser, argv):
    # argparse cannot intermix options and variadic positionals across
    # subparsers, so pick the subcommand first and let it parse the rest
    argv = list(sys.argv[1:] if argv is None else argv)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    i = 0
    while i < len(argv) and argv[i] not in sub.choices:
        i += 1
    if i == len(argv):
        return parser.parse_args(argv)
    if any(a in ("-h", "--help") for a in argv[:i]):
        parser.parse_args(argv[:i])
    head = _Parser(prog=parser.prog, add_help=False)
    head.add_argument("--format", choices=("json", "text"), default=None)
    head, extra = head.parse_known_args(argv[:i])
    if extra:
        parser.error("unrecognized arguments: " + " ".join(extra))
    args = sub.choices[argv[i]].parse_intermixed_args(argv[i + 1:])
    args.command = argv[i]
    args.format = args.format or head.format or "text"
    return args


def main(argv=None) -> int:
    parser = build_parser()
    args = _parse(parser, argv)
    if args.command == "local" and args.op == "trivial":
        if args.B is None:
            parser.error("local trivial needs --B")
        args.ring = args.ring or ZZ_2
    try:
        rc = args.func(args)
    except (DomainError, ValueError, ArithmeticError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 1
    return int(rc or 0)


if __name__ == "__main__":
    sys.exit(main())
