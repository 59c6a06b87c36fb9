"""Command line front end: analyze, verify, and witness subcommands.

analyze classifies the jet fiber components of one surface at one level;
verify drives the symbolic invariant suite and the finite-field oracle;
witness produces an explicit arc realizing a prescribed contact label.
Output formats: json (canonical: sorted keys, two-space indent), md
(default), csv (fixed header per subcommand).

Exit codes: 0 pass, 1 verification failure, 2 usage or validation error,
3 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .components import (
    component_report,
    count_closed_form,
    enumerate_classes,
    m_cap,
    report_as_dict,
    valid_labels,
)
from .equations import generators, grading_check
from .errors import (
    GuardExceededError,
    InputRangeError,
    NonMemberError,
    ToricJetsError,
)
from .jets import ABOVE_M, contact_profile, monomial_arc
from .lattice import (
    ToricSurface,
    contact_vector,
    exceptional_count_dual_cf,
    exceptional_count_hull,
)
from .oracle import (
    DEFAULT_GUARD,
    OracleConfig,
    check_order_propagation,
    coverage_spot_check,
    enumerate_fiber,
    stratum_counts,
)

GUARD_ENV = "TORICJETS_GUARD"


def _default_guard() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return DEFAULT_GUARD
    try:
        return int(raw)
    except ValueError:
        raise InputRangeError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None


def _canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _coeff_json(c, field):
    if field.characteristic:
        return int(c)
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def _coeff_str(c, field) -> str:
    if field.characteristic:
        return str(int(c) % field.characteristic)
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _order_json(o):
    return "above_m" if o is ABOVE_M else o


def _jet_json(jet) -> dict:
    return {
        "m": jet.m,
        "characteristic": jet.field.characteristic,
        "coords": [[_coeff_json(c, jet.field) for c in row] for row in jet.coords],
    }


def _series_str(row, field) -> str:
    terms = []
    for d, c in enumerate(row):
        if field.is_zero(c):
            continue
        if d == 0:
            terms.append(_coeff_str(c, field))
            continue
        t = "t" if d == 1 else f"t^{d}"
        terms.append(t if c == field.one else f"{_coeff_str(c, field)}*{t}")
    return " + ".join(terms) if terms else "0"


def _mono_str(exponents) -> str:
    parts = []
    for k, a in enumerate(exponents, start=1):
        if a:
            parts.append(f"x{k}" + (f"^{a}" if a > 1 else ""))
    return "*".join(parts) if parts else "1"


def _label_str(label) -> str:
    return f"({label[0]},{label[1]},{label[2]})"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------- analyze


def _analyze_doc(surface: ToricSurface, m: int) -> dict:
    report = component_report(surface, m)
    dual_cf = exceptional_count_dual_cf(surface.cone)
    hull = exceptional_count_hull(surface.cone)
    return {
        "surface": {
            "p": surface.p,
            "q": surface.q,
            "entries": list(surface.entries),
            "e": surface.e,
            "dual_basis": [list(u) for u in surface.basis],
        },
        "equations": [
            {"i": eq.i, "j": eq.j, "minus_exponents": list(eq.minus_exponents)}
            for eq in generators(surface)
        ],
        "components": report_as_dict(report),
        "exceptional": {"dual_cf": dual_cf, "hull": hull, "agree": dual_cf == hull},
    }


def _analyze_md(doc: dict) -> str:
    surf = doc["surface"]
    comp = doc["components"]
    exc = doc["exceptional"]
    lines = [
        f"# analyze p={surf['p']} q={surf['q']} m={comp['m']}",
        "",
        f"- continued fraction entries: {surf['entries']}",
        f"- embedding dimension e: {surf['e']}",
        "- dual basis: " + ", ".join(f"({u[0]}, {u[1]})" for u in surf["dual_basis"]),
        f"- exceptional divisors: dual_cf={exc['dual_cf']} hull={exc['hull']} "
        f"agree={'yes' if exc['agree'] else 'no'}",
        "",
        "## Defining equations",
        "",
        "| i | j | relation |",
        "| - | - | - |",
    ]
    e = surf["e"]
    for eq in doc["equations"]:
        plus = [0] * e
        plus[eq["i"] - 1] = 1
        plus[eq["j"] - 1] = 1
        lines.append(
            f"| {eq['i']} | {eq['j']} | "
            f"{_mono_str(plus)} = {_mono_str(eq['minus_exponents'])} |"
        )
    lines += [
        "",
        f"## Component classes at m={comp['m']}",
        "",
        "| canonical | members | s | codim | dim |",
        "| - | - | - | - | - |",
    ]
    for cl in comp["classes"]:
        members = " ".join(_label_str(x) for x in cl["members"])
        lines.append(
            f"| {_label_str(cl['canonical'])} | {members} | {cl['s']} "
            f"| {cl['codim']} | {cl['dim']} |"
        )
    lines += [
        "",
        f"- N enumerated: {comp['N']['enumerated']}",
        f"- N closed form: {comp['N']['closed_form']}",
        f"- classes with s=1: {comp['s1_count']}",
        f"- exceptional divisors: {comp['exceptional']}",
        f"- main component codim: {comp['main_codim']}",
    ]
    return "\n".join(lines)


def _analyze_csv(doc: dict) -> str:
    rows = []
    for cl in doc["components"]["classes"]:
        ci, cs, cl_ = cl["canonical"]
        members = ";".join(f"{i}:{s}:{l}" for i, s, l in cl["members"])
        rows.append([ci, cs, cl_, cl["s"], cl["codim"], cl["dim"], members])
    return _csv_text(
        ["canonical_i", "canonical_s", "canonical_l", "s", "codim", "dim", "members"],
        rows,
    )


def cmd_analyze(args) -> int:
    if args.m < 1:
        raise InputRangeError(f"m must be >= 1, got {args.m}")
    surface = ToricSurface.from_pair(args.p, args.q)
    doc = _analyze_doc(surface, args.m)
    if args.format == "json":
        print(_canonical_json(doc))
    elif args.format == "csv":
        print(_analyze_csv(doc))
    else:
        print(_analyze_md(doc))
    return 0


# ---------------------------------------------------------------- verify


def _run_verify(surface: ToricSurface, m: int, field: int, guard: int, jobs: int):
    """All verification checks for one surface.  Returns (checks, strata,
    coverage, points_visited); checks are (name, ok, hard, detail) tuples."""
    checks = []
    eqs = generators(surface)
    ok = all(grading_check(surface, eq) for eq in eqs)
    checks.append(("grading", ok, True, f"{len(eqs)} generators checked"))

    labels = valid_labels(surface, m)
    witness_ok = True
    for (i, s, l) in labels:
        v, inside = contact_vector(surface, i, s, l)
        arc = monomial_arc(surface, v, m)
        try:
            profile, over = contact_profile(arc, surface)
        except NonMemberError:
            witness_ok = False
            continue
        if not inside or not over or profile[i - 1] != s or profile[i] != l:
            witness_ok = False
    checks.append(
        ("monomial_arc_witnesses", witness_ok, True, f"{len(labels)} labels realized")
    )

    n_enum = len(enumerate_classes(surface, m))
    n_formula = count_closed_form(surface, m)
    checks.append(
        (
            "count_agreement",
            n_enum == n_formula,
            True,
            f"enumerated={n_enum} closed_form={n_formula}",
        )
    )

    visited = 0
    config = OracleConfig(field, m, guard)
    fiber = enumerate_fiber(surface, config, jobs=jobs)
    visited += field ** (surface.e * m)
    for s in range(1, (m + 1) // 2 + 1):
        sub = OracleConfig(field, 2 * s - 1, guard)
        ok = check_order_propagation(surface, sub, s, jobs=jobs)
        visited += field ** (surface.e * 2 * s)
        checks.append(
            (f"order_propagation_s{s}", ok, True, f"full space at m={2 * s - 1}")
        )

    strata = stratum_counts(surface, config, points=fiber)
    checks.append(
        (
            "stratum_nonempty",
            all(st.point_count >= 1 for st in strata),
            True,
            f"{len(strata)} strata",
        )
    )
    checks.append(
        (
            "stratum_min_order",
            all(st.all_orders_ge_s and st.min_order_is_s for st in strata),
            True,
            "minimum coordinate order equals s on every stratum point",
        )
    )
    coverage = coverage_spot_check(surface, config, points=fiber)
    checks.append(
        (
            "stratum_disjoint",
            coverage.disjoint,
            True,
            "strata at fixed i are pairwise disjoint",
        )
    )
    checks.append(
        (
            "no_impossible_profiles",
            not coverage.impossible_profiles,
            True,
            f"{len(coverage.impossible_profiles)} flagged, "
            f"{coverage.closure_points} closure points",
        )
    )
    return checks, strata, coverage, visited


def cmd_verify(args) -> int:
    if args.m < 1:
        raise InputRangeError(f"m must be >= 1, got {args.m}")
    guard = args.guard if args.guard is not None else _default_guard()
    surface = ToricSurface.from_pair(args.p, args.q)
    t0 = time.monotonic()
    checks, strata, coverage, visited = _run_verify(
        surface, args.m, args.field, guard, args.jobs
    )
    mismatches = sum(1 for st in strata if st.point_count != st.predicted_count)
    checks.append(
        (
            "stratum_count_prediction",
            mismatches == 0,
            args.strict,
            f"{len(strata) - mismatches}/{len(strata)} match (experimental)",
        )
    )
    runtime_ms = int((time.monotonic() - t0) * 1000)
    hard_fail = any(not ok for _, ok, hard, _ in checks if hard)

    def status(ok, hard):
        return "pass" if ok else ("fail" if hard else "warn")

    if args.format == "json":
        doc = {
            "p": surface.p,
            "q": surface.q,
            "m": args.m,
            "field": args.field,
            "guard": guard,
            "checks": [
                {"name": name, "status": status(ok, hard), "hard": hard, "detail": detail}
                for name, ok, hard, detail in checks
            ],
            "strata": [
                {
                    "label": list(st.label),
                    "count": st.point_count,
                    "predicted": st.predicted_count,
                    "match": st.point_count == st.predicted_count,
                }
                for st in strata
            ],
            "coverage": {
                "total": coverage.total_points,
                "stratum": coverage.stratum_points,
                "closure": coverage.closure_points,
                "impossible": len(coverage.impossible_profiles),
            },
            "points_visited": visited,
            "runtime_ms": runtime_ms,
            "result": "fail" if hard_fail else "pass",
        }
        print(_canonical_json(doc))
    elif args.format == "csv":
        rows = [
            [name, status(ok, hard), "yes" if hard else "no", detail]
            for name, ok, hard, detail in checks
        ]
        print(_csv_text(["check", "status", "hard", "detail"], rows))
    else:
        lines = [f"# verify p={surface.p} q={surface.q} m={args.m} field={args.field}", ""]
        for name, ok, hard, detail in checks:
            tag = status(ok, hard).upper()
            lines.append(f"- [{tag}] {name}: {detail}")
        lines += ["", "## Strata", "", "| label | count | predicted | match |",
                  "| - | - | - | - |"]
        for st in strata:
            match = "yes" if st.point_count == st.predicted_count else "no"
            lines.append(
                f"| {_label_str(st.label)} | {st.point_count} "
                f"| {st.predicted_count} | {match} |"
            )
        lines += [
            "",
            f"- fiber points: {coverage.total_points} "
            f"({coverage.stratum_points} in strata, {coverage.closure_points} closure)",
            f"- points visited: {visited}",
            f"- runtime: {runtime_ms} ms",
            f"- result: {'FAIL' if hard_fail else 'PASS'}",
        ]
        print("\n".join(lines))
    return 1 if hard_fail else 0


# ---------------------------------------------------------------- witness


def cmd_witness(args) -> int:
    if args.m < 1:
        raise InputRangeError(f"m must be >= 1, got {args.m}")
    surface = ToricSurface.from_pair(args.p, args.q)
    i, s, l = args.i, args.s, args.l
    cap = m_cap(surface, i, s, args.m)  # validates i and s
    if not s <= l <= cap:
        raise InputRangeError(
            f"l={l} is outside the valid interval [{s}, {cap}] for i={i} s={s} m={args.m}"
        )
    v, inside = contact_vector(surface, i, s, l)
    arc = monomial_arc(surface, v, args.m)
    profile, over = contact_profile(arc, surface)
    orders = [_order_json(o) for o in profile]
    if args.format == "json":
        doc = {
            "p": surface.p,
            "q": surface.q,
            "m": args.m,
            "i": i,
            "s": s,
            "l": l,
            "v": list(v),
            "inside": inside,
            "member": True,
            "jet": _jet_json(arc),
            "orders": orders,
            "realized": [_order_json(profile[i - 1]), _order_json(profile[i])],
            "over_origin": over,
        }
        print(_canonical_json(doc))
    elif args.format == "csv":
        row = [
            surface.p, surface.q, args.m, i, s, l, v[0], v[1],
            "yes" if inside else "no", "yes",
            ";".join(str(o) for o in orders),
            _order_json(profile[i - 1]), _order_json(profile[i]),
        ]
        print(
            _csv_text(
                ["p", "q", "m", "i", "s", "l", "v1", "v2", "inside", "member",
                 "orders", "realized_s", "realized_l"],
                [row],
            )
        )
    else:
        coords = ", ".join(
            f"x{k} = {_series_str(row, arc.field)}"
            for k, row in enumerate(arc.coords, start=1)
        )
        lines = [
            f"# witness p={surface.p} q={surface.q} m={args.m} label {_label_str((i, s, l))}",
            "",
            f"- contact vector v: ({v[0]}, {v[1]})",
            f"- inside cone: {'yes' if inside else 'no'}",
            f"- jet: {coords}",
            "- member: yes",
            "- orders: " + ", ".join(str(o) for o in orders),
            f"- realized (s, l): ({_order_json(profile[i - 1])}, {_order_json(profile[i])})",
            f"- over singular point: {'yes' if over else 'no'}",
        ]
        print("\n".join(lines))
    return 0


# ---------------------------------------------------------------- driver


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricjets",
        description="Jet fiber component classification for the toric surface of a coprime pair (p, q).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--p", type=int, required=True, help="first entry of the coprime pair")
        sp.add_argument("--q", type=int, required=True, help="second entry of the coprime pair")
        sp.add_argument("--m", type=int, required=True, help="jet level, >= 1")
        sp.add_argument(
            "--format", choices=("json", "md", "csv"), default="md", help="output format"
        )

    sp = sub.add_parser("analyze", help="classify the jet fiber components at level m")
    add_common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify", help="run the invariant suite and the finite-field oracle")
    add_common(sp)
    sp.add_argument("--field", type=int, required=True, help="prime field characteristic")
    sp.add_argument(
        "--guard",
        type=int,
        default=None,
        help=f"enumeration point budget (default {DEFAULT_GUARD}, or ${GUARD_ENV})",
    )
    sp.add_argument(
        "--strict",
        action="store_true",
        help="treat experimental count mismatches as hard failures",
    )
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("witness", help="produce the arc realizing a contact label (i, s, l)")
    add_common(sp)
    sp.add_argument("--i", type=int, required=True, help="coordinate index, 2..e-1")
    sp.add_argument("--s", type=int, required=True, help="contact order of x_i")
    sp.add_argument("--l", type=int, required=True, help="contact order of x_{i+1}")
    sp.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ToricJetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
