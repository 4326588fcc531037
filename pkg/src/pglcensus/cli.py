"""Command-line front end.

Every command prints a single report to stdout in the requested format
(json is the contract; csv and human are views) and is byte-deterministic:
two runs with the same arguments produce identical output.  Exit status is
0 on success, 1 when a verification finds a mismatch, 2 on usage errors.

Point lists are comma-separated; "inf" is the point at infinity and an affine
point is spelled as its n coefficient integers, so over F_4 the pair
{t, inf} is written "0,1,inf".  Group tags follow the census grammar:
cyclic:n, dihedral:n, A4, S4, A5, PSL2:d, PGL2:d, Zp^m, gamma:m:n.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .census import (
    CensusQuery,
    census_report_to_json,
    enum_actions,
    enum_additive_subgroups,
    gaussian_binomial,
    main_theorem_report_to_json,
    parse_group_id,
    verify_main_theorem,
)
from .elliptic import (
    abelian_subgroup_count,
    aut0,
    count_auts_fixing,
    ec_points,
    enum_spf_actions,
    parse_curve,
    render_curve,
    standard_test_curves,
    torsion_invariant_factors,
    verify_fpf_dichotomy,
    verify_genus1_finiteness,
)
from .gfq import (
    extension_field,
    parse_element,
    parse_field_spec,
    render_element,
    render_field_spec,
)
from .moebius import (
    mob_fixed_points,
    parse_moebius,
    parse_point_list,
    poly_map_ramification,
    render_moebius,
    render_point,
    verify_p1fp,
)
from .stdgroups import (
    close_generators,
    is_conjugate,
    is_conjugate_bruteforce,
    stabilized_locus,
    subgroup_to_json,
)


def _emit(payload: dict, fmt: str, rows_key: Optional[str], columns: Optional[list[str]], out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
        return
    if fmt == "csv":
        rows = payload.get(rows_key, []) if rows_key else []
        cols = columns or (sorted(rows[0].keys()) if rows else [])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in cols})
        out.write(buf.getvalue())
        return
    # human table
    rows = payload.get(rows_key, []) if rows_key else []
    cols = columns or (sorted(rows[0].keys()) if rows else [])
    for key in sorted(payload):
        if key == rows_key or key == "schema":
            continue
        out.write(f"{key}: {_human_cell(payload[key])}\n")
    if rows:
        widths = [max(len(c), *(len(_csv_cell(r.get(c))) for r in rows)) for c in cols]
        out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(_csv_cell(r.get(c)).ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "|".join(_csv_cell(v) for v in value)
    return str(value)


def _human_cell(value) -> str:
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return _csv_cell(value)


def _parse_levels(text: str) -> list[int]:
    text = text.strip()
    if "-" in text:
        lo, _, hi = text.partition("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t.strip()]


def _group_from_args(spec, args):
    if args.gens:
        gens = [parse_moebius(spec, g) for g in args.gens.split("|")]
        return close_generators(gens)
    if not args.group:
        raise ValueError("either --group or --gens is required")
    from .census import _standard_models

    kind, params = parse_group_id(args.group)
    models = _standard_models(spec, kind, params)
    if not models:
        raise ValueError(f"no standard model for {args.group} over {render_field_spec(spec)}")
    return models[0]


# ---------------------------------------------------------------------------
# command handlers: each returns (exit_code, payload, rows_key, columns)


def _cmd_field_info(args):
    spec = parse_field_spec(args.field)
    payload = {
        "schema": "pglcensus/field-info/v1",
        "field": render_field_spec(spec),
        "p": spec.p,
        "n": spec.n,
        "q": spec.q,
        "modulus": list(spec.modulus),
        "pgl2_order": spec.q ** 3 - spec.q,
    }
    return 0, payload, None, None


def _cmd_fixed_points(args):
    spec = parse_field_spec(args.field)
    m = parse_moebius(spec, args.map)
    pts = mob_fixed_points(m, args.ext)
    payload = {
        "schema": "pglcensus/fixed-points/v1",
        "field": render_field_spec(spec),
        "map": render_moebius(m),
        "ext": args.ext,
        "count": len(pts),
        "fixed_points": [{"point": render_point(P)} for P in pts],
    }
    return 0, payload, "fixed_points", ["point"]


def _cmd_build_group(args):
    spec = parse_field_spec(args.field)
    H = _group_from_args(spec, args)
    payload = {"schema": "pglcensus/subgroup/v1", **subgroup_to_json(H, args.ext)}
    return 0, payload, None, None


def _cmd_locus(args):
    spec = parse_field_spec(args.field)
    H = _group_from_args(spec, args)
    pts = stabilized_locus(H, args.ext)
    payload = {
        "schema": "pglcensus/locus/v1",
        "field": render_field_spec(spec),
        "group": H.tag,
        "order": H.order,
        "ext": args.ext,
        "count": len(pts),
        "locus": [{"point": render_point(P)} for P in pts],
    }
    return 0, payload, "locus", ["point"]


def _cmd_conjugate(args):
    spec = parse_field_spec(args.field)
    H1 = close_generators([parse_moebius(spec, g) for g in args.gens1.split("|")])
    H2 = close_generators([parse_moebius(spec, g) for g in args.gens2.split("|")])
    witness = (
        is_conjugate_bruteforce(H1, H2, args.ext)
        if args.brute
        else is_conjugate(H1, H2, args.ext)
    )
    payload = {
        "schema": "pglcensus/conjugate/v1",
        "field": render_field_spec(spec),
        "ext": args.ext,
        "order1": H1.order,
        "order2": H2.order,
        "conjugate": witness is not None,
        "witness": None if witness is None else render_moebius(witness),
        "witness_field": None if witness is None else render_field_spec(witness.spec),
        "method": "bruteforce" if args.brute else "transporter",
    }
    return 0, payload, None, None


def _cmd_census(args):
    spec = parse_field_spec(args.field)
    ext = extension_field(spec, args.ext)
    locus = tuple(parse_point_list(ext, args.locus))
    query = CensusQuery(spec, args.group, locus, r=args.ext)
    if args.jobs and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            report = enum_actions(query, mapper=lambda fn, items: list(pool.map(fn, items)))
    else:
        report = enum_actions(query)
    payload = census_report_to_json(report)
    return 0, payload, "matches", ["tag", "order", "generators", "locus"]


def _cmd_additive_subgroups(args):
    spec = parse_field_spec(args.field)
    subs = enum_additive_subgroups(spec, args.rank)
    payload = {
        "schema": "pglcensus/additive-subgroups/v1",
        "field": render_field_spec(spec),
        "rank": args.rank,
        "count": len(subs),
        "gaussian_binomial": gaussian_binomial(spec.n, args.rank, spec.p),
        "subgroups": [
            {"basis": [render_element(b) for b in G.basis]} for G in subs
        ],
    }
    return 0, payload, "subgroups", ["basis"]


def _cmd_verify_p1fp(args):
    spec = parse_field_spec(args.field)
    rep = verify_p1fp(spec)
    payload = {
        "schema": "pglcensus/verify-p1fp/v1",
        "field": render_field_spec(spec),
        "group_order": rep.group_order,
        "checked": rep.checked,
        "violations": list(rep.violations),
        "ok": rep.ok,
        "summary": (
            f"{rep.checked} non-identity elements of PGL2(F_{spec.q}) checked: "
            f"every fixed-point count lies in {{1,2}}, and it equals 1 exactly "
            f"for the elements of order {spec.p}"
            if rep.ok
            else f"{len(rep.violations)} violations"
        ),
    }
    return 0 if rep.ok else 1, payload, None, None


def _cmd_verify_main(args):
    extra = []
    if args.tags:
        for part in args.tags.split(";"):
            part = part.strip()
            if not part:
                continue
            tag, _, locus_text = part.partition("@")
            if not locus_text:
                raise ValueError(f"--tags entries look like tag@locus, got {part!r}")
            extra.append((tag, locus_text))
    report = verify_main_theorem(
        args.p,
        _parse_levels(args.levels),
        m_values=None if args.m is None else [args.m],
        extra_queries=extra,
    )
    payload = main_theorem_report_to_json(report)
    return (0 if report.ok else 1), payload, "dichotomy", ["n", "m", "census", "subspaces", "oracle", "gaussian", "ok"]


def _cmd_verify_genus1(args):
    if args.curve:
        curves = [("curve", parse_curve(args.curve))]
    else:
        curves = list(standard_test_curves())
    levels = _parse_levels(args.levels)
    rows = []
    ok = True
    for name, E in curves:
        dich = verify_fpf_dichotomy(E, levels)
        pts = ec_points(E, args.ext)
        auts = aut0(E, args.ext)
        fixing_ok = all(count_auts_fixing(E, Q, args.ext).count == len(auts) for Q in pts)
        spf_ok = all(
            len(enum_spf_actions(E, n, args.ext))
            == abelian_subgroup_count(torsion_invariant_factors(E, n, args.ext), n)
            for n in (1, 2, 3, 4)
        )
        bounds = []
        for Q in pts:
            repf = verify_genus1_finiteness(E, [Q], args.ext)
            bounds.append(repf.certified_bound)
        curve_ok = dich.ok and fixing_ok and spf_ok
        ok = ok and curve_ok
        rows.append(
            {
                "curve": render_curve(E),
                "name": name,
                "points": len(pts),
                "aut0": len(auts),
                "dichotomy_ok": dich.ok,
                "fixing_counts_ok": fixing_ok,
                "spf_counts_ok": spf_ok,
                "max_singleton_bound": max(bounds),
                "ok": curve_ok,
                "violations": list(dich.violations),
            }
        )
    payload = {
        "schema": "pglcensus/verify-genus1/v1",
        "levels": levels,
        "ext": args.ext,
        "curves": rows,
        "ok": ok,
    }
    return (0 if ok else 1), payload, "curves", [
        "name",
        "curve",
        "points",
        "aut0",
        "dichotomy_ok",
        "fixing_counts_ok",
        "spf_counts_ok",
        "max_singleton_bound",
        "ok",
    ]


def _cmd_ramification(args):
    spec = parse_field_spec(args.field)
    tokens = [t for t in args.poly.split(",") if t.strip() != ""]
    if len(tokens) % spec.n != 0:
        raise ValueError(f"--poly must hold a whole number of {spec.n}-coefficient elements")
    coeffs = [
        parse_element(spec, ",".join(tokens[i : i + spec.n]))
        for i in range(0, len(tokens), spec.n)
    ]
    ram = poly_map_ramification(coeffs, args.ext)
    payload = {
        "schema": "pglcensus/ramification/v1",
        "field": render_field_spec(spec),
        "degree": len(coeffs) - 1,
        "ext": args.ext,
        "count": len(ram),
        "ramification": [
            {"point": render_point(rp.point), "index": rp.index, "tame": rp.tame}
            for rp in ram
        ],
    }
    return 0, payload, "ramification", ["point", "index", "tame"]


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pglcensus",
        description="Exact census of finite group actions on P^1 and on elliptic curves over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("json", "csv", "human"), default="json")
        return p

    p = add("field-info", _cmd_field_info, "describe a finite field")
    p.add_argument("--field", required=True, help='field spec, e.g. "5^2" or "2^2/1,1,1"')

    p = add("fixed-points", _cmd_fixed_points, "fixed points of a Moebius map")
    p.add_argument("--field", required=True)
    p.add_argument("--map", required=True, help='matrix "[a,b;c,d]"')
    p.add_argument("--ext", type=int, default=2, help="extension degree for the fixed points (2 captures all)")

    p = add("build-group", _cmd_build_group, "build a standard subgroup or close generators")
    p.add_argument("--field", required=True)
    p.add_argument("--group", help="classification tag, e.g. cyclic:4")
    p.add_argument("--gens", help='generators "[..]|[..]" (overrides --group)')
    p.add_argument("--ext", type=int, default=2, help="extension degree for the reported locus")

    p = add("locus", _cmd_locus, "stabilized locus of a subgroup")
    p.add_argument("--field", required=True)
    p.add_argument("--group")
    p.add_argument("--gens")
    p.add_argument("--ext", type=int, default=2)

    p = add("conjugate", _cmd_conjugate, "decide conjugacy of two subgroups")
    p.add_argument("--field", required=True)
    p.add_argument("--gens1", required=True)
    p.add_argument("--gens2", required=True)
    p.add_argument("--ext", type=int, default=1, help="conjugators are searched over F_{q^ext}")
    p.add_argument("--brute", action="store_true", help="full scan of PGL2 instead of transporter search")

    p = add("census", _cmd_census, "all subgroups with a given tag and stabilized locus")
    p.add_argument("--field", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--locus", required=True, help='e.g. "0,inf" (points over the --ext field)')
    p.add_argument("--ext", type=int, default=1, help="census runs in PGL2(F_{q^ext})")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (deterministic merge)")

    p = add("additive-subgroups", _cmd_additive_subgroups, "rank-m additive subgroups of the field")
    p.add_argument("--field", required=True)
    p.add_argument("--rank", type=int, required=True)

    p = add("verify-p1fp", _cmd_verify_p1fp, "exhaustive fixed-point dichotomy over one field")
    p.add_argument("--field", required=True)

    p = add("verify-main", _cmd_verify_main, "finite/infinite census dichotomy across field levels")
    p.add_argument("--p", type=int, required=True, choices=(2, 3, 5))
    p.add_argument("--levels", default="1-2", help='e.g. "1-4" or "1,2"')
    p.add_argument("--m", type=int, help="restrict to one rank (default: all m <= n)")
    p.add_argument("--tags", help='extra constant-count queries "tag@locus;tag@locus"')

    p = add("verify-genus1", _cmd_verify_genus1, "genus-1 verification suite")
    p.add_argument("--curve", help='curve spec "p^n:a=...,b=..." (default: the versioned suite)')
    p.add_argument("--ext", type=int, default=1, help="level for point scans")
    p.add_argument("--levels", default="1-3", help="levels for the fixed-point dichotomy")

    p = add("ramification", _cmd_ramification, "ramification locus of a polynomial self-map")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True, help="coefficients, constant term first")
    p.add_argument("--ext", type=int, default=1)

    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    stream = out if out is not None else sys.stdout
    try:
        code, payload, rows_key, columns = args.handler(args)
    except (ValueError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    _emit(payload, args.format, rows_key, columns, stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
