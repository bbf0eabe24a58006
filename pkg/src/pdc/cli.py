"""Command-line interface: every checker and evaluator, batch-style.

Exit codes: 0 when the requested computation or check succeeds, 1 when a
check runs but fails, 2 on usage errors, syntax errors in descendent or
rational-function input (reported with their position), and requests for
series the database does not hold.

`--json` switches every command to machine-readable output; series
records use the same schema as `db export`, so they round-trip.  The
environment variable PDC_DB may name a JSON file of extra series records
that is merged over the built-in database for every command that reads
series.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .correspondence import (expand_bar, format_expansion,
                             gw_variable_change)
from .descendents import DescParseError, gen, parse_element
from .laurent import LaurentSeries, laurent_expand
from .ratfun import RationalFunction, RFParseError, fe_check, pole_check
from .series import (SeriesDB, SeriesRecord, UnknownSeriesError, builtin_db,
                     cap_series, key_from_str, key_str, load_db,
                     local_curve_series, make_key, record_to_obj,
                     records_to_json, reduce, virasoro_constraint_check)
from .virasoro import bracket_check
from . import checks

DB_ENV_VAR = "PDC_DB"


class CliError(Exception):
    """Usage-level failure; message goes to stderr and the exit code is 2."""


def _current_db() -> SeriesDB:
    db = builtin_db()
    extra_path = os.environ.get(DB_ENV_VAR)
    if extra_path:
        try:
            db = db.merged(load_db(extra_path))
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot load {DB_ENV_VAR} file: {exc}") from exc
    return db


def _parse_series_arg(text: str):
    try:
        return parse_element(text)
    except DescParseError as exc:
        raise CliError(f"descendent syntax error: {exc}") from exc


def _reduce_series(text: str, degree: int) -> RationalFunction:
    element = _parse_series_arg(text)
    try:
        return reduce(element, degree, _current_db())
    except UnknownSeriesError as exc:
        raise CliError(str(exc)) from exc
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _rf_json(value: RationalFunction) -> dict:
    from .series import rf_to_obj
    return rf_to_obj(value)


def _laurent_json(series: LaurentSeries) -> dict:
    f = series.field
    return {
        "var": series.var,
        "field": f.tag,
        "min_exp": series.min_exp,
        "order": series.order,
        "coeffs": [[n, f.coeff_to_json(c)]
                   for n, c in sorted(series.as_dict().items())],
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _insertion_sign(text: str) -> int:
    """Functional-equation sign of an insertion monomial: parity of the
    sum of the shifted subscripts (each factor ch_i contributes i)."""
    element = _parse_series_arg(text)
    signs = {(-1) ** sum(g.i for g in factors)
             for factors in element.terms}
    if len(signs) != 1:
        raise CliError(
            "insertion mixes even and odd subscript sums; no single sign")
    return signs.pop()


def _point_partition(text: str) -> tuple:
    """The partition labeling a product of point insertions: one part
    per factor ch_i(p), each part i - 1."""
    element = _parse_series_arg(text)
    if len(element.terms) != 1:
        raise CliError("expansion labels need a single insertion monomial")
    (factors,) = element.terms
    if not factors or any(g.cls != 3 for g in factors):
        raise CliError("expansion labels need point-class insertions only")
    return tuple(sorted((g.i - 1 for g in factors), reverse=True))


# -- commands -------------------------------------------------------------------


def _cmd_eval(args) -> int:
    if args.family == "local-curve":
        value = local_curve_series(args.d)
        key = make_key("LocalCurve", args.d, "1")
    else:
        value = cap_series(args.d)
        key = make_key("Cap", args.d, (gen(args.d + 2, 3),), f"({args.d})")
    record = SeriesRecord(key, value, "evaluator")
    _emit(args, record_to_obj(record), f"{key_str(key)} = {value}")
    return 0


def _cmd_expand(args) -> int:
    value = _reduce_series(args.series, args.degree)
    if args.var == "u":
        if value.field.tag not in ("Q", "Qi"):
            raise CliError("u-expansion needs rational coefficients")
        series = gw_variable_change(value, 4 * args.degree, args.order)
    else:
        series = laurent_expand(value, args.order)
    _emit(args, _laurent_json(series), str(series))
    return 0


def _cmd_fe_check(args) -> int:
    value = _reduce_series(args.series, args.degree)
    sign = _insertion_sign(args.series)
    d_beta = 4 * args.degree
    ok = fe_check(value, d_beta, sign)
    _emit(args,
          {"command": "fe-check", "series": args.series,
           "degree": args.degree, "sign": sign, "d_beta": d_beta,
           "pass": ok},
          f"{'PASS' if ok else 'FAIL'} sign={sign} d_beta={d_beta}")
    return 0 if ok else 1


def _cmd_pole_check(args) -> int:
    value = _reduce_series(args.series, args.degree)
    div = args.div if args.div is not None else args.degree
    if div < 1:
        raise CliError("--div must be a positive integer")
    ok = pole_check(value, div)
    _emit(args,
          {"command": "pole-check", "series": args.series,
           "degree": args.degree, "div": div, "pass": ok},
          f"{'PASS' if ok else 'FAIL'} poles confined with divisor bound "
          f"{div}")
    return 0 if ok else 1


def _cmd_virasoro_check(args) -> int:
    if args.k < -1:
        raise CliError("--k must be at least -1")
    element = _parse_series_arg(args.D)
    try:
        ok = virasoro_constraint_check(args.k, element, args.degree,
                                       _current_db())
    except UnknownSeriesError as exc:
        raise CliError(str(exc)) from exc
    _emit(args,
          {"command": "virasoro-check", "k": args.k, "D": args.D,
           "degree": args.degree, "pass": ok},
          "PASS: sum = 0" if ok else "FAIL: sum != 0")
    return 0 if ok else 1


def _cmd_bracket_check(args) -> int:
    if args.k < -1 or args.m < -1:
        raise CliError("bracket indices must be at least -1")
    if args.bound < 1:
        raise CliError("--bound must be a positive integer")
    ok = bracket_check(args.k, args.m, args.bound)
    _emit(args,
          {"command": "bracket-check", "k": args.k, "m": args.m,
           "bound": args.bound, "pass": ok},
          f"{'PASS' if ok else 'FAIL'} bracket relation "
          f"[{args.k},{args.m}] on monomials with subscripts <= "
          f"{args.bound}")
    return 0 if ok else 1


def _cmd_gw_expand(args) -> int:
    value = _reduce_series(args.series, args.degree)
    if value.field.tag not in ("Q", "Qi"):
        raise CliError("u-expansion needs rational coefficients")
    series = gw_variable_change(value, 4 * args.degree, args.order)
    lines = [str(series)]
    payload = _laurent_json(series)
    if args.show_bar:
        alpha = _point_partition(args.series)
        terms = expand_bar(alpha)
        lines.append("symbolic expansion of the insertion product:")
        lines.append(format_expansion(alpha, terms))
        payload["expansion"] = {
            "alpha": list(alpha),
            "terms": [{"blocks": [list(b) for b in t.blocks],
                       "targets": [list(x) for x in t.targets],
                       "sign": t.sign}
                      for t in terms],
        }
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_db(args) -> int:
    db = _current_db()
    if args.db_action == "list":
        records = db.records()
        _emit(args, {"records": [record_to_obj(r) for r in records]},
              "\n".join(f"{key_str(r.key)}  [{r.provenance}]"
                        for r in records))
        return 0
    if args.db_action == "show":
        try:
            record = db.get(key_from_str(args.key))
        except (UnknownSeriesError, ValueError) as exc:
            raise CliError(str(exc)) from exc
        _emit(args, record_to_obj(record),
              f"{key_str(record.key)}  [{record.provenance}]\n"
              f"{record.value}")
        return 0
    if args.db_action == "import":
        try:
            merged = db.merged(load_db(args.file))
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot import {args.file}: {exc}") from exc
        added = len(merged) - len(db)
        _emit(args, {"records": [record_to_obj(r) for r in merged.records()]},
              f"{added} new record(s); merged database holds {len(merged)}")
        return 0
    # export
    try:
        with open(args.file, "w", encoding="utf-8") as handle:
            handle.write(records_to_json(db))
    except OSError as exc:
        raise CliError(f"cannot export to {args.file}: {exc}") from exc
    _emit(args, {"exported": len(db), "file": args.file},
          f"wrote {len(db)} record(s) to {args.file}")
    return 0


def _cmd_check_all(args) -> int:
    results = checks.run_all()
    if args.json:
        print(json.dumps([{"id": r.check_id, "title": r.title,
                           "pass": r.ok, "detail": r.detail}
                          for r in results], indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.check_id:5s} "
                  f"{r.title}: {r.detail}")
        failed = sum(1 for r in results if not r.ok)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if all(r.ok for r in results) else 1


# -- parser ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdc",
        description="Exact checks and evaluations for stable-pairs "
                    "descendent series.")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a closed-form series family")
    p.add_argument("family", choices=["local-curve", "cap"])
    p.add_argument("--d", type=int, required=True, help="curve degree")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("expand", help="Laurent-expand a reduced series")
    p.add_argument("--series", required=True,
                   help="descendent insertion, e.g. 'ch3(1)*ch7(1)'")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True,
                   help="highest exponent to report")
    p.add_argument("--var", choices=["q", "u"], default="q")
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("fe-check",
                       help="functional-equation check for an insertion")
    p.add_argument("--series", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(fn=_cmd_fe_check)

    p = sub.add_parser("pole-check",
                       help="pole-confinement check for an insertion")
    p.add_argument("--series", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--div", type=int, default=None,
                   help="divisor bound (defaults to the degree)")
    p.set_defaults(fn=_cmd_pole_check)

    p = sub.add_parser("virasoro-check",
                       help="constraint-operator check against the database")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--D", required=True, help="descendent insertion")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(fn=_cmd_virasoro_check)

    p = sub.add_parser("bracket-check",
                       help="operator bracket relation on monomials")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bound", type=int, default=8,
                   help="largest generator subscript tested")
    p.set_defaults(fn=_cmd_bracket_check)

    p = sub.add_parser("gw-expand",
                       help="u-variable expansion an insertion predicts")
    p.add_argument("--series", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--show-bar", action="store_true",
                   help="also print the symbolic set-partition expansion")
    p.set_defaults(fn=_cmd_gw_expand)

    p = sub.add_parser("db", help="inspect or exchange stored series")
    dbsub = p.add_subparsers(dest="db_action", required=True)
    dbsub.add_parser("list").set_defaults(fn=_cmd_db)
    q = dbsub.add_parser("show")
    q.add_argument("key", help="geometry:degree:insertions[:boundary]")
    q.set_defaults(fn=_cmd_db)
    q = dbsub.add_parser("import")
    q.add_argument("file")
    q.set_defaults(fn=_cmd_db)
    q = dbsub.add_parser("export")
    q.add_argument("file")
    q.set_defaults(fn=_cmd_db)

    p = sub.add_parser("check-all",
                       help="run every acceptance check, sorted by id")
    p.set_defaults(fn=_cmd_check_all)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RFParseError as exc:
        print(f"error: rational-function syntax error: {exc}",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main(sys.argv[1:]))
