"""Command-line interface: analyze / mu / bounds / verify-cases / growth /
certify over group spec files, plus a catalog dumper.

Exit codes: 0 success; 1 invalid input; 2 cap exhaustion (partial outputs
are written and flagged, never silent). Outputs are byte-identical across
runs on the same inputs: JSON is emitted with sorted keys and no
timestamps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import bound_decimal, mu_bound, rho_bound, rho_int_bound, sigma_value
from .catalog import catalog
from .errors import CapExceeded, ParseError, SolgrowError, UnknownName
from .mu import mu_bruteforce, mu_fast
from .soluble import analyze_record
from .specio import dump_genset, load_genset, serialize_genset
from .table import DEFAULT_CAP, enumerate_group, is_normal, subgroup_generated

ENV_MAX_ELEMENTS = "SOLGROW_MAX_ELEMENTS"


def _default_cap() -> int:
    raw = os.environ.get(ENV_MAX_ELEMENTS)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ParseError(f"{ENV_MAX_ELEMENTS} must be an integer") from exc
    if cap < 1:
        raise ParseError(f"{ENV_MAX_ELEMENTS} must be positive")
    return cap


def _emit(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    T = enumerate_group(load_genset(args.spec), cap=args.max_elements)
    rec = analyze_record(T)
    if rec["soluble"]:
        cost, _series = mu_fast(T)
        rec["mu"] = cost.as_dict()
    else:
        rec["mu"] = None
    _emit(rec, args.out)
    return 0


def cmd_mu(args) -> int:
    T = enumerate_group(load_genset(args.spec), cap=args.max_elements)
    if args.method == "bruteforce":
        cost, series = mu_bruteforce(T)
    else:
        cost, series = mu_fast(T)
    rec = cost.as_dict()
    rec["method"] = args.method
    rec["series"] = [
        {"order": S.order, "kind": kind}
        for S, kind in zip(series.chain, series.kinds + ["trivial"])
    ]
    _emit(rec, args.out)
    return 0


def cmd_bounds(args) -> int:
    n = args.n
    sig = sigma_value(n)
    rec = {
        "n": n,
        "sigma": sig["exact"],
        "sigma_bound": sig["bound"],
        "rho": rho_bound(n),
        "rho_int": rho_int_bound(n),
        "mu_transitive": mu_bound(n, "transitive"),
        "mu_irreducible": mu_bound(n, "irreducible"),
        "decimal_30": {
            "rho": bound_decimal("rho", n),
            "sigma": bound_decimal("sigma", n),
            "mu_transitive": bound_decimal("mu_transitive", n),
            "mu_irreducible": bound_decimal("mu_irreducible", n),
        },
    }
    _emit(rec, args.out)
    return 0


def cmd_verify_cases(args) -> int:
    from .smallcases import verify_small_cases, verify_transitive_exhaustive

    rec = verify_small_cases(quick=args.quick)
    rec["transitive_theorem"] = verify_transitive_exhaustive(
        degrees=(2, 3, 4) if args.quick else (2, 3, 4, 5, 6)
    )
    _emit(rec, args.out)
    return 0 if rec["pass"] and rec["transitive_theorem"]["pass"] else 1


def cmd_growth(args) -> int:
    from .growth import growth_exponent_fit, growth_table

    gens = load_genset(args.spec)
    tbl = growth_table(gens, args.radius, max_elements=args.max_elements)
    _emit_text(tbl.to_csv(), args.csv)
    if args.fit:
        fit = growth_exponent_fit(tbl)
        rec = tbl.as_dict()
        rec["fit"] = fit.as_dict()
        _emit(rec, args.out)
    elif args.out is not None:
        _emit(tbl.as_dict(), args.out)
    return 2 if tbl.truncated else 0


def cmd_certify(args) -> int:
    from .milnor import certify_growth_lower_bound

    gens = load_genset(args.spec)
    T = enumerate_group(gens, cap=args.max_elements)
    N = None
    if args.normal is not None:
        ngens = load_genset(args.normal)
        seeds = []
        for g in ngens.elements:
            idx = T.index.get(g.encode())
            if idx is None:
                raise ParseError("normal-subgroup generator is not a group member")
            seeds.append(idx)
        N = subgroup_generated(T, seeds)
        if not is_normal(T, N):
            raise ParseError("the given subgroup is not normal")
    cert = certify_growth_lower_bound(T, N, emit_transcript=args.emit_transcript)
    _emit(cert.as_dict(), args.out)
    return 0


def cmd_catalog(args) -> int:
    gens = catalog(args.name)
    if args.out is None:
        _emit(serialize_genset(gens), None)
    else:
        dump_genset(gens, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="solgrow",
        description="Finite soluble group analysis, growth tables, and "
        "growth-lower-bound certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, spec=True):
        if spec:
            p.add_argument("spec", help="group spec JSON file")
        p.add_argument("-o", "--out", default=None, help="output JSON path (default stdout)")
        p.add_argument(
            "--max-elements",
            type=int,
            default=_default_cap(),
            help="enumeration cap (env %s overrides the default)" % ENV_MAX_ELEMENTS,
        )

    p = sub.add_parser("analyze", help="order, derived length, chief factors, ranks")
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mu", help="modified derived length and witness series")
    add_common(p)
    p.add_argument("--method", choices=("fast", "bruteforce"), default="fast")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("bounds", help="bound values for degree n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-cases", help="run the small-cases suite")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--quick", action="store_true", help="skip the largest witnesses")
    p.set_defaults(func=cmd_verify_cases)

    p = sub.add_parser("growth", help="Cayley-ball growth table (CSV) and fit")
    add_common(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    p.add_argument("--fit", action="store_true", help="also emit a JSON fit record")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("certify", help="growth-lower-bound certificate")
    add_common(p)
    p.add_argument("--normal", default=None, help="spec file generating a normal subgroup")
    p.add_argument("--emit-transcript", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("catalog", help="dump a named catalog group as a spec file")
    p.add_argument("name")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_catalog)

    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        ap = build_parser()
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except (ParseError, UnknownName) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolgrowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
