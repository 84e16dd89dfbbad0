"""Command-line entry point: ``liespec <subcommand> [options]``.

Exit status: 0 on success, 1 when a verification or bound check fails,
2 on usage errors (the offending flag is named on stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Iterable, Optional, Sequence

from . import __version__
from . import exponents as ex
from . import fourier_verify as fv
from . import sum_of_squares as sos
from .errors import LieSpecError, ResourceLimit
from .root_systems import GroupFamily, Label, build_root_system, tabulated_constants
from .spectrum import DEFAULT_CELL_BUDGET, enumerate_spectrum, multiplicity_counts

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE1_MIN = {Label.A: 1, Label.B: 2, Label.C: 3, Label.D: 4}
TABLE1_FORMULAS = {
    Label.A: ("2(l+1)^3", "(l+1)^2/4 * sum_k (l-2(k-1))^2"),
    Label.B: ("16l-8", "sum_k (2(l-k)+1)^2"),
    Label.C: ("4(l+1)", "l(l+1)(2l+1)/6"),
    Label.D: ("16l-16", "sum_k (2(l-k))^2"),
    Label.E8: ("240", "2480"),
    Label.F4: ("72", "156"),
    Label.G2: ("24", "14"),
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"argument {flag}: {message}")


# --- argument types ------------------------------------------------------------

def _family_arg(text: str) -> str:
    # full validation happens once --rank is known
    if not text.strip():
        raise argparse.ArgumentTypeError("empty family")
    return text.strip()


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _rational_list(text: str) -> list:
    try:
        return [ex.parse_rational(t) for t in text.split(",") if t.strip()]
    except LieSpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range_arg(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _resolve_family(text: str, rank: Optional[int], flag: str = "--family") -> GroupFamily:
    try:
        return GroupFamily.parse(text, rank)
    except (LieSpecError, ValueError) as exc:
        raise UsageError(flag, str(exc)) from None


# --- output ----------------------------------------------------------------------

def _config(args: argparse.Namespace) -> dict:
    skip = {"output", "threads", "handler", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, list):
            v = [ex.format_exponent(x) if not isinstance(x, str) else x for x in v]
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    out["format"] = args.format
    return out


def _emit(args, header: Sequence[str], rows: Iterable[Sequence], payload: dict) -> None:
    cfg = _config(args)
    if args.format == "json":
        doc = {"meta": {"tool": "liespec", "version": __version__, "config": cfg}}
        doc.update(payload)
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# liespec {__version__} config={json.dumps(cfg, separators=(',', ':'))}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([str(x) for x in row])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------

def cmd_table1(args) -> int:
    rows = []
    for label in Label:
        if label in TABLE1_MIN:
            top = max(args.max_rank, TABLE1_MIN[label])
            ranks = range(TABLE1_MIN[label], top + 1)
        else:
            ranks = [GroupFamily.of(label.value).rank]
        for l in ranks:
            fam = GroupFamily(label, l)
            rs = build_root_system(fam)
            b, r0 = tabulated_constants(fam)
            ok = (rs.b_table, rs.R0) == (b, r0)
            fb, fr = TABLE1_FORMULAS[label]
            rows.append([label.value, l, fam.group_name, rs.b_table, rs.R0, fb, fr,
                         "true" if ok else "false"])
    header = ["family", "rank", "group", "b", "R0", "b_formula", "R0_formula", "match"]
    _emit(args, header, rows, {"rows": [dict(zip(header, r)) for r in rows]})
    return EXIT_OK if all(r[-1] == "true" for r in rows) else EXIT_FAIL


def cmd_spectrum(args) -> int:
    fam = _resolve_family(args.family, args.rank)
    rs = build_root_system(fam)
    table = enumerate_spectrum(rs, args.rmax, margin=args.margin, budget=args.budget,
                               threads=args.threads, with_dims=not args.no_dims)
    rows = list(table.csv_rows())
    _emit(args, rows[0], rows[1:], {"spectrum": table.to_dict()})
    return EXIT_OK


def cmd_count(args) -> int:
    """N_R against the all-integer representation count r_m(R + R0)."""
    fam = _resolve_family(args.family, args.rank)
    rs = build_root_system(fam)
    n = multiplicity_counts(rs, args.rmax, budget=args.budget, threads=args.threads)
    r = sos.count_theta(rs.m_spec, args.rmax + rs.R0).counts
    rows = []
    violations = 0
    for R in range(args.rmax + 1):
        if n[R] == 0 and not args.all_rows:
            continue
        ok = n[R] <= r[R + rs.R0]
        violations += not ok
        rows.append([R, n[R], r[R + rs.R0], "true" if ok else "false"])
    header = ["R", "N_R", "r_m(R+R0)", "ok"]
    payload = {
        "family": fam.label.value, "rank": fam.rank, "m": rs.m_spec, "R0": rs.R0,
        "violations": violations,
        "rows": [dict(zip(header, row)) for row in rows],
    }
    _emit(args, header, rows, payload)
    return EXIT_OK if violations == 0 else EXIT_FAIL


def cmd_rsk(args) -> int:
    variant = sos.Variant(args.variant)
    if args.growth is not None:
        lo, hi = args.growth
        try:
            rep = sos.growth_report(args.s, lo, hi)
        except (LieSpecError, ValueError) as exc:
            raise UsageError("--growth", str(exc)) from None
        d = rep.to_dict()
        _emit(args, list(d), [list(d.values())], {"growth": d, "zero_R": list(rep.zero_R)})
        return EXIT_OK
    if args.cross_check:
        tables, diffs = sos.cross_check(args.s, args.rmax, variant, **_sos_kwargs(args))
        names = [b.value for b in tables]
        header = ["R"] + names + ["agree"]
        rows = []
        for R in range(args.rmax + 1):
            vals = [tables[b].counts[R] for b in tables]
            rows.append([R, *vals, "true" if len(set(vals)) == 1 else "false"])
        payload = {"s": args.s, "variant": variant.value, "backends": names,
                   "disagreements": [{"R": R, "counts": v} for R, v in diffs],
                   "counts": {b.value: list(t.counts) for b, t in tables.items()}}
        _emit(args, header, rows, payload)
        return EXIT_OK if not diffs else EXIT_FAIL
    backend = sos.Backend(args.backend)
    if backend is sos.Backend.DIVISOR_FORMULA and args.s not in (2, 4):
        raise UsageError("--backend", f"DivisorFormula needs --s 2 or 4, got {args.s}")
    if backend is sos.Backend.DIVISOR_FORMULA and variant is not sos.Variant.ALL_INTEGERS:
        raise UsageError("--backend", "DivisorFormula supports --variant AllIntegers only")
    kw = {} if backend is sos.Backend.DIVISOR_FORMULA else _sos_kwargs(args)
    table = sos.count(args.s, args.rmax, variant, backend, **kw)
    rows = list(table.csv_rows())
    _emit(args, rows[0], rows[1:], {"s": args.s, "variant": variant.value,
                                    "backend": backend.value, "counts": list(table.counts)})
    return EXIT_OK


def _sos_kwargs(args) -> dict:
    kw = {}
    if args.budget is not None:
        kw["budget"] = args.budget
    return kw


def _exponent_families(args) -> list[GroupFamily]:
    if args.family:
        return [_resolve_family(f, args.rank) for f in args.family.split(",")]
    fams = []
    for label in Label:
        if label in TABLE1_MIN:
            fams += [GroupFamily(label, l) for l in range(max(2, TABLE1_MIN[label]), 9)]
        else:
            fams.append(GroupFamily.of(label.value))
    return fams


def cmd_exponents(args) -> int:
    fams = _exponent_families(args)
    for fam in fams:
        if fam.rank < 2:
            raise UsageError("--family", f"{fam.group_name} has rank 1; exponents need rank >= 2")
    try:
        profiles = list(ex.grid(fams, args.p_grid, args.q_grid, classical=args.classical))
    except LieSpecError as exc:
        flag = "--p-grid" if "p must" in str(exc) else "--q-grid"
        raise UsageError(flag, str(exc)) from None
    rows = [p.row() for p in profiles]
    bad = [r for p, r in zip(profiles, rows)
           if p.gap != p.expected_gap() or p.gap < 0]
    header = list(rows[0]) if rows else list(ex.profile(GroupFamily.of("G2"), 2, 2).row())
    thresholds = {fam.name: [str(x) for x in ex.zhang_thresholds(fam)] for fam in fams}
    _emit(args, header, [list(r.values()) for r in rows],
          {"thresholds": thresholds, "profiles": rows, "identity_failures": len(bad)})
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_verify(args) -> int:
    suites = [args.suite] if args.suite else list(fv.SUITES)
    reports = [fv.run_suite(s, args.seed, args.samples, args.tolerance) for s in suites]
    header = ["suite", "pass", "max_error"]
    rows = [[r["suite"], "true" if r["pass"] else "false", repr(r["max_error"])] for r in reports]
    payload = reports[0] if len(reports) == 1 else {"reports": reports}
    _emit(args, header, rows, payload)
    return EXIT_OK if all(r["pass"] for r in reports) else EXIT_FAIL


# --- parser --------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, default_format: str = "csv") -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default_format,
                   help=f"output format (default: {default_format})")
    p.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--threads", type=_pos_int, default=1,
                   help="worker threads; output does not depend on it (default: 1)")


def _family_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", type=_family_arg, required=required,
                   help="A3, B2, G2, E8, F4, or SU(3), Spin(8), Sp(3); with a bare "
                        "letter give --rank")
    p.add_argument("--rank", type=_pos_int, help="rank for classical families")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liespec",
        description="Laplace spectra of compact simple Lie groups, sums of squares "
                    "and Strichartz exponents.")
    parser.add_argument("--version", action="version", version=f"liespec {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", required=True)

    p = sub.add_parser("table1", help="(b, R0) for every family against the closed forms")
    p.add_argument("--max-rank", type=_pos_int, default=1,
                   help="also list classical families up to this rank (default: 1, "
                        "i.e. the smallest valid rank of each family)")
    _common(p)
    p.set_defaults(handler=cmd_table1)

    p = sub.add_parser("spectrum", help="eigenvalue numerators R <= R_max with weights")
    _family_flags(p)
    p.add_argument("--rmax", type=_nonneg_int, required=True, help="largest R")
    p.add_argument("--margin", type=_nonneg_int, default=0,
                   help="extra cells added to the search box (default: 0)")
    p.add_argument("--budget", type=_pos_int, default=DEFAULT_CELL_BUDGET,
                   help=f"maximum search nodes (default: {DEFAULT_CELL_BUDGET})")
    p.add_argument("--no-dims", action="store_true", help="skip Weyl dimensions")
    _common(p)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("count", help="check N_R <= r_m(R + R0) for R <= R_max")
    _family_flags(p)
    p.add_argument("--rmax", type=_nonneg_int, required=True, help="largest R")
    p.add_argument("--budget", type=_pos_int, default=DEFAULT_CELL_BUDGET,
                   help=f"maximum search nodes (default: {DEFAULT_CELL_BUDGET})")
    p.add_argument("--all-rows", action="store_true",
                   help="also list R with N_R = 0")
    _common(p)
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("rsk", help="representation counts r_s(R) as sums of s squares")
    p.add_argument("--s", type=_pos_int, required=True, help="number of squares")
    p.add_argument("--rmax", type=_nonneg_int, default=100, help="largest R (default: 100)")
    p.add_argument("--variant", choices=[v.value for v in sos.Variant],
                   default=sos.Variant.ALL_INTEGERS.value,
                   help="count over Z^s or over positive integers (default: AllIntegers)")
    p.add_argument("--backend", choices=[b.value for b in sos.Backend],
                   default=sos.Backend.THETA_CONVOLUTION.value,
                   help="counting backend (default: ThetaConvolution)")
    p.add_argument("--cross-check", action="store_true",
                   help="run every applicable backend and diff them")
    p.add_argument("--growth", type=_range_arg, metavar="LO:HI",
                   help="report normalized growth ratios over [LO, HI] instead")
    p.add_argument("--budget", type=_pos_int, help="work budget for the counting backends")
    _common(p)
    p.set_defaults(handler=cmd_rsk)

    p = sub.add_parser("exponents", help="Strichartz exponent profiles over a (p, q) grid")
    _family_flags(p, required=False)
    p.add_argument("--p-grid", type=_rational_list,
                   help="comma-separated p values like 2,5/2,3 (default: 2,5/2,3,4,10)")
    p.add_argument("--q-grid", type=_rational_list,
                   help="comma-separated q values, inf allowed (default: 2,3,q*,10,inf)")
    p.add_argument("--classical", action="store_true",
                   help="keep only admissible pairs with q <= p")
    _common(p)
    p.set_defaults(handler=cmd_exponents)

    p = sub.add_parser("verify", help="time-side Fourier regression suites")
    p.add_argument("--suite", choices=fv.SUITES, help="suite to run (default: all)")
    p.add_argument("--seed", type=_seed, default=0, help="64-bit suite seed (default: 0)")
    p.add_argument("--samples", type=_pos_int, help="number of random vectors")
    p.add_argument("--tolerance", type=float, help="pass threshold on max_error")
    _common(p, default_format="json")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"liespec {args.subcommand}: error: {exc}\n")
    except ResourceLimit as exc:
        parser.exit(EXIT_USAGE, f"liespec {args.subcommand}: error: argument --budget: {exc}\n")
    except OSError as exc:
        parser.exit(EXIT_USAGE, f"liespec {args.subcommand}: error: argument --output: {exc}\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
