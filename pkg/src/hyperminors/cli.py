"""Command-line front end.

Exit codes: 0 pass (or plain listing), 1 fail, 2 inconclusive, 64 usage.
Reports go to stdout; diagnostics and reseed notices go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from itertools import combinations

from .field import DEFAULT_PRIME, SECOND_PRIME, GF, PrimeField, parse_field
from .groebner import Budget
from .hypermatrix import d_minors, flatten, generic_hypermatrix
from .linalg import span_dimension
from .projection import (
    GenericityFailure,
    InvalidProfile,
    ProjectionModel,
    ProjectionProfile,
    verify_projection,
)
from .report import FAIL, INCONCLUSIVE
from .symtensor import SymProfile, generic_sym_hypermatrix
from .varieties import verify_segre_veronese

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

BUDGET_ENV = "HYPERMINORS_BUDGET"  # e.g. "seconds=60,pairs=100000,basis=2000"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def budget_from_env(env=None) -> Budget:
    raw = (env if env is not None else os.environ).get(BUDGET_ENV, "")
    kwargs = {}
    names = {"seconds": "max_seconds", "pairs": "max_pairs", "basis": "max_basis"}
    for part in filter(None, (p.strip() for p in raw.split(","))):
        key, _, val = part.partition("=")
        if key not in names:
            raise UsageError(f"unknown budget key {key!r} in {BUDGET_ENV}")
        kwargs[names[key]] = float(val) if key == "seconds" else int(val)
    kwargs.setdefault("max_seconds", 120.0)
    return Budget(**kwargs)


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return vals


def _field(text):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hyperminors", description="2-minors of hypermatrices and projected Veronese varieties")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--field", type=_field, default=parse_field("QQ"),
                       help="QQ (default) or GF(p) with p > 2^20")

    p = sub.add_parser("segre", help="2-minors of a generic hypermatrix")
    p.add_argument("dims", nargs="+", type=int, metavar="N")
    common(p)

    p = sub.add_parser("segre-veronese", help="2-minors of a generic (n,d)-symmetric hypermatrix")
    p.add_argument("-n", type=_int_list, required=True, help="factor dimensions, e.g. 2,2")
    p.add_argument("-d", type=_int_list, required=True, help="symmetric degrees, e.g. 1,2")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--mode", choices=("linear-algebra", "groebner"), default="linear-algebra")
    common(p)

    p = sub.add_parser("project", help="projection of a Veronese variety from a codimension-2 scheme")
    p.add_argument("-n", type=int, default=2)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--mode", choices=("linear-algebra", "groebner"), default="linear-algebra")
    common(p)
    return ap


def _emit(obj, fmt, text_lines, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def cmd_segre(args, out) -> int:
    if any(n < 1 for n in args.dims):
        raise UsageError("extents must be positive")
    A = generic_hypermatrix(args.dims, field=args.field)
    raw = 0
    for J1 in _partitions(A.ndim):
        m = flatten(A, J1).matrix
        if min(m.nrows, m.ncols) >= 2:
            raw += len(m.minors(2))
    gens = d_minors(A, 2)
    span = span_dimension(gens, 2) if gens else 0
    obj = {"command": "segre", "shape": list(args.dims), "field": args.field.to_json(),
           "raw_minors": raw, "count": len(gens), "span": span,
           "generators": [str(g) for g in gens]}
    noun = "quadric" if len(gens) == 1 else "quadrics"
    lines = [f"# I_2 of generic {'x'.join(map(str, args.dims))}: {len(gens)} {noun} "
             f"({raw} before dedup), span {span}"]
    if not gens:
        lines.append("# zero ideal: no 2-minors exist")
    lines += [str(g) for g in gens]
    _emit(obj, args.format, lines, out)
    return EXIT_PASS


def _partitions(t):
    for r in range(1, t):
        for J1 in combinations(range(1, t + 1), r):
            if 1 in J1:
                yield J1


def cmd_segre_veronese(args, out) -> int:
    if len(args.n) != len(args.d):
        raise UsageError("-n and -d need the same number of entries")
    profile = SymProfile(tuple(args.n), tuple(args.d))
    if args.verify:
        rep = _with_prime_fallback(
            lambda f: verify_segre_veronese(profile, args.mode, f, budget_from_env()), args.field)
        _emit(rep.to_json(), args.format, [rep.render_text()], out)
        return _exit_for(rep.status)
    A = generic_sym_hypermatrix(profile, field=args.field)
    gens = d_minors(A, 2)
    obj = {"command": "segre-veronese", "profile": {"n": args.n, "d": args.d},
           "field": args.field.to_json(), "variables": A.ring.nvars,
           "count": len(gens), "generators": [str(g) for g in gens]}
    lines = [f"# generic ({args.n}, {args.d})-symmetric hypermatrix: {A.ring.nvars} variables, "
             f"{len(gens)} quadrics"]
    if not gens:
        lines.append("# zero ideal: no 2-minors exist")
    lines += [str(g) for g in gens]
    _emit(obj, args.format, lines, out)
    return EXIT_PASS


def cmd_project(args, out) -> int:
    profile = ProjectionProfile(args.n, args.d, args.t, args.k, args.seed, args.field)
    model = ProjectionModel(profile)
    hb = model.hb
    for step in hb.trail:
        sys.stderr.write(f"reseed: seed {step['seed']} rejected ({step['reason']})\n")
    if args.verify:
        def run(f):
            if f == args.field:
                return verify_projection(profile, args.mode, budget_from_env(), model=model)
            prof = ProjectionProfile(args.n, args.d, args.t, args.k, args.seed, f)
            return verify_projection(prof, args.mode, budget_from_env())

        rep = _with_prime_fallback(run, args.field)
        _emit(rep.to_json(), args.format, [rep.render_text()], out)
        return _exit_for(rep.status)
    A = model.build_A()
    obj = {
        "command": "project",
        "profile": profile.to_json(),
        "field": args.field.to_json(),
        "seed": args.seed,
        "hilbert_burch": hb.to_json(),
        "coordinates": list(model.ambient.names),
        "linear_relations": [str(q) for q in model.linear_relations],
        "identifications": [str(q) for q in model.identification_relations],
        "A": A.to_json(),
    }
    lines = [f"# profile {json.dumps(profile.to_json())}, seed {args.seed} (used {hb.seed_used})",
             "# L"]
    lines += ["  [" + ", ".join(str(e) for e in row) + "]" for row in hb.L.entries]
    lines += ["# F"] + [f"  {f}" for f in hb.F]
    if hb.G:
        lines += ["# G"] + [f"  {g}" for g in hb.G]
    lines += [f"# linear relations ({len(model.linear_relations)})"]
    lines += [f"  {q}" for q in model.linear_relations]
    lines += [f"# identifications ({len(model.identification_relations)})"]
    lines += [f"  {q}" for q in model.identification_relations]
    lines += [f"# hypermatrix A of shape {'x'.join(map(str, A.shape))}"]
    _emit(obj, args.format, lines, out)
    return EXIT_PASS


def _with_prime_fallback(run, field):
    """Run a verification; a failure over GF(p) is re-checked over a second prime."""
    rep = run(field)
    if rep.status == FAIL and isinstance(field, PrimeField):
        other = GF(SECOND_PRIME if field.p != SECOND_PRIME else DEFAULT_PRIME)
        sys.stderr.write(f"failure over {field.name}; re-running over {other.name}\n")
        rep = run(other)
        rep.extra["rerun_after_failure_over"] = field.name
    return rep


def _exit_for(status) -> int:
    if status == FAIL:
        return EXIT_FAIL
    if status == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


COMMANDS = {"segre": cmd_segre, "segre-veronese": cmd_segre_veronese, "project": cmd_project}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, InvalidProfile) as exc:
        sys.stderr.write(f"hyperminors: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except GenericityFailure as exc:
        sys.stderr.write(f"hyperminors: GenericityFailure: {exc}\n")
        for step in exc.trail:
            sys.stderr.write(f"  seed {step['seed']}: {step['reason']}\n")
        return EXIT_FAIL
