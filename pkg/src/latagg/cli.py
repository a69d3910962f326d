"""Command-line interface.

Exit codes: 0 success, 2 bad input, 3 a size bound was exceeded, 4 an
internal consistency check failed.
"""

from __future__ import annotations

import argparse
import sys

from . import aggregation, catalog, lattice, polynomials, properties, relations
from .errors import BoundExceeded, InputError, InternalInconsistency

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BOUND = 3
EXIT_INTERNAL = 4


def _yn(flag: bool) -> str:
    return "Y" if flag else "N"


def _names(L, xs) -> str:
    return " ".join(L.names[x] for x in xs) or "-"


def cmd_check(args, out) -> int:
    L = lattice.read_lat(args.file)
    out.write(f"elements: {L.n}\n")
    out.write(f"bottom: {L.names[L.bottom]}\n")
    out.write(f"top: {L.names[L.top]}\n")
    out.write(f"atoms: {_names(L, L.atoms())}\n")
    out.write(f"coatoms: {_names(L, L.coatoms())}\n")
    out.write(f"join_irreducibles: {_names(L, L.join_irreducibles())}\n")
    if L.n < 2:
        out.write("profile: n/a (one-element lattice)\n")
        return EXIT_OK
    for key, value in properties.profile(L).items():
        out.write(f"{key}: {_yn(value)}\n")
    return EXIT_OK


def cmd_decide(args, out) -> int:
    L = lattice.read_lat(args.file)
    report = aggregation.decide_smallest_agg(L)
    if report.smallest:
        out.write("SMALLEST\n")
        for a, term in report.chi_witnesses.items():
            out.write(f"chi {L.names[a]} := {polynomials.format_term(term, L)}\n")
    else:
        out.write("NOT-SMALLEST\n")
        out.write(relations.format_tolerance(report.tolerance_witness))
    return EXIT_OK


def cmd_chi(args, out) -> int:
    L = lattice.read_lat(args.file)
    a = L.index(args.element)
    term = aggregation.synthesize_chi_polynomial(L, a)
    out.write(("NONE" if term is None else polynomials.format_term(term, L)) + "\n")
    return EXIT_OK


def cmd_represent(args, out) -> int:
    L = lattice.read_lat(args.lattice)
    with open(args.function, encoding="utf-8") as fh:
        table = aggregation.parse_fun(fh.read(), L)
    f = aggregation.AggFunctionTable(L, table)
    report = aggregation.decide_smallest_agg(L)
    bound = args.bound if args.bound is not None else aggregation.REPRESENT_BOUND
    term = aggregation.represent_aggregation(L, f, report, bound=bound)
    out.write(polynomials.format_term(term, L) + "\n")
    return EXIT_OK


def cmd_tolerances(args, out) -> int:
    L = lattice.read_lat(args.file)
    bound = args.bound if args.bound is not None else relations.DEFAULT_TOLERANCE_BOUND
    tolerances = relations.all_tolerances(L, bound=bound)
    if not args.quiet:
        out.write(f"# {len(tolerances)} tolerances\n")
    for i, T in enumerate(tolerances, start=1):
        kind = "congruence" if relations.is_transitive(T) else "tolerance"
        out.write(f"tolerance {i} {kind}\n")
        out.write(relations.format_tolerance(T))
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    override = args.bound is not None and args.bound >= catalog.ENUMERATION_OVERRIDE_BOUND
    if not args.quiet:
        fields = [name for name, _ in properties.PropertyProfile.__dataclass_fields__.items()]
        out.write("# index\tn\thash\t" + "\t".join(fields) + "\n")
    for i, entry in enumerate(catalog.census(args.n, allow_override=override), start=1):
        out.write(catalog.census_line(i, entry) + "\n")
    return EXIT_OK


def cmd_builtin(args, out) -> int:
    L = catalog.builtin(args.name)
    out.write(lattice.format_lat(L, comment=None if args.quiet else args.name))
    return EXIT_OK


def cmd_export_dot(args, out) -> int:
    L = lattice.read_lat(args.file)
    out.write(lattice.to_dot(L))
    return EXIT_OK


def cmd_random_fun(args, out) -> int:
    L = lattice.read_lat(args.file)
    f = aggregation.random_aggregation(L, args.arity, args.seed)
    out.write(aggregation.format_fun(L, f))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latagg",
        description="Finite lattices whose aggregation functions are exactly their 0,1-preserving polynomials.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    parser.add_argument("--bound", type=int, default=None, help="override the size bound of the command")
    parser.add_argument("--quiet", action="store_true", help="omit comment and header lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="print structure and property profile")
    p.add_argument("file", help=".lat file, '-' for stdin")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decide", help="decide membership and print the witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("chi", help="polynomial for chi_a, or NONE")
    p.add_argument("file")
    p.add_argument("element")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("represent", help="polynomial representing an aggregation function")
    p.add_argument("lattice")
    p.add_argument("function", help=".fun file")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("tolerances", help="list every tolerance")
    p.add_argument("file")
    p.set_defaults(func=cmd_tolerances)

    p = sub.add_parser("enumerate", help="census of all n-element lattices")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("builtin", help="print a named lattice in .lat format")
    p.add_argument("name", help="chain-k, mn-k, bool-k or glued-m3")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("export-dot", help="Hasse diagram as Graphviz DOT")
    p.add_argument("file")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("random-fun", help="seeded random aggregation function in .fun format")
    p.add_argument("file")
    p.add_argument("--arity", type=int, default=2)
    p.set_defaults(func=cmd_random_fun)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except BoundExceeded as exc:
        err.write(f"bound exceeded: {exc}\n")
        return EXIT_BOUND
    except InternalInconsistency as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
