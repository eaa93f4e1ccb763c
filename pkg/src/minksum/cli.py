"""``minksum`` command line.

Exit codes: 0 success, 1 a check or comparison failed, 2 degenerate input,
64 usage error, 74 unreadable, unwritable or malformed file.
"""

import argparse
import json
import logging
import os
import sys

from . import fileio
from .bench import run_bench, write_csv
from .errors import (
    DegeneracyError,
    InvalidPolygon,
    MinksumError,
    NotFullDimensional,
    ParseError,
    ValidationFailure,
)
from .gen import GenSpec, generic_rotate, random_polytope
from .lattice import euler_check, f_vector, lattice_isomorphic, validate_lattice
from .minkd import FAST, PARANOID, minkowski_sum
from .multi import multi_minkowski_sum
from .oracle import oracle_minkowski
from .planar import polygon_to_polytope, sum_polygons, sum_polygons_multi

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DEGENERATE = 2
EXIT_USAGE = 64
EXIT_IO = 74

log = logging.getLogger("minksum")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _default_seed() -> int:
    raw = os.environ.get("MINKSUM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MINKSUM_SEED must be an integer, got {raw!r}")


def _emit(P, out) -> None:
    if out:
        fileio.save_polytope(P, out)
    else:
        json.dump(fileio.polytope_to_dict(P), sys.stdout, indent=1)
        sys.stdout.write("\n")


def _load_all(paths):
    return [fileio.load_polytope(p) for p in paths]


def cmd_sum(args):
    P, Q = _load_all([args.a, args.b])
    _emit(minkowski_sum(P, Q, PARANOID if args.paranoid else FAST), args.output)
    return EXIT_OK


def cmd_msum(args):
    polys = _load_all(args.inputs)
    _emit(multi_minkowski_sum(polys, PARANOID if args.paranoid else FAST), args.output)
    return EXIT_OK


def cmd_sum2d(args):
    polys = [fileio.load_polygon(p) for p in args.inputs]
    R = sum_polygons(*polys) if len(polys) == 2 else sum_polygons_multi(polys)
    _emit(polygon_to_polytope(R, "+".join(os.path.basename(p) for p in args.inputs)), args.output)
    return EXIT_OK


def cmd_oracle(args):
    _emit(oracle_minkowski(_load_all(args.inputs)), args.output)
    return EXIT_OK


def cmd_check(args):
    P = fileio.load_polytope(args.input, validate=False)
    rep = validate_lattice(P.lattice)
    for v in rep.violations:
        print(v, file=sys.stderr)
    euler = euler_check(P.lattice)
    if not euler:
        print("euler relation fails", file=sys.stderr)
    ok = rep.ok and euler
    print("ok" if ok else "invalid")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cmp(args):
    X, Y = _load_all([args.x, args.y])
    same = lattice_isomorphic(X.lattice, Y.lattice)
    print("isomorphic" if same else "different")
    return EXIT_OK if same else EXIT_FAIL


def cmd_fvector(args):
    P = fileio.load_polytope(args.input)
    print(" ".join(str(x) for x in f_vector(P.lattice)))
    return EXIT_OK


def cmd_gen(args):
    seed = args.seed if args.seed is not None else _default_seed()
    spec = GenSpec(args.dim, args.points, seed, args.bound, convex_position=args.convex)
    _emit(random_polytope(spec), args.output)
    return EXIT_OK


def cmd_rotate(args):
    seed = args.seed if args.seed is not None else _default_seed()
    _emit(generic_rotate(fileio.load_polytope(args.input), seed), args.output)
    return EXIT_OK


def cmd_bench(args):
    seeds = args.seeds if args.seeds is not None else [_default_seed()]
    records = run_bench(args.dims, args.sizes, seeds, PARANOID if args.paranoid else FAST,
                        args.repeat, args.convex, log=sys.stderr)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_off(args):
    P = fileio.load_polytope(args.input)
    if args.output:
        fileio.save_off(P, args.output)
    else:
        sys.stdout.write(fileio.off_string(P))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minksum", description="Exact Minkowski sums of convex polytopes.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out(sp):
        sp.add_argument("-o", "--output", help="output file (default: stdout)")

    sp = sub.add_parser("sum", help="pairwise sum of two lattice files")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--paranoid", action="store_true", help="check every facet against all vertices")
    out(sp)
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("msum", help="simultaneous sum of several polytopes")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--paranoid", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_msum)

    sp = sub.add_parser("sum2d", help="planar edge-merge sum of polygons")
    sp.add_argument("inputs", nargs="+")
    out(sp)
    sp.set_defaults(func=cmd_sum2d)

    sp = sub.add_parser("oracle", help="brute-force hull of all vertex sums")
    sp.add_argument("inputs", nargs="+")
    out(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("check", help="validate a lattice file")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("cmp", help="compare two lattices up to isomorphism")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.set_defaults(func=cmd_cmp)

    sp = sub.add_parser("fvector", help="print face counts by dimension")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_fvector)

    sp = sub.add_parser("gen", help="random polytope from a seed")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--seed", type=int, help="default: $MINKSUM_SEED or 0")
    sp.add_argument("--bound", type=int, default=100, help="coordinate range [-bound, bound]")
    sp.add_argument("--convex", action="store_true", help="put every point in convex position")
    out(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("rotate", help="exact generic rotation")
    sp.add_argument("input")
    sp.add_argument("--seed", type=int)
    out(sp)
    sp.set_defaults(func=cmd_rotate)

    sp = sub.add_parser("bench", help="time pairwise sums, write CSV")
    sp.add_argument("--dims", type=_int_list, default=[3])
    sp.add_argument("--sizes", type=_int_list, default=[8, 16])
    sp.add_argument("--seeds", type=_int_list)
    sp.add_argument("--repeat", type=int, default=1)
    sp.add_argument("--paranoid", action="store_true")
    sp.add_argument("--convex", action="store_true")
    sp.add_argument("--csv", help="CSV path (default: stdout)")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("off", help="export a 3-polytope as OFF")
    sp.add_argument("input")
    out(sp)
    sp.set_defaults(func=cmd_off)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except DegeneracyError as exc:
        print(f"degenerate input\n{exc.report}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (OSError, ParseError) as exc:
        print(f"minksum: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, InvalidPolygon, NotFullDimensional, ValueError) as exc:
        print(f"minksum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailure as exc:
        print(f"minksum: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except MinksumError as exc:
        print(f"minksum: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
