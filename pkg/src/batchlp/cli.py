"""``batchlp`` command line: gen, solve, bench, support-demo.

Exit codes: 0 success, 1 usage, 2 I/O or parse failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import statistics
import sys
import warnings

import numpy as np

from .batch import Layout, LpBatch, solve_batch
from .batchfile import BatchFile, read_batch, write_batch, write_results
from .bench import BenchPlan, run_bench, write_bench
from .exceptions import BatchFileError, BatchLpError
from .generate import (GenSpec, LpClass, box_directions, generate_arrays,
                       oct_directions, random_directions)
from .hyperbox import Hyperbox
from .model import PivotRule, SolverConfig
from .sampling import sample_support

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for I/O here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not >= 1")
    return value


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is not >= 0")
    return value


def _range(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not LO,HI") from None
    return lo, hi


def _int_list(text):
    return [int(v) for v in text.split(",") if v]


def _solver_flags(p):
    p.add_argument("--pivot", choices=[r.value for r in PivotRule], default="lpc")
    p.add_argument("--layout", choices=[l.value for l in Layout], default="col")
    p.add_argument("--threads", type=_positive, default=None,
                   help="worker threads (overrides BATCHLP_THREADS)")
    p.add_argument("--chunk", type=_nonneg, default=0, help="LPs per chunk, 0 = auto")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="batchlp", description="Batched dense LP solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random batch file")
    g.add_argument("--class", dest="klass", choices=[c.value for c in LpClass],
                   default="feasible")
    g.add_argument("-n", type=_positive, required=True)
    g.add_argument("-m", type=_positive, default=None, help="rows (ignored for boxes)")
    g.add_argument("--count", type=_nonneg, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--coeff-range", type=_range, default=(-10.0, 10.0))
    g.add_argument("--b-range", type=_range, default=(1.0, 100.0))
    g.add_argument("-o", "--output", default="-")

    s = sub.add_parser("solve", help="solve a batch file")
    s.add_argument("input")
    _solver_flags(s)
    s.add_argument("--repeat", type=_positive, default=10)
    s.add_argument("-o", "--output", default="-")

    b = sub.add_parser("bench", help="benchmark sweep, CSV output")
    b.add_argument("--dims", type=_int_list, default=[5, 28, 50])
    b.add_argument("--batches", type=_int_list, default=[100, 10_000])
    b.add_argument("--classes", default="feasible")
    b.add_argument("--rules", default="lpc")
    b.add_argument("--layouts", default="col")
    b.add_argument("--threads", default="1,max", help="comma list; 'max' = CPU count")
    b.add_argument("--chunk", type=_nonneg, default=0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=_positive, default=3)
    b.add_argument("-o", "--output", default="-")

    d = sub.add_parser("support-demo", help="sample the support function of a box")
    d.add_argument("--dim", type=_positive, default=None)
    d.add_argument("--box", default=None, help="box batch file; the first box is used")
    d.add_argument("--lo", type=float, default=0.0)
    d.add_argument("--hi", type=float, default=1.0)
    d.add_argument("--template", choices=["box", "oct", "random"], default="box")
    d.add_argument("--count", type=_nonneg, default=1000, help="random directions")
    d.add_argument("--engine", choices=["closed-form", "simplex", "both"],
                   default="closed-form")
    _solver_flags(d)
    d.add_argument("-o", "--output", default="-")
    return parser


@contextlib.contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _config(args) -> SolverConfig:
    return SolverConfig(pivot_rule=args.pivot, rng_seed=args.seed,
                        threads=args.threads, chunk_size=args.chunk)


def _info(msg):
    print(msg, file=sys.stderr)


def cmd_gen(args) -> int:
    klass = LpClass(args.klass)
    m = 0 if klass is LpClass.BOX else (args.m if args.m is not None else args.n)
    spec = GenSpec(args.n, m, klass, args.seed, args.coeff_range, args.b_range)
    try:
        spec.check()
    except BatchLpError as exc:
        raise UsageError(str(exc)) from None
    arrays = generate_arrays(spec, args.count)
    if klass is LpClass.BOX:
        bf = BatchFile(klass, args.n, 0, lo=arrays[0], hi=arrays[1])
    else:
        bf = BatchFile(klass, args.n, m, *arrays)
    if args.output == "-":
        from .batchfile import dumps

        sys.stdout.write(dumps(bf))
    else:
        write_batch(args.output, bf)
    _info(f"generated {args.count} {klass.value} "
          f"{'boxes' if klass is LpClass.BOX else 'LPs'} n={args.n} m={m}")
    return EXIT_OK


def cmd_solve(args) -> int:
    bf = read_batch(args.input)
    if bf.is_box:
        raise UsageError("solve needs an LP batch; use support-demo for box files")
    if bf.count == 0:
        with _open_out(args.output) as out:
            out.write("index,status,objective,phase1_iterations,phase2_iterations\n")
        _info("solved 0 LPs")
        return EXIT_OK
    batch = LpBatch(bf.C, bf.A, bf.B, Layout(args.layout))
    cfg = _config(args)
    walls, result = [], None
    for _ in range(args.repeat):
        result = solve_batch(batch, cfg)
        walls.append(result.wall_time)
    with _open_out(args.output) as out:
        write_results(out, result)
    wall = statistics.median(walls)
    rate = bf.count / wall if wall > 0 else float("inf")
    _info(f"solved {bf.count} LPs n={bf.n} m={bf.m}: median wall {wall:.6f} s "
          f"over {args.repeat} runs, {rate:.1f} LPs/s, mean iterations "
          f"phase1 {np.mean(result.phase1_iterations):.3f} "
          f"phase2 {np.mean(result.phase2_iterations):.3f}")
    return EXIT_OK


def _split(text, enum):
    try:
        return [enum(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_bench(args) -> int:
    threads = []
    for t in args.threads.split(","):
        if t == "max":
            threads.append(t)
        elif t.isdigit() and int(t) >= 1:
            threads.append(int(t))
        else:
            raise UsageError(f"bad thread count {t!r}")
    plan = BenchPlan(
        dims=args.dims, batches=args.batches,
        classes=_split(args.classes, LpClass), rules=_split(args.rules, PivotRule),
        layouts=_split(args.layouts, Layout), threads=threads,
        repeat=args.repeat, seed=args.seed, chunk_size=args.chunk,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = run_bench(plan)
    for w in caught:
        _info(f"warning: {w.message}")
    with _open_out(args.output) as out:
        write_bench(out, rows)
    _info(f"{len(rows)} configurations")
    return EXIT_OK


def cmd_support_demo(args) -> int:
    if args.box is not None:
        bf = read_batch(args.box)
        if not bf.is_box or bf.count == 0:
            raise BatchFileError("support-demo needs a non-empty box file")
        box = Hyperbox(bf.lo[0], bf.hi[0])
        if args.dim is not None and args.dim != box.n:
            raise UsageError(f"--dim {args.dim} does not match the {box.n}-dim box")
    else:
        if args.dim is None:
            raise UsageError("give --dim or --box")
        if args.lo > args.hi:
            raise UsageError("--lo must not exceed --hi")
        box = Hyperbox(np.full(args.dim, args.lo), np.full(args.dim, args.hi))

    if args.template == "box":
        dirs = box_directions(box.n)
    elif args.template == "oct":
        dirs = oct_directions(box.n)
    else:
        dirs = random_directions(box.n, args.count, args.seed)
    run = sample_support(box, dirs, args.engine, _config(args))

    with _open_out(args.output) as out:
        w = csv.writer(out, lineterminator="\n")
        cols = [name for name, v in (("closed_form", run.closed_form),
                                     ("simplex", run.simplex)) if v is not None]
        w.writerow(["index"] + cols)
        for k in range(len(dirs)):
            w.writerow([k] + [repr(float(getattr(run, c)[k])) for c in cols])

    parts = [f"{len(dirs)} directions in dim {box.n}"]
    if run.closed_form_time is not None:
        parts.append(f"closed-form {run.closed_form_time:.6f} s")
    if run.simplex_time is not None:
        parts.append(f"simplex {run.simplex_time:.6f} s")
    if run.max_discrepancy is not None:
        parts.append(f"max discrepancy {run.max_discrepancy:.3g}")
    _info(", ".join(parts))
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "support-demo": cmd_support_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _info(str(exc))
        return EXIT_USAGE
    except BatchFileError as exc:
        _info(f"error: {exc}")
        return EXIT_IO
    except OSError as exc:
        _info(f"error: {exc}")
        return EXIT_IO
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except Exception as exc:  # noqa: BLE001
        _info(f"internal error: {type(exc).__name__}: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
