"""Benchmark and verification command-line tool.

Three subcommands:

``verify``
    Run the fast transform against the exact reference on a seeded random
    configuration, print errors and timings as CSV; exit 0 iff E2 <= --tol.

``bench``
    Sweep one parameter (``--sweep n|m|threads``) over a grid and emit one
    CSV row per point.

``transform``
    Batch mode: read nodes and a coefficient (or sample) vector from text
    files, run the forward (or adjoint) transform, write the result vector.

Node sets come from ``gen_nodes``: numpy's PCG64 generator
(``numpy.random.default_rng(seed)``), mapped to [-1/2, 1/2); identical
across platforms for a fixed seed.

Exit codes: 0 success, 1 tolerance failure, 2 usage or I/O error.
"""

import argparse
import csv
import math
import os
import sys

import numpy as np

from . import parallel
from .errors import NfftError
from .indexing import index_set
from .metrics import error_einf, error_e2, time_mean10
from .plan import Plan
from .transform import ndft

CSV_FIELDS = ["dim", "N", "n", "m", "threads", "e2", "einf", "precompute_ms", "trafo_ms"]


class CliError(Exception):
    """Usage or I/O failure; maps to exit code 2."""


def gen_nodes(d, M, seed):
    """M uniform nodes in [-1/2, 1/2)^d from PCG64 with the given seed."""
    if M < 1:
        raise CliError(f"node count must be >= 1, got {M}")
    rng = np.random.default_rng(seed)
    return rng.random((int(M), int(d))) - 0.5


def gen_fhat_test(N):
    """Benchmark coefficients: value 1 / (1 + ||k||_2) at every frequency."""
    k = index_set(N)
    return (1.0 / (1.0 + np.sqrt((k.astype(np.float64) ** 2).sum(axis=1)))).astype(np.complex128)


def _int_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fmt(v):
    return f"{v:.17g}" if isinstance(v, float) else str(v)


def _dims_joined(values):
    return "x".join(str(v) for v in values)


def _resolve_shape(args):
    N = args.bandlimit
    d = args.dim if args.dim is not None else len(N)
    if len(N) == 1 and d > 1:
        N = N * d
    if len(N) != d:
        raise CliError(f"--bandlimit has {len(N)} entries but --dim is {d}")
    N = tuple(N)
    M = args.nodes_count if args.nodes_count is not None else 2 * math.prod(N)
    n = None
    if args.fft_length is not None:
        n = args.fft_length
        if len(n) == 1 and d > 1:
            n = n * d
        n = tuple(n)
    return d, N, M, n


def _make_plan(d, N, M, n, args):
    return Plan(N, M, n=n, m=args.cutoff, window=args.window)


def _run_config(d, N, M, n, args, samples=10):
    """One measured configuration: errors vs the exact reference plus timings."""
    plan = _make_plan(d, N, M, n, args)
    plan.set_nodes(gen_nodes(d, M, args.seed))
    fhat = gen_fhat_test(N)
    pre_ms = time_mean10(plan.precompute, samples=samples)
    trafo_ms = time_mean10(lambda: plan.trafo(fhat), samples=samples)
    f = plan.trafo(fhat)
    ref = ndft(plan, fhat)
    e2 = error_e2(ref, f)
    einf = error_einf(ref, f, fhat)
    return {
        "dim": d,
        "N": _dims_joined(plan.N),
        "n": _dims_joined(plan.n),
        "m": plan.m,
        "threads": parallel.get_threads(),
        "e2": _fmt(e2),
        "einf": _fmt(einf),
        "precompute_ms": _fmt(pre_ms),
        "trafo_ms": _fmt(trafo_ms),
    }, e2


def _write_rows(rows, out_path):
    if out_path:
        fh = open(out_path, "w", newline="")
    else:
        fh = sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out_path:
            fh.close()


def cmd_verify(args):
    d, N, M, n = _resolve_shape(args)
    row, e2 = _run_config(d, N, M, n, args)
    _write_rows([row], args.out)
    print(f"E2={row['e2']} Einf={row['einf']} tol={args.tol:g}", file=sys.stderr)
    return 0 if e2 <= args.tol else 1


def _default_n_grid(N):
    """16 even FFT lengths spanning (N, 4N], endpoints N+2 and 4N."""
    lo, hi = N + 2, 4 * N
    pts = np.linspace(lo, hi, 16)
    return sorted({int(round(p / 2) * 2) for p in pts})


def cmd_bench(args):
    d, N, M, n = _resolve_shape(args)
    rows = []
    if args.sweep == "n":
        grid = args.grid if args.grid else _default_n_grid(N[0])
        for nv in grid:
            rows.append(_run_config(d, N, M, (nv,) * d, args)[0])
    elif args.sweep == "m":
        grid = args.grid if args.grid else list(range(2, 11))
        base_cutoff = args.cutoff
        for mv in grid:
            args.cutoff = mv
            rows.append(_run_config(d, N, M, n, args)[0])
        args.cutoff = base_cutoff
    else:  # threads
        grid = args.grid if args.grid else list(range(1, (os.cpu_count() or 1) + 1))
        base = parallel.get_threads()
        try:
            for tv in grid:
                parallel.set_threads(tv)
                rows.append(_run_config(d, N, M, n, args)[0])
        finally:
            parallel.set_threads(base)
    _write_rows(rows, args.out)
    return 0


def read_nodes(path, d):
    coords = []
    try:
        fh = open(path)
    except OSError as exc:
        raise CliError(f"cannot open nodes file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != d:
                raise CliError(f"{path}:{lineno}: expected {d} coordinates, got {len(parts)}")
            try:
                coords.append([float(p) for p in parts])
            except ValueError:
                raise CliError(f"{path}:{lineno}: malformed number") from None
    if not coords:
        raise CliError(f"{path}: no nodes found")
    return np.asarray(coords, dtype=np.float64)


def read_complex_vector(path):
    values = []
    try:
        fh = open(path)
    except OSError as exc:
        raise CliError(f"cannot open vector file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise CliError(f"{path}:{lineno}: expected 're im' pair, got {len(parts)} fields")
            try:
                values.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise CliError(f"{path}:{lineno}: malformed number") from None
    return np.asarray(values, dtype=np.complex128)


def write_complex_vector(path, values):
    with open(path, "w") as fh:
        for v in np.asarray(values, dtype=np.complex128).ravel():
            fh.write(f"{v.real:.17g} {v.imag:.17g}\n")


def cmd_transform(args):
    d, N, _, n = _resolve_shape(args)
    coords = read_nodes(args.nodes, d)
    if args.adjoint:
        if not args.f:
            raise CliError("--adjoint requires --f FILE")
        data = read_complex_vector(args.f)
        if data.shape[0] != coords.shape[0]:
            raise CliError(f"--f has {data.shape[0]} entries, nodes file has {coords.shape[0]}")
    else:
        if not args.fhat:
            raise CliError("forward transform requires --fhat FILE")
        data = read_complex_vector(args.fhat)
        if data.shape[0] != math.prod(N):
            raise CliError(f"--fhat has {data.shape[0]} entries, expected {math.prod(N)}")
    if not args.out:
        raise CliError("transform requires --out FILE")
    plan = Plan(N, coords.shape[0], n=n, m=args.cutoff, window=args.window)
    plan.set_nodes(coords)
    plan.precompute()
    result = plan.adjoint(data) if args.adjoint else plan.trafo(data)
    write_complex_vector(args.out, result)
    return 0


def _add_common(sub):
    sub.add_argument("--dim", type=int, default=None, help="dimension d (default: from --bandlimit)")
    sub.add_argument("--bandlimit", type=_int_list, required=True, metavar="N1[,N2[,N3]]")
    sub.add_argument("--nodes-count", type=int, default=None, metavar="M",
                     help="node count (default: 2 * prod(N))")
    sub.add_argument("--fft-length", type=_int_list, default=None, metavar="n1[,...]")
    sub.add_argument("--cutoff", type=int, default=None, metavar="m")
    sub.add_argument("--window", default="kaiserbessel", choices=["kaiserbessel", "gaussian"])
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--tol", type=float, default=1e-13)
    sub.add_argument("--threads", type=int, default=None,
                     help="worker threads (overrides the THREADS environment variable)")
    sub.add_argument("--out", default=None, metavar="FILE")
    sub.add_argument("--format", default="csv", choices=["csv"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nfftk",
        description="Nonequispaced FFT benchmark and verification tool",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="compare the fast transform against the exact sums")
    _add_common(verify)
    bench = sub.add_parser("bench", help="parameter sweep, one CSV row per grid point")
    _add_common(bench)
    bench.add_argument("--sweep", required=True, choices=["n", "m", "threads"])
    bench.add_argument("--grid", type=_int_list, default=None, metavar="V1[,V2...]")
    transform = sub.add_parser("transform", help="file-based forward or adjoint transform")
    _add_common(transform)
    transform.add_argument("--nodes", required=True, metavar="FILE")
    transform.add_argument("--fhat", default=None, metavar="FILE")
    transform.add_argument("--f", default=None, metavar="FILE")
    transform.add_argument("--adjoint", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is not None:
            parallel.set_threads(args.threads)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "bench":
            return cmd_bench(args)
        return cmd_transform(args)
    except CliError as exc:
        print(f"nfftk: {exc}", file=sys.stderr)
        return 2
    except (NfftError, ValueError, OSError) as exc:
        print(f"nfftk: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
