"""Command-line interface: signal generation, recovery, and ratio sweeps.

Exit codes: 0 success, 1 usage error, 2 solver failure (reconstruct only),
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .generators import gen_ecg_like, gen_pressure_like, gen_respiration_like
from .signal import Signal1D, SignalFormatError, load_signal_csv, reshape_to_image, save_signal_csv
from .solver import SolverConfig, SolverFailure, load_solver_config
from .sweep import SweepSpec, mse, recover_signal, run_sweep, write_report_csv, write_report_sidecar

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit_(EXIT_USAGE, f"{self.prog}: error: {message}")


class SystemExit_(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code = code
        self.message = message
        super().__init__(message)


def write_pgm(values: np.ndarray, path: str | Path) -> tuple[float, float]:
    """8-bit binary PGM, min-max normalized; returns the bounds used."""
    lo = float(np.min(values))
    hi = float(np.max(values))
    if hi > lo:
        scaled = np.round((values - lo) / (hi - lo) * 255.0)
    else:
        scaled = np.zeros_like(values)
    data = scaled.astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{values.shape[1]} {values.shape[0]}\n255\n".encode("ascii"))
        fh.write(data.tobytes())
    return lo, hi


def _build_parser() -> _Parser:
    parser = _Parser(prog="cstv", description="TV recovery of signals from random 2D DCT coefficients")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic signal CSV")
    gen.add_argument("--kind", required=True, choices=("ecg", "pressure", "respiration"))
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--fs", required=True, type=float)
    gen.add_argument("--bpm", type=float, default=None,
                     help="beats per minute (ecg, pressure) or breaths per minute (respiration)")
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--out", required=True)

    rec = sub.add_parser("reconstruct", help="recover a signal from a random coefficient subset")
    rec.add_argument("--in", dest="infile", required=True)
    rec.add_argument("--ratio", required=True, type=float)
    rec.add_argument("--seed", required=True, type=int)
    rec.add_argument("--solver", default=None, help="solver config file (JSON or key=value lines)")
    rec.add_argument("--out", required=True)
    rec.add_argument("--dump-images", default=None, metavar="DIR",
                     help="write original/reconstructed PGM images and a bounds sidecar")
    rec.add_argument("--residual-log", default=None, metavar="FILE",
                     help="write per-iteration relative-change/TV log as CSV")

    swp = sub.add_parser("sweep", help="MSE versus sampling ratio over seeds")
    src = swp.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="infile")
    src.add_argument("--kind", choices=("ecg", "pressure", "respiration"))
    swp.add_argument("--n", type=int, default=4096)
    swp.add_argument("--fs", type=float, default=None)
    swp.add_argument("--bpm", type=float, default=None)
    swp.add_argument("--gen-seed", type=int, default=0)
    swp.add_argument("--ratios", required=True, help="comma-separated, e.g. 0.3,0.5,0.9")
    swp.add_argument("--seeds", required=True, help="comma-separated mask seeds")
    swp.add_argument("--solver", default=None)
    swp.add_argument("--workers", type=int, default=1)
    swp.add_argument("--out", required=True)
    return parser


def _generate(kind: str, n: int, fs: float | None, bpm: float | None, seed: int) -> Signal1D:
    if kind == "ecg":
        kwargs = {} if fs is None else {"fs": fs}
        if bpm is not None:
            kwargs["bpm"] = bpm
        return gen_ecg_like(n, seed=seed, **kwargs)
    if kind == "pressure":
        kwargs = {} if fs is None else {"fs": fs}
        if bpm is not None:
            kwargs["beats_per_min"] = bpm
        return gen_pressure_like(n, seed=seed, **kwargs)
    kwargs = {} if fs is None else {"fs": fs}
    if bpm is not None:
        kwargs["breaths_per_min"] = bpm
    return gen_respiration_like(n, seed=seed, **kwargs)


def _cmd_gen(args: argparse.Namespace) -> int:
    signal = _generate(args.kind, args.n, args.fs, args.bpm, args.seed)
    save_signal_csv(signal, args.out)
    return EXIT_OK


def _cmd_reconstruct(args: argparse.Namespace) -> int:
    config = load_solver_config(args.solver) if args.solver else SolverConfig()
    signal = load_signal_csv(args.infile)
    recovered, result = recover_signal(signal, args.ratio, args.seed, config)
    save_signal_csv(recovered, args.out)
    if args.residual_log:
        with open(args.residual_log, "w", newline="") as fh:
            fh.write("iteration,rel_change,tv\n")
            for iteration, rel, tv_value in result.history:
                fh.write(f"{iteration},{rel!r},{tv_value!r}\n")
    if args.dump_images:
        out_dir = Path(args.dump_images)
        out_dir.mkdir(parents=True, exist_ok=True)
        original = reshape_to_image(signal)
        bounds = {}
        lo, hi = write_pgm(original.values, out_dir / "original.pgm")
        bounds["original"] = {"min": lo, "max": hi}
        lo, hi = write_pgm(result.image.values, out_dir / "reconstructed.pgm")
        bounds["reconstructed"] = {"min": lo, "max": hi}
        (out_dir / "bounds.json").write_text(json.dumps(bounds, indent=2) + "\n")
    err = mse(signal, recovered)
    print(f"mse={err!r} iters={result.iters_used} converged={result.converged}")
    return EXIT_OK


def _parse_list(text: str, cast) -> tuple:
    try:
        return tuple(cast(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"cannot parse list {text!r}") from exc


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = load_solver_config(args.solver) if args.solver else SolverConfig()
    if args.infile:
        signal = load_signal_csv(args.infile)
        source = f"file:{args.infile}"
    else:
        signal = _generate(args.kind, args.n, args.fs, args.bpm, args.gen_seed)
        source = f"gen:{args.kind}(n={args.n},fs={args.fs},bpm={args.bpm},seed={args.gen_seed})"
    spec = SweepSpec(
        signal=signal,
        ratios=_parse_list(args.ratios, float),
        seeds=_parse_list(args.seeds, int),
        solver=config,
        source=source,
    )
    report = run_sweep(spec, workers=args.workers)
    out = Path(args.out)
    write_report_csv(report, out)
    write_report_sidecar(report, spec, out.with_suffix(".json"))
    for ratio, median in report.median_mse:
        print(f"ratio={ratio:.2f} median_mse={median!r}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "reconstruct":
            return _cmd_reconstruct(args)
        return _cmd_sweep(args)
    except SystemExit_ as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except SolverFailure as exc:
        print(f"cstv: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (SignalFormatError, OSError) as exc:
        print(f"cstv: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"cstv: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
