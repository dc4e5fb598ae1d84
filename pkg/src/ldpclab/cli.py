"""Command line front end.

Subcommands: ``gen`` (build a regular code and write it as alist),
``decode`` (one frame of soft inputs through a chosen decoder),
``complexity`` (per-iteration multiplication counts), ``simulate``
(BER/FER sweep to CSV) and ``plot`` (CSV to SVG).

Exit codes: 0 success, 1 usage error, 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .code_model import AlistParseError, construct_regular, load_alist, save_alist
from .complexity import complexity_report
from .mlpd import MlpdConfig, mlpd_decode
from .sim import CsvFormatError, DECODER_TAGS, SimConfig, load_csv, run_sweep, save_csv
from .spa import DEFAULT_MAX_ITERS, spa_decode

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the CLI contract reserves 2 for
    # I/O and parse failures, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ldpclab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[], help="construct a regular code, write alist")
    gen.add_argument("--n", type=int, required=True, help="code length")
    gen.add_argument("--col-weight", type=int, required=True, help="ones per column")
    gen.add_argument("--row-weight", type=int, required=True, help="ones per row")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True, metavar="FILE")

    dec = sub.add_parser("decode", help="decode one frame of soft inputs")
    dec.add_argument("--code", required=True, metavar="ALIST")
    dec.add_argument("--decoder", choices=DECODER_TAGS, required=True)
    dec.add_argument("--in", dest="soft_input", required=True, metavar="FILE",
                     help="whitespace-separated bit-1 probabilities, one per variable")
    dec.add_argument("--mu", type=float, default=0.05)
    dec.add_argument("--eps-stop", type=float, default=1e-3)
    dec.add_argument("--max-iters", type=int, default=None)

    cx = sub.add_parser("complexity", help="print per-iteration multiplication counts")
    cx.add_argument("--code", required=True, metavar="ALIST")

    simp = sub.add_parser("simulate", help="Monte Carlo BER/FER sweep")
    simp.add_argument("--code", required=True, metavar="ALIST")
    simp.add_argument("--decoder", choices=DECODER_TAGS + ("both",), default="both")
    simp.add_argument("--ebn0", required=True, metavar="A:STEP:B", help="grid in dB")
    simp.add_argument("--seed", type=int, default=0)
    simp.add_argument("--mu", type=float, default=0.05)
    simp.add_argument("--eps-stop", type=float, default=1e-3)
    simp.add_argument("--max-iters", type=int, default=None)
    simp.add_argument("--min-frame-errors", type=int, default=100)
    simp.add_argument("--max-frames", type=int, default=10**6)
    simp.add_argument("--codeword-mode", choices=("all-zero", "random"), default="all-zero")
    simp.add_argument("--workers", type=int, default=1)
    simp.add_argument("-o", "--output", required=True, metavar="CSV")

    plot = sub.add_parser("plot", help="render a sweep CSV as an SVG curve")
    plot.add_argument("input", metavar="CSV")
    plot.add_argument("-o", "--output", required=True, metavar="SVG")
    return parser


def _parse_grid(text: str):
    parts = text.split(":")
    if len(parts) == 1:
        start = stop = float(parts[0])
        return start, 1.0, stop
    if len(parts) != 3:
        raise ValueError(f"grid must be A:STEP:B, got {text!r}")
    return float(parts[0]), float(parts[1]), float(parts[2])


def _load_code(path):
    return load_alist(Path(path).read_text())


def _cmd_gen(args) -> int:
    H = construct_regular(args.n, args.col_weight, args.row_weight, seed=args.seed)
    Path(args.output).write_text(save_alist(H))
    print(f"wrote ({H.n}, {args.col_weight}, {args.row_weight}) code, m={H.m}, to {args.output}")
    return 0


class _InputDataError(Exception):
    """Malformed content in an input data file (exit code 2)."""


def _cmd_decode(args) -> int:
    H = _load_code(args.code)
    try:
        values = np.array([float(t) for t in Path(args.soft_input).read_text().split()])
    except ValueError as exc:
        raise _InputDataError(f"soft input: {exc}") from exc
    if values.shape != (H.n,):
        raise _InputDataError(f"soft input: expected {H.n} values, got {values.size}")
    if values.min() < 0.0 or values.max() > 1.0:
        raise _InputDataError("soft input: probabilities must lie in [0, 1]")
    if args.decoder == "spa":
        iters = args.max_iters if args.max_iters is not None else DEFAULT_MAX_ITERS
        outcome = spa_decode(values, H, max_iters=iters)
    else:
        iters = args.max_iters if args.max_iters is not None else 100
        cfg = MlpdConfig(mu=args.mu, eps_stop=args.eps_stop, max_iters=iters)
        outcome, _ = mlpd_decode(values, H, cfg)
    print("".join(str(int(b)) for b in outcome.bits))
    print(f"decoder={outcome.decoder_tag} converged={str(outcome.converged).lower()} "
          f"iterations={outcome.iterations}")
    return 0


def _cmd_complexity(args) -> int:
    rep = complexity_report(_load_code(args.code))
    print(f"spa:  q={rep.spa_q} r={rep.spa_r} decision={rep.spa_decision} "
          f"total={rep.spa_total}")
    print(f"mlpd: soft-xor={rep.mlpd_xor} input-update={rep.mlpd_update} "
          f"total={rep.mlpd_total}")
    print(f"gap:  spa_total - mlpd_total = {rep.gap}")
    return 0


def _cmd_simulate(args) -> int:
    start, step, stop = _parse_grid(args.ebn0)
    decoders = DECODER_TAGS if args.decoder == "both" else (args.decoder,)
    cfg = SimConfig(
        code_path=args.code,
        decoders=decoders,
        ebn0_start=start,
        ebn0_step=step,
        ebn0_stop=stop,
        max_iters=args.max_iters,
        mu=args.mu,
        eps_stop=args.eps_stop,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        master_seed=args.seed,
        codeword_mode=args.codeword_mode,
    )
    records = run_sweep(cfg, workers=args.workers)
    save_csv(records, args.output)
    for r in records:
        print(f"{r.ebn0_db:g} dB {r.decoder}: ber={r.ber:.6g} fer={r.fer:.6g} "
              f"({r.frames} frames)")
    return 0


def _cmd_plot(args) -> int:
    from .plotting import plot_ber_records

    plot_ber_records(load_csv(args.input), args.output)
    print(f"wrote {args.output}")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "decode": _cmd_decode,
    "complexity": _cmd_complexity,
    "simulate": _cmd_simulate,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (AlistParseError, CsvFormatError, _InputDataError, OSError) as exc:
        print(f"ldpclab: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ldpclab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
