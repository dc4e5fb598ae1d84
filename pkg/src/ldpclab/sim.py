"""Seeded Monte Carlo BER/FER sweeps over Eb/N0.

Every frame owns a counter-derived RNG stream keyed by (master seed,
decoder, Eb/N0 point, frame index), so a sweep is a pure function of its
configuration: running with 1 worker or 8 gives byte-identical results, and
batches merge by plain summation.
"""

from __future__ import annotations

import csv
import io
import multiprocessing
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import spa
from .channel import ChannelParams, awgn_transmit, modulate_bpsk, posteriors
from .code_model import SparseParityCheck, derive_generator, load_alist
from .mlpd import MlpdConfig, mlpd_decode

__all__ = [
    "SimConfig",
    "BerRecord",
    "CsvFormatError",
    "DECODER_TAGS",
    "run_ber_point",
    "run_sweep",
    "emit_csv",
    "parse_csv",
    "save_csv",
    "load_csv",
]

DECODER_TAGS = ("spa", "mlpd")
CSV_HEADER = "ebn0_db,decoder,frames,bit_errors,frame_errors,ber,fer,avg_iterations"
CSV_COMMENT = "# ber denominator: all n coded bits of every frame"


class CsvFormatError(ValueError):
    """Sweep CSV text that does not follow the schema."""


# frames are evaluated in fixed-size batches; the stop rule is tested at
# batch boundaries so the set of simulated frames never depends on the
# worker count
BATCH_FRAMES = 1024

_DECODER_IDS = {"spa": 1, "mlpd": 2}


def _round6(x: float) -> float:
    """Snap to 6 significant digits, the CSV precision, so records round-trip."""
    return float(f"{float(x):.6g}")


@dataclass(frozen=True)
class SimConfig:
    """One sweep: code, decoders, Eb/N0 grid, stop rule and seeds.

    ``max_iters=None`` leaves each decoder on its own default (50 for
    sum-product, 100 for the gradient decoder).  ``codeword_mode`` is
    "all-zero" (default, exact for the symmetric channel) or "random",
    which encodes random messages through a derived generator.
    """

    code_path: str | Path
    decoders: tuple = DECODER_TAGS
    ebn0_start: float = 0.0
    ebn0_step: float = 1.0
    ebn0_stop: float = 0.0
    max_iters: int | None = None
    mu: float = 0.05
    eps_stop: float = 1e-3
    min_frame_errors: int = 100
    max_frames: int = 10**6
    master_seed: int = 0
    codeword_mode: str = "all-zero"

    def __post_init__(self):
        bad = [d for d in self.decoders if d not in DECODER_TAGS]
        if bad or not self.decoders:
            raise ValueError(f"decoders must be a non-empty subset of {DECODER_TAGS}")
        if self.codeword_mode not in ("all-zero", "random"):
            raise ValueError(f"unknown codeword_mode {self.codeword_mode!r}")
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stop rule needs min_frame_errors >= 1 and max_frames >= 1")
        if self.ebn0_stop < self.ebn0_start:
            raise ValueError("empty Eb/N0 grid")
        if self.ebn0_stop > self.ebn0_start and not self.ebn0_step > 0.0:
            raise ValueError("ebn0_step must be positive")

    @property
    def ebn0_grid(self) -> tuple:
        if self.ebn0_stop == self.ebn0_start:
            return (self.ebn0_start,)
        count = int(np.floor((self.ebn0_stop - self.ebn0_start) / self.ebn0_step + 1e-9)) + 1
        return tuple(self.ebn0_start + k * self.ebn0_step for k in range(count))

    def load_code(self) -> SparseParityCheck:
        return load_alist(Path(self.code_path).read_text())


@dataclass(frozen=True)
class BerRecord:
    """One (Eb/N0, decoder) cell of a sweep; float fields carry 6 significant digits."""

    ebn0_db: float
    decoder: str
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    avg_iterations: float

    @classmethod
    def from_counts(cls, ebn0_db, decoder, frames, bit_errors, frame_errors, iter_sum, n):
        return cls(
            ebn0_db=_round6(ebn0_db),
            decoder=decoder,
            frames=frames,
            bit_errors=bit_errors,
            frame_errors=frame_errors,
            ber=_round6(bit_errors / (frames * n)),
            fer=_round6(frame_errors / frames),
            avg_iterations=_round6(iter_sum / frames),
        )


def _frame_rng(master_seed, decoder_tag, ebn0_db, frame_index) -> np.random.Generator:
    """Independent stream per frame, stable across worker layouts."""
    ebn0_key = int(round(ebn0_db * 1000)) & 0xFFFFFFFF
    seq = np.random.SeedSequence(
        entropy=int(master_seed),
        spawn_key=(_DECODER_IDS[decoder_tag], ebn0_key, int(frame_index)),
    )
    return np.random.default_rng(seq)


def _run_frames(H, params, decoder_tag, cfg, generator, start, stop):
    """Decode frames [start, stop); returns (frames, bit_errors, frame_errors, iter_sum)."""
    n = H.n
    mlpd_cfg = MlpdConfig(
        mu=cfg.mu,
        eps_stop=cfg.eps_stop,
        max_iters=cfg.max_iters if cfg.max_iters is not None else 100,
    )
    spa_iters = cfg.max_iters if cfg.max_iters is not None else spa.DEFAULT_MAX_ITERS
    zero_word = np.zeros(n, dtype=np.uint8)
    bit_errors = frame_errors = iter_sum = 0
    for idx in range(start, stop):
        rng = _frame_rng(cfg.master_seed, decoder_tag, params.ebn0_db, idx)
        if generator is not None:
            word = generator.encode(rng.integers(0, 2, size=generator.k_effective))
        else:
            word = zero_word
        received = awgn_transmit(modulate_bpsk(word), params, rng)
        P = posteriors(received, params)
        if decoder_tag == "spa":
            outcome = spa.spa_decode(P, H, max_iters=spa_iters)
        else:
            outcome, _ = mlpd_decode(P, H, mlpd_cfg)
        wrong = int(np.count_nonzero(outcome.bits != word))
        bit_errors += wrong
        frame_errors += int(wrong > 0)
        iter_sum += outcome.iterations
    return stop - start, bit_errors, frame_errors, iter_sum


def _worker(args):
    return _run_frames(*args)


def run_ber_point(cfg: SimConfig, ebn0_db, decoder_tag, workers: int = 1, code=None) -> BerRecord:
    """Monte Carlo estimate of one (Eb/N0, decoder) cell.

    Frames accumulate until ``min_frame_errors`` frame errors have been seen
    or ``max_frames`` frames are spent, whichever comes first (tested at
    fixed batch boundaries).  The result depends only on cfg and the point,
    never on ``workers``.
    """
    if decoder_tag not in DECODER_TAGS:
        raise ValueError(f"unknown decoder {decoder_tag!r}")
    H = cfg.load_code() if code is None else code
    params = ChannelParams(ebn0_db=float(ebn0_db), rate=(H.n - H.m) / H.n)
    generator = None
    if cfg.codeword_mode == "random":
        generator = derive_generator(H)
        if generator.rank < H.m:
            warnings.warn(
                f"H has rank {generator.rank} < m = {H.m}; "
                "falling back to all-zero codewords",
                stacklevel=2,
            )
            generator = None

    pool = None
    if workers > 1:
        pool = multiprocessing.get_context().Pool(workers)
    try:
        frames = bit_errors = frame_errors = iter_sum = 0
        while frame_errors < cfg.min_frame_errors and frames < cfg.max_frames:
            batch = min(BATCH_FRAMES, cfg.max_frames - frames)
            bounds = np.linspace(frames, frames + batch, (min(workers, batch)) + 1, dtype=int)
            jobs = [
                (H, params, decoder_tag, cfg, generator, int(a), int(b))
                for a, b in zip(bounds[:-1], bounds[1:])
                if b > a
            ]
            results = pool.map(_worker, jobs) if pool else [_worker(j) for j in jobs]
            for f, be, fe, it in results:
                frames += f
                bit_errors += be
                frame_errors += fe
                iter_sum += it
    finally:
        if pool:
            pool.close()
            pool.join()
    return BerRecord.from_counts(
        float(ebn0_db), decoder_tag, frames, bit_errors, frame_errors, iter_sum, H.n
    )


def run_sweep(cfg: SimConfig, workers: int = 1) -> list:
    """All grid points for all configured decoders, grid-major row order."""
    H = cfg.load_code()
    records = []
    for ebn0 in cfg.ebn0_grid:
        for tag in cfg.decoders:
            records.append(run_ber_point(cfg, ebn0, tag, workers=workers, code=H))
    return records


# --- CSV persistence -------------------------------------------------------


def emit_csv(records) -> str:
    out = io.StringIO()
    out.write(CSV_COMMENT + "\n")
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(
            f"{r.ebn0_db:.6g},{r.decoder},{r.frames},{r.bit_errors},"
            f"{r.frame_errors},{r.ber:.6g},{r.fer:.6g},{r.avg_iterations:.6g}\n"
        )
    return out.getvalue()


def parse_csv(text: str) -> list:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != CSV_HEADER:
        raise CsvFormatError(f"expected header {CSV_HEADER!r}")
    records = []
    for row in csv.reader(lines[1:]):
        if len(row) != 8:
            raise CsvFormatError(f"expected 8 fields, got {row!r}")
        try:
            records.append(
                BerRecord(
                    ebn0_db=float(row[0]),
                    decoder=row[1],
                    frames=int(row[2]),
                    bit_errors=int(row[3]),
                    frame_errors=int(row[4]),
                    ber=float(row[5]),
                    fer=float(row[6]),
                    avg_iterations=float(row[7]),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"bad row {row!r}: {exc}") from None
    return records


def save_csv(records, path) -> None:
    Path(path).write_text(emit_csv(records))


def load_csv(path) -> list:
    return parse_csv(Path(path).read_text())
