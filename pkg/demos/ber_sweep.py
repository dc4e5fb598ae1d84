# Seeded BER sweep of both decoders over Eb/N0, saved as CSV and rendered
# as an SVG curve.  Rerunning this script reproduces the CSV byte for byte.

from pathlib import Path

from ldpclab import SimConfig, construct_regular, run_sweep, save_alist, save_csv
from ldpclab.plotting import plot_ber_records

out_dir = Path(__file__).resolve().parent / "output"
out_dir.mkdir(exist_ok=True)

code_path = out_dir / "code_20_1_2.alist"
code_path.write_text(save_alist(construct_regular(20, 1, 2, seed=7)))

cfg = SimConfig(
    code_path=code_path,
    decoders=("spa", "mlpd"),
    ebn0_start=0.0,
    ebn0_step=2.0,
    ebn0_stop=8.0,
    min_frame_errors=100,
    max_frames=200_000,
    master_seed=2024,
)

print(f"sweeping {cfg.ebn0_grid} dB with decoders {cfg.decoders} ...")
records = run_sweep(cfg, workers=2)

print(f"{'Eb/N0':>6} {'decoder':>8} {'frames':>8} {'BER':>12} {'FER':>12} {'avg iters':>10}")
for r in records:
    print(f"{r.ebn0_db:>6g} {r.decoder:>8} {r.frames:>8} {r.ber:>12.6g} "
          f"{r.fer:>12.6g} {r.avg_iterations:>10.3f}")

csv_path = out_dir / "ber_sweep.csv"
svg_path = out_dir / "ber_sweep.svg"
save_csv(records, csv_path)
plot_ber_records(records, svg_path)
print(f"\nwrote {csv_path}")
print(f"wrote {svg_path}")
