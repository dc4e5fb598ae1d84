# Per-iteration multiplication counts for both decoders across a few codes,
# and a check of the closed-form gap between them.

from ldpclab import SparseParityCheck, complexity_report, construct_regular

hamming = SparseParityCheck.from_dense(
    [
        [1, 1, 1, 0, 1, 0, 0],
        [1, 1, 0, 1, 0, 1, 0],
        [1, 0, 1, 1, 0, 0, 1],
    ]
)

codes = {
    "(20, 1, 2)": construct_regular(20, 1, 2, seed=7),
    "(60, 1, 3)": construct_regular(60, 1, 3, seed=7),
    "(96, 3, 6)": construct_regular(96, 3, 6, seed=7),
    "Hamming (7, 4)": hamming,
}

print(f"{'code':<16} {'spa q':>7} {'spa r':>7} {'spa dec':>8} {'spa tot':>8} "
      f"{'mlpd xor':>9} {'mlpd upd':>9} {'mlpd tot':>9} {'gap':>6}")
for name, H in codes.items():
    r = complexity_report(H)
    assert r.spa_total == r.mlpd_total + r.gap
    print(f"{name:<16} {r.spa_q:>7} {r.spa_r:>7} {r.spa_decision:>8} {r.spa_total:>8} "
          f"{r.mlpd_xor:>9} {r.mlpd_update:>9} {r.mlpd_total:>9} {r.gap:>6}")

print()
print("the gap grows linearly with code length and quadratically with density:")
for sigma in (2, 3, 4):
    H = construct_regular(120, sigma, 6, seed=1)
    r = complexity_report(H)
    print(f"  n=120, column weight {sigma}: spa={r.spa_total}, "
          f"mlpd={r.mlpd_total}, gap={r.gap}")
