# Walk one noisy frame through the whole pipeline: modulate, add noise,
# convert to posteriors, then decode with both decoders and watch the
# gradient decoder's squared-error loss shrink.

import numpy as np

from ldpclab import (
    ChannelParams,
    MlpdConfig,
    awgn_transmit,
    construct_regular,
    forward,
    hard_map,
    mlpd_decode,
    modulate_bpsk,
    posteriors,
    spa_decode,
    syndrome,
)
from ldpclab.mlpd import MlpdState, update_inputs

H = construct_regular(20, 1, 2, seed=7)
params = ChannelParams(ebn0_db=3.0, rate=(H.n - H.m) / H.n)
print(f"channel: Eb/N0 = {params.ebn0_db} dB, rate = {params.rate}, "
      f"sigma^2 = {params.sigma2:.4f}")

word = np.zeros(H.n, dtype=np.uint8)
rng = np.random.default_rng(123)
received = awgn_transmit(modulate_bpsk(word), params, rng)
P = posteriors(received, params)
print(f"received samples (first 6): {np.round(received[:6], 3)}")
print(f"bit-1 posteriors (first 6): {np.round(P[:6], 3)}")
print(f"hard decision on P alone:   {hard_map(P).tolist()}")
print(f"  ... which violates {int(syndrome(H, hard_map(P)).sum())} of {H.m} checks")
print()

out = spa_decode(P, H)
print(f"sum-product:      converged={out.converged} after {out.iterations} iteration(s), "
      f"bit errors = {int((out.bits != word).sum())}")

outcome, state = mlpd_decode(P, H, MlpdConfig(mu=0.05))
print(f"gradient descent: converged={outcome.converged} after {outcome.iterations} "
      f"update(s), bit errors = {int((outcome.bits != word).sum())}, "
      f"final SSE = {state.sse:.5f}")
print()

# replay the gradient trajectory by hand to see the loss fall
c = P.copy()
print("manual gradient steps (mu = 0.05):")
for step in range(8):
    o, sse = forward(c, H)
    flags = int(syndrome(H, hard_map(c)).sum())
    print(f"  step {step}: SSE = {sse:.5f}, violated checks = {flags}")
    if flags == 0:
        break
    c = update_inputs(MlpdState(c=c, o=o, sse=sse, iterations=step), H, mu=0.05)
