"""BPSK over AWGN and conversion of channel outputs to bit posteriors.

Mapping convention: bit 0 -> +1, bit 1 -> -1 (unit symbol energy), so a
positive received sample is evidence for bit 0.  Eb/N0 is referenced to
information bits, i.e. the noise variance depends on the code rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["EPS_PROB", "ChannelParams", "modulate_bpsk", "awgn_transmit", "posteriors"]

# probabilities are kept strictly inside (0, 1) so that products, ratios and
# logs in the decoders stay finite
EPS_PROB = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """AWGN channel operating point.

    sigma2 is derived as 1 / (2 * rate * 10^(ebn0_db/10)): unit symbol
    energy, rate converting per-symbol to per-information-bit energy.
    """

    ebn0_db: float
    rate: float
    sigma2: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"code rate must be in (0, 1], got {self.rate}")
        s2 = 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))
        if not s2 > 0.0:
            raise ValueError("noise variance underflowed to zero")
        object.__setattr__(self, "sigma2", s2)


def modulate_bpsk(bits) -> np.ndarray:
    bits = np.asarray(bits)
    if not np.isin(bits, (0, 1)).all():
        raise ValueError("codeword bits must be 0 or 1")
    return 1.0 - 2.0 * bits.astype(np.float64)


def awgn_transmit(symbols, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    """Add white Gaussian noise of variance ``params.sigma2``.

    The generator is an explicit argument so each simulation trial owns its
    stream; the same generator state always yields the same vector.
    """
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + rng.normal(0.0, np.sqrt(params.sigma2), size=symbols.shape)


def posteriors(received, params: ChannelParams) -> np.ndarray:
    """Per-bit posterior P_i = Pr(bit i = 1 | r_i) under a uniform prior.

    With the 0 -> +1 map this is 1 / (1 + exp(2 r / sigma2)), clamped into
    [EPS_PROB, 1 - EPS_PROB].
    """
    r = np.asarray(received, dtype=np.float64)
    if not np.isfinite(r).all():
        raise ValueError("received samples must be finite")
    z = np.clip(2.0 * r / params.sigma2, -700.0, 700.0)  # exp overflows past ~709
    p = 1.0 / (1.0 + np.exp(z))
    return np.clip(p, EPS_PROB, 1.0 - EPS_PROB)
