"""Gradient-descent decoding on a Tanner-graph-shaped two-layer network.

Layer 1 is the received soft bits, layer 2 computes one soft XOR per check.
A valid codeword drives every output to zero, so decoding minimizes the sum
of squared outputs by gradient steps on the inputs themselves; the network
topology is fixed by H and nothing else is trained.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code_model import SparseParityCheck, syndrome
from .spa import DecodeOutcome, _exclusive_products

__all__ = [
    "MlpdConfig",
    "MlpdState",
    "soft_xor_chain",
    "forward",
    "check_gradient",
    "update_inputs",
    "hard_map",
    "mlpd_decode",
]


@dataclass(frozen=True)
class MlpdConfig:
    """Training-loop knobs.

    mu is the training rate for the input vector, eps_stop the SSE level
    treated as converged, and syndrome_check enables stopping as soon as the
    hard decision already satisfies parity.  Clamping the inputs to [0, 1]
    is not optional: soft XOR is only meaningful on that interval.
    """

    mu: float = 0.05
    eps_stop: float = 1e-3
    max_iters: int = 100
    clamp: bool = True
    syndrome_check: bool = True

    def __post_init__(self):
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"training rate must be in (0, 1), got {self.mu}")
        if not self.eps_stop > 0.0:
            raise ValueError("eps_stop must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")
        if not self.clamp:
            raise ValueError("running without the [0, 1] input clamp is not supported")


@dataclass
class MlpdState:
    """Snapshot of the trainable inputs and the output layer they produce."""

    c: np.ndarray
    o: np.ndarray
    sse: float
    iterations: int


def soft_xor(x, y):
    """Two-input soft XOR x(1-y) + y(1-x); equals boolean XOR on {0, 1}."""
    return x * (1.0 - y) + y * (1.0 - x)


def soft_xor_chain(values) -> float:
    """Left-to-right fold of the two-input soft XOR; order does not matter."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("soft XOR needs at least one input")
    if values.min() < 0.0 or values.max() > 1.0:
        raise ValueError("soft XOR inputs must lie in [0, 1]")
    acc = values[0]
    for x in values[1:]:
        acc = soft_xor(acc, x)
    return float(acc)


def _outputs(c: np.ndarray, H: SparseParityCheck) -> np.ndarray:
    t = H.tanner_arrays()
    gathered = np.where(t.cv_mask, c[t.cv], 0.0)  # x XOR 0 = x, so pads are inert
    acc = gathered[:, 0].copy()
    for col in range(1, gathered.shape[1]):
        x = gathered[:, col]
        acc = acc * (1.0 - x) + x * (1.0 - acc)
    return acc


def forward(c, H: SparseParityCheck):
    """Output-layer values o_j (chained soft XOR per check) and SSE = 1/2 sum o_j^2."""
    c = np.asarray(c, dtype=np.float64)
    if c.shape != (H.n,):
        raise ValueError(f"expected {H.n} soft inputs")
    if c.min() < 0.0 or c.max() > 1.0:
        raise ValueError("soft inputs must lie in [0, 1]")
    o = _outputs(c, H)
    return o, 0.5 * float(o @ o)


def _gradient_table(c: np.ndarray, H: SparseParityCheck) -> np.ndarray:
    """(m, max_row_weight) table of do_j/dc_i over the edges of H.

    The derivative of a chained soft XOR with respect to one input is the
    product of (1 - 2 c_l) over the check's other inputs, independent of
    chain order.
    """
    t = H.tanner_arrays()
    factors = np.where(t.cv_mask, 1.0 - 2.0 * c[t.cv], 1.0)
    return _exclusive_products(factors)


def check_gradient(c, H: SparseParityCheck, j: int, i: int) -> float:
    """do_j/dc_i for one edge; an empty product (weight-1 check) gives 1."""
    c = np.asarray(c, dtype=np.float64)
    if i not in H.rows[j]:
        raise ValueError(f"variable {i} is not an input of check {j}")
    others = [l for l in H.rows[j] if l != i]
    return float(np.prod([1.0 - 2.0 * c[l] for l in others])) if others else 1.0


def update_inputs(state: MlpdState, H: SparseParityCheck, mu: float) -> np.ndarray:
    """One gradient step: c_i += -mu * sum_j o_j * do_j/dc_i, clamped to [0, 1]."""
    t = H.tanner_arrays()
    grads = _gradient_table(state.c, H)
    per_edge = state.o[:, None] * grads
    pulls = np.where(t.vc_mask, per_edge[t.vc, t.vc_pos], 0.0).sum(axis=1)
    return np.clip(state.c - mu * pulls, 0.0, 1.0)


def hard_map(c) -> np.ndarray:
    """Nearest bit by Euclidean distance; the midpoint 0.5 maps to 0."""
    c = np.asarray(c, dtype=np.float64)
    return (c > 0.5).astype(np.uint8)


def mlpd_decode(P, H: SparseParityCheck, cfg: MlpdConfig | None = None):
    """Train the received soft vector until parity holds or the SSE bottoms out.

    Returns (outcome, state).  ``outcome.iterations`` counts gradient steps
    actually applied; a frame whose initial hard decision already satisfies
    parity performs none.  ``converged`` reports the final syndrome test
    regardless of which rule stopped the loop.
    """
    if cfg is None:
        cfg = MlpdConfig()
    c = np.clip(np.asarray(P, dtype=np.float64), 0.0, 1.0)
    if c.shape != (H.n,):
        raise ValueError(f"expected {H.n} soft inputs")
    iterations = 0
    while True:
        o = _outputs(c, H)
        sse = 0.5 * float(o @ o)
        state = MlpdState(c=c, o=o, sse=sse, iterations=iterations)
        if cfg.syndrome_check and not syndrome(H, hard_map(c)).any():
            break
        if sse < cfg.eps_stop or iterations >= cfg.max_iters:
            break
        c = update_inputs(state, H, cfg.mu)
        iterations += 1
    bits = hard_map(state.c)
    converged = not syndrome(H, bits).any()
    outcome = DecodeOutcome(bits=bits, converged=converged, iterations=iterations, decoder_tag="mlpd")
    return outcome, state
