"""Probability-domain sum-product decoding on the Tanner graph.

Messages are kept as probabilities rather than log-likelihood ratios so the
arithmetic matches the multiplication counts in :mod:`ldpclab.complexity`
operation for operation.  The schedule is flooding: all check messages, then
all variable messages, then a tentative decision and syndrome test, once per
iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import EPS_PROB
from .code_model import SparseParityCheck, syndrome

__all__ = [
    "DecodeOutcome",
    "SpaMessages",
    "spa_init",
    "check_update",
    "variable_update",
    "app_decide",
    "spa_decode",
    "DEFAULT_MAX_ITERS",
]

DEFAULT_MAX_ITERS = 50


@dataclass
class DecodeOutcome:
    """Hard decision plus convergence metadata for one decode call."""

    bits: np.ndarray
    converged: bool
    iterations: int
    decoder_tag: str


@dataclass
class SpaMessages:
    """Per-edge message state, stored in the check-side padded layout.

    ``q1[j, t]`` is q(1) from variable ``cv[j, t]`` to check j and
    ``r1[j, t]`` the reply; q(0) and r(0) are the complements.  ``r1`` is
    None until the first check update.  ``degenerate_updates`` counts
    normalizer fallbacks, which interior clamping should keep at zero.
    """

    q1: np.ndarray
    r1: np.ndarray | None = None
    degenerate_updates: int = field(default=0)

    def q_message(self, H: SparseParityCheck, i: int, j: int):
        """(q0, q1) on edge variable i -> check j."""
        t = H.rows[j].index(i)
        return 1.0 - self.q1[j, t], self.q1[j, t]

    def r_message(self, H: SparseParityCheck, j: int, i: int):
        """(r0, r1) on edge check j -> variable i."""
        if self.r1 is None:
            raise ValueError("check messages not computed yet")
        t = H.rows[j].index(i)
        return 1.0 - self.r1[j, t], self.r1[j, t]

    def edge_message_count(self, H: SparseParityCheck) -> int:
        return int(H.tanner_arrays().cv_mask.sum())


def _clamp(a: np.ndarray) -> np.ndarray:
    return np.clip(a, EPS_PROB, 1.0 - EPS_PROB)


def _exclusive_products(a: np.ndarray) -> np.ndarray:
    """Per-row products of all entries except the own slot.

    Prefix/suffix scans rather than dividing by the full product: factors
    can be exactly zero (q = 0.5 makes 1 - 2q vanish), so division is not an
    option.  Padding slots must already hold the neutral value 1.
    """
    n, w = a.shape
    ones = np.ones((n, 1), dtype=a.dtype)
    pre = np.concatenate([ones, np.cumprod(a, axis=1)], axis=1)
    suf = np.concatenate([np.cumprod(a[:, ::-1], axis=1)[:, ::-1], ones], axis=1)
    return pre[:, :w] * suf[:, 1:]


def spa_init(P, H: SparseParityCheck) -> SpaMessages:
    """Load channel posteriors onto every edge: q(1) = P_i, q(0) = 1 - P_i."""
    P = _clamp(np.asarray(P, dtype=np.float64))
    if P.shape != (H.n,):
        raise ValueError(f"expected {H.n} posteriors")
    t = H.tanner_arrays()
    q1 = np.where(t.cv_mask, P[t.cv], 0.5)
    return SpaMessages(q1=q1)


def check_update(msgs: SpaMessages, H: SparseParityCheck) -> SpaMessages:
    """r(0) = 1/2 + 1/2 * prod over the check's other edges of (1 - 2 q(1))."""
    t = H.tanner_arrays()
    factors = np.where(t.cv_mask, 1.0 - 2.0 * msgs.q1, 1.0)
    r0 = 0.5 + 0.5 * _exclusive_products(factors)
    msgs.r1 = _clamp(1.0 - r0)
    return msgs


def variable_update(msgs: SpaMessages, P, H: SparseParityCheck) -> SpaMessages:
    """q(b) proportional to prior(b) times the other checks' r(b), normalized."""
    if msgs.r1 is None:
        raise ValueError("check messages must be computed before the variable update")
    P = _clamp(np.asarray(P, dtype=np.float64))
    t = H.tanner_arrays()
    r1v = np.where(t.vc_mask, msgs.r1[t.vc, t.vc_pos], 1.0)
    r0v = np.where(t.vc_mask, 1.0 - msgs.r1[t.vc, t.vc_pos], 1.0)
    q0u = (1.0 - P)[:, None] * _exclusive_products(r0v)
    q1u = P[:, None] * _exclusive_products(r1v)
    norm = q0u + q1u
    dead = norm <= 0.0
    if dead[t.vc_mask].any():
        msgs.degenerate_updates += int(dead[t.vc_mask].sum())
        q1u = np.where(dead, 0.5, q1u)
        norm = np.where(dead, 1.0, norm)
    q1v = _clamp(q1u / norm)
    msgs.q1 = np.where(t.cv_mask, q1v[t.cv, t.cv_pos], 0.5)
    return msgs


def app_decide(msgs: SpaMessages, P, H: SparseParityCheck):
    """Posterior decision from all incoming check messages.

    Returns (bits, q_post) where q_post[i] is the normalized per-bit
    posterior of bit value 1.  Ties decide 0.
    """
    if msgs.r1 is None:
        raise ValueError("check messages must be computed before deciding")
    P = _clamp(np.asarray(P, dtype=np.float64))
    t = H.tanner_arrays()
    r1v = np.where(t.vc_mask, msgs.r1[t.vc, t.vc_pos], 1.0)
    r0v = np.where(t.vc_mask, 1.0 - msgs.r1[t.vc, t.vc_pos], 1.0)
    q0u = (1.0 - P) * r0v.prod(axis=1)
    q1u = P * r1v.prod(axis=1)
    bits = (q1u > q0u).astype(np.uint8)
    norm = q0u + q1u
    degenerate = norm <= 0.0
    if degenerate.any():
        msgs.degenerate_updates += int(degenerate.sum())
        q1u = np.where(degenerate, 0.5, q1u)
        norm = np.where(degenerate, 1.0, norm)
    return bits, _clamp(q1u / norm)


def spa_decode(P, H: SparseParityCheck, max_iters: int = DEFAULT_MAX_ITERS) -> DecodeOutcome:
    """Iterate check/variable updates until the hard decision satisfies parity.

    Non-convergence within ``max_iters`` is a normal outcome and returns the
    last tentative decision with ``converged=False``.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    P = np.asarray(P, dtype=np.float64)
    msgs = spa_init(P, H)
    bits = np.zeros(H.n, dtype=np.uint8)
    for it in range(1, max_iters + 1):
        check_update(msgs, H)
        variable_update(msgs, P, H)
        bits, _ = app_decide(msgs, P, H)
        if not syndrome(H, bits).any():
            return DecodeOutcome(bits=bits, converged=True, iterations=it, decoder_tag="spa")
    return DecodeOutcome(bits=bits, converged=False, iterations=max_iters, decoder_tag="spa")
