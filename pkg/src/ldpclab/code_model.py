"""Sparse parity-check matrices with Tanner-graph adjacency.

A code is held as row/column adjacency lists rather than a dense matrix:
``rows[j]`` lists the variable nodes wired to check ``j`` and ``cols[i]``
lists the check nodes wired to variable ``i``.  All indices are 0-based in
memory; the alist text format is 1-based (MacKay convention).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SparseParityCheck",
    "AlistParseError",
    "construct_regular",
    "load_alist",
    "save_alist",
    "syndrome",
    "derive_generator",
    "GeneratorMatrix",
]


class AlistParseError(ValueError):
    """Malformed alist text. Carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TannerArrays:
    """Padded adjacency arrays for vectorized message passing.

    ``cv`` is (m, max_row_weight) variable indices per check, ``vc`` is
    (n, max_col_weight) check indices per variable; entries are left-packed
    and padding slots (mask False) hold index 0, so every gather must be
    masked.  ``cv_pos[j, t]`` is the slot of edge (cv[j, t], j) inside the
    variable-side layout, and ``vc_pos`` is the inverse map.
    """

    cv: np.ndarray
    cv_mask: np.ndarray
    cv_pos: np.ndarray
    vc: np.ndarray
    vc_mask: np.ndarray
    vc_pos: np.ndarray


class SparseParityCheck:
    """Immutable sparse parity-check matrix H.

    Parameters
    ----------
    n : int
        Code length (number of variable nodes / columns).
    rows : iterable of iterables of int
        For each check, the variable indices it touches.  Every check must
        touch at least one variable; duplicate indices within a check are
        rejected.
    """

    def __init__(self, n, rows):
        n = int(n)
        if n < 1:
            raise ValueError("code length must be positive")
        clean_rows = []
        for j, row in enumerate(rows):
            row = sorted(int(i) for i in row)
            if not row:
                raise ValueError(f"check {j} has weight 0")
            if row[0] < 0 or row[-1] >= n:
                raise ValueError(f"check {j}: variable index out of range [0, {n})")
            if any(a == b for a, b in zip(row, row[1:])):
                raise ValueError(f"check {j}: duplicate variable index")
            clean_rows.append(tuple(row))
        cols = [[] for _ in range(n)]
        for j, row in enumerate(clean_rows):
            for i in row:
                cols[i].append(j)
        self._n = n
        self._rows = tuple(clean_rows)
        self._cols = tuple(tuple(c) for c in cols)
        self._arrays = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._rows)

    @property
    def rows(self):
        return self._rows

    @property
    def cols(self):
        return self._cols

    @property
    def row_weights(self) -> np.ndarray:
        return np.array([len(r) for r in self._rows], dtype=np.int64)

    @property
    def column_weights(self) -> np.ndarray:
        return np.array([len(c) for c in self._cols], dtype=np.int64)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self._rows)

    @classmethod
    def from_dense(cls, h) -> "SparseParityCheck":
        h = np.asarray(h)
        if h.ndim != 2:
            raise ValueError("dense parity-check matrix must be 2-D")
        if not np.isin(h, (0, 1)).all():
            raise ValueError("dense parity-check matrix must be binary")
        rows = [np.flatnonzero(h[j]).tolist() for j in range(h.shape[0])]
        return cls(h.shape[1], rows)

    def to_dense(self) -> np.ndarray:
        h = np.zeros((self.m, self.n), dtype=np.uint8)
        for j, row in enumerate(self._rows):
            h[j, list(row)] = 1
        return h

    def tanner_arrays(self) -> TannerArrays:
        """Padded adjacency arrays, built once and cached."""
        if self._arrays is None:
            self._arrays = _build_arrays(self)
        return self._arrays

    def __eq__(self, other):
        if not isinstance(other, SparseParityCheck):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self):
        return hash((self._n, self._rows))

    def __repr__(self):
        return f"SparseParityCheck(n={self._n}, m={self.m}, edges={self.edge_count})"

    # pickled H objects travel to simulation worker processes; drop the
    # cached arrays so the payload stays small
    def __getstate__(self):
        return {"n": self._n, "rows": self._rows}

    def __setstate__(self, state):
        self.__init__(state["n"], state["rows"])


def _build_arrays(H: SparseParityCheck) -> TannerArrays:
    wr = max((len(r) for r in H.rows), default=1)
    wc = max((len(c) for c in H.cols), default=0)
    wc = max(wc, 1)
    m, n = H.m, H.n

    cv = np.zeros((m, wr), dtype=np.int64)
    cv_mask = np.zeros((m, wr), dtype=bool)
    vc = np.zeros((n, wc), dtype=np.int64)
    vc_mask = np.zeros((n, wc), dtype=bool)
    for j, row in enumerate(H.rows):
        cv[j, : len(row)] = row
        cv_mask[j, : len(row)] = True
    for i, col in enumerate(H.cols):
        vc[i, : len(col)] = col
        vc_mask[i, : len(col)] = True

    # slot of check j within cols[i] and of variable i within rows[j]
    pos_in_col = {}
    for i, col in enumerate(H.cols):
        for s, j in enumerate(col):
            pos_in_col[(i, j)] = s
    cv_pos = np.zeros((m, wr), dtype=np.int64)
    for j, row in enumerate(H.rows):
        for t, i in enumerate(row):
            cv_pos[j, t] = pos_in_col[(i, j)]
    vc_pos = np.zeros((n, wc), dtype=np.int64)
    for i, col in enumerate(H.cols):
        for s, j in enumerate(col):
            vc_pos[i, s] = H.rows[j].index(i)

    for a in (cv, cv_mask, cv_pos, vc, vc_mask, vc_pos):
        a.flags.writeable = False
    return TannerArrays(cv, cv_mask, cv_pos, vc, vc_mask, vc_pos)


def construct_regular(n, sigma, rho, seed=0) -> SparseParityCheck:
    """Build a regular code: every column weight ``sigma``, every row weight ``rho``.

    Uses Gallager's construction when ``rho`` divides ``n``: a block of
    n/rho disjoint checks, stacked ``sigma`` times under seeded column
    permutations.  Otherwise falls back to a seeded socket interleaver with
    deterministic duplicate repair.  Either way m = n*sigma/rho and the
    result is a pure function of (n, sigma, rho, seed).
    """
    n, sigma, rho = int(n), int(sigma), int(rho)
    if sigma < 1 or rho < 2:
        raise ValueError("need column weight >= 1 and row weight >= 2")
    if (n * sigma) % rho != 0:
        raise ValueError(f"n*sigma = {n * sigma} not divisible by row weight {rho}")
    rng = np.random.default_rng(seed)
    if n % rho == 0:
        rows = _gallager_rows(n, sigma, rho, rng)
    else:
        rows = _socket_rows(n, sigma, rho, rng)
    H = SparseParityCheck(n, rows)
    assert (H.column_weights == sigma).all() and (H.row_weights == rho).all()
    return H


def _gallager_rows(n, sigma, rho, rng):
    base = [list(range(j * rho, (j + 1) * rho)) for j in range(n // rho)]
    rows = [list(r) for r in base]
    for _ in range(sigma - 1):
        perm = rng.permutation(n)
        rows.extend([sorted(int(perm[i]) for i in r) for r in base])
    return rows


def _socket_rows(n, sigma, rho, rng):
    # n*sigma variable sockets matched onto m*rho check sockets; repair
    # swaps remove duplicate edges within a check
    m = n * sigma // rho
    var_sockets = np.repeat(np.arange(n), sigma)
    for _ in range(200):
        perm = rng.permutation(var_sockets)
        rows = [perm[j * rho : (j + 1) * rho] for j in range(m)]
        if all(len(set(r.tolist())) == rho for r in rows):
            return [r.tolist() for r in rows]
        flat = np.concatenate(rows)
        if _repair_duplicates(flat, m, rho, rng):
            return [flat[j * rho : (j + 1) * rho].tolist() for j in range(m)]
    raise ValueError(f"could not realize a ({n}, {sigma}, {rho}) regular code")


def _repair_duplicates(flat, m, rho, rng):
    for _ in range(50):
        fixed = True
        for j in range(m):
            seg = flat[j * rho : (j + 1) * rho]
            seen = {}
            for t, v in enumerate(seg.tolist()):
                if v in seen:
                    fixed = False
                    # swap with a socket from a random other check that
                    # neither introduces v there nor pulls a duplicate here
                    for k in rng.permutation(m * rho):
                        other = k // rho
                        if other == j:
                            continue
                        w = int(flat[k])
                        oseg = flat[other * rho : (other + 1) * rho]
                        if w not in seg and v not in oseg:
                            flat[j * rho + t], flat[k] = w, v
                            seg = flat[j * rho : (j + 1) * rho]
                            break
                else:
                    seen[v] = t
        if fixed:
            return True
    return False


def syndrome(H: SparseParityCheck, bits) -> np.ndarray:
    """Parity of ``bits`` on every check: component j is XOR of bits[rows[j]]."""
    bits = np.asarray(bits)
    if bits.shape != (H.n,):
        raise ValueError(f"expected {H.n} bits, got shape {bits.shape}")
    t = H.tanner_arrays()
    gathered = np.where(t.cv_mask, bits[t.cv], 0)
    return (gathered.sum(axis=1) % 2).astype(np.uint8)


# --- alist text format (MacKay convention, 1-based, zero-padded) ---------


def save_alist(H: SparseParityCheck) -> str:
    wc = int(H.column_weights.max(initial=0))
    wr = int(H.row_weights.max(initial=0))
    lines = [
        f"{H.n} {H.m}",
        f"{wc} {wr}",
        " ".join(str(len(c)) for c in H.cols),
        " ".join(str(len(r)) for r in H.rows),
    ]
    for col in H.cols:
        entries = [j + 1 for j in col] + [0] * (wc - len(col))
        lines.append(" ".join(str(e) for e in entries))
    for row in H.rows:
        entries = [i + 1 for i in row] + [0] * (wr - len(row))
        lines.append(" ".join(str(e) for e in entries))
    return "\n".join(lines) + "\n"


def load_alist(text: str) -> SparseParityCheck:
    raw = text.split("\n")
    lines = [(k + 1, ln.split()) for k, ln in enumerate(raw) if ln.strip()]
    if len(lines) < 4:
        raise AlistParseError(len(raw), "truncated: need header, weights and adjacency")

    def ints(idx, expect=None):
        lineno, toks = lines[idx]
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise AlistParseError(lineno, f"non-integer token in {toks!r}") from None
        if expect is not None and len(vals) != expect:
            raise AlistParseError(lineno, f"expected {expect} integers, got {len(vals)}")
        return lineno, vals

    _, hdr = ints(0, 2)
    n, m = hdr
    if n < 1 or m < 1:
        raise AlistParseError(lines[0][0], f"bad dimensions n={n} m={m}")
    _, (wc_max, wr_max) = ints(1, 2)
    _, col_w = ints(2, n)
    _, row_w = ints(3, m)
    if len(lines) != 4 + n + m:
        raise AlistParseError(
            lines[-1][0], f"expected {4 + n + m} non-empty lines, found {len(lines)}"
        )
    if max(col_w, default=0) != wc_max:
        raise AlistParseError(lines[2][0], f"declared max column weight {wc_max} != {max(col_w)}")
    if max(row_w, default=0) != wr_max:
        raise AlistParseError(lines[3][0], f"declared max row weight {wr_max} != {max(row_w)}")

    def adjacency(idx, width, weight, limit):
        lineno, vals = ints(idx, width)
        listed = [v for v in vals[:weight]]
        if any(v == 0 for v in listed) or any(v != 0 for v in vals[weight:]):
            raise AlistParseError(lineno, f"declared weight {weight} does not match entries")
        out = []
        for v in listed:
            if not 1 <= v <= limit:
                raise AlistParseError(lineno, f"index {v} out of range 1..{limit}")
            out.append(v - 1)
        if len(set(out)) != len(out):
            raise AlistParseError(lineno, "duplicate index")
        return lineno, out

    cols = []
    for i in range(n):
        _, col = adjacency(4 + i, wc_max, col_w[i], m)
        cols.append(col)
    rows = []
    for j in range(m):
        lineno, row = adjacency(4 + n + j, wr_max, row_w[j], n)
        if row_w[j] == 0:
            raise AlistParseError(lineno, f"check {j + 1} has weight 0")
        rows.append(row)

    H = SparseParityCheck(n, rows)
    expect_cols = tuple(tuple(sorted(c)) for c in cols)
    if H.cols != expect_cols:
        bad = next(i for i in range(n) if H.cols[i] != expect_cols[i])
        raise AlistParseError(
            lines[4 + bad][0], f"column {bad + 1} adjacency inconsistent with rows"
        )
    return H


# --- GF(2) generator derivation ------------------------------------------


@dataclass(frozen=True)
class GeneratorMatrix:
    """Systematic generator for the code of a parity-check matrix.

    ``matrix`` is (k_effective, n) over GF(2) in the original column order,
    so ``matrix @ H^T = 0 (mod 2)`` directly.  Message bits land in the
    ``free_cols`` positions; ``pivot_cols`` are the dependent positions.
    ``pivot_cols + free_cols`` is the column permutation that makes the
    permuted generator systematic.
    """

    matrix: np.ndarray
    rank: int
    pivot_cols: tuple
    free_cols: tuple

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def k_effective(self) -> int:
        return self.matrix.shape[0]

    def encode(self, message) -> np.ndarray:
        message = np.asarray(message)
        if message.shape != (self.k_effective,):
            raise ValueError(f"expected {self.k_effective} message bits")
        return (message.astype(np.uint8) @ self.matrix) % 2


def derive_generator(H: SparseParityCheck) -> GeneratorMatrix:
    """Gauss-Jordan elimination of H over GF(2).

    Rank deficiency is reported, not an error: the generator then has
    k_effective = n - rank(H) rows.
    """
    a = H.to_dense().astype(np.uint8)
    m, n = a.shape
    pivot_cols = []
    r = 0
    for j in range(n):
        hit = np.flatnonzero(a[r:, j])
        if hit.size == 0:
            continue
        p = r + hit[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        elim = np.flatnonzero(a[:, j])
        elim = elim[elim != r]
        a[elim] ^= a[r]
        pivot_cols.append(j)
        r += 1
        if r == m:
            break
    rank = r
    free_cols = [j for j in range(n) if j not in set(pivot_cols)]
    k = n - rank
    g = np.zeros((k, n), dtype=np.uint8)
    for t, f in enumerate(free_cols):
        g[t, f] = 1
        for row, p in enumerate(pivot_cols):
            g[t, p] = a[row, f]
    return GeneratorMatrix(g, rank, tuple(pivot_cols), tuple(free_cols))
