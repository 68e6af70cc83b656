"""Dense exact linear algebra over GF(p).

Matrices are numpy int64 arrays with entries reduced into [0, p).  The
elimination kernels are blocked: within a narrow panel rows are updated one
pivot at a time, and the trailing part of the matrix is brought up to date
with a single matrix product per panel.  Products run through float64 BLAS,
which is exact as long as every dot product stays below 2**53; `matmul_mod`
chunks the inner dimension so that bound holds for any modulus this package
accepts.
"""

from __future__ import annotations

import numpy as np

_PANEL = 128
_EXACT_CAP = 2**53


def _as_mod(a: np.ndarray, p: int) -> np.ndarray:
    out = np.asarray(a, dtype=np.int64)
    if out.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {out.shape}")
    return out % p


def _matmul_capped(a: np.ndarray, b: np.ndarray, p: int, cap: int) -> np.ndarray:
    """(a @ b) % p with dot products kept below `cap` so float64 stays exact."""
    inner = a.shape[1]
    out_shape = (a.shape[0], b.shape[1])
    if inner == 0 or not out_shape[0] or not out_shape[1]:
        return np.zeros(out_shape, dtype=np.int64)
    step = max(1, (cap - 1) // max((p - 1) ** 2, 1))
    if inner <= step:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(prod).astype(np.int64) % p
    acc = np.zeros(out_shape, dtype=np.int64)
    for lo in range(0, inner, step):
        hi = min(lo + step, inner)
        prod = a[:, lo:hi].astype(np.float64) @ b[lo:hi, :].astype(np.float64)
        acc = (acc + np.rint(prod).astype(np.int64)) % p
    return acc


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact matrix product over GF(p)."""
    a = _as_mod(a, p)
    b = _as_mod(b, p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return _matmul_capped(a, b, p, _EXACT_CAP)


def echelon_mod(a: np.ndarray, p: int, reduced: bool = True):
    """Row echelon form of `a` over GF(p).

    Returns (r, pivot_cols).  Pivot entries are normalized to 1 and rows of
    zeros sink to the bottom; with `reduced` the entries above each pivot are
    cleared as well (RREF).
    """
    work = _as_mod(a, p).copy()
    m, n = work.shape
    pivots: list[int] = []
    r = 0
    j0 = 0
    while j0 < n and r < m:
        j1 = min(j0 + _PANEL, n)
        r0 = r
        block_cols: list[int] = []
        block_invs: list[int] = []
        for j in range(j0, j1):
            nz = np.nonzero(work[r:, j])[0]
            if nz.size == 0:
                continue
            t = r + int(nz[0])
            if t != r:
                work[[r, t]] = work[[t, r]]
            inv = pow(int(work[r, j]), p - 2, p)
            if inv != 1:
                work[r, j:j1] = work[r, j:j1] * inv % p
            mult = work[r + 1 :, j].copy()
            if mult.any():
                work[r + 1 :, j + 1 : j1] = (
                    work[r + 1 :, j + 1 : j1] - np.outer(mult, work[r, j + 1 : j1])
                ) % p
            # Stash the multipliers where the zeros belong; the trailing
            # update below needs them, and they are wiped afterwards.
            work[r + 1 :, j] = mult
            pivots.append(j)
            block_cols.append(j)
            block_invs.append(inv)
            r += 1
        k = r - r0
        if k and j1 < n:
            # Pivot rows first: forward substitution row by row, then scale.
            for t in range(k):
                pr = r0 + t
                if t:
                    lrow = work[pr, block_cols[:t]]
                    work[pr, j1:] = (work[pr, j1:] - lrow @ work[r0:pr, j1:]) % p
                if block_invs[t] != 1:
                    work[pr, j1:] = work[pr, j1:] * block_invs[t] % p
            if r < m:
                l21 = work[r:, block_cols]
                if l21.any():
                    upd = _matmul_capped(l21, work[r0:r, j1:], p, _EXACT_CAP)
                    work[r:, j1:] = (work[r:, j1:] - upd) % p
        for t, j in enumerate(block_cols):
            work[r0 + t + 1 :, j] = 0
        j0 = j1
    if reduced and pivots:
        nb = (len(pivots) + _PANEL - 1) // _PANEL
        for b in reversed(range(nb)):
            t0 = b * _PANEL
            t1 = min(t0 + _PANEL, len(pivots))
            # Clear later pivots out of this block's own rows.
            for t in range(t1 - 1, t0, -1):
                c = pivots[t]
                mult = work[t0:t, c].copy()
                if mult.any():
                    work[t0:t, c:] = (work[t0:t, c:] - np.outer(mult, work[t, c:])) % p
            if t0:
                lead = pivots[t0]
                cmat = work[:t0, pivots[t0:t1]]
                if cmat.any():
                    upd = _matmul_capped(cmat, work[t0:t1, lead:], p, _EXACT_CAP)
                    work[:t0, lead:] = (work[:t0, lead:] - upd) % p
    return work, pivots


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form; returns (r, pivot_cols)."""
    return echelon_mod(a, p, reduced=True)


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank of `a` over GF(p)."""
    return len(echelon_mod(a, p, reduced=False)[1])


def pivot_columns_mod(a: np.ndarray, p: int) -> list[int]:
    """Indices of the lexicographically first maximal independent column set."""
    return echelon_mod(a, p, reduced=False)[1]


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace basis of `a` over GF(p); columns form a basis."""
    red, piv = echelon_mod(a, p, reduced=True)
    n = a.shape[1]
    in_piv = np.zeros(n, dtype=bool)
    piv_arr = np.array(piv, dtype=np.int64)
    if piv:
        in_piv[piv_arr] = True
    free = np.nonzero(~in_piv)[0]
    basis = np.zeros((n, free.size), dtype=np.int64)
    basis[free, np.arange(free.size)] = 1
    if piv and free.size:
        basis[piv_arr, :] = (-red[: len(piv), :][:, free]) % p
    return basis


def standard_complement(cols: np.ndarray, p: int) -> list[int]:
    """Indices of unit vectors completing the column span to the whole space.

    Greedy: feeds [cols | I] through elimination, so the span's own pivots
    win first and the returned unit vectors are the earliest ones that still
    extend it to a basis of GF(p)^n.
    """
    cols = _as_mod(cols, p)
    n, k = cols.shape
    if n == 0:
        return []
    aug = np.hstack([cols, np.eye(n, dtype=np.int64)])
    _, piv = echelon_mod(aug, p, reduced=False)
    return [j - k for j in piv if j >= k]


def solve_mod(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a @ x = b over GF(p), or None if inconsistent.

    Free variables are set to zero.  `b` may be a vector or a matrix of
    right-hand sides; the result matches its shape.
    """
    a = _as_mod(a, p)
    vec = np.asarray(b).ndim == 1
    bm = _as_mod(np.asarray(b).reshape(-1, 1) if vec else b, p)
    if bm.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} vs rhs {bm.shape}")
    n = a.shape[1]
    red, piv = echelon_mod(np.hstack([a, bm]), p, reduced=True)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, bm.shape[1]), dtype=np.int64)
    if piv:
        x[np.array(piv), :] = red[: len(piv), n:]
    return x[:, 0] if vec else x
