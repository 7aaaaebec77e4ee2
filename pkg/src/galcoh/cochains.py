"""Indexing and differentials for inhomogeneous cochains.

An ``n``-cochain is stored as an int64 array of shape ``(|G|**n, r)``: row
``t`` is the value at the ``n``-tuple whose base-``|G|`` digits are ``t``
(first entry most significant), in the carrier's invariant-factor
coordinates.  A cochain is *normalized* when it vanishes on every tuple
containing the identity; normalized cochains form a subcomplex with the same
cohomology and are what the fast engine works with.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.sparse as sp


@lru_cache(maxsize=64)
def tuples(order: int, n: int) -> np.ndarray:
    """All ``n``-tuples over ``range(order)`` in index order, shape ``(order**n, n)``."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((order,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids.astype(np.int64))


@lru_cache(maxsize=64)
def normalized_positions(order: int, n: int) -> np.ndarray:
    """Full indices of the tuples that avoid the identity, in increasing order."""
    T = tuples(order, n)
    return np.flatnonzero(np.all(T != 0, axis=1)) if n else np.zeros(1, dtype=np.int64)


def _norm_index(T: np.ndarray, order: int) -> np.ndarray:
    # tuples with entries in 1..order-1 -> position among normalized tuples
    n = T.shape[1]
    base = order - 1
    idx = np.zeros(T.shape[0], dtype=np.int64)
    for k in range(n):
        idx = idx * base + (T[:, k] - 1)
    return idx


def _full_index(T: np.ndarray, order: int) -> np.ndarray:
    idx = np.zeros(T.shape[0], dtype=np.int64)
    for k in range(T.shape[1]):
        idx = idx * order + T[:, k]
    return idx


def normalized_count(order: int, n: int) -> int:
    return (order - 1) ** n


def normalized_differential(mats: np.ndarray, table: np.ndarray, n: int,
                            rows: np.ndarray | None = None) -> sp.csr_matrix:
    """Integer matrix of ``d_n`` on normalized cochains.

    Columns are indexed by ``(normalized n-tuple, coordinate)`` and rows by
    ``(normalized (n+1)-tuple, coordinate)``, coordinate fastest.  Entries
    are not reduced.  ``rows`` optionally restricts to a subset of row
    indices (returned in that order).
    """
    order = table.shape[0]
    r = mats.shape[1]
    base = order - 1
    ncols = base ** n * r
    if rows is None:
        nrows_all = base ** (n + 1) * r
        rows = np.arange(nrows_all, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    R = len(rows)
    if R == 0 or ncols == 0:
        return sp.csr_matrix((R, ncols), dtype=np.int64)
    tidx, coord = np.divmod(rows, r)
    # decode normalized (n+1)-tuples
    T = np.empty((R, n + 1), dtype=np.int64)
    x = tidx.copy()
    for k in range(n, -1, -1):
        x, d = np.divmod(x, base)
        T[:, k] = d + 1
    out_r, out_c, out_v = [], [], []
    local = np.arange(R, dtype=np.int64)
    # g1 . f(g2, ..., g_{n+1})
    tail = _norm_index(T[:, 1:], order) if n else np.zeros(R, dtype=np.int64)
    A = mats[T[:, 0], coord, :]                       # (R, r): row `coord` of A(g1)
    for j in range(r):
        nz = A[:, j] != 0
        out_r.append(local[nz])
        out_c.append(tail[nz] * r + j)
        out_v.append(A[nz, j])
    # alternating face terms
    for k in range(1, n + 1):
        s = table[T[:, k - 1], T[:, k]]
        keep = s != 0
        merged = np.concatenate([T[:, :k - 1], s[:, None], T[:, k + 1:]], axis=1)[keep]
        out_r.append(local[keep])
        out_c.append(_norm_index(merged, order) * r + coord[keep])
        out_v.append(np.full(int(keep.sum()), (-1) ** k, dtype=np.int64))
    head = _norm_index(T[:, :n], order) if n else np.zeros(R, dtype=np.int64)
    out_r.append(local)
    out_c.append(head * r + coord)
    out_v.append(np.full(R, (-1) ** (n + 1), dtype=np.int64))
    M = sp.coo_matrix((np.concatenate(out_v), (np.concatenate(out_r), np.concatenate(out_c))),
                      shape=(R, ncols), dtype=np.int64)
    return M.tocsr()


def apply_differential(mats: np.ndarray, table: np.ndarray, moduli: np.ndarray,
                       f: np.ndarray, n: int) -> np.ndarray:
    """``d f`` for a full cochain (or a batch with a leading axis)."""
    order = table.shape[0]
    r = mats.shape[1]
    batch = f.ndim == 3
    F = f if batch else f[None]
    B = F.shape[0]
    F = F.reshape((B,) + (order,) * n + (r,))
    out = np.einsum("gij,b...j->bg...i", mats, F)
    for k in range(1, n + 1):
        # f(g1, ..., g_k g_{k+1}, ..., g_{n+1}): axis k-1 of F becomes the pair (k-1, k)
        term = np.take(F, table, axis=k)
        out = out + (-1) ** k * term
    last = np.broadcast_to(F[..., None, :], (B,) + (order,) * (n + 1) + (r,))
    out = out + (-1) ** (n + 1) * last
    out = out.reshape(B, order ** (n + 1), r)
    if r:
        out = np.mod(out, moduli)
    return out if batch else out[0]


def is_normalized(f: np.ndarray, order: int, n: int) -> bool:
    if n == 0:
        return True
    T = tuples(order, n)
    return not np.any(f[np.any(T == 0, axis=1)])


def restrict_cochain(f: np.ndarray, order: int, n: int, embed) -> np.ndarray:
    """Pull back along a subgroup embedding ``H -> G`` (``embed[k]`` = image of ``k``)."""
    emb = np.asarray(embed, dtype=np.int64)
    T = tuples(len(emb), n)
    return f[_full_index(emb[T], order)] if n else f.copy()


def inflate_cochain(f: np.ndarray, q_order: int, n: int, proj, g_order: int) -> np.ndarray:
    """Pull back along a surjection ``G -> Q`` given as an index array."""
    pr = np.asarray(proj, dtype=np.int64)
    T = tuples(g_order, n)
    return f[_full_index(pr[T], q_order)] if n else f.copy()
