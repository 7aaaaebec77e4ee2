"""Smith normal form over Z/p^e.

Z/p^e is a local principal ideal ring, so elimination with a pivot of minimal
p-adic valuation diagonalizes any matrix with diagonal entries p^v.  Entries
are int64 in ``[0, q)``; ``q <= 2**20`` keeps every product inside int64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_MODULUS = 1 << 20


@njit(cache=True, inline='always')
def _red(x, q, mask):
    if mask:
        return x & (q - 1)
    return x % q


@njit(cache=True)
def _snf_kernel(A, vt, uinv, pw, e, q, track_l, track_r, U, Ui, V, Vi, vals, mask):
    m, n = A.shape
    k = 0
    lim = min(m, n)
    while k < lim:
        best = e
        bi = -1
        bj = -1
        for i in range(k, m):
            for j in range(k, n):
                x = A[i, j]
                if x != 0 and vt[x] < best:
                    best = vt[x]
                    bi = i
                    bj = j
                    if best == 0:
                        break
            if best == 0:
                break
        if bi < 0:
            break
        if bi != k:
            for j in range(n):
                t = A[bi, j]
                A[bi, j] = A[k, j]
                A[k, j] = t
            if track_l:
                for j in range(m):
                    t = U[bi, j]
                    U[bi, j] = U[k, j]
                    U[k, j] = t
                    t = Ui[j, bi]
                    Ui[j, bi] = Ui[j, k]
                    Ui[j, k] = t
        if bj != k:
            for i in range(m):
                t = A[i, bj]
                A[i, bj] = A[i, k]
                A[i, k] = t
            if track_r:
                for i in range(n):
                    t = V[i, bj]
                    V[i, bj] = V[i, k]
                    V[i, k] = t
                    t = Vi[bj, i]
                    Vi[bj, i] = Vi[k, i]
                    Vi[k, i] = t
        pv = pw[best]
        u = A[k, k] // pv
        ui = uinv[u]
        for j in range(k, n):
            A[k, j] = _red(A[k, j] * ui, q, mask)
        if track_l:
            for j in range(m):
                U[k, j] = _red(U[k, j] * ui, q, mask)
                Ui[j, k] = _red(Ui[j, k] * u, q, mask)
        for i in range(k + 1, m):
            x = A[i, k]
            if x != 0:
                c = x // pv
                for j in range(k, n):
                    A[i, j] = _red(A[i, j] - c * A[k, j], q, mask)
                if track_l:
                    for t in range(m):
                        U[i, t] = _red(U[i, t] - c * U[k, t], q, mask)
                        Ui[t, k] = _red(Ui[t, k] + c * Ui[t, i], q, mask)
        for j in range(k + 1, n):
            x = A[k, j]
            if x != 0:
                d = x // pv
                A[k, j] = 0
                if track_r:
                    for t in range(n):
                        V[t, j] = _red(V[t, j] - d * V[t, k], q, mask)
                        Vi[k, t] = _red(Vi[k, t] + d * Vi[j, t], q, mask)
        vals[k] = best
        k += 1
    return k


_TABLES: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def tables(p: int, e: int):
    """Valuation table, unit inverse table and powers of ``p`` for Z/p^e."""
    key = (p, e)
    if key not in _TABLES:
        q = p ** e
        if q > MAX_MODULUS:
            raise OverflowError(f"modulus {q} exceeds the local-ring limit {MAX_MODULUS}")
        x = np.arange(q, dtype=np.int64)
        vt = np.zeros(q, dtype=np.int64)
        vt[0] = e
        for k in range(1, e):
            vt[(x % p ** k == 0) & (x != 0)] = k
        uinv = np.zeros(q, dtype=np.int64)
        units = x[x % p != 0]
        for u in units.tolist():
            uinv[u] = pow(u, -1, q)
        pw = np.array([p ** k for k in range(e + 1)], dtype=np.int64)
        _TABLES[key] = (vt, uinv, pw)
    return _TABLES[key]


@dataclass
class LocalSNF:
    """``U A V = diag(p^vals)`` over Z/p^e (``vals`` has length ``rank``)."""

    p: int
    e: int
    vals: np.ndarray
    U: np.ndarray | None
    Ui: np.ndarray | None
    V: np.ndarray | None
    Vi: np.ndarray | None

    @property
    def rank(self) -> int:
        return len(self.vals)


def local_snf(A, p: int, e: int, left: bool = False, right: bool = False) -> LocalSNF:
    q = p ** e
    vt, uinv, pw = tables(p, e)
    A = np.mod(np.asarray(A, dtype=np.int64), q)
    A = np.ascontiguousarray(A)
    m, n = A.shape
    dummy = np.zeros((1, 1), dtype=np.int64)
    U = np.eye(m, dtype=np.int64) if left else dummy
    Ui = np.eye(m, dtype=np.int64) if left else dummy
    V = np.eye(n, dtype=np.int64) if right else dummy
    Vi = np.eye(n, dtype=np.int64) if right else dummy
    vals = np.zeros(min(m, n), dtype=np.int64)
    r = _snf_kernel(A, vt, uinv, pw, e, q, left, right, U, Ui, V, Vi, vals, p == 2)
    return LocalSNF(p, e, vals[:r].copy(), U if left else None, Ui if left else None,
                    V if right else None, Vi if right else None)


def valuation(x: int, p: int, e: int) -> int:
    x %= p ** e
    if x == 0:
        return e
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@njit(cache=True)
def _rref_fp_kernel(A, p, inv, piv):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        s = -1
        for i in range(r, m):
            if A[i, c] != 0:
                s = i
                break
        if s < 0:
            continue
        if s != r:
            for j in range(c, n):
                t = A[s, j]
                A[s, j] = A[r, j]
                A[r, j] = t
        f = inv[A[r, c]]
        if f != 1:
            for j in range(c, n):
                A[r, j] = A[r, j] * f % p
        for i in range(m):
            if i != r:
                x = A[i, c]
                if x != 0:
                    y = p - x
                    for j in range(c, n):
                        A[i, j] = (A[i, j] + y * A[r, j]) % p
        piv[r] = c
        r += 1
    return r


@njit(cache=True)
def _rref_f2_kernel(B, n, piv):
    m, W = B.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        w = c >> 6
        bit = np.uint64(1) << np.uint64(c & 63)
        s = -1
        for i in range(r, m):
            if B[i, w] & bit:
                s = i
                break
        if s < 0:
            continue
        if s != r:
            for k in range(w, W):
                t = B[s, k]
                B[s, k] = B[r, k]
                B[r, k] = t
        for i in range(m):
            if i != r and (B[i, w] & bit):
                for k in range(w, W):
                    B[i, k] ^= B[r, k]
        piv[r] = c
        r += 1
    return r


def _pack_bits(A: np.ndarray) -> np.ndarray:
    m, n = A.shape
    W = max(1, (n + 63) // 64)
    padded = np.zeros((m, W * 64), dtype=np.uint8)
    padded[:, :n] = A & 1
    # little-endian bit order inside each 64-bit word
    by = np.packbits(padded.reshape(m, W * 8, 8)[:, :, ::-1], axis=2).reshape(m, W * 8)
    return np.ascontiguousarray(by).view("<u8").reshape(m, W).astype(np.uint64)


def _unpack_bits(B: np.ndarray, n: int) -> np.ndarray:
    m, W = B.shape
    by = np.ascontiguousarray(B.astype("<u8")).view(np.uint8).reshape(m, W * 8, 1)
    bits = np.unpackbits(by, axis=2)[:, :, ::-1].reshape(m, W * 64)
    return bits[:, :n].astype(np.int64)


def rref(A, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over F_p: ``(R, pivots)`` with ``R`` the nonzero rows."""
    A = np.mod(np.asarray(A, dtype=np.int64), p)
    m, n = A.shape
    piv = np.zeros(min(m, n), dtype=np.int64)
    if m == 0 or n == 0:
        return np.zeros((0, n), dtype=np.int64), piv[:0]
    if p == 2:
        B = _pack_bits(A)
        r = _rref_f2_kernel(B, n, piv)
        return _unpack_bits(B[:r], n), piv[:r].copy()
    inv = np.zeros(p, dtype=np.int64)
    for u in range(1, p):
        inv[u] = pow(u, -1, p)
    A = np.ascontiguousarray(A)
    r = _rref_fp_kernel(A, p, inv, piv)
    return A[:r].copy(), piv[:r].copy()
