"""Finite abelian groups of small order and their automorphisms, enumerated exhaustively."""

from __future__ import annotations

from itertools import product as cartesian

import numpy as np
from sympy import factorint

from .abelian import FinAbGroup


def abelian_groups(order: int) -> list[FinAbGroup]:
    """All abelian groups of the given order, in invariant-factor form."""
    if order == 1:
        return [FinAbGroup()]
    per_prime = []
    for p, k in factorint(order).items():
        per_prime.append([(p, part) for part in _partitions(k)])
    out = []
    for combo in cartesian(*per_prime):
        orders = [p ** x for p, part in combo for x in part]
        out.append(FinAbGroup.from_orders(orders))
    return sorted(out, key=lambda G: G.invariant_factors)


def _partitions(k: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, largest), 0, -1):
        out.extend((first,) + rest for rest in _partitions(k - first, first))
    return out


def endomorphisms(A: FinAbGroup) -> np.ndarray:
    """All endomorphism matrices, shape ``(count, r, r)``."""
    d = A.invariant_factors
    r = A.rank
    choices = []
    for i in range(r):
        for j in range(r):
            step = d[i] // np.gcd(d[i], d[j])
            choices.append(np.arange(0, d[i], step))
    if r == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    grids = np.meshgrid(*choices, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1).reshape(-1, r, r).astype(np.int64)


def automorphisms(A: FinAbGroup) -> np.ndarray:
    E = endomorphisms(A)
    if A.rank == 0:
        return E
    d = np.asarray(A.invariant_factors, dtype=np.int64)
    X = np.array(list(A.elements()), dtype=np.int64).T            # (r, |A|)
    img = np.mod(E @ X, d[None, :, None])
    zero_cols = np.all(img == 0, axis=1).sum(axis=1)
    return E[zero_cols == 1]


_AUT: dict = {}


def _aut_cached(A: FinAbGroup) -> np.ndarray:
    if A not in _AUT:
        _AUT[A] = automorphisms(A)
    return _AUT[A]


def _keys(mats: np.ndarray) -> list[bytes]:
    return [m.tobytes() for m in np.ascontiguousarray(mats)]


def _power(X: np.ndarray, k: int, d: np.ndarray) -> np.ndarray:
    r = X.shape[-1]
    out = np.broadcast_to(np.eye(r, dtype=np.int64), X.shape).copy()
    for _ in range(k):
        out = np.mod(out @ X, d)
    return out


def periodic_automorphisms(A: FinAbGroup, period: int, dedup: bool = True) -> list[np.ndarray]:
    """Automorphisms with ``s^period = 1``, one per conjugacy class under ``Aut(A)`` if ``dedup``."""
    r = A.rank
    Aut = _aut_cached(A)
    if r == 0:
        return [Aut[0]]
    d = np.asarray(A.invariant_factors, dtype=np.int64)[None, :, None]
    I = np.eye(r, dtype=np.int64)
    inv = Aut[np.all(_power(Aut, period, d) == I, axis=(1, 2))]
    if not dedup:
        return list(inv)
    # inverse of t is t^(k-1) where k is its order
    isI = np.all(Aut == I, axis=(1, 2))
    Ainv = np.where(isI[:, None, None], I, 0)
    P, done = Aut.copy(), isI.copy()
    while not done.all():
        Q = np.mod(P @ Aut, d)
        new = ~done & np.all(Q == I, axis=(1, 2))
        Ainv[new] = P[new]
        done |= new
        P = Q
    seen: set[bytes] = set()
    reps = []
    for s in inv:
        k = s.tobytes()
        if k in seen:
            continue
        reps.append(s)
        seen.update(_keys(np.mod(Aut @ s @ Ainv, d)))
    return reps


def involutions(A: FinAbGroup, dedup: bool = True) -> list[np.ndarray]:
    return periodic_automorphisms(A, 2, dedup)


# ---------------------------------------------------------------------------
# Modules over F_l[G] of small dimension, up to isomorphism
# ---------------------------------------------------------------------------

GL_ENUM_LIMIT = 70000


def _poly_mod(a: tuple[int, ...], b: tuple[int, ...], l: int) -> tuple[int, ...]:
    """Remainder of ``a`` by monic ``b``; coefficients low to high."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        c = a[-1] % l
        if c:
            s = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[s + i] = (a[s + i] - c * bi) % l
        a.pop()
    while a and a[-1] % l == 0:
        a.pop()
    return tuple(x % l for x in a)


def _monic_polys(deg: int, l: int):
    for low in cartesian(range(l), repeat=deg):
        yield tuple(low) + (1,)


def _companion(f: tuple[int, ...], l: int) -> np.ndarray:
    k = len(f) - 1
    C = np.zeros((k, k), dtype=np.int64)
    C[1:, :-1] = np.eye(k - 1, dtype=np.int64)
    C[:, -1] = [(-c) % l for c in f[:-1]]
    return C


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for b in blocks:
        m = b.shape[0]
        out[k:k + m, k:k + m] = b
        k += m
    return out


def rational_canonical_forms(l: int, d: int, period: int) -> list[np.ndarray]:
    """One matrix per conjugacy class in ``GL_d(F_l)`` with ``s^period = 1``.

    Classes correspond to chains ``f_1 | f_2 | ... | f_k`` of nonconstant
    monic polynomials with degrees summing to ``d``; ``s^period = 1`` iff
    ``f_k`` divides ``x^period - 1``.
    """
    target = (l - 1,) + (0,) * (period - 1) + (1,)
    divisors = [f for k in range(1, d + 1) for f in _monic_polys(k, l)
                if _poly_mod(target, f, l) == ()]

    def chains(top, remaining):
        # chains f_1 | ... | f_j = top of nonconstant polys with total degree remaining
        if remaining == len(top) - 1:
            yield [top]
            return
        for f in divisors:
            if len(f) - 1 <= remaining - (len(top) - 1) and _poly_mod(top, f, l) == ():
                for rest in chains(f, remaining - (len(top) - 1)):
                    yield rest + [top]

    out = []
    if d == 0:
        return [np.zeros((0, 0), dtype=np.int64)]
    for top in divisors:
        for ch in chains(top, d):
            out.append(_block_diag([_companion(f, l) for f in ch]))
    return out


_GL: dict = {}


def general_linear(l: int, d: int) -> np.ndarray | None:
    """All of ``GL_d(F_l)`` when it has at most ``GL_ENUM_LIMIT`` elements, else ``None``."""
    if (l, d) in _GL:
        return _GL[(l, d)]
    size = 1
    for i in range(d):
        size *= l ** d - l ** i
    if size > GL_ENUM_LIMIT:
        return None
    allm = np.array(list(cartesian(range(l), repeat=d * d)), dtype=np.int64).reshape(-1, d, d)
    det = np.rint(np.linalg.det(allm.astype(float))).astype(np.int64) % l
    _GL[(l, d)] = allm[det != 0]
    return _GL[(l, d)]


def _element_words(G) -> list[list[int]]:
    """For each element a word in the generator positions (breadth-first)."""
    gens = list(G.generators.values())
    words = {0: []}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for k, g in enumerate(gens):
                t = G.mul(h, g)
                if t not in words:
                    words[t] = words[h] + [k]
                    nxt.append(t)
        frontier = nxt
    return [words[g] for g in range(G.order)]


def _homs_to_gl(G, GL: np.ndarray, l: int) -> list[tuple[np.ndarray, ...]]:
    """All homomorphisms, as tuples of generator images, batched over the last generator."""
    gens = list(G.generators.values())
    d = GL.shape[1]
    words = _element_words(G)
    per_gen = []
    for g in gens:
        k = G.element_order(g)
        per_gen.append(GL[np.all(_power(GL, k, l) == np.eye(d, dtype=np.int64), axis=(1, 2))])
    out = []
    head_choices = cartesian(*(range(len(c)) for c in per_gen[:-1]))
    for head in head_choices:
        imgs = [np.broadcast_to(per_gen[i][j], (len(per_gen[-1]), d, d)) for i, j in enumerate(head)]
        imgs.append(per_gen[-1])
        mats = []
        for w in words:
            X = np.broadcast_to(np.eye(d, dtype=np.int64), imgs[-1].shape).copy()
            for k in w:
                X = np.mod(X @ imgs[k], l)
            mats.append(X)
        ok = np.ones(len(per_gen[-1]), dtype=bool)
        for h in range(G.order):
            for k, g in enumerate(gens):
                ok &= np.all(np.mod(mats[h] @ imgs[k], l) == mats[G.mul(h, g)], axis=(1, 2))
        for b in np.flatnonzero(ok):
            out.append(tuple(np.ascontiguousarray(im[b]) for im in imgs))
    return out


SOLUTION_ENUM_LIMIT = 200000


def _nullspace(A: np.ndarray, l: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` over ``F_l``, one vector per row."""
    from ._localring import rref

    n = A.shape[1]
    if len(A) == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(np.mod(A, l), l)
    piv = [int(j) for j in piv]
    out = []
    for f in (j for j in range(n) if j not in piv):
        x = np.zeros(n, dtype=np.int64)
        x[f] = 1
        if piv:
            x[piv] = np.mod(-R[:len(piv), f], l)
        out.append(x)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def _intertwiners(A: np.ndarray, B: np.ndarray, l: int) -> np.ndarray | None:
    """Every invertible ``X`` with ``X A = B X``, or ``None`` if there are too many to list."""
    d = A.shape[0]
    I = np.eye(d, dtype=np.int64)
    # row-major vec: vec(X A) = (I kron A^T) vec X, vec(B X) = (B kron I) vec X
    basis = _nullspace(np.kron(I, A.T) - np.kron(B, I), l)
    k = len(basis)
    if l ** k > SOLUTION_ENUM_LIMIT:
        return None
    coeffs = np.array(list(cartesian(range(l), repeat=k)), dtype=np.int64).reshape(-1, k)
    X = np.mod(coeffs @ basis, l).reshape(-1, d, d)
    det = np.rint(np.linalg.det(X.astype(float))).astype(np.int64) % l
    return X[det != 0]


def _metacyclic_presentation(G):
    """``(a, b, k, n, j)`` with ``<a>`` normal, ``G = <a, b>``, ``b a b^-1 = a^k``, ``b^n = a^j``.

    ``n`` is the order of ``b`` modulo ``<a>``.  Prefers the largest ``<a>``.
    """
    for a in sorted(range(G.order), key=lambda g: -G.element_order(g)):
        A = G.generated_subgroup([a])
        if not G.is_normal(A):
            continue
        pw = {}
        x = 0
        for i in range(len(A)):
            pw[x] = i
            x = G.mul(x, a)
        for b in range(G.order):
            if len(G.generated_subgroup([a, b])) != G.order:
                continue
            k = pw[G.mul(G.mul(b, a), G.inv(b))]
            n, y = 1, b
            while y not in pw:
                y, n = G.mul(y, b), n + 1
            return a, b, k, n, pw[y]
    return None


def _metacyclic_modules(G, l: int, d: int) -> list | None:
    """Modules of a group with a normal cyclic subgroup and cyclic quotient.

    The image ``A`` of ``a`` runs over conjugacy-class representatives; the
    image ``X`` of ``b`` solves the linear condition ``X A = A^k X`` together
    with ``X^n = A^j``, and is taken up to conjugation by the centralizer of
    ``A``.  Those relations present ``G``, so the list is complete.
    """
    from .reptheory import ModularModule

    pres = _metacyclic_presentation(G)
    if pres is None:
        return None
    a, b, k, n, j = pres
    I = np.eye(d, dtype=np.int64)
    out = []
    for A in rational_canonical_forms(l, d, G.element_order(a)):
        Aj = _power(A[None], j, l)[0] if j else I
        if d and np.array_equal(A, A[0, 0] * I):
            # scalar A: the centralizer is everything, so X runs over conjugacy classes
            if not np.array_equal(_power(A[None], k, l)[0], A):
                continue
            reps = [X for X in rational_canonical_forms(l, d, n * G.element_order(a))
                    if np.array_equal(_power(X[None], n, l)[0], Aj)]
        else:
            X = _intertwiners(A, _power(A[None], k, l)[0], l)
            C = _intertwiners(A, A, l)
            if X is None or C is None:
                return None
            X = X[np.all(_power(X, n, l) == Aj, axis=(1, 2))]
            Cinv = np.stack([_inverse_mod(P, l) for P in C])
            seen: set[bytes] = set()
            reps = []
            for Y in X:
                if Y.tobytes() in seen:
                    continue
                reps.append(Y)
                seen.update(o.tobytes() for o in np.mod(C @ Y @ Cinv, l))
        out.extend(ModularModule.from_generators(G, l, {a: A, b: Y}) if a != b else
                   ModularModule.from_generators(G, l, {a: A}) for Y in reps)
    return out


def modular_modules(G, l: int, d: int) -> list | None:
    """Every ``F_l[G]``-module of dimension ``d``, one per isomorphism class.

    Cyclic groups go through rational canonical forms; other groups through
    an exhaustive search of ``GL_d(F_l)`` when it is small enough to list,
    and otherwise through a normal cyclic subgroup with cyclic quotient.
    ``None`` when neither applies.
    """
    from .reptheory import ModularModule

    gens = list(G.generators.values())
    if not gens:
        return [ModularModule.trivial(G, l, d)]
    if G.is_cyclic() and len(gens) == 1:
        return [ModularModule.from_generators(G, l, {gens[0]: s})
                for s in rational_canonical_forms(l, d, G.order)]
    if d == 0:
        return [ModularModule.trivial(G, l, 0)]
    GL = general_linear(l, d)
    if GL is None:
        return _metacyclic_modules(G, l, d)
    homs = _homs_to_gl(G, GL, l)
    GLinv = np.stack([_inverse_mod(P, l) for P in GL])
    seen: set[bytes] = set()
    out = []
    for imgs in homs:
        key = b"".join(m.tobytes() for m in imgs)
        if key in seen:
            continue
        orbit = [np.mod(GL @ m @ GLinv, l) for m in imgs]
        seen.update(b"".join(np.ascontiguousarray(o[k]).tobytes() for o in orbit)
                    for k in range(len(GL)))
        out.append(ModularModule.from_generators(G, l, dict(zip(gens, imgs))))
    return out


def _inverse_mod(P: np.ndarray, l: int) -> np.ndarray:
    adj = np.rint(np.linalg.inv(P.astype(float)) * np.linalg.det(P.astype(float))).astype(np.int64)
    det = int(np.rint(np.linalg.det(P.astype(float))))
    return np.mod(adj * pow(det % l, -1, l), l)
