"""Group cohomology of finite modules from the inhomogeneous bar complex.

Two independent routes compute ``H^n(G, M)``:

* :func:`cohomology` works on normalized cochains, splits ``M`` into its
  primary parts and does the linear algebra over ``Z/p^e`` (compiled with
  numba).  Rows of large differentials are sampled and the resulting kernel
  is checked against the full differential, so the answer is exact.
* :func:`cohomology_full` builds the whole complex ``Map(G^n, M)`` as
  :class:`~galcoh.abelian.AbHom` objects and reads off kernel and image with
  the pure-Python Smith normal form.  It is slow and serves as an oracle.

Classes are manipulated through representatives: every result carries one
normalized cocycle per generator and a ``class_of`` map back to coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp
from sympy import factorint

from . import cochains as cc
from ._localring import MAX_MODULUS, local_snf, rref
from .abelian import (
    AbHom,
    FinAbGroup,
    hom_kernel,
    hom_preimage,
    normalize_orders,
    quotient_with_lifts,
)
from .gmodule import (
    FiniteGroup,
    GModule,
    augmentation_submodule,
    evaluation_map,
    fixed_module,
    fixed_points,
    hom_matrix,
    induce,
    is_equivariant,
    norm_map,
    restrict_module,
    trace_map,
)

DEFAULT_BUDGET = 4096
ROW_MARGIN = 64


class BudgetExceeded(RuntimeError):
    """Raised when a requested computation is larger than the configured budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class UnsupportedDegree(ValueError):
    pass


class MissingRepresentative(ValueError):
    pass


class NotExact(ValueError):
    pass


def check_budget(M: GModule, n: int, budget: int | None):
    budget = DEFAULT_BUDGET if budget is None else budget
    size = M.group.order ** n * M.rank
    if size > budget:
        raise BudgetExceeded(f"cochains C^{n} ({M.group.order}^{n} x {M.rank} columns)", size, budget)


# ---------------------------------------------------------------------------
# Results and classes
# ---------------------------------------------------------------------------


@dataclass
class CohomologyResult:
    """``H^n`` in invariant-factor form.

    ``representatives[j]`` is a cochain (shape ``(|G|**n, r)``, or ``(1, r)``
    for Tate degrees ``0`` and ``-1``) representing the ``j``-th generator.
    """

    degree: int
    group: FinAbGroup
    module: GModule | None = None
    representatives: list[np.ndarray] | None = None
    tate: bool = False
    _classify: Callable[[np.ndarray], tuple[int, ...]] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    def class_of(self, cocycle: np.ndarray) -> tuple[int, ...]:
        if self._classify is None:
            raise MissingRepresentative("this result carries no class map")
        return self._classify(np.asarray(cocycle, dtype=np.int64))

    def cocycle(self, x: Sequence[int]) -> np.ndarray:
        """A cocycle in the class with coordinates ``x``."""
        if self.representatives is None:
            raise MissingRepresentative("this result carries no representatives")
        M = self.module
        shape = self.representatives[0].shape if self.representatives else self._zero_shape()
        out = np.zeros(shape, dtype=np.int64)
        for c, rep in zip(self.group.reduce(x), self.representatives):
            out += c * rep
        return np.mod(out, M.moduli) if M.rank else out

    def _zero_shape(self):
        M = self.module
        if self.tate and self.degree <= 0:
            return (1, M.rank)
        return (M.group.order ** self.degree, M.rank)

    def element(self, x: Sequence[int]) -> "CohomologyClass":
        return CohomologyClass(self, self.group.reduce(x))

    def generator(self, j: int) -> "CohomologyClass":
        return self.element([int(i == j) for i in range(self.group.rank)])

    def zero(self) -> "CohomologyClass":
        return self.element(self.group.zero())


@dataclass(frozen=True)
class CohomologyClass:
    result: CohomologyResult
    coords: tuple[int, ...]

    def cocycle(self) -> np.ndarray:
        return self.result.cocycle(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self.result.element([a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, c: int) -> "CohomologyClass":
        return self.result.element([c * a for a in self.coords])

    def order(self) -> int:
        return self.result.group.element_order(self.coords)


# ---------------------------------------------------------------------------
# Primary-part engine
# ---------------------------------------------------------------------------


def _prime_split(carrier: FinAbGroup):
    """Per prime ``p``: (positions, exponents, CRT idempotents) of the p-parts of the factors."""
    primes = sorted({p for d in carrier.invariant_factors for p in factorint(d)})
    out = {}
    for p in primes:
        pos, exps, idem = [], [], []
        for i, d in enumerate(carrier.invariant_factors):
            a = factorint(d).get(p, 0)
            if a:
                q = p ** a
                rest = d // q
                pos.append(i)
                exps.append(a)
                idem.append(rest * pow(rest, -1, q) % d if rest > 1 else 1)
        out[p] = (np.array(pos), np.array(exps), np.array(idem, dtype=object))
    return out


def _mulmod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[1] * (q - 1) ** 2 < 2 ** 52:
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.mod(np.rint(C).astype(np.int64), q)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, (2 ** 62) // ((q - 1) ** 2 + 1))
    for k in range(0, A.shape[1], step):
        out = np.mod(out + np.mod(A[:, k:k + step] @ B[k:k + step], q), q)
    return out


class _PrimeDegree:
    """``H^n`` of a p-primary module on normalized cochains.

    Cochain coordinates are ``(tuple, i)`` with value in ``Z/p^{a_i}``; they
    are handled inside ``Z/p^e`` (``e = max a_i``), the cocycle condition for
    coordinate ``i`` being scaled by ``p^{e - a_i}``.
    """

    def __init__(self, mats: np.ndarray, a: np.ndarray, p: int, table: np.ndarray, n: int,
                 seed: int = 0):
        self.p, self.n = p, n
        self.a = a
        self.e = e = int(a.max())
        self.q = q = p ** e
        if q > MAX_MODULUS:
            raise BudgetExceeded(f"local modulus {p}^{e}", q, MAX_MODULUS)
        self.r = r = len(a)
        order = table.shape[0]
        self.ncols = ncols = (order - 1) ** n * r
        self.col_mod = np.tile(p ** a, ncols // r) if r else np.zeros(0, dtype=np.int64)
        rng = np.random.default_rng(seed)
        nrows = (order - 1) ** (n + 1) * r
        row_scale = np.tile(p ** (e - a), nrows // r) if r else np.zeros(0, dtype=np.int64)
        row_mod = np.tile(p ** a, nrows // r) if r else np.zeros(0, dtype=np.int64)
        full = cc.normalized_differential(mats, table, n)

        # kernel of d_n from a row sample, grown until it is the true kernel
        if nrows <= ncols + ROW_MARGIN:
            rows = np.arange(nrows)
        else:
            rows = np.sort(rng.choice(nrows, min(nrows, ncols + ncols // 2 + ROW_MARGIN), replace=False))
        while True:
            sub = full[rows].toarray() if len(rows) else np.zeros((0, ncols), dtype=np.int64)
            sub = np.mod(sub * row_scale[rows][:, None], q)
            K = self._kernel(sub)
            if len(rows) == nrows or K.shape[1] == 0:
                break
            img = np.mod(_sparse_mulmod(full, K, q), row_mod[:, None])
            bad = np.flatnonzero(img.any(axis=1))
            if len(bad) == 0:
                break
            extra = rng.choice(bad, min(len(bad), ncols + ROW_MARGIN), replace=False)
            rows = np.union1d(rows, extra)

        # coboundaries (plus the relations p^{a_i} = 0 when a_i < e)
        if n == 0 or ncols == 0:
            B = np.zeros((ncols, 0), dtype=np.int64)
        else:
            B = np.mod(cc.normalized_differential(mats, table, n - 1).toarray().astype(np.int64), q)
        self._quotient(B)

    # -- fields ----------------------------------------------------------------

    def _kernel(self, sub: np.ndarray) -> np.ndarray:
        p, e, ncols = self.p, self.e, self.ncols
        if e == 1:
            R, piv = rref(sub, p)
            free = np.setdiff1d(np.arange(ncols), piv)
            K = np.zeros((ncols, len(free)), dtype=np.int64)
            K[free, np.arange(len(free))] = 1
            if len(piv):
                K[piv] = np.mod(-R[:, free], p)
            self._piv, self._free, self._R = piv, free, R
            return K
        s = local_snf(sub, p, e, right=True)
        c = np.zeros(ncols, dtype=np.int64)
        c[:s.rank] = e - s.vals
        keep = np.flatnonzero(c < e)
        self._V, self._Vi, self._c, self._J = s.V, s.Vi, c, keep
        pw = np.array([p ** int(x) for x in c[keep]], dtype=np.int64)
        return np.mod(s.V[:, keep] * pw[None, :], self.q)

    def _quotient(self, B: np.ndarray):
        p, e, q = self.p, self.e, self.q
        if e == 1:
            free = self._free
            k = len(free)
            R2, piv2 = rref(B[free].T, p) if B.shape[1] else (np.zeros((0, k), dtype=np.int64),
                                                              np.zeros(0, dtype=np.int64))
            self._R2, self._piv2 = R2, piv2
            self._F2 = np.setdiff1d(np.arange(k), piv2)
            self.orders = [p] * len(self._F2)
            return
        # express coboundaries and relations in the kernel basis V diag(p^c)
        rel_idx = np.flatnonzero(self.col_mod < q)
        rel = np.zeros((self.ncols, len(rel_idx)), dtype=np.int64)
        rel[rel_idx, np.arange(len(rel_idx))] = self.col_mod[rel_idx]
        gens = np.concatenate([B, rel], axis=1)
        W = _mulmod(self._Vi, gens, q)
        J, c = self._J, self._c
        pc = np.array([p ** int(x) for x in c[J]], dtype=np.int64)
        WJ = W[J]
        if np.any(np.mod(WJ, pc[:, None])):
            raise AssertionError("coboundary outside the computed cocycle module")
        T = WJ // pc[:, None]
        k = len(J)
        M2 = np.concatenate([T, np.diag(q // pc)], axis=1) if k else np.zeros((0, 0), dtype=np.int64)
        s = local_snf(M2, p, e, left=True)
        svals = np.full(k, e, dtype=np.int64)
        svals[:s.rank] = s.vals
        self._keep = np.flatnonzero(svals > 0)
        self._U2, self._U2i, self._pc = s.U, s.Ui, pc
        self.orders = [p ** int(v) for v in svals[self._keep]]
        self._ord = np.array(self.orders, dtype=np.int64)

    # -- classes -----------------------------------------------------------------

    def coords(self, Y: np.ndarray) -> np.ndarray:
        """Class coordinates of normalized cocycles (columns of ``Y``)."""
        p, q = self.p, self.q
        if self.e == 1:
            t = np.mod(Y[self._free], p)
            if len(self._piv2):
                t = np.mod(t - self._R2.T @ t[self._piv2], p)
            return t[self._F2]
        W = _mulmod(self._Vi, np.mod(Y, q), q)[self._J]
        t = W // self._pc[:, None]
        u = _mulmod(self._U2, t, q)[self._keep]
        return np.mod(u, self._ord[:, None])

    def rep(self, j: int) -> np.ndarray:
        if self.e == 1:
            k = len(self._free)
            t = np.zeros(k, dtype=np.int64)
            t[self._F2[j]] = 1
            y = np.zeros(self.ncols, dtype=np.int64)
            y[self._free] = t
            if len(self._piv):
                y[self._piv] = np.mod(-(self._R[:, self._free] @ t), self.p)
            return y
        t = self._U2i[:, self._keep[j]]
        w = np.mod(t * self._pc, self.q)
        y = _mulmod(self._V[:, self._J], w[:, None], self.q)[:, 0]
        return np.mod(y, self.col_mod)


def _sparse_mulmod(S: sp.csr_matrix, K: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros((S.shape[0], K.shape[1]), dtype=np.int64)
    step = 256
    for k in range(0, K.shape[1], step):
        out[:, k:k + step] = np.mod(S @ K[:, k:k + step], q)
    return out


def _module_cache(M: GModule) -> dict:
    cache = M.__dict__.get("_coh_cache")
    if cache is None:
        cache = {}
        M.__dict__["_coh_cache"] = cache
    return cache


def cohomology(M: GModule, n: int, budget: int | None = None, seed: int = 0) -> CohomologyResult:
    """``H^n(G, M)`` for ``n >= 0`` via normalized bar cochains."""
    if n < 0:
        raise UnsupportedDegree("ordinary cohomology needs n >= 0; use tate_cohomology")
    check_budget(M, n, budget)
    cache = _module_cache(M)
    if ("bar", n) in cache:
        return cache[("bar", n)]
    G = M.group
    N, r = G.order, M.rank
    pos_n = cc.normalized_positions(N, n)
    parts = []
    for p, (pos, a, idem) in _prime_split(M.carrier).items():
        mats = M.mats[:, pos][:, :, pos] % (p ** a)[None, :, None]
        parts.append((p, pos, a, idem, _PrimeDegree(mats, a, p, G.table, n, seed)))
    orders = [o for part in parts for o in part[4].orders]
    H, proj, lift = normalize_orders(orders)
    P = np.array(proj, dtype=object).reshape(H.rank, len(orders)) if H.rank else None

    def classify(f: np.ndarray) -> tuple[int, ...]:
        f = f.reshape(-1, r) if r else f
        if not cc.is_normalized(f, N, n):
            raise ValueError("class_of expects a normalized cocycle")
        rows = f[pos_n]
        coords = []
        for p, pos, a, idem, eng in parts:
            y = np.mod(rows[:, pos], p ** a).reshape(-1, 1)
            coords.extend(int(x) for x in eng.coords(y)[:, 0])
        if not H.rank:
            return ()
        return H.reduce([sum(int(P[i, k]) * coords[k] for k in range(len(coords)))
                         for i in range(H.rank)])

    # representatives of the normal-form generators
    base = []
    for p, pos, a, idem, eng in parts:
        for j in range(len(eng.orders)):
            y = eng.rep(j).reshape(-1, len(pos))
            f = np.zeros((N ** n, r), dtype=object)
            block = np.zeros((len(pos_n), r), dtype=object)
            block[:, pos] = y.astype(object) * idem[None, :]
            f[pos_n] = block
            base.append(f)
    reps = []
    for j in range(H.rank):
        f = np.zeros((N ** n, r), dtype=object)
        for k, b in enumerate(base):
            c = int(lift[k][j])
            if c:
                f = f + c * b
        reps.append(np.mod(f, M.moduli.astype(object)).astype(np.int64) if r else f.astype(np.int64))
    res = CohomologyResult(n, H, M, reps, False, classify)
    cache[("bar", n)] = res
    return res


# ---------------------------------------------------------------------------
# Full-complex oracle route
# ---------------------------------------------------------------------------


@dataclass
class CochainComplex:
    """``Map(G^n, M)`` for ``n = 0..max_degree+1`` with the bar differentials.

    Coordinates of ``C^n`` are factor-major: position ``i * |G|**n + t``
    holds coordinate ``i`` of the value at tuple ``t``, which keeps ``C^n``
    in invariant-factor form.
    """

    module: GModule
    max_degree: int
    groups: list[FinAbGroup]
    differentials: list[AbHom]

    @staticmethod
    def to_vector(f: np.ndarray) -> list[int]:
        return [int(x) for x in f.T.reshape(-1)]

    @staticmethod
    def from_vector(v: Sequence[int], r: int) -> np.ndarray:
        return np.asarray(v, dtype=np.int64).reshape(r, -1).T.copy()


def _dense_differential(M: GModule, n: int) -> np.ndarray:
    N, r = M.group.order, M.rank
    size = N ** n * r
    if size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(size, dtype=np.int64).reshape(size, r, N ** n).transpose(0, 2, 1)
    img = cc.apply_differential(M.mats, M.group.table, M.moduli, eye, n)
    # column k = image of the k-th factor-major basis vector
    return img.transpose(0, 2, 1).reshape(size, -1).T


def build_complex(M: GModule, max_degree: int, budget: int | None = None) -> CochainComplex:
    check_budget(M, max_degree, budget)
    N, r = M.group.order, M.rank
    groups = [FinAbGroup(*[d for d in M.carrier.invariant_factors for _ in range(N ** n)])
              for n in range(max_degree + 2)]
    mats = [_dense_differential(M, n) for n in range(max_degree + 1)]
    for n in range(max_degree):
        dd = mats[n + 1] @ mats[n]
        mod = np.repeat(M.moduli, N ** (n + 2)) if r else np.zeros(0, dtype=np.int64)
        if r and np.any(np.mod(dd, mod[:, None])):
            raise AssertionError(f"d_{n + 1} o d_{n} != 0")
    diffs = [AbHom(groups[n], groups[n + 1], mats[n].tolist(), check=False)
             for n in range(max_degree + 1)]
    return CochainComplex(M, max_degree, groups, diffs)


def cohomology_full(M: GModule, n: int, budget: int = 256) -> CohomologyResult:
    """``ker d_n / im d_{n-1}`` on the full cochain complex (slow, exact)."""
    cx = build_complex(M, n, budget)
    d = cx.differentials[n]
    K, inc = hom_kernel(d)
    gens = []
    if n > 0:
        prev = cx.differentials[n - 1]
        for j in range(prev.domain.rank):
            x = hom_preimage(inc, prev.matrix.column(j))
            if x is None:
                raise AssertionError("coboundary is not a cocycle")
            gens.append(x)
    H, proj, lifts = quotient_with_lifts(K, gens)
    r = M.rank
    reps = [CochainComplex.from_vector(inc(x), r) for x in lifts]

    def classify(f):
        x = hom_preimage(inc, CochainComplex.to_vector(np.asarray(f).reshape(-1, r)))
        if x is None:
            raise ValueError("not a cocycle")
        return proj(x)

    return CohomologyResult(n, H, M, reps, False, classify)


# ---------------------------------------------------------------------------
# Tate cohomology
# ---------------------------------------------------------------------------


def _quotient_result(M: GModule, degree: int, A: FinAbGroup, inc: AbHom,
                     sub_gens: list[Sequence[int]]) -> CohomologyResult:
    gens = []
    for y in sub_gens:
        x = hom_preimage(inc, y)
        if x is None:
            raise AssertionError("subgroup generator outside the ambient subgroup")
        gens.append(x)
    Q, proj, lifts = quotient_with_lifts(A, gens)
    reps = [np.asarray(inc(x), dtype=np.int64).reshape(1, M.rank) for x in lifts]

    def classify(m):
        x = hom_preimage(inc, [int(v) for v in np.asarray(m).reshape(-1)])
        if x is None:
            raise ValueError("element outside the numerator subgroup")
        return proj(x)

    return CohomologyResult(degree, Q, M, reps, True, classify)


def tate_cohomology(M: GModule, n: int, budget: int | None = None) -> CohomologyResult:
    """Tate cohomology: ``M^G/N M`` at 0, ``ker N / I_G M`` at -1, ordinary above.

    For cyclic ``G`` every degree is accepted and reduced into ``{0, 1}`` by
    two-periodicity.
    """
    G = M.group
    if n < -1:
        if not G.is_cyclic():
            raise UnsupportedDegree(f"Tate degree {n} needs a cyclic group")
        n = n % 2
    if n >= 1:
        res = cohomology(M, n, budget)
        return res
    cache = _module_cache(M)
    if ("tate", n) in cache:
        return cache[("tate", n)]
    Nm = norm_map(M)
    if n == 0:
        F, inc = fixed_points(M)
        res = _quotient_result(M, 0, F, inc, [Nm.matrix.column(j) for j in range(M.rank)])
    else:
        K, inc = hom_kernel(Nm)
        I, incI = augmentation_submodule(M)
        res = _quotient_result(M, -1, K, inc, [incI.matrix.column(j) for j in range(I.rank)])
    cache[("tate", n)] = res
    return res


def tate_closed_forms(M: GModule) -> tuple[FinAbGroup, FinAbGroup]:
    """``(M^G / N M, ker N / I_G M)`` computed from the module alone."""
    return tate_cohomology(M, 0).group, tate_cohomology(M, -1).group


# ---------------------------------------------------------------------------
# Maps on cohomology
# ---------------------------------------------------------------------------


def _apply_pointwise(f: np.ndarray, h: AbHom) -> np.ndarray:
    H = hom_matrix(h)
    out = f @ H.T
    return np.mod(out, np.asarray(h.codomain.invariant_factors, dtype=np.int64)) if h.codomain.rank \
        else out


def _map_from_images(src: CohomologyResult, dst: CohomologyResult,
                     images: list[tuple[int, ...]]) -> AbHom:
    cols = images
    rows = [[c[i] for c in cols] for i in range(dst.group.rank)]
    return AbHom(src.group, dst.group, rows)


def induced_map(h: AbHom, A: GModule, B: GModule, n: int, budget: int | None = None) -> AbHom:
    """``h_*: H^n(G, A) -> H^n(G, B)`` for a G-equivariant ``h``."""
    if not is_equivariant(h, A, B):
        raise ValueError("map is not G-equivariant")
    HA, HB = cohomology(A, n, budget), cohomology(B, n, budget)
    return _map_from_images(HA, HB, [HB.class_of(_apply_pointwise(f, h)) for f in HA.representatives])


def restriction_map(M: GModule, U, n: int, budget: int | None = None) -> AbHom:
    """``res: H^n(G, M) -> H^n(U, M)``."""
    G = M.group
    _, embed = G.subgroup(U)
    MU = restrict_module(M, U)
    HG, HU = cohomology(M, n, budget), cohomology(MU, n, budget)
    imgs = [HU.class_of(cc.restrict_cochain(f, G.order, n, embed)) for f in HG.representatives]
    return _map_from_images(HG, HU, imgs)


def restriction(x: CohomologyClass, U) -> CohomologyClass:
    """Restrict a class to a subgroup ``U`` (cocycle pulled back to ``U^n``)."""
    res = x.result
    if res.representatives is None or res.module is None:
        raise MissingRepresentative("restriction needs a representative cocycle")
    M, n = res.module, res.degree
    G = M.group
    _, embed = G.subgroup(U)
    HU = cohomology(restrict_module(M, U), n)
    return HU.element(HU.class_of(cc.restrict_cochain(x.cocycle(), G.order, n, embed)))


def shapiro_map(G: FiniteGroup, U, N: GModule, n: int, budget: int | None = None):
    """Shapiro map ``H^n(G, Ind_U^G N) -> H^n(U, N)`` (restrict, then evaluate at e).

    Returns ``(map, induced module data)``.
    """
    ind = induce(G, U, N)
    ev = evaluation_map(ind)
    HG = cohomology(ind.module, n, budget)
    HU = cohomology(N, n, budget)
    imgs = [HU.class_of(_apply_pointwise(cc.restrict_cochain(f, G.order, n, ind.subgroup), ev))
            for f in HG.representatives]
    return _map_from_images(HG, HU, imgs), ind


def corestriction_map(M: GModule, U, n: int, budget: int | None = None) -> AbHom:
    """``cor: H^n(U, M) -> H^n(G, M)`` as trace_* composed with the inverse Shapiro map."""
    if n > 2:
        raise UnsupportedDegree("corestriction is provided for n <= 2")
    G = M.group
    MU = restrict_module(M, U)
    sh, ind = shapiro_map(G, U, MU, n, budget)
    if not sh.is_isomorphism():
        raise AssertionError("Shapiro map is not an isomorphism")
    tr = trace_map(ind, M)
    HI = cohomology(ind.module, n, budget)
    HG = cohomology(M, n, budget)
    HU = cohomology(MU, n, budget)
    imgs = []
    for j in range(HU.group.rank):
        y = hom_preimage(sh, [int(i == j) for i in range(HU.group.rank)])
        imgs.append(HG.class_of(_apply_pointwise(HI.cocycle(y), tr)))
    return _map_from_images(HU, HG, imgs)


def corestriction(x: CohomologyClass, M: GModule, U) -> CohomologyClass:
    """Corestrict a class over ``U`` (with coefficients ``Res M``) to ``G``."""
    n = x.result.degree
    cor = corestriction_map(M, U, n)
    HG = cohomology(M, n)
    return HG.element(cor(x.coords))


def inflation_map(M: GModule, U, n: int, budget: int | None = None) -> AbHom:
    """``inf: H^n(G/U, M^U) -> H^n(G, M)`` for normal ``U``."""
    G = M.group
    MU, inc, proj = fixed_module(M, U)
    HQ, HG = cohomology(MU, n, budget), cohomology(M, n, budget)
    imgs = [HG.class_of(_apply_pointwise(cc.inflate_cochain(f, MU.group.order, n, proj, G.order), inc))
            for f in HQ.representatives]
    return _map_from_images(HQ, HG, imgs)


def inflation(x: CohomologyClass, M: GModule, U) -> CohomologyClass:
    n = x.result.degree
    HG = cohomology(M, n)
    return HG.element(inflation_map(M, U, n)(x.coords))


# ---------------------------------------------------------------------------
# Exact sequences
# ---------------------------------------------------------------------------


@dataclass
class ShortExactSequence:
    """``0 -> L -i-> M -pi-> N -> 0`` of G-modules."""

    L: GModule
    M: GModule
    N: GModule
    i: AbHom
    pi: AbHom

    def __post_init__(self):
        self.verify()

    def verify(self):
        if not (is_equivariant(self.i, self.L, self.M) and is_equivariant(self.pi, self.M, self.N)):
            raise NotExact("maps are not G-equivariant")
        if not self.i.is_injective():
            raise NotExact("L -> M is not injective")
        if not self.pi.is_surjective():
            raise NotExact("M -> N is not surjective")
        if not (self.pi @ self.i).is_zero() or self.L.carrier.order * self.N.carrier.order \
                != self.M.carrier.order:
            raise NotExact("sequence is not exact in the middle")


def connecting_hom(ses: ShortExactSequence, n: int, budget: int | None = None) -> AbHom:
    """``delta: H^n(N) -> H^{n+1}(L)`` by lifting, differentiating and pulling back."""
    L, M, N = ses.L, ses.M, ses.N
    G = M.group
    HN, HL = cohomology(N, n, budget), cohomology(L, n + 1, budget)
    _, _, lifts = quotient_with_lifts(M.carrier, [ses.i.matrix.column(j) for j in range(L.rank)])
    # section N -> M on coordinates: generator j of N lifts to any preimage under pi
    S = np.zeros((M.rank, N.rank), dtype=np.int64)
    for j in range(N.rank):
        x = hom_preimage(ses.pi, [int(k == j) for k in range(N.rank)])
        S[:, j] = x
    imgs = []
    for z in HN.representatives:
        lift = np.mod(z @ S.T, M.moduli) if M.rank else np.zeros((z.shape[0], 0), dtype=np.int64)
        dz = cc.apply_differential(M.mats, G.table, M.moduli, lift, n)
        out = np.zeros((dz.shape[0], L.rank), dtype=np.int64)
        vals, inverse = np.unique(dz, axis=0, return_inverse=True)
        for k, v in enumerate(vals):
            x = hom_preimage(ses.i, v.tolist())
            if x is None:
                raise AssertionError("differential of a lift leaves the image of L")
            out[np.asarray(inverse).reshape(-1) == k] = x
        imgs.append(HL.class_of(out))
    return _map_from_images(HN, HL, imgs)


@dataclass
class Check:
    name: str
    passed: bool
    lhs: object
    rhs: object

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "lhs": self.lhs, "rhs": self.rhs}


def _image_order(h: AbHom) -> int:
    return h.image()[0].order


def _kernel_order(h: AbHom) -> int:
    return h.kernel()[0].order


def long_exact_window(ses: ShortExactSequence, top: int = 2, budget: int | None = None):
    """Maps of ``H^0(L) -> H^0(M) -> ... -> H^top(N)`` in order."""
    maps = []
    for n in range(top + 1):
        maps.append((f"H^{n}(L)->H^{n}(M)", induced_map(ses.i, ses.L, ses.M, n, budget)))
        maps.append((f"H^{n}(M)->H^{n}(N)", induced_map(ses.pi, ses.M, ses.N, n, budget)))
        if n < top:
            maps.append((f"H^{n}(N)->H^{n + 1}(L)", connecting_hom(ses, n, budget)))
    return maps


def les_checks(ses: ShortExactSequence, top: int = 2, budget: int | None = None) -> list[Check]:
    """Exactness at every node of the window, by composites and cardinalities."""
    maps = long_exact_window(ses, top, budget)
    checks = [Check("injective at H^0(L)", _kernel_order(maps[0][1]) == 1,
                    _kernel_order(maps[0][1]), 1)]
    for (na, f), (nb, g) in zip(maps, maps[1:]):
        node = na.split("->")[1]
        im, ker = _image_order(f), _kernel_order(g)
        ok = (g @ f).is_zero() and im == ker
        checks.append(Check(f"exact at {node}", ok, im, ker))
    return checks


def shapiro_check(G: FiniteGroup, U, N: GModule, n: int, budget: int | None = None) -> Check:
    """``H^n(G, Ind N)`` and ``H^n(U, N)`` have equal invariant factors and the map is an iso."""
    sh, ind = shapiro_map(G, U, N, n, budget)
    lhs = sh.domain.invariant_factors
    rhs = sh.codomain.invariant_factors
    return Check(f"Shapiro n={n}", lhs == rhs and sh.is_isomorphism(), list(lhs), list(rhs))


def coprime_vanishing_check(M: GModule, degrees=(1, 2), budget: int | None = None) -> list[Check]:
    """If ``gcd(|G|, |M|) = 1`` then ``H^n = 0`` for ``n >= 1``."""
    if gcd(M.group.order, M.carrier.order) != 1:
        raise ValueError("orders are not coprime")
    out = []
    for n in degrees:
        if n < 1:
            raise UnsupportedDegree("coprime vanishing concerns n >= 1")
        H = cohomology(M, n, budget)
        out.append(Check(f"coprime vanishing H^{n}", H.order == 1, H.order, 1))
    return out


def cor_res_check(M: GModule, U, n: int, budget: int | None = None) -> Check:
    """``cor o res = [G:U]`` as endomorphisms of ``H^n(G, M)``."""
    index = M.group.order // len(set(U))
    comp = corestriction_map(M, U, n, budget) @ restriction_map(M, U, n, budget)
    target = AbHom.scalar(comp.domain, index)
    return Check(f"cor.res = {index} on H^{n}", comp == target, comp.matrix.tolist(),
                 target.matrix.tolist())


def herbrand_check(M: GModule) -> Check:
    """``|H^0_T| = |H^1_T|`` for cyclic groups."""
    if not M.group.is_cyclic():
        raise ValueError("Herbrand equality is checked for cyclic groups only")
    h0 = tate_cohomology(M, 0).order
    h1 = tate_cohomology(M, 1).order
    return Check("|H^0_T| = |H^1_T|", h0 == h1, h0, h1)


def conjugation_action_h1(M: GModule, U, g: int, budget: int | None = None) -> AbHom:
    """Action of ``g`` on ``H^1(U, M)``: ``f -> [u -> g f(g^-1 u g)]`` (``U`` normal)."""
    G = M.group
    H, embed = G.subgroup(U)
    pos = {u: k for k, u in enumerate(embed)}
    HU = cohomology(restrict_module(M, U), 1, budget)
    gi = G.inv(g)
    perm = np.array([pos[G.mul(G.mul(gi, u), g)] for u in embed])
    imgs = []
    for f in HU.representatives:
        h = np.mod(f[perm] @ M.mats[g].T, M.moduli) if M.rank else f
        imgs.append(HU.class_of(h))
    return _map_from_images(HU, HU, imgs)


def inflation_restriction_checks(M: GModule, U, budget: int | None = None) -> list[Check]:
    """Five-term sequence ``0 -> H^1(G/U, M^U) -> H^1(G, M) -> H^1(U, M)^{G/U} -> H^2(G/U, M^U) -> H^2(G, M)``."""
    G = M.group
    U = G.check_subgroup(U)
    inf1 = inflation_map(M, U, 1, budget)
    res1 = restriction_map(M, U, 1, budget)
    inf2 = inflation_map(M, U, 2, budget)
    checks = [Check("inf injective on H^1", inf1.is_injective(), _kernel_order(inf1), 1)]
    checks.append(Check("im inf = ker res on H^1", (res1 @ inf1).is_zero()
                        and _image_order(inf1) == _kernel_order(res1),
                        _image_order(inf1), _kernel_order(res1)))
    # invariants of H^1(U, M) under G/U
    HU = res1.codomain
    gens = []
    for g in G.generators.values():
        gens.append(conjugation_action_h1(M, U, g, budget) - AbHom.identity(HU))
    if gens:
        inv_order = _kernel_order(_reframe(gens, HU)) if HU.rank else 1
    else:
        inv_order = HU.order
    im_res = _image_order(res1)
    checks.append(Check("res lands in invariants", im_res <= inv_order and inv_order % im_res == 0,
                        im_res, inv_order))
    checks.append(Check("transgression: |H^1(U)^G / im res| = |ker inf on H^2|",
                        inv_order // im_res == _kernel_order(inf2), inv_order // im_res,
                        _kernel_order(inf2)))
    return checks


def _reframe(maps: list[AbHom], A: FinAbGroup) -> AbHom:
    """Stack several endomorphisms of ``A`` into one map ``A -> A^k``."""
    from .abelian import direct_sum_with_maps

    S, incs, _ = direct_sum_with_maps(*([A] * len(maps)))
    total = AbHom.zero(A, S)
    for inc, h in zip(incs, maps):
        total = total + inc @ h
    return total
