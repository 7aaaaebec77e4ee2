"""Exact integer linear algebra and finite abelian groups.

Every finite abelian group is kept in invariant-factor normal form
``Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k`` and ``d_i >= 2``.
Elements are coordinate vectors reduced modulo the invariant factors and
homomorphisms are plain integer matrices whose columns are the images of
the domain generators.

All arithmetic here uses Python integers, so nothing overflows.

>>> G = FinAbGroup.from_orders([4, 6])
>>> G
FinAbGroup(2, 12)
>>> K, inc = hom_kernel(AbHom.scalar(G, 2))
>>> K.order
4
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod
from typing import Iterable, Sequence

from sympy import factorint, isprime


class MalformedHom(ValueError):
    """Raised when a matrix does not define a homomorphism."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as nested tuples."""

    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(matmul(self.tolist(), other.tolist(), self.cols, other.cols), other.cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(identity(n), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None,
           cols: int | None = None) -> list[list[int]]:
    if cols is None:
        cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [() for _ in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.tolist()
    return [[int(x) for x in row] for row in A]


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular, the diagonal of ``D`` is non-negative with
    ``d_1 | d_2 | ...`` and the zero entries come last.
    """
    if isinstance(A, IntMatrix):
        rows, cols = A.shape
    else:
        rows = len(A)
        cols = len(A[0]) if rows else 0
    res = _snf(_as_rows(A), rows, cols, track=True)
    return (IntMatrix(res.U, rows), IntMatrix(res.D, cols), IntMatrix(res.V, cols))


@dataclass
class _SNF:
    D: list[list[int]]
    diag: list[int]           # nonzero diagonal entries, in order
    U: list[list[int]] | None
    Uinv: list[list[int]] | None
    V: list[list[int]] | None
    Vinv: list[list[int]] | None


def _snf(A: list[list[int]], m: int, n: int, track: bool = True) -> _SNF:
    """Smith normal form by repeated gcd pivoting.

    With ``track`` the four transforms U, U^-1, V, V^-1 are maintained so that
    ``U A V = D``.  The input list is copied.
    """
    A = [row[:] for row in A]
    U = identity(m) if track else None
    Uinv = identity(m) if track else None
    V = identity(n) if track else None
    Vinv = identity(n) if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        if c == 0:
            return
        rs, rd = A[src], A[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += c * rs[k]
        if track:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += c * us[k]
            for row in Uinv:
                if row[dst]:
                    row[src] -= c * row[dst]

    def add_col(src, dst, c):
        # col_dst += c * col_src
        if c == 0:
            return
        for row in A:
            if row[src]:
                row[dst] += c * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += c * row[src]
            vs, vd = Vinv[src], Vinv[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= c * vd[k]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if track:
            U[i] = [-x for x in U[i]]
            for row in Uinv:
                row[i] = -row[i]

    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest nonzero of row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility of the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            negate_row(t)
        diag.append(A[t][t])
        t += 1
    return _SNF(A, diag, U, Uinv, V, Vinv)


# ---------------------------------------------------------------------------
# Finite abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group in invariant-factor normal form."""

    invariant_factors: tuple[int, ...]

    def __init__(self, *invariant_factors: int):
        if len(invariant_factors) == 1 and not isinstance(invariant_factors[0], int):
            invariant_factors = tuple(invariant_factors[0])
        inv = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in inv):
            raise ValueError(f"invariant factors must be >= 2, got {inv}")
        if any(inv[i + 1] % inv[i] for i in range(len(inv) - 1)):
            raise ValueError(f"divisibility chain fails for {inv}")
        object.__setattr__(self, "invariant_factors", inv)

    def __repr__(self) -> str:
        return f"FinAbGroup({', '.join(map(str, self.invariant_factors))})"

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Normal form of the direct sum of cyclic groups of the given orders."""
        return normalize_orders(orders)[0]

    @property
    def rank(self) -> int:
        """Number of cyclic factors (minimal number of generators)."""
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.rank:
            raise ValueError(f"element {tuple(x)} has wrong length for {self!r}")
        return tuple(int(a) % d for a, d in zip(x, self.invariant_factors))

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and all(0 <= int(a) < d for a, d in zip(x, self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def element_order(self, x: Sequence[int]) -> int:
        return reduce(_lcm, (d // gcd(int(a) % d, d) for a, d in zip(x, self.invariant_factors)), 1)

    def elements(self):
        """Iterate over all elements (only sensible for small groups)."""
        from itertools import product as cartesian

        return cartesian(*(range(d) for d in self.invariant_factors))

    def gens(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def length(self) -> int:
        """Composition length as a Z-module: number of prime factors of |G|."""
        return sum(factorint(self.order).values()) if self.order > 1 else 0


@dataclass(frozen=True)
class AbHom:
    """Homomorphism of finite abelian groups given by an integer matrix.

    Column ``j`` is the image of the ``j``-th generator of the domain, with
    entries reduced modulo the codomain invariant factors.
    """

    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: IntMatrix

    def __init__(self, domain: FinAbGroup, codomain: FinAbGroup, matrix, check: bool = True):
        rows = _as_rows(matrix)
        if len(rows) != codomain.rank:
            raise MalformedHom(f"matrix has {len(rows)} rows, codomain needs {codomain.rank}")
        if any(len(r) != domain.rank for r in rows):
            raise MalformedHom(f"matrix must have {domain.rank} columns")
        b = codomain.invariant_factors
        rows = [[x % b[i] for x in row] for i, row in enumerate(rows)]
        if check:
            for j, d in enumerate(domain.invariant_factors):
                for i, row in enumerate(rows):
                    if (d * row[j]) % b[i]:
                        raise MalformedHom(
                            f"generator {j} of order {d} maps to an element of larger order")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", IntMatrix(rows, domain.rank))

    @classmethod
    def identity(cls, G: FinAbGroup) -> "AbHom":
        return cls(G, G, identity(G.rank), check=False)

    @classmethod
    def zero(cls, A: FinAbGroup, B: FinAbGroup) -> "AbHom":
        return cls(A, B, [[0] * A.rank for _ in range(B.rank)], check=False)

    @classmethod
    def scalar(cls, G: FinAbGroup, c: int) -> "AbHom":
        return cls(G, G, [[c * int(i == j) for j in range(G.rank)] for i in range(G.rank)], check=False)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        x = [int(a) for a in x]
        return self.codomain.reduce([sum(a * b for a, b in zip(row, x)) for row in self.matrix.entries])

    def __matmul__(self, other: "AbHom") -> "AbHom":
        """Composition ``self o other``."""
        if other.codomain != self.domain:
            raise ValueError("cannot compose: codomain/domain mismatch")
        return AbHom(other.domain, self.codomain,
                     matmul(self.matrix.tolist(), other.matrix.tolist(), cols=other.domain.rank),
                     check=False)

    def __add__(self, other: "AbHom") -> "AbHom":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError("cannot add homs with different domains/codomains")
        return AbHom(self.domain, self.codomain,
                     [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix.entries, other.matrix.entries)],
                     check=False)

    def __sub__(self, other: "AbHom") -> "AbHom":
        return self + other.scale(-1)

    def scale(self, c: int) -> "AbHom":
        return AbHom(self.domain, self.codomain,
                     [[c * a for a in r] for r in self.matrix.entries], check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AbHom) and self.domain == other.domain
                and self.codomain == other.codomain and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix.entries for x in row)

    def kernel(self):
        return hom_kernel(self)

    def image(self):
        return hom_image(self)

    def is_injective(self) -> bool:
        return hom_kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return hom_image(self)[0].order == self.codomain.order

    def is_isomorphism(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_injective()


# ---------------------------------------------------------------------------
# Kernels, images, quotients
#
# The private helpers work with arbitrary lists of moduli (not necessarily a
# divisibility chain) so that direct sums can be handled without first
# renormalizing.
# ---------------------------------------------------------------------------


def _coker(rel: list[list[int]], k: int):
    """Finite quotient Z^k / span(columns of rel).

    Returns ``(Q, proj, lift)``: ``proj`` maps Z^k coordinates to Q
    coordinates (rows reduced mod Q's invariants) and column ``i`` of
    ``lift`` is a Z^k vector mapping to the ``i``-th generator of Q.
    """
    cols = len(rel[0]) if rel else 0
    res = _snf(rel, k, cols, track=True)
    diag = res.diag + [0] * (k - len(res.diag))
    if any(d == 0 for d in diag):
        raise ValueError("quotient is infinite")
    keep = [i for i, d in enumerate(diag) if d != 1]
    Q = FinAbGroup(*[diag[i] for i in keep])
    proj = [[x % diag[i] for x in res.U[i]] for i in keep]
    lift = [[res.Uinv[r][i] for i in keep] for r in range(k)]
    return Q, proj, lift


def normalize_orders(orders: Iterable[int]):
    """Normal form of ``Z/o_1 + ... + Z/o_k``.

    Returns ``(G, proj, lift)`` where ``proj`` converts coordinates in the
    given cyclic decomposition to normal-form coordinates and ``lift`` goes
    back.
    """
    orders = [int(o) for o in orders]
    if any(o < 1 for o in orders):
        raise ValueError("cyclic orders must be positive")
    k = len(orders)
    rel = [[orders[i] * int(i == j) for j in range(k)] for i in range(k)]
    if k == 0:
        return FinAbGroup(), [], []
    return _coker(rel, k)


def _lattice_kernel(N: list[list[int]], m: int, n: int) -> list[list[int]]:
    """Basis (as columns, returned as a list of column vectors) of ker N in Z^n."""
    res = _snf(N, m, n, track=True)
    r = len(res.diag)
    return [[res.V[i][j] for i in range(n)] for j in range(r, n)]


def _subgroup(moduli: list[int], gens: list[list[int]]):
    """Subgroup of ``Z/a_1 + ... + Z/a_k`` generated by ``gens`` (vectors).

    Returns ``(S, inc)`` with ``inc`` a list of column vectors: the images of
    S's generators.
    """
    k = len(moduli)
    if k == 0:
        return FinAbGroup(), []
    s = len(gens)
    # lattice spanned by the generators and the relations
    N = [[g[i] for g in gens] + [moduli[i] * int(i == j) for j in range(k)] for i in range(k)]
    res = _snf(N, k, s + k, track=True)
    d = res.diag
    assert len(d) == k
    # basis of the lattice: B = U^-1 diag(d);  relations in that basis: X = diag(1/d) U diag(a)
    X = [[res.U[i][j] * moduli[j] // d[i] for j in range(k)] for i in range(k)]
    S, _, lift = _coker(X, k)
    B = [[res.Uinv[r][i] * d[i] for i in range(k)] for r in range(k)]
    inc_cols = []
    for c in range(S.rank):
        coeff = [lift[i][c] for i in range(k)]
        vec = [sum(B[r][i] * coeff[i] for i in range(k)) % moduli[r] for r in range(k)]
        inc_cols.append(vec)
    return S, inc_cols


def _kernel_gens(H: list[list[int]], a: list[int], b: list[int]) -> list[list[int]]:
    """Generators of ker(H: Z/a -> Z/b) as vectors modulo ``a``."""
    k, m = len(a), len(b)
    if k == 0:
        return []
    if m == 0:
        return [[int(i == j) for i in range(k)] for j in range(k)]
    N = [list(H[i]) + [b[i] * int(i == j) for j in range(m)] for i in range(m)]
    basis = _lattice_kernel(N, m, k + m)
    return [[v[i] % a[i] for i in range(k)] for v in basis]


def _cols_to_rows(cols: list[list[int]], nrows: int) -> list[list[int]]:
    return [[c[i] for c in cols] for i in range(nrows)]


def subgroup(G: FinAbGroup, gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, AbHom]:
    """Subgroup of ``G`` generated by ``gens`` with its inclusion."""
    gens = [list(G.reduce(g)) for g in gens]
    S, inc = _subgroup(list(G.invariant_factors), gens)
    return S, AbHom(S, G, _cols_to_rows(inc, G.rank), check=False)


def hom_kernel(h: AbHom) -> tuple[FinAbGroup, AbHom]:
    """Kernel of ``h`` with its inclusion into the domain."""
    gens = _kernel_gens(h.matrix.tolist(), list(h.domain.invariant_factors),
                        list(h.codomain.invariant_factors))
    return subgroup(h.domain, gens)


def hom_image(h: AbHom) -> tuple[FinAbGroup, AbHom]:
    """Image of ``h`` with its inclusion into the codomain."""
    return subgroup(h.codomain, [h.matrix.column(j) for j in range(h.domain.rank)])


def quotient(G: FinAbGroup, sub_gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, AbHom]:
    """Quotient of ``G`` by the subgroup generated by ``sub_gens``."""
    Q, proj, _ = quotient_with_lifts(G, sub_gens)
    return Q, proj


def quotient_with_lifts(G: FinAbGroup, sub_gens: Sequence[Sequence[int]]):
    """Like :func:`quotient` but also returns lifts of Q's generators to G."""
    for g in sub_gens:
        if not G.contains(g):
            raise ValueError(f"element {tuple(g)} does not lie in {G!r}")
    k = G.rank
    rel = [[g[i] for g in sub_gens] + [G.invariant_factors[i] * int(i == j) for j in range(k)]
           for i in range(k)]
    if k == 0:
        return FinAbGroup(), AbHom(G, FinAbGroup(), []), []
    Q, proj, lift = _coker(rel, k)
    lifts = [G.reduce([lift[r][c] for r in range(k)]) for c in range(Q.rank)]
    return Q, AbHom(G, Q, proj, check=False), lifts


def hom_preimage(h: AbHom, y: Sequence[int]) -> tuple[int, ...] | None:
    """Some ``x`` with ``h(x) == y``, or ``None`` when ``y`` is not in the image."""
    a, b = list(h.domain.invariant_factors), list(h.codomain.invariant_factors)
    k, m = len(a), len(b)
    y = list(h.codomain.reduce(y))
    if m == 0:
        return h.domain.zero()
    N = [list(h.matrix.entries[i]) + [b[i] * int(i == j) for j in range(m)] for i in range(m)]
    res = _snf(N, m, k + m, track=True)
    Uy = [sum(u * v for u, v in zip(row, y)) for row in res.U]
    w = []
    for i, c in enumerate(Uy):
        if i < len(res.diag):
            if c % res.diag[i]:
                return None
            w.append(c // res.diag[i])
        elif c:
            return None
    w += [0] * (k + m - len(w))
    z = [sum(res.V[r][j] * w[j] for j in range(k + m)) for r in range(k)]
    return h.domain.reduce(z)


def direct_sum(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    return FinAbGroup.from_orders(A.invariant_factors + B.invariant_factors)


def direct_sum_with_maps(*groups: FinAbGroup):
    """Normal form of a direct sum with inclusions and projections."""
    orders = [d for G in groups for d in G.invariant_factors]
    S, proj, lift = normalize_orders(orders)
    incs, projs, off = [], [], 0
    for G in groups:
        cols = [[proj[i][off + j] for i in range(S.rank)] for j in range(G.rank)]
        incs.append(AbHom(G, S, _cols_to_rows(cols, S.rank), check=False))
        rows = [[lift[off + j][c] for c in range(S.rank)] for j in range(G.rank)]
        projs.append(AbHom(S, G, rows, check=False))
        off += G.rank
    return S, incs, projs


def primary_part(M: FinAbGroup, l: int) -> FinAbGroup:
    """The ``l``-power torsion subgroup ``M[l^oo]``."""
    if not isprime(l):
        raise ValueError(f"{l} is not prime")
    orders = []
    for d in M.invariant_factors:
        q = 1
        while d % l == 0:
            d //= l
            q *= l
        orders.append(q)
    return FinAbGroup(*[q for q in orders if q > 1])


def subgroup_order(G: FinAbGroup, gens: Sequence[Sequence[int]]) -> int:
    return subgroup(G, gens)[0].order
