"""Modules over F_l[G]: simple submodules, composition series, Grothendieck classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from math import gcd

import numpy as np
from sympy import isprime

from ._localring import rref
from .abelian import FinAbGroup
from .cohomology import BudgetExceeded
from .gmodule import FiniteGroup, GModule, induce

SPIN_BUDGET = 1 << 16
ISO_DIM_BOUND = 6
ISO_ENUM_BUDGET = 1 << 14


class ModularModule:
    """``F_l``-vector space of dimension ``d`` with a linear ``G``-action (column vectors)."""

    def __init__(self, group: FiniteGroup, l: int, mats, check: bool = True):
        if not isprime(l):
            raise ValueError(f"{l} is not prime")
        A = np.mod(np.asarray(mats, dtype=np.int64), l)
        self.group, self.l = group, l
        self.dimension = A.shape[1] if A.ndim == 3 else 0
        self.mats = A.reshape(group.order, self.dimension, self.dimension)
        if check:
            self.underlying.check_axioms()

    def __repr__(self) -> str:
        return f"ModularModule(F_{self.l}^{self.dimension} over {self.group!r})"

    @classmethod
    def from_gmodule(cls, M: GModule, l: int) -> "ModularModule":
        if any(d != l for d in M.carrier.invariant_factors):
            raise ValueError(f"carrier {M.carrier} is not an F_{l}-vector space")
        return cls(M.group, l, M.mats, check=False)

    @classmethod
    def from_generators(cls, group: FiniteGroup, l: int, gen_mats) -> "ModularModule":
        d = len(next(iter(gen_mats.values()))) if gen_mats else 0
        M = GModule.from_generators(group, FinAbGroup(*([l] * d)), gen_mats)
        return cls.from_gmodule(M, l)

    @classmethod
    def trivial(cls, group: FiniteGroup, l: int, dim: int = 1) -> "ModularModule":
        return cls(group, l, np.broadcast_to(np.eye(dim, dtype=np.int64), (group.order, dim, dim)),
                   check=False)

    @property
    def underlying(self) -> GModule:
        return GModule(self.group, FinAbGroup(*([self.l] * self.dimension)), self.mats, check=False) \
            if self.dimension else GModule(self.group, FinAbGroup(), self.mats, check=False)

    def gens(self) -> list[int]:
        return list(self.group.generators.values())

    def change_basis(self, P: np.ndarray) -> "ModularModule":
        """Conjugate the action by an invertible ``P`` (new coordinates ``x' = P x``)."""
        Pinv = _inverse(P, self.l)
        return ModularModule(self.group, self.l, np.einsum("ij,gjk,kl->gil", P, self.mats, Pinv),
                             check=False)

    def fixed_dimension(self) -> int:
        d = self.dimension
        if d == 0:
            return 0
        I = np.eye(d, dtype=np.int64)
        blocks = [np.mod(self.mats[g] - I, self.l) for g in self.gens()]
        return d - (_rank(np.concatenate(blocks, axis=0), self.l) if blocks else 0)


def _inverse(P: np.ndarray, l: int) -> np.ndarray:
    d = P.shape[0]
    R, piv = rref(np.concatenate([P, np.eye(d, dtype=np.int64)], axis=1), l)
    if len(piv) < d or list(piv[:d]) != list(range(d)):
        raise ValueError("matrix is not invertible")
    return R[:, d:]


def _rank(A: np.ndarray, l: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, l)[1])


def spin(M: ModularModule, v) -> np.ndarray:
    """RREF basis (rows) of the submodule generated by ``v``."""
    l = M.l
    basis, _ = rref(np.asarray([v], dtype=np.int64), l)
    gens = M.gens()
    while True:
        new = [basis] + [basis @ M.mats[g].T for g in gens]
        R, _ = rref(np.mod(np.concatenate(new, axis=0), l), l)
        if len(R) == len(basis):
            return R
        basis = R


def _restrict(M: ModularModule, basis: np.ndarray) -> ModularModule:
    """Action on the invariant subspace spanned by the RREF rows ``basis``."""
    k = len(basis)
    piv = [int(np.flatnonzero(row)[0]) for row in basis]
    mats = np.zeros((M.group.order, k, k), dtype=np.int64)
    for g in range(M.group.order):
        img = np.mod(basis @ M.mats[g].T, M.l)          # rows: g b_j
        mats[g] = img[:, piv].T
    return ModularModule(M.group, M.l, mats, check=False)


def _quotient(M: ModularModule, basis: np.ndarray) -> ModularModule:
    """Action on ``V / span(basis)`` in the coordinates of the non-pivot positions."""
    l, d = M.l, M.dimension
    piv = [int(np.flatnonzero(row)[0]) for row in basis]
    free = [i for i in range(d) if i not in piv]
    k = len(free)
    mats = np.zeros((M.group.order, k, k), dtype=np.int64)
    for g in range(M.group.order):
        for j, f in enumerate(free):
            w = M.mats[g][:, f].copy()
            w = np.mod(w - w[piv] @ basis, l) if len(piv) else w
            mats[g][:, j] = w[free]
    return ModularModule(M.group, l, mats, check=False)


def _projective_vectors(d: int, l: int):
    for lead in range(d):
        for tail in cartesian(range(l), repeat=d - lead - 1):
            v = [0] * d
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def find_simple_submodule(M: ModularModule, budget: int = SPIN_BUDGET) -> tuple[ModularModule, np.ndarray]:
    """A simple submodule: the smallest cyclic submodule among all spins.

    Returns the submodule and its RREF basis inside ``M``.
    """
    d, l = M.dimension, M.l
    if d == 0:
        raise ValueError("the zero module has no simple submodule")
    count = (l ** d - 1) // (l - 1)
    if count > budget:
        raise BudgetExceeded(f"spinning {count} lines of F_{l}^{d}", count, budget)
    best = None
    for v in _projective_vectors(d, l):
        S = spin(M, v)
        if best is None or len(S) < len(best):
            best = S
            if len(best) == 1:
                break
    return _restrict(M, best), best


def is_simple(M: ModularModule, budget: int = SPIN_BUDGET) -> bool:
    return M.dimension > 0 and find_simple_submodule(M, budget)[0].dimension == M.dimension


def composition_series(M: ModularModule, seed: int | None = None,
                       budget: int = SPIN_BUDGET) -> list[ModularModule]:
    """Composition factors, bottom first.

    With ``seed`` the module is first moved to a random basis and the
    generator order shuffled, which changes the choices made along the way
    but never the multiset of factors.
    """
    if seed is not None:
        rng = np.random.default_rng(seed)
        d = M.dimension
        while d:
            P = rng.integers(0, M.l, (d, d))
            if _rank(P, M.l) == d:
                M = M.change_basis(P)
                break
        G = M.group
        names = list(G.generators.items())
        rng.shuffle(names)
        G2 = FiniteGroup(G.table, dict(names), name=G.name, check=False)
        M = ModularModule(G2, M.l, M.mats, check=False)
    factors = []
    while M.dimension:
        S, basis = find_simple_submodule(M, budget)
        factors.append(ModularModule(M.group, M.l, S.mats, check=False))
        M = _quotient(M, basis)
    return factors


def direct_sum(*mods: ModularModule) -> ModularModule:
    G, l = mods[0].group, mods[0].l
    d = sum(m.dimension for m in mods)
    mats = np.zeros((G.order, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        k = m.dimension
        mats[:, off:off + k, off:off + k] = m.mats
        off += k
    return ModularModule(G, l, mats, check=False)


def semisimplify(M: ModularModule, seed: int | None = None) -> ModularModule:
    factors = composition_series(M, seed)
    return direct_sum(*factors) if factors else M


def hom_space(A: ModularModule, B: ModularModule) -> np.ndarray:
    """Basis of ``Hom_G(A, B)`` as an array of ``dim B x dim A`` matrices."""
    l, a, b = A.l, A.dimension, B.dimension
    if a == 0 or b == 0:
        return np.zeros((0, b, a), dtype=np.int64)
    Ib, Ia = np.eye(b, dtype=np.int64), np.eye(a, dtype=np.int64)
    # vec(X A) = (A^T kron I) vec X and vec(B X) = (I kron B) vec X, column-major vec
    rows = [np.kron(A.mats[g].T, Ib) - np.kron(Ia, B.mats[g]) for g in A.gens()]
    if not rows:
        sysm = np.zeros((0, a * b), dtype=np.int64)
    else:
        sysm = np.mod(np.concatenate(rows, axis=0), l)
    R, piv = rref(sysm, l) if len(sysm) else (np.zeros((0, a * b), dtype=np.int64), np.zeros(0, dtype=np.int64))
    free = [j for j in range(a * b) if j not in set(piv.tolist())]
    out = []
    for f in free:
        x = np.zeros(a * b, dtype=np.int64)
        x[f] = 1
        if len(piv):
            x[piv] = np.mod(-R[:, f], l)
        out.append(x.reshape(a, b).T)        # undo column-major vec
    return np.array(out, dtype=np.int64).reshape(len(out), b, a)


def module_iso_test(A: ModularModule, B: ModularModule, bound: int = ISO_DIM_BOUND,
                    budget: int = ISO_ENUM_BUDGET) -> bool:
    """Whether an invertible equivariant map ``A -> B`` exists."""
    if A.group != B.group or A.l != B.l:
        return False
    if A.dimension != B.dimension:
        return False
    if A.dimension > bound:
        raise BudgetExceeded(f"isomorphism test in dimension {A.dimension}", A.dimension, bound)
    if A.dimension == 0:
        return True
    H = hom_space(A, B)
    k, l, d = len(H), A.l, A.dimension
    if k == 0:
        return False
    if l ** k > budget:
        raise BudgetExceeded(f"enumerating {l}^{k} equivariant maps", l ** k, budget)
    for coeffs in cartesian(range(l), repeat=k):
        if any(coeffs):
            X = np.mod(np.tensordot(np.array(coeffs), H, axes=1), l)
            if _rank(X, l) == d:
                return True
    return False


def simple_iso_test(A: ModularModule, B: ModularModule) -> bool:
    """Isomorphism of simple modules: any nonzero equivariant map is invertible."""
    return A.dimension == B.dimension and A.l == B.l and A.group == B.group and len(hom_space(A, B)) > 0


@dataclass
class GrothClass:
    """Element of the Grothendieck group: simple classes with multiplicities."""

    l: int
    group: FiniteGroup
    entries: list[tuple[ModularModule, int]] = field(default_factory=list)

    def add_simple(self, S: ModularModule, mult: int = 1) -> None:
        for i, (T, m) in enumerate(self.entries):
            if simple_iso_test(S, T):
                self.entries[i] = (T, m + mult)
                return
        self.entries.append((S, mult))

    def __add__(self, other: "GrothClass") -> "GrothClass":
        out = GrothClass(self.l, self.group, list(self.entries))
        for S, m in other.entries:
            out.add_simple(S, m)
        return out

    def scale(self, k: int) -> "GrothClass":
        return GrothClass(self.l, self.group, [(S, m * k) for S, m in self.entries])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrothClass) or self.l != other.l or self.group != other.group:
            return False
        if sorted(m for _, m in self.entries) != sorted(m for _, m in other.entries):
            return False
        for S, m in self.entries:
            match = [n for T, n in other.entries if simple_iso_test(S, T)]
            if match != [m]:
                return False
        return True

    @property
    def dimension(self) -> int:
        return sum(S.dimension * m for S, m in self.entries)

    def multiplicities(self) -> list[tuple[int, int]]:
        """``(dimension, multiplicity)`` pairs, sorted; a cheap fingerprint."""
        return sorted((S.dimension, m) for S, m in self.entries)


def groth_class(M: ModularModule, seed: int | None = None) -> GrothClass:
    cls = GrothClass(M.l, M.group)
    for S in composition_series(M, seed):
        cls.add_simple(ModularModule(M.group, M.l, S.mats, check=False))
    return cls


def cyclic_prime_to_l_subgroups(G: FiniteGroup, l: int) -> list[tuple[int, ...]]:
    if not isprime(l):
        raise ValueError(f"{l} is not prime")
    return [U for U in G.cyclic_subgroups() if gcd(len(U), l) == 1]


def induced_class(G: FiniteGroup, U, cls: GrothClass) -> GrothClass:
    """Class of ``Ind_U^G`` applied entrywise to a class over ``G.subgroup(U)``."""
    out = GrothClass(cls.l, G)
    for S, m in cls.entries:
        ind = induce(G, U, S.underlying).module
        out = out + groth_class(ModularModule.from_gmodule(ind, cls.l)).scale(m)
    return out
