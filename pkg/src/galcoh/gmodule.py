"""Finite groups given by Cayley tables and finite modules over them.

A :class:`GModule` is a finite abelian group (the carrier, in invariant-factor
form) together with one integer matrix per group element.  Everything else in
the package is built from the handful of constructions in this file: fixed
points, norms, the augmentation submodule, duals, twists, restriction and
induction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .abelian import (
    AbHom,
    FinAbGroup,
    direct_sum_with_maps,
    hom_preimage,
    quotient_with_lifts,
    subgroup,
    _kernel_gens,
)

MAX_ASSOC_CHECK = 64


class GroupAxiomError(ValueError):
    pass


class ModuleAxiomError(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class FiniteGroup:
    """Finite group on ``0..n-1`` with ``0`` the identity.

    ``generators`` maps names to element indices; when omitted a small
    generating set is chosen greedily and named ``g0, g1, ...``.
    """

    def __init__(self, table, generators: Mapping[str, int] | None = None,
                 name: str | None = None, check: bool = True):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise GroupAxiomError("Cayley table must be a non-empty square array")
        self.table = T
        self.table.setflags(write=False)
        self.order = T.shape[0]
        self.name = name
        if check:
            self._check_axioms()
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv[g] = int(np.flatnonzero(T[g] == 0)[0])
        self.inverses = inv
        if generators is None:
            generators = {f"g{i}": g for i, g in enumerate(self._greedy_generators())}
        else:
            generators = {str(k): int(v) for k, v in generators.items()}
            for k, v in generators.items():
                if not 0 <= v < self.order:
                    raise GroupAxiomError(f"generator {k} = {v} is not an element")
            if len(self.generated_subgroup(generators.values())) != self.order:
                raise GroupAxiomError("listed generators do not generate the group")
        self.generators = dict(generators)

    def _check_axioms(self):
        T, n = self.table, self.order
        if T.min() < 0 or T.max() >= n:
            raise GroupAxiomError("table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(T[0], ident) and np.array_equal(T[:, 0], ident)):
            raise GroupAxiomError("index 0 must be a two-sided identity")
        for g in range(n):
            if len(set(T[g].tolist())) != n or len(set(T[:, g].tolist())) != n:
                raise GroupAxiomError(f"row/column {g} is not a permutation (no inverse)")
        if n <= MAX_ASSOC_CHECK:
            # (ab)c == a(bc) for all triples
            left = T[T, :]                   # left[a, b, c] = (ab)c
            right = T[:, T]                  # right[a, b, c] = a(bc)
            bad = np.argwhere(left != right)
            if len(bad):
                a, b, c = bad[0]
                raise GroupAxiomError(f"associativity fails at ({a}, {b}, {c})")

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        H = {0}
        for g in sorted(range(self.order), key=lambda x: -self.element_order(x)):
            if g not in H:
                gens.append(g)
                H = self.generated_subgroup(gens)
                if len(H) == self.order:
                    break
        return gens

    # -- constructors --------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        T = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return cls(T, {"g": 1 % n} if n > 1 else {}, name=f"C{n}", check=False)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Dihedral group of order ``2n``; element ``k + n*s`` is ``r^k s^s``."""
        N = 2 * n
        T = np.empty((N, N), dtype=np.int64)
        for a in range(N):
            ka, sa = a % n, a // n
            for b in range(N):
                kb, sb = b % n, b // n
                k = (ka + (kb if sa == 0 else -kb)) % n
                T[a, b] = k + n * ((sa + sb) % 2)
        return cls(T, {"r": 1 % n, "s": n} if n > 1 else {"s": n}, name=f"D{N}", check=False)

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        # elements +-1, +-i, +-j, +-k encoded as sign*unit
        units = ["1", "i", "j", "k"]
        mult = {("1", x): (1, x) for x in units}
        mult.update({(x, "1"): (1, x) for x in units})
        mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                     ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                     ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
        elems = [(s, u) for s in (1, -1) for u in units]
        idx = {e: i for i, e in enumerate(elems)}
        T = np.empty((8, 8), dtype=np.int64)
        for a, (sa, ua) in enumerate(elems):
            for b, (sb, ub) in enumerate(elems):
                s, u = mult[(ua, ub)]
                T[a, b] = idx[(sa * sb * s, u)]
        return cls(T, {"i": idx[(1, "i")], "j": idx[(1, "j")]}, name="Q8")

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        from itertools import permutations

        perms = sorted(permutations(range(n)))
        idx = {p: i for i, p in enumerate(perms)}
        T = np.empty((len(perms), len(perms)), dtype=np.int64)
        for a, pa in enumerate(perms):
            for b, pb in enumerate(perms):
                T[a, b] = idx[tuple(pa[pb[i]] for i in range(n))]
        return cls(T, name=f"S{n}")

    @classmethod
    def product(cls, *factors: "FiniteGroup") -> "FiniteGroup":
        """Direct product; element index is mixed-radix, first factor most significant."""
        orders = [F.order for F in factors]
        elems = list(cartesian(*(range(o) for o in orders)))
        idx = {e: i for i, e in enumerate(elems)}
        T = np.empty((len(elems), len(elems)), dtype=np.int64)
        for a, ea in enumerate(elems):
            for b, eb in enumerate(elems):
                T[a, b] = idx[tuple(int(F.table[x, y]) for F, x, y in zip(factors, ea, eb))]
        gens = {}
        for i, F in enumerate(factors):
            for name, g in F.generators.items():
                e = [0] * len(factors)
                e[i] = g
                key = f"g{i}" if (F.name or "").startswith("C") and len(F.generators) == 1 \
                    else f"f{i}.{name}"
                gens[key] = idx[tuple(e)]
        name = " x ".join(F.name or "?" for F in factors)
        return cls(T, gens, name=name, check=False)

    # -- element arithmetic ----------------------------------------------------

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in range(self.order))

    def cyclic_generator(self) -> int:
        for g in range(self.order):
            if self.element_order(g) == self.order:
                return g
        raise ValueError(f"{self!r} is not cyclic")

    # -- subgroups -------------------------------------------------------------

    def generated_subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [int(g) for g in gens]
        H = {0}
        frontier = [0]
        while frontier:
            new = []
            for h in frontier:
                for g in gens:
                    x = int(self.table[h, g])
                    if x not in H:
                        H.add(x)
                        new.append(x)
            frontier = new
        return frozenset(H)

    def is_subgroup(self, U: Iterable[int]) -> bool:
        U = set(int(u) for u in U)
        if 0 not in U or any(not 0 <= u < self.order for u in U):
            return False
        return all(int(self.table[a, b]) in U for a in U for b in U)

    def check_subgroup(self, U: Iterable[int]) -> tuple[int, ...]:
        U = tuple(sorted(set(int(u) for u in U)))
        if not self.is_subgroup(U):
            raise NotASubgroup(f"{list(U)} is not a subgroup of {self!r}")
        return U

    def is_normal(self, U: Iterable[int]) -> bool:
        U = set(U)
        return all(self.mul(self.mul(g, u), self.inv(g)) in U for g in range(self.order) for u in U)

    def subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups (by closing sets of at most two generators; enough for order <= 64 tests)."""
        found = set()
        for a in range(self.order):
            for b in range(a, self.order):
                found.add(tuple(sorted(self.generated_subgroup([a, b]))))
        return sorted(found, key=lambda s: (len(s), s))

    def subgroup(self, U: Iterable[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """The subgroup ``U`` as a group in its own right.

        Returns ``(H, embed)``; element ``k`` of ``H`` is ``embed[k]`` in this
        group, and ``embed`` is sorted so the identity stays at index 0.
        """
        U = self.check_subgroup(U)
        pos = {u: k for k, u in enumerate(U)}
        T = [[pos[int(self.table[a, b])] for b in U] for a in U]
        gens = {}
        for name, g in self.generators.items():
            if g in pos:
                gens[name] = pos[g]
        H = FiniteGroup(T, None, name=None, check=False)
        if gens and len(H.generated_subgroup(gens.values())) == H.order:
            H.generators = gens
        return H, U

    def right_cosets(self, U: Iterable[int]) -> tuple[list[int], np.ndarray]:
        """Right cosets ``U g``.

        Returns ``(reps, coset_of)`` where ``reps[0] == 0`` and ``coset_of[g]``
        is the index of the coset containing ``g``.  Representatives are the
        smallest element of each coset, listed in increasing order.
        """
        U = self.check_subgroup(U)
        coset_of = np.full(self.order, -1, dtype=np.int64)
        reps: list[int] = []
        for g in range(self.order):
            if coset_of[g] < 0:
                for u in U:
                    coset_of[int(self.table[u, g])] = len(reps)
                reps.append(g)
        return reps, coset_of

    def quotient(self, U: Iterable[int]) -> tuple["FiniteGroup", np.ndarray]:
        """``G/U`` for normal ``U``, with the projection as an index array."""
        U = self.check_subgroup(U)
        if not self.is_normal(U):
            raise NotASubgroup(f"{list(U)} is not normal in {self!r}")
        reps, coset_of = self.right_cosets(U)
        T = [[int(coset_of[self.mul(a, b)]) for b in reps] for a in reps]
        gens = {}
        for name, g in self.generators.items():
            c = int(coset_of[g])
            if c != 0:
                gens[name] = c
        Q = FiniteGroup(T, None, check=False)
        if gens and len(Q.generated_subgroup(gens.values())) == Q.order:
            Q.generators = gens
        return Q, coset_of

    def cyclic_subgroups(self) -> list[tuple[int, ...]]:
        seen = set()
        for g in range(self.order):
            seen.add(tuple(sorted(self.generated_subgroup([g]))))
        return sorted(seen, key=lambda s: (len(s), s))


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


def _reduce_rows(mats: np.ndarray, inv: Sequence[int]) -> np.ndarray:
    if len(inv) == 0:
        return mats
    d = np.asarray(inv, dtype=np.int64)
    return np.mod(mats, d[:, None])


def _check_endomorphism(mat: np.ndarray, inv: Sequence[int]) -> bool:
    d = np.asarray(inv, dtype=np.int64)
    if len(d) == 0:
        return True
    return not np.any(np.mod(mat * d[None, :], d[:, None]))


class GModule:
    """Finite abelian group with a left action of a finite group.

    ``mats[g]`` is the matrix of ``g`` acting on the carrier coordinates; row
    ``i`` is read modulo the ``i``-th invariant factor.
    """

    def __init__(self, group: FiniteGroup, carrier: FinAbGroup, mats, check: bool = True):
        r = carrier.rank
        M = np.asarray(mats, dtype=np.int64).reshape(group.order, r, r)
        self.group = group
        self.carrier = carrier
        self.mats = _reduce_rows(M, carrier.invariant_factors)
        self.mats.setflags(write=False)
        if check:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"GModule({self.group!r}, {self.carrier})"

    @property
    def rank(self) -> int:
        return self.carrier.rank

    @property
    def moduli(self) -> np.ndarray:
        return np.asarray(self.carrier.invariant_factors, dtype=np.int64)

    def check_axioms(self):
        G, d = self.group, self.carrier.invariant_factors
        r = self.rank
        for g in range(G.order):
            if not _check_endomorphism(self.mats[g], d):
                raise ModuleAxiomError(f"matrix of element {g} is not an endomorphism of {self.carrier}")
        if r == 0:
            return
        if not np.array_equal(self.mats[0], np.eye(r, dtype=np.int64) % self.moduli[:, None]):
            raise ModuleAxiomError("the identity element does not act as the identity")
        # A(g) A(h) == A(gh)
        prod_ = np.einsum("aij,bjk->abik", self.mats, self.mats)
        prod_ = np.mod(prod_, self.moduli[None, None, :, None])
        target = self.mats[G.table]
        bad = np.argwhere(np.any(prod_ != target, axis=(2, 3)))
        if len(bad):
            g, h = bad[0]
            raise ModuleAxiomError(f"action is not multiplicative: A({g})A({h}) != A({g}*{h})")

    # -- constructors --------------------------------------------------------

    @classmethod
    def trivial(cls, group: FiniteGroup, carrier: FinAbGroup) -> "GModule":
        r = carrier.rank
        return cls(group, carrier, np.broadcast_to(np.eye(r, dtype=np.int64), (group.order, r, r)),
                   check=False)

    @classmethod
    def from_generators(cls, group: FiniteGroup, carrier: FinAbGroup,
                        gen_mats: Mapping[int, Sequence[Sequence[int]]]) -> "GModule":
        """Extend an assignment on generating elements to the whole group.

        Raises :class:`ModuleAxiomError` naming the offending pair when the
        assignment is not a homomorphism.
        """
        r = carrier.rank
        d = np.asarray(carrier.invariant_factors, dtype=np.int64)
        gm = {}
        for g, m in gen_mats.items():
            A = np.asarray(m, dtype=np.int64).reshape(r, r)
            if r:
                A = np.mod(A, d[:, None])
            if not _check_endomorphism(A, carrier.invariant_factors):
                raise ModuleAxiomError(f"matrix for element {g} is not an endomorphism of {carrier}")
            gm[int(g)] = A
        mats: dict[int, np.ndarray] = {0: np.mod(np.eye(r, dtype=np.int64), d[:, None]) if r else
                                       np.zeros((0, 0), dtype=np.int64)}
        queue = deque([0])
        while queue:
            h = queue.popleft()
            for g, A in gm.items():
                t = group.mul(h, g)
                if t not in mats:
                    B = mats[h] @ A
                    mats[t] = np.mod(B, d[:, None]) if r else B
                    queue.append(t)
        if len(mats) != group.order:
            raise ModuleAxiomError("the given elements do not generate the group")
        full = np.stack([mats[g] for g in range(group.order)]) if r else np.zeros((group.order, 0, 0))
        M = cls(group, carrier, full, check=False)
        for g, A in gm.items():
            if not np.array_equal(M.mats[g], A):
                raise ModuleAxiomError(f"relation violated: the action of element {g} is inconsistent")
        M.check_axioms()
        return M

    @classmethod
    def from_character(cls, chi: "Character") -> "GModule":
        """Rank-one module ``Z/m`` on which ``g`` acts by ``chi(g)``."""
        C = FinAbGroup(chi.modulus) if chi.modulus > 1 else FinAbGroup()
        r = C.rank
        mats = np.array([[[v]] if r else np.zeros((0, 0)) for v in chi.values], dtype=np.int64)
        return cls(chi.group, C, mats.reshape(chi.group.order, r, r))

    def action(self, g: int) -> AbHom:
        return AbHom(self.carrier, self.carrier, self.mats[g].tolist(), check=False)

    def act(self, g: int, x: Sequence[int]) -> tuple[int, ...]:
        return self.action(g)(x)

    def is_trivial_action(self) -> bool:
        r = self.rank
        return bool(np.all(self.mats == np.mod(np.eye(r, dtype=np.int64), self.moduli[:, None]) if r else True))

    def generator_indices(self) -> list[int]:
        gens = list(self.group.generators.values())
        return gens if gens else []

    def direct_sum(self, other: "GModule") -> "GModule":
        return direct_sum_modules(self, other)[0]


@dataclass(frozen=True)
class Character:
    """Multiplicative map ``G -> (Z/m)^x``."""

    group: FiniteGroup
    modulus: int
    values: tuple[int, ...]

    def __init__(self, group: FiniteGroup, modulus: int, values: Sequence[int]):
        m = int(modulus)
        if m < 1:
            raise ValueError("character modulus must be >= 1")
        vals = tuple(int(v) % m for v in values)
        if len(vals) != group.order:
            raise ValueError("one value per group element required")
        if vals[0] != 1 % m:
            raise ValueError("character must send the identity to 1")
        for g in range(group.order):
            if gcd(vals[g], m) != 1:
                raise ValueError(f"value at {g} is not a unit mod {m}")
            for h in range(group.order):
                if (vals[g] * vals[h] - vals[group.mul(g, h)]) % m:
                    raise ValueError(f"character is not multiplicative at ({g}, {h})")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "values", vals)

    def __hash__(self):
        return hash((self.group, self.modulus, self.values))

    @classmethod
    def trivial(cls, group: FiniteGroup, modulus: int) -> "Character":
        return cls(group, modulus, [1] * group.order)

    @classmethod
    def sign(cls, group: FiniteGroup, modulus: int, kernel: Iterable[int]) -> "Character":
        """The character that is ``1`` on an index-2 subgroup and ``-1`` off it."""
        K = set(kernel)
        return cls(group, modulus, [1 if g in K else -1 for g in range(group.order)])

    def reduce(self, m: int) -> "Character":
        if self.modulus % m:
            raise ValueError(f"cannot reduce a character mod {self.modulus} to mod {m}")
        return Character(self.group, m, self.values)


# ---------------------------------------------------------------------------
# Operations on modules
# ---------------------------------------------------------------------------


def _stacked_kernel(M: GModule, maps: list[np.ndarray]) -> tuple[FinAbGroup, AbHom]:
    inv = list(M.carrier.invariant_factors)
    if not maps:
        return M.carrier, AbHom.identity(M.carrier)
    H = np.concatenate(maps, axis=0).tolist()
    gens = _kernel_gens(H, inv, inv * len(maps))
    return subgroup(M.carrier, gens)


def fixed_points(M: GModule) -> tuple[FinAbGroup, AbHom]:
    """``M^G`` with its inclusion into the carrier."""
    r = M.rank
    if r == 0:
        return M.carrier, AbHom.identity(M.carrier)
    I = np.eye(r, dtype=np.int64)
    gens = M.generator_indices() or list(range(M.group.order))
    return _stacked_kernel(M, [M.mats[g] - I for g in gens])


def norm_map(M: GModule) -> AbHom:
    """``N: m -> sum_g g m`` as an endomorphism of the carrier."""
    S = M.mats.sum(axis=0)
    return AbHom(M.carrier, M.carrier, S.tolist(), check=False)


def augmentation_submodule(M: GModule) -> tuple[FinAbGroup, AbHom]:
    """``I_G M``, generated by ``g m - m`` over all ``g`` and carrier generators."""
    r = M.rank
    if r == 0:
        return M.carrier, AbHom.identity(M.carrier)
    I = np.eye(r, dtype=np.int64)
    gens = []
    for g in range(M.group.order):
        D = np.mod(M.mats[g] - I, M.moduli[:, None])
        gens.extend(D[:, j].tolist() for j in range(r))
    return subgroup(M.carrier, gens)


def dual_module(M: GModule) -> GModule:
    """Pontryagin dual with the contragredient action ``(g f)(m) = f(g^-1 m)``.

    The dual basis ``f_i(e_j) = delta_ij / d_i`` identifies ``Hom(M, Q/Z)``
    with a group with the same invariant factors; in these coordinates ``g``
    acts by ``diag(d) A(g^-1)^T diag(d)^-1``.
    """
    d = M.moduli
    G = M.group
    r = M.rank
    out = np.zeros_like(M.mats)
    for g in range(G.order):
        A = M.mats[G.inv(g)]
        if r:
            # entry (j, i) = d_j * A_ij / d_i, exact by well-definedness of A
            num = A.T * d[:, None]
            out[g] = num // d[None, :]
    return GModule(G, M.carrier, out, check=True)


def twist(M: GModule, chi: Character) -> GModule:
    """Multiply the action by the scalar character ``chi``."""
    if chi.group != M.group:
        raise ValueError("character lives on a different group")
    e = M.carrier.exponent
    if chi.modulus % e:
        raise ValueError(f"character modulus {chi.modulus} is not a multiple of the exponent {e}")
    vals = np.asarray([v % e for v in chi.values], dtype=np.int64)
    return GModule(M.group, M.carrier, M.mats * vals[:, None, None], check=True)


def cyclotomic_twist_dual(M: GModule, chi: Character) -> GModule:
    """``M*(1)``: the dual twisted by ``chi`` (reduced to the carrier exponent)."""
    D = dual_module(M)
    e = M.carrier.exponent
    return twist(D, Character(chi.group, e, chi.values))


def restrict_module(M: GModule, U: Iterable[int]) -> GModule:
    """Restriction of ``M`` to the subgroup ``U`` (relabelled as in :meth:`FiniteGroup.subgroup`)."""
    H, embed = M.group.subgroup(U)
    return GModule(H, M.carrier, M.mats[list(embed)], check=False)


@dataclass
class InducedModule:
    """``Ind_U^G M`` realized on right coset representatives.

    Coordinates are blocked by coset: block ``i`` holds ``phi(reps[i])``.
    Unlike the other constructions, the carrier is the plain direct sum of
    ``[G:U]`` copies of ``M``'s normal form; ``module`` carries it in normal
    form together with the coordinate conversions.
    """

    module: GModule
    reps: list[int]
    coset_of: np.ndarray
    subgroup: tuple[int, ...]
    base: GModule
    to_blocks: np.ndarray      # normal-form coords -> blocked coords
    from_blocks: np.ndarray    # blocked coords -> normal-form coords


def _blocked_normal_form(base: FinAbGroup, copies: int):
    """Normal form of ``base^copies`` and the permutation to/from block coordinates."""
    r = base.rank
    inv = base.invariant_factors
    # normal form orders each invariant factor ``copies`` times: factor-major
    C = FinAbGroup(*[d for d in inv for _ in range(copies)])
    n = r * copies
    to_blocks = np.zeros((n, n), dtype=np.int64)
    for i in range(r):
        for b in range(copies):
            to_blocks[b * r + i, i * copies + b] = 1
    return C, to_blocks, to_blocks.T.copy()


def induce(G: FiniteGroup, U: Iterable[int], M: GModule) -> InducedModule:
    """``Ind_U^G M = Hom_{Z[U]}(Z[G], M)`` with ``(g phi)(x) = phi(x g)``.

    ``M`` is a module over ``G.subgroup(U)``.
    """
    H, embed = G.subgroup(U)
    if M.group != H:
        raise ValueError("module must be defined over the subgroup as returned by G.subgroup(U)")
    pos = {u: k for k, u in enumerate(embed)}
    reps, coset_of = G.right_cosets(embed)
    k = len(reps)
    r = M.rank
    C, to_b, from_b = _blocked_normal_form(M.carrier, k)
    blocked = np.zeros((G.order, k * r, k * r), dtype=np.int64)
    for g in range(G.order):
        for i, ri in enumerate(reps):
            x = G.mul(ri, g)
            j = int(coset_of[x])
            u = G.mul(x, G.inv(reps[j]))
            blocked[g, i * r:(i + 1) * r, j * r:(j + 1) * r] = M.mats[pos[u]]
    mats = np.einsum("ij,gjk,kl->gil", from_b, blocked, to_b)
    mod = GModule(G, C, mats, check=True)
    return InducedModule(mod, reps, coset_of, tuple(embed), M, to_b, from_b)


def induced_module(G: FiniteGroup, U: Iterable[int], M: GModule) -> GModule:
    return induce(G, U, M).module


def evaluation_map(ind: InducedModule) -> AbHom:
    """``phi -> phi(e)``, a U-map from ``Ind M`` to ``M``."""
    r = ind.base.rank
    k = len(ind.reps)
    sel = np.zeros((r, k * r), dtype=np.int64)
    sel[:, :r] = np.eye(r, dtype=np.int64)
    mat = sel @ ind.to_blocks
    return AbHom(ind.module.carrier, ind.base.carrier, mat.tolist(), check=False)


def trace_map(ind: InducedModule, M: GModule) -> AbHom:
    """G-map ``Ind_U^G(Res M) -> M``, ``phi -> sum_x x phi(x^-1)`` over left cosets ``xU``."""
    G = M.group
    pos = {u: k for k, u in enumerate(ind.subgroup)}
    r = M.rank
    k = len(ind.reps)
    blocked = np.zeros((r, k * r), dtype=np.int64)
    for rep in ind.reps:
        x = G.inv(rep)                    # r^-1 runs over left coset reps
        y = G.inv(x)                      # phi(x^-1) = phi(u r_j) = u phi(r_j)
        j = int(ind.coset_of[y])
        u = G.mul(y, G.inv(ind.reps[j]))
        blocked[:, j * r:(j + 1) * r] += M.mats[x] @ ind.base.mats[pos[u]]
    mat = blocked @ ind.to_blocks
    return AbHom(ind.module.carrier, M.carrier, mat.tolist(), check=False)


def is_equivariant(f: AbHom, A: GModule, B: GModule) -> bool:
    F = hom_matrix(f)
    for g in range(A.group.order):
        lhs = F @ A.mats[g]
        rhs = B.mats[g] @ F
        if B.rank and np.any(np.mod(lhs - rhs, B.moduli[:, None])):
            return False
    return True


def direct_sum_modules(A: GModule, B: GModule):
    """``A + B`` with inclusions and projections (as AbHoms)."""
    if A.group != B.group:
        raise ValueError("modules over different groups")
    S, incs, projs = direct_sum_with_maps(A.carrier, B.carrier)
    I = [hom_matrix(h) for h in incs]
    P = [hom_matrix(h) for h in projs]
    mats = np.zeros((A.group.order, S.rank, S.rank), dtype=np.int64)
    for g in range(A.group.order):
        mats[g] = I[0] @ A.mats[g] @ P[0] + I[1] @ B.mats[g] @ P[1]
    return GModule(A.group, S, mats, check=True), incs, projs


def _solve_columns(inc: AbHom, targets: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = []
    for y in targets:
        x = hom_preimage(inc, y)
        if x is None:
            raise ModuleAxiomError("subgroup is not stable under the action")
        out.append(x)
    return out


def submodule(M: GModule, gens: Sequence[Sequence[int]]) -> tuple[GModule, AbHom]:
    """G-submodule generated by ``gens`` (closed under the action) with its inclusion."""
    vecs = [list(M.carrier.reduce(v)) for v in gens]
    seen = {tuple(v) for v in vecs}
    frontier = list(vecs)
    while frontier:
        new = []
        for v in frontier:
            for g in range(M.group.order):
                w = M.act(g, v)
                if w not in seen:
                    seen.add(w)
                    new.append(list(w))
        vecs += new
        frontier = new
        if len(vecs) > 4 * M.carrier.order:
            break
    S, inc = subgroup(M.carrier, vecs)
    return module_on_subgroup(M, S, inc), inc


def module_on_subgroup(M: GModule, S: FinAbGroup, inc: AbHom) -> GModule:
    """Restrict the action to a G-stable subgroup given by its inclusion."""
    mats = np.zeros((M.group.order, S.rank, S.rank), dtype=np.int64)
    for g in range(M.group.order):
        cols = _solve_columns(inc, [M.act(g, inc.matrix.column(j)) for j in range(S.rank)])
        for j, c in enumerate(cols):
            mats[g, :, j] = c
    return GModule(M.group, S, mats, check=True)


def quotient_module(M: GModule, gens: Sequence[Sequence[int]]) -> tuple[GModule, AbHom]:
    """``M / <gens>`` for a G-stable subgroup, with the projection."""
    Q, proj, lifts = quotient_with_lifts(M.carrier, [M.carrier.reduce(v) for v in gens])
    mats = np.zeros((M.group.order, Q.rank, Q.rank), dtype=np.int64)
    for g in range(M.group.order):
        for j, x in enumerate(lifts):
            mats[g, :, j] = proj(M.act(g, x))
    N = GModule(M.group, Q, mats, check=False)
    # stability: the action must preserve the subgroup
    for v in gens:
        for g in range(M.group.order):
            if any(proj(M.act(g, v))):
                raise ModuleAxiomError("subgroup is not stable under the action")
    N.check_axioms()
    return N, proj


def fixed_module(M: GModule, U: Iterable[int]) -> tuple[GModule, AbHom, np.ndarray]:
    """``M^U`` as a module over ``G/U`` (``U`` normal).

    Returns ``(module over G/U, inclusion M^U -> M, projection G -> G/U)``.
    """
    G = M.group
    U = G.check_subgroup(U)
    Q, proj = G.quotient(U)
    Mu = restrict_module(M, U)
    F, inc = fixed_points(Mu)
    reps, _ = G.right_cosets(U)
    mats = np.zeros((Q.order, F.rank, F.rank), dtype=np.int64)
    for c, g in enumerate(reps):
        cols = _solve_columns(inc, [M.act(g, inc.matrix.column(j)) for j in range(F.rank)])
        for j, col in enumerate(cols):
            mats[c, :, j] = col
    return GModule(Q, F, mats, check=True), inc, proj


def hom_matrix(f: AbHom) -> np.ndarray:
    rows = f.matrix.tolist()
    out = np.zeros((f.codomain.rank, f.domain.rank), dtype=np.int64)
    if rows and f.domain.rank:
        out[:] = rows
    return out
