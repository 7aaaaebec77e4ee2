"""Archimedean places: the Euler formula over R and C and the global ledger.

A real place is a module over the group of order two (complex conjugation);
a complex place is a bare finite abelian group with trivial Galois group.
Norms use ``|n|_v = n^[K_v:R]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint

from .abelian import FinAbGroup
from .cohomology import Check, cohomology, tate_cohomology
from .gmodule import Character, FiniteGroup, GModule, dual_module, twist
from .inventory import abelian_groups, involutions

MAX_ENUM_ORDER = 32
CONJ = FiniteGroup.cyclic(2)


class InvalidPlace(ValueError):
    pass


@dataclass
class ArchPlace:
    kind: str
    module: GModule | None = None
    carrier: FinAbGroup | None = None

    def __post_init__(self):
        if self.kind == "real":
            if self.module is None or self.module.group.order != 2:
                raise InvalidPlace("a real place needs a module over the group of order 2")
            s = self.module.mats[1]
            sq = np.mod(s @ s, self.module.moduli[:, None]) if self.module.rank else s
            if self.module.rank and not np.array_equal(sq, self.module.mats[0]):
                raise InvalidPlace("conjugation does not act as an involution")
            self.carrier = self.module.carrier
        elif self.kind == "complex":
            if self.carrier is None:
                if self.module is None:
                    raise InvalidPlace("a complex place needs a carrier")
                self.carrier = self.module.carrier
            self.module = GModule.trivial(FiniteGroup.trivial(), self.carrier)
        else:
            raise InvalidPlace(f"unknown place kind {self.kind!r}")

    @classmethod
    def real(cls, carrier: FinAbGroup, involution) -> "ArchPlace":
        mats = np.stack([np.eye(carrier.rank, dtype=np.int64),
                         np.asarray(involution, dtype=np.int64).reshape(carrier.rank, carrier.rank)])
        return cls("real", GModule(CONJ, carrier, mats))

    @classmethod
    def complex(cls, carrier: FinAbGroup) -> "ArchPlace":
        return cls("complex", carrier=carrier)

    @property
    def local_degree(self) -> int:
        """``[K_v : R]``."""
        return 1 if self.kind == "real" else 2

    def twisted_dual(self) -> GModule:
        """``M*(1)``: the dual with conjugation acting additionally by ``-1``."""
        M = self.module
        if self.kind == "complex":
            return M
        e = M.carrier.exponent
        return twist(dual_module(M), Character(CONJ, e, [1, -1]))


def _h_orders(place: ArchPlace) -> tuple[int, int, int]:
    M = place.module
    return (cohomology(M, 0).order, cohomology(place.twisted_dual(), 0).order, cohomology(M, 1).order)


def arch_euler_check(place: ArchPlace, exponent: int | None = None) -> Check:
    """``|H^0(M)| |H^0(M*(1))| / |H^1(M)| = |M|^exponent``; exponent defaults to ``[K_v:R]``."""
    h0, h0d, h1 = _h_orders(place)
    lhs = Fraction(h0 * h0d, h1)
    k = place.local_degree if exponent is None else exponent
    rhs = place.carrier.order ** k
    return Check(f"{place.kind} place, M = {place.carrier}", lhs == rhs, str(lhs), rhs)


def arch_euler_check_global_degree(place: ArchPlace, global_degree: int = 2) -> Check:
    """The same identity with ``|M|^[K:Q]`` on the right (a deliberately wrong exponent)."""
    chk = arch_euler_check(place, exponent=global_degree)
    return Check(f"[K:Q]={global_degree} exponent, " + chk.name, chk.passed, chk.lhs, chk.rhs)


def _length(order: int) -> int:
    return sum(factorint(order).values()) if order > 1 else 0


def arch_tate_chi(place: ArchPlace) -> int:
    """Alternating sum of lengths of the Tate groups in degrees 0, 1, 2.

    Raises ``AssertionError`` if it differs from ``length H^1``, which the
    cyclic identities force.
    """
    if place.kind == "complex":
        return 0
    M = place.module
    lens = [_length(tate_cohomology(M, n).order) for n in (0, 1, 2)]
    chi = lens[0] - lens[1] + lens[2]
    h1 = _length(cohomology(M, 1).order)
    if chi != h1:
        raise AssertionError(f"alternating Tate sum {chi} != length H^1 = {h1}")
    return chi


def arch_tate_chi_check(place: ArchPlace) -> Check:
    if place.kind == "complex":
        return Check("complex place chi_v", True, 0, 0)
    M = place.module
    lens = [_length(tate_cohomology(M, n).order) for n in (0, 1, 2)]
    chi = lens[0] - lens[1] + lens[2]
    h1 = _length(cohomology(M, 1).order)
    return Check(f"chi_v = length H^1 for M = {place.carrier}", chi == h1, chi, h1)


def global_rhs(places: Sequence[ArchPlace], m: int) -> Fraction:
    """Product over archimedean places of ``|H^0(G_v, M)| / |M|^[K_v:R]``."""
    out = Fraction(1)
    for v in places:
        if v.carrier.order != m:
            raise InvalidPlace(f"place carries a module of order {v.carrier.order}, expected {m}")
        out *= Fraction(cohomology(v.module, 0).order, m ** v.local_degree)
    return out


@dataclass
class GlobalLedger:
    """Caller-supplied global orders checked against the archimedean side."""

    places: list[ArchPlace]
    module_order: int
    orders: tuple[int, int, int]
    dual_orders: tuple[int, int, int] | None = None

    def __post_init__(self):
        vals = list(self.orders) + list(self.dual_orders or ())
        if any(v < 1 for v in vals) or self.module_order < 1:
            raise ValueError("orders must be >= 1")


def global_ledger_check(ledger: GlobalLedger) -> tuple[list[Check], dict]:
    """Check the global formula on supplied orders; also report the archimedean chi terms."""
    h0, h1, h2 = ledger.orders
    lhs = Fraction(h0 * h2, h1)
    rhs = global_rhs(ledger.places, ledger.module_order)
    checks = [Check("|H^0||H^2|/|H^1| = prod_v |H^0(G_v)|/||M||_v", lhs == rhs, str(lhs), str(rhs))]
    info = {"archimedean_chi_sum": sum(arch_tate_chi(v) for v in ledger.places)}
    if ledger.dual_orders is not None:
        d0, d1, d2 = ledger.dual_orders
        info["chi_M_plus_chi_dual"] = (_length(h0) - _length(h1) + _length(h2)
                                      + _length(d0) - _length(d1) + _length(d2))
    return checks, info


# ---------------------------------------------------------------------------


def enumerate_involution_modules(max_order: int, dedup: bool = True,
                                 cap: int = MAX_ENUM_ORDER) -> Iterator[ArchPlace]:
    """Real places for every abelian group of order ``<= max_order`` and involution on it."""
    if max_order > cap:
        raise ValueError(f"max_order {max_order} exceeds the enumeration cap {cap}")
    for n in range(1, max_order + 1):
        for A in abelian_groups(n):
            for s in involutions(A, dedup):
                yield ArchPlace.real(A, s)
