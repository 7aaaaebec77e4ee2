"""Closed-form invariants of a p-adic field given by ``(p, e, f, a)``.

The field itself is never constructed.  ``e`` and ``f`` are the
ramification index and residue degree, and ``a`` is the largest exponent
with ``mu_{p^a}`` contained in the field; it is supplied by the caller
because ``(p, e, f)`` does not determine it.

>>> K = LocalFieldModel(2, 1, 1, 1)
>>> kummer_dims(K, 2)
3
>>> teichmuller(2, 5, 2)
7
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, multiplicity

from .cohomology import Check


class InvalidField(ValueError):
    pass


@dataclass(frozen=True)
class LocalFieldModel:
    p: int
    e: int
    f: int
    a: int = 0

    def __post_init__(self):
        if not isprime(self.p):
            raise InvalidField(f"residue characteristic {self.p} is not prime")
        if self.e < 1 or self.f < 1 or self.a < 0:
            raise InvalidField("need e >= 1, f >= 1, a >= 0")
        if self.a >= 1 and self.e % (self.p ** (self.a - 1) * (self.p - 1)):
            raise InvalidField(
                f"mu_{self.p}^{self.a} forces p^(a-1)(p-1) = {self.p ** (self.a - 1) * (self.p - 1)} "
                f"to divide e = {self.e}")

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def residue_size(self) -> int:
        return self.p ** self.f


@dataclass(frozen=True)
class KummerProfile:
    l: int
    h0: int
    h1: int
    h2: int

    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2


def module_norm(K: LocalFieldModel, m: int) -> Fraction:
    """``[O_K : m O_K]^{-1} = p^{-v_p(m) e f}``."""
    if m <= 0:
        raise ValueError("module norm needs a positive integer")
    k = multiplicity(K.p, m)
    return Fraction(1, K.p ** (k * K.degree))


def mu_l_dim(K: LocalFieldModel, l: int) -> int:
    """``dim_{F_l} mu_l(K)``: 0 or 1."""
    if not isprime(l):
        raise ValueError(f"{l} is not prime")
    if l == K.p:
        return int(K.a >= 1)
    return int((K.residue_size - 1) % l == 0)


def kummer_dims(K: LocalFieldModel, l: int) -> int:
    """``dim K^x / (K^x)^l``."""
    mu = mu_l_dim(K, l)
    return 1 + K.degree + mu if l == K.p else 1 + mu


def trivial_case_profile(K: LocalFieldModel, l: int, coefficients: str = "trivial") -> KummerProfile:
    """Dimensions of ``H^0, H^1, H^2`` with coefficients ``F_l`` or ``mu_l``."""
    mu, kd = mu_l_dim(K, l), kummer_dims(K, l)
    if coefficients == "trivial":
        return KummerProfile(l, 1, kd, mu)
    if coefficients == "cyclotomic":
        return KummerProfile(l, mu, kd, 1)
    raise ValueError("coefficients must be 'trivial' or 'cyclotomic'")


def chi_predicted(K: LocalFieldModel, l: int, length: int) -> int:
    if length < 0:
        raise ValueError("length must be non-negative")
    return -K.degree * length if l == K.p else 0


def verify_local_euler_trivial(K: LocalFieldModel, l: int) -> list[Check]:
    out = []
    for coeff in ("trivial", "cyclotomic"):
        prof = trivial_case_profile(K, l, coeff)
        pred = chi_predicted(K, l, 1)
        out.append(Check(f"chi({'F' if coeff == 'trivial' else 'mu'}_{l}) over "
                         f"(p,e,f,a)=({K.p},{K.e},{K.f},{K.a})", prof.chi == pred, prof.chi, pred))
    return out


def teichmuller(a0: int, p: int, k: int) -> int:
    """The ``(p-1)``-st root of unity mod ``p^k`` congruent to ``a0``: fixpoint of ``x -> x^p``."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("precision must be >= 1")
    if a0 % p == 0:
        raise ValueError("residue must be a unit")
    q = p ** k
    x = a0 % q
    while True:
        y = pow(x, p, q)
        if y == x:
            return x
        x = y
