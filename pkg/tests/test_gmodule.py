import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galcoh.abelian import FinAbGroup
from galcoh.gmodule import (Character, FiniteGroup, GModule, GroupAxiomError, ModuleAxiomError,
                            NotASubgroup, augmentation_submodule, dual_module, fixed_points,
                            induced_module, norm_map, restrict_module, twist)
from galcoh.suites import random_module, small_groups

C2, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(4)


def inversion(G, n):
    return GModule.from_generators(G, FinAbGroup(n), {G.cyclic_generator(): [[-1]]})


def elements_of(H, inc):
    return {inc(x) for x in H.elements()}


def test_group_axioms_rejected():
    with pytest.raises(GroupAxiomError):
        FiniteGroup([[0, 1], [0, 1]])


def test_action_must_be_multiplicative():
    # the generator of Z/2 cannot act by an element of order 4
    with pytest.raises(ModuleAxiomError):
        GModule.from_generators(C2, FinAbGroup(5), {1: [[2]]})


def test_fixed_points_examples():
    assert fixed_points(GModule.trivial(C2, FinAbGroup(6)))[0] == FinAbGroup(6)
    assert fixed_points(inversion(C2, 3))[0] == FinAbGroup()
    F, inc = fixed_points(inversion(C2, 4))
    assert F == FinAbGroup(2) and elements_of(F, inc) == {(0,), (2,)}


def test_norm_examples():
    assert norm_map(GModule.trivial(C2, FinAbGroup(4)))((1,)) == (2,)
    assert norm_map(inversion(C2, 4)).is_zero()
    N = norm_map(GModule.trivial(FiniteGroup.trivial(), FinAbGroup(5)))
    assert all(N(x) == x for x in FinAbGroup(5).elements())


def test_augmentation_examples():
    assert augmentation_submodule(GModule.trivial(C2, FinAbGroup(6)))[0] == FinAbGroup()
    S, inc = augmentation_submodule(inversion(C2, 4))
    assert elements_of(S, inc) == {(0,), (2,)}
    swap = GModule.from_generators(C2, FinAbGroup(2, 2), {1: [[0, 1], [1, 0]]})
    S, inc = augmentation_submodule(swap)
    assert elements_of(S, inc) == {(0, 0), (1, 1)}


def test_dual_examples():
    D = dual_module(GModule.trivial(C2, FinAbGroup(5)))
    assert D.carrier == FinAbGroup(5) and D.is_trivial_action()
    D = dual_module(inversion(C2, 3))
    assert D.act(1, (1,)) == (2,)


def test_twist_examples():
    M = inversion(C2, 3)
    assert np.array_equal(twist(M, Character.trivial(C2, 3)).mats, M.mats)
    conj = Character(C2, 2, [1, -1])
    assert twist(dual_module(GModule.trivial(C2, FinAbGroup(2))), conj).is_trivial_action()
    T = twist(dual_module(GModule.trivial(C2, FinAbGroup(3))), Character(C2, 3, [1, -1]))
    assert T.act(1, (1,)) == (2,)


def test_induced_examples():
    M = GModule.from_generators(C4, FinAbGroup(5), {1: [[2]]})
    assert induced_module(C4, range(4), M).carrier == FinAbGroup(5)
    H, _ = C4.subgroup([0])
    reg = induced_module(C4, [0], GModule.trivial(H, FinAbGroup(2)))
    assert reg.carrier == FinAbGroup(2, 2, 2, 2)
    # the generator permutes the four coordinates cyclically
    orbit = {reg.act(g, (1, 0, 0, 0)) for g in range(4)}
    assert len(orbit) == 4 and all(sum(v) == 1 for v in orbit)
    H, _ = C4.subgroup([0, 2])
    assert induced_module(C4, [0, 2], GModule.trivial(H, FinAbGroup(2))).carrier.order == 4


def test_restrict_examples():
    M = GModule.from_generators(C4, FinAbGroup(5), {1: [[2]]})
    assert np.array_equal(restrict_module(M, range(4)).mats, M.mats)
    assert restrict_module(M, [0]).is_trivial_action()
    R = restrict_module(M, [0, 2])
    assert R.group.order == 2 and R.act(1, (1,)) == (4,)      # 2^2 = -1 mod 5
    with pytest.raises(NotASubgroup):
        restrict_module(M, [0, 1])


def _same_action_up_to_basis(A, B):
    """Same invariant factors and isomorphic as modules, checked by brute force on small carriers."""
    if A.carrier != B.carrier:
        return False
    from galcoh.inventory import automorphisms
    for P in automorphisms(A.carrier):
        Pm = np.asarray(P, dtype=np.int64)
        if all(np.array_equal(np.mod(Pm @ A.mats[g], A.moduli[:, None]),
                              np.mod(B.mats[g] @ Pm, A.moduli[:, None])) for g in range(A.group.order)):
            return True
    return False


groups = st.sampled_from(small_groups(6))


@given(groups, st.integers(0, 2 ** 32 - 1))
def test_module_axioms_and_dual(G, seed):
    M = random_module(G, np.random.default_rng(seed), max_order=12)
    M.check_axioms()
    D = dual_module(M)
    D.check_axioms()
    assert D.carrier == M.carrier
    assert _same_action_up_to_basis(dual_module(D), M)


@given(groups, st.integers(0, 2 ** 32 - 1))
def test_norm_lands_in_fixed_points_and_kills_augmentation(G, seed):
    M = random_module(G, np.random.default_rng(seed), max_order=16)
    N = norm_map(M)
    F, inc = fixed_points(M)
    fixed = elements_of(F, inc)
    assert all(N(x) in fixed for x in M.carrier.elements())
    S, sinc = augmentation_submodule(M)
    zero = M.carrier.zero()
    assert all(N(sinc(x)) == zero for x in S.elements())


@given(st.integers(2, 6), st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]),
       st.data())
def test_cyclic_fixed_dims_match_dual(m, pd, data):
    p, d = pd
    G = FiniteGroup.cyclic(m)
    A = FinAbGroup(*[p] * d)
    from galcoh.inventory import periodic_automorphisms
    choices = periodic_automorphisms(A, m)
    s = data.draw(st.sampled_from(choices))
    M = GModule.from_generators(G, A, {1: s})
    assert fixed_points(M)[0] == fixed_points(dual_module(M))[0]


@given(groups, st.integers(0, 2 ** 32 - 1), st.data())
def test_induced_order(G, seed, data):
    U = data.draw(st.sampled_from(G.subgroups()))
    H, _ = G.subgroup(U)
    M = random_module(H, np.random.default_rng(seed), max_order=4)
    ind = induced_module(G, U, M)
    assert ind.carrier.order == M.carrier.order ** (G.order // len(U))
