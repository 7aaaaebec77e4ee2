import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import divisor_count

from galcoh.gmodule import FiniteGroup
from galcoh.inventory import general_linear, modular_modules
from galcoh.reptheory import (GrothClass, ModularModule, composition_series, cyclic_prime_to_l_subgroups,
                              direct_sum, find_simple_submodule, groth_class, induced_class,
                              is_simple, module_iso_test, semisimplify, spin)

C2, C3, C4, C6 = (FiniteGroup.cyclic(n) for n in (2, 3, 4, 6))
ROT = [[0, 1], [1, 1]]          # order 3 on F_2^2


def rot():
    return ModularModule.from_generators(C3, 2, {1: ROT})


def rot_plus_trivial():
    return ModularModule.from_generators(C3, 2, {1: [[0, 1, 0], [1, 1, 0], [0, 0, 1]]})


def brute_iso(A, B):
    """Search GL_d(F_l) for an intertwiner."""
    if A.dimension != B.dimension:
        return False
    if A.dimension == 0:
        return True
    l = A.l
    for P in general_linear(l, A.dimension):
        if all(np.array_equal(np.mod(P @ A.mats[g], l), np.mod(B.mats[g] @ P, l))
               for g in range(A.group.order)):
            return True
    return False


def brute_invariant_subspaces(M):
    """Count nonzero proper invariant subspaces by closing every vector set under the action."""
    l, d = M.l, M.dimension
    vecs = [np.array(v) for v in np.ndindex(*([l] * d))]
    seen = set()
    for v in vecs:
        if not v.any():
            continue
        span = {tuple(int(x) for x in v)}
        while True:
            arr = [np.array(w) for w in span]
            bigger = span | {tuple(int(x) for x in np.mod(M.mats[g] @ w, l))
                             for w in arr for g in range(M.group.order)}
            bigger |= {tuple(int(x) for x in np.mod(w + u, l)) for w in arr for u in arr}
            if bigger == span:
                break
            span = bigger
        if len(span) < l ** d:
            seen.add(frozenset(span))
    return len(seen)


def test_simple_submodule_examples():
    S, _ = find_simple_submodule(ModularModule.trivial(C2, 3, 3))
    assert S.dimension == 1
    assert find_simple_submodule(rot())[0].dimension == 2 and is_simple(rot())
    inv = ModularModule.from_generators(C2, 3, {1: [[2]]})
    assert find_simple_submodule(inv)[0].dimension == 1
    with pytest.raises(ValueError):
        find_simple_submodule(ModularModule.trivial(C2, 3, 0))


def test_simplicity_matches_brute_force():
    for G, l in [(C3, 2), (C2, 3), (C4, 2), (FiniteGroup.symmetric(3), 2)]:
        for d in (1, 2, 3):
            for M in modular_modules(G, l, d):
                assert is_simple(M) == (brute_invariant_subspaces(M) == 0)


def test_composition_series_examples():
    assert [S.dimension for S in composition_series(rot())] == [2]
    assert [S.dimension for S in composition_series(ModularModule.trivial(C2, 2, 2))] == [1, 1]
    factors = composition_series(rot_plus_trivial())
    assert sorted(S.dimension for S in factors) == [1, 2]
    two = next(S for S in factors if S.dimension == 2)
    assert module_iso_test(two, rot())


def test_semisimplify_examples():
    ss = semisimplify(rot_plus_trivial())
    assert ss.dimension == 3
    assert module_iso_test(ss, rot_plus_trivial())      # already semisimple
    # a non-split extension: the unipotent Jordan block over F_2 for Z/2
    J = ModularModule.from_generators(C2, 2, {1: [[1, 1], [0, 1]]})
    assert not module_iso_test(semisimplify(J), J)
    assert module_iso_test(semisimplify(J), ModularModule.trivial(C2, 2, 2))


def test_groth_class_examples():
    T = ModularModule.trivial(C3, 2, 1)
    assert groth_class(ModularModule.trivial(C3, 2, 2)) == groth_class(T).scale(2)
    assert groth_class(rot()) != groth_class(T).scale(2)
    assert groth_class(direct_sum(rot(), T)) == groth_class(rot()) + groth_class(T)


def test_iso_examples():
    assert module_iso_test(rot(), rot())
    assert not module_iso_test(rot(), ModularModule.trivial(C3, 2, 1))
    assert not module_iso_test(rot(), ModularModule.trivial(C3, 2, 2))


def test_iso_matches_brute_force():
    mods = [M for d in (1, 2) for M in modular_modules(C4, 3, d)]
    mods += modular_modules(FiniteGroup.symmetric(3), 2, 2)
    for A in mods:
        for B in mods:
            if A.group == B.group:
                assert module_iso_test(A, B) == brute_iso(A, B)


def test_cyclic_prime_to_l_examples():
    assert cyclic_prime_to_l_subgroups(C4, 2) == [(0,)]
    assert sorted(map(len, cyclic_prime_to_l_subgroups(C6, 2))) == [1, 3]
    assert cyclic_prime_to_l_subgroups(FiniteGroup.trivial(), 5) == [(0,)]


def test_induced_class_examples():
    T = ModularModule.trivial(C2, 3, 1)
    sign = ModularModule.from_generators(C2, 3, {1: [[2]]})
    assert induced_class(C2, range(2), groth_class(T)) == groth_class(T)
    E, _ = C2.subgroup([0])
    reg = induced_class(C2, [0], groth_class(ModularModule.trivial(E, 3, 1)))
    assert reg == groth_class(T) + groth_class(sign)
    E3, _ = C3.subgroup([0])
    reg2 = induced_class(C3, [0], groth_class(ModularModule.trivial(E3, 2, 1)))
    assert reg2 == groth_class(ModularModule.trivial(C3, 2, 1)) + groth_class(rot())


def _shuffled(M, seed):
    return composition_series(M, seed=seed)


@given(st.sampled_from([(C3, 2), (C2, 3), (C4, 3), (C6, 5)]), st.integers(1, 3), st.data())
def test_jordan_holder_invariance(Gl, d, data):
    G, l = Gl
    M = data.draw(st.sampled_from(modular_modules(G, l, d)))
    base = groth_class(M)
    assert sum(S.dimension for S in composition_series(M)) == d
    for seed in data.draw(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=3)):
        cls = GrothClass(l, G)
        for S in _shuffled(M, seed):
            cls.add_simple(S)
        assert cls == base


@given(st.sampled_from([(C3, 2), (C2, 3), (C4, 3)]), st.integers(1, 3), st.data())
def test_semisimplify_idempotent(Gl, d, data):
    G, l = Gl
    M = data.draw(st.sampled_from(modular_modules(G, l, d)))
    ss = semisimplify(M)
    assert groth_class(semisimplify(ss)) == groth_class(ss) == groth_class(M)


@given(st.sampled_from([(C3, 2), (C2, 3), (C4, 3), (C6, 5)]), st.integers(1, 4), st.data())
def test_additivity_over_spun_submodule(Gl, d, data):
    G, l = Gl
    mods = modular_modules(G, l, d)
    if not mods:
        return
    M = data.draw(st.sampled_from(mods))
    v = data.draw(st.lists(st.integers(0, l - 1), min_size=d, max_size=d))
    if not any(v):
        return
    from galcoh.reptheory import _quotient, _restrict
    basis = spin(M, v)
    assert groth_class(M) == groth_class(_restrict(M, basis)) + groth_class(_quotient(M, basis))


@pytest.mark.parametrize("m,l", [(2, 3), (3, 2), (4, 3), (5, 2), (6, 5)])
def test_simple_class_count_bounded_by_divisors(m, l):
    G = FiniteGroup.cyclic(m)
    classes = GrothClass(l, G)
    for d in (1, 2, 3):
        for M in modular_modules(G, l, d):
            for S in composition_series(M):
                classes.add_simple(S)
    assert len(classes.entries) <= divisor_count(m)
