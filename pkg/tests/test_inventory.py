import numpy as np
import pytest
from sympy import Matrix

from galcoh.abelian import FinAbGroup
from galcoh.gmodule import FiniteGroup
from galcoh.inventory import (abelian_groups, automorphisms, general_linear, modular_modules,
                              periodic_automorphisms, rational_canonical_forms)


@pytest.mark.parametrize("n,count", [(1, 1), (8, 3), (16, 5), (12, 2), (36, 4), (32, 7)])
def test_abelian_group_counts(n, count):
    groups = abelian_groups(n)
    assert len(groups) == count and all(G.order == n for G in groups)
    assert len(set(groups)) == count


@pytest.mark.parametrize("inv,count", [((2,), 1), ((3,), 2), ((4,), 2), ((2, 2), 6), ((2, 4), 8),
                                       ((3, 3), 48), ((2, 2, 2), 168)])
def test_automorphism_counts(inv, count):
    assert len(automorphisms(FinAbGroup(*inv))) == count


def test_general_linear_sizes():
    assert len(general_linear(2, 2)) == 6
    assert len(general_linear(3, 2)) == 48
    assert general_linear(5, 4) is None


def test_rational_canonical_forms_cover_conjugacy_classes():
    # brute force: conjugacy classes of elements of GL_2(F_3) of order dividing 4
    GL = general_linear(3, 2)
    l = 3
    inv = {k: np.array(Matrix(P.tolist()).inv_mod(l).tolist(), dtype=int) for k, P in enumerate(GL)}
    seen, classes = set(), 0
    for X in GL:
        if not np.array_equal(np.linalg.matrix_power(X, 4) % l, np.eye(2, dtype=int)):
            continue
        key = X.tobytes()
        if key in seen:
            continue
        classes += 1
        for k, P in enumerate(GL):
            seen.add(np.mod(P @ X @ inv[k], l).astype(X.dtype).tobytes())
    assert len(rational_canonical_forms(3, 2, 4)) == classes


@pytest.mark.parametrize("m,d,counts", [(6, 3, [1, 2, 5, 10, 18])])
def test_cyclic_module_counts(m, d, counts):
    G = FiniteGroup.cyclic(m)
    assert [len(modular_modules(G, d, k)) for k in range(5)] == counts


def test_klein_four_counts_match_semisimple_prediction():
    K4 = FiniteGroup.product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    # four characters, l = 3 coprime to 4: multisets of size k from 4 types
    assert [len(modular_modules(K4, 3, k)) for k in (1, 2, 3)] == [4, 10, 20]


def test_periodic_automorphisms():
    Z5 = FinAbGroup(5)
    assert len(periodic_automorphisms(Z5, 4)) == 4
    assert len(periodic_automorphisms(Z5, 2)) == 2
    assert len(periodic_automorphisms(FinAbGroup(2, 2), 3)) == 2      # identity and the 3-cycle class


@pytest.mark.parametrize("name,l,d", [("S3", 2, 3), ("S3", 3, 3), ("K4", 3, 2), ("D8", 2, 3)])
def test_normal_cyclic_route_matches_general_linear_search(name, l, d):
    from galcoh.inventory import _metacyclic_modules
    from galcoh.reptheory import module_iso_test
    G = {"S3": FiniteGroup.symmetric(3), "D8": FiniteGroup.dihedral(4),
         "K4": FiniteGroup.product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))}[name]
    full, fast = modular_modules(G, l, d), _metacyclic_modules(G, l, d)
    assert len(full) == len(fast)
    assert all(sum(module_iso_test(A, B, budget=10 ** 5) for B in fast) == 1 for A in full)


def test_dimension_four_over_f3():
    K4 = FiniteGroup.product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    assert len(modular_modules(K4, 3, 4)) == 35      # multisets of four characters
    assert len(modular_modules(FiniteGroup.symmetric(3), 3, 4)) == 18
