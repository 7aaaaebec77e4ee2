from functools import reduce
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import primefactors
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

from galcoh.abelian import (AbHom, FinAbGroup, IntMatrix, MalformedHom, direct_sum, hom_image,
                            hom_kernel, hom_preimage, primary_part, quotient, smith_normal_form,
                            subgroup_order)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def _diag(D):
    m, n = D.shape
    return [D[i, i] for i in range(min(m, n))]


def test_snf_identity():
    U, D, V = smith_normal_form([[1, 0], [0, 1]])
    assert D.tolist() == [[1, 0], [0, 1]]
    assert U.tolist() == V.tolist() == [[1, 0], [0, 1]]


def test_snf_hand_example():
    _, D, _ = smith_normal_form([[2, 4], [6, 8]])
    assert D.tolist() == [[2, 0], [0, 4]]


def test_snf_zero_matrix():
    U, D, V = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert D.tolist() == [[0, 0, 0], [0, 0, 0]]
    assert U.tolist() == [[1, 0], [0, 1]]
    assert V.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@given(matrices)
def test_snf_identity_and_chain(A):
    U, D, V = smith_normal_form(A)
    assert (U @ IntMatrix(A) @ V).tolist() == D.tolist()
    assert abs(_det(U.tolist())) == 1 and abs(_det(V.tolist())) == 1
    d = _diag(D)
    m, n = D.shape
    assert all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[:len(nz)] == nz                       # zeros trail
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(matrices)
def test_snf_matches_sympy(A):
    _, D, _ = smith_normal_form(A)
    ours = [x for x in _diag(D) if x]
    theirs = [abs(int(x)) for x in invariant_factors(DM(A, ZZ)) if x]
    assert ours == theirs


def test_invariant_factor_validation():
    with pytest.raises(ValueError):
        FinAbGroup(2, 3)
    with pytest.raises(ValueError):
        FinAbGroup(1)
    assert FinAbGroup().order == 1


def test_malformed_hom_rejected():
    # Z/2 -> Z/4 sending the generator to 1 is not well defined
    with pytest.raises(MalformedHom):
        AbHom(FinAbGroup(2), FinAbGroup(4), [[1]])


def test_kernel_examples():
    Z4, Z2 = FinAbGroup(4), FinAbGroup(2)
    assert hom_kernel(AbHom.zero(Z4, Z4))[0] == Z4
    assert hom_kernel(AbHom.scalar(Z4, 2))[0] == Z2
    K, inc = hom_kernel(AbHom(FinAbGroup(2, 2), Z2, [[1, 1]]))
    assert K == Z2
    assert inc.is_injective()


def test_quotient_examples():
    assert quotient(FinAbGroup(4), [[2]])[0] == FinAbGroup(2)
    assert quotient(FinAbGroup(2, 2), [])[0] == FinAbGroup(2, 2)
    Q, proj = quotient(FinAbGroup(8), [[2]])
    assert Q == FinAbGroup(2) and proj.is_surjective()


def test_direct_sum_examples():
    assert direct_sum(FinAbGroup(2), FinAbGroup(3)) == FinAbGroup(6)
    assert direct_sum(FinAbGroup(2), FinAbGroup(2)).invariant_factors == (2, 2)
    assert direct_sum(FinAbGroup(4), FinAbGroup(6)).invariant_factors == (2, 12)


def test_primary_part_examples():
    assert primary_part(FinAbGroup(12), 2) == FinAbGroup(4)
    assert primary_part(FinAbGroup(12), 3) == FinAbGroup(3)
    assert primary_part(FinAbGroup(12), 5) == FinAbGroup()
    with pytest.raises(ValueError):
        primary_part(FinAbGroup(12), 4)


groups = st.lists(st.sampled_from([2, 3, 4, 5, 6, 8, 9, 12]), max_size=3).map(FinAbGroup.from_orders)


@st.composite
def homs(draw):
    A, B = draw(groups), draw(groups)
    cols = []
    for dj in A.invariant_factors:
        col = []
        for di in B.invariant_factors:
            step = di // gcd(di, dj)
            col.append(step * draw(st.integers(0, di)))
        cols.append(col)
    rows = [[cols[j][i] for j in range(A.rank)] for i in range(B.rank)]
    return AbHom(A, B, rows)


@given(homs())
def test_kernel_image_cardinality(h):
    K, inc = hom_kernel(h)
    I, _ = hom_image(h)
    assert K.order * I.order == h.domain.order
    assert (h @ inc).is_zero() and inc.is_injective()


@given(homs())
def test_kernel_matches_enumeration(h):
    zero = h.codomain.zero()
    assert hom_kernel(h)[0].order == sum(1 for x in h.domain.elements() if h(x) == zero)


@given(homs(), st.data())
def test_preimage_solves(h, data):
    elems = list(h.domain.elements())
    x = data.draw(st.sampled_from(elems))
    y = h(x)
    z = hom_preimage(h, y)
    assert z is not None and h(z) == y


@given(groups, st.data())
def test_quotient_cardinality(G, data):
    elems = list(G.elements())
    gens = data.draw(st.lists(st.sampled_from(elems), max_size=3))
    Q, proj = quotient(G, gens)
    assert Q.order * subgroup_order(G, gens) == G.order
    assert proj.is_surjective()
    # brute-force subgroup order
    span = {G.zero()}
    frontier = list(span)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.reduce([a + b for a, b in zip(x, g)])
                if y not in span:
                    span.add(y)
                    new.append(y)
        frontier = new
    assert len(span) == subgroup_order(G, gens)


@given(groups)
def test_primary_parts_reassemble(G):
    parts = [primary_part(G, p) for p in primefactors(G.order)]
    total = reduce(direct_sum, parts, FinAbGroup())
    assert total == G
