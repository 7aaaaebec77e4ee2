import re
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import isprime

from galcoh.localfield import (InvalidField, LocalFieldModel, chi_predicted, kummer_dims,
                               module_norm, mu_l_dim, teichmuller, trivial_case_profile,
                               verify_local_euler_trivial)

SOURCE = Path(__file__).resolve().parents[1] / "paper.md"


def source_text():
    if not SOURCE.exists():
        pytest.skip("paper.md not shipped with this checkout")
    return SOURCE.read_text()


def test_kummer_decomposition_in_source():
    """Q_2 (with -1 a root of unity): Z/2 + O/2O + mu_2 has dimension 1 + 1 + 1."""
    text = source_text()
    assert r"\mathbb{Z}/p\mathbb{Z}\oplus O_K/pO_K\oplus\mu_p(K)" in text
    assert kummer_dims(LocalFieldModel(2, 1, 1, 1), 2) == 3


def test_euler_characteristic_in_source():
    text = source_text()
    assert re.search(r"=-\[K:\\mathbb\{Q\}_p\]\\dim_\{\\mathbb\{F\}_p\}\\mathbb\{F\}_p", text)
    assert "=0=\\chi'(\\mathbb{F}_l)" in text
    Qp = LocalFieldModel(3, 1, 1, 0)
    assert chi_predicted(Qp, 3, 1) == -1 == trivial_case_profile(Qp, 3).chi
    assert chi_predicted(Qp, 5, 1) == 0 == trivial_case_profile(Qp, 5).chi


def test_field_validation():
    with pytest.raises(InvalidField):
        LocalFieldModel(4, 1, 1)
    with pytest.raises(InvalidField):
        LocalFieldModel(3, 1, 1, 1)     # mu_3 needs 2 | e
    assert LocalFieldModel(3, 2, 1, 1).degree == 2


def test_module_norm_examples():
    assert module_norm(LocalFieldModel(5, 1, 1), 5) == Fraction(1, 5)
    assert module_norm(LocalFieldModel(5, 2, 3), 12) == 1
    assert module_norm(LocalFieldModel(3, 2, 2), 9) == Fraction(1, 3 ** 8)
    with pytest.raises(ValueError):
        module_norm(LocalFieldModel(3, 1, 1), 0)


def test_mu_examples():
    assert mu_l_dim(LocalFieldModel(2, 1, 1, 1), 2) == 1
    assert mu_l_dim(LocalFieldModel(3, 1, 1, 0), 3) == 0
    assert mu_l_dim(LocalFieldModel(3, 1, 2), 2) == 1
    assert mu_l_dim(LocalFieldModel(3, 1, 1), 5) == 0


def test_kummer_examples():
    assert kummer_dims(LocalFieldModel(3, 1, 1, 0), 3) == 2
    assert kummer_dims(LocalFieldModel(5, 1, 1), 2) == 2
    assert kummer_dims(LocalFieldModel(5, 1, 1), 3) == 1


def test_profile_examples():
    prof = trivial_case_profile(LocalFieldModel(5, 1, 1, 0), 5)
    assert (prof.h0, prof.h1, prof.h2) == (1, 2, 0)
    prof = trivial_case_profile(LocalFieldModel(2, 1, 1, 1), 2)
    assert (prof.h0, prof.h1, prof.h2) == (1, 3, 1)
    prof = trivial_case_profile(LocalFieldModel(5, 1, 1, 0), 5, "cyclotomic")
    assert (prof.h0, prof.h1, prof.h2) == (0, 2, 1)
    with pytest.raises(ValueError):
        trivial_case_profile(LocalFieldModel(5, 1, 1), 5, "twisted")


def test_chi_predicted_examples():
    assert chi_predicted(LocalFieldModel(2, 2, 1), 2, 3) == -6
    assert chi_predicted(LocalFieldModel(2, 2, 1), 3, 3) == 0


def test_teichmuller_examples():
    assert teichmuller(1, 7, 3) == 1
    assert teichmuller(2, 5, 2) == 7
    assert teichmuller(2, 3, 2) == 8
    with pytest.raises(ValueError):
        teichmuller(5, 5, 2)


def _fields():
    for p in (2, 3, 5, 7):
        for e in (1, 2, 3):
            for f in (1, 2, 3):
                for a in (0, 1):
                    try:
                        yield LocalFieldModel(p, e, f, a)
                    except InvalidField:
                        pass


@pytest.mark.parametrize("K", list(_fields()), ids=str)
def test_trivial_case_sweep(K):
    for l in (2, 3, 5, 7):
        assert all(c.passed for c in verify_local_euler_trivial(K, l))
        t, c = trivial_case_profile(K, l), trivial_case_profile(K, l, "cyclotomic")
        assert (t.h0, t.h2) == (c.h2, c.h0)


primes = st.sampled_from([2, 3, 5, 7, 11])


@given(primes, st.integers(1, 4), st.integers(1, 4), st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_norm_multiplicative(p, e, f, m, n):
    K = LocalFieldModel(p, e, f)
    assert module_norm(K, m * n) == module_norm(K, m) * module_norm(K, n)


@given(st.sampled_from([3, 5, 7]), st.integers(1, 4), st.data())
def test_teichmuller_unique_root(p, k, data):
    a0 = data.draw(st.integers(1, p - 1))
    q = p ** k
    w = teichmuller(a0, p, k)
    roots = [x for x in range(q) if x % p == a0 and pow(x, p - 1, q) == 1]
    assert roots == [w]


@given(primes, st.integers(1, 3), st.integers(1, 3), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_kummer_dimension_formula(p, e, f, l):
    K = LocalFieldModel(p, e, f)
    assert isprime(l)
    expected = 1 + mu_l_dim(K, l) + (e * f if l == p else 0)
    assert kummer_dims(K, l) == expected
