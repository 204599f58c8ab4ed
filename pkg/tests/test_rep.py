import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge import ff
from hallforge import rep as R
from hallforge.catalog import random_representation
from hallforge.errors import BudgetExceeded, DimensionMismatch
from hallforge.quiver import Quiver, euler_form, linear_quiver

A2 = linear_quiver(2)


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


@pytest.fixture
def simples():
    s1 = R.Representation.simple(A2, 2, "1")
    s2 = R.Representation.simple(A2, 2, "2")
    p = R.Representation(A2, 2, (1, 1), [[[1]]])
    return s1, s2, p


def test_hom_examples(simples):
    s1, s2, p = simples
    assert R.hom_dim(s1, s1) == 1
    assert R.hom_dim(s1, s2) == 0
    # S2 is the socle of P and S1 its top
    assert R.hom_dim(p, s2) == 0
    assert R.hom_dim(p, s1) == 1
    assert R.hom_dim(s2, p) == 1
    assert len(R.hom_space(s2, p)) == 1


def test_ext_examples(simples):
    s1, s2, p = simples
    assert R.ext1_dim(s1, s2) == 1
    assert R.ext1_dim(s2, s1) == 0
    e = R.ext_space_cached(s1, s2)
    assert R.is_isomorphic(e.middle_term([1]), p)
    assert R.is_isomorphic(e.middle_term([0]), R.direct_sum(s2, s1))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        R.Representation(A2, 2, (1, 1), [[[1, 0]]])


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_aut_order_vector_space(q, n):
    k = R.Representation(linear_quiver(1), q, (n,))
    assert R.aut_order(k) == gl_order(n, q)


def test_aut_order_p_and_semisimple():
    p = R.Representation(A2, 3, (1, 1), [[[1]]])
    assert R.aut_order(p) == 2
    s = R.direct_sum(R.Representation.simple(A2, 3, "1"), R.Representation.simple(A2, 3, "2"))
    assert R.aut_order(s) == 4


@pytest.mark.parametrize("q", [2, 3])
def test_subrepresentation_counts_vector_spaces(q):
    k3 = R.Representation(linear_quiver(1), q, (3,))
    for d in range(4):
        assert len(R.subrepresentations(k3, (d,))) == ff.gaussian_binomial(3, d, q)


def test_subrepresentations_of_p(simples):
    _, _, p = simples
    subs = R.subrepresentations(p, (0, 1))
    assert len(subs) == 1
    assert R.is_isomorphic(subs[0].quotient, R.Representation.simple(A2, 2, "1"))
    assert R.subrepresentations(p, (1, 0)) == []


def test_subrepresentation_budget():
    k3 = R.Representation(linear_quiver(1), 2, (3,))
    with pytest.raises(BudgetExceeded):
        R.subrepresentations(k3, (1,), budget=2)


def test_decompose_and_indecomposable(simples):
    s1, s2, p = simples
    assert R.is_indecomposable(p)
    parts = R.decompose(R.direct_sum(R.direct_sum(s1, p), s2))
    assert sorted(x.dims for x in parts) == [(0, 1), (1, 0), (1, 1)]


def test_kronecker_regular_modules_distinguished():
    kron = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    m0 = R.Representation(kron, 2, (1, 1), [[[1]], [[0]]])
    m1 = R.Representation(kron, 2, (1, 1), [[[0]], [[1]]])
    m2 = R.Representation(kron, 2, (1, 1), [[[1]], [[1]]])
    assert not R.is_isomorphic(m0, m1)
    assert not R.is_isomorphic(m1, m2)
    assert all(R.is_indecomposable(m) for m in (m0, m1, m2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3]), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_base_change_preserves_invariants(seed, q, dims):
    rng = np.random.default_rng(seed)
    m = random_representation(A2, q, dims, rng)
    n = R.random_base_change(m, rng)
    assert R.is_isomorphic(m, n)
    assert R.is_isomorphic_bruteforce(m, n)
    assert R.aut_order(m) == R.aut_order(n)
    assert R.hom_dim(m, m) == R.hom_dim(n, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3]))
def test_hom_minus_ext_is_euler_form(seed, q):
    rng = np.random.default_rng(seed)
    m = random_representation(A2, q, tuple(rng.integers(0, 3, size=2)), rng)
    n = random_representation(A2, q, tuple(rng.integers(0, 3, size=2)), rng)
    assert R.hom_dim(m, n) - R.ext1_dim(m, n) == euler_form(A2, m.dims, n.dims)
    assert R.ext_space_cached(m, n).dim == R.ext1_dim(m, n)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_hom_basis_elements_are_morphisms(seed):
    rng = np.random.default_rng(seed)
    q = linear_quiver(3)
    m = random_representation(q, 3, tuple(rng.integers(0, 3, size=3)), rng)
    n = random_representation(q, 3, tuple(rng.integers(0, 3, size=3)), rng)
    for phi in R.hom_space(m, n):
        for k, (s, t) in enumerate(zip(q.src_index, q.tgt_index)):
            left = phi[t].a @ m.maps[k] % 3
            right = n.maps[k] @ phi[s].a % 3
            assert np.array_equal(left, right)
