import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge import ff
from hallforge.errors import DimensionMismatch, FieldMismatch

PRIMES = [2, 3, 5, 7, 65521]


def matrices(p, max_rows=5, max_cols=5):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: st.lists(st.integers(0, p - 1), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)
        )
    )


def test_prime_field_validation():
    assert ff.PrimeField(65521).p == 65521
    for bad in (0, 1, 4, 65522, 100000):
        with pytest.raises(ValueError):
            ff.PrimeField(bad)


def test_inverse_table():
    f = ff.PrimeField(7)
    assert all(a * f.inv(a) % 7 == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_matrix_ops_and_mismatch():
    a = ff.Matrix(3, [[1, 2], [0, 1]])
    b = ff.Matrix(3, [[2, 0], [1, 1]])
    assert (a @ b).tolist() == [[1, 2], [1, 1]]
    assert (a + b).tolist() == [[0, 2], [1, 2]]
    assert (-a).tolist() == [[2, 1], [0, 2]]
    with pytest.raises(FieldMismatch):
        a @ ff.Matrix(5, [[1, 0], [0, 1]])
    with pytest.raises(DimensionMismatch):
        a @ ff.Matrix(3, [[1, 0, 0]])


def test_rref_and_rank_examples():
    r, piv = ff.rref(ff.Matrix(2, [[1, 1], [1, 1]]))
    assert r.tolist() == [[1, 1], [0, 0]] and piv == [0]
    assert ff.rank(ff.Matrix(3, np.eye(3, dtype=int))) == 3
    assert ff.kernel_basis(ff.Matrix(2, [[1, 1]])) == [(1, 1)]
    assert ff.solve(ff.Matrix(5, [[2, 0], [0, 3]]), [1, 1]) == (3, 2)
    assert ff.solve(ff.Matrix(2, [[1, 1], [1, 1]]), [1, 0]) is None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gaussian_binomial_matches_subspace_count(p):
    for n in range(5):
        for k in range(n + 1):
            spaces = list(ff.subspaces(n, k, p))
            assert len(spaces) == ff.gaussian_binomial(n, k, p)
            assert len({s.tobytes() for s in spaces}) == len(spaces)
            assert all(ff.rank_array(s, p) == k for s in spaces if k)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_nullity_and_kernel(pm):
    p, a = pm
    k = ff.kernel_array(a, p)
    assert ff.rank_array(a, p) + k.shape[0] == a.shape[1]
    if k.size:
        assert not (a @ k.T % p).any()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rref_is_reduced_and_row_equivalent(pm):
    p, a = pm
    r, piv = ff.rref_array(a, p)
    for i, c in enumerate(piv):
        assert r[i, c] == 1
        assert (r[:, c] != 0).sum() == 1
    assert not r[len(piv):].any()
    assert ff.rank_array(np.vstack([a, r]), p) == len(piv)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p), st.integers(0, 10**6))))
def test_solve_consistent_systems(pmx):
    p, a, seed = pmx
    x = np.random.default_rng(seed).integers(0, p, size=a.shape[1])
    b = a @ x % p
    sol = ff.solve_array(a, b, p)
    assert sol is not None and np.array_equal(a @ sol % p, b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 10**6))
def test_inverse_roundtrip(p, n, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(n, n))
    if ff.rank_array(a, p) < n:
        with pytest.raises(ZeroDivisionError):
            ff.inverse_array(a, p)
    else:
        assert np.array_equal(a @ ff.inverse_array(a, p) % p, np.eye(n, dtype=np.int64))


def test_batch_rank_matches_single():
    rng = np.random.default_rng(1)
    stack = rng.integers(0, 3, size=(50, 3, 4))
    assert list(ff.batch_rank(stack, 3)) == [ff.rank_array(m, 3) for m in stack]


def test_all_vectors_and_encode():
    v = ff.all_vectors(3, 2)
    assert v.shape == (8, 3)
    assert list(ff.encode(v, 2)) == list(range(8))
