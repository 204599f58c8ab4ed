import importlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge import _backend, _pykernels

try:
    _c = importlib.import_module("hallforge._ckernels")
except ImportError:  # extension not built
    _c = None

needs_ext = pytest.mark.skipif(_c is None, reason="compiled kernels not built")


def test_backend_selection_env(monkeypatch):
    monkeypatch.setenv("HALLFORGE_PURE_PYTHON", "1")
    name, mod = _backend._select()
    assert name == "python" and mod is _pykernels


@needs_ext
@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 65521]), st.integers(0, 6), st.integers(0, 6), st.integers(0, 10**9))
def test_rref_parity(p, rows, cols, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(rows, cols)).astype(np.int64)
    x, y = a.copy(), a.copy()
    px = list(_pykernels.rref_inplace(x, p))
    py = list(_c.rref_inplace(y, p))
    assert px == py
    assert np.array_equal(x, y)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 20), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**9))
def test_batch_rank_parity(p, n, r, c, seed):
    s = np.random.default_rng(seed).integers(0, p, size=(n, r, c)).astype(np.int64)
    assert list(_pykernels.batch_rank(s.copy(), p)) == list(_c.batch_rank(s.copy(), p))
