"""Compiled and numpy kernels must agree bit for bit."""

import numpy as np
import pytest

from tspullback import _backend, _pykernels

from oracles import embed_loops, pull_back_loops

CASES = [(1, 1, 1), (1, 7, 3), (4, 6, 2), (7, 9, 3), (5, 8, 1), (9, 5, 1),
         (100, 20, 20), (16, 113, 1), (3, 40, 7), (12, 12, 12)]

needs_cython = pytest.mark.skipif("cython" not in _backend.available_backends(),
                                  reason="compiled extension not built")


@pytest.mark.parametrize("d, m, tau", CASES)
def test_python_kernels_against_loops(d, m, tau):
    rng = np.random.default_rng(d * 1000 + m * 10 + tau)
    x = rng.standard_normal(m + (d - 1) * tau)
    assert np.array_equal(_pykernels.embed(x, d, tau), embed_loops(x, d, tau))
    z = rng.standard_normal((d, m))
    np.testing.assert_allclose(_pykernels.pullback_mean(z, tau), pull_back_loops(z, tau),
                               rtol=1e-13, atol=0)


@needs_cython
@pytest.mark.parametrize("d, m, tau", CASES)
def test_backends_identical(d, m, tau):
    ck = _backend.available_backends()["cython"]
    rng = np.random.default_rng(d * 1000 + m * 10 + tau)
    x = rng.standard_normal(m + (d - 1) * tau)
    z = rng.standard_normal((d, m))
    assert np.array_equal(ck.embed(x, d, tau), _pykernels.embed(x, d, tau))
    assert np.array_equal(ck.line_counts(d, m, tau), _pykernels.line_counts(d, m, tau))
    assert np.array_equal(ck.pullback_mean(z, tau), _pykernels.pullback_mean(z, tau))
    assert np.array_equal(ck.pullback_median(z, tau), _pykernels.pullback_median(z, tau))


@needs_cython
def test_cython_accepts_non_contiguous():
    ck = _backend.available_backends()["cython"]
    z = np.random.default_rng(3).standard_normal((9, 7)).T  # Fortran-ordered view
    assert np.array_equal(ck.pullback_mean(z, 1), _pykernels.pullback_mean(z, 1))
    x = np.arange(40.0)[::2]
    assert np.array_equal(ck.embed(x, 3, 2), _pykernels.embed(x, 3, 2))


def test_uncovered_samples_rejected():
    for mod in _backend.available_backends().values():
        with pytest.raises(ValueError, match="m=1 < tau=4"):
            mod.pullback_mean(np.zeros((3, 1)), 4)
        with pytest.raises(ValueError):
            mod.pullback_median(np.zeros((3, 1)), 4)


def test_forced_python_backend(monkeypatch):
    import importlib

    monkeypatch.setenv("TSPULLBACK_BACKEND", "python")
    mod = importlib.reload(_backend)
    try:
        assert mod.BACKEND == "python"
        assert mod.kernels is _pykernels
    finally:
        monkeypatch.delenv("TSPULLBACK_BACKEND")
        importlib.reload(_backend)


@needs_cython
@pytest.mark.parametrize("d, m, tau", [(6, 9, 1), (20, 30, 2), (7, 7, 7), (2, 50, 3)])
def test_median_with_ties_identical(d, m, tau):
    ck = _backend.available_backends()["cython"]
    z = np.random.default_rng(d + m).integers(-2, 3, (d, m)).astype(float)
    assert np.array_equal(ck.pullback_median(z, tau), _pykernels.pullback_median(z, tau))
    assert np.array_equal(ck.pullback_median(np.ones((d, m)), tau), np.ones(m + (d - 1) * tau))
