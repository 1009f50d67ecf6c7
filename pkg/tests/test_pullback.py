import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from tspullback.diophantine import DiophParams, solve, trajectory_domain
from tspullback.embedding import TimeSequence, embed, m_of, tau_max
from tspullback.pullback import (
    Estimator,
    collect_q_set,
    dap_reference,
    pull_back,
    pull_back_reference,
    q_bounds,
    q_counts,
)

from golden import COPY_COUNTS
from oracles import lines_by_scan, pull_back_loops


@pytest.mark.parametrize("n, tau, s, d, m, count", [
    (213, 19, 1, 100, 119, 7),
    (213, 3, 1, 100, 1703, 71),
])
def test_q_count_examples(n, tau, s, d, m, count):
    assert q_bounds(n, tau, s, d, m).count == count


def test_q_bounds_value():
    assert tuple(q_bounds(213, 19, 1, 100, 119)) == (6, 12)


def test_q_bounds_rejects_out_of_range():
    with pytest.raises(ValueError):
        q_bounds(0, 3, 1, 7, 9)
    with pytest.raises(ValueError):
        q_bounds(27, 3, 0, 7, 9)


def test_copy_count_column():
    N, d, s, n = 2000, 100, 1, 213
    counts = [q_bounds(n, tau, s, d, m_of(N, d, tau)).count for tau in range(1, 20)]
    assert counts == COPY_COUNTS[:19]
    assert all(a >= b for a, b in zip(counts, counts[1:]))


@pytest.mark.parametrize("s", [0, 1])
def test_count_law_against_solver(s):
    rng = np.random.default_rng(s)
    configs = [(7, 9, 3)] + [tuple(int(v) for v in rng.integers(1, 13, 3)) for _ in range(40)]
    for d, m, tau in configs:
        om = trajectory_domain(d, m, s)
        N = m + (d - 1) * tau
        counts = q_counts(d, m, tau)
        for n in range(s, N + s):
            sol = solve(DiophParams(n, tau, s), om)
            qb = q_bounds(n, tau, s, d, m)
            assert max(qb.count, 0) == len(sol) == counts[n - s]
            if len(sol):
                assert (qb.q_min, qb.q_max) == (sol.x_min, sol.x_max)


def test_collect_q_set_ramp_positions():
    x = np.arange(27.0) * 10
    M = embed(x, (7, 3)).entries
    samples = collect_q_set(M, 8, 3, 0)
    assert list(samples) == [M[0, 8], M[1, 5], M[2, 2]]
    assert list(samples) == [80.0] * 3


def test_collect_q_set_brute_force_positions():
    z = np.random.default_rng(0).standard_normal((4, 6))
    cells = lines_by_scan(4, 6, 2, 0)[3]
    assert list(collect_q_set(z, 3, 2, 0)) == [z[i, j] for i, j in cells]


@settings(max_examples=80, deadline=None)
@given(d=st.integers(1, 10), m=st.integers(1, 15), tau=st.integers(1, 6), s=st.sampled_from([0, 1]))
def test_collect_q_set_on_image_is_constant(d, m, tau, s):
    assume(d == 1 or m >= tau)
    N = m + (d - 1) * tau
    x = np.random.default_rng(N).standard_normal(N)
    M = embed(TimeSequence(x, s), (d, tau)).entries
    for n in range(s, N + s):
        samples = collect_q_set(M, n, tau, s)
        assert samples.size >= 1
        assert np.all(samples == x[n - s])


@pytest.mark.parametrize("s", [0, 1])
def test_round_trip_ramp(backend, s):
    x = TimeSequence(np.arange(1.0, 28.0), s)
    back = pull_back(embed(x, (7, 3)), 3, s, "mean")
    assert back == x


@settings(max_examples=200, deadline=None)
@given(N=st.integers(3, 200), d=st.integers(2, 20), s=st.sampled_from([0, 1]), data=st.data())
def test_round_trip_random(N, d, s, data):
    assume(N >= 2 * d - 1)
    t_hi = min(tau_max(N, d), N // d)  # m >= tau keeps every sample in the matrix
    tau = data.draw(st.integers(1, t_hi))
    x = np.random.default_rng(N * d + tau).uniform(-1e3, 1e3, N)
    back = pull_back(embed(TimeSequence(x, s), (d, tau)), tau, s).values
    assert np.all(np.abs(back - x) <= 1e-12 * np.abs(x))
    xi = np.round(x)
    assert np.array_equal(pull_back(embed(xi, (d, tau)), tau, 0).values, xi)


def test_uncovered_delay_rejected(backend):
    # N=9, d=3, tau=4: m=1 and samples 1-3 and 5-7 never enter the matrix
    M = embed(np.arange(9.0), (3, 4))
    with pytest.raises(ValueError, match="no cell"):
        pull_back(M)
    with pytest.raises(ValueError):
        pull_back_reference(M)
    assert list(q_counts(3, 1, 4)) == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_pull_back_defaults_from_trajectory_matrix():
    M = embed(TimeSequence(np.arange(10.0), 1), (3, 2))
    out = pull_back(M)
    assert out.s == 1 and out == TimeSequence(np.arange(10.0), 1)


@pytest.mark.parametrize("d, m, tau", [(7, 9, 3), (5, 8, 1), (9, 4, 2), (1, 6, 5), (4, 4, 4)])
@pytest.mark.parametrize("s", [0, 1])
def test_kernel_path_matches_reference_and_loops(backend, d, m, tau, s):
    z = np.random.default_rng(d + m + tau).standard_normal((d, m))
    fast = pull_back(z, tau, s).values
    ref = pull_back_reference(z, tau, s).values
    assert np.array_equal(fast, ref)
    np.testing.assert_allclose(fast, pull_back_loops(z, tau), rtol=1e-13, atol=0)
    med = pull_back(z, tau, s, Estimator.MEDIAN).values
    assert np.array_equal(med, pull_back_reference(z, tau, s, "median").values)


def test_linearity_over_component_split(backend):
    rng = np.random.default_rng(4)
    for d, m, tau in [(6, 10, 2), (10, 40, 3), (5, 5, 1)]:
        M = rng.standard_normal((d, m))
        A, B = rng.standard_normal((2, d, m))
        C = M - A - B
        total = pull_back(A, tau, 0).values + pull_back(B, tau, 0).values + pull_back(C, tau, 0).values
        ref = pull_back(M, tau, 0).values
        assert np.linalg.norm(total - ref) <= 1e-10 * np.linalg.norm(ref)


def test_dap_examples():
    out = dap_reference(np.ones((3, 5)))
    assert out.s == 1 and out.N == 7 and np.all(out.values == 1.0)
    x = TimeSequence(np.random.default_rng(2).standard_normal(20), 1)
    for d in (1, 4, 10, 17, 20):
        back = dap_reference(embed(x, (d, 1)).entries).values
        np.testing.assert_allclose(back, x.values, rtol=1e-14, atol=0)


@pytest.mark.parametrize("d, m", [(5, 8), (8, 5), (1, 6), (6, 1), (40, 60), (60, 40), (7, 7)])
def test_dap_equivalence(backend, d, m):
    z = np.random.default_rng(d * m).standard_normal((d, m))
    a = pull_back(z, 1, 1).values
    b = dap_reference(z).values
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_median_resists_single_spike():
    rng = np.random.default_rng(8)
    x = np.sin(np.arange(60) / 5.0)
    d, tau = 8, 2
    Z = embed(x, (d, tau)).entries + 0.01 * rng.standard_normal((d, 60 - 7 * tau))
    clean_med = pull_back(Z, tau, 0, "median").values
    for n in (20, 30, 40):
        rows = np.arange(d)
        cols = n - rows * tau
        ok = (cols >= 0) & (cols < Z.shape[1])
        i, j = rows[ok][1], cols[ok][1]
        spiked = Z.copy()
        spiked[i, j] += 1e6
        samples = np.array([Z[r, c] for r, c in zip(rows[ok], cols[ok]) if (r, c) != (i, j)])
        assert samples.size >= 2
        out = pull_back(spiked, tau, 0, "median").values
        spread = samples.max() - samples.min()
        assert abs(out[n] - clean_med[n]) <= spread
        assert samples.min() <= out[n] <= samples.max()
