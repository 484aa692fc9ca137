import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from harmonia.hilbert import (IndexedFun, IndexMismatchError, OrthonormalityError, double_sum,
                              dual_norm, gram_schmidt, inner_product, lp_norm, project)

from conftest import crandn


def F(values, weights=None):
    return IndexedFun.from_values(values, weights)


def test_inner_product_examples():
    assert inner_product(F([1, 1j]), F([1, 1])) == 1 + 1j
    half = [Fraction(1, 2)] * 2
    assert inner_product(F([1, 1], half), F([1, 1], half)) == 1
    assert inner_product(F([2, 0]), F([0, 3])) == 0


def test_inner_product_mismatch():
    with pytest.raises(IndexMismatchError):
        inner_product(F([1, 2]), F([1, 2, 3]))
    with pytest.raises(IndexMismatchError):
        inner_product(F([1, 2]), F([1, 2], ["1/2", "1/2"]))


def test_inner_product_conjugate_symmetric(rng):
    f, g = F(crandn(rng, 9)), F(crandn(rng, 9))
    assert abs(inner_product(f, g) - inner_product(g, f).conjugate()) < 1e-12


def test_lp_norm_examples():
    assert lp_norm(F([3, 4]), 2) == pytest.approx(5, abs=1e-14)
    assert lp_norm(F([3, 4]), math.inf) == 4
    assert lp_norm(F([1, 1]), 0.5) == pytest.approx(4, abs=1e-14)


def test_lp_norm_monotone(rng):
    for _ in range(100):
        f = F(crandn(rng, 7))
        ps = [0.5, 1, 1.5, 2, 3, 10, math.inf]
        norms = [lp_norm(f, p) for p in ps]
        assert all(a >= b - 1e-12 for a, b in zip(norms, norms[1:]))


def brute_force_dual_p1(g):
    # for p = 1 with unit weights the extreme points of the unit ball are unimodular point masses;
    # the sup of |sum f g| over them is attained at +-delta and +-i delta already for real g
    best = 0.0
    for k in range(len(g)):
        for s in (1, -1, 1j, -1j):
            f = np.zeros(len(g), dtype=complex)
            f[k] = s
            best = max(best, abs(np.sum(f * g)))
    return best


def test_dual_norm_p1_example():
    g = F([1, -2])
    norm, f = dual_norm(g, 1)
    assert norm == 2
    assert brute_force_dual_p1(g.values) == 2
    assert np.allclose(f.values, [0, -1])


def test_dual_norm_p2_and_inf_examples():
    norm, f = dual_norm(F([3, 4]), 2)
    assert norm == pytest.approx(5)
    assert np.allclose(f.values, np.conj([3, 4]) / 5)
    norm, f = dual_norm(F([1, 1]), math.inf)
    assert norm == 2
    assert np.allclose(f.values, [1, 1])


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, math.inf])
def test_dual_norm_witness(rng, p):
    for _ in range(50):
        g = F(crandn(rng, 6), [Fraction(int(k), 3) for k in rng.integers(1, 6, size=6)])
        norm, f = dual_norm(g, p)
        assert lp_norm(f, p) <= 1 + 1e-12
        pairing = np.sum(f.values * g.values * g.weight_array)
        assert abs(pairing) >= norm - 1e-9


def test_cauchy_schwarz(rng):
    for _ in range(1000):
        f, g = F(crandn(rng, 5)), F(crandn(rng, 5))
        assert abs(inner_product(f, g)) <= lp_norm(f, 2) * lp_norm(g, 2) + 1e-12


@pytest.mark.parametrize("p,q", [(1, math.inf), (1.5, 3), (2, 2), (3, 1.5), (math.inf, 1)])
def test_hoelder(rng, p, q):
    for _ in range(200):
        f, g = F(crandn(rng, 8)), F(crandn(rng, 8))
        assert abs(np.sum(f.values * g.values)) <= lp_norm(f, p) * lp_norm(g, q) + 1e-10


def test_quasi_triangle_p_below_one(rng):
    for p in (0.25, 0.5, 0.9, 1.0):
        for _ in range(200):
            f, g = F(crandn(rng, 6)), F(crandn(rng, 6))
            lhs = lp_norm(F(f.values + g.values), p) ** p
            assert lhs <= lp_norm(f, p) ** p + lp_norm(g, p) ** p + 1e-10


def test_project_examples():
    P, res = project([1, 1], [[1, 0]])
    assert np.allclose(P, [1, 0]) and np.allclose(res, [0, 1])
    P, res = project([5, 0, 0], [[0, 1, 0], [0, 0, 1]])
    assert np.allclose(P, 0) and np.allclose(res, [5, 0, 0])
    P, _ = project([1, 2, 3], [np.array([1, 1, 0]) / math.sqrt(2)])
    assert np.abs(P - [1.5, 1.5, 0]).max() < 1e-12


def test_project_rejects_non_orthonormal():
    with pytest.raises(OrthonormalityError):
        project([1, 0], [[1, 1]])


def random_onb(rng, n, k):
    q, _ = np.linalg.qr(crandn(rng, n, k))
    return q.T


def test_project_pythagoras_and_minimizer(rng):
    for _ in range(20):
        onb = random_onb(rng, 8, 3)
        v = crandn(rng, 8)
        P, res = project(v, onb)
        assert np.array_equal(P + res, P + (v - P))
        assert max(abs(np.vdot(b, res)) for b in onb) < 1e-8
        nv = np.linalg.norm(v) ** 2
        assert abs(nv - np.linalg.norm(P) ** 2 - np.linalg.norm(res) ** 2) < 1e-8
        best = np.linalg.norm(res)
        for _ in range(25):
            w = crandn(rng, 3) @ onb
            assert np.linalg.norm(v - w) >= best - 1e-10


def test_bessel(rng):
    for _ in range(100):
        k = int(rng.integers(1, 6))
        onb = random_onb(rng, 6, k)
        v = crandn(rng, 6)
        assert sum(abs(np.vdot(b, v)) ** 2 for b in onb) <= np.linalg.norm(v) ** 2 + 1e-10


def test_parallelogram(rng):
    for _ in range(200):
        x, y = crandn(rng, 5), crandn(rng, 5)
        n2 = lambda u: np.linalg.norm(u) ** 2
        assert abs(n2((x + y) / 2) + n2((x - y) / 2) - n2(x) / 2 - n2(y) / 2) < 1e-10


def test_gram_schmidt_examples():
    assert np.allclose(gram_schmidt([[1, 0], [1, 1]]), [[1, 0], [0, 1]])
    assert np.allclose(gram_schmidt([[2, 0], [4, 0]]), [[1, 0]])
    out = gram_schmidt([[1, 1], [1, 0]])
    s = 1 / math.sqrt(2)
    assert np.abs(out - np.array([[s, s], [s, -s]])).max() < 1e-12


def test_gram_schmidt_properties(rng):
    for _ in range(30):
        n = int(rng.integers(2, 12))
        m = int(rng.integers(1, 2 * n))
        vs = crandn(rng, m, n)
        if m > 2:
            vs[2] = vs[0] - 3j * vs[1]
        Q = gram_schmidt(vs)
        assert np.abs(Q @ Q.conj().T - np.eye(len(Q))).max() < 1e-10
        for v in vs:
            _, res = project(v, Q)
            assert np.linalg.norm(res) < 1e-8
        assert len(Q) == np.linalg.matrix_rank(vs)


def test_double_sum_examples(rng):
    total, rows, cols = double_sum([[x * y for y in (1, 3)] for x in (1, 2)])
    assert (total, rows, cols) == (12, [4, 8], [3, 9])
    assert double_sum([[0, 0], [0, 0]]) == (0, [0, 0], [0, 0])
    table = rng.choice([-1, 1], size=(8, 8)).tolist()
    total, rows, cols = double_sum(table)
    assert sum(rows) == sum(cols) == total
    # exhaustive oracle: sum in row-major and column-major cell order
    assert total == sum(table[i][j] for i, j in itertools.product(range(8), range(8)))
    assert total == sum(table[i][j] for j, i in itertools.product(range(8), range(8)))


def test_double_sum_float_orders_agree(rng):
    table = rng.normal(size=(20, 30))
    total, rows, cols = double_sum(table.tolist())
    assert abs(sum(rows) - sum(cols)) < 1e-10


def test_indexedfun_json_roundtrip():
    f = IndexedFun(("a", "b"), np.array([1 + 2j, -3]), ["1/2", "1"])
    g = IndexedFun.from_json(f.to_json())
    assert g.labels == f.labels and g.weights == f.weights
    assert np.array_equal(g.values, f.values)
    assert f.to_json()["weights"] == ["1/2", "1"]
