import itertools
from fractions import Fraction

import pytest

from harmonia.padic import RadixTower, radic_abs, radic_from_int
from harmonia.ultra import (DecaySeq, FiniteMetric, InvarianceError, closed_ball, discrete_metric,
                            is_ultrametric, open_ball, product_ultrametric, quotient_metric,
                            triangle_witness)


def disc(a, b):
    return 0 if a == b else 1


def three_adic_abs(n):
    # independent of the library: strip factors of 3 directly
    if n == 0:
        return Fraction(0)
    v = 0
    while n % 3 == 0:
        n //= 3
        v += 1
    return Fraction(1, 3 ** v)


def three_adic_table():
    return FiniteMetric.from_function(range(9), lambda x, y: three_adic_abs(x - y))


def test_product_ultrametric_examples():
    t = DecaySeq([Fraction(1, j) for j in range(1, 5)])
    ms = [disc] * 4
    assert product_ultrametric((1, 2, 3, 4), (1, 2, 3, 4), ms, t) == 0
    # differences in the second and third coordinates (1-based j = 2, 3)
    assert product_ultrametric((0, 0, 0, 0), (0, 1, 1, 0), ms, t) == Fraction(1, 2)
    d1 = lambda a, b: three_adic_abs(a - b)
    assert product_ultrametric((4,), (7,), [d1], DecaySeq([1])) == d1(4, 7)


def test_product_ultrametric_length_errors():
    t = DecaySeq([1, Fraction(1, 2)])
    with pytest.raises(ValueError):
        product_ultrametric((1,), (1, 2), [disc, disc], t)
    with pytest.raises(ValueError):
        product_ultrametric((1, 2, 3), (1, 2, 3), [disc] * 3, t)


def test_product_of_ultrametrics_is_ultrametric():
    t = DecaySeq([1, Fraction(1, 2), Fraction(1, 5)])
    pts = list(itertools.product(range(3), repeat=3))
    ms = [disc, lambda a, b: three_adic_abs(a - b), disc]
    m = FiniteMetric.from_function(pts, lambda x, y: product_ultrametric(x, y, ms, t))
    assert is_ultrametric(m) is None


def test_is_ultrametric_examples():
    assert is_ultrametric(discrete_metric(range(5))) is None
    euclid = FiniteMetric.from_function([0, 1, 2], lambda x, y: abs(x - y))
    assert is_ultrametric(euclid) == (0, 1, 2)
    assert is_ultrametric(three_adic_table()) is None


def test_three_adic_table_matches_library_abs():
    tw = RadixTower.constant(3, 4)
    for x in range(9):
        for y in range(9):
            assert radic_abs(radic_from_int(tw, x - y)) == three_adic_abs(x - y)


def test_ball_center_symmetry():
    m = three_adic_table()
    radii = sorted({d for row in m.table for d in row} | {Fraction(1, 2), 2})
    for x in m.points:
        for r in radii:
            ball = open_ball(m, x, r)
            for z in ball:
                assert open_ball(m, z, r) == ball


def test_closed_balls_have_positive_gap():
    m = three_adic_table()
    for x in m.points:
        for r in (Fraction(1, 9), Fraction(1, 3), Fraction(1, 2)):
            ball = closed_ball(m, x, r)
            outside = [y for y in m.points if y not in ball]
            if outside:
                assert min(m.d(y, b) for y in outside for b in ball) > 0


def cyclic4(x, y):
    k = (x - y) % 4
    return min(k, 4 - k)


def test_quotient_examples():
    G = list(range(4))
    add = lambda a, b: (a + b) % 4
    d = FiniteMetric.from_function(G, cyclic4)
    q = quotient_metric(G, add, [0, 2], d)
    assert q.points == (0, 1)
    assert q.d(0, 1) == 1
    whole = quotient_metric(G, add, G, d)
    assert len(whole) == 1 and whole.d(0, 0) == 0
    same = quotient_metric(G, add, [0], d)
    assert same.table == d.table


def test_quotient_rejects_non_invariant():
    G = list(range(4))
    add = lambda a, b: (a + b) % 4
    d = FiniteMetric.from_function(G, lambda x, y: abs(x - y))
    with pytest.raises(InvarianceError) as err:
        quotient_metric(G, add, [0, 2], d)
    x, y, h = err.value.witness
    assert abs(add(x, h) - add(y, h)) != abs(x - y)


def test_quotient_of_three_adic_by_subgroup():
    G = list(range(9))
    add = lambda a, b: (a + b) % 9
    d = FiniteMetric.from_function(G, lambda x, y: three_adic_abs((x - y) % 9))
    q = quotient_metric(G, add, [0, 3, 6], d)
    assert len(q) == 3
    assert triangle_witness(q) is None
    assert all(q.d(a, b) == 1 for a in q.points for b in q.points if a != b)


def test_metric_validation():
    with pytest.raises(ValueError):
        FiniteMetric((0, 1), [[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        FiniteMetric((0, 1), [[0, 0], [0, 0]])


def test_csv_roundtrip():
    m = three_adic_table()
    back = FiniteMetric.from_csv(m.to_csv())
    assert [str(p) for p in m.points] == [str(p) for p in back.points]
    assert back.table == m.table


def test_decay_sequence():
    t = DecaySeq.reciprocal_products([2, 3])
    assert list(t.values) == [1, Fraction(1, 2), Fraction(1, 6)]
    with pytest.raises(ValueError):
        DecaySeq([1, 1])
