import json
from fractions import Fraction

import numpy as np
import pytest

from harmonia.padic import PrecisionError, RadixTower, TowerMismatchError, radic_char_pairing, radic_from_int
from harmonia.solenoid import (CoherenceError, SolenoidChar, SolenoidPoint, project, quotient_orthogonality,
                               sol_add, sol_char_eval, sol_from_real, sol_neg, uniform_fiber_sample, zr_embed)

T23 = RadixTower((2, 3))
T2345 = RadixTower((2, 3, 4, 5))


def rand_rational(rng, big=10 ** 6):
    return Fraction(int(rng.integers(-big, big)), int(rng.integers(1, 1000)))


def coherent(x):
    R = x.tower.partial_products()
    return all(x.angles[l + 1] % R[l] == x.angles[l] for l in range(len(R) - 1))


def test_from_real_examples():
    assert sol_from_real(T23, Fraction(5, 4)).angles == (Fraction(1, 4), Fraction(5, 4), Fraction(5, 4))
    assert sol_from_real(T23, 0).angles == (0, 0, 0)
    assert sol_from_real(T23, 7).angles == (0, 1, 1)


def test_from_real_additive_and_projection(rng):
    for _ in range(200):
        a, b = rand_rational(rng), rand_rational(rng)
        x = sol_from_real(T2345, a + b)
        assert x == sol_from_real(T2345, a) + sol_from_real(T2345, b)
        for k in range(T2345.L + 1):
            assert project(x, k) == (a + b) % T2345.R(k)


def test_add_examples(rng):
    x = sol_from_real(T23, Fraction(5, 4))
    assert (x + (-x)).angles == (0, 0, 0)
    s = x + sol_from_real(T23, Fraction(3, 4))
    assert s.angles[:2] == (0, 0)
    for _ in range(100):
        a, b, c = (sol_from_real(T2345, rand_rational(rng)) for _ in range(3))
        assert (a + b) + c == a + (b + c)


def test_coherence_under_random_additions(rng):
    x = sol_from_real(T2345, 0)
    for _ in range(1000):
        y = sol_from_real(T2345, rand_rational(rng))
        if rng.random() < 0.3:
            y = zr_embed(radic_from_int(T2345, int(rng.integers(0, 120))))
        x = sol_add(x, y) if rng.random() < 0.7 else sol_add(x, sol_neg(y))
        assert coherent(x)


def test_point_validation():
    with pytest.raises(CoherenceError):
        SolenoidPoint(T23, (Fraction(1, 4), Fraction(1, 4), Fraction(5, 4)))
    with pytest.raises(ValueError):
        SolenoidPoint(T23, (Fraction(1, 4), Fraction(9, 4), Fraction(9, 4)))
    with pytest.raises(TowerMismatchError):
        sol_from_real(T23, 1) + sol_from_real(T2345, 1)


def test_zr_embed_examples(rng):
    assert zr_embed(radic_from_int(T23, 5)).angles == (0, 1, 5)
    assert zr_embed(radic_from_int(T23, 0)).angles == (0, 0, 0)
    for _ in range(100):
        a = radic_from_int(T2345, int(rng.integers(0, 10 ** 9)))
        b = radic_from_int(T2345, int(rng.integers(0, 10 ** 9)))
        assert zr_embed(a + b) == zr_embed(a) + zr_embed(b)
    images = {zr_embed(radic_from_int(T23, u)).angles for u in range(6)}
    assert len(images) == 6


def test_char_eval_examples():
    x = sol_from_real(T23, Fraction(3, 2))
    assert sol_char_eval(SolenoidChar(T23, 1, 1), x) == -1j
    triv = SolenoidChar(T23, 2, 0)
    assert all(triv(sol_from_real(T23, Fraction(k, 7))) == 1 for k in range(20))
    with pytest.raises(PrecisionError):
        SolenoidChar(T23, 3, 1)


def test_char_homomorphism(rng):
    for _ in range(500):
        k = int(rng.integers(0, T2345.L + 1))
        chi = SolenoidChar(T2345, k, int(rng.integers(0, T2345.R(k))))
        x, y = sol_from_real(T2345, rand_rational(rng)), sol_from_real(T2345, rand_rational(rng))
        assert abs(chi(x + y) - chi(x) * chi(y)) < 1e-10


def test_char_reads_only_its_level(rng):
    chi = SolenoidChar(T2345, 2, 5)
    for _ in range(50):
        x = sol_from_real(T2345, rand_rational(rng))
        # move along the fiber of pi_2: add a multiple of R_2 at the top level
        y = x + sol_from_real(T2345, T2345.R(2) * int(rng.integers(1, 20)))
        assert project(y, 2) == project(x, 2)
        assert chi(y) == chi(x)


def test_char_equality_by_frequency():
    assert SolenoidChar(T2345, 1, 1) == SolenoidChar(T2345, 2, 3)
    assert hash(SolenoidChar(T2345, 1, 1)) == hash(SolenoidChar(T2345, 3, 12))
    assert SolenoidChar(T2345, 1, 1) != SolenoidChar(T2345, 2, 1)


def test_matches_radic_pairing_on_fiber(rng):
    for _ in range(50):
        k = int(rng.integers(0, T2345.L + 1))
        a = int(rng.integers(0, T2345.R(k)))
        u = radic_from_int(T2345, int(rng.integers(0, 10 ** 6)))
        assert abs(sol_char_eval(SolenoidChar(T2345, k, a), zr_embed(u)) - radic_char_pairing(a, k, u)) < 1e-12


def test_kernel_on_fiber():
    for k in range(T2345.L + 1):
        Rk = T2345.R(k)
        for a in range(Rk):
            for u in range(0, 120, 7):
                if (a * u) % Rk == 0:
                    assert SolenoidChar(T2345, k, a)(zr_embed(radic_from_int(T2345, u))) == 1


def test_quotient_orthogonality():
    tw = T2345
    chars = [SolenoidChar(tw, k, a) for k in range(3) for a in range(tw.R(k))]
    for chi in chars:
        for psi in chars:
            val = quotient_orthogonality(chi, psi)
            expect = 1 if chi == psi else 0
            assert abs(val - expect) < 1e-10


def test_fiber_sample_orthogonality(rng):
    chi, psi = SolenoidChar(T2345, 2, 1), SolenoidChar(T2345, 3, 7)
    pts = uniform_fiber_sample(T2345, 3, 10_000, rng)
    assert all(coherent(x) for x in pts[:50])
    mean = np.mean([chi(x) * psi(x).conjugate() for x in pts])
    assert abs(mean) < 1e-2


def test_json_roundtrip():
    x = sol_from_real(T23, Fraction(5, 4))
    doc = json.loads(json.dumps(x.to_json()))
    assert doc == {"radices": [2, 3], "angles": ["1/4", "5/4", "5/4"]}
    assert SolenoidPoint.from_json(doc) == x
