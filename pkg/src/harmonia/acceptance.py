"""The acceptance suite: eighteen reproducible checks with fixed thresholds.

Each criterion draws from its own generator, seeded from (seed, criterion
number), so criteria are independent of each other and of execution order.
``run_all`` returns results in criterion order; ``format_report`` renders them
deterministically (no timings), so a repeated seed gives identical bytes.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import banach, circle, group, hilbert, padic, solenoid, ultra

__all__ = ["Result", "CRITERIA", "run_all", "format_report", "criterion"]


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    measured: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        s = f"[{tag}] {self.number:02d} {self.name:<28s} measured={self.measured:.3e} threshold={self.threshold:.1e}"
        if self.detail:
            s += f"  {self.detail}"
        return s


CRITERIA: list[tuple[int, str, Callable]] = []


def criterion(number: int, name: str):
    def deco(fn):
        CRITERIA.append((number, name, fn))
        return fn
    return deco


def _crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@criterion(1, "parseval_circle")
def parseval_circle(rng):
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        N = int(rng.integers(0, 17))
        f = circle.TrigPoly(_crandn(rng, 2 * N + 1))
        worst = max(worst, circle.parseval_gap(f, 64))
    fast = time.perf_counter() - t0 < 1.0
    return worst, 1e-9, worst < 1e-9 and fast, "" if fast else "exceeded 1 s"


@criterion(2, "poisson_normalization")
def poisson_normalization(rng, kernel=None):
    kernel = circle.poisson_kernel if kernel is None else kernel
    M = 4096
    w = np.exp(2j * np.pi * np.arange(M) / M)
    zs = [1.0 + 0j, np.exp(2j * np.pi * rng.random())]
    worst = 0.0
    positive = True
    for r in (0.0, 0.5, 0.9, 0.99):
        for z in zs:
            vals = np.array([kernel(r, z, wk) for wk in w])
            positive &= bool(np.all(vals >= 0))
            worst = max(worst, abs(float(np.mean(vals)) - 1.0))
    return worst, 1e-6, worst < 1e-6 and positive, "" if positive else "negative kernel value"


@criterion(3, "abel_closed_form")
def abel_closed_form(rng):
    N = 200
    coeffs = {j: 1j ** j for j in range(N + 1)}
    a = circle.TrigPoly.from_dict(coeffs, N)
    r = 0.999
    err = abs(circle.abel_sum(a, r, 1.0) - 1 / (1 - r * 1j))
    # the dropped terms sum to (r i)^(N+1) / (1 - r i); reported so a failure can be read off
    tail = r ** (N + 1) / abs(1 - r * 1j)
    return err, 1e-10, err < 1e-10, f"truncation tail={tail:.3e}"


@criterion(4, "abel_kernel_agreement")
def abel_kernel_agreement(rng):
    M = 512
    theta = 2 * np.pi * (np.arange(16) + rng.random()) / 16
    zs = np.exp(1j * theta)
    worst = 0.0
    for _ in range(100):
        N = int(rng.integers(0, 17))
        f = circle.TrigPoly(_crandn(rng, 2 * N + 1))
        samples = f.sample(M)
        for r in (0.5, 0.9):
            for z in zs:
                d = abs(circle.abel_sum(f, r, z) - circle.poisson_extension(samples, r, z))
                worst = max(worst, d)
    return worst, 1e-8, worst < 1e-8, ""


@criterion(5, "convolution_theorem")
def convolution_theorem(rng):
    G = group.FiniteAbelianGroup((8, 5))
    worst = 0.0
    for _ in range(20):
        f = group.GroupFun(G, _crandn(rng, G.order))
        g = group.GroupFun(G, _crandn(rng, G.order))
        lhs = group.dft(group.convolve(f, g)).values
        rhs = group.dft(f).values * group.dft(g).values
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst, 1e-9, worst < 1e-9, ""


@criterion(6, "character_orthogonality")
def character_orthogonality(rng):
    worst = 0.0
    for mods in ((12,), (2, 2, 3)):
        G = group.FiniteAbelianGroup(mods)
        T = np.array([chi.table() for chi in G.characters()])
        gram = T @ T.conj().T
        err = np.abs(gram - G.order * np.eye(G.order)).max() / G.order
        worst = max(worst, float(err))
    return worst, 1e-9, worst < 1e-9, "error relative to |A|"


@criterion(7, "spectral_radius")
def spectral_radius(rng):
    G = group.FiniteAbelianGroup((16,))
    worst = 0.0
    for _ in range(20):
        theta = group.GroupFun(G, _crandn(rng, 16))
        _, est = banach.spectral_radius_seq(theta, 64)
        true = max(abs(v) for v in banach.spectrum_via_characters(theta))
        worst = max(worst, abs(est - true) / true)
    return worst, 0.05, worst < 0.05, "relative"


@criterion(8, "neumann_inversion")
def neumann_inversion(rng):
    G = group.FiniteAbelianGroup((8,))
    e = banach.unit(G)
    worst = 0.0
    for _ in range(20):
        v = _crandn(rng, 8)
        a = group.GroupFun(G, 0.9 * v / np.abs(v).sum())
        inv = banach.neumann_inverse(a, tol=5e-10)
        worst = max(worst, (group.convolve(e - a, inv) - e).l1())
    return worst, 1e-9, worst < 1e-9, ""


@criterion(9, "homomorphism_completeness")
def homomorphism_completeness(rng):
    G = group.FiniteAbelianGroup((6,))
    homs = banach.homs_l1(G, rng=rng, pairs=50)
    mult = max(h.multiplicative_error for h in homs)
    excess = max(h.bound_excess for h in homs)
    ok = len(homs) == 6 and mult < 1e-9 and excess <= 1e-12
    return mult, 1e-9, ok, f"count={len(homs)} bounded={excess <= 1e-12}"


@criterion(10, "cstar_identity")
def cstar_identity(rng):
    worst = 0.0
    for _ in range(50):
        T = _crandn(rng, 8, 8)
        nT = banach.operator_norm(T)
        worst = max(worst, banach.cstar_gap(T) / (nT * nT))
    return worst, 1e-8, worst < 1e-8, "gap / ||T||^2"


@criterion(11, "padic_laws_exact")
def padic_laws_exact(rng):
    p, L = 3, 20
    tw = padic.RadixTower.constant(p, L)
    t = padic.DecaySeq(tuple(Fraction(1, p ** l) for l in range(L + 1)))
    mod = p ** L
    bad = 0

    def rand_elt():
        v = int(rng.integers(0, 10))
        u = int(rng.integers(1, mod))
        while u % p == 0:
            u = int(rng.integers(1, mod))
        return padic.RAdicInt(tw, p ** v * u)

    for _ in range(1000):
        x, y = rand_elt(), rand_elt()
        ax, ay = padic.radic_abs(x, t), padic.radic_abs(y, t)
        s = padic.radic_abs(x + y, t)
        if s > max(ax, ay):
            bad += 1
        if ax != ay and s != max(ax, ay):
            bad += 1
        if padic.radic_abs(x * y, t) != ax * ay:
            bad += 1
        # geometric series: (1 - p l) sum_{j<L} (p l)^j == 1 - (p l)^L == 1 mod p^L
        l = int(rng.integers(0, mod))
        pl = p * l
        geo = sum(pow(pl, j, mod) for j in range(L)) % mod
        if ((1 - pl) * geo - (1 - pow(pl, L, mod))) % mod or (1 - pl) * geo % mod != 1:
            bad += 1
    return float(bad), 0.0, bad == 0, "violations (exact)"


@criterion(12, "unit_inversion")
def unit_inversion(rng):
    bad = 0
    for p in (2, 3, 5):
        tw = padic.RadixTower.constant(p, 20)
        mod = tw.modulus
        for _ in range(500):
            u = int(rng.integers(1, mod))
            while u % p == 0:
                u = int(rng.integers(1, mod))
            x = padic.RAdicInt(tw, u)
            if (x * padic.invert_unit(x)).residue != 1:
                bad += 1
    return float(bad), 0.0, bad == 0, "violations (exact)"


@criterion(13, "haar_zp_exact")
def haar_zp_exact(rng):
    bad = 0
    for p in (2, 3, 5):
        for j in range(7):
            n = p ** j
            centers = range(n) if n <= 64 else [int(c) for c in rng.integers(0, n, size=64)]
            for a in centers:
                ind = [1 if x == a else 0 for x in range(n)]
                for J in (j, j + 1, j + 2):
                    if padic.haar_integral(ind, p, J, j) != Fraction(1, n):
                        bad += 1
            # translation invariance of level-J sums for a level-j table
            table = [int(v) for v in rng.integers(-9, 10, size=n)]
            J = j + 2
            base = padic.haar_integral(table, p, J, j)
            shift = int(rng.integers(0, p ** J))
            moved = padic.haar_integral(lambda x: table[(x + shift) % n], p, J)
            if moved != base:
                bad += 1
    return float(bad), 0.0, bad == 0, "violations (exact)"


@criterion(14, "zp_fourier_inversion")
def zp_fourier_inversion(rng):
    worst = 0.0
    for _ in range(20):
        f = _crandn(rng, 27)
        back = padic.zp_inverse_fourier(padic.zp_fourier(f, 3), 3)
        worst = max(worst, float(np.abs(back - f).max()))
    return worst, 1e-10, worst < 1e-10, ""


@criterion(15, "qp_self_duality")
def qp_self_duality(rng):
    p, m, k = 2, 2, 2
    n = p ** (m + k)
    refl = (-np.arange(n)) % n
    worst = 0.0
    for _ in range(20):
        f = _crandn(rng, n)
        twice = padic.qp_fourier(padic.qp_fourier(f, p, m, k), p, k, m)
        worst = max(worst, float(np.abs(twice - f[refl]).max()))
    ind = np.array([1.0 if j % 2 == 0 else 0.0 for j in range(4)])
    fixed = float(np.abs(padic.qp_fourier(ind, 2, 1, 1) - ind).max())
    ok = worst < 1e-9 and fixed < 1e-10
    return worst, 1e-9, ok, f"indicator fixed-point error={fixed:.3e} (<1e-10)"


@criterion(16, "solenoid")
def solenoid_checks(rng):
    tw = padic.RadixTower((2, 3, 4, 5))
    R = tw.partial_products()

    def rand_point():
        den = int(rng.integers(1, 50))
        num = int(rng.integers(-10**6, 10**6))
        return solenoid.sol_from_real(tw, Fraction(num, den))

    incoherent = 0
    x = rand_point()
    for _ in range(1000):
        x = x + rand_point()
        if any(x.angles[l + 1] % R[l] != x.angles[l] for l in range(tw.L)):
            incoherent += 1
    gap = 0.0
    for _ in range(500):
        k = int(rng.integers(0, tw.L + 1))
        chi = solenoid.SolenoidChar(tw, k, int(rng.integers(-100, 100)))
        a, b = rand_point(), rand_point()
        gap = max(gap, abs(chi(a + b) - chi(a) * chi(b)))
    cross = 0.0
    for _ in range(50):
        u = padic.RAdicInt(tw, int(rng.integers(0, tw.modulus)))
        k = int(rng.integers(0, tw.L + 1))
        a = int(rng.integers(0, R[k]))
        chi = solenoid.SolenoidChar(tw, k, a)
        cross = max(cross, abs(chi(solenoid.zr_embed(u)) - padic.radic_char_pairing(a, k, u)))
    tp = padic.RadixTower.constant(3, 6)
    for _ in range(50):
        u = padic.RAdicInt(tp, int(rng.integers(0, tp.modulus)))
        k = int(rng.integers(0, tp.L + 1))
        a = int(rng.integers(0, 3 ** k))
        chi = solenoid.SolenoidChar(tp, k, a)
        y = padic.qp_normalize(3, Fraction(a, 3 ** k), L=6)
        cross = max(cross, abs(chi(solenoid.zr_embed(u)) - padic.char_pairing(y, u)))
    ok = incoherent == 0 and gap < 1e-10 and cross < 1e-10
    return gap, 1e-10, ok, f"incoherent={incoherent} cross-module={cross:.1e}"


@criterion(17, "quotient_metric")
def quotient_metric_check(rng):
    G = group.FiniteAbelianGroup((12,))
    elems = list(range(12))
    d = ultra.FiniteMetric.from_function(elems, lambda x, y: min((x - y) % 12, (y - x) % 12))
    q = ultra.quotient_metric(elems, lambda x, y: (x + y) % 12, [0, 6], d)
    bad = 0
    for i in range(len(q)):
        for j in range(len(q)):
            for k in range(len(q)):
                if q.table[i][k] > q.table[i][j] + q.table[j][k]:
                    bad += 1
    ok = bad == 0 and len(q) == G.order // 2
    return float(bad), 0.0, ok, f"cosets={len(q)}"


@criterion(18, "projection_optimality")
def projection_optimality(rng):
    onb = hilbert.gram_schmidt(_crandn(rng, 3, 6))
    v = _crandn(rng, 6)
    proj, res = hilbert.project(v, onb)
    best = float(np.linalg.norm(res))
    worst = math.inf
    for _ in range(1000):
        w = _crandn(rng, 3) @ onb
        worst = min(worst, float(np.linalg.norm(v - w)) - best)
    return max(0.0, -worst), 1e-10, worst >= -1e-10, f"min margin={worst:.3e}"


CRITERIA.sort(key=lambda c: c[0])


def _run_one(entry, seed: int) -> Result:
    number, name, fn = entry
    rng = np.random.default_rng([seed, number])
    try:
        measured, threshold, passed, detail = fn(rng)
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        return Result(number, name, math.nan, math.nan, False, f"error: {type(exc).__name__}: {exc}")
    return Result(number, name, float(measured), float(threshold), bool(passed), detail)


def run_all(seed: int = 0, threads: int | None = None) -> list[Result]:
    if threads is None:
        threads = int(os.environ.get("HARMONIA_THREADS", "1") or 1)
    threads = max(1, threads)
    if threads == 1:
        return [_run_one(c, seed) for c in CRITERIA]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda c: _run_one(c, seed), CRITERIA))


def format_report(results: list[Result], seed: int) -> str:
    lines = [f"harmonia acceptance suite, seed={seed}"]
    lines += [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    return "\n".join(lines) + "\n"
