"""The convolution algebra l^1(A) of a finite abelian group, and small matrix algebras.

Multiplication in l^1(A) is convolution under counting measure, the unit is
delta_0, and the norm is sum |x(a)|.  Matrix norms are operator 2-norms found
by power iteration, which is what the C*-identity check exercises.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .group import (COUNTING, FiniteAbelianGroup, GroupChar, GroupFun, convolve,
                    dft)

__all__ = [
    "NormTooLargeError",
    "L1AlgebraElement",
    "unit",
    "convolution_matrix",
    "neumann_inverse",
    "spectral_radius_seq",
    "spectrum_via_characters",
    "is_singular",
    "Homomorphism",
    "homs_l1",
    "operator_norm",
    "cstar_gap",
    "perturbed_inverse",
]


class NormTooLargeError(ValueError):
    """Neumann series requested for an element of norm >= 1."""


L1AlgebraElement = GroupFun


def _require_counting(x: GroupFun):
    if x.haar != COUNTING:
        raise ValueError("l^1(A) elements use counting measure")


def unit(group: FiniteAbelianGroup) -> GroupFun:
    return GroupFun.delta(group)


def convolution_matrix(x: GroupFun) -> np.ndarray:
    """Matrix C with C @ v == (x * v).values, i.e. C[i, j] = x(e_i - e_j)."""
    _require_counting(x)
    g = x.group
    elems = g.elements()
    C = np.empty((g.order, g.order), dtype=complex)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            C[i, j] = x.values[g.index(g.sub(a, b))]
    return C


def neumann_inverse(a: GroupFun, tol: float = 1e-12) -> GroupFun:
    """(delta_0 - a)^{-1} as a partial sum of sum_j a^{*j}.

    Terms are added until the geometric tail bound ||a||^{n+1} / (1 - ||a||)
    falls below `tol`.
    """
    _require_counting(a)
    nrm = a.l1()
    if nrm >= 1:
        raise NormTooLargeError(f"||a||_1 = {nrm} >= 1; the series need not converge")
    e = unit(a.group)
    total = e
    if nrm == 0:
        return total
    term = e
    tail = nrm / (1 - nrm)
    while tail >= tol:
        term = convolve(term, a)
        total = total + term
        tail *= nrm
    return total


def spectral_radius_seq(x: GroupFun, k_max: int) -> tuple[list[float], float]:
    """||x^{*k}||_1^{1/k} for k = 1..k_max and their minimum.

    Powers are renormalized at each step and the scale kept as a logarithm,
    so large k does not overflow.
    """
    _require_counting(x)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    seq: list[float] = []
    v = x
    log_scale = 0.0
    for k in range(1, k_max + 1):
        nv = v.l1()
        if nv == 0.0:
            seq.extend([0.0] * (k_max - k + 1))
            break
        log_norm = log_scale + math.log(nv)
        seq.append(math.exp(log_norm / k))
        if k < k_max:
            v = convolve(v * (1.0 / nv), x)
            log_scale = log_norm
    return seq, min(seq)


def spectrum_via_characters(x: GroupFun) -> list[complex]:
    """The transform values xhat(phi), in character order.

    For finite A these are all the values of complex homomorphisms on l^1(A),
    hence the whole spectrum of x.
    """
    _require_counting(x)
    return [complex(v) for v in dft(x).values]


def is_singular(x: GroupFun, lam: complex, tol: float = 1e-8) -> bool:
    """Whether lam*delta_0 - x fails to be invertible under convolution.

    Decided by the smallest singular value of the convolution matrix, scaled by
    max(1, largest singular value).
    """
    C = lam * np.eye(x.group.order) - convolution_matrix(x)
    s = np.linalg.svd(C, compute_uv=False)
    return bool(s[-1] / max(1.0, s[0]) < tol)


@dataclass(frozen=True)
class Homomorphism:
    """f -> fhat(phi) on l^1(A), with the results of its verification."""

    character: GroupChar
    multiplicative_error: float
    bound_excess: float

    def __call__(self, f: GroupFun) -> complex:
        _require_counting(f)
        chi = self.character
        phi = chi.table()
        return complex(np.sum(f.values * np.conj(phi)))


def homs_l1(group: FiniteAbelianGroup, rng=None, pairs: int = 50) -> list[Homomorphism]:
    """Every nonzero complex homomorphism of l^1(A), one per character.

    Each is checked on `pairs` random pairs for |Phi(f*g) - Phi(f)Phi(g)| and
    for |Phi(f)| <= ||f||_1; the worst values are stored on the result.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    n = group.order
    samples = []
    for _ in range(pairs):
        f = GroupFun(group, rng.normal(size=n) + 1j * rng.normal(size=n))
        g = GroupFun(group, rng.normal(size=n) + 1j * rng.normal(size=n))
        samples.append((f, g, convolve(f, g)))
    out = []
    for chi in group.characters():
        probe = Homomorphism(chi, 0.0, 0.0)
        mult = 0.0
        excess = -math.inf
        for f, g, fg in samples:
            pf, pg = probe(f), probe(g)
            mult = max(mult, abs(probe(fg) - pf * pg))
            excess = max(excess, abs(pf) - f.l1(), abs(pg) - g.l1())
        out.append(Homomorphism(chi, mult, excess))
    return out


def operator_norm(T, iters: int = 500, rtol: float = 1e-12) -> float:
    """Largest singular value of T by power iteration on T^* T.

    The start vector is fixed, so the result is deterministic.
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2:
        raise ValueError("expected a matrix")
    n = T.shape[1]
    if n == 0 or not np.any(T):
        return 0.0
    A = T.conj().T @ T
    v = np.ones(n, dtype=complex) + 1j * np.arange(n) / max(n, 1)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iters):
        w = A @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            # start vector in the kernel; restart on a coordinate vector
            v = np.zeros(n, dtype=complex)
            v[int(np.argmax(np.linalg.norm(T, axis=0)))] = 1
            continue
        new = float(np.real(np.vdot(v, w)))
        v = w / nw
        if abs(new - lam) <= rtol * abs(new):
            lam = new
            break
        lam = new
    return math.sqrt(max(lam, 0.0))


def cstar_gap(T) -> float:
    """| ||T^* T|| - ||T||^2 | with both norms from independent power iterations."""
    T = np.asarray(T, dtype=complex)
    if T.shape[0] != T.shape[1]:
        raise ValueError("expected a square matrix")
    if T.shape[0] > 256:
        raise ValueError("matrix larger than 256 x 256")
    nT = operator_norm(T)
    nTT = operator_norm(T.conj().T @ T)
    return abs(nTT - nT * nT)


def perturbed_inverse(x_inv, x, y, tol: float = 1e-14, max_terms: int = 10_000) -> np.ndarray:
    """y^{-1} from x^{-1}, using y = x (e - x^{-1}(x - y)).

    Requires ||x^{-1}(x - y)|| < 1; then y^{-1} = sum_j (x^{-1}(x - y))^j x^{-1}.
    """
    x_inv = np.asarray(x_inv, dtype=complex)
    D = x_inv @ (np.asarray(x, dtype=complex) - np.asarray(y, dtype=complex))
    q = operator_norm(D)
    if q >= 1:
        raise NormTooLargeError(f"||x^-1 (x - y)|| = {q} >= 1")
    term = x_inv.copy()
    total = term.copy()
    tail = q / (1 - q) if q > 0 else 0.0
    scale = operator_norm(x_inv)
    k = 0
    while tail * scale >= tol and k < max_terms:
        term = D @ term
        total += term
        tail *= q
        k += 1
    return total
