"""Fourier series on the unit circle.

Functions are either trigonometric polynomials (finitely many coefficients
a_n, -N <= n <= N) or uniform samples f(exp(2 pi i k / M)).  Every integral
over T is the uniform M-point rule, which is exact for frequencies |n| < M.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .scalar import complex_from_json, complex_to_json

__all__ = [
    "AliasingError",
    "TrigPoly",
    "SampledCircleFun",
    "fourier_coeff",
    "abel_sum",
    "abel_means",
    "poisson_kernel",
    "poisson_extension",
    "convolve_sequences",
    "parseval_gap",
    "kernel_table",
    "MAX_DEGREE",
]

MAX_DEGREE = 4096


class AliasingError(ValueError):
    """Too few samples to resolve the requested frequency."""


@dataclass(frozen=True)
class TrigPoly:
    """f(z) = sum_{n=-N}^{N} a_n z^n, coefficients stored from n = -N upward."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if len(c) % 2 == 0:
            raise ValueError("coefficient array must have odd length 2N + 1")
        if (len(c) - 1) // 2 > MAX_DEGREE:
            raise ValueError(f"degree exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @classmethod
    def from_dict(cls, coeffs: dict, N: Optional[int] = None) -> "TrigPoly":
        keys = [int(k) for k in coeffs]
        if N is None:
            N = max((abs(k) for k in keys), default=0)
        arr = np.zeros(2 * N + 1, dtype=complex)
        for k, v in coeffs.items():
            k = int(k)
            if abs(k) > N:
                raise ValueError(f"frequency {k} exceeds degree {N}")
            arr[k + N] = v
        return cls(arr)

    @classmethod
    def zero(cls, N: int = 0) -> "TrigPoly":
        return cls(np.zeros(2 * N + 1, dtype=complex))

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])

    def frequencies(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def bandwidth(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        if not len(nz):
            return 0
        return int(max(abs(nz[0] - self.N), abs(nz[-1] - self.N)))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        n = self.frequencies()
        return np.sum(self.coeffs * z[..., None] ** n, axis=-1)

    def at_angle(self, theta):
        theta = np.asarray(theta, dtype=float)
        n = self.frequencies()
        return np.exp(1j * np.multiply.outer(theta, n)) @ self.coeffs

    def sample(self, M: int) -> "SampledCircleFun":
        theta = 2 * np.pi * np.arange(M) / M
        return SampledCircleFun(self.at_angle(theta), bandwidth=self.bandwidth())

    def l1(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "coeffs": {str(int(n)): complex_to_json(c) for n, c in zip(self.frequencies(), self.coeffs) if c != 0},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TrigPoly":
        coeffs = {int(k): complex_from_json(v) for k, v in doc["coeffs"].items()}
        return cls.from_dict(coeffs, N=int(doc.get("N", max((abs(k) for k in coeffs), default=0))))


@dataclass(frozen=True)
class SampledCircleFun:
    """Values of f at the M-th roots of unity, k = 0..M-1.

    `bandwidth` is optional; when known it lets fourier_coeff refuse aliased
    requests.
    """

    values: np.ndarray
    bandwidth: Optional[int] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if len(v) < 1:
            raise ValueError("need at least one sample")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return len(self.values)

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    def to_json(self) -> dict:
        doc = {"M": self.M, "values": [complex_to_json(v) for v in self.values]}
        if self.bandwidth is not None:
            doc["bandwidth"] = self.bandwidth
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SampledCircleFun":
        vals = [complex_from_json(v) for v in doc["values"]]
        if "M" in doc and int(doc["M"]) != len(vals):
            raise ValueError("M does not match the number of values")
        return cls(np.array(vals, dtype=complex), doc.get("bandwidth"))


def fourier_coeff(f, n: int) -> complex:
    """(1/2 pi) integral of f(z) conj(z)^n |dz|, by the uniform rule.

    A TrigPoly is sampled at M = 2 * max(N, |n|) + 2 points, where the rule is
    exact.
    """
    if isinstance(f, TrigPoly):
        M = 2 * max(f.N, abs(n)) + 2
        f = f.sample(M)
    M = f.M
    if f.bandwidth is not None and M <= 2 * max(abs(n), f.bandwidth):
        raise AliasingError(f"{M} samples cannot resolve frequency {n} with bandwidth {f.bandwidth}")
    k = np.arange(M)
    w = np.exp(-2j * np.pi * ((n * k) % M) / M)
    return complex(np.sum(f.values * w) / M)


def _check_r(r):
    if not (0 <= r < 1):
        raise ValueError(f"r must lie in [0, 1), got {r}")


def abel_sum(a: TrigPoly, r: float, z) -> complex:
    """sum_n a_n r^|n| z^n, summed term by term."""
    _check_r(r)
    z = complex(z)
    if abs(abs(z) - 1) > 1e-9:
        raise ValueError("z must lie on the unit circle")
    total = 0j
    for n, c in zip(a.frequencies(), a.coeffs):
        if c == 0:
            continue
        total += c * r ** abs(int(n)) * z ** int(n)
    return total


def abel_means(a: TrigPoly, r: float, theta) -> np.ndarray:
    """f_r at the given angles (vectorized abel_sum)."""
    _check_r(r)
    n = a.frequencies()
    damp = a.coeffs * float(r) ** np.abs(n)
    return np.exp(1j * np.multiply.outer(np.asarray(theta, dtype=float), n)) @ damp


def poisson_kernel(r: float, z, w) -> float:
    """(1 - r^2) / |1 - r z conj(w)|^2 for z, w on T."""
    _check_r(r)
    d = 1 - r * complex(z) * complex(w).conjugate()
    return (1 - r * r) / (d.real * d.real + d.imag * d.imag)


def poisson_extension(f: SampledCircleFun, r: float, z) -> complex:
    """(1/2 pi) integral of P(r z, w) f(w) |dw| by the uniform rule on f's samples."""
    _check_r(r)
    theta = math.atan2(complex(z).imag, complex(z).real)
    return complex(_kernels.poisson_quadrature(float(r), theta, f.values))


def convolve_sequences(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    """Cauchy product c_n = sum_j a_j b_{n-j}, computed exactly on the finite supports."""
    N = a.N + b.N
    c = np.zeros(2 * N + 1, dtype=complex)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        c[i:i + len(b.coeffs)] += ai * b.coeffs
    return TrigPoly(c)


def parseval_gap(f: TrigPoly, M: int) -> float:
    """| sum |a_n|^2 - mean over M samples of |f|^2 |."""
    if M <= 2 * f.N:
        raise AliasingError(f"need M > 2N = {2 * f.N}")
    s = f.sample(M).values
    lhs = math.fsum(np.abs(f.coeffs) ** 2)
    rhs = math.fsum(np.abs(s) ** 2) / M
    return abs(lhs - rhs)


def kernel_table(rs, M: int) -> list[tuple]:
    """Rows (r, theta_z, theta_w, P) on an M x M angle grid, for CSV export."""
    rows = []
    th = 2 * np.pi * np.arange(M) / M
    for r in rs:
        for tz in th:
            for tw in th:
                rows.append((float(r), float(tz), float(tw),
                             poisson_kernel(r, complex(np.cos(tz), np.sin(tz)), complex(np.cos(tw), np.sin(tw)))))
    return rows
