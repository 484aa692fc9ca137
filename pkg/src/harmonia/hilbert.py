"""Finite-dimensional inner products, l^p norms, projections and double sums.

Index sets are always finite.  Weights live on the index set so that the same
``IndexedFun`` serves plain l^2(E) (unit weights) and L^2 of a finite group
under normalized Haar measure (weights 1/|A|).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalar import as_rational, complex_from_json, complex_to_json

__all__ = [
    "IndexMismatchError",
    "OrthonormalityError",
    "IndexedFun",
    "inner_product",
    "lp_norm",
    "conjugate_exponent",
    "dual_norm",
    "project",
    "gram_schmidt",
    "double_sum",
]


class IndexMismatchError(ValueError):
    """Two IndexedFuns disagree on labels or weights."""


class OrthonormalityError(ValueError):
    pass


@dataclass(frozen=True)
class IndexedFun:
    """A complex function on a finite ordered label set, with positive weights."""

    labels: tuple
    values: np.ndarray
    weights: tuple = field(default=None)

    def __post_init__(self):
        labels = tuple(self.labels)
        values = np.asarray(self.values, dtype=complex).reshape(-1)
        if len(values) != len(labels):
            raise ValueError("one value per label required")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        if self.weights is None:
            weights = (Fraction(1),) * len(labels)
        else:
            weights = tuple(as_rational(w) for w in self.weights)
        if len(weights) != len(labels):
            raise ValueError("one weight per label required")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_values(cls, values, weights=None, labels=None):
        values = np.asarray(values, dtype=complex).reshape(-1)
        if labels is None:
            labels = tuple(range(len(values)))
        return cls(labels, values, weights)

    @property
    def weight_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    def __len__(self):
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "values": [complex_to_json(v) for v in self.values],
            "weights": [str(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "IndexedFun":
        labels = doc["labels"]
        values = [complex_from_json(v) for v in doc["values"]]
        weights = doc.get("weights")
        return cls(tuple(labels), np.array(values, dtype=complex), weights)


def _check_compatible(f: IndexedFun, g: IndexedFun):
    if f.labels != g.labels:
        raise IndexMismatchError("index sets differ")
    if f.weights != g.weights:
        raise IndexMismatchError("weights differ")


def inner_product(f: IndexedFun, g: IndexedFun) -> complex:
    """sum_x f(x) conj(g(x)) w(x)."""
    _check_compatible(f, g)
    return complex(np.sum(f.values * np.conj(g.values) * f.weight_array))


def lp_norm(f: IndexedFun, p) -> float:
    """Weighted l^p norm; ``p = math.inf`` gives the sup norm (weights ignored).

    For 0 < p < 1 this is the usual quasi-norm (sum w |f|^p)^(1/p).
    """
    a = np.abs(f.values)
    if p == math.inf:
        return float(a.max()) if len(a) else 0.0
    p = float(p)
    if not p > 0:
        raise ValueError("p must be positive or inf")
    if not len(a):
        return 0.0
    # Scale by the sup to keep |f|^p in range for large p.
    m = float(a.max())
    if m == 0.0:
        return 0.0
    s = float(np.sum(f.weight_array * (a / m) ** p))
    return m * s ** (1.0 / p)


def conjugate_exponent(p):
    """q with 1/p + 1/q = 1, for p in [1, inf]."""
    if p == math.inf:
        return 1.0
    p = float(p)
    if p < 1:
        raise ValueError("p must lie in [1, inf]")
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


def dual_norm(g: IndexedFun, p) -> tuple[float, IndexedFun]:
    """Norm of the functional f -> sum f g w on weighted l^p, with an extremal witness.

    Returns ``(||g||_q, f)`` where ``||f||_p <= 1`` and ``sum f g w`` attains
    ``||g||_q``.
    """
    q = conjugate_exponent(p)
    norm = lp_norm(g, q)
    vals = g.values
    f = np.zeros(len(vals), dtype=complex)
    if norm == 0.0:
        return 0.0, IndexedFun(g.labels, f, g.weights)
    a = np.abs(vals)
    nz = a > 0
    sign = np.zeros(len(vals), dtype=complex)
    sign[nz] = np.conj(vals[nz]) / a[nz]
    if q == math.inf:
        # p = 1: a single point mass at the largest |g|, normalized by its weight
        k = int(np.argmax(a))
        f[k] = sign[k] / float(g.weights[k])
    elif q == 1.0:
        f = sign
    else:
        f[nz] = sign[nz] * (a[nz] / norm) ** (q - 1.0)
    return norm, IndexedFun(g.labels, f, g.weights)


def _as_matrix(vs) -> np.ndarray:
    m = np.asarray(vs, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ValueError("expected a list of equal-length vectors")
    return m


def _vdot(u, v) -> complex:
    # <u, v> = sum u conj(v), linear in the first slot
    return complex(np.sum(u * np.conj(v)))


def project(v, onb, check_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal projection onto span(onb) and the residual ``v - P v``.

    Raises OrthonormalityError if the Gram matrix of `onb` is further than
    `check_tol` from the identity.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    basis = _as_matrix(onb) if len(onb) else np.zeros((0, len(v)), dtype=complex)
    if basis.shape[1] != len(v):
        raise ValueError("dimension mismatch between v and onb")
    gram = basis @ basis.conj().T
    err = np.abs(gram - np.eye(len(basis))).max() if len(basis) else 0.0
    if err > check_tol:
        raise OrthonormalityError(f"basis deviates from orthonormal by {err:.3g}")
    proj = np.zeros(len(v), dtype=complex)
    for b in basis:
        proj = proj + _vdot(v, b) * b
    return proj, v - proj


def gram_schmidt(vs, tol: float = 1e-10) -> np.ndarray:
    """Classical Gram-Schmidt with one re-orthogonalization pass.

    Vectors whose residual norm falls below `tol` are treated as dependent and
    dropped.  Returns an ``(k, n)`` array of orthonormal rows.
    """
    vs = _as_matrix(vs)
    out: list[np.ndarray] = []
    for v in vs:
        w = v.copy()
        for _ in range(2):
            coeffs = [_vdot(w, u) for u in out]
            for c, u in zip(coeffs, out):
                w = w - c * u
        nrm = float(np.linalg.norm(w))
        if nrm < tol:
            continue
        out.append(w / nrm)
    if not out:
        return np.zeros((0, vs.shape[1]), dtype=complex)
    return np.array(out)


def double_sum(table: Sequence[Sequence]) -> tuple:
    """Total, row sums and column sums of a finite table.

    Works on any numeric entries; ints and Fractions stay exact.
    """
    rows = [list(r) for r in table]
    if not rows:
        return 0, [], []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged table")
    row_sums = [sum(r, 0) for r in rows]
    col_sums = [sum((r[j] for r in rows), 0) for j in range(width)]
    total = sum(row_sums, 0)
    return total, row_sums, col_sums
