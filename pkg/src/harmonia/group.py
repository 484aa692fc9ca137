"""Harmonic analysis on finite abelian groups Z/n_1 x ... x Z/n_m.

Elements are exponent tuples in lexicographic order and characters are
indexed by the same tuples: phi_b(x) = prod_k exp(2 pi i x_k b_k / n_k).
The transform uses the conjugate character,

    fhat(phi) = sum_x f(x) conj(phi(x)) w,

with w = 1 for counting measure and w = 1/|A| for normalized Haar measure.
A transform carries the dual normalization (counting <-> normalized), so
``idft(dft(f))`` needs no extra argument.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .fft import group_fft
from .scalar import as_rational, complex_from_json, complex_to_json, root_of_unity

__all__ = [
    "GroupMismatchError",
    "FiniteAbelianGroup",
    "GroupChar",
    "GroupFun",
    "GroupMeasure",
    "char_eval",
    "character_matrix",
    "dft",
    "idft",
    "convolve",
    "translate",
    "involution",
    "conv_operator_spectrum",
    "Eigenpair",
    "subgroup_generated",
    "annihilator",
    "second_dual_check",
    "orbit_density",
    "OrbitResult",
    "COUNTING",
    "NORMALIZED",
]

COUNTING = "counting"
NORMALIZED = "normalized"
_DUAL_HAAR = {COUNTING: NORMALIZED, NORMALIZED: COUNTING}


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    moduli: tuple

    def __post_init__(self):
        mods = tuple(int(n) for n in self.moduli)
        if any(n < 1 for n in mods):
            raise ValueError("moduli must be >= 1")
        if not mods:
            mods = (1,)
        object.__setattr__(self, "moduli", mods)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        """lcm of the moduli: every character value is an exponent-th root of unity."""
        return math.lcm(*self.moduli)

    def phase_matrix(self) -> np.ndarray:
        """P[b, x] with phi_b(x) = exp(2 pi i P[b, x] / exponent), exact integers."""
        L = self.exponent
        d = np.array(self.elements(), dtype=np.int64).reshape(self.order, len(self.moduli))
        P = np.zeros((self.order, self.order), dtype=np.int64)
        for k, n in enumerate(self.moduli):
            P += (np.multiply.outer(d[:, k], d[:, k]) % n) * (L // n)
        return P % L

    def __len__(self):
        return self.order

    def elements(self) -> list[tuple]:
        return list(itertools.product(*(range(n) for n in self.moduli)))

    def index(self, x: Sequence[int]) -> int:
        x = self.reduce(x)
        i = 0
        for xk, n in zip(x, self.moduli):
            i = i * n + xk
        return i

    def element(self, i: int) -> tuple:
        out = []
        for n in reversed(self.moduli):
            i, r = divmod(i, n)
            out.append(r)
        return tuple(reversed(out))

    def reduce(self, x) -> tuple:
        if isinstance(x, int):
            x = (x,)
        x = tuple(int(v) for v in x)
        if len(x) != len(self.moduli):
            raise ValueError(f"element {x} has wrong length for moduli {self.moduli}")
        return tuple(v % n for v, n in zip(x, self.moduli))

    def add(self, x, y) -> tuple:
        return tuple((a + b) % n for a, b, n in zip(self.reduce(x), self.reduce(y), self.moduli))

    def neg(self, x) -> tuple:
        return tuple((-a) % n for a, n in zip(self.reduce(x), self.moduli))

    def sub(self, x, y) -> tuple:
        return self.add(x, self.neg(y))

    def zero(self) -> tuple:
        return (0,) * len(self.moduli)

    def characters(self) -> list["GroupChar"]:
        return [GroupChar(self, b) for b in self.elements()]


@dataclass(frozen=True)
class GroupChar:
    group: FiniteAbelianGroup
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", self.group.reduce(self.b))

    def turns(self, x) -> Fraction:
        """The angle of phi_b(x) as an exact fraction of a turn, in [0, 1)."""
        x = self.group.reduce(x)
        return sum((Fraction(xk * bk, n) for xk, bk, n in zip(x, self.b, self.group.moduli)), Fraction(0)) % 1

    def __call__(self, x) -> complex:
        t = self.turns(x)
        return root_of_unity(t.numerator, t.denominator)

    def table(self) -> np.ndarray:
        return np.array([self(x) for x in self.group.elements()])

    def __mul__(self, other: "GroupChar") -> "GroupChar":
        return GroupChar(self.group, self.group.add(self.b, other.b))


def char_eval(chi: GroupChar, x) -> complex:
    return chi(x)


@dataclass(frozen=True)
class GroupFun:
    """Complex values on a finite abelian group, tagged with a Haar normalization."""

    group: FiniteAbelianGroup
    values: np.ndarray
    haar: str = COUNTING

    def __post_init__(self):
        if not isinstance(self.group, FiniteAbelianGroup):
            object.__setattr__(self, "group", FiniteAbelianGroup(tuple(self.group)))
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        if len(v) != self.group.order:
            raise ValueError(f"expected {self.group.order} values, got {len(v)}")
        if self.haar not in _DUAL_HAAR:
            raise ValueError(f"haar must be 'counting' or 'normalized', not {self.haar!r}")
        object.__setattr__(self, "values", v)

    @property
    def weight(self) -> float:
        return 1.0 if self.haar == COUNTING else 1.0 / self.group.order

    @classmethod
    def delta(cls, group: FiniteAbelianGroup, a=None, haar: str = COUNTING, scale=1.0) -> "GroupFun":
        v = np.zeros(group.order, dtype=complex)
        v[group.index(group.zero() if a is None else a)] = scale
        return cls(group, v, haar)

    @classmethod
    def from_char(cls, chi: GroupChar, haar: str = COUNTING) -> "GroupFun":
        return cls(chi.group, chi.table(), haar)

    def __call__(self, x) -> complex:
        return complex(self.values[self.group.index(x)])

    def _same(self, other):
        if self.group != other.group:
            raise GroupMismatchError(f"groups differ: {self.group.moduli} vs {other.group.moduli}")
        if self.haar != other.haar:
            raise GroupMismatchError(f"haar normalizations differ: {self.haar} vs {other.haar}")

    def __add__(self, other):
        self._same(other)
        return GroupFun(self.group, self.values + other.values, self.haar)

    def __sub__(self, other):
        self._same(other)
        return GroupFun(self.group, self.values - other.values, self.haar)

    def __mul__(self, c):
        return GroupFun(self.group, self.values * complex(c), self.haar)

    __rmul__ = __mul__

    def l1(self) -> float:
        return float(np.sum(np.abs(self.values)) * self.weight)

    def l2(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.weight)

    def inner(self, other: "GroupFun") -> complex:
        self._same(other)
        return complex(np.sum(self.values * np.conj(other.values)) * self.weight)

    def to_json(self) -> dict:
        return {
            "moduli": list(self.group.moduli),
            "haar": self.haar,
            "values": [complex_to_json(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GroupFun":
        g = FiniteAbelianGroup(tuple(doc["moduli"]))
        vals = [complex_from_json(v) for v in doc["values"]]
        return cls(g, np.array(vals, dtype=complex), doc.get("haar", COUNTING))


@dataclass(frozen=True)
class GroupMeasure:
    """A complex measure on a finite group, given by its point masses."""

    group: FiniteAbelianGroup
    masses: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=complex).reshape(-1)
        if len(m) != self.group.order:
            raise ValueError(f"expected {self.group.order} masses, got {len(m)}")
        object.__setattr__(self, "masses", m)

    @classmethod
    def delta(cls, group, a=None) -> "GroupMeasure":
        m = np.zeros(group.order, dtype=complex)
        m[group.index(group.zero() if a is None else a)] = 1
        return cls(group, m)

    def total_variation(self) -> float:
        return float(np.sum(np.abs(self.masses)))

    def as_fun(self) -> GroupFun:
        return GroupFun(self.group, self.masses, COUNTING)

    def to_json(self) -> dict:
        return {"moduli": list(self.group.moduli), "masses": [complex_to_json(v) for v in self.masses]}

    @classmethod
    def from_json(cls, doc: dict) -> "GroupMeasure":
        g = FiniteAbelianGroup(tuple(doc["moduli"]))
        return cls(g, np.array([complex_from_json(v) for v in doc["masses"]], dtype=complex))


def character_matrix(group: FiniteAbelianGroup) -> np.ndarray:
    """M[b, x] = phi_b(x), both indices lexicographic."""
    n = group.order
    eye = np.eye(n, dtype=complex)
    # column x of the conjugate-free sum of delta_x is phi_b(x)
    return np.array([_kernels.char_sum(eye[x], group.moduli, 1) for x in range(n)]).T


def dft(f, method: str = "naive") -> GroupFun:
    """Fourier transform over the character group.

    `f` may be a GroupFun or a GroupMeasure (measures transform with unit
    weights).  ``method="fast"`` uses the per-factor Cooley-Tukey transform;
    both methods agree to rounding.
    """
    if isinstance(f, GroupMeasure):
        f = f.as_fun()
    if method == "naive":
        raw = np.asarray(_kernels.char_sum(f.values, f.group.moduli, -1))
    elif method == "fast":
        raw = group_fft(f.values, f.group.moduli, -1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GroupFun(f.group, raw * f.weight, _DUAL_HAAR[f.haar])


def idft(fhat: GroupFun, method: str = "naive") -> GroupFun:
    """Inverse transform: f(x) = sum_phi fhat(phi) phi(x) w_dual."""
    if method == "naive":
        raw = np.asarray(_kernels.char_sum(fhat.values, fhat.group.moduli, 1))
    elif method == "fast":
        raw = group_fft(fhat.values, fhat.group.moduli, 1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GroupFun(fhat.group, raw * fhat.weight, _DUAL_HAAR[fhat.haar])


def convolve(f, g):
    """(f * g)(x) = sum_y f(x - y) g(y) w; also for two GroupMeasures."""
    if isinstance(f, GroupMeasure) or isinstance(g, GroupMeasure):
        if not (isinstance(f, GroupMeasure) and isinstance(g, GroupMeasure)):
            raise TypeError("cannot convolve a measure with a function here")
        if f.group != g.group:
            raise GroupMismatchError("groups differ")
        out = _kernels.cyclic_convolve(f.masses, g.masses, f.group.moduli)
        return GroupMeasure(f.group, out)
    f._same(g)
    out = np.asarray(_kernels.cyclic_convolve(f.values, g.values, f.group.moduli))
    return GroupFun(f.group, out * f.weight, f.haar)


def _translation_index(group: FiniteAbelianGroup, a) -> np.ndarray:
    return np.array([group.index(group.add(x, a)) for x in group.elements()])


def translate(f: GroupFun, a) -> GroupFun:
    """(T_a f)(x) = f(x + a)."""
    return GroupFun(f.group, f.values[_translation_index(f.group, a)], f.haar)


def involution(f: GroupFun) -> GroupFun:
    """x -> conj(f(-x))."""
    g = f.group
    idx = np.array([g.index(g.neg(x)) for x in g.elements()])
    return GroupFun(g, np.conj(f.values[idx]), f.haar)


@dataclass(frozen=True)
class Eigenpair:
    eigenvalue: complex
    character: GroupChar
    residual: float


def conv_operator_spectrum(theta: GroupFun) -> list[Eigenpair]:
    """Eigenvalues of f -> theta * f, one per character, in character order.

    Each character is an eigenvector with eigenvalue thetahat(phi); the
    residual sup|theta * phi - thetahat(phi) phi| is reported alongside.
    """
    if theta.haar != COUNTING:
        raise ValueError("convolution operator spectrum uses counting measure")
    that = dft(theta)
    out = []
    for b, lam in zip(theta.group.elements(), that.values):
        chi = GroupChar(theta.group, b)
        phi = GroupFun.from_char(chi)
        res = convolve(theta, phi).values - lam * phi.values
        out.append(Eigenpair(complex(lam), chi, float(np.abs(res).max())))
    return out


def subgroup_generated(group: FiniteAbelianGroup, gens: Iterable) -> list[tuple]:
    """Elements of the subgroup generated by `gens`, by closure from 0."""
    gens = [group.reduce(h) for h in gens]
    seen = {group.zero()}
    frontier = [group.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = group.add(x, h)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def annihilator(group: FiniteAbelianGroup, gens: Iterable) -> list[GroupChar]:
    """Characters equal to 1 on every generator, hence on the generated subgroup."""
    gens = [group.reduce(h) for h in gens]
    L = group.exponent
    scale = [L // n for n in group.moduli]
    out = []
    for b in group.elements():
        if all(sum(hk * bk * s for hk, bk, s in zip(h, b, scale)) % L == 0 for h in gens):
            out.append(GroupChar(group, b))
    return out


def second_dual_check(group: FiniteAbelianGroup):
    """Check that a -> (phi -> phi(a)) maps A bijectively onto the dual of A-hat.

    Characters of A-hat are indexed like those of A: Phi_c(phi_b) =
    exp(2 pi i sum_k b_k c_k / n_k).  Phases are compared as exact integers
    mod the group exponent.  Returns None on success; otherwise ``(a, a2)``
    for two elements with the same image, or ``(a, None)`` if Psi_a is not a
    character of A-hat.
    """
    P = group.phase_matrix()
    elems = group.elements()
    # row c of the dual table: b -> phase of Phi_c(phi_b)
    dual_rows = {P[:, c].tobytes(): c for c in range(len(elems))}
    if len(dual_rows) != len(elems):
        return (None, None)
    hit: dict = {}
    for a in range(len(elems)):
        psi = P[:, a].tobytes()  # b -> phase of phi_b(a)
        c = dual_rows.get(psi)
        if c is None:
            return (elems[a], None)
        if c in hit:
            return (elems[hit[c]], elems[a])
        hit[c] = a
    return None


@dataclass(frozen=True)
class OrbitResult:
    dense: bool
    gap: float
    points: int
    exact_gap: Optional[Fraction] = None


def orbit_density(angle, epsilon: float, max_iter: int = 10_000) -> OrbitResult:
    """Is {j * angle mod 1 : 0 <= j < max_iter} epsilon-dense in [0, 1)?

    Dense means the largest circular gap between consecutive orbit points is
    below `epsilon`.  Rational angles (int, Fraction or "p/q") are handled
    exactly; floats by sorting the numeric orbit.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if isinstance(angle, float):
        pts = np.sort(np.mod(np.arange(max_iter) * angle, 1.0))
        gaps = np.diff(np.concatenate([pts, [pts[0] + 1.0]]))
        gap = float(gaps.max())
        return OrbitResult(gap < epsilon, gap, len(np.unique(pts)))
    q = as_rational(angle) % 1
    den = q.denominator
    if max_iter >= den:
        gap = Fraction(1, den)
        npts = den
    else:
        pts = sorted({(j * q) % 1 for j in range(max_iter)})
        gaps = [b - a for a, b in zip(pts, pts[1:])] + [pts[0] + 1 - pts[-1]]
        gap = max(gaps)
        npts = len(pts)
    return OrbitResult(gap < epsilon, float(gap), npts, gap)
