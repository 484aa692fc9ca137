"""Exact r-adic and p-adic arithmetic on truncated towers.

An r-adic integer is stored as one residue mod R_L, where R_l = r_1 ... r_l;
its level-l coordinate is ``residue % R_l``, so coherence holds by
construction.  A p-adic number is p^v times a unit stored the same way.
Characters are evaluated from exact fractions of a turn; the only floating
point step is the final root of unity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .scalar import as_rational, root_of_unity, turn
from .ultra import DecaySeq

__all__ = [
    "TowerMismatchError",
    "NotAUnitError",
    "PrecisionError",
    "RadixTower",
    "RAdicInt",
    "PAdicNumber",
    "PrueferElement",
    "ext_gcd",
    "radic_from_int",
    "radic_arith",
    "valuation",
    "radic_abs",
    "invert_unit",
    "geometric_inverse",
    "ord_p",
    "qp_normalize",
    "char_pairing",
    "radic_char_pairing",
    "haar_integral",
    "zp_fourier",
    "zp_inverse_fourier",
    "qp_fourier",
    "DEFAULT_PRIME_PRECISION",
    "DEFAULT_MIXED_PRECISION",
]

DEFAULT_PRIME_PRECISION = 20
DEFAULT_MIXED_PRECISION = 12


class TowerMismatchError(ValueError):
    pass


class NotAUnitError(ArithmeticError):
    def __init__(self, residue, modulus, g):
        super().__init__(f"{residue} is not invertible mod {modulus}: gcd = {g}")
        self.gcd = g


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RadixTower:
    radices: tuple

    def __post_init__(self):
        r = tuple(int(x) for x in self.radices)
        if any(x < 2 for x in r):
            raise ValueError("radices must be >= 2")
        object.__setattr__(self, "radices", r)

    @classmethod
    def constant(cls, p: int, L: int = DEFAULT_PRIME_PRECISION) -> "RadixTower":
        return cls((p,) * L)

    @property
    def L(self) -> int:
        return len(self.radices)

    def R(self, l: int) -> int:
        """Partial product R_l, with R_0 = 1."""
        if not 0 <= l <= self.L:
            raise ValueError(f"level {l} outside 0..{self.L}")
        return math.prod(self.radices[:l])

    @property
    def modulus(self) -> int:
        return self.R(self.L)

    def partial_products(self) -> list[int]:
        out = [1]
        for r in self.radices:
            out.append(out[-1] * r)
        return out

    @property
    def is_constant(self) -> bool:
        return len(set(self.radices)) <= 1

    def default_decay(self) -> DecaySeq:
        return DecaySeq.reciprocal_products(self.radices)


@dataclass(frozen=True)
class RAdicInt:
    tower: RadixTower
    residue: int

    def __post_init__(self):
        object.__setattr__(self, "residue", int(self.residue) % self.tower.modulus)

    def level(self, l: int) -> int:
        """Coordinate x_l = residue mod R_l."""
        return self.residue % self.tower.R(l)

    def coordinates(self) -> list[int]:
        return [self.residue % R for R in self.tower.partial_products()[1:]]

    def _check(self, other):
        if not isinstance(other, RAdicInt) or other.tower != self.tower:
            raise TowerMismatchError("r-adic integers on different towers")

    def __add__(self, other):
        return radic_arith(self, other, "add")

    def __sub__(self, other):
        return radic_arith(self, other, "sub")

    def __mul__(self, other):
        return radic_arith(self, other, "mul")

    def __neg__(self):
        return radic_arith(self, None, "neg")

    def to_json(self) -> dict:
        return {"radices": list(self.tower.radices), "residue": str(self.residue)}

    @classmethod
    def from_json(cls, doc: dict) -> "RAdicInt":
        return cls(RadixTower(tuple(doc["radices"])), int(str(doc["residue"])))


def radic_from_int(tower: RadixTower, a: int) -> RAdicInt:
    return RAdicInt(tower, a)


def radic_arith(x: RAdicInt, y: Optional[RAdicInt], op: str) -> RAdicInt:
    """add, sub, mul or neg, exactly mod R_L."""
    if op == "neg":
        return RAdicInt(x.tower, -x.residue)
    x._check(y)
    if op == "add":
        r = x.residue + y.residue
    elif op == "sub":
        r = x.residue - y.residue
    elif op == "mul":
        r = x.residue * y.residue
    else:
        raise ValueError(f"unknown operation {op!r}")
    return RAdicInt(x.tower, r)


def valuation(x: RAdicInt) -> int:
    """Largest l <= L with R_l dividing the residue (L for zero)."""
    l = 0
    R = 1
    for r in x.tower.radices:
        R *= r
        if x.residue % R:
            break
        l += 1
    return l


def radic_abs(x: RAdicInt, t: Optional[DecaySeq] = None) -> Fraction:
    """t_{l(x)}, and 0 for the zero residue; t defaults to t_l = 1/R_l."""
    if t is None:
        t = x.tower.default_decay()
    if len(t) < x.tower.L + 1:
        raise ValueError(f"decay sequence needs {x.tower.L + 1} terms")
    if x.residue == 0:
        return Fraction(0)
    return t[valuation(x)]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def invert_unit(x: RAdicInt) -> RAdicInt:
    m = x.tower.modulus
    g, s, _ = ext_gcd(x.residue, m)
    if g != 1:
        raise NotAUnitError(x.residue, m, g)
    return RAdicInt(x.tower, s)


def geometric_inverse(b: int, p: int, L: int) -> int:
    """b^{-1} mod p^L via b*c = 1 - p*l and 1/(1 - p l) = sum_j (p l)^j.

    Independent of the extended-gcd route; kept as a cross-check.
    """
    if b % p == 0:
        raise NotAUnitError(b, p, p)
    m = p ** L
    c = next(c for c in range(1, p) if (b * c) % p == 1) if p > 2 else 1
    pl = (1 - b * c) % m  # p*l
    s = 0
    term = 1
    for _ in range(L):
        s = (s + term) % m
        term = (term * pl) % m
    return (c * s) % m


def ord_p(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PAdicNumber:
    """p^v * unit with the unit known mod p^L; ``unit is None`` is zero.

    Multiplication is exact in the valuation.  Addition can cancel leading
    digits; the result's unit is then only meaningful mod p^(L - shift) and
    the lost digits are filled with zeros.
    """

    p: int
    v: int
    unit: Optional[RAdicInt]

    def __post_init__(self):
        if self.unit is not None:
            if self.unit.tower != RadixTower.constant(self.p, self.unit.tower.L):
                raise ValueError("unit must live on the constant tower of p")
            if self.unit.residue % self.p == 0:
                raise ValueError("unit residue must be prime to p")

    @classmethod
    def zero(cls, p: int, L: int = DEFAULT_PRIME_PRECISION) -> "PAdicNumber":
        return cls(p, L, None)

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    @property
    def L(self) -> int:
        return self.unit.tower.L if self.unit is not None else self.v

    def abs(self) -> Fraction:
        """|x|_p = p^{-v}, exact."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(1, self.p ** self.v) if self.v >= 0 else Fraction(self.p ** (-self.v))

    def _tower(self, other=None) -> RadixTower:
        L = self.L if self.unit is not None else None
        if other is not None and other.unit is not None:
            L = other.L if L is None else min(L, other.L)
        return RadixTower.constant(self.p, L if L is not None else DEFAULT_PRIME_PRECISION)

    def __neg__(self):
        if self.is_zero:
            return self
        return PAdicNumber(self.p, self.v, -self.unit)

    def __mul__(self, other: "PAdicNumber") -> "PAdicNumber":
        if self.p != other.p:
            raise ValueError("different primes")
        if self.is_zero or other.is_zero:
            return PAdicNumber.zero(self.p, min(self.L, other.L))
        tw = self._tower(other)
        return PAdicNumber(self.p, self.v + other.v, RAdicInt(tw, self.unit.residue * other.unit.residue))

    def __add__(self, other: "PAdicNumber") -> "PAdicNumber":
        if self.p != other.p:
            raise ValueError("different primes")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        tw = self._tower(other)
        a, b = (self, other) if self.v <= other.v else (other, self)
        p = self.p
        s = (a.unit.residue + p ** (b.v - a.v) * b.unit.residue) % tw.modulus
        if s == 0:
            return PAdicNumber.zero(p, tw.L)
        w = ord_p(s, p)
        return PAdicNumber(p, a.v + w, RAdicInt(tw, s // p ** w))

    def __sub__(self, other):
        return self + (-other)

    def to_json(self) -> dict:
        if self.is_zero:
            return {"p": self.p, "v": None, "unit": "0"}
        return {"p": self.p, "v": self.v, "unit": str(self.unit.residue), "L": self.L}

    @classmethod
    def from_json(cls, doc: dict) -> "PAdicNumber":
        p = int(doc["p"])
        L = int(doc.get("L", DEFAULT_PRIME_PRECISION))
        if doc.get("v") is None or str(doc["unit"]) == "0":
            return cls.zero(p, L)
        return cls(p, int(doc["v"]), RAdicInt(RadixTower.constant(p, L), int(str(doc["unit"]))))


def qp_normalize(p: int, q, L: int = DEFAULT_PRIME_PRECISION) -> PAdicNumber:
    """Write a rational as p^v * a/b with a, b prime to p; unit = a * b^{-1} mod p^L."""
    q = as_rational(q)
    if q == 0:
        return PAdicNumber.zero(p, L)
    num, den = q.numerator, q.denominator
    vn, vd = ord_p(num, p), ord_p(den, p)
    a, b = num // p ** vn, den // p ** vd
    tw = RadixTower.constant(p, L)
    binv = invert_unit(RAdicInt(tw, b))
    return PAdicNumber(p, vn - vd, RAdicInt(tw, a * binv.residue))


@dataclass(frozen=True)
class PrueferElement:
    """a / p^k mod 1 in lowest terms (a prime to p, or a = 0 with k = 0)."""

    p: int
    a: int
    k: int

    def __post_init__(self):
        if not (0 <= self.a < self.p ** self.k or (self.a == 0 and self.k == 0)):
            raise ValueError("numerator out of range")
        if self.a and self.a % self.p == 0:
            raise ValueError("numerator must be prime to p")

    @classmethod
    def from_fraction(cls, p: int, frac) -> "PrueferElement":
        frac = as_rational(frac) % 1
        if frac == 0:
            return cls(p, 0, 0)
        den = frac.denominator
        k = ord_p(den, p)
        if p ** k != den:
            raise ValueError(f"{frac} is not a p-power fraction")
        return cls(p, frac.numerator, k)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.p ** self.k)

    def to_complex(self) -> complex:
        return root_of_unity(self.a, self.p ** self.k)


def pairing_fraction(y: PAdicNumber, x: RAdicInt) -> PrueferElement:
    """Image of x*y in Q_p/Z_p, as an element of the Pruefer group."""
    p = y.p
    if x.tower != RadixTower.constant(p, x.tower.L):
        raise TowerMismatchError("x must be a p-adic integer for the same prime")
    if y.is_zero or y.v >= 0:
        return PrueferElement(p, 0, 0)
    k = -y.v
    if k > x.tower.L or k > y.L:
        raise PrecisionError(f"valuation {y.v} needs more than {min(x.tower.L, y.L)} digits")
    mod = p ** k
    return PrueferElement.from_fraction(p, Fraction((y.unit.residue * x.residue) % mod, mod))


def char_pairing(y: PAdicNumber, x: RAdicInt) -> complex:
    """phi_y(x) = exp(2 pi i {x y}_p)."""
    return pairing_fraction(y, x).to_complex()


def radic_char_pairing(a: int, k: int, x: RAdicInt) -> complex:
    """exp(2 pi i a x / R_k): the character of Z_r given by a/R_k in B_r."""
    if not 0 <= k <= x.tower.L:
        raise PrecisionError(f"level {k} exceeds precision {x.tower.L}")
    Rk = x.tower.R(k)
    return root_of_unity((a * x.residue) % Rk, Rk)


def haar_integral(f, p: int, J: int, j: Optional[int] = None):
    """Riemann sum p^{-J} sum_{x mod p^J} f(x) for the normalized Haar measure on Z_p.

    `f` is either a table of length p^j (a function constant on cosets of
    p^j Z_p, read at ``x mod p^j``) or a callable sampled at the residues mod
    p^J.  Integer and Fraction tables give an exact Fraction.
    """
    if callable(f):
        vals = [f(x) for x in range(p ** J)]
    else:
        table = list(f)
        if j is None:
            j = round(math.log(len(table), p)) if len(table) > 1 else 0
        if p ** j != len(table):
            raise ValueError(f"table length {len(table)} is not p^{j}")
        if J < j:
            raise ValueError(f"level J = {J} is coarser than the table level j = {j}")
        reps = p ** (J - j)
        # each residue class mod p^j occurs p^(J-j) times among residues mod p^J
        vals = [v * reps for v in table]
    total = sum(vals, 0)
    if _exact(vals):
        return Fraction(total) / p ** J if not isinstance(total, Fraction) else total / p ** J
    return total / p ** J


def _exact(vals) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in vals)


def zp_fourier(f: Sequence, p: int) -> np.ndarray:
    """fhat(a / p^j) = p^{-j} sum_x f(x) exp(-2 pi i a x / p^j), a = 0..p^j - 1."""
    f = np.asarray(f, dtype=complex)
    n = len(f)
    _level(n, p)
    k = np.arange(n)
    w = np.array([root_of_unity(-m, n) for m in range(n)])
    return (w[np.outer(k, k) % n] @ f) / n


def zp_inverse_fourier(fhat: Sequence, p: int) -> np.ndarray:
    """f(x) = sum_a fhat(a / p^j) exp(2 pi i a x / p^j)."""
    fhat = np.asarray(fhat, dtype=complex)
    n = len(fhat)
    _level(n, p)
    k = np.arange(n)
    w = np.array([root_of_unity(m, n) for m in range(n)])
    return w[np.outer(k, k) % n] @ fhat


def _level(n: int, p: int) -> int:
    j = 0
    m = 1
    while m < n:
        m *= p
        j += 1
    if m != n:
        raise ValueError(f"table length {n} is not a power of {p}")
    return j


def qp_fourier(f: Sequence, p: int, m: int, k: int) -> np.ndarray:
    """Fourier transform of a function on the window p^{-m} Z_p / p^k Z_p.

    Entry i of `f` is the value on the coset of i / p^m.  The result lives on
    the dual window p^{-k} Z_p / p^m Z_p, entry i being the value at i / p^k:

        fhat(i/p^k) = p^{-(m+k)/2} sum_j f(j/p^m) exp(-2 pi i {ij / p^(m+k)}).

    With this normalization applying the transform twice gives x -> f(-x).
    """
    if m < 0 or k < 0:
        raise ValueError("window exponents must be >= 0")
    n = p ** (m + k)
    f = np.asarray(f, dtype=complex)
    if len(f) != n:
        raise ValueError(f"window ({m}, {k}) needs {n} values, got {len(f)}")
    idx = np.arange(n)
    w = np.array([turn(Fraction(-t, n)) for t in range(n)])
    return (w[np.outer(idx, idx) % n] @ f) / math.sqrt(n)
