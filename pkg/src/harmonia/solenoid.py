"""The r-adic solenoid as coherent towers of angles x_l in R / R_l Z.

Angles are exact Fractions in [0, R_l).  A character is a/R_k in B_r and
reads only the level-k angle: chi(x) = exp(2 pi i a x_k / R_k).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .padic import PrecisionError, RadixTower, RAdicInt, TowerMismatchError
from .scalar import as_rational, turn

__all__ = [
    "CoherenceError",
    "SolenoidPoint",
    "SolenoidChar",
    "sol_from_real",
    "sol_add",
    "sol_neg",
    "zr_embed",
    "sol_char_eval",
    "project",
    "uniform_fiber_sample",
    "quotient_orthogonality",
]


class CoherenceError(ValueError):
    pass


@dataclass(frozen=True)
class SolenoidPoint:
    tower: RadixTower
    angles: tuple

    def __post_init__(self):
        ang = tuple(as_rational(a) for a in self.angles)
        R = self.tower.partial_products()
        if len(ang) != len(R):
            raise ValueError(f"need {len(R)} angles (levels 0..{self.tower.L}), got {len(ang)}")
        for l, (a, Rl) in enumerate(zip(ang, R)):
            if not 0 <= a < Rl:
                raise ValueError(f"angle x_{l} = {a} outside [0, {Rl})")
        for l in range(len(ang) - 1):
            if ang[l + 1] % R[l] != ang[l]:
                raise CoherenceError(f"x_{l + 1} = {ang[l + 1]} does not reduce to x_{l} = {ang[l]} mod {R[l]}")
        object.__setattr__(self, "angles", ang)

    def __add__(self, other):
        return sol_add(self, other)

    def __neg__(self):
        return sol_neg(self)

    def __sub__(self, other):
        return sol_add(self, sol_neg(other))

    def to_json(self) -> dict:
        return {"radices": list(self.tower.radices), "angles": [str(a) for a in self.angles]}

    @classmethod
    def from_json(cls, doc: dict) -> "SolenoidPoint":
        return cls(RadixTower(tuple(doc["radices"])), tuple(Fraction(str(a)) for a in doc["angles"]))


@dataclass(frozen=True)
class SolenoidChar:
    """The character a / R_k of the solenoid."""

    tower: RadixTower
    level: int
    a: int

    def __post_init__(self):
        if not 0 <= self.level <= self.tower.L:
            raise PrecisionError(f"level {self.level} exceeds precision {self.tower.L}")

    @property
    def frequency(self) -> Fraction:
        """a / R_k as an element of B_r."""
        return Fraction(self.a, self.tower.R(self.level))

    def __eq__(self, other):
        return isinstance(other, SolenoidChar) and self.tower == other.tower and self.frequency == other.frequency

    def __hash__(self):
        return hash((self.tower, self.frequency))

    def __call__(self, x: SolenoidPoint) -> complex:
        return sol_char_eval(self, x)


def sol_from_real(tower: RadixTower, a) -> SolenoidPoint:
    """a -> (a mod R_0, a mod R_1, ..., a mod R_L)."""
    a = as_rational(a)
    return SolenoidPoint(tower, tuple(a % R for R in tower.partial_products()))


def _same_tower(x: SolenoidPoint, y: SolenoidPoint):
    if x.tower != y.tower:
        raise TowerMismatchError("solenoid points on different towers")


def sol_add(x: SolenoidPoint, y: SolenoidPoint) -> SolenoidPoint:
    _same_tower(x, y)
    R = x.tower.partial_products()
    return SolenoidPoint(x.tower, tuple((a + b) % Rl for a, b, Rl in zip(x.angles, y.angles, R)))


def sol_neg(x: SolenoidPoint) -> SolenoidPoint:
    R = x.tower.partial_products()
    return SolenoidPoint(x.tower, tuple((-a) % Rl for a, Rl in zip(x.angles, R)))


def project(x: SolenoidPoint, k: int) -> Fraction:
    """pi_k(x) = x_k."""
    return x.angles[k]


def zr_embed(u: RAdicInt) -> SolenoidPoint:
    """Z_r onto the fiber over 0: x_0 = 0 and x_l = u mod R_l."""
    R = u.tower.partial_products()
    return SolenoidPoint(u.tower, tuple(Fraction(u.residue % Rl) for Rl in R))


def sol_char_eval(chi: SolenoidChar, x: SolenoidPoint) -> complex:
    if chi.tower != x.tower:
        raise TowerMismatchError("character and point on different towers")
    k = chi.level
    return turn(chi.a * x.angles[k] / x.tower.R(k))


def uniform_fiber_sample(tower: RadixTower, k: int, M: int, rng) -> list[SolenoidPoint]:
    """M points whose level-k angles form a randomly rotated uniform grid on [0, R_k).

    Each point is lifted to the higher levels by random integer shifts, so the
    points spread over the fibers of pi_k as well.
    """
    R = tower.partial_products()
    Rk = R[k]
    offset = Fraction(int(rng.integers(0, 10**6)), 10**6 * M)
    pts = []
    for j in range(M):
        xk = (Fraction(j * Rk, M) + offset * Rk) % Rk
        top = xk + Rk * int(rng.integers(0, R[-1] // Rk))
        pts.append(sol_from_real(tower, top))
    return pts


def quotient_orthogonality(chi: SolenoidChar, psi: SolenoidChar, M: int = 0) -> complex:
    """Mean of chi * conj(psi) over the points sol_from_real(j R_k / M), j < M.

    k is the larger of the two levels.  Both characters only read x_k, and
    these x_k run over the cyclic subgroup of order M in R / R_k Z, so the mean
    is a root-of-unity sum that vanishes unless M divides the difference of
    the numerators at level k.  M defaults to one more than that difference.
    """
    if chi.tower != psi.tower:
        raise TowerMismatchError("characters on different towers")
    tower = chi.tower
    k = max(chi.level, psi.level)
    Rk = tower.R(k)
    a = chi.frequency * Rk
    b = psi.frequency * Rk
    if M <= 0:
        M = int(abs(a - b)) + 1
    total = 0j
    for j in range(M):
        x = sol_from_real(tower, Fraction(j * Rk, M))
        total += sol_char_eval(chi, x) * sol_char_eval(psi, x).conjugate()
    return total / M
