"""Scalars shared by every other module.

Rationals are :class:`fractions.Fraction`; complex values are builtin
``complex`` (a pair of doubles).  Exactness lives in the integer and rational
layer, floats only appear when a character or kernel is evaluated.
"""
import cmath
import math
from fractions import Fraction

__all__ = [
    "EXP_RANGE",
    "Rational",
    "as_rational",
    "exp_approx",
    "root_of_unity",
    "turn",
    "modulus",
    "complex_to_json",
    "complex_from_json",
    "rational_to_json",
    "rational_from_json",
]

Rational = Fraction

# Largest |z| accepted by exp_approx.  Beyond this the alternating partial
# sums lose every significant digit in double precision.
EXP_RANGE = 64.0


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected on purpose: silently turning 0.1 into its binary
    expansion is never what a caller building exact data wants.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def exp_approx(z, tol: float = 1e-12) -> complex:
    """Partial sum of the exponential series, stopped by a ratio-test tail bound.

    Terms ``z**j / j!`` are accumulated until the geometric majorant of the
    remaining tail,

        |z|**j / j! * 1 / (1 - |z| / (j + 1)),

    drops below `tol` (only meaningful once ``j + 1 > |z|``).  The real and
    imaginary parts are summed with :func:`math.fsum`.

    Raises
    ------
    ValueError
        If ``tol <= 0`` or ``|z| > EXP_RANGE``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    z = complex(z)
    a = abs(z)
    if not math.isfinite(a) or a > EXP_RANGE:
        raise ValueError(f"|z| = {a} outside the supported range [0, {EXP_RANGE}]")
    re_terms = []
    im_terms = []
    term = 1 + 0j
    j = 0
    bound = 1.0  # |z|^j / j!
    while True:
        if j + 1 > a:
            tail = bound / (1.0 - a / (j + 1))
            if tail < tol:
                break
        re_terms.append(term.real)
        im_terms.append(term.imag)
        j += 1
        term = term * z / j
        bound = bound * a / j
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def turn(frac) -> complex:
    """exp(2*pi*i*frac) for an exact rational number of turns.

    The fraction is reduced mod 1 first, so quarter and half turns come out
    exact.
    """
    frac = as_rational(frac) % 1
    num, den = frac.numerator, frac.denominator
    return root_of_unity(num, den)


def root_of_unity(k: int, n: int) -> complex:
    """exp(2*pi*i*k/n).

    Exact at multiples of a quarter turn; elsewhere the angle is reduced to
    the octant nearest the real or imaginary axis so that cos/sin see small
    arguments.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k %= n
    # Work in units of 1/(8n) turns so every octant boundary is an integer.
    e = 8 * k
    full = 8 * n
    q, rem = divmod(e, 2 * n)  # quarter-turn index and remainder (< 2n)
    if rem == 0:
        base = 1 + 0j
    else:
        if rem > n:
            q += 1
            rem -= 2 * n
        theta = 2.0 * math.pi * rem / full
        base = complex(math.cos(theta), math.sin(theta))
    q %= 4
    if q == 1:
        base = complex(-base.imag, base.real)
    elif q == 2:
        base = complex(-base.real, -base.imag)
    elif q == 3:
        base = complex(base.imag, -base.real)
    # +0.0 clears signed zeros
    return complex(base.real + 0.0, base.imag + 0.0)


def modulus(z) -> float:
    """|z| = sqrt(re**2 + im**2), computed without overflow."""
    z = complex(z)
    return math.hypot(z.real, z.imag)


def phase(z) -> float:
    return cmath.phase(complex(z))


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ValueError(f"complex value must be [re, im], got {v!r}")
    re, im = v
    z = complex(float(re), float(im))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("complex value must be finite")
    return z


def rational_to_json(q) -> str:
    return str(as_rational(q))


def rational_from_json(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"rational must be a 'num/den' string, got {s!r}")
    q = Fraction(s)
    return q
