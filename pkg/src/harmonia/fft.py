"""Mixed-radix Cooley-Tukey transform, applied one cyclic factor at a time.

Used as the fast path for the character transform on Z/n_1 x ... x Z/n_m.
Prime lengths fall back to the direct O(p^2) sum.
"""
import numpy as np

__all__ = ["smallest_prime_factor", "cyclic_fft", "group_fft"]


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _twiddles(n: int, sign: int) -> np.ndarray:
    w = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    if n % 4 == 0:
        w[n // 4] = 1j * sign
        w[3 * n // 4] = -1j * sign
    if n % 2 == 0:
        w[n // 2] = -1.0
    return w


def _direct(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[-1]
    w = _twiddles(n, sign)
    k = np.arange(n)
    return x @ w[np.outer(k, k) % n]


def cyclic_fft(x, sign: int = -1) -> np.ndarray:
    """sum_j x[..., j] exp(sign 2 pi i j k / n) along the last axis.

    Decimation in time on the smallest prime factor p of n: the p interleaved
    subsequences x[r::p] are transformed recursively and recombined with the
    twiddles exp(sign 2 pi i r k / n).
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    if n <= 1:
        return x.copy()
    p = smallest_prime_factor(n)
    if p == n:
        return _direct(x, sign)
    m = n // p
    w = _twiddles(n, sign)
    k = np.arange(n)
    out = np.zeros(x.shape, dtype=complex)
    for r in range(p):
        sub = cyclic_fft(x[..., r::p], sign)
        out += w[(r * k) % n] * sub[..., k % m]
    return out


def group_fft(values, moduli, sign: int = -1) -> np.ndarray:
    """Character sum over Z/n_1 x ... x Z/n_m for lexicographically flattened values."""
    moduli = tuple(int(n) for n in moduli)
    a = np.asarray(values, dtype=complex).reshape(moduli)
    for axis in range(len(moduli)):
        a = np.moveaxis(cyclic_fft(np.moveaxis(a, axis, -1), sign), -1, axis)
    return a.reshape(-1)
