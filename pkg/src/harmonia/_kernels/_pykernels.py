"""Pure numpy versions of the compiled kernels, used when the extension is absent."""
import math

import numpy as np


def _digits(n, moduli):
    return np.array(np.unravel_index(np.arange(n), tuple(moduli))).T.reshape(n, len(moduli))


def cyclic_convolve(f, g, moduli):
    """out[x] = sum_y f[x - y] g[y] on the product of cyclic groups."""
    moduli = tuple(int(m) for m in moduli)
    n = len(f)
    d = _digits(n, moduli)
    # diff[x, y, k] = (x_k - y_k) mod n_k, flattened back to a linear index
    idx = np.zeros((n, n), dtype=np.int64)
    stride = 1
    for k in range(len(moduli) - 1, -1, -1):
        idx += (np.subtract.outer(d[:, k], d[:, k]) % moduli[k]) * stride
        stride *= moduli[k]
    return np.asarray(f)[idx] @ np.asarray(g)


def char_sum(f, moduli, sign):
    """out[b] = sum_x f[x] exp(sign * 2 pi i sum_k x_k b_k / n_k)."""
    moduli = tuple(int(m) for m in moduli)
    n = len(f)
    L = math.lcm(*moduli) if moduli else 1
    d = _digits(n, moduli)
    ph = np.zeros((n, n), dtype=np.int64)
    for k, m in enumerate(moduli):
        ph += (np.multiply.outer(d[:, k], d[:, k]) % m) * (L // m)
    ph %= L
    w = np.exp(sign * 2j * np.pi * np.arange(L) / L)
    if L % 4 == 0:
        w[L // 4] = 1j * sign
        w[3 * L // 4] = -1j * sign
    if L % 2 == 0:
        w[L // 2] = -1.0
    return np.asarray(f) @ w[ph]


def poisson_quadrature(r, theta, values):
    """(1/M) sum_k P_r(e^{i theta}, e^{2 pi i k / M}) values[k]."""
    values = np.asarray(values, dtype=complex)
    M = len(values)
    c = np.cos(theta - 2 * np.pi * np.arange(M) / M)
    ker = (1 - r * r) / (1 - 2 * r * c + r * r)
    return complex(np.sum(ker * values) / M)
