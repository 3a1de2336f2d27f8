"""
Bessel function of the first kind, order one.

Power series for |z| <= 12 and the Hankel asymptotic expansion beyond,
both vectorized over numpy arrays.
"""

import numpy as np

SERIES_LIMIT = 12.0
SERIES_TERMS = 48
HANKEL_TERMS = 40
THREE_PI_OVER_4 = 0.75 * np.pi


def _series(z: np.ndarray) -> np.ndarray:
    # J1(z) = (z/2) sum_k (-z^2/4)^k / (k! (k+1)!)
    quarter_sq = z * z / 4.0
    term = z / 2.0
    total = term.copy()
    for k in range(1, SERIES_TERMS):
        term = term * (-quarter_sq / (k * (k + 1)))
        total = total + term
    return total


def _hankel(z: np.ndarray) -> np.ndarray:
    # J1(z) ~ sqrt(2/(pi z)) (P cos w - Q sin w), w = z - 3 pi / 4
    mu = 4.0
    p = np.ones_like(z)
    q = np.zeros_like(z)
    coefficient = np.ones_like(z)
    previous = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, HANKEL_TERMS):
        coefficient = coefficient * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        magnitude = np.abs(coefficient)
        # stop each entry at its smallest term
        active &= magnitude < previous
        previous = magnitude
        if not active.any():
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        contribution = np.where(active, sign * coefficient, 0.0)
        if k % 2:
            q = q + contribution
        else:
            p = p + contribution
    w = z - THREE_PI_OVER_4
    return np.sqrt(2.0 / (np.pi * z)) * (p * np.cos(w) - q * np.sin(w))


def j1(z: float | np.ndarray) -> float | np.ndarray:
    """J1 for real arguments; odd in z."""
    scalar = np.ndim(z) == 0
    values = np.atleast_1d(np.asarray(z, dtype=float))
    magnitude = np.abs(values)
    result = np.empty_like(magnitude)

    small = magnitude <= SERIES_LIMIT
    if small.any():
        result[small] = _series(magnitude[small])
    if (~small).any():
        result[~small] = _hankel(magnitude[~small])

    result = np.sign(values) * result
    return float(result[0]) if scalar else result


def j1_over_x(z: float | np.ndarray) -> float | np.ndarray:
    """J1(z)/z with the limit 1/2 at z = 0."""
    scalar = np.ndim(z) == 0
    values = np.atleast_1d(np.asarray(z, dtype=float))
    result = np.full(values.shape, 0.5)
    nonzero = values != 0
    result[nonzero] = j1(values[nonzero]) / values[nonzero]
    return float(result[0]) if scalar else result
