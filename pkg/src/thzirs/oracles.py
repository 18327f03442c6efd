"""Brute-force reference evaluations, deliberately free of numpy.

These loop element by element in plain Python, recompute every distance from
scratch and accumulate with :func:`math.fsum` (exactly rounded), so they share
no code path with the vectorised implementations they check.
"""

from __future__ import annotations

import cmath
import math


def _dist(p, x, y):
    return math.sqrt((p[0] - x) ** 2 + (p[1] - y) ** 2 + p[2] ** 2)


def coherent_sum(terms) -> complex:
    terms = list(terms)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def rx_amplitude(tx_amp, rx_amp, phases) -> complex:
    """Triple loop over a nested-list (or array) representation."""
    n_x = len(phases)
    n_y = len(phases[0])
    terms = []
    for n in range(n_x):
        for m in range(n_y):
            terms.append(complex(tx_amp[n][m]) * complex(rx_amp[n][m]) * cmath.exp(1j * float(phases[n][m])))
    return coherent_sum(terms)


def normalized_gain(phases, n_x, n_y, pitch_x, pitch_y, p_t, p_r, wavelength) -> float:
    k = 2 * math.pi / wavelength
    terms = []
    for n in range(n_x):
        for m in range(n_y):
            x, y = n * pitch_x, m * pitch_y
            path = _dist(p_t, x, y) + _dist(p_r, x, y)
            terms.append(cmath.exp(1j * (float(phases[n][m]) - k * path)))
    return abs(coherent_sum(terms)) ** 2 / (n_x * n_y) ** 2


def dirichlet_direct(n: int, x: float) -> float:
    """Signed Dirichlet kernel from its defining phasor sum, phase-aligned to the centre."""
    s = coherent_sum(cmath.exp(1j * i * x) for i in range(n))
    return (s * cmath.exp(-1j * (n - 1) * x / 2)).real / n


def sinc_series(t: float, terms: int = 30) -> float:
    """sin(t)/t from its Maclaurin series."""
    total, term = 0.0, 1.0
    for i in range(terms):
        total += term
        term *= -t * t / ((2 * i + 2) * (2 * i + 3))
    return total
