"""Phase-profile synthesis and the normalized power gain of the surface.

Three evaluations of the far-field beamforming loss are provided, from most to
least faithful:

* :func:`normalized_gain` - exact double sum over exact element distances;
* :func:`gain_fresnel_exactsum` - separable quadratic-phase sums obtained
  from the second-order (Fresnel) expansion of the Tx distances;
* :func:`gain_closed_form` - the Dirichlet-sinc closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import PhaseProfile, ProfileKind, steering_phase
from .geometry import IrsGrid, Placement, element_coordinates, element_distances, region_bounds


class GainMethod(enum.Enum):
    EXACT_SUM = "exact-sum"
    FRESNEL_SUM = "fresnel-sum"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class GainResult:
    gain: float
    method: GainMethod
    profile_kind: ProfileKind


def beamfocus_profile(grid: IrsGrid, tx: Placement, rx: Placement, wavelength: float) -> PhaseProfile:
    """Phases matched to the exact spherical wavefronts of both terminals."""
    k = 2 * math.pi / wavelength
    path = element_distances(tx.cart, grid) + element_distances(rx.cart, grid)
    return PhaseProfile(k * path, ProfileKind.BEAMFOCUS)


def beamform_profile(grid: IrsGrid, tx_angles, rx_angles, wavelength: float) -> PhaseProfile:
    """Linear phase progression matched only to the (azimuth, polar) directions."""
    phase = steering_phase(*tx_angles, grid, wavelength) + steering_phase(*rx_angles, grid, wavelength)
    return PhaseProfile(-phase, ProfileKind.FAR_FIELD_BEAMFORM)


def coherent_gain(path_length: np.ndarray, profile: PhaseProfile, wavelength: float) -> float:
    """|sum exp(-j k path + j phi)|^2 / N^2 for arbitrary per-element path lengths."""
    if path_length.shape != profile.shape:
        raise ValueError(f"dimension mismatch: {path_length.shape} vs {profile.shape}")
    k = 2 * math.pi / wavelength
    terms = np.exp(1j * (profile.phases - k * path_length))
    return abs(np.sum(terms.ravel())) ** 2 / terms.size**2


def normalized_gain(profile: PhaseProfile, grid: IrsGrid, tx: Placement, rx: Placement, wavelength: float) -> GainResult:
    if profile.shape != grid.shape:
        raise ValueError(f"profile shape {profile.shape} does not match grid {grid.shape}")
    path = element_distances(tx.cart, grid) + element_distances(rx.cart, grid)
    return GainResult(coherent_gain(path, profile, wavelength), GainMethod.EXACT_SUM, profile.kind)


def far_rx_placement(grid: IrsGrid, rx_angles, wavelength: float, multiplier: float = 100.0) -> Placement:
    """Rx placed ``multiplier`` Fraunhofer distances away along ``(azimuth, polar)``."""
    azimuth, polar = rx_angles
    return Placement.from_spherical(multiplier * region_bounds(grid, wavelength).fraunhofer, polar, azimuth)


def beamform_gain_exact(
    grid: IrsGrid, tx: Placement, rx_angles, wavelength: float, rx_multiplier: float = 100.0
) -> GainResult:
    """Exact gain of far-field beamforming with the Rx deep in the far field."""
    rx = far_rx_placement(grid, rx_angles, wavelength, rx_multiplier)
    profile = beamform_profile(grid, (tx.azimuth, tx.polar), (rx.azimuth, rx.polar), wavelength)
    return normalized_gain(profile, grid, tx, rx, wavelength)


def _curvature(azimuth: float, polar: float) -> tuple[float, float]:
    s2 = math.sin(polar) ** 2
    return 1 - math.cos(azimuth) ** 2 * s2, 1 - math.sin(azimuth) ** 2 * s2


def fresnel_tx_distances(grid: IrsGrid, tx: Placement) -> np.ndarray:
    """Second-order expansion of every Tx-element distance, shape ``(n_x, n_y)``."""
    x, y = element_coordinates(grid)
    cx, cy = _curvature(tx.azimuth, tx.polar)
    s = math.sin(tx.polar)
    d = tx.dist
    return d + x**2 * cx / (2 * d) - x * math.cos(tx.azimuth) * s + y**2 * cy / (2 * d) - y * math.sin(tx.azimuth) * s


def fresnel_tx_distance(n: int, m: int, grid: IrsGrid, tx: Placement) -> float:
    if not (0 <= n < grid.n_x and 0 <= m < grid.n_y):
        raise IndexError(f"element ({n}, {m}) outside {grid.n_x}x{grid.n_y} grid")
    x, y = n * grid.pitch_x, m * grid.pitch_y
    cx, cy = _curvature(tx.azimuth, tx.polar)
    s = math.sin(tx.polar)
    d = tx.dist
    return d + x * x * cx / (2 * d) - x * math.cos(tx.azimuth) * s + y * y * cy / (2 * d) - y * math.sin(tx.azimuth) * s


def dirichlet_sinc(n: int, x):
    """sin(n x / 2) / (n sin(x / 2)), continuous through x = 2 pi k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.asarray(x, dtype=float)
    half = x / 2
    s = np.sin(half)
    singular = np.abs(s) < 1e-9
    k = np.rint(x / (2 * math.pi))
    limit = np.where(np.mod(k * (n - 1), 2) == 0, 1.0, -1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(singular, limit, np.sin(n * half) / (n * s))
    return float(out) if out.ndim == 0 else out


def _quadratic_rates(grid: IrsGrid, d_t: float, tx_angles, wavelength: float) -> tuple[float, float]:
    """Per-index quadratic phase rates k d^2 (1 - ...) / (2 D_t) along x and y."""
    if d_t <= 0:
        raise ValueError("Tx distance must be positive")
    cx, cy = _curvature(*tx_angles)
    k = 2 * math.pi / wavelength
    return k * grid.pitch_x**2 * cx / (2 * d_t), k * grid.pitch_y**2 * cy / (2 * d_t)


def gain_closed_form(grid: IrsGrid, d_t: float, tx_angles, wavelength: float) -> GainResult:
    """Dirichlet-sinc approximation of the beamforming gain (Rx in far field).

    ``tx_angles`` is ``(azimuth, polar)`` of the Tx.
    """
    ax, ay = _quadratic_rates(grid, d_t, tx_angles, wavelength)
    g = dirichlet_sinc(grid.n_x**2, ax) ** 2 * dirichlet_sinc(grid.n_y**2, ay) ** 2
    return GainResult(float(g), GainMethod.CLOSED_FORM, ProfileKind.FAR_FIELD_BEAMFORM)


def _gauss_sum_gain(n: int, rate: float) -> float:
    idx = np.arange(n, dtype=float)
    return abs(np.sum(np.exp(-1j * rate * idx**2))) ** 2 / n**2


def gain_fresnel_exactsum(grid: IrsGrid, d_t: float, tx_angles, wavelength: float) -> GainResult:
    """Product of the two quadratic-phase sums left after beamforming under the Fresnel expansion."""
    ax, ay = _quadratic_rates(grid, d_t, tx_angles, wavelength)
    g = _gauss_sum_gain(grid.n_x, ax) * _gauss_sum_gain(grid.n_y, ay)
    return GainResult(g, GainMethod.FRESNEL_SUM, ProfileKind.FAR_FIELD_BEAMFORM)
