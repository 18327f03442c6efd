"""Direct MIMO versus IRS-assisted MIMO: SNR, power, rate and energy efficiency.

Both systems use analog beamforming/combining over a rank-one line-of-sight
channel. The IRS system ignores the direct Tx-Rx path and assumes the surface
is phased for full coherent gain (N^2 scaling). Power draw counts the transmit
power plus one phase shifter and one power amplifier per antenna; IRS
elements draw nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import IrsGrid, Placement
from .scattering import RfParams, ScatterAngles, element_path_loss, mimo_path_loss, pattern_f


@dataclass(frozen=True)
class HardwareProfile:
    n_t: int = 100
    n_r: int = 100
    p_ps: float = 0.042  # W per phase shifter
    p_pa: float = 0.060  # W per power amplifier

    def __post_init__(self):
        if self.n_t < 1 or self.n_r < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.p_ps < 0 or self.p_pa < 0:
            raise ValueError("component powers must be non-negative")

    def reduced(self, alpha: float) -> "HardwareProfile":
        """Arrays shrunk by ``alpha``, rounded to the nearest count >= 1."""
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        return HardwareProfile(
            max(1, round(self.n_t / alpha)), max(1, round(self.n_r / alpha)), self.p_ps, self.p_pa
        )


@dataclass(frozen=True)
class LinkReport:
    snr: float
    rate: float  # bit/s
    power: float  # W
    ee: float  # bit/J
    n_elements: int  # 0 for the direct link
    n_t: int
    n_r: int

    @classmethod
    def build(cls, snr: float, bandwidth: float, power: float, hw: HardwareProfile, n_elements: int = 0):
        rate = achievable_rate(bandwidth, snr)
        return cls(snr, rate, power, rate / power, n_elements, hw.n_t, hw.n_r)


@dataclass(frozen=True)
class LinkGeometry:
    """Absolute Tx, Rx and IRS (element 0, 0) positions in meters."""

    p_t: tuple[float, float, float]
    p_r: tuple[float, float, float]
    p_irs: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def tx(self) -> Placement:
        return Placement.from_cartesian(np.subtract(self.p_t, self.p_irs))

    @property
    def rx(self) -> Placement:
        return Placement.from_cartesian(np.subtract(self.p_r, self.p_irs))

    @property
    def d_t(self) -> float:
        return self.tx.dist

    @property
    def d_r(self) -> float:
        return self.rx.dist

    @property
    def d_d(self) -> float:
        return float(np.linalg.norm(np.subtract(self.p_r, self.p_t)))

    @property
    def angles(self) -> ScatterAngles:
        return ScatterAngles.from_placements(self.tx, self.rx)


def achievable_rate(bandwidth: float, snr: float) -> float:
    if snr < 0:
        raise ValueError("SNR must be non-negative")
    return bandwidth * math.log2(1 + snr)


def power_consumption(hw: HardwareProfile, p_t: float) -> float:
    return p_t + (hw.n_r + hw.n_t) * (hw.p_ps + hw.p_pa)


def snr_mimo(params: RfParams, hw: HardwareProfile, d_d: float) -> float:
    return hw.n_r * hw.n_t * params.power_tx * mimo_path_loss(params, d_d) / params.noise_power


def snr_irs(
    params: RfParams, hw: HardwareProfile, n_elements: float, d_t: float, d_r: float, angles: ScatterAngles, grid: IrsGrid
) -> float:
    """Receive SNR through a fully phased surface of ``n_elements`` elements.

    ``n_elements`` may be fractional so the crossover can be evaluated on the
    continuum.
    """
    if n_elements < 1:
        raise ValueError("need at least one IRS element")
    pl = element_path_loss(params, grid, d_t, d_r, angles)
    return hw.n_t * hw.n_r * n_elements**2 * params.power_tx * pl / params.noise_power


def _checked_pattern(angles: ScatterAngles) -> float:
    f = pattern_f(angles)
    # cos(pi/2) is ~6e-17 in floating point; treat that as an exact zero
    if f <= 1e-30:
        raise ValueError("scattering pattern vanishes (grazing geometry); no finite element count exists")
    return f


def n_star_real(
    alpha: float, params: RfParams, d_t: float, d_r: float, d_d: float, angles: ScatterAngles, grid: IrsGrid
) -> float:
    """Element count at which IRS-MIMO with arrays shrunk by ``alpha`` matches direct MIMO."""
    if min(d_t, d_r, d_d) <= 0:
        raise ValueError("distances must be positive")
    f = _checked_pattern(angles)
    area = grid.elem_len_x * grid.elem_len_y
    return (
        alpha * params.wavelength / area * d_t * d_r / (math.sqrt(f) * d_d)
        * math.exp(-0.5 * params.kappa_abs * (d_d - d_r - d_t))
    )


def n_star_via_path_loss(
    alpha: float, params: RfParams, d_t: float, d_r: float, d_d: float, angles: ScatterAngles, grid: IrsGrid
) -> float:
    """Same crossover evaluated from the two path losses directly."""
    _checked_pattern(angles)
    return math.sqrt(alpha**2 * mimo_path_loss(params, d_d) / element_path_loss(params, grid, d_t, d_r, angles))


def n_star(
    alpha: float, params: RfParams, d_t: float, d_r: float, d_d: float, angles: ScatterAngles, grid: IrsGrid
) -> int:
    return math.ceil(n_star_real(alpha, params, d_t, d_r, d_d, angles, grid))


def n_star_fixed_irs_real(alpha: float, params: RfParams, d_t: float, d_r: float, theta_t: float, grid: IrsGrid) -> float:
    """Crossover for a surface fixed next to the Tx, with D_d^2 = D_r^2 - D_t^2 and pattern cos^2(theta_t)."""
    if not d_r > d_t > 0:
        raise ValueError(f"need d_r > d_t > 0, got d_t={d_t}, d_r={d_r}")
    c = math.cos(theta_t)
    if c <= 0:
        raise ValueError("theta_t must be below pi/2")
    area = grid.elem_len_x * grid.elem_len_y
    d_d = math.sqrt(d_r**2 - d_t**2)
    return (
        alpha * params.wavelength / area * d_t * d_r / (c * d_d)
        * math.exp(-0.5 * params.kappa_abs * (d_d - d_r - d_t))
    )


def n_star_fixed_irs(alpha: float, params: RfParams, d_t: float, d_r: float, theta_t: float, grid: IrsGrid) -> int:
    return math.ceil(n_star_fixed_irs_real(alpha, params, d_t, d_r, theta_t, grid))


def n_star_max_real(alpha: float, params: RfParams, d_t: float, theta_t: float, grid: IrsGrid) -> float:
    """Limit of :func:`n_star_fixed_irs_real` as the Rx recedes to infinity."""
    if d_t <= 0:
        raise ValueError("d_t must be positive")
    c = math.cos(theta_t)
    if c <= 1e-15:
        raise ValueError("theta_t must be below pi/2")
    area = grid.elem_len_x * grid.elem_len_y
    return alpha * params.wavelength / area * d_t / c * math.exp(0.5 * params.kappa_abs * d_t)


def n_star_max(alpha: float, params: RfParams, d_t: float, theta_t: float, grid: IrsGrid) -> int:
    return math.ceil(n_star_max_real(alpha, params, d_t, theta_t, grid))


class EeComparison(NamedTuple):
    direct: LinkReport
    irs: LinkReport

    @property
    def ee_ratio(self) -> float:
        return self.irs.ee / self.direct.ee

    @property
    def rate_ratio(self) -> float:
        return self.irs.rate / self.direct.rate

    @property
    def irs_rate_shortfall(self) -> bool:
        """True when the IRS link fails to reach the direct link's rate."""
        return self.irs.rate < self.direct.rate


def ee_comparison(
    params: RfParams,
    hw: HardwareProfile,
    alpha: float,
    geometry: LinkGeometry,
    grid: IrsGrid,
    n_elements: int | None = None,
) -> EeComparison:
    """Direct MIMO with ``hw`` against IRS-MIMO with arrays shrunk by ``alpha``.

    ``n_elements`` defaults to the crossover count for this geometry.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    d_t, d_r, d_d, angles = geometry.d_t, geometry.d_r, geometry.d_d, geometry.angles
    if n_elements is None:
        n_elements = n_star(alpha, params, d_t, d_r, d_d, angles, grid)
    small = hw.reduced(alpha)
    direct = LinkReport.build(
        snr_mimo(params, hw, d_d), params.bandwidth, power_consumption(hw, params.power_tx), hw
    )
    irs = LinkReport.build(
        snr_irs(params, small, n_elements, d_t, d_r, angles, grid),
        params.bandwidth,
        power_consumption(small, params.power_tx),
        small,
        n_elements,
    )
    return EeComparison(direct, irs)
