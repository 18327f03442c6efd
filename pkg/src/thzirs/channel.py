"""Spherical-wavefront and far-field channel representations of the Tx-IRS-Rx link.

Channels are kept as ``(n_x, n_y)`` matrices; the diagonal reflection matrix
is represented by its phase matrix only, so memory stays O(N).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import IrsGrid, Placement, element_coordinates, element_distances, region_bounds
from .scattering import RfParams, rx_path_loss_factor, tx_path_loss_factor


class PlMode(enum.Enum):
    """How per-element path-loss magnitudes are evaluated.

    ``CONSTANT`` uses the reference-element distances for every magnitude;
    ``PER_ELEMENT`` uses each element's own distances. Phases always use the
    exact per-element distances, and the angle triple always comes from the
    reference element.
    """

    CONSTANT = "constant"
    PER_ELEMENT = "per-element"


def wrap_phase(phi):
    """Wrap to [-pi, pi)."""
    return np.mod(np.asarray(phi, dtype=float) + math.pi, 2 * math.pi) - math.pi


def _frozen(a, dtype) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    if a.ndim != 2:
        raise ValueError(f"expected an (n_x, n_y) matrix, got shape {a.shape}")
    a.setflags(write=False)
    return a


class ProfileKind(enum.Enum):
    BEAMFOCUS = "beamfocus"
    FAR_FIELD_BEAMFORM = "far-field-beamform"
    CUSTOM = "custom"


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element reflection phases, stored wrapped."""

    phases: np.ndarray
    kind: ProfileKind = ProfileKind.CUSTOM

    def __post_init__(self):
        object.__setattr__(self, "phases", _frozen(wrap_phase(self.phases), float))

    @property
    def shape(self) -> tuple[int, int]:
        return self.phases.shape

    @classmethod
    def zeros(cls, grid: IrsGrid) -> "PhaseProfile":
        return cls(np.zeros(grid.shape))


@dataclass(frozen=True)
class ChannelGrid:
    """Complex per-element channel coefficients, shape ``(n_x, n_y)``."""

    amp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amp", _frozen(self.amp, complex))

    @property
    def shape(self) -> tuple[int, int]:
        return self.amp.shape

    def vec(self) -> np.ndarray:
        """Column-stacked vector form."""
        return self.amp.ravel(order="F")


def one_way_channel(
    place: Placement,
    grid: IrsGrid,
    params: RfParams,
    pl_mode: PlMode = PlMode.CONSTANT,
    side: str = "tx",
) -> ChannelGrid:
    """Channel between one terminal and every element.

    ``side`` selects which half of the element path loss the terminal carries:
    ``"tx"`` the incidence share, ``"rx"`` the observation share.
    """
    dist = element_distances(place.cart, grid)
    mag_dist = dist if PlMode(pl_mode) is PlMode.PER_ELEMENT else np.full(grid.shape, place.dist)
    if side == "tx":
        pl = tx_path_loss_factor(params, grid, mag_dist, place.polar)
    elif side == "rx":
        pl = rx_path_loss_factor(params, grid, mag_dist, place.polar, place.azimuth)
    else:
        raise ValueError(f"side must be 'tx' or 'rx', got {side!r}")
    return ChannelGrid(np.sqrt(pl) * np.exp(-1j * params.wavenumber * dist))


def _check_shapes(*shapes) -> None:
    if len(set(shapes)) != 1:
        raise ValueError(f"dimension mismatch: {shapes}")


def compose_rx_amplitude(tx_grid: ChannelGrid, rx_grid: ChannelGrid, profile: PhaseProfile) -> complex:
    """Coherent sum over elements of tx * rx * exp(j*phi)."""
    _check_shapes(tx_grid.shape, rx_grid.shape, profile.shape)
    terms = tx_grid.amp * rx_grid.amp * np.exp(1j * profile.phases)
    # np.sum on a contiguous 1-D array reduces pairwise
    return complex(np.sum(terms.ravel()))


def snr_exact(tx_grid: ChannelGrid, rx_grid: ChannelGrid, profile: PhaseProfile, params: RfParams) -> float:
    return params.power_tx / params.noise_power * abs(compose_rx_amplitude(tx_grid, rx_grid, profile)) ** 2


def steering_phase(azimuth: float, polar: float, grid: IrsGrid, wavelength: float) -> np.ndarray:
    x, y = element_coordinates(grid)
    s = math.sin(polar)
    return 2 * math.pi / wavelength * (x * math.cos(azimuth) * s + y * math.sin(azimuth) * s)


def steering_matrix(azimuth: float, polar: float, grid: IrsGrid, wavelength: float) -> np.ndarray:
    return np.exp(1j * steering_phase(azimuth, polar, grid, wavelength))


def steering_vector(azimuth: float, polar: float, grid: IrsGrid, wavelength: float) -> np.ndarray:
    """Far-field response of the surface towards ``(azimuth, polar)``, length N."""
    return steering_matrix(azimuth, polar, grid, wavelength).ravel(order="F")


@dataclass(frozen=True)
class FarFieldLink:
    """Rank-one far-field description of the multi-antenna Tx-IRS-Rx link.

    The Tx/Rx arrays are matched-filtered analytically, so ``tx_factor`` and
    ``rx_factor`` already include the sqrt(n_t) and sqrt(n_r) array gains.
    ``far_field`` is False when either terminal sits inside the Fraunhofer
    distance, where this description is only approximate.
    """

    tx_factor: ChannelGrid
    rx_factor: ChannelGrid
    pl_t: float
    pl_r: float
    n_t: int
    n_r: int
    far_field: bool


def far_field_rank_one(
    place_tx: Placement, place_rx: Placement, grid: IrsGrid, params: RfParams, n_t: int = 1, n_r: int = 1
) -> FarFieldLink:
    lam = params.wavelength
    k = params.wavenumber
    pl_t = float(tx_path_loss_factor(params, grid, place_tx.dist, place_tx.polar))
    pl_r = float(rx_path_loss_factor(params, grid, place_rx.dist, place_rx.polar, place_rx.azimuth))
    a_t = steering_matrix(place_tx.azimuth, place_tx.polar, grid, lam)
    a_r = steering_matrix(place_rx.azimuth, place_rx.polar, grid, lam)
    tx = math.sqrt(n_t * pl_t) * np.exp(-1j * k * place_tx.dist) * a_t
    rx = math.sqrt(n_r * pl_r) * np.exp(-1j * k * place_rx.dist) * a_r
    d_f = region_bounds(grid, lam).fraunhofer
    return FarFieldLink(
        ChannelGrid(tx), ChannelGrid(rx), pl_t, pl_r, n_t, n_r,
        far_field=place_tx.dist > d_f and place_rx.dist > d_f,
    )
