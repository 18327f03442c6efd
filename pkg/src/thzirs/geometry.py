"""IRS element-grid geometry, coordinate conversions and field regions.

The surface lies in the z = 0 plane with the centre of element (0, 0) at the
origin. Element (n, m) sits at (n*d_x, m*d_y, 0) where d_x, d_y are the
centre-to-centre pitches. Polar angles are measured from +z (broadside),
azimuths from +x in the xy-plane.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def wavelength_from_frequency(freq: float, nominal_wavelength: float | None = None) -> float:
    """Carrier wavelength c/f, or ``nominal_wavelength`` when given."""
    if nominal_wavelength is not None:
        if nominal_wavelength <= 0:
            raise ValueError("nominal wavelength must be positive")
        return float(nominal_wavelength)
    if freq <= 0:
        raise ValueError("frequency must be positive")
    return SPEED_OF_LIGHT / freq


@dataclass(frozen=True)
class IrsGrid:
    """Rectangular grid of ``n_x`` by ``n_y`` reflecting elements.

    ``elem_len_*`` are the element side lengths and ``gap_*`` the edge-to-edge
    spacing between neighbours, all in meters.
    """

    n_x: int
    n_y: int
    elem_len_x: float
    elem_len_y: float
    gap_x: float = 0.0
    gap_y: float = 0.0

    def __post_init__(self):
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError(f"element counts must be >= 1, got {self.n_x}x{self.n_y}")
        if self.elem_len_x <= 0 or self.elem_len_y <= 0:
            raise ValueError("element lengths must be positive")
        if self.gap_x < 0 or self.gap_y < 0:
            raise ValueError("element gaps must be non-negative")

    @classmethod
    def half_wavelength(cls, n_x: int, n_y: int, wavelength: float) -> "IrsGrid":
        """Gapless grid of lambda/2 square elements."""
        return cls(n_x, n_y, wavelength / 2, wavelength / 2)

    @property
    def pitch_x(self) -> float:
        return self.gap_x + self.elem_len_x

    @property
    def pitch_y(self) -> float:
        return self.gap_y + self.elem_len_y

    @property
    def n_elements(self) -> int:
        return self.n_x * self.n_y

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_x, self.n_y)

    @property
    def size_x(self) -> float:
        return self.n_x * self.elem_len_x + (self.n_x - 1) * self.gap_x

    @property
    def size_y(self) -> float:
        return self.n_y * self.elem_len_y + (self.n_y - 1) * self.gap_y

    @property
    def max_dimension(self) -> float:
        """Largest physical extent of the surface, L_IRS."""
        return max(self.size_x, self.size_y)

    @property
    def max_element_length(self) -> float:
        return max(self.elem_len_x, self.elem_len_y)

    def resized(self, n_x: int, n_y: int) -> "IrsGrid":
        return IrsGrid(n_x, n_y, self.elem_len_x, self.elem_len_y, self.gap_x, self.gap_y)


def spherical_to_cartesian(dist: float, polar: float, azimuth: float) -> np.ndarray:
    if dist < 0:
        raise ValueError("distance must be non-negative")
    s = math.sin(polar)
    return np.array([dist * math.cos(azimuth) * s, dist * math.sin(azimuth) * s, dist * math.cos(polar)])


def cartesian_to_spherical(p) -> tuple[float, float, float]:
    """Return ``(dist, polar, azimuth)`` of point ``p``; azimuth in (-pi, pi]."""
    x, y, z = (float(v) for v in p)
    dist = math.sqrt(x * x + y * y + z * z)
    if dist == 0.0:
        raise ValueError("cannot convert the origin to spherical coordinates")
    polar = math.atan2(math.hypot(x, y), z)
    azimuth = math.atan2(y, x)
    if azimuth == -math.pi:
        azimuth = math.pi
    return dist, polar, azimuth


@dataclass(frozen=True)
class Placement:
    """Terminal position relative to element (0, 0), in both coordinate systems.

    Build with :meth:`from_spherical` or :meth:`from_cartesian` so that the two
    representations agree.
    """

    dist: float
    polar: float
    azimuth: float
    cart: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        if not self.dist > 0:
            raise ValueError("placement distance must be positive")
        cart = np.array(self.cart, dtype=float)
        cart.setflags(write=False)
        object.__setattr__(self, "cart", cart)

    @classmethod
    def from_spherical(cls, dist: float, polar: float, azimuth: float) -> "Placement":
        return cls(float(dist), float(polar), float(azimuth), spherical_to_cartesian(dist, polar, azimuth))

    @classmethod
    def from_cartesian(cls, p) -> "Placement":
        dist, polar, azimuth = cartesian_to_spherical(p)
        return cls(dist, polar, azimuth, np.array(p, dtype=float))

    def scaled_to(self, dist: float) -> "Placement":
        """Same direction, new distance."""
        return Placement.from_spherical(dist, self.polar, self.azimuth)


def _check_index(n: int, m: int, grid: IrsGrid) -> None:
    if not (0 <= n < grid.n_x and 0 <= m < grid.n_y):
        raise IndexError(f"element ({n}, {m}) outside {grid.n_x}x{grid.n_y} grid")


def element_position(n: int, m: int, grid: IrsGrid) -> np.ndarray:
    _check_index(n, m, grid)
    return np.array([n * grid.pitch_x, m * grid.pitch_y, 0.0])


def element_coordinates(grid: IrsGrid) -> tuple[np.ndarray, np.ndarray]:
    """x and y coordinates of every element as ``(n_x, n_y)`` arrays."""
    x = np.arange(grid.n_x) * grid.pitch_x
    y = np.arange(grid.n_y) * grid.pitch_y
    return np.meshgrid(x, y, indexing="ij")


def element_distance(p, n: int, m: int, grid: IrsGrid) -> float:
    q = element_position(n, m, grid)
    p = np.asarray(p, dtype=float)
    return float(math.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + p[2] ** 2))


def element_distances(p, grid: IrsGrid) -> np.ndarray:
    """Distance from ``p`` to every element centre, shape ``(n_x, n_y)``."""
    p = np.asarray(p, dtype=float)
    x, y = element_coordinates(grid)
    return np.sqrt((p[0] - x) ** 2 + (p[1] - y) ** 2 + p[2] ** 2)


class Region(enum.Enum):
    REACTIVE_NEAR_FIELD = "reactive-near-field"
    FRESNEL = "fresnel"
    FAR_FIELD = "far-field"


@dataclass(frozen=True)
class RegionBounds:
    reactive_upper: float
    fraunhofer: float


def region_bounds(grid: IrsGrid, wavelength: float) -> RegionBounds:
    """Radiating near-field (Fresnel) band ``(0.62*sqrt(L^3/lam), 2*L^2/lam]``."""
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    size = grid.max_dimension
    return RegionBounds(0.62 * math.sqrt(size**3 / wavelength), 2 * size**2 / wavelength)


def classify_region(dist: float, grid: IrsGrid, wavelength: float) -> Region:
    if dist <= 0:
        raise ValueError("distance must be positive")
    bounds = region_bounds(grid, wavelength)
    if dist <= bounds.reactive_upper:
        return Region.REACTIVE_NEAR_FIELD
    if dist <= bounds.fraunhofer:
        return Region.FRESNEL
    return Region.FAR_FIELD


def element_far_field_check(dist: float, grid: IrsGrid, wavelength: float) -> bool:
    """True when ``dist`` exceeds the Fraunhofer distance of a single element."""
    if dist <= 0:
        raise ValueError("distance must be positive")
    return dist > 2 * grid.max_element_length**2 / wavelength
