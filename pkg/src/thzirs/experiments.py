"""Sweep drivers that turn a :class:`Scenario` into tabular results.

Each driver returns a :class:`Table`; rows come out in sweep order. The swept
receiver coordinate of ``ee_sweep``/``nstar_sweep`` is the y-coordinate of
``p_r = (x_r, D_r, z_r)``, so the sweep variable is the receiver's lateral offset.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Placement, region_bounds
from .gain import (
    beamfocus_profile,
    beamform_gain_exact,
    far_rx_placement,
    gain_closed_form,
    gain_fresnel_exactsum,
    normalized_gain,
)
from .linkperf import LinkGeometry, ee_comparison, n_star_fixed_irs_real, n_star_real
from .scattering import ScatterAngles, linear_to_db, path_loss_map as _path_loss_map
from .scattering import scattered_field_sq_approx, scattered_field_sq_exact
from .scenario import Scenario


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])


class PlacementMode(enum.Enum):
    FIXED_NEAR_TX = "fixed-near-tx"
    MIDPOINT = "midpoint"


def sweep_values(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic sweep, rounded to suppress accumulation noise."""
    if step <= 0 or stop < start:
        raise ValueError("sweep needs start <= stop and a positive step")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


REGION_TABLE_GRIDS = [(80, 80), (100, 100)]


def region_info(scenario: Scenario, grids=None) -> Table:
    table = Table(["nx", "ny", "size_x_m", "size_y_m", "fresnel_lo_m", "fresnel_hi_m"])
    for n_x, n_y in grids or [scenario.grid.shape]:
        g = scenario.grid.resized(n_x, n_y)
        b = region_bounds(g, scenario.wavelength)
        table.rows.append([n_x, n_y, g.n_x * g.pitch_x, g.n_y * g.pitch_y, b.reactive_upper, b.fraunhofer])
    return table


def scattered_field(scenario: Scenario, theta_r_deg) -> Table:
    """Exact and sinc-free squared scattered field over observation angles, |E_i|^2 = 1."""
    table = Table(["theta_r_deg", "exact", "approx"])
    for th in theta_r_deg:
        angles = ScatterAngles(scenario.tx.polar, math.radians(th), scenario.rx.azimuth)
        args = (1.0, scenario.grid, angles, scenario.rx.dist, scenario.wavelength)
        table.rows.append([float(th), scattered_field_sq_exact(*args), scattered_field_sq_approx(*args)])
    return table


def path_loss_map(scenario: Scenario) -> Table:
    pl_db = linear_to_db(_path_loss_map(scenario.rf, scenario.grid, scenario.tx, scenario.rx))
    table = Table(["n", "m", "pl_db"])
    for n in range(scenario.grid.n_x):
        for m in range(scenario.grid.n_y):
            table.rows.append([n, m, float(pl_db[n, m])])
    table.summary["spread_db"] = float(pl_db.max() - pl_db.min())
    return table


def _rx_angles(scenario: Scenario) -> tuple[float, float]:
    return scenario.rx.azimuth, scenario.rx.polar


def gain_vs_distance(scenario: Scenario, z_values) -> Table:
    """Gain of beamfocusing vs. far-field beamforming as the Tx height varies."""
    table = Table(["z_m", "d_t_m", "g_beamfocus", "g_beamform_exact", "g_fresnel_sum", "g_closed_form"])
    grid, lam = scenario.grid, scenario.wavelength
    x_t, y_t = scenario.tx.cart[:2]
    rx = far_rx_placement(grid, _rx_angles(scenario), lam, scenario.rx_far_field_multiplier)
    for z in z_values:
        tx = Placement.from_cartesian((x_t, y_t, z))
        tx_angles = (tx.azimuth, tx.polar)
        focus = normalized_gain(beamfocus_profile(grid, tx, rx, lam), grid, tx, rx, lam).gain
        form = beamform_gain_exact(grid, tx, _rx_angles(scenario), lam, scenario.rx_far_field_multiplier).gain
        table.rows.append([
            float(z), tx.dist, focus, form,
            gain_fresnel_exactsum(grid, tx.dist, tx_angles, lam).gain,
            gain_closed_form(grid, tx.dist, tx_angles, lam).gain,
        ])
    return table


def gain_vs_elements(scenario: Scenario, n_sides) -> Table:
    """Beamforming gain on square n x n surfaces, exact double sum vs. closed form."""
    table = Table(["n_side", "g_exact", "g_closed_form"])
    tx, lam = scenario.tx, scenario.wavelength
    for n in n_sides:
        grid = scenario.grid.resized(int(n), int(n))
        exact = beamform_gain_exact(grid, tx, _rx_angles(scenario), lam, scenario.rx_far_field_multiplier).gain
        closed = gain_closed_form(grid, tx.dist, (tx.azimuth, tx.polar), lam).gain
        table.rows.append([int(n), exact, closed])
    dev = np.abs(table.column("g_exact") - table.column("g_closed_form")) if table.rows else np.zeros(1)
    table.summary["max_abs_deviation"] = float(dev.max())
    return table


def _receiver_at(scenario: Scenario, y_r: float) -> tuple[float, float, float]:
    p = scenario.absolute(scenario.rx)
    return (float(p[0]), float(y_r), float(p[2]))


def ee_sweep(scenario: Scenario, y_values) -> Table:
    table = Table(["d_r_m", "rate_mimo", "rate_irs", "ee_mimo", "ee_irs", "n_star"])
    p_t = tuple(float(v) for v in scenario.absolute(scenario.tx))
    for y in y_values:
        geo = LinkGeometry(p_t, _receiver_at(scenario, y), scenario.irs_position)
        cmp = ee_comparison(scenario.rf, scenario.hw, scenario.alpha, geo, scenario.grid)
        table.rows.append([float(y), cmp.direct.rate, cmp.irs.rate, cmp.direct.ee, cmp.irs.ee, cmp.irs.n_elements])
    return table


def midpoint_geometry(p_t, p_r, irs_z: float = 0.0) -> LinkGeometry:
    """Surface halfway between Tx and Rx along y, at height ``irs_z``."""
    return LinkGeometry(tuple(p_t), tuple(p_r), (0.0, (p_t[1] + p_r[1]) / 2, irs_z))


def nstar_sweep(scenario: Scenario, y_values, mode: PlacementMode = PlacementMode.FIXED_NEAR_TX) -> Table:
    """Crossover element count versus receiver position.

    ``FIXED_NEAR_TX`` keeps the surface at ``irs_position`` and uses the
    right-angle approximation D_d^2 = D_r^2 - D_t^2; ``MIDPOINT`` moves the
    surface to the Tx-Rx midpoint and uses the exact geometry.
    """
    mode = PlacementMode(mode)
    table = Table(["d_r_m", "n_star", "n_star_real"])
    p_t = tuple(float(v) for v in scenario.absolute(scenario.tx))
    lam_grid, rf, alpha = scenario.grid, scenario.rf, scenario.alpha
    for y in y_values:
        p_r = _receiver_at(scenario, y)
        if mode is PlacementMode.MIDPOINT:
            geo = midpoint_geometry(p_t, p_r, scenario.irs_position[2])
            real = n_star_real(alpha, rf, geo.d_t, geo.d_r, geo.d_d, geo.angles, lam_grid)
        else:
            geo = LinkGeometry(p_t, p_r, scenario.irs_position)
            real = n_star_fixed_irs_real(alpha, rf, geo.d_t, geo.d_r, geo.tx.polar, lam_grid)
        table.rows.append([float(y), math.ceil(real), real])
    return table
