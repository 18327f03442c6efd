"""Scenario configuration: built-in reference setups and TOML overrides.

A config file maps one-to-one onto :class:`Scenario`. Every section and key is
optional; anything missing falls back to the built-in setup of the command
being run. Units at this boundary are GHz, dBi, dBm, dBm/Hz, mW, degrees and
meters, and are converted once here.

Example::

    [rf]
    freq_ghz = 300
    kappa_abs = 0.0033          # 1/m
    gain_tx_dbi = 20
    gain_rx_dbi = 20
    power_tx_dbm = 10
    noise_density_dbm_hz = -174
    bandwidth_ghz = 10
    nominal_wavelength_m = 1e-3 # optional, overrides c/f

    [grid]
    n_x = 100
    n_y = 100
    elem_len_x_m = 5e-4         # default: half a wavelength
    elem_len_y_m = 5e-4
    gap_x_m = 0
    gap_y_m = 0

    [tx]
    position_m = [0, -0.3, 0.6] # or dist_m / polar_deg / azimuth_deg

    [rx]
    dist_m = 1.41
    polar_deg = 45
    azimuth_deg = 90

    [irs]
    position_m = [0, 0, 0]

    [hardware]
    n_t = 100
    n_r = 100
    p_ps_mw = 42
    p_pa_mw = 60

    [link]
    alpha = 2
    pl_mode = "constant"        # or "per-element"
    rx_far_field_multiplier = 100
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .channel import PlMode
from .geometry import IrsGrid, Placement
from .linkperf import HardwareProfile, LinkGeometry
from .scattering import RfParams


class ConfigError(ValueError):
    """Invalid or unparsable scenario configuration."""


@dataclass(frozen=True)
class Scenario:
    """Everything needed to run one experiment.

    ``tx`` and ``rx`` are relative to element (0, 0), which sits at
    ``irs_position`` in absolute coordinates.
    """

    rf: RfParams
    grid: IrsGrid
    tx: Placement
    rx: Placement
    hw: HardwareProfile = field(default_factory=HardwareProfile)
    alpha: float = 2.0
    pl_mode: PlMode = PlMode.CONSTANT
    rx_far_field_multiplier: float = 100.0
    irs_position: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.alpha < 1:
            raise ConfigError(f"alpha must be >= 1, got {self.alpha}")
        if self.rx_far_field_multiplier <= 0:
            raise ConfigError("rx_far_field_multiplier must be positive")

    @property
    def wavelength(self) -> float:
        return self.rf.wavelength

    def absolute(self, placement: Placement) -> np.ndarray:
        return np.add(self.irs_position, placement.cart)

    def link_geometry(self) -> LinkGeometry:
        return LinkGeometry(
            tuple(self.absolute(self.tx)), tuple(self.absolute(self.rx)), tuple(map(float, self.irs_position))
        )


def _cart(p) -> Placement:
    return Placement.from_cartesian(p)


# Per-command reference geometries (cartesian meters unless noted).
_COMMAND_GEOMETRY = {
    "scattered-field": dict(
        grid=(1, 1),
        tx=Placement.from_spherical(1.0, math.radians(30), math.radians(-90)),
        rx=Placement.from_spherical(4.0, 0.0, math.radians(60)),
    ),
    "path-loss-map": dict(tx=_cart((0, -0.3, 0.6)), rx=_cart((0, 1, 1))),
    "gain-vs-distance": dict(tx=_cart((0.4, 0.4, 0.5)), rx=_cart((0, 1, 1))),
    "gain-vs-elements": dict(tx=_cart((0.4, 0.4, 1.0)), rx=_cart((0, 1, 1))),
    "ee-sweep": dict(tx=_cart((0, -0.6, 1)), rx=_cart((0, 5, 1))),
    "nstar-sweep": dict(tx=_cart((0, -0.6, 1)), rx=_cart((0, 5, 1))),
}


def default_scenario(command: str = "path-loss-map", nominal_wavelength: float | None = None) -> Scenario:
    """Built-in scenario for ``command`` (reference geometry)."""
    rf = RfParams.from_db(nominal_wavelength=nominal_wavelength)
    geo = _COMMAND_GEOMETRY.get(command, _COMMAND_GEOMETRY["path-loss-map"])
    n_x, n_y = geo.get("grid", (100, 100))
    return Scenario(
        rf=rf,
        grid=IrsGrid.half_wavelength(n_x, n_y, rf.wavelength),
        tx=geo["tx"],
        rx=geo["rx"],
    )


_SECTIONS = {
    "rf": {
        "freq_ghz", "kappa_abs", "gain_tx_dbi", "gain_rx_dbi", "power_tx_dbm",
        "noise_density_dbm_hz", "bandwidth_ghz", "nominal_wavelength_m",
    },
    "grid": {"n_x", "n_y", "elem_len_x_m", "elem_len_y_m", "gap_x_m", "gap_y_m"},
    "tx": {"position_m", "dist_m", "polar_deg", "azimuth_deg"},
    "rx": {"position_m", "dist_m", "polar_deg", "azimuth_deg"},
    "irs": {"position_m"},
    "hardware": {"n_t", "n_r", "p_ps_mw", "p_pa_mw"},
    "link": {"alpha", "pl_mode", "rx_far_field_multiplier"},
}


def _validate_keys(doc: dict) -> None:
    for section, body in doc.items():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(body, dict):
            raise ConfigError(f"[{section}] must be a table")
        unknown = set(body) - _SECTIONS[section]
        if unknown:
            raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")


def _placement(body: dict, base: Placement, section: str) -> Placement:
    if "position_m" in body:
        if len(set(body) & {"dist_m", "polar_deg", "azimuth_deg"}):
            raise ConfigError(f"[{section}] takes either position_m or spherical keys, not both")
        p = body["position_m"]
        if len(p) != 3:
            raise ConfigError(f"[{section}] position_m needs three coordinates")
        return Placement.from_cartesian([float(v) for v in p])
    if not body:
        return base
    return Placement.from_spherical(
        float(body.get("dist_m", base.dist)),
        math.radians(float(body["polar_deg"])) if "polar_deg" in body else base.polar,
        math.radians(float(body["azimuth_deg"])) if "azimuth_deg" in body else base.azimuth,
    )


def apply_config(base: Scenario, doc: dict, nominal_wavelength: float | None = None) -> Scenario:
    """Overlay a parsed config document (and CLI wavelength override) onto ``base``."""
    _validate_keys(doc)
    try:
        rf_doc = doc.get("rf", {})
        lam = nominal_wavelength if nominal_wavelength is not None else rf_doc.get("nominal_wavelength_m")
        b = base.rf
        rf = RfParams.from_db(
            freq=float(rf_doc.get("freq_ghz", b.freq / 1e9)) * 1e9,
            kappa_abs=float(rf_doc.get("kappa_abs", b.kappa_abs)),
            gain_tx_dbi=float(rf_doc.get("gain_tx_dbi", 10 * math.log10(b.gain_tx))),
            gain_rx_dbi=float(rf_doc.get("gain_rx_dbi", 10 * math.log10(b.gain_rx))),
            power_tx_dbm=float(rf_doc.get("power_tx_dbm", 10 * math.log10(b.power_tx * 1e3))),
            noise_density_dbm_hz=float(rf_doc.get("noise_density_dbm_hz", 10 * math.log10(b.noise_density * 1e3))),
            bandwidth=float(rf_doc.get("bandwidth_ghz", b.bandwidth / 1e9)) * 1e9,
            nominal_wavelength=None if lam is None else float(lam),
        )
        g = doc.get("grid", {})
        grid = IrsGrid(
            int(g.get("n_x", base.grid.n_x)),
            int(g.get("n_y", base.grid.n_y)),
            float(g.get("elem_len_x_m", rf.wavelength / 2)),
            float(g.get("elem_len_y_m", rf.wavelength / 2)),
            float(g.get("gap_x_m", 0.0)),
            float(g.get("gap_y_m", 0.0)),
        )
        h = doc.get("hardware", {})
        hw = HardwareProfile(
            int(h.get("n_t", base.hw.n_t)),
            int(h.get("n_r", base.hw.n_r)),
            float(h.get("p_ps_mw", base.hw.p_ps * 1e3)) / 1e3,
            float(h.get("p_pa_mw", base.hw.p_pa * 1e3)) / 1e3,
        )
        link = doc.get("link", {})
        irs = doc.get("irs", {}).get("position_m", base.irs_position)
        if len(irs) != 3:
            raise ConfigError("[irs] position_m needs three coordinates")
        return Scenario(
            rf=rf,
            grid=grid,
            tx=_placement(doc.get("tx", {}), base.tx, "tx"),
            rx=_placement(doc.get("rx", {}), base.rx, "rx"),
            hw=hw,
            alpha=float(link.get("alpha", base.alpha)),
            pl_mode=PlMode(link.get("pl_mode", base.pl_mode.value)),
            rx_far_field_multiplier=float(link.get("rx_far_field_multiplier", base.rx_far_field_multiplier)),
            irs_position=tuple(float(v) for v in irs),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc


def build_scenario(
    command: str,
    config_path: str | Path | None = None,
    nominal_wavelength: float | None = None,
    pl_mode: str | None = None,
) -> Scenario:
    """Command defaults, then the config file, then explicit CLI overrides."""
    scenario = default_scenario(command, nominal_wavelength)
    if config_path is not None:
        scenario = apply_config(scenario, load_config(config_path), nominal_wavelength)
    if pl_mode is not None:
        scenario = replace(scenario, pl_mode=PlMode(pl_mode))
    return scenario
