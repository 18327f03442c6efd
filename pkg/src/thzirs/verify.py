"""Self-check suite behind ``thzirs verify``.

Each check returns a :class:`CheckResult` with the measured deviation and the
tolerance it was held to. Everything random flows from one seed, so a given
(scenario, seed) produces an identical report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracles
from .channel import PhaseProfile, PlMode, compose_rx_amplitude, one_way_channel
from .experiments import gain_vs_distance, scattered_field, sweep_values
from .experiments import path_loss_map as path_loss_table
from .gain import beamfocus_profile, normalized_gain
from .geometry import IrsGrid, Placement, cartesian_to_spherical, region_bounds, spherical_to_cartesian
from .linkperf import HardwareProfile, snr_irs, snr_mimo, n_star_real
from .scattering import ScatterAngles
from .scenario import Scenario, default_scenario

DEFAULT_SEED = 20210601


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "measured", float(self.measured))


def random_fresnel_geometry(rng: np.random.Generator, wavelength: float, max_side: int):
    """Random grid and two terminals inside the grid's Fresnel band (or just beyond the element far field)."""
    grid = IrsGrid.half_wavelength(int(rng.integers(1, max_side + 1)), int(rng.integers(1, max_side + 1)), wavelength)
    b = region_bounds(grid, wavelength)
    lo = max(b.reactive_upper, 4 * wavelength)
    hi = max(b.fraunhofer, 2 * lo)

    def place():
        return Placement.from_spherical(rng.uniform(lo, hi), rng.uniform(0, 0.45 * math.pi), rng.uniform(-math.pi, math.pi))

    return grid, place(), place()


def check_round_trip(rng, samples: int = 2000) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        p = rng.normal(size=3) * 10 ** rng.uniform(-3, 3)
        q = spherical_to_cartesian(*cartesian_to_spherical(p))
        worst = max(worst, float(np.linalg.norm(q - p) / np.linalg.norm(p)))
    return CheckResult("spherical_round_trip", worst < 1e-12, worst, 1e-12)


def check_beamfocus_optimality(rng, wavelength: float, trials: int = 100) -> CheckResult:
    worst_gap, violations = 0.0, 0
    for _ in range(trials):
        grid, tx, rx = random_fresnel_geometry(rng, wavelength, 16)
        g_focus = normalized_gain(beamfocus_profile(grid, tx, rx, wavelength), grid, tx, rx, wavelength).gain
        worst_gap = max(worst_gap, abs(g_focus - 1))
        g_rand = normalized_gain(PhaseProfile(rng.uniform(-math.pi, math.pi, grid.shape)), grid, tx, rx, wavelength).gain
        violations += g_rand > g_focus
    return CheckResult(
        "beamfocus_optimality", worst_gap < 1e-12 and violations == 0, worst_gap, 1e-12, f"violations={violations}"
    )


def check_oracle_equivalence(rng, scenario: Scenario, trials: int = 10) -> CheckResult:
    worst = 0.0
    lam = scenario.wavelength
    for _ in range(trials):
        grid, tx, rx = random_fresnel_geometry(rng, lam, 16)
        mode = PlMode.PER_ELEMENT if rng.random() < 0.5 else PlMode.CONSTANT
        t = one_way_channel(tx, grid, scenario.rf, mode, "tx")
        r = one_way_channel(rx, grid, scenario.rf, mode, "rx")
        prof = PhaseProfile(rng.uniform(-math.pi, math.pi, grid.shape))
        fast = compose_rx_amplitude(t, r, prof)
        slow = oracles.rx_amplitude(t.amp.tolist(), r.amp.tolist(), prof.phases.tolist())
        worst = max(worst, abs(fast - slow) / abs(slow))
    return CheckResult("oracle_equivalence", worst < 1e-9, worst, 1e-9)


def check_closed_form(scenario: Scenario) -> CheckResult:
    ref = default_scenario("gain-vs-distance", None)
    base = Scenario(scenario.rf, scenario.grid, ref.tx, ref.rx, rx_far_field_multiplier=scenario.rx_far_field_multiplier)
    table = gain_vs_distance(base, sweep_values(0.5, 10.0, 0.5))
    dev = np.abs(table.column("g_beamform_exact") - table.column("g_closed_form"))
    frac = float(np.mean(dev <= 0.05))
    return CheckResult("closed_form_vs_exact", frac >= 0.95, frac, 0.95, f"max_abs_dev={dev.max():.6g}")


def check_bracketing(rng, scenario: Scenario, trials: int = 100) -> CheckResult:
    failures = 0
    rf, grid = scenario.rf, scenario.grid
    for _ in range(trials):
        alpha = float(rng.choice([1, 2, 4, 5]))
        hw = HardwareProfile(20 * int(rng.integers(1, 6)), 20 * int(rng.integers(1, 6)))
        small = hw.reduced(alpha)
        d_t, d_r = rng.uniform(0.3, 5), rng.uniform(0.3, 20)
        d_d = rng.uniform(abs(d_r - d_t) + 1e-3, d_t + d_r)
        angles = ScatterAngles(rng.uniform(0, 1.3), rng.uniform(0, 1.3), rng.uniform(-math.pi, math.pi))
        real = n_star_real(alpha, rf, d_t, d_r, d_d, angles, grid)
        ref = snr_mimo(rf, hw, d_d)
        above = snr_irs(rf, small, math.ceil(real), d_t, d_r, angles, grid) >= ref
        n_below = math.floor(real) - 1
        below = n_below < 1 or snr_irs(rf, small, n_below, d_t, d_r, angles, grid) < ref
        failures += not (above and below)
    return CheckResult("n_star_bracketing", failures == 0, float(failures), 0.0)


def check_scattering_inequality(scenario: Scenario) -> CheckResult:
    ref = default_scenario("scattered-field", None)
    base = Scenario(scenario.rf, IrsGrid.half_wavelength(1, 1, scenario.wavelength), ref.tx, ref.rx)
    table = scattered_field(base, np.linspace(-90, 90, 721))
    excess = float(np.max(table.column("exact") - table.column("approx")))
    return CheckResult("scattering_exact_le_approx", excess <= 0.0, excess, 0.0)


def check_path_loss_spread(scenario: Scenario) -> CheckResult:
    ref = default_scenario("path-loss-map", None)
    base = Scenario(scenario.rf, scenario.grid, ref.tx, ref.rx)
    spread = path_loss_table(base).summary["spread_db"]
    return CheckResult("path_loss_spread_db", spread < 1.0, spread, 1.0)


def run_verify(scenario: Scenario, seed: int = DEFAULT_SEED) -> dict:
    rng = np.random.default_rng(seed)
    checks = [
        check_round_trip(rng),
        check_beamfocus_optimality(rng, scenario.wavelength),
        check_oracle_equivalence(rng, scenario),
        check_bracketing(rng, scenario),
        check_closed_form(scenario),
        check_scattering_inequality(scenario),
        check_path_loss_spread(scenario),
    ]
    return {
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
