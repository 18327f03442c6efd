import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thzirs.geometry import (
    IrsGrid,
    Placement,
    Region,
    cartesian_to_spherical,
    classify_region,
    element_distance,
    element_distances,
    element_far_field_check,
    element_position,
    region_bounds,
    spherical_to_cartesian,
    wavelength_from_frequency,
)

from conftest import LAM


def test_wavelength_default_and_override():
    assert wavelength_from_frequency(300e9) == pytest.approx(0.999308193e-3, rel=1e-9)
    assert wavelength_from_frequency(300e9, 1e-3) == 1e-3
    with pytest.raises(ValueError):
        wavelength_from_frequency(0)


class TestIrsGrid:
    def test_derived_quantities(self):
        g = IrsGrid(4, 3, 1e-3, 2e-3, 0.5e-3, 0.25e-3)
        assert g.pitch_x == pytest.approx(1.5e-3)
        assert g.pitch_y == pytest.approx(2.25e-3)
        assert g.n_elements == 12
        assert g.size_x == pytest.approx(4 * 1e-3 + 3 * 0.5e-3)
        assert g.size_y == pytest.approx(3 * 2e-3 + 2 * 0.25e-3)
        assert g.max_dimension == pytest.approx(max(g.size_x, g.size_y))

    @pytest.mark.parametrize(
        "args",
        [(0, 1, 1e-3, 1e-3), (1, 0, 1e-3, 1e-3), (1, 1, 0.0, 1e-3), (1, 1, 1e-3, -1e-3), (1, 1, 1e-3, 1e-3, -1e-4)],
    )
    def test_rejects_invalid(self, args):
        with pytest.raises(ValueError):
            IrsGrid(*args)


class TestConversions:
    def test_polar_axis(self):
        np.testing.assert_allclose(spherical_to_cartesian(1, 0, 0), [0, 0, 1])

    def test_y_axis(self):
        np.testing.assert_allclose(spherical_to_cartesian(2, math.pi / 2, math.pi / 2), [0, 2, 0], atol=1e-15)

    def test_ref_tx_distance(self):
        dist, polar, azimuth = cartesian_to_spherical((0, -0.3, 0.6))
        assert dist == pytest.approx(0.6708, abs=5e-5)
        np.testing.assert_allclose(spherical_to_cartesian(dist, polar, azimuth), [0, -0.3, 0.6], atol=1e-15)

    def test_inverse_of_axis(self):
        assert cartesian_to_spherical((0, 0, 1)) == (1.0, 0.0, 0.0)

    def test_ref_rx_distance(self):
        assert cartesian_to_spherical((0, 1, 1))[0] == pytest.approx(math.sqrt(2))
        assert cartesian_to_spherical((0, 1, 1))[0] == pytest.approx(1.41, abs=5e-3)

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            cartesian_to_spherical((0, 0, 0))

    def test_azimuth_range(self):
        assert cartesian_to_spherical((-1, 0, 0))[2] == pytest.approx(math.pi)
        assert cartesian_to_spherical((-1, -0.0, 0))[2] == pytest.approx(math.pi)

    @settings(max_examples=500, deadline=None)
    @given(
        st.tuples(*[st.floats(-1e3, 1e3, allow_nan=False) for _ in range(3)]).filter(
            lambda p: np.linalg.norm(p) > 1e-6
        )
    )
    def test_round_trip_property(self, p):
        q = spherical_to_cartesian(*cartesian_to_spherical(p))
        assert np.linalg.norm(q - np.array(p)) <= 1e-12 * np.linalg.norm(p)

    def test_round_trip_bulk(self):
        rng = np.random.default_rng(7)
        pts = rng.normal(size=(100_000, 3)) * 10 ** rng.uniform(-3, 3, size=(100_000, 1))
        worst = 0.0
        for p in pts:
            pl = Placement.from_cartesian(p)
            q = Placement.from_spherical(pl.dist, pl.polar, pl.azimuth).cart
            worst = max(worst, np.linalg.norm(q - p) / np.linalg.norm(p))
        assert worst < 1e-12


class TestPlacement:
    def test_representations_agree(self):
        p = Placement.from_spherical(2.0, 0.3, -1.2)
        np.testing.assert_allclose(p.cart, spherical_to_cartesian(2.0, 0.3, -1.2), rtol=1e-12)

    def test_zero_distance_rejected(self):
        with pytest.raises(ValueError):
            Placement.from_spherical(0.0, 0.1, 0.1)

    def test_immutable_cartesian(self):
        p = Placement.from_cartesian((1, 2, 3))
        with pytest.raises(ValueError):
            p.cart[0] = 5.0


class TestElements:
    def test_origin_element(self, grid100):
        np.testing.assert_array_equal(element_position(0, 0, grid100), [0, 0, 0])

    def test_arithmetic(self):
        g = IrsGrid(3, 3, 0.5e-3, 0.5e-3)
        np.testing.assert_allclose(element_position(1, 2, g), [0.5e-3, 1.0e-3, 0])

    def test_far_corner(self, grid100):
        np.testing.assert_allclose(element_position(99, 99, grid100), [99 * LAM / 2, 99 * LAM / 2, 0])
        np.testing.assert_allclose(element_position(99, 99, grid100)[:2], [0.04947, 0.04947], atol=5e-6)

    @pytest.mark.parametrize("n,m", [(-1, 0), (0, -1), (100, 0), (0, 100)])
    def test_out_of_range(self, grid100, n, m):
        with pytest.raises(IndexError):
            element_position(n, m, grid100)
        with pytest.raises(IndexError):
            element_distance((0, 0, 1), n, m, grid100)

    def test_distance_reference(self, grid100):
        assert element_distance((0, 0, 1), 0, 0, grid100) == 1.0
        assert element_distance((0, -0.3, 0.6), 0, 0, grid100) == pytest.approx(0.6708, abs=5e-5)

    def test_distance_far_corner(self, grid100):
        x = 99 * LAM / 2
        expected = math.sqrt(x**2 + (-0.3 - x) ** 2 + 0.36)
        assert element_distance((0, -0.3, 0.6), 99, 99, grid100) == pytest.approx(expected, rel=1e-15)

    def test_vectorised_matches_scalar(self):
        g = IrsGrid(5, 7, 1e-3, 2e-3, 1e-4, 0)
        p = (0.01, -0.02, 0.3)
        d = element_distances(p, g)
        for n in range(5):
            for m in range(7):
                assert d[n, m] == pytest.approx(element_distance(p, n, m, g), rel=1e-15)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(3)
        g = IrsGrid(20, 15, 1e-3, 1e-3, 2e-4, 3e-4)
        for _ in range(200):
            p = rng.normal(size=3)
            d = element_distances(p, g)
            for n, m in [(0, 0), (19, 14), (7, 3)]:
                assert d[n, m] >= abs(np.linalg.norm(p) - np.linalg.norm(element_position(n, m, g))) - 1e-15


class TestRegions:
    def test_table_rows(self, lam):
        b = region_bounds(IrsGrid.half_wavelength(100, 100, lam), lam)
        assert b.reactive_upper == pytest.approx(0.22, rel=0.02)
        assert b.fraunhofer == pytest.approx(5.0, rel=0.02)

    def test_exact_forms(self, lam):
        b = region_bounds(IrsGrid.half_wavelength(100, 100, lam), lam)
        assert b.fraunhofer == pytest.approx(5000 * lam, rel=1e-12)
        assert b.reactive_upper == pytest.approx(0.62 * math.sqrt(125_000) * lam, rel=1e-12)

    def test_single_element(self, lam):
        assert region_bounds(IrsGrid.half_wavelength(1, 1, lam), lam).fraunhofer == pytest.approx(lam / 2)

    def test_bounds_ordered_for_shipped_grids(self, lam):
        for n in (2, 8, 16, 32, 64, 80, 100, 400):
            b = region_bounds(IrsGrid.half_wavelength(n, n, lam), lam)
            assert b.reactive_upper < b.fraunhofer

    @given(st.integers(1, 500), st.integers(1, 500), st.integers(0, 50), st.booleans())
    def test_monotone_in_size(self, n_x, n_y, extra, grow_x):
        g = IrsGrid(n_x, n_y, LAM / 2, LAM / 3, 1e-4, 0.0)
        bigger = g.resized(n_x + extra, n_y) if grow_x else g.resized(n_x, n_y + extra)
        a, b = region_bounds(g, LAM), region_bounds(bigger, LAM)
        assert b.reactive_upper >= a.reactive_upper and b.fraunhofer >= a.fraunhofer

    def test_rejects_bad_wavelength(self, grid100):
        with pytest.raises(ValueError):
            region_bounds(grid100, 0.0)

    @pytest.mark.parametrize("dist,region", [(1.0, Region.FRESNEL), (6.0, Region.FAR_FIELD), (0.1, Region.REACTIVE_NEAR_FIELD)])
    def test_classify(self, grid100, lam, dist, region):
        assert classify_region(dist, grid100, lam) is region

    def test_classify_boundaries(self, grid100, lam):
        b = region_bounds(grid100, lam)
        assert classify_region(b.reactive_upper, grid100, lam) is Region.REACTIVE_NEAR_FIELD
        assert classify_region(b.fraunhofer, grid100, lam) is Region.FRESNEL
        assert classify_region(np.nextafter(b.fraunhofer, 10), grid100, lam) is Region.FAR_FIELD

    @given(st.floats(1e-6, 1e3))
    def test_classify_partition(self, dist):
        lam = LAM
        g = IrsGrid.half_wavelength(100, 100, lam)
        b = region_bounds(g, lam)
        labels = [dist <= b.reactive_upper, b.reactive_upper < dist <= b.fraunhofer, dist > b.fraunhofer]
        assert sum(labels) == 1
        assert classify_region(dist, g, lam) is [Region.REACTIVE_NEAR_FIELD, Region.FRESNEL, Region.FAR_FIELD][labels.index(True)]


class TestElementFarField:
    def test_half_wave_element(self, lam):
        g = IrsGrid.half_wavelength(1, 1, lam)
        assert 2 * (lam / 2) ** 2 / lam == pytest.approx(lam / 2)
        assert element_far_field_check(0.67, g, lam)

    def test_threshold_is_strict(self, lam):
        g = IrsGrid.half_wavelength(1, 1, lam)
        threshold = 2 * g.max_element_length**2 / lam
        assert not element_far_field_check(threshold, g, lam)
        assert element_far_field_check(np.nextafter(threshold, 1), g, lam)

    def test_large_element(self, lam):
        g = IrsGrid(1, 1, 2 * lam, lam)
        assert not element_far_field_check(7 * lam, g, lam)
        assert element_far_field_check(8.01 * lam, g, lam)
