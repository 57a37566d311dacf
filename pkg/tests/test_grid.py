import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kplane.grid import (
    GridFunction,
    GridSpec,
    SpectralFunction,
    default_spec,
    evaluate_spectrum_at,
    forward_ft,
    interpolate_at,
    inverse_ft,
    pad,
    sample,
)


def gauss(x):
    return np.exp(-0.5 * np.sum(x**2, axis=-1))


class TestGridSpec:
    def test_geometry(self):
        s = GridSpec(2, 64, 8.0)
        assert s.h == 0.25
        assert s.dxi == pytest.approx(np.pi / 8)
        assert s.nyquist == pytest.approx(4 * np.pi)
        ax = s.axis()
        assert ax[0] == -8.0 and ax[-1] == pytest.approx(8.0 - 0.25)
        assert ax[s.origin_index] == 0.0
        assert s.dual_axis()[s.origin_index] == 0.0

    @pytest.mark.parametrize("n", [7, 6, 0, 9])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            GridSpec(1, n, 1.0)

    def test_rejects_bad_width(self):
        with pytest.raises(ValueError):
            GridSpec(1, 8, -1.0)

    def test_node_order_is_row_major(self):
        s = GridSpec(2, 8, 2.0)
        x = s.nodes()
        assert np.allclose(x[0, 1], [-2.0, -1.5])
        assert np.allclose(x[1, 0], [-1.5, -2.0])

    def test_default_profiles(self):
        assert default_spec(2) == GridSpec(2, 64, 8.0)
        assert default_spec(3) == GridSpec(3, 32, 6.0)
        with pytest.raises(ValueError):
            default_spec(7)


class TestSample:
    def test_zero(self):
        f = sample(lambda x: np.zeros(x.shape[:-1]), GridSpec(2, 8, 1.0))
        assert not np.any(f.values)

    def test_gaussian_value_at_origin(self):
        s = GridSpec(1, 8, 4.0)
        f = sample(gauss, s)
        assert f.values[s.origin_index] == 1.0
        assert np.allclose(f.values, np.exp(-s.axis() ** 2 / 2))

    def test_first_coordinate(self):
        s = GridSpec(2, 8, 3.0)
        f = sample(lambda x: x[..., 0], s)
        assert f.values[0, 0] == -3.0

    def test_non_finite_names_the_node(self):
        s = GridSpec(1, 8, 4.0)
        with pytest.raises(ValueError, match=r"node \(4,\)"):
            with np.errstate(divide="ignore"):
                sample(lambda x: 1.0 / x[..., 0], s)

    def test_wrong_value_count(self):
        with pytest.raises(ValueError):
            GridFunction(GridSpec(1, 8, 1.0), np.zeros(7))


class TestFourier:
    def test_gaussian_pair_1d(self):
        s = GridSpec(1, 64, 8.0)
        F = forward_ft(sample(gauss, s))
        xi = s.dual_axis()
        assert np.max(np.abs(F.values - np.exp(-xi**2 / 2))) < 1e-10

    def test_zero_in_zero_out(self):
        s = GridSpec(2, 8, 1.0)
        assert not np.any(forward_ft(GridFunction(s, np.zeros(s.shape))).values)
        assert not np.any(inverse_ft(SpectralFunction(s, np.zeros(s.shape))).values)

    def test_plancherel(self):
        s = GridSpec(1, 64, 8.0)
        f = sample(gauss, s)
        F = forward_ft(f)
        lhs = s.h * np.sum(np.abs(f.values) ** 2)
        rhs = s.dxi * np.sum(np.abs(F.values) ** 2)
        assert lhs == pytest.approx(rhs, rel=1e-10)
        assert lhs == pytest.approx(np.sqrt(np.pi), rel=1e-10)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 2**31 - 1))
    def test_round_trip_and_plancherel_random(self, d, seed):
        s = GridSpec(d, 8, 1.7)
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(s.shape) + 1j * rng.standard_normal(s.shape)
        f = GridFunction(s, v)
        F = forward_ft(f)
        back = inverse_ft(F).values
        assert np.linalg.norm(back - v) <= 1e-12 * np.linalg.norm(v)
        lhs = s.h**d * np.sum(np.abs(v) ** 2)
        rhs = s.dxi**d * np.sum(np.abs(F.values) ** 2)
        assert abs(lhs - rhs) <= 1e-12 * lhs

    def test_linearity(self):
        s = GridSpec(2, 8, 1.0)
        rng = np.random.default_rng(1)
        a, b = (GridFunction(s, rng.standard_normal(s.shape)) for _ in range(2))
        lhs = forward_ft(a + 2.0 * b).values
        rhs = forward_ft(a).values + 2.0 * forward_ft(b).values
        assert np.allclose(lhs, rhs, atol=1e-14)

    def test_single_dual_node_gives_exponential(self):
        s = GridSpec(1, 16, 2.0)
        F = np.zeros(16, complex)
        m = 3
        F[s.origin_index + m] = 1.0
        f = inverse_ft(SpectralFunction(s, F)).values
        xi = s.dxi * m
        expected = (2 * np.pi) ** -0.5 * s.dxi * np.exp(1j * xi * s.axis())
        assert np.allclose(f, expected, atol=1e-14)


class TestOffGrid:
    def test_matches_fft_at_dual_nodes(self):
        s = GridSpec(2, 16, 3.0)
        rng = np.random.default_rng(2)
        f = GridFunction(s, rng.standard_normal(s.shape))
        pts = s.dual_nodes().reshape(-1, 2)
        res = evaluate_spectrum_at(f, pts)
        ref = forward_ft(f).values.ravel()
        assert np.max(np.abs(res.values - ref)) <= 1e-13 * np.max(np.abs(ref))
        r = np.linalg.norm(pts, axis=1)
        assert np.array_equal(res.beyond_nyquist, r > s.nyquist)

    def test_gaussian_off_grid(self):
        s = GridSpec(2, 64, 8.0)
        res = evaluate_spectrum_at(sample(gauss, s), [[0.3, -0.7]])
        assert abs(res.values[0] - np.exp(-0.29)) < 1e-8

    def test_zero_frequency_is_discrete_mass(self):
        s = GridSpec(2, 16, 3.0)
        f = sample(gauss, s)
        res = evaluate_spectrum_at(f, [[0.0, 0.0]])
        assert res.values[0] == pytest.approx((2 * np.pi) ** -1 * s.h**2 * np.sum(f.values))

    def test_beyond_nyquist_is_flagged(self):
        s = GridSpec(1, 16, 2.0)
        res = evaluate_spectrum_at(sample(gauss, s), [[0.1], [s.nyquist * 1.1]])
        assert list(res.beyond_nyquist) == [False, True]
        assert res.flagged

    def test_interpolation_reproduces_nodes(self):
        s = GridSpec(2, 16, 3.0)
        rng = np.random.default_rng(3)
        f = GridFunction(s, rng.standard_normal(s.shape))
        vals = interpolate_at(f, s.nodes().reshape(-1, 2))
        assert np.allclose(vals, f.values.ravel(), atol=1e-12)


class TestPad:
    def test_nodes_keep_positions(self):
        s = GridSpec(2, 8, 2.0)
        f = sample(lambda x: x[..., 0] + 2 * x[..., 1], s)
        g = pad(f, 3)
        assert g.spec == GridSpec(2, 24, 6.0)
        assert np.allclose(g.values[8:16, 8:16], f.values)
        assert np.sum(np.abs(g.values)) == pytest.approx(np.sum(np.abs(f.values)))
