import numpy as np
import pytest
from scipy.integrate import quad

from kplane.fields import aniso_matrix, bump, catalog, divergence_profile, gaussian
from kplane.grassmann import AffinePlane, Frame, haar_sample
from kplane.grid import GridSpec, default_spec, evaluate_spectrum_at, forward_ft, sample
from kplane.transform import transform_direct

SPECTRAL_KEYS = ["gauss:iso", "gauss:aniso", "gauss:shift", "gauss:wave"]


class TestGaussian:
    def test_rejects_non_spd(self):
        with pytest.raises(ValueError, match="-1"):
            gaussian(np.diag([1.0, -1.0]))

    def test_unit_plane_integral(self):
        f = gaussian(np.eye(2))
        A = np.array([[1.0], [0.0]])
        y = np.array([0.0, 1.0])
        assert f.plane_integral(A, y) == pytest.approx(np.sqrt(2 * np.pi) * np.exp(-0.5))

    def test_aniso_plane_integral(self):
        f = gaussian(np.diag([1.0, 4.0]))
        val = f.plane_integral(np.array([[1.0], [0.0]]), np.array([0.0, 1.0]))
        assert val == pytest.approx(np.sqrt(2 * np.pi) * np.exp(-2.0))

    def test_unit_spectrum(self):
        f = gaussian(np.eye(3))
        xi = np.array([[0.3, -1.0, 2.0]])
        assert f.spectrum(xi)[0] == pytest.approx(np.exp(-0.5 * np.sum(xi**2)))

    @pytest.mark.parametrize("key", SPECTRAL_KEYS)
    @pytest.mark.parametrize("d,k", [(2, 1), (3, 1), (3, 2)])
    def test_plane_integral_matches_quadrature(self, key, d, k):
        f = catalog(key, d)
        q = haar_sample(k, d, 20, seed=11)
        rng = np.random.default_rng(5)
        for i in range(20):
            y = rng.uniform(-1.5, 1.5, d - k)
            plane = AffinePlane(Frame(q.A[i], q.B[i]), y)
            exact = f.plane_integral(q.A[i], plane.offset)
            approx = transform_direct(f, plane, extent=8.0, nodes=129 if k == 1 else 97)
            assert abs(approx - exact) <= 1e-8 * max(1.0, abs(exact))

    @pytest.mark.parametrize("key", SPECTRAL_KEYS + ["zero"])
    @pytest.mark.parametrize("d", [2, 3])
    def test_spectrum_matches_grid(self, key, d):
        spec = default_spec(d)
        f = catalog(key, d)
        F = forward_ft(sample(f.eval, spec)).values
        r = spec.dual_radii()
        inner = r <= spec.nyquist / 2
        exact = f.spectrum(spec.dual_nodes()[inner])
        # d=3 truncates at L=6; the shifted centre sits closer to the edge
        tol = 1e-10 if d == 2 else 1e-6
        assert np.max(np.abs(F[inner] - exact)) <= tol

    def test_aniso_matrix_is_spd(self):
        for d in (2, 3, 4):
            assert np.all(np.linalg.eigvalsh(aniso_matrix(d)) > 0)


class TestBump:
    def test_values(self):
        f = bump(2.0, 2)
        assert f(np.zeros(2)) == pytest.approx(np.exp(-1))
        assert f(np.array([2.0, 0.0])) == 0.0
        assert f(np.array([0.0, 3.0])) == 0.0

    def test_rejects_radius_beyond_box(self):
        with pytest.raises(ValueError):
            bump(8.0, 2, grid_half_width=8.0)

    def test_vanishes_outside_support_on_grid(self):
        spec = default_spec(2)
        f = sample(bump(2.0, 2).eval, spec)
        assert not np.any(f.values[spec.radii() >= 2.0])

    def test_spectrum_decay_on_nyquist_shell(self):
        # smooth compact support: the spectrum on |xi| in [K/2, K] is two
        # orders of magnitude below its peak at the default d=2 grid
        spec = default_spec(2)
        F = np.abs(forward_ft(sample(bump(2.0, 2).eval, spec)).values)
        r = spec.dual_radii()
        shell = (r >= spec.nyquist / 2) & (r <= spec.nyquist)
        assert F[shell].max() < 5e-3
        assert F[shell].max() < 1e-2 * F.max()


class TestDivergenceProfile:
    def test_origin(self):
        f = divergence_profile(1.0, 0.9, 2)
        assert f(np.zeros(2)).real == pytest.approx(np.log(3) ** -0.9)

    def test_radial(self):
        f = divergence_profile(1.0, 0.9, 3)
        x = np.random.default_rng(0).standard_normal((10, 3))
        r = np.linalg.norm(x, axis=1)
        e1 = np.zeros((10, 3))
        e1[:, 0] = r
        assert np.allclose(f(x), f(e1))

    @pytest.mark.parametrize("delta", [0.0, 1.0])
    def test_rejects_delta(self, delta):
        with pytest.raises(ValueError):
            divergence_profile(1.0, delta, 2)

    def test_plane_integral_growth_oracle(self):
        # 1-D oracle for a line through the origin: 2 int_0^R (1+r)^-1 log(3+r)^-0.9 dr
        g = lambda r: (1 + r) ** -1 * np.log(3 + r) ** -0.9
        I = lambda R: 2 * quad(g, 0, R, limit=200)[0]
        assert I(64) > I(32) > I(16) > I(8)


class TestCatalog:
    def test_unknown_key(self):
        with pytest.raises(KeyError):
            catalog("nope", 2)

    def test_keys(self):
        assert catalog("bump:3", 2).support_radius == 3.0
        assert catalog("divergence", 2, k=1).description == "divergence:1:0.9"
        assert catalog("divergence:2:0.5", 2).description == "divergence:2:0.5"
