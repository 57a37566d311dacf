import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from kplane.lattice import lattice_constant, singular_weights


class TestLatticeConstants:
    # In one dimension the regularized sum over m != 0 of |m|^a m^(2j) is
    # 2 zeta(-a-2j); in two dimensions the beta = 0 sum is 4 zeta(s) beta(s)
    # with s = -a/2 (Dirichlet beta).
    @pytest.mark.parametrize("a", [-0.5, 0.5, 1.0, 1.5, 3.0])
    def test_one_dimension_matches_zeta(self, a):
        assert lattice_constant(1, a) == pytest.approx(2 * float(mpmath.zeta(-a)), abs=1e-9)

    @pytest.mark.parametrize("a", [0.5, 1.0])
    @pytest.mark.parametrize("power", [2, 4])
    def test_one_dimension_moments(self, a, power):
        assert lattice_constant(1, a, (power,)) == pytest.approx(2 * float(mpmath.zeta(-a - power)), abs=1e-8)

    @pytest.mark.parametrize("a", [-1.0, 0.5, 1.0, 3.0])
    def test_two_dimensions_matches_zeta_beta(self, a):
        s = -a / 2
        ref = 4 * float(mpmath.zeta(s) * mpmath.dirichlet(s, [0, 1, 0, -1]))
        assert lattice_constant(2, a) == pytest.approx(ref, abs=1e-8)

    def test_odd_moment_vanishes(self):
        assert lattice_constant(2, 1.0, (1, 2)) == 0.0

    def test_rejects_non_integrable(self):
        with pytest.raises(ValueError):
            lattice_constant(1, -1.5)


class TestSingularWeights:
    def test_even_power_is_plain_riemann(self):
        W = singular_weights(2, 16, 0.5, 2.0)
        ax = 0.5 * (np.arange(16) - 8)
        r2 = ax[:, None] ** 2 + ax[None, :] ** 2
        assert np.allclose(W, 0.25 * r2)

    @pytest.mark.parametrize("a", [0.5, 1.0, 1.5, -0.5])
    def test_one_dimension_gaussian(self, a):
        h = 0.25
        n = 128
        x = h * (np.arange(n) - n // 2)
        W = singular_weights(1, n, h, a)
        approx = np.sum(W * np.exp(-(x - 0.3) ** 2))
        g = lambda t: abs(t) ** a * np.exp(-(t - 0.3) ** 2)
        exact = quad(g, -np.inf, 0)[0] + quad(g, 0, np.inf)[0]
        assert approx == pytest.approx(exact, rel=1e-6)

    def test_plain_sum_is_much_worse(self):
        h, n, a = 0.25, 128, 1.0
        x = h * (np.arange(n) - n // 2)
        g = np.exp(-(x**2))
        plain = h * np.sum(np.abs(x) ** a * g)
        corrected = np.sum(singular_weights(1, n, h, a) * g)
        exact = 1.0  # int |x| exp(-x^2) dx
        assert abs(corrected - exact) < 1e-6
        assert abs(plain - exact) > 1e-3

    def test_two_dimensions_anisotropic(self):
        h, n, a = np.pi / 8, 64, 1.0
        ax = h * (np.arange(n) - n // 2)
        X, Y = np.meshgrid(ax, ax, indexing="ij")
        g = np.exp(-(X**2 + 4 * Y**2) / 2)
        approx = np.sum(singular_weights(2, n, h, a) * g)
        # polar oracle: int_0^2pi int_0^inf r^2 exp(-r^2 q(theta)/2) dr dtheta
        inner = lambda th: np.sqrt(np.pi / 2) * (np.cos(th) ** 2 + 4 * np.sin(th) ** 2) ** -1.5
        exact = quad(inner, 0, 2 * np.pi, limit=200)[0]
        assert approx == pytest.approx(exact, rel=1e-5)
