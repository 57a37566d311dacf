import json

import numpy as np
import pytest

from kplane.fields import catalog, zero_field
from kplane.grassmann import AffinePlane, Frame, circle_quadrature, haar_sample
from kplane.grid import GridFunction, GridSpec, default_spec, sample
from kplane.transform import (
    FiberField,
    FiberGrid,
    apply_fiber_multiplier,
    default_fiber,
    fiber_ft,
    fiber_ift,
    fiberfield_from_json,
    fiberfield_to_json,
    slice_spectrum,
    transform_direct,
    transform_slice,
)


def closed_form(field, quad, fiber):
    """Plane integrals at every fiber node from the analytic formula."""
    y = fiber.nodes().reshape(-1, fiber.d)
    out = np.empty((len(quad),) + fiber.shape, dtype=complex)
    for i in range(len(quad)):
        out[i] = np.reshape(field.plane_integral(quad.A[i], y @ quad.B[i].T), fiber.shape)
    return out


def run_slice(key, d, quad, spec=None):
    spec = default_spec(d) if spec is None else spec
    field = catalog(key, d)
    u = transform_slice(sample(field.eval, spec), quad)
    return u, closed_form(field, quad, u.fiber)


class TestTransformAccuracy:
    @pytest.mark.parametrize("key", ["gauss:iso", "gauss:aniso", "gauss:shift", "gauss:wave"])
    def test_plane_d2(self, key):
        u, exact = run_slice(key, 2, circle_quadrature(32))
        assert np.max(np.abs(u.values - exact)) <= 1e-6 * np.max(np.abs(exact))

    @pytest.mark.parametrize("key", ["gauss:aniso", "gauss:shift"])
    def test_plane_d3_k2(self, key):
        u, exact = run_slice(key, 3, haar_sample(2, 3, 16, 0))
        assert np.max(np.abs(u.values - exact)) <= 1e-5 * np.max(np.abs(exact))

    def test_lines_d3(self):
        u, exact = run_slice("gauss:aniso", 3, haar_sample(1, 3, 6, 0))
        assert np.max(np.abs(u.values - exact)) <= 1e-5 * np.max(np.abs(exact))

    def test_against_direct_quadrature(self):
        # independent route: trapezoid rule along each line on the analytic field
        field = catalog("gauss:wave", 2)
        q = circle_quadrature(8)
        u = transform_slice(sample(field.eval, default_spec(2)), q)
        fiber = u.fiber
        idx = [fiber.origin_index - 5, fiber.origin_index, fiber.origin_index + 9]
        for i in range(len(q)):
            fr = Frame(q.A[i], q.B[i])
            y = fiber.axis()[idx]
            direct = transform_direct(field, [AffinePlane(fr, [v]) for v in y])
            assert np.max(np.abs(u.values[i, idx] - direct)) < 1e-8

    def test_zero(self):
        spec = default_spec(2)
        u = transform_slice(sample(zero_field(2).eval, spec), circle_quadrature(4))
        assert not np.any(u.values)


class TestTransformStructure:
    def test_linearity(self):
        spec = GridSpec(2, 32, 6.0)
        rng = np.random.default_rng(0)
        a, b = (GridFunction(spec, rng.standard_normal(spec.shape)) for _ in range(2))
        q = circle_quadrature(6)
        lhs = transform_slice(a + 3.0 * b, q).values
        rhs = transform_slice(a, q).values + 3.0 * transform_slice(b, q).values
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_translation(self):
        # P(f(. - a))(alpha, y) = Pf(alpha, y - B^T a)
        field = catalog("gauss:iso", 2)
        shift = np.array([0.75, -0.5])
        spec = default_spec(2)
        q = circle_quadrature(4)
        g = sample(lambda x: field.eval(x - shift), spec)
        ug = transform_slice(g, q)
        fiber = ug.fiber
        for i in range(len(q)):
            y = fiber.axis() - (q.B[i].T @ shift)[0]
            ref = field.plane_integral(q.A[i], y[:, None] @ q.B[i].T)
            inner = np.abs(fiber.axis()) < 5
            assert np.max(np.abs(ug.values[i, inner] - ref[inner])) < 1e-8

    def test_fourier_slice(self):
        field = catalog("gauss:aniso", 3)
        q = haar_sample(1, 3, 4, 2)
        U = slice_spectrum(sample(field.eval, default_spec(3)), q)
        eta = U.fiber.dual_nodes().reshape(-1, 2)
        inner = np.linalg.norm(eta, axis=1) <= U.fiber.nyquist / 2
        for i in range(len(q)):
            exact = np.sqrt(2 * np.pi) * field.spectrum(eta[inner] @ q.B[i].T)
            assert np.max(np.abs(U.values[i].ravel()[inner] - exact)) < 1e-5

    def test_fiber_round_trip(self):
        q = circle_quadrature(3)
        fiber = FiberGrid(1, 16, 2.0)
        rng = np.random.default_rng(1)
        u = FiberField(q, fiber, rng.standard_normal((3, 16)))
        assert np.allclose(fiber_ift(fiber_ft(u)).values, u.values, atol=1e-14)

    def test_unit_multiplier_is_identity(self):
        q = circle_quadrature(3)
        u = FiberField(q, FiberGrid(1, 16, 2.0), np.arange(48.0).reshape(3, 16))
        U = fiber_ft(u)
        V = apply_fiber_multiplier(U, lambda r: np.ones_like(r))
        assert np.array_equal(V.values, U.values)

    def test_rejects_fine_fiber(self):
        spec = GridSpec(2, 32, 8.0)
        f = sample(catalog("gauss:iso", 2).eval, spec)
        with pytest.raises(ValueError, match="Nyquist"):
            transform_slice(f, circle_quadrature(4), FiberGrid(1, 64, 8.0))

    def test_rejects_mismatched_fiber(self):
        with pytest.raises(ValueError):
            FiberField(circle_quadrature(2), FiberGrid(2, 8, 1.0), np.zeros((2, 8, 8)))

    def test_default_fiber(self):
        assert default_fiber(GridSpec(3, 32, 6.0), 1) == FiberGrid(2, 32, 6.0)


class TestSerialization:
    def test_round_trip(self):
        spec = GridSpec(2, 16, 4.0)
        u = transform_slice(sample(catalog("gauss:wave", 2).eval, spec), haar_sample(1, 2, 3, 9))
        text = fiberfield_to_json(u)
        doc = json.loads(text)
        assert doc["format"] == "kplane-fiberfield/1"
        v = fiberfield_from_json(text)
        assert np.array_equal(v.values, u.values)
        assert np.array_equal(v.quad.A, u.quad.A)
        assert v.fiber == u.fiber
