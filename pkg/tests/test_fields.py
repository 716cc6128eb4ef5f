import numpy as np
import pytest

from shellstrain import tensor as T
from shellstrain.catalog import polynomial_field, scenario
from shellstrain.fields import RotationField, VectorField

COEFFS = [[0.1, 0.2, -0.3, 0.5, 0.1, -0.2, 0.3], [0.0, 0.1, 0.4, -0.2, 0.3], [0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.1, -0.1]]


class TestVectorField:

    def test_fd_matches_analytic(self):
        f = polynomial_field(COEFFS)
        g = VectorField(f.value)
        x = np.array([[0.3, 0.6], [0.7, 0.2]])
        assert np.allclose(g.grad(x), f.grad(x), atol=1e-8)
        assert np.allclose(g.hess(x), f.hess(x), atol=1e-5)

    def test_arithmetic_keeps_derivatives(self):
        f = polynomial_field(COEFFS)
        g = f + 2.0*f - f
        x = np.array([0.4, 0.5])
        assert g.analytic
        assert np.allclose(g.hess(x), 2*f.hess(x))

    def test_affine(self):
        f = polynomial_field(COEFFS)
        R = T.rotation_from_vector([0.1, 0.2, 0.3])
        g = f.affine(R, [1., 2, 3])
        x = np.array([0.4, 0.5])
        assert np.allclose(g.value(x), R @ f.value(x) + [1, 2, 3])
        assert np.allclose(g.grad(x), R @ f.grad(x))


class TestRotationField:

    def test_wryness_of_constant_is_zero(self):
        Q = RotationField.constant(T.rotation_from_vector([0.3, 0.1, -0.2]))
        k, asym = Q.wryness(np.array([[0.2, 0.3]]))
        assert np.allclose(k, 0) and asym == 0

    def test_analytic_matches_fd(self):
        phi = polynomial_field([[0.1, 0.2], [0.0, 0.0, 0.3], [0.05, 0.1, -0.1]])
        Q = RotationField.from_rotation_vector(phi)
        fd = RotationField(Q.value)
        x = np.array([[0.2, 0.3], [0.6, 0.7]])
        assert np.allclose(Q.deriv(x), fd.deriv(x), atol=1e-8)
        k1, _ = Q.wryness(x)
        k2, _ = fd.wryness(x)
        assert np.allclose(k1, k2, atol=1e-8)

    def test_left_multiplication(self):
        Q = scenario('plate', rotation='drill').Q
        R = T.rotation_from_vector([0.5, 0, 0])
        x = np.array([0.3, 0.4])
        assert np.allclose(Q.left(R).value(x), R @ Q.value(x))
        assert np.allclose(Q.left(R).wryness(x)[0], Q.wryness(x)[0])
