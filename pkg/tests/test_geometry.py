import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shellstrain import tensor as T
from shellstrain.catalog import SURFACES, scenario
from shellstrain.errors import Degenerate, OutOfDomain
from shellstrain.fields import SurfacePatch
from shellstrain.geometry import christoffels, frame_at, normal_of_map

unit = st.floats(0.05, 0.95)


def interior(scn, s, t):
    d = scn.domain
    return np.array([d[0][0] + s*(d[0][1] - d[0][0]), d[1][0] + t*(d[1][1] - d[1][0])])


class TestOracles:

    def test_plate(self):
        f = frame_at(scenario('plate').y0, np.array([0.3, 0.7]))
        assert np.allclose(f.grad_theta, np.eye(3))
        assert np.allclose(f.I, np.eye(2)) and np.allclose(f.II, 0) and np.allclose(f.L, 0)
        assert f.H == 0 and f.K == 0

    def test_unit_cylinder(self):
        f = frame_at(scenario('cylinder').y0, np.array([0.4, 0.5]))
        assert np.allclose(f.I, np.eye(2))
        assert np.allclose(f.II, np.diag([-1., 0]))
        assert np.allclose(f.L, np.diag([-1., 0]))
        assert np.isclose(f.H, -0.5) and np.isclose(f.K, 0)

    def test_unit_sphere_equator(self):
        f = frame_at(scenario('sphere').y0, np.array([0.2, 0.0]))
        assert np.isclose(abs(f.H), 1.0) and np.isclose(f.K, 1.0)
        # this chart orients the normal outward, hence II = -I and H = -1
        assert np.isclose(f.H, -1.0)

    def test_christoffel_flat_charts(self):
        for name in ('plate', 'cylinder'):
            assert np.allclose(christoffels(scenario(name).y0, np.array([0.5, 0.5])), 0, atol=1e-14)

    def test_christoffel_polar(self):
        x1 = 1.2
        g = christoffels(scenario('polar_plane').y0, np.array([x1, 0.3]))
        expected = np.zeros((2, 2, 2))
        expected[0, 1, 1] = -x1
        expected[1, 0, 1] = expected[1, 1, 0] = 1/x1
        assert np.allclose(g, expected)

    def test_normal_examples(self):
        x = np.array([0.4, 0.5])
        assert np.allclose(normal_of_map(scenario('plate').y0, x), [0, 0, 1])
        assert np.allclose(normal_of_map(scenario('cylinder').y0, x), [np.cos(0.4), np.sin(0.4), 0])
        m = scenario('torus').y0
        assert np.allclose(normal_of_map(m*2.0, x), normal_of_map(m, x))


class TestInvariants:

    @pytest.mark.parametrize('kind', sorted(SURFACES))
    def test_frame_identities(self, kind, rng):
        scn = scenario(kind)
        x = np.stack([interior(scn, *rng.uniform(0.05, 0.95, 2)) for _ in range(50)])
        f = frame_at(scn.y0, x)
        tol = 1e-8
        assert np.allclose(f.II, T.tp(f.II), atol=tol)
        assert np.allclose(f.L, np.linalg.solve(f.I, f.II), atol=tol)
        assert np.allclose(f.III, f.II @ f.I_inv @ f.II, atol=tol)
        assert np.allclose(f.K, np.linalg.det(f.L), atol=tol)
        assert np.allclose(2*f.H, np.trace(f.L, axis1=-2, axis2=-1), atol=tol)
        assert np.allclose(T.tp(f.a_contra) @ f.a_co, np.eye(3), atol=tol)
        assert np.allclose(f.a_co[..., 2], f.n0) and np.allclose(f.a_contra[..., 2], f.n0)
        cross = np.cross(f.a_co[..., 0], f.a_co[..., 1])
        assert np.allclose(np.linalg.norm(cross, axis=-1), np.sqrt(np.linalg.det(f.I)), atol=tol)

    @pytest.mark.parametrize('kind', ['cylinder', 'sphere', 'monge', 'torus'])
    @given(s=unit, t=unit, alpha=st.sampled_from([0.5, 2.0, 3.0]))
    def test_scaling_laws(self, kind, s, t, alpha):
        scn = scenario(kind)
        x = interior(scn, s, t)
        f = frame_at(scn.y0, x)
        fa = frame_at(scn.y0*alpha, x)
        assert np.allclose(fa.I, alpha**2*f.I, atol=1e-8)
        assert np.allclose(fa.II, alpha*f.II, atol=1e-8)
        assert np.allclose(fa.L, f.L/alpha, atol=1e-8)
        assert np.allclose(fa.III, f.III, atol=1e-8)

    @pytest.mark.parametrize('kind', sorted(SURFACES))
    def test_fd_mode_matches_analytic(self, kind):
        scn = scenario(kind)
        fd = SurfacePatch(scn.y0.value, domain=scn.domain)
        x = scn.points
        fa, ff = frame_at(scn.y0, x), frame_at(fd, x)
        for name in ('I', 'II', 'L', 'III', 'n0'):
            assert np.allclose(getattr(ff, name), getattr(fa, name), atol=1e-6), name

    def test_weingarten_relation_to_tensors(self, generic):
        f = frame_at(generic.y0, generic.points)
        flatL = T.lift(f.L)
        assert np.allclose(f.B, f.grad_theta @ flatL @ f.grad_theta_inv, atol=1e-12)


class TestErrors:

    def test_degenerate(self):
        flat = SurfacePatch(lambda x: np.stack([x[..., 0], x[..., 0], 0*x[..., 0]], -1),
                            lambda x: np.broadcast_to(np.array([[1., 0], [1, 0], [0, 0]]), x.shape[:-1] + (3, 2)),
                            lambda x: np.zeros(x.shape[:-1] + (3, 2, 2)))
        with pytest.raises(Degenerate):
            frame_at(flat, np.array([0.5, 0.5]))

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            frame_at(scenario('plate').y0, np.array([1.5, 0.5]))
