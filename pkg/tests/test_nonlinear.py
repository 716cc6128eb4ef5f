import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shellstrain import tensor as T
from shellstrain.catalog import scenario
from shellstrain.errors import InvalidMaterial
from shellstrain.fields import RotationField, SurfacePatch
from shellstrain.geometry import frame_at
from shellstrain.nonlinear import (NormalField, acharya_tensors, ansatz_point, constrained_strains,
                                   cosserat_strains, koiter_strains, naghdi_strains, reconstruct_3d_strain,
                                   thickness_ansatz, virga_plate_tensor)

from conftest import random_rotation


def norm(A):
    return np.max(np.abs(A))


class TestKoiter:

    def test_identity(self):
        scn = scenario('torus')
        G, R = koiter_strains(scn.y0, scn.m, scn.points)
        assert norm(G) == 0 and norm(R) == 0

    def test_rigid(self):
        scn = scenario('sphere', 'rigid')
        G, R = koiter_strains(scn.y0, scn.m, scn.points)
        assert norm(G) < 1e-12 and norm(R) < 1e-12

    def test_scaled_cylinder(self):
        scn = scenario('cylinder', 'scale', deformation_params={'alpha': 2.0})
        G, R = koiter_strains(scn.y0, scn.m, scn.points)
        assert np.allclose(G, 1.5*np.eye(2))
        assert np.allclose(R, np.diag([-1., 0]))


class TestCosserat:

    def test_reference_state(self):
        scn = scenario('cylinder')
        s = cosserat_strains(scn.y0, scn.m, scn.Q, scn.points)
        for name in ('E_ms', 'K_es', 'G', 'T', 'R', 'C', 'N', 'CK', 'EB_CK'):
            assert norm(getattr(s, name)) < 1e-14, name

    def test_matched_rigid_rotation(self, rng):
        R0 = random_rotation(rng)
        scn = scenario('monge')
        m = SurfacePatch.from_field(scn.y0.affine(R0, [1., -2, 0.5]), scn.domain)
        s = cosserat_strains(scn.y0, m, RotationField.constant(R0), scn.points)
        assert norm(s.E_ms) < 1e-12 and norm(s.K_es) < 1e-12

    def test_constant_drill_on_plate(self):
        th = 0.4
        scn = scenario('plate', rotation='constant', rotation_params={'rotvec': [0, 0, th]})
        s = cosserat_strains(scn.y0, scn.m, scn.Q, scn.points)
        assert norm(s.K_es) < 1e-14
        expected = np.array([[np.cos(th) - 1, np.sin(th)], [-np.sin(th), np.cos(th) - 1]])
        assert np.allclose(s.G, expected)

    def test_block_identities(self, generic):
        x = generic.points
        f = frame_at(generic.y0, x)
        s = cosserat_strains(generic.y0, generic.m, generic.Q, x, f)
        Ti = f.grad_theta_inv

        def blocks(A, row):
            M = np.zeros(A.shape[:-2] + (3, 3))
            M[..., :2, :2] = A
            M[..., 2, :2] = row
            return T.tp(Ti) @ M @ Ti
        TL = np.einsum('...a,...ab->...b', s.T, f.L)
        assert norm(s.E_ms - blocks(s.G, s.T)) < 1e-9
        assert norm(s.CK + blocks(s.R, 0.0)) < 1e-9
        assert norm(s.EB_CK + blocks(s.R - s.G @ f.L, -TL)) < 1e-9
        nn = np.einsum('...i,...j->...ij', f.n0, np.einsum('...ij,...i->...j', s.K_es, f.n0))
        assert norm(s.K_es - (f.C @ (-f.C @ s.K_es) + nn)) < 1e-9


class TestConstrained:

    def test_reference(self):
        scn = scenario('sphere')
        s = constrained_strains(scn.y0, scn.m, scn.points)
        assert np.allclose(s.Q_inf, np.eye(3))
        for name in ('E_inf', 'K_inf', 'G_inf', 'R_inf_flat', 'T_inf', 'N_inf', 'sym_EB_CK'):
            assert norm(getattr(s, name)) < 1e-12, name

    @pytest.mark.parametrize('rho', [1.0, 2.0])
    def test_pure_flexure(self, rho):
        scn = scenario('plate', 'isometric_roll', deformation_params={'rho': rho})
        s = constrained_strains(scn.y0, scn.m, scn.points)
        _, R = koiter_strains(scn.y0, scn.m, scn.points)
        assert norm(s.R_inf_flat - T.lift(R)) < 1e-7
        assert np.allclose(R, np.diag([1/rho, 0])*np.sign(R[0, 0, 0]))

    def test_scaling_invariance(self):
        scn = scenario('cylinder')
        a = constrained_strains(scn.y0, scn.m, scn.points).R_inf_flat
        b = constrained_strains(scn.y0, scn.m*2.0, scn.points).R_inf_flat
        assert norm(a - b) < 1e-12

    def test_invariants(self, generic):
        s = constrained_strains(generic.y0, generic.m, generic.points)
        assert norm(s.E_inf - T.tp(s.E_inf)) < 1e-9
        assert norm(s.T_inf) < 1e-8
        assert norm(s.E_inf - s.E_inf_sqrt) < 1e-8
        T.check_rotation(s.Q_inf)


class TestOtherProposals:

    def test_acharya_reference_and_scaling(self, generic):
        x = generic.points
        Rt, Rs = acharya_tensors(generic.y0, generic.y0, x)
        assert norm(Rt) < 1e-14 and norm(Rs) < 1e-14
        Rt1, _ = acharya_tensors(generic.y0, generic.m, x)
        Rt2, _ = acharya_tensors(generic.y0, generic.m*0.5, x)
        assert norm(Rt2 - 0.5*Rt1) < 1e-12

    @given(eps=st.floats(-0.2, 0.2))
    def test_acharya_zero_iff_r_inf_zero(self, eps):
        scn = scenario('cylinder')
        bump = scenario('cylinder', 'polynomial', deformation_params={'coeffs': [[0, 0, 0, 1.0], [0.0], [0.0]]}).v
        m = scn.y0 + bump*eps
        Rt, _ = acharya_tensors(scn.y0, m, scn.points)
        Rf = constrained_strains(scn.y0, m, scn.points).R_inf_flat
        assert (norm(Rt) < 1e-10) == (norm(Rf) < 1e-10)

    def test_virga(self):
        rho = 2.0
        scn = scenario('plate', 'isometric_roll', deformation_params={'rho': rho})
        V = virga_plate_tensor(scn.m, scn.points)
        assert np.allclose(V, np.diag([1/rho**2, 0]))
        assert np.allclose(virga_plate_tensor(scn.m*3.0, scn.points), V)
        assert norm(virga_plate_tensor(scn.y0, scn.points)) == 0

    def test_naghdi(self, rng):
        scn = scenario('plate', 'isometric_roll', deformation_params={'rho': 2.0})
        R, Tn, P = naghdi_strains(scn.y0, scn.y0, NormalField(scn.y0), scn.points)
        assert norm(R) == 0 and norm(Tn) == 0 and norm(P) == 0
        _, Tn, P = naghdi_strains(scn.y0, scn.m, NormalField(scn.m), scn.points)
        assert np.allclose(P, np.diag([0.25, 0])) and norm(Tn) < 1e-14
        R0 = random_rotation(rng)
        cyl = scenario('cylinder')
        m = SurfacePatch.from_field(cyl.y0.affine(R0, [0.3, 0, 0]), cyl.domain)
        out = naghdi_strains(cyl.y0, m, NormalField(m), cyl.points)
        assert max(norm(a) for a in out) < 1e-12


class TestReconstruction:

    def test_reference_vanishes(self):
        scn = scenario('cylinder')
        f = frame_at(scn.y0, scn.points)
        cs = constrained_strains(scn.y0, scn.m, scn.points, f)
        assert norm(reconstruct_3d_strain(cs, f, 1.0, 1.0, 0.05)) < 1e-14

    @pytest.mark.parametrize('x3', [-0.05, 0.0, 0.05])
    def test_symmetric(self, generic, x3):
        f = frame_at(generic.y0, generic.points)
        cs = constrained_strains(generic.y0, generic.m, generic.points, f)
        E = reconstruct_3d_strain(cs, f, 1.0, 1.0, x3)
        assert norm(E - T.tp(E)) < 1e-9

    def test_midsurface_value(self, generic):
        lam, mu = 2.0, 1.0
        f = frame_at(generic.y0, generic.points)
        cs = constrained_strains(generic.y0, generic.m, generic.points, f)
        nn = np.einsum('...i,...j->...ij', f.n0, f.n0)
        expected = cs.E_inf - lam/(lam + 2*mu)*np.trace(cs.E_inf, axis1=-2, axis2=-1)[..., None, None]*nn
        assert np.allclose(reconstruct_3d_strain(cs, f, lam, mu, 0.0), expected)


class TestThickness:

    def test_reference(self):
        scn = scenario('cylinder')
        p = thickness_ansatz(scn.y0, scn.m, scn.Q, 1.0, 1.0, scn.points)
        assert np.allclose(p.rho_m, 1.0)

    def test_plate_reference_bending_coefficient(self):
        scn = scenario('plate', 'polynomial', deformation_params={'coeffs': [[0, 0.1], [0, 0, 0.2], [0.0]]})
        p = thickness_ansatz(scn.y0, scn.m, scn.Q, 1.0, 1.0, scn.points)
        assert np.allclose(p.rho_b, 0.0)

    def test_biaxial_stretch(self):
        s, lam, mu = 0.1, 2.0, 1.0
        scn = scenario('plate', 'scale', deformation_params={'alpha': 1 + s})
        p = thickness_ansatz(scn.y0, scn.m, scn.Q, lam, mu, scn.points)
        assert np.allclose(p.rho_m, 1 - 2*s*lam/(lam + 2*mu))

    def test_ansatz_point(self):
        scn = scenario('plate')
        x = np.array([0.3, 0.4])
        assert np.allclose(ansatz_point(scn.y0, scn.m, scn.Q, 1.0, 1.0, x, 0.05), [0.3, 0.4, 0.05])

    def test_invalid_material(self):
        scn = scenario('plate')
        with pytest.raises(InvalidMaterial):
            thickness_ansatz(scn.y0, scn.m, scn.Q, -2.0, 1.0, scn.points)
