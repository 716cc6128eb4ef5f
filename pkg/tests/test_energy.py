import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shellstrain import tensor as T
from shellstrain.catalog import polynomial_field, scenario
from shellstrain.energy import (DENSITY_KINDS, EnergyBreakdown, Quadrature, cosserat_energy, density_eval,
                                koiter_energy)
from shellstrain.errors import InvalidInput, InvalidMaterial, QuadratureOrderInvalid
from shellstrain.material import MaterialParams

P = MaterialParams()
COARSE = Quadrature(4, (4, 4))

sym3 = st.lists(st.floats(-2, 2), min_size=9, max_size=9).map(lambda a: np.reshape(a, (3, 3)))


class TestMaterial:

    @pytest.mark.parametrize('bad', [{'mu': 0}, {'lam': -3}, {'mu_c': -1}, {'h': 0}, {'b2': 0},
                                     {'L_c': float('nan')}])
    def test_invalid(self, bad):
        with pytest.raises(InvalidMaterial):
            MaterialParams(**bad)

    def test_dict_roundtrip(self):
        p = MaterialParams(lam=2.5, h=0.05)
        assert MaterialParams.from_dict(p.to_dict()) == p
        assert p.to_dict()['lambda'] == 2.5

    def test_unknown_key(self):
        with pytest.raises(InvalidMaterial):
            MaterialParams.from_dict({'nu': 0.3})

    def test_coefficients(self):
        assert P.kappa == pytest.approx(1/3) and P.c_lam == pytest.approx(1/3)


class TestDensities:

    def test_identity_values(self):
        assert density_eval('Wshell', np.eye(3), p=P) == pytest.approx(6.0)
        assert density_eval('Wmp', np.eye(3), p=P) == pytest.approx(7.5)
        assert density_eval('Wcurv', np.eye(3), p=P) == pytest.approx(9.0)

    def test_skew_values(self):
        A = T.anti([0, 0, 1.0])
        assert density_eval('Wcurv', A, p=P) == pytest.approx(2.0)
        assert density_eval('Wshell', A, p=P) == pytest.approx(2.0)
        assert density_eval('WshellInf', A, p=P) == 0.0
        assert density_eval('WmpInf', A, p=P) == 0.0

    @given(X=sym3, Y=sym3)
    def test_polarization(self, X, Y):
        for q, b in (('Wshell', 'WshellBilinear'), ('WshellInf', 'WshellInfBilinear')):
            lhs = density_eval(b, X, Y, p=P)
            rhs = 0.25*(density_eval(q, X + Y, p=P) - density_eval(q, X - Y, p=P))
            assert lhs == pytest.approx(rhs, abs=1e-10)

    @given(X=sym3)
    def test_positive(self, X):
        for kind in ('Wshell', 'Wmp', 'Wcurv', 'WshellInf', 'WmpInf'):
            assert density_eval(kind, X, p=P) >= -1e-12

    def test_batched(self, rng):
        X = rng.normal(size=(4, 5, 3, 3))
        out = density_eval('Wshell', X, p=P)
        assert out.shape == (4, 5)
        assert out[2, 3] == pytest.approx(density_eval('Wshell', X[2, 3], p=P))

    @pytest.mark.parametrize('kind,args', [('nope', 1), ('WshellBilinear', 1), ('Wshell', 2)])
    def test_bad_calls(self, kind, args):
        with pytest.raises(InvalidInput):
            density_eval(kind, *([np.eye(3)]*args), p=P)

    def test_needs_material(self):
        with pytest.raises(InvalidMaterial):
            density_eval('Wshell', np.eye(3), p={'mu': 1})

    def test_kinds(self):
        assert len(DENSITY_KINDS) == 7


class TestQuadrature:

    @pytest.mark.parametrize('order,cells', [(1, (2, 2)), (2.5, (2, 2)), (3, (0, 2)), (3, (2,))])
    def test_invalid(self, order, cells):
        with pytest.raises(QuadratureOrderInvalid):
            Quadrature(order, cells)

    def test_integrates_polynomials(self):
        x, w = Quadrature(3, (2, 3)).rule(((0.0, 2.0), (-1.0, 1.0)))
        assert np.sum(w) == pytest.approx(4.0)
        assert np.sum(w*x[:, 0]**5*x[:, 1]**4) == pytest.approx(64/6*2/5)


class TestCosseratEnergy:

    @pytest.mark.parametrize('surface', ['plate', 'cylinder', 'sphere', 'torus'])
    def test_reference_zero(self, surface):
        scn = scenario(surface)
        e = cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE)
        assert abs(e.total) < 1e-14

    def test_plate_scaling(self):
        scn = scenario('plate', 'scale', deformation_params={'alpha': 2.0})
        e = cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE)
        assert e.membrane == pytest.approx(P.h*10/3)
        assert e.total == pytest.approx(e.membrane)

    def test_frame_invariance(self):
        scn = scenario('cylinder', 'radial_expansion', 'constant')
        R = T.rotation_from_vector([0.2, -0.5, 0.7])
        e = cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE)
        er = cosserat_energy(scn.y0, scn.m.affine(R, [1.0, 2.0, 3.0]), scn.Q.left(R), P, COARSE)
        assert er.total == pytest.approx(e.total, rel=1e-10)

    def test_drilling_plate(self):
        scn = scenario('plate', 'identity', 'drill')
        e = cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE)
        assert e.membrane > 0 and e.curv_h1 > 0
        assert e.total == pytest.approx(sum(getattr(e, k) for k in EnergyBreakdown.TERMS))

    def test_breakdown_dict(self):
        scn = scenario('sphere', 'scale')
        d = cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE).to_dict()
        assert set(d) == set(EnergyBreakdown.TERMS) | {'total'}

    def test_quadrature_convergence(self):
        scn = scenario('torus', 'radial_expansion', 'constant')
        ref = cosserat_energy(scn.y0, scn.m, scn.Q, P, Quadrature(8, (4, 4))).total
        assert cosserat_energy(scn.y0, scn.m, scn.Q, P, Quadrature(6, (4, 4))).total == pytest.approx(ref, rel=1e-8)

    def test_constrained_variant(self):
        scn = scenario('cylinder', 'radial_expansion')
        e = cosserat_energy(scn.y0, scn.m, None, P, COARSE, variant='modified_constrained')
        assert e.total > 0

    def test_linear_rigid(self):
        b = [0.4, 0.1, -0.2]
        scn = scenario('sphere', 'rigid_infinitesimal', deformation_params={'a': [0.1, 0, 0.3], 'b': b})
        for variant in ('linear', 'linear_constrained'):
            theta = polynomial_field([[b[0]], [b[1]], [b[2]]]) if variant == 'linear' else None
            e = cosserat_energy(scn.y0, scn.v, theta, P, COARSE, variant=variant)
            assert abs(e.total) < 1e-12

    def test_unknown_variant(self):
        scn = scenario('plate')
        with pytest.raises(InvalidInput):
            cosserat_energy(scn.y0, scn.m, scn.Q, P, COARSE, variant='quadratic')


class TestKoiterEnergy:

    def test_plate_scaling(self):
        scn = scenario('plate', 'scale', deformation_params={'alpha': 2.0})
        assert koiter_energy(scn.y0, scn.m, P, COARSE) == pytest.approx(0.75)

    def test_rigid_zero(self):
        scn = scenario('sphere', 'rigid')
        assert abs(koiter_energy(scn.y0, scn.m, P, COARSE)) < 1e-20

    def test_linear_cylinder_radial(self):
        # G = diag(1, 0), R = diag(-1, 0) with unit radius on the default cylinder domain
        scn = scenario('cylinder', 'radial_expansion', deformation_params={'eps': 1.0})
        area = np.prod(np.diff(scn.y0.domain, axis=1))
        expected = area*(P.h + P.h**3/12)*(P.mu + P.kappa)
        assert koiter_energy(scn.y0, scn.v, P, COARSE, linear=True) == pytest.approx(expected)
