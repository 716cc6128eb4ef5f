import numpy as np
import pytest

from shellstrain.catalog import scenario
from shellstrain.energy import Quadrature, cosserat_energy
from shellstrain.errors import InvalidGrid, InvalidInput, NonConvergence
from shellstrain.material import MaterialParams
from shellstrain.minimize import NodalField, assemble, lobatto_nodes, minimize_displacement

P = MaterialParams()
PLATE = scenario('plate').y0
LOAD = [0.0, 0.0, 1.0]


@pytest.fixture(scope='module')
def plate_solution():
    return minimize_displacement(PLATE, LOAD, None, P, grid=(6, 6), variant='linear_constrained')


class TestNodalField:

    def test_nodes(self):
        t = lobatto_nodes(5, -1.0, 1.0)
        assert t[0] == -1.0 and t[-1] == 1.0 and np.allclose(t, -t[::-1])

    def test_polynomial_exact(self, rng):
        n1, n2 = lobatto_nodes(5, 0, 1), lobatto_nodes(4, 0, 2)
        f = lambda x1, x2: np.stack([x1**4*x2**3, x1*x2, 1 + 0*x1], -1)
        X1, X2 = np.meshgrid(n1, n2, indexing='ij')
        F = NodalField(n1, n2, f(X1, X2))
        x = rng.uniform([0, 0], [1, 2], size=(7, 2))
        assert np.allclose(F.value(x), f(x[:, 0], x[:, 1]))
        assert np.allclose(F.grad(x)[:, 0, :], np.stack([4*x[:, 0]**3*x[:, 1]**3, 3*x[:, 0]**4*x[:, 1]**2], -1))
        assert np.allclose(F.hess(x)[:, 0, 0, 1], 12*x[:, 0]**3*x[:, 1]**2)

    def test_interpolates_at_nodes(self, rng):
        n1 = n2 = lobatto_nodes(4, 0, 1)
        vals = rng.normal(size=(4, 4, 3))
        X1, X2 = np.meshgrid(n1, n2, indexing='ij')
        assert np.allclose(NodalField(n1, n2, vals).value(np.stack([X1, X2], -1)), vals)


class TestAssembly:

    def test_matches_energy_functional(self, rng):
        quad = Quadrature(4, (3, 3))
        prob = assemble(PLATE, None, None, P, (4, 4), 'linear', quad)
        u = 1e-2*rng.normal(size=len(prob.free_index))
        v, theta = prob.fields(u)
        ref = cosserat_energy(PLATE, v, theta, P, quad, variant='linear').total
        assert prob.energy(u) == pytest.approx(ref, rel=1e-10)

    def test_positive_definite(self):
        prob = assemble(PLATE, None, None, P, (4, 4), 'linear_constrained', Quadrature(4, (3, 3)))
        assert np.min(np.linalg.eigvalsh(prob.A)) > 0


class TestMinimize:

    def test_zero_data(self):
        v, rep = minimize_displacement(PLATE, None, None, P, grid=(4, 4), variant='linear_constrained')
        assert rep.iterations == 0 and rep.converged
        assert np.max(np.abs(v.values)) == 0.0

    @pytest.mark.parametrize('grid', [(3, 8), (8, 65), 'abc'])
    def test_invalid_grid(self, grid):
        with pytest.raises(InvalidGrid):
            minimize_displacement(PLATE, LOAD, None, P, grid=grid)

    def test_invalid_variant(self):
        with pytest.raises(InvalidInput):
            minimize_displacement(PLATE, LOAD, None, P, variant='unconstrained')

    def test_non_convergence(self):
        with pytest.raises(NonConvergence):
            minimize_displacement(PLATE, LOAD, None, P, grid=(5, 5), max_iter=1)

    def test_monotone_trace(self, plate_solution):
        _, rep = plate_solution
        assert rep.converged
        assert np.all(np.diff(rep.energy_trace) <= 1e-14*(1 + abs(rep.energy_trace[0])))
        assert rep.energy_trace[-1] < 0

    def test_symmetric_deflection(self, plate_solution):
        v, _ = plate_solution
        x = np.array([[0.3, 0.4], [0.7, 0.4], [0.3, 0.6], [0.7, 0.6], [0.4, 0.3]])
        w = v.value(x)[:, 2]
        assert np.all(w > 0)
        assert np.allclose(w[:4], w[0], rtol=1e-4) and w[4] == pytest.approx(w[0], rel=1e-4)

    def test_matches_direct_solve(self, plate_solution):
        v, rep = plate_solution
        prob = assemble(PLATE, LOAD, None, P, (6, 6), 'linear_constrained', Quadrature(4, (5, 5)))
        u = np.linalg.solve(prob.A, -prob.b)
        assert rep.energy_trace[-1] == pytest.approx(prob.energy(u), rel=1e-8)
        assert np.allclose(v.values, prob.fields(u)[0].values, atol=1e-6*np.max(np.abs(u)))

    def test_rigid_boundary_data(self):
        b = np.array([0.0, 0.0, 0.2])
        rigid = lambda x: np.concatenate([x, np.zeros(x.shape[:-1] + (1,))], -1) @ np.cross(np.eye(3), b)
        v, rep = minimize_displacement(PLATE, None, rigid, P, grid=(4, 4), variant='linear_constrained')
        assert abs(rep.energy_trace[-1]) < 1e-10
        x = np.array([[0.5, 0.5], [0.2, 0.8]])
        assert np.allclose(v.value(x), rigid(x), atol=1e-6)

    def test_report_dict(self, plate_solution):
        d = plate_solution[1].to_dict()
        assert {'iterations', 'grad_norm', 'energy_trace', 'converged', 'n_dofs', 'seconds'} == set(d)
