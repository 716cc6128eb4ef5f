"""
Desk-scale minimization of the linear Cosserat shell energies.

The displacement (and, for the unconstrained linear model, the
infinitesimal microrotation) is a tensor-product polynomial interpolating
nodal values on a Chebyshev-Lobatto grid.  Boundary displacement nodes are
prescribed.  Because the strains are linear in the nodal values, the
discrete energy is assembled once as a quadratic form; the minimizer then
only sees an energy function and works with central finite differences of
it: Polak-Ribiere conjugate gradients, diagonally preconditioned with the
finite-difference curvature, and an Armijo backtracking line search started
from the parabolic step.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .energy import Quadrature, term_densities, linear_strains
from .errors import InvalidGrid, InvalidInput, NonConvergence
from .fields import VectorField
from .geometry import frame_at

ARMIJO_C1 = 1e-4


# ---------------------------------------------------------------------------
# tensor-product Lagrange interpolation on Chebyshev-Lobatto nodes
# ---------------------------------------------------------------------------

def lobatto_nodes(n, a, b):
    t = -np.cos(np.pi*np.arange(n)/(n - 1))
    return 0.5*(a + b) + 0.5*(b - a)*t


def _bary_weights(n):
    w = (-1.0)**np.arange(n)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _diff_matrix(nodes):
    w = _bary_weights(len(nodes))
    dx = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(dx, 1.0)
    D = (w[None, :]/w[:, None])/dx
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def _interp_matrix(nodes, t):
    """Barycentric Lagrange interpolation matrix, shape (len(t), len(nodes))."""
    w = _bary_weights(len(nodes))
    t = np.asarray(t, dtype=float)
    diff = t[:, None] - nodes[None, :]
    exact = diff == 0.0
    diff[exact] = 1.0
    M = w/diff
    M /= M.sum(axis=1, keepdims=True)
    rows = exact.any(axis=1)
    M[rows] = exact[rows].astype(float)
    return M


class NodalField(VectorField):
    """
    Polynomial vector field from nodal values on a tensor Lobatto grid.

    ``values`` has shape (..., n1, n2, 3); leading axes form a batch of
    fields that is broadcast in front of the point axes.
    """

    def __init__(self, nodes1, nodes2, values):
        super().__init__(self._value, self._grad, self._hess)
        self.nodes = (np.asarray(nodes1, dtype=float), np.asarray(nodes2, dtype=float))
        self.values = np.asarray(values, dtype=float)
        self._D = (_diff_matrix(self.nodes[0]), _diff_matrix(self.nodes[1]))

    def _mats(self, x, d1, d2):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, 2)
        M1 = _interp_matrix(self.nodes[0], flat[:, 0]) @ np.linalg.matrix_power(self._D[0], d1)
        M2 = _interp_matrix(self.nodes[1], flat[:, 1]) @ np.linalg.matrix_power(self._D[1], d2)
        return M1, M2, x.shape[:-1]

    def _eval(self, x, d1, d2):
        M1, M2, shape = self._mats(x, d1, d2)
        # contract the second node index first, then the first one pointwise
        tmp = np.moveaxis(self.values, -2, -1) @ M2.T
        out = np.einsum('pi,...icp->...pc', M1, tmp, optimize=True)
        return out.reshape(out.shape[:-2] + shape + (3,))

    def _value(self, x):
        return self._eval(x, 0, 0)

    def _grad(self, x):
        return np.stack([self._eval(x, 1, 0), self._eval(x, 0, 1)], axis=-1)

    def _hess(self, x):
        h11, h12, h22 = self._eval(x, 2, 0), self._eval(x, 1, 1), self._eval(x, 0, 2)
        return np.stack([np.stack([h11, h12], -1), np.stack([h12, h22], -1)], -1)


# ---------------------------------------------------------------------------
# discrete problem
# ---------------------------------------------------------------------------

def _as_field(f, name):
    """Accept None, a constant 3-vector, a callable or a VectorField."""
    if f is None:
        return lambda x: np.zeros(np.shape(x)[:-1] + (3,))
    if isinstance(f, VectorField):
        return f.value
    if callable(f):
        return lambda x: np.broadcast_to(np.asarray(f(x), dtype=float), np.shape(x)[:-1] + (3,))
    c = np.asarray(f, dtype=float)
    if c.shape != (3,) or not np.all(np.isfinite(c)):
        raise InvalidInput(f'{name} must be a 3-vector, a callable or a VectorField')
    return lambda x: np.broadcast_to(c, np.shape(x)[:-1] + (3,)).copy()


@dataclass
class DiscreteProblem:
    """Quadratic energy ``J(u) = u^T A u / 2 + b^T u + c`` in the free nodal values."""

    A: np.ndarray
    b: np.ndarray
    c: float
    nodes: tuple
    fixed: np.ndarray
    free_index: np.ndarray
    n_theta: int

    def energy(self, u):
        u = np.asarray(u, dtype=float)
        return 0.5*np.sum((u @ self.A)*u, axis=-1) + u @ self.b + self.c

    def fields(self, u):
        n1, n2 = len(self.nodes[0]), len(self.nodes[1])
        full = self.fixed.copy()
        full[self.free_index] = u
        nv = n1*n2*3
        v = NodalField(*self.nodes, full[:nv].reshape(n1, n2, 3))
        theta = NodalField(*self.nodes, full[nv:].reshape(n1, n2, 3)) if self.n_theta else None
        return v, theta


def assemble(y0, load, bc, p, grid, variant, quadrature):
    """Build the quadratic discrete energy for ``minimize_displacement``."""
    n1, n2 = grid
    dom = y0.domain
    nodes = (lobatto_nodes(n1, *dom[0]), lobatto_nodes(n2, *dom[1]))
    P1, P2 = np.meshgrid(*nodes, indexing='ij')
    nodal_x = np.stack([P1, P2], axis=-1)
    boundary = np.zeros((n1, n2), dtype=bool)
    boundary[[0, -1], :] = True
    boundary[:, [0, -1]] = True

    nv = n1*n2*3
    n_theta = nv if variant == 'linear' else 0
    fixed = np.zeros(nv + n_theta)
    bc_vals = _as_field(bc, 'bc')(nodal_x)
    fixed[:nv] = np.where(boundary[..., None], bc_vals, 0.0).ravel()
    free_v = np.flatnonzero(np.repeat(~boundary.ravel(), 3))
    free_index = np.concatenate([free_v, nv + np.arange(n_theta)])
    N = len(free_index)

    # one batch: the boundary-data field followed by unit free-DOF fields
    batch = np.zeros((N + 1, nv + n_theta))
    batch[:] = fixed
    batch[np.arange(1, N + 1), free_index] += 1.0
    batch[1:] -= fixed
    vfield = NodalField(*nodes, batch[:, :nv].reshape(N + 1, n1, n2, 3))
    tfield = NodalField(*nodes, batch[:, nv:].reshape(N + 1, n1, n2, 3)) if n_theta else None

    x, w = quadrature.rule(dom)
    f0 = frame_at(y0, x)
    E, K = linear_strains(y0, vfield, tfield, x, variant, f0)
    S = np.concatenate([E.reshape(N + 1, len(x), 9), K.reshape(N + 1, len(x), 9)], axis=-1)

    # pointwise quadratic form of the energy density in the 18 strain components
    eye = np.eye(18)
    pairs = np.concatenate([eye, (eye[:, None] + eye[None, :]).reshape(-1, 18)])

    def dens(s):
        d, _ = term_densities(s[..., :9].reshape(s.shape[:-1] + (3, 3)),
                             s[..., 9:].reshape(s.shape[:-1] + (3, 3)), f0, p,
                             symmetric_only=variant == 'linear_constrained')
        return sum(d[k] for k in ('membrane', 'membrane_bending', 'coupling_H', 'coupling_B',
                                  'mp_term', 'curv_h1', 'curv_h3', 'curv_h5'))
    vals = dens(np.broadcast_to(pairs[:, None, :], (len(pairs), len(x), 18)))
    diag = vals[:18]
    M = 0.5*(vals[18:].reshape(18, 18, -1) - diag[:, None] - diag[None, :])
    M[np.arange(18), np.arange(18)] = diag
    WM = np.moveaxis(M, -1, 0)*w[:, None, None]

    S0, S1 = S[0], S[1:]
    WS = np.einsum('qab,iqb->iqa', WM, S1, optimize=True)
    A = 2.0*np.tensordot(WS, S1, axes=([1, 2], [1, 2]))
    A = 0.5*(A + A.T)
    b = 2.0*np.einsum('iqa,qa->i', WS, S0)
    c = float(np.einsum('qa,qab,qb->', S0, WM, S0))

    # external work of the load on the displacement
    loadv = _as_field(load, 'load')(x)
    dA = w*f0.det_grad_theta
    V1 = vfield.value(x)
    b = b - np.einsum('iqc,qc,q->i', V1[1:], loadv, dA)
    c = c - float(np.einsum('qc,qc,q->', V1[0], loadv, dA))
    return DiscreteProblem(A, b, c, nodes, fixed, free_index, n_theta)


# ---------------------------------------------------------------------------
# conjugate gradients with finite differences
# ---------------------------------------------------------------------------

@dataclass
class MinimizeReport:
    iterations: int
    grad_norm: float
    energy_trace: list = field(default_factory=list)
    converged: bool = False
    n_dofs: int = 0
    seconds: float = 0.0
    theta: object = None

    def to_dict(self):
        return {'iterations': self.iterations, 'grad_norm': self.grad_norm,
                'energy_trace': list(map(float, self.energy_trace)), 'converged': self.converged,
                'n_dofs': self.n_dofs, 'seconds': self.seconds}


def fd_gradient(J, u, step):
    """Central-difference gradient and diagonal curvature of ``J`` at ``u`` (one batched call)."""
    n = len(u)
    h = step*(1.0 + np.linalg.norm(u))
    P = np.concatenate([u + h*np.eye(n), u - h*np.eye(n), u[None]])
    vals = J(P)
    jp, jm, j0 = vals[:n], vals[n:2*n], vals[-1]
    return (jp - jm)/(2.0*h), (jp - 2.0*j0 + jm)/(h*h), j0


def conjugate_gradient(J, u0, tol, max_iter=5000, step=1e-6):
    """
    Preconditioned Polak-Ribiere CG using only energy evaluations.

    Returns ``(u, iterations, grad_norm, trace, converged)``.
    """
    u = np.asarray(u0, dtype=float).copy()
    g, curv, Ju = fd_gradient(J, u, step)
    Pinv = 1.0/np.where(curv > 0.0, curv, 1.0)
    trace = [float(Ju)]
    z = Pinv*g
    d = -z
    gz = g @ z
    it = 0
    while np.linalg.norm(g) > tol and it < max_iter:
        slope = g @ d
        if slope >= 0.0:
            d = -z
            slope = -gz
        # parabolic step from a central second difference along d
        s = step*(1.0 + np.linalg.norm(u))/max(np.linalg.norm(d), 1e-300)
        jp, jm = J(np.stack([u + s*d, u - s*d]))
        c2 = (jp - 2.0*Ju + jm)/(s*s)
        t = -slope/c2 if c2 > 0.0 else 1.0
        for _ in range(60):
            Jt = float(J(u + t*d))
            if Jt <= Ju + ARMIJO_C1*t*slope:
                break
            t *= 0.5
        else:
            break
        u = u + t*d
        Ju = min(Jt, Ju)
        trace.append(Ju)
        g_new, _, _ = fd_gradient(J, u, step)
        z_new = Pinv*g_new
        gz_new = g_new @ z_new
        beta = max(0.0, (gz_new - z_new @ g)/gz) if gz > 0.0 else 0.0
        d = -z_new + beta*d
        g, z, gz = g_new, z_new, gz_new
        it += 1
    gn = float(np.linalg.norm(g))
    return u, it, gn, trace, gn <= tol


def minimize_displacement(y0, load, bc, p, grid=(8, 8), variant='linear', quadrature=None,
                          max_iter=5000, tol=None, fd_step=1e-6):
    """
    Minimize the linear Cosserat shell energy minus the work of a surface load.

    Parameters
    ----------
    y0 : SurfacePatch
        Reference midsurface.
    load : VectorField, callable, 3-vector or None
        Force per unit area.
    bc : VectorField, callable, 3-vector or None
        Prescribed displacement on the whole boundary (zero if None).
    p : MaterialParams
    grid : tuple of int
        Nodes per direction, at least 4x4.
    variant : {'linear', 'linear_constrained'}
    quadrature : Quadrature, optional
        Defaults to order 4 on ``grid - 1`` cells per direction.
    max_iter : int
    tol : float, optional
        Gradient-norm tolerance, default ``1e-6 (1 + |E_0|)``.

    Returns
    -------
    field : NodalField
        Displacement.
    report : MinimizeReport
        ``report.theta`` holds the microrotation field for ``variant='linear'``.

    Raises
    ------
    InvalidGrid
        For grids smaller than 4x4.
    NonConvergence
        If the gradient norm is above ``tol`` after ``max_iter`` iterations.

    """
    try:
        n1, n2 = (int(g) for g in grid)
    except (TypeError, ValueError) as exc:
        raise InvalidGrid('grid must be a pair of integers') from exc
    if n1 < 4 or n2 < 4 or n1 > 64 or n2 > 64:
        raise InvalidGrid('grid must be at least 4x4 (and at most 64x64)')
    if variant not in ('linear', 'linear_constrained'):
        raise InvalidInput(f'unknown minimization variant {variant!r}')
    quadrature = quadrature or Quadrature(4, (n1 - 1, n2 - 1))
    t0 = time.perf_counter()
    prob = assemble(y0, load, bc, p, (n1, n2), variant, quadrature)
    u0 = np.zeros(len(prob.free_index))
    if tol is None:
        tol = 1e-6*(1.0 + abs(prob.energy(u0)))
    u, it, gn, trace, ok = conjugate_gradient(prob.energy, u0, tol, max_iter, fd_step)
    if not ok:
        raise NonConvergence(f'gradient norm {gn:.3e} above tolerance {tol:.3e} after {it} iterations')
    v, theta = prob.fields(u)
    report = MinimizeReport(it, gn, trace, ok, len(u), time.perf_counter() - t0, theta)
    return v, report
