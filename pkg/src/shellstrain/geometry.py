"""
Pointwise differential geometry of parametrized surfaces.

The second fundamental form uses the convention ``II = -(grad y)^T grad n``
which, for a unit cylinder ``(cos x1, sin x1, x2)`` with its right-handed
(outward) normal, gives ``II = diag(-1, 0)`` and mean curvature ``H = -1/2``.

Every function accepts batches of parameter points of shape (...,2).
"""

from dataclasses import dataclass

import numpy as np

from . import tensor as T
from .errors import Degenerate
from .fields import SurfacePatch

REG_MIN = 1e-6
DET_I_MIN = 1e-12

ALTERNATOR_SEED = np.array([[0.0, 1.0, 0.0],
                            [-1.0, 0.0, 0.0],
                            [0.0, 0.0, 0.0]])


@dataclass(frozen=True)
class SurfaceFrame:
    """
    All pointwise geometry of a surface at a batch of parameter points.

    Shapes use ``...`` for the batch: ``grad_y`` (...,3,2), ``n0`` (...,3),
    ``grad_n`` (...,3,2), ``hess_y`` (...,3,2,2), the 3x3 tensors (...,3,3),
    the fundamental forms and ``L`` (...,2,2), ``H`` and ``K`` (...), and
    ``gamma[..., g, a, b]`` the Christoffel symbol with upper index ``g``.
    ``a_co`` and ``a_contra`` hold the (co/contra)variant basis vectors as columns.
    """

    grad_y: np.ndarray
    hess_y: np.ndarray
    n0: np.ndarray
    grad_n: np.ndarray
    grad_theta: np.ndarray
    grad_theta_inv: np.ndarray
    det_grad_theta: np.ndarray
    a_co: np.ndarray
    a_contra: np.ndarray
    I: np.ndarray
    I_inv: np.ndarray
    II: np.ndarray
    III: np.ndarray
    L: np.ndarray
    H: np.ndarray
    K: np.ndarray
    gamma: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray


def _second_fundamental_form(grad_y, grad_n):
    return -T.tp(grad_y) @ grad_n


def _weingarten(I, II):
    return np.linalg.solve(I, II)


def _normal_and_gradient(g, hess):
    a1, a2 = g[..., 0], g[..., 1]
    c = np.cross(a1, a2)
    cn = np.linalg.norm(c, axis=-1)
    if np.any(cn < REG_MIN):
        raise Degenerate('parametrization is not regular (|d1 y x d2 y| below threshold)')
    n = c/cn[..., None]
    cols = []
    for a in range(2):
        dc = np.cross(hess[..., 0, a], a2) + np.cross(a1, hess[..., 1, a])
        dc = dc - n*np.sum(n*dc, axis=-1, keepdims=True)
        cols.append(dc/cn[..., None])
    return n, np.stack(cols, axis=-1)


def _check_point(surface, x):
    x = np.asarray(x, dtype=float)
    if isinstance(surface, SurfacePatch):
        surface.check_inside(x)
    return x


def normal_of_map(m, x):
    """Unit normal ``d1 m x d2 m / |d1 m x d2 m|`` at ``x``."""
    x = _check_point(m, x)
    g = m.grad(x)
    c = np.cross(g[..., 0], g[..., 1])
    cn = np.linalg.norm(c, axis=-1)
    if np.any(cn < REG_MIN):
        raise Degenerate('map is not regular at the requested point')
    return c/cn[..., None]


def frame_at(surface, x):
    """
    Evaluate the full geometric frame of ``surface`` at parameter points ``x``.

    Parameters
    ----------
    surface : SurfacePatch
        Midsurface (reference or deformed).
    x : array_like, shape (...,2)
        Parameter points inside the domain.

    Returns
    -------
    SurfaceFrame

    Raises
    ------
    Degenerate
        If the parametrization is not regular at ``x``.
    OutOfDomain
        If ``x`` lies outside the domain or its finite-difference margin.

    """
    x = _check_point(surface, x)
    g = surface.grad(x)
    hess = surface.hess(x)
    I = T.tp(g) @ g
    detI = np.linalg.det(I)
    if np.any(detI < DET_I_MIN):
        raise Degenerate('first fundamental form is (nearly) singular')
    n, gn = _normal_and_gradient(g, hess)
    I_inv = np.linalg.inv(I)
    II = _second_fundamental_form(g, gn)
    L = _weingarten(I, II)
    III = II @ I_inv @ II

    Theta = np.concatenate([g, n[..., None]], axis=-1)
    Theta_inv = np.linalg.inv(Theta)
    det_theta = np.linalg.det(Theta)
    zero = np.zeros(g.shape[:-1] + (1,))
    A = np.concatenate([g, zero], axis=-1) @ Theta_inv
    B = -np.concatenate([gn, zero], axis=-1) @ Theta_inv
    C = det_theta[..., None, None]*T.tp(Theta_inv) @ ALTERNATOR_SEED @ Theta_inv
    # rows of the inverse frame are the contravariant vectors a^i
    gamma = np.einsum('...gi,...iab->...gab', Theta_inv[..., :2, :], hess)

    return SurfaceFrame(grad_y=g, hess_y=hess, n0=n, grad_n=gn, grad_theta=Theta,
                        grad_theta_inv=Theta_inv, det_grad_theta=det_theta, a_co=Theta,
                        a_contra=T.tp(Theta_inv), I=I, I_inv=I_inv, II=II, III=III, L=L,
                        H=0.5*np.trace(L, axis1=-2, axis2=-1), K=np.linalg.det(L),
                        gamma=gamma, A=A, B=B, C=C)


def christoffels(surface, x):
    """Christoffel symbols ``gamma[..., g, a, b] = <a^g, d_a a_b>``."""
    return frame_at(surface, x).gamma


def weingarten_gradient(surface, x, frame=None):
    """
    Parameter derivatives of the Weingarten map.

    Returns ``dL[..., r, a, c] = d L_ra / d x_c``.  Needs third derivatives
    of the parametrization (analytic or finite-difference).
    """
    f = frame_at(surface, x) if frame is None else frame
    d3 = surface.third(np.asarray(x, dtype=float))
    hess = f.hess_y
    # dI[b, g, c] = <d_c a_b, a_g> + <a_b, d_c a_g>
    t = np.einsum('...ibc,...ig->...bgc', hess, f.grad_y)
    dI = t + np.swapaxes(t, -3, -2)
    # dII[b, g, c] = <d_c n, d_bg y> + <n, d_bgc y>
    dII = (np.einsum('...ic,...ibg->...bgc', f.grad_n, hess)
           + np.einsum('...i,...ibgc->...bgc', f.n0, d3))
    dL = np.einsum('...rb,...bgc->...rgc', f.I_inv,
                   dII - np.einsum('...bdc,...dg->...bgc', dI, f.L))
    return dL
