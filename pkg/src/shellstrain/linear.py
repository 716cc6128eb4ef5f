"""
Linearized strain measures and first variations of surface invariants.

The reference midsurface is ``y0``; ``v`` is an infinitesimal displacement
and ``theta`` an infinitesimal microrotation vector field, both
:class:`~shellstrain.fields.VectorField`.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tensor as T
from .errors import Degenerate, InvalidInput
from .geometry import frame_at, weingarten_gradient

ETA = (1e-4, 5e-5)
DET_MIN = 1e-12
ROT90 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _flat(M):
    return T.lift(M, 'flat')


def _pad(cols):
    return np.concatenate([cols, np.zeros(cols.shape[:-1] + (1,))], axis=-1)


def _dot(a, b):
    return np.sum(a*b, axis=-1)


# ---------------------------------------------------------------------------
# Koiter
# ---------------------------------------------------------------------------

def _koiter_direct(f0, gv, hv):
    G = T.sym(T.tp(f0.grad_y) @ gv)
    # d_ab v - Gamma^g_ab d_g v, projected on n0
    cov = hv - np.einsum('...gab,...ig->...iab', f0.gamma, gv)
    R = np.einsum('...i,...iab->...ab', f0.n0, cov)
    return G, R


def _koiter_christoffel(y0, f0, x, vv, gv, hv):
    """Covariant-component form with surface Christoffel symbols and curvature components."""
    g, n0, Gam, L, II = f0.grad_y, f0.n0, f0.gamma, f0.L, f0.II
    hy = f0.hess_y
    # covariant components v_a = <v, a_a>, v3 = <v, n0> and their derivatives
    va = np.einsum('...i,...ia->...a', vv, g)
    dva = (np.einsum('...ib,...ia->...ab', gv, g)
           + np.einsum('...i,...iab->...ab', vv, hy))          # dva[a, b] = d_b v_a
    v3 = _dot(vv, n0)
    dv3 = np.einsum('...ib,...i->...b', gv, n0) + np.einsum('...i,...ib->...b', vv, f0.grad_n)
    # second derivatives of n0 from the Weingarten equations d_b n0 = -L[r, b] a_r
    dL = weingarten_gradient(y0, x, f0)                       # dL[r, b, a] = d_a L_rb
    ddn = -(np.einsum('...rba,...ir->...iba', dL, g) + np.einsum('...rb,...ira->...iba', L, hy))
    ddv3 = (np.einsum('...i,...iab->...ab', n0, hv)
            + np.einsum('...ia,...ib->...ab', gv, f0.grad_n)
            + np.einsum('...ib,...ia->...ab', gv, f0.grad_n)
            + np.einsum('...i,...iab->...ab', vv, ddn))

    # v_a|b = d_b v_a - Gamma^s_ab v_s
    vab = dva - np.einsum('...sab,...s->...ab', Gam, va)
    G = 0.5*(vab + T.tp(vab)) - II*v3[..., None, None]

    v3ab = ddv3 - np.einsum('...sab,...s->...ab', Gam, dv3)
    # b^t_b|a = d_a b^t_b + Gamma^t_as b^s_b - Gamma^s_ab b^t_s, stored as cb[t, b, a]
    cb = (dL + np.einsum('...tas,...sb->...tba', Gam, L)
          - np.einsum('...sab,...ts->...tba', Gam, L))
    R = (v3ab
         - np.einsum('...sa,...sb->...ab', L, II)*v3[..., None, None]
         + np.einsum('...sa,...sb->...ab', L, vab)
         + np.einsum('...tb,...ta->...ab', L, vab)
         + np.einsum('...tba,...t->...ab', cb, va))
    return G, R


def koiter_linear(y0, v, x, form='direct', f0=None):
    """
    Linearized change of metric ``G_K`` and change of curvature ``R_K``.

    Parameters
    ----------
    y0 : SurfacePatch
    v : VectorField
        Displacement.
    x : array_like, shape (...,2)
    form : {'direct', 'christoffel'}
        ``direct`` projects ``d_ab v - Gamma^g_ab d_g v`` on the normal;
        ``christoffel`` works with covariant components of ``v`` and
        covariant derivatives of the curvature tensor.

    Returns
    -------
    G_K, R_K : numpy.ndarray, shape (...,2,2)

    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    gv, hv = v.grad(x), v.hess(x)
    if form == 'direct':
        return _koiter_direct(f0, gv, hv)
    if form == 'christoffel':
        return _koiter_christoffel(y0, f0, x, v.value(x), gv, hv)
    raise InvalidInput(f'unknown form {form!r}')


# ---------------------------------------------------------------------------
# linear Cosserat
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearStrainSet:
    """
    Linearized strain fields; entries not defined by a model are ``None``.
    """

    G_K: np.ndarray
    R_K: np.ndarray
    G_lin: np.ndarray = None
    G_lin_alt: np.ndarray = None
    T_lin: np.ndarray = None
    R_lin: np.ndarray = None
    N_lin: np.ndarray = None
    K_lin: np.ndarray = None
    theta_inf: np.ndarray = None
    R_inf_lin: np.ndarray = None
    R_KSB: np.ndarray = None
    R_AL: np.ndarray = None
    E_inf_lin: np.ndarray = None
    CK_inf_lin: np.ndarray = None
    sym_EB_CK_lin: np.ndarray = None


def _cross_cols(q, M):
    return np.stack([np.cross(q, M[..., 0]), np.cross(q, M[..., 1])], axis=-1)


def cosserat_linear(y0, v, theta, x, f0=None):
    """
    Linearized unconstrained Cosserat strains.

    ``G_lin_alt`` is the equivalent form
    ``grad y0^T grad v + <theta, n0> sqrt(det I) [[0, 1], [-1, 0]]``.
    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    g, n0 = f0.grad_y, f0.n0
    gv = v.grad(x)
    th, gth = theta.value(x), theta.grad(x)
    G_K, R_K = _koiter_direct(f0, gv, v.hess(x))
    G_lin = T.tp(g) @ gv + T.tp(_cross_cols(th, g)) @ g
    G_alt = T.tp(g) @ gv + (_dot(th, n0)*np.sqrt(np.linalg.det(f0.I)))[..., None, None]*ROT90
    T_lin = np.einsum('...i,...ia->...a', n0, gv) + np.einsum('...i,...ia->...a', np.cross(th, n0), g)
    n_x_g = _cross_cols(n0, g)
    R_lin = -T.tp(n_x_g) @ gth
    N_lin = np.einsum('...i,...ia->...a', n0, gth)
    K_lin = _pad(gth) @ f0.grad_theta_inv
    return LinearStrainSet(G_K, R_K, G_lin=G_lin, G_lin_alt=G_alt, T_lin=T_lin, R_lin=R_lin,
                           N_lin=N_lin, K_lin=K_lin)


# ---------------------------------------------------------------------------
# linear constrained Cosserat
# ---------------------------------------------------------------------------

def theta_inf(y0, v, x, f0=None):
    """
    Infinitesimal microrotation slaved to the displacement.

    Normal part ``-tr(skew(grad y0^T grad v) C^{-1})/2`` with
    ``C = sqrt(det I) [[0, 1], [-1, 0]]``; tangential part ``n0 x dn`` with the
    normal variation ``dn = -sum_a <n0, d_a v> a^a``.
    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    gv = v.grad(x)
    sdet = np.sqrt(np.linalg.det(f0.I))
    if np.any(sdet < DET_MIN):
        raise Degenerate('sqrt(det I) below threshold')
    Cinv = -ROT90/sdet[..., None, None]
    normal = -0.5*T.trace(T.skew(T.tp(f0.grad_y) @ gv) @ Cinv)
    dn = -np.einsum('...a,...ia->...i', np.einsum('...i,...ia->...a', f0.n0, gv), f0.a_contra[..., :2])
    return normal[..., None]*f0.n0 + np.cross(f0.n0, dn)


def _fd_grad(fun, x, h=1e-4):
    """Richardson-extrapolated central differences of a point function, stacked last."""
    def once(s):
        cols = []
        for a in range(2):
            e = np.zeros(2)
            e[a] = s*h
            cols.append((fun(x + e) - fun(x - e))/(2*s*h))
        return np.stack(cols, axis=-1)
    return (4.0*once(0.5) - once(1.0))/3.0


def constrained_linear(y0, v, x, f0=None):
    """
    Linearized constrained Cosserat strains.

    Returns a :class:`LinearStrainSet` with ``theta_inf``, ``R_inf_lin``,
    ``R_KSB``, ``R_AL`` and the lifted triplet ``E_inf_lin``, ``CK_inf_lin``,
    ``sym_EB_CK_lin``; ``K_lin`` holds ``(grad theta_inf | 0)[grad Theta]^{-1}``
    with the gradient taken by Richardson-extrapolated differences.
    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    G_K, R_K = _koiter_direct(f0, v.grad(x), v.hess(x))
    GL = G_K @ f0.L
    R_inf = R_K - GL
    R_KSB = R_K - T.sym(GL)
    R_AL = R_K - 2.0*T.sym(GL)
    Ti = f0.grad_theta_inv
    E = T.tp(Ti) @ _flat(G_K) @ Ti
    CK = -T.tp(Ti) @ _flat(R_inf) @ Ti
    SEB = -T.tp(Ti) @ _flat(R_AL) @ Ti
    th = theta_inf(y0, v, x, f0)
    gth = _fd_grad(lambda p: theta_inf(y0, v, p), x)
    K = _pad(gth) @ Ti
    return LinearStrainSet(G_K, R_K, K_lin=K, theta_inf=th, R_inf_lin=R_inf, R_KSB=R_KSB, R_AL=R_AL,
                           E_inf_lin=E, CK_inf_lin=CK, sym_EB_CK_lin=SEB)


# ---------------------------------------------------------------------------
# variations of surface invariants
# ---------------------------------------------------------------------------

_KEYS = ('dI', 'dII', 'dIII', 'dL', 'dH', 'dK')


@dataclass(frozen=True)
class VariationRecord:
    """First variations of I, II, III, L, H, K: finite differences and closed forms."""

    fd: dict = field(default_factory=dict)
    closed_forms: dict = field(default_factory=dict)

    def __getattr__(self, name):
        if name in _KEYS:
            return self.fd[name]
        raise AttributeError(name)

    def residuals(self):
        """Relative residual ``|fd - closed| / (1 + |closed|)`` per quantity, maximized over points."""
        out = {}
        for k in _KEYS:
            a, b = self.fd[k], self.closed_forms[k]
            ax = tuple(range(-(np.ndim(a) - np.ndim(self.fd['dH'])), 0)) if np.ndim(a) > np.ndim(self.fd['dH']) else None
            diff = np.sqrt(np.sum((a - b)**2, axis=ax)) if ax else np.abs(a - b)
            scale = 1.0 + (np.sqrt(np.sum(b**2, axis=ax)) if ax else np.abs(b))
            out[k] = float(np.max(diff/scale))
        return out


def _invariants(surface, x):
    f = frame_at(surface, x)
    return {'dI': f.I, 'dII': f.II, 'dIII': f.III, 'dL': f.L, 'dH': f.H, 'dK': f.K}


def variation_derivatives(y0, v, x, f0=None):
    """
    Derivatives at ``eta = 0`` of I, II, III, L, H, K along ``y0 + eta v``.

    The finite-difference side uses central differences with
    ``eta`` in {1e-4, 5e-5} combined by Richardson extrapolation; the closed
    forms are ``dI = 2 G_K``, ``dII = R_K``, ``dL = I^{-1}(R_K - 2 G_K L)``,
    ``dIII = 2 sym(L^T (R_K - G_K L))``, ``dH = tr(I^{-1} R_AL)/2`` and
    ``dK = tr(adj(L) I^{-1} R_AL)``.

    Returns
    -------
    VariationRecord

    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    h1, h2 = ETA

    def central(h):
        p = _invariants(y0 + h*v, x)
        m = _invariants(y0 + (-h)*v, x)
        return {k: (p[k] - m[k])/(2.0*h) for k in _KEYS}
    D1, D2 = central(h1), central(h2)
    r = (h1/h2)**2
    fd = {k: (r*D2[k] - D1[k])/(r - 1.0) for k in _KEYS}

    G_K, R_K = _koiter_direct(f0, v.grad(x), v.hess(x))
    L, Ii = f0.L, f0.I_inv
    R_AL = R_K - 2.0*T.sym(G_K @ L)
    closed = {
        'dI': 2.0*G_K,
        'dII': R_K,
        'dL': Ii @ (R_K - 2.0*G_K @ L),
        'dIII': 2.0*T.sym(T.tp(L) @ (R_K - G_K @ L)),
        'dH': 0.5*T.trace(Ii @ R_AL),
        'dK': T.trace(T.adj2(L) @ Ii @ R_AL),
    }
    return VariationRecord(fd, closed)
