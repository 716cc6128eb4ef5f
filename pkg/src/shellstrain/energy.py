"""
Energy densities and shell energy functionals.

The densities act on 3x3 tensors (batched).  The functionals integrate the
Koiter energy or the eight-term O(h^5) Cosserat shell energy over the
parameter rectangle with tensor Gauss-Legendre quadrature.
"""

from dataclasses import dataclass, field, fields

import numpy as np

from . import tensor as T
from .errors import InvalidInput, InvalidMaterial, QuadratureOrderInvalid
from .geometry import frame_at
from .linear import _fd_grad, _koiter_direct, cosserat_linear, theta_inf
from .material import MaterialParams
from .nonlinear import constrained_strains, cosserat_strains, koiter_strains

__all__ = ['MaterialParams', 'EnergyBreakdown', 'Quadrature', 'density_eval', 'koiter_energy',
           'cosserat_energy', 'DENSITY_KINDS', 'VARIANTS']

DENSITY_KINDS = ('Wshell', 'WshellBilinear', 'Wmp', 'Wcurv', 'WshellInf', 'WshellInfBilinear', 'WmpInf')
VARIANTS = ('unconstrained', 'modified_constrained', 'linear', 'linear_constrained')


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def _bilinear(X, Y, mu, mu_c, k_tr):
    out = mu*T.inner(T.sym(X), T.sym(Y)) + k_tr*T.trace(X)*T.trace(Y)
    if mu_c:
        out = out + mu_c*T.inner(T.skew(X), T.skew(Y))
    return out


def density_eval(kind, X, Y=None, p=None):
    """
    Evaluate a quadratic or bilinear energy density.

    Parameters
    ----------
    kind : str
        One of ``Wshell``, ``WshellBilinear``, ``Wmp``, ``Wcurv``,
        ``WshellInf``, ``WshellInfBilinear``, ``WmpInf``.
    X, Y : array_like, shape (...,3,3)
        ``Y`` is required exactly for the bilinear kinds.
    p : MaterialParams

    Returns
    -------
    numpy.ndarray or float

    Notes
    -----
    ``Wshell = mu |sym X|^2 + mu_c |skew X|^2 + lam mu/(lam + 2 mu) tr(X)^2``;
    ``Wmp`` replaces the trace weight by ``lam/2``; ``Wcurv = mu L_c^2 (b1
    |dev sym X|^2 + b2 |skew X|^2 + b3 tr(X)^2)``.  The ``Inf`` kinds drop the
    skew contribution, so they only see ``sym X``.

    """
    if not isinstance(p, MaterialParams):
        raise InvalidMaterial('density_eval needs MaterialParams')
    if kind not in DENSITY_KINDS:
        raise InvalidInput(f'unknown density kind {kind!r}')
    bilinear = kind.endswith('Bilinear')
    if bilinear != (Y is not None):
        raise InvalidInput(f'{kind} requires {"two" if bilinear else "one"} argument(s)')
    X = np.asarray(X, dtype=float)
    Y = X if Y is None else np.asarray(Y, dtype=float)
    if kind in ('Wshell', 'WshellBilinear'):
        return _bilinear(X, Y, p.mu, p.mu_c, p.kappa)
    if kind in ('WshellInf', 'WshellInfBilinear'):
        return _bilinear(X, Y, p.mu, 0.0, p.kappa)
    if kind == 'Wmp':
        return _bilinear(X, Y, p.mu, p.mu_c, 0.5*p.lam)
    if kind == 'WmpInf':
        return _bilinear(X, Y, p.mu, 0.0, 0.5*p.lam)
    ds = T.dev(T.sym(X))
    sk = T.skew(X)
    return p.mu*p.L_c**2*(p.b1*T.inner(ds, ds) + p.b2*T.inner(sk, sk) + p.b3*T.trace(X)**2)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quadrature:
    """
    Tensor Gauss-Legendre rule on a uniform cell partition of the domain.

    Parameters
    ----------
    order : int
        Points per direction and cell, ``>= 2``.
    cells : tuple of int
        Number of cells per direction.

    """

    order: int = 4
    cells: tuple = (16, 16)

    def __post_init__(self):
        if not isinstance(self.order, (int, np.integer)) or self.order < 2 or self.order > 64:
            raise QuadratureOrderInvalid('quadrature order must be an integer in [2, 64]')
        c = tuple(self.cells)
        if len(c) != 2 or any((not isinstance(n, (int, np.integer))) or n < 1 for n in c):
            raise QuadratureOrderInvalid('cells must be two positive integers')

    def rule(self, domain):
        """Points (n,2) and weights (n,) on ``domain``."""
        t, w = np.polynomial.legendre.leggauss(self.order)
        pts, wts = [], []
        for a in range(2):
            lo, hi = domain[a]
            edges = np.linspace(lo, hi, self.cells[a] + 1)
            half = 0.5*np.diff(edges)
            mid = 0.5*(edges[1:] + edges[:-1])
            pts.append((mid[:, None] + half[:, None]*t).ravel())
            wts.append((half[:, None]*w).ravel())
        P1, P2 = np.meshgrid(pts[0], pts[1], indexing='ij')
        W = np.outer(wts[0], wts[1])
        return np.stack([P1.ravel(), P2.ravel()], axis=-1), W.ravel()


DEFAULT_QUADRATURE = Quadrature()


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------

@dataclass
class EnergyBreakdown:
    """Per-term contributions of the Cosserat shell energy."""

    membrane: float = 0.0
    membrane_bending: float = 0.0
    coupling_H: float = 0.0
    coupling_B: float = 0.0
    mp_term: float = 0.0
    curv_h1: float = 0.0
    curv_h3: float = 0.0
    curv_h5: float = 0.0
    total: float = 0.0
    min_coefficients: dict = field(default_factory=dict, repr=False, compare=False)

    TERMS = ('membrane', 'membrane_bending', 'coupling_H', 'coupling_B', 'mp_term',
             'curv_h1', 'curv_h3', 'curv_h5')

    def to_dict(self):
        return {f.name: float(getattr(self, f.name)) for f in fields(self) if f.name != 'min_coefficients'}


def term_densities(E, K, frame, p, symmetric_only=False):
    """
    Pointwise integrands (already multiplied by ``det grad Theta``) of the eight energy terms.

    ``K`` and ``H`` are the reference curvatures of ``frame``.  With
    ``symmetric_only`` the membrane-type densities are the ``Inf`` kinds.
    """
    h, Kc, Hc = p.h, frame.K, frame.H
    B, C = frame.B, frame.C
    X1 = E @ B + C @ K
    X2 = X1 @ B
    sh, shb, mp = ('WshellInf', 'WshellInfBilinear', 'WmpInf') if symmetric_only else \
        ('Wshell', 'WshellBilinear', 'Wmp')
    c = {
        'membrane': h + Kc*h**3/12,
        'membrane_bending': h**3/12 - Kc*h**5/80,
        'coupling_H': -h**3/3*Hc,
        'coupling_B': h**3/6 + 0.0*Kc,
        'mp_term': h**5/80 + 0.0*Kc,
        'curv_h1': h - Kc*h**3/12,
        'curv_h3': h**3/12 - Kc*h**5/80,
        'curv_h5': h**5/80 + 0.0*Kc,
    }
    d = {
        'membrane': density_eval(sh, E, p=p),
        'membrane_bending': density_eval(sh, X1, p=p),
        'coupling_H': density_eval(shb, E, X1, p=p),
        'coupling_B': density_eval(shb, E, X2, p=p),
        'mp_term': density_eval(mp, X2, p=p),
        'curv_h1': density_eval('Wcurv', K, p=p),
        'curv_h3': density_eval('Wcurv', K @ B, p=p),
        'curv_h5': density_eval('Wcurv', K @ B @ B, p=p),
    }
    det = frame.det_grad_theta
    return {k: c[k]*d[k]*det for k in EnergyBreakdown.TERMS}, c


def _integrate(dens, weights, coeffs=None):
    out = EnergyBreakdown()
    for k in EnergyBreakdown.TERMS:
        setattr(out, k, float(np.sum(dens[k]*weights)))
    out.total = float(sum(getattr(out, k) for k in EnergyBreakdown.TERMS))
    if coeffs is not None:
        out.min_coefficients = {k: float(np.min(coeffs[k])) for k in coeffs}
    return out


def linear_strains(y0, v, theta, x, variant, f0=None):
    """
    Lifted strain and curvature tensors ``(E, K)`` of the linear models.

    ``variant='linear'`` uses the displacement ``v`` and the microrotation
    vector field ``theta``; ``'linear_constrained'`` derives the rotation from
    ``v``.
    """
    f0 = frame_at(y0, x) if f0 is None else f0
    Ti = f0.grad_theta_inv
    if variant == 'linear':
        s = cosserat_linear(y0, v, theta, x, f0)
        z = np.zeros(s.G_lin.shape[:-1] + (1,))
        blk = np.concatenate([np.concatenate([s.G_lin, z], axis=-1),
                              np.concatenate([s.T_lin[..., None, :], np.zeros(z.shape[:-2] + (1, 1))], axis=-1)],
                             axis=-2)
        return T.tp(Ti) @ blk @ Ti, s.K_lin
    if variant == 'linear_constrained':
        G_K, _ = _koiter_direct(f0, v.grad(x), v.hess(x))
        gth = _fd_grad(lambda q: theta_inf(y0, v, q), np.asarray(x, dtype=float))
        K = np.concatenate([gth, np.zeros(gth.shape[:-1] + (1,))], axis=-1) @ Ti
        return T.tp(Ti) @ T.lift(G_K) @ Ti, K
    raise InvalidInput(f'unknown linear variant {variant!r}')


def cosserat_energy(y0, m, Q, p, quadrature=DEFAULT_QUADRATURE, variant='unconstrained'):
    """
    Eight-term Cosserat shell energy.

    Parameters
    ----------
    y0 : SurfacePatch
        Reference midsurface; its domain is integrated over.
    m : SurfacePatch or VectorField
        Deformed midsurface, or the displacement ``v`` for the linear variants.
    Q : RotationField or VectorField or None
        Microrotation; for ``linear`` the infinitesimal rotation vector field;
        ignored by the constrained variants.
    p : MaterialParams
    quadrature : Quadrature
    variant : str
        ``unconstrained``, ``modified_constrained``, ``linear`` or
        ``linear_constrained``.

    Returns
    -------
    EnergyBreakdown

    """
    if variant not in VARIANTS:
        raise InvalidInput(f'unknown variant {variant!r}')
    x, w = quadrature.rule(y0.domain)
    f0 = frame_at(y0, x)
    if variant == 'unconstrained':
        s = cosserat_strains(y0, m, Q, x, f0)
        E, K = s.E_ms, s.K_es
    elif variant == 'modified_constrained':
        s = constrained_strains(y0, m, x, f0)
        E, K = s.E_inf, s.K_inf
    else:
        E, K = linear_strains(y0, m, Q, x, variant, f0)
    dens, coeffs = term_densities(E, K, f0, p, symmetric_only=variant in ('modified_constrained', 'linear_constrained'))
    return _integrate(dens, w, coeffs)


def koiter_energy(y0, m_or_v, p, quadrature=DEFAULT_QUADRATURE, linear=False):
    """
    Koiter shell energy ``int h W(E) + h^3/12 W(F) det grad Theta``.

    ``W(X) = mu |X|^2 + lam mu/(lam + 2 mu) tr(X)^2`` and ``E``, ``F`` are the
    lifted change-of-metric and change-of-curvature tensors (nonlinear, or
    linearized for a displacement ``m_or_v`` when ``linear`` is set).
    """
    x, w = quadrature.rule(y0.domain)
    f0 = frame_at(y0, x)
    if linear:
        G, R = _koiter_direct(f0, m_or_v.grad(x), m_or_v.hess(x))
    else:
        G, R = koiter_strains(y0, m_or_v, x, f0)
    Ti = f0.grad_theta_inv
    E = T.tp(Ti) @ T.lift(G) @ Ti
    F = T.tp(Ti) @ T.lift(R) @ Ti
    W = lambda X: p.mu*T.inner(X, X) + p.kappa*T.trace(X)**2
    dens = (p.h*W(E) + p.h**3/12*W(F))*f0.det_grad_theta
    return float(np.sum(dens*w))
