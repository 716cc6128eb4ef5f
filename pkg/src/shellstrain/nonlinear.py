"""
Nonlinear shell strain measures.

Conventions
-----------
* ``y0`` is the reference midsurface, ``m`` the deformed one, both
  :class:`~shellstrain.fields.SurfacePatch`.
* ``Q`` is a :class:`~shellstrain.fields.RotationField` (microrotation).
* Row quantities (transverse shear, drilling bendings) are returned with
  shape (...,2).
* Everything is vectorized over a batch of parameter points ``x`` (...,2).
"""

from dataclasses import dataclass

import numpy as np

from . import tensor as T
from .errors import InvalidMaterial, PolarFailure
from .geometry import frame_at


def _flat(M):
    return T.lift(M, 'flat')


def _hat(M):
    return T.lift(M, 'hat')


def _block(frame, M2):
    """``-[grad Theta]^{-T} flat(M2) [grad Theta]^{-1}``."""
    Ti = frame.grad_theta_inv
    return -T.tp(Ti) @ _flat(M2) @ Ti


def _pad(cols):
    """Append a zero third column to a (...,3,2) array."""
    return np.concatenate([cols, np.zeros(cols.shape[:-1] + (1,))], axis=-1)


def _cross_cols(k, n):
    """Columns ``k_a x n`` for k (...,3,2) and n (...,3)."""
    return np.stack([np.cross(k[..., 0], n), np.cross(k[..., 1], n)], axis=-1)


# ---------------------------------------------------------------------------
# Koiter
# ---------------------------------------------------------------------------

def koiter_strains(y0, m, x, f0=None, fm=None):
    """
    Change of metric and change of curvature of the Koiter model.

    Returns
    -------
    G : numpy.ndarray, shape (...,2,2)
        ``(I_m - I_y0)/2``.
    R : numpy.ndarray, shape (...,2,2)
        ``II_m - II_y0``.

    """
    f0 = frame_at(y0, x) if f0 is None else f0
    fm = frame_at(m, x) if fm is None else fm
    return 0.5*(fm.I - f0.I), fm.II - f0.II


# ---------------------------------------------------------------------------
# unconstrained Cosserat
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosseratStrainSet:
    E_ms: np.ndarray
    K_es: np.ndarray
    G: np.ndarray
    T: np.ndarray
    R: np.ndarray
    C: np.ndarray
    N: np.ndarray
    CK: np.ndarray
    EB_CK: np.ndarray
    wryness_asym: float = 0.0


def cosserat_strains(y0, m, Q, x, f0=None):
    """
    Strain and bending-curvature tensors of the unconstrained Cosserat shell.

    Parameters
    ----------
    y0, m : SurfacePatch
    Q : RotationField
    x : array_like, shape (...,2)

    Returns
    -------
    CosseratStrainSet

    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    Qx = T.check_rotation(Q.value(x))
    k, asym = Q.wryness(x, Qx)
    gm = m.grad(x)
    g0, n0, Ti = f0.grad_y, f0.n0, f0.grad_theta_inv

    Qn0 = np.einsum('...ij,...j->...i', Qx, n0)
    E_ms = T.tp(Qx) @ np.concatenate([gm, Qn0[..., None]], axis=-1) @ Ti - np.eye(3)
    K_es = _pad(k) @ Ti
    Qg0 = Qx @ g0
    G = T.tp(Qg0) @ gm - f0.I
    Tr = np.einsum('...i,...ia->...a', Qn0, gm)
    # d_a(Q n0) = Q (k_a x n0 + d_a n0)
    dQn0 = Qx @ (_cross_cols(k, n0) + f0.grad_n)
    R = -T.tp(Qg0) @ dQn0 - f0.II
    C = R - G @ f0.L
    N = np.einsum('...i,...ia->...a', n0, k)
    CK = f0.C @ K_es
    EB_CK = E_ms @ f0.B + CK
    return CosseratStrainSet(E_ms, K_es, G, Tr, R, C, N, CK, EB_CK, asym)


# ---------------------------------------------------------------------------
# constrained Cosserat
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstrainedStrainSet:
    """
    Strain measures of the constrained Cosserat shell.

    ``E_inf`` is the rotation-based strain, ``E_inf_sqrt`` the same tensor
    from the difference of square roots of lifted metrics; ``U`` is the
    stretch ``Q_inf^T F``.  ``R_inf`` is the 2x2 bending tensor from the
    rotation route, ``R_inf_flat`` the lifted one from the mixed
    fundamental-form expression.
    """

    Q_inf: np.ndarray
    U: np.ndarray
    E_inf: np.ndarray
    E_inf_sqrt: np.ndarray
    K_inf: np.ndarray
    G_inf: np.ndarray
    R_inf: np.ndarray
    R_inf_flat: np.ndarray
    T_inf: np.ndarray
    N_inf: np.ndarray
    CK: np.ndarray
    EB_CK: np.ndarray
    sym_EB_CK: np.ndarray


def _inv_stretch(Theta, I_m):
    """
    Inverse stretch ``sqrt(grad Theta  hat(I_m)^{-1}  grad Theta^T)``.

    This is the inverse of ``sqrt([grad Theta]^{-T} hat(I_m) [grad Theta]^{-1})``.
    """
    return T.spd_sqrt(Theta @ _hat(np.linalg.inv(I_m)) @ T.tp(Theta))


def _tangent_sqrt(Ti, I, n0):
    """
    ``sqrt([grad Theta]^{-T} flat(I) [grad Theta]^{-1})``.

    The flat-lifted Gram matrix has an exact zero eigenvalue along ``n0``.
    Taking the root of the hat-lifted (definite) matrix and removing
    ``n0 n0^T`` zeroes that eigenvalue exactly instead of clamping round-off.
    """
    return T.spd_sqrt(T.tp(Ti) @ _hat(I) @ Ti) - n0[..., :, None]*n0[..., None, :]


def reconstructed_gradient(f0, fm):
    """``F = (grad m | n)[grad Theta]^{-1}``."""
    return np.concatenate([fm.grad_y, fm.n0[..., None]], axis=-1) @ f0.grad_theta_inv


def _polar_rates(R, U, dF):
    """Axial vectors ``omega_a`` of ``R^T d_a R`` for the polar factor of F, dF (...,3,3,2)."""
    S = T.trace(U)[..., None, None]*np.eye(3) - U
    cols = []
    for a in range(2):
        X = T.tp(R) @ dF[..., a]
        cols.append(np.linalg.solve(S, T.axl(X - T.tp(X), tol=np.inf)[..., None])[..., 0])
    return np.stack(cols, axis=-1)


def constrained_strains(y0, m, x, f0=None, fm=None):
    """
    Strain measures of the constrained Cosserat shell.

    The microrotation is the polar factor of ``(grad m | n)[grad Theta]^{-1}``;
    its parameter derivatives are obtained in closed form from the derivative
    of the polar decomposition.

    Returns
    -------
    ConstrainedStrainSet

    Raises
    ------
    Degenerate
        If either surface is singular or ``det F`` is below threshold.
    PolarFailure
        If the computed polar factor is not a rotation.

    """
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    fm = frame_at(m, x) if fm is None else fm
    Ti, Th = f0.grad_theta_inv, f0.grad_theta
    F = reconstructed_gradient(f0, fm)
    Qi, U = T.polar_decompose(F)
    try:
        T.check_rotation(Qi, tol=1e-8)
    except Exception as exc:
        raise PolarFailure('polar factor is not a proper rotation') from exc

    gm, n0 = fm.grad_y, f0.n0
    Qn0 = np.einsum('...ij,...j->...i', Qi, n0)
    E_inf = T.tp(Qi) @ np.concatenate([gm, Qn0[..., None]], axis=-1) @ Ti - np.eye(3)
    E_inf_sqrt = _tangent_sqrt(Ti, fm.I, n0) - _tangent_sqrt(Ti, f0.I, n0)

    # d_a F = (d_a grad m | d_a n) Ti - F (d_a grad Theta) Ti
    dF = []
    for a in range(2):
        dFm = np.concatenate([fm.hess_y[..., a], fm.grad_n[..., a, None]], axis=-1)
        dTh = np.concatenate([f0.hess_y[..., a], f0.grad_n[..., a, None]], axis=-1)
        dF.append(dFm @ Ti - F @ dTh @ Ti)
    omega = _polar_rates(Qi, U, np.stack(dF, axis=-1))
    K_inf = _pad(omega) @ Ti

    Qg0 = Qi @ f0.grad_y
    G_inf = T.tp(Qg0) @ gm - f0.I
    R_inf = -T.tp(Qg0) @ fm.grad_n - f0.II
    Ui_m = _inv_stretch(Th, fm.I)
    Ui_0 = _inv_stretch(Th, f0.I)
    R_inf_flat = T.tp(Th) @ (Ui_m @ T.tp(Ti) @ _flat(fm.II) @ Ti
                             - Ui_0 @ T.tp(Ti) @ _flat(f0.II) @ Ti) @ Th
    T_inf = np.einsum('...i,...ia->...a', Qn0, gm)
    N_inf = np.einsum('...i,...ia->...a', n0, omega)
    CK = f0.C @ K_inf
    EB_CK = E_inf @ f0.B + CK
    sym_EB_CK = _block(f0, T.sym(R_inf - G_inf @ f0.L))
    return ConstrainedStrainSet(Qi, U, E_inf, E_inf_sqrt, K_inf, G_inf, R_inf, R_inf_flat,
                                T_inf, N_inf, CK, EB_CK, sym_EB_CK)


# ---------------------------------------------------------------------------
# other proposals
# ---------------------------------------------------------------------------

def acharya_tensors(y0, m, x, f0=None, fm=None):
    """
    Acharya's bending tensors.

    Returns
    -------
    R_tilde : numpy.ndarray, shape (...,3,3)
        ``-(Ti^T II_m Ti - sqrt(Ti^T I_m Ti) Ti^T II_y0 Ti)`` with flat lifts
        and ``Ti = [grad Theta]^{-1}``.
    R_sym : numpy.ndarray, shape (...,3,3)
        Its symmetric part.

    """
    f0 = frame_at(y0, x) if f0 is None else f0
    fm = frame_at(m, x) if fm is None else fm
    Ti = f0.grad_theta_inv
    root = _tangent_sqrt(Ti, fm.I, f0.n0)
    Rt = -(T.tp(Ti) @ _flat(fm.II) @ Ti - root @ T.tp(Ti) @ _flat(f0.II) @ Ti)
    return Rt, T.sym(Rt)


def virga_plate_tensor(m, x, fm=None):
    """Virga's plate bending measure ``(grad n)^T grad n`` of the deformed surface."""
    fm = frame_at(m, x) if fm is None else fm
    return T.tp(fm.grad_n) @ fm.grad_n


def naghdi_strains(y0, m, d, x, f0=None):
    """
    Naghdi-type strains for a director field ``d``.

    Returns
    -------
    R_N : numpy.ndarray, shape (...,2,2)
        ``-[sym(grad m^T grad d) - grad y0^T grad n0]``.
    T_N : numpy.ndarray, shape (...,2)
        ``(<d, d1 m>, <d, d2 m>)``.
    P_N : numpy.ndarray, shape (...,2,2)
        ``grad d^T grad d - III_y0``.

    """
    f0 = frame_at(y0, x) if f0 is None else f0
    gm = m.grad(x)
    dv, gd = d.value(x), d.grad(x)
    R_N = -(T.sym(T.tp(gm) @ gd) - T.tp(f0.grad_y) @ f0.grad_n)
    T_N = np.einsum('...i,...ia->...a', dv, gm)
    P_N = T.tp(gd) @ gd - f0.III
    return R_N, T_N, P_N


class NormalField:
    """The unit normal of a surface viewed as a director field."""

    def __init__(self, surface):
        self.surface = surface

    def value(self, x):
        return frame_at(self.surface, x).n0

    def grad(self, x):
        return frame_at(self.surface, x).grad_n


# ---------------------------------------------------------------------------
# through-the-thickness reconstruction
# ---------------------------------------------------------------------------

def _contraction(lam, mu):
    if not lam + 2.0*mu > 0.0:
        raise InvalidMaterial('lambda + 2 mu must be positive')
    return lam/(lam + 2.0*mu)


def reconstruct_3d_strain(cs, frame, lam, mu, x3, symmetrized=True):
    """
    Reconstructed 3D strain up to second order in the thickness coordinate.

    Parameters
    ----------
    cs : ConstrainedStrainSet
    frame : SurfaceFrame
        Reference frame at the same points.
    lam, mu : float
        Lame moduli.
    x3 : float
        Transverse coordinate.
    symmetrized : bool, optional
        Use symmetric parts of the first- and second-order coefficients.

    Returns
    -------
    numpy.ndarray, shape (...,3,3)

    """
    c = _contraction(lam, mu)
    nn = frame.n0[..., :, None]*frame.n0[..., None, :]
    tr = lambda X: T.trace(X)[..., None, None]
    E = cs.E_inf
    X1 = cs.EB_CK
    X2 = cs.EB_CK @ frame.B
    if symmetrized:
        X1s, X2 = cs.sym_EB_CK, T.sym(X2)
    else:
        X1s = X1
    return (E - c*tr(E)*nn) + x3*(X1s - c*tr(X1)*nn) + x3**2*X2


@dataclass(frozen=True)
class ThicknessProfile:
    rho_m: np.ndarray
    rho_b: np.ndarray


def thickness_ansatz(y0, m, Q, lam, mu, x, f0=None):
    """
    Thickness stretch coefficients of the quadratic through-thickness ansatz.

    Returns
    -------
    ThicknessProfile

    Raises
    ------
    InvalidMaterial
        If ``lam + 2 mu <= 0``.

    """
    c = _contraction(lam, mu)
    x = np.asarray(x, dtype=float)
    f0 = frame_at(y0, x) if f0 is None else f0
    Ti = f0.grad_theta_inv
    Qx = Q.value(x)
    k, _ = Q.wryness(x, Qx)
    gm = m.grad(x)
    dQn0 = Qx @ (_cross_cols(k, f0.n0) + f0.grad_n)
    M = T.tp(Qx) @ _pad(gm) @ Ti
    rho_m = 1.0 - c*(T.trace(M) - 2.0)
    rho_b = (-c*T.trace(T.tp(Qx) @ _pad(dQn0) @ Ti)
             + c*T.trace(M @ _pad(f0.grad_n) @ Ti))
    return ThicknessProfile(rho_m, rho_b)


def ansatz_point(y0, m, Q, lam, mu, x, x3):
    """Deformed position ``m + (x3 rho_m + x3^2 rho_b / 2) Q n0``."""
    x = np.asarray(x, dtype=float)
    prof = thickness_ansatz(y0, m, Q, lam, mu, x)
    n0 = frame_at(y0, x).n0
    d = np.einsum('...ij,...j->...i', Q.value(x), n0)
    s = x3*prof.rho_m + 0.5*x3**2*prof.rho_b
    return m.value(x) + s[..., None]*d
