"""
Small-tensor algebra.

All routines accept numpy arrays with arbitrary leading batch dimensions,
i.e. shape (...,3,3) for matrices and (...,3) for vectors, and operate on the
trailing axes.  Tolerances are relative to ``1 + norm(input)``.

"""

import numpy as np

from .errors import Degenerate, InvalidInput, NotPSD, NotRotation, NotSkew, NotSymmetric

TOL_SKEW = 1e-9
TOL_SYM = 1e-9
EPS_CLAMP = 1e-12
DET_MIN = 1e-10

_JACOBI_PAIRS = ((0, 1), (0, 2), (1, 2))


def tp(A):
    """Transpose over the two trailing axes."""
    return np.swapaxes(A, -1, -2)


def sym(A):
    return 0.5*(A + tp(A))


def skew(A):
    return 0.5*(A - tp(A))


def trace(A):
    return np.trace(A, axis1=-2, axis2=-1)


def dev(A):
    n = A.shape[-1]
    return A - trace(A)[..., None, None]/n*np.eye(n)


def inner(A, B):
    """Frobenius product over the trailing two axes."""
    return np.sum(A*B, axis=(-2, -1))


def norm(A):
    return np.sqrt(inner(A, A))


def _require_finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise InvalidInput('non-finite entries in input')


def decompose(X):
    """
    Orthogonal split of a 3x3 matrix into deviatoric-symmetric, skew and spherical parts.

    Parameters
    ----------
    X : numpy.ndarray, shape (...,3,3)

    Returns
    -------
    devsym, skewpart, spherical : numpy.ndarray, shape (...,3,3)
        Mutually Frobenius-orthogonal parts with ``devsym + skewpart + spherical == X``.

    """
    X = np.asarray(X, dtype=float)
    _require_finite(X)
    spherical = trace(X)[..., None, None]/3.0*np.eye(3)
    return sym(X) - spherical, skew(X), spherical


def anti(v):
    """Skew matrix ``A`` with ``A @ w == cross(v, w)``."""
    v = np.asarray(v, dtype=float)
    A = np.zeros(v.shape[:-1] + (3, 3))
    A[..., 0, 1] = -v[..., 2]
    A[..., 0, 2] = v[..., 1]
    A[..., 1, 0] = v[..., 2]
    A[..., 1, 2] = -v[..., 0]
    A[..., 2, 0] = -v[..., 1]
    A[..., 2, 1] = v[..., 0]
    return A


def axl(A, tol=TOL_SKEW):
    """
    Axial vector ``(-A23, A13, -A12)`` of a skew matrix.

    Raises NotSkew if the symmetric part exceeds ``tol*(1 + |A|)``.
    """
    A = np.asarray(A, dtype=float)
    _require_finite(A)
    if np.any(norm(A + tp(A)) > tol*(1.0 + norm(A))):
        raise NotSkew('matrix is not skew-symmetric within tolerance')
    return np.stack([-A[..., 1, 2], A[..., 0, 2], -A[..., 0, 1]], axis=-1)


def lift(M, mode='flat'):
    """
    Embed a 2x2 matrix into 3x3.

    ``flat`` puts zeros in the third row and column, ``hat`` additionally
    sets the (3,3) entry to one.
    """
    M = np.asarray(M, dtype=float)
    out = np.zeros(M.shape[:-2] + (3, 3))
    out[..., :2, :2] = M
    if mode == 'hat':
        out[..., 2, 2] = 1.0
    elif mode != 'flat':
        raise InvalidInput(f'unknown lift mode {mode!r}')
    return out


def vec_cross_mat(q, M):
    """Column-wise cross product ``(q x M_1 | q x M_2 | ...)`` for M of shape (...,3,k)."""
    q = np.asarray(q, dtype=float)
    M = np.asarray(M, dtype=float)
    return np.cross(q[..., None, :], tp(M), axis=-1).swapaxes(-1, -2)


def jacobi_eigh(S, max_sweeps=30):
    """
    Eigen-decomposition of symmetric 3x3 matrices by cyclic Jacobi rotations.

    Parameters
    ----------
    S : numpy.ndarray, shape (...,3,3)
        Symmetric matrices; only the symmetric part is used.
    max_sweeps : int, optional
        Upper bound on full sweeps over the three off-diagonal pairs.

    Returns
    -------
    w : numpy.ndarray, shape (...,3)
        Eigenvalues in ascending order.
    V : numpy.ndarray, shape (...,3,3)
        Orthonormal eigenvectors as columns, ``S = V diag(w) V^T``.

    """
    A = sym(np.array(S, dtype=float))
    batch = A.shape[:-2]
    V = np.broadcast_to(np.eye(3), batch + (3, 3)).copy()
    scale = np.maximum(norm(A), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.sqrt(A[..., 0, 1]**2 + A[..., 0, 2]**2 + A[..., 1, 2]**2)
        if np.all(off <= 1e-16*scale):
            break
        for p, q in _JACOBI_PAIRS:
            apq = A[..., p, q]
            active = np.abs(apq) > 1e-300
            safe = np.where(active, apq, 1.0)
            theta = (A[..., q, q] - A[..., p, p])/(2.0*safe)
            with np.errstate(over='ignore'):
                # for huge theta, t -> 1/(2 theta) underflows harmlessly to ~0
                t = np.sign(theta)/(np.abs(theta) + np.sqrt(theta*theta + 1.0))
            t = np.where(theta == 0.0, 1.0, t)
            t = np.where(active, t, 0.0)
            c = 1.0/np.sqrt(t*t + 1.0)
            s = t*c
            J = np.broadcast_to(np.eye(3), batch + (3, 3)).copy()
            J[..., p, p] = c
            J[..., q, q] = c
            J[..., p, q] = s
            J[..., q, p] = -s
            A = tp(J) @ A @ J
            V = V @ J
    w = np.stack([A[..., 0, 0], A[..., 1, 1], A[..., 2, 2]], axis=-1)
    order = np.argsort(w, axis=-1)
    w = np.take_along_axis(w, order, axis=-1)
    V = np.take_along_axis(V, order[..., None, :], axis=-1)
    return w, V


def spd_sqrt(S, tol_sym=TOL_SYM, eps_clamp=EPS_CLAMP):
    """
    Symmetric positive semi-definite square root.

    Parameters
    ----------
    S : numpy.ndarray, shape (...,3,3)
        Symmetric positive semi-definite matrix.
    tol_sym : float, optional
        Admissible asymmetry relative to ``1 + |S|``.
    eps_clamp : float, optional
        Negative eigenvalues down to ``-eps_clamp*(1 + |S|)`` are clamped to zero.

    Returns
    -------
    R : numpy.ndarray, shape (...,3,3)
        Symmetric PSD matrix with ``R @ R == S``.

    """
    S = np.asarray(S, dtype=float)
    _require_finite(S)
    scale = 1.0 + norm(S)
    if np.any(norm(S - tp(S)) > tol_sym*scale):
        raise NotSymmetric('matrix is not symmetric within tolerance')
    w, V = jacobi_eigh(S)
    if np.any(w < -eps_clamp*scale[..., None]):
        raise NotPSD('matrix has a negative eigenvalue beyond the clamp threshold')
    root = np.sqrt(np.clip(w, 0.0, None))
    return sym((V*root[..., None, :]) @ tp(V))


def spd_inv_sqrt(S, **kwargs):
    """Inverse of :func:`spd_sqrt` for positive definite input."""
    S = np.asarray(S, dtype=float)
    _require_finite(S)
    w, V = jacobi_eigh(S)
    if np.any(w <= 0.0):
        raise NotPSD('matrix is not positive definite')
    return sym((V/np.sqrt(w)[..., None, :]) @ tp(V))


def polar_decompose(F, det_min=DET_MIN):
    """
    Right polar decomposition ``F = R U``.

    Parameters
    ----------
    F : numpy.ndarray, shape (...,3,3)
        Matrix with ``det F >= det_min``.

    Returns
    -------
    R : numpy.ndarray, shape (...,3,3)
        Proper rotation.
    U : numpy.ndarray, shape (...,3,3)
        Symmetric positive definite stretch, ``U = sqrt(F^T F)``.

    """
    F = np.asarray(F, dtype=float)
    _require_finite(F)
    if np.any(np.linalg.det(F) < det_min):
        raise Degenerate('det F below threshold in polar decomposition')
    U = spd_sqrt(tp(F) @ F)
    R = F @ np.linalg.inv(U)
    # one Newton step towards the orthogonal group
    R = 0.5*(R + tp(np.linalg.inv(R)))
    return R, U


def check_rotation(Q, tol=1e-9):
    Q = np.asarray(Q, dtype=float)
    _require_finite(Q)
    if np.any(norm(tp(Q) @ Q - np.eye(3)) > tol) or np.any(np.abs(np.linalg.det(Q) - 1.0) > tol):
        raise NotRotation('matrix is not a proper rotation within tolerance')
    return Q


def rotation_from_vector(phi):
    """Rotation ``exp(anti(phi))`` by Rodrigues' formula."""
    phi = np.asarray(phi, dtype=float)
    t2 = np.sum(phi*phi, axis=-1)[..., None, None]
    t = np.sqrt(t2)
    small = t2 < 1e-8
    ts = np.where(small, 1.0, t)
    a = np.where(small, 1.0 - t2/6.0 + t2*t2/120.0, np.sin(ts)/ts)
    b = np.where(small, 0.5 - t2/24.0 + t2*t2/720.0, (1.0 - np.cos(ts))/(ts*ts))
    K = anti(phi)
    return np.eye(3) + a*K + b*(K @ K)


def right_jacobian(phi):
    """
    Right Jacobian of the rotation exponential.

    For ``Q(s) = exp(anti(phi(s)))`` one has
    ``Q^T dQ/ds = anti(right_jacobian(phi) @ dphi/ds)``.
    """
    phi = np.asarray(phi, dtype=float)
    t2 = np.sum(phi*phi, axis=-1)[..., None, None]
    t = np.sqrt(t2)
    small = t2 < 1e-6
    ts = np.where(small, 1.0, t)
    b = np.where(small, 0.5 - t2/24.0 + t2*t2/720.0, (1.0 - np.cos(ts))/(ts*ts))
    c = np.where(small, 1.0/6.0 - t2/120.0 + t2*t2/5040.0, (ts - np.sin(ts))/(ts*ts*ts))
    K = anti(phi)
    return np.eye(3) - b*K + c*(K @ K)


def adj2(M):
    """Adjugate of 2x2 matrices."""
    out = np.empty_like(M)
    out[..., 0, 0] = M[..., 1, 1]
    out[..., 1, 1] = M[..., 0, 0]
    out[..., 0, 1] = -M[..., 0, 1]
    out[..., 1, 0] = -M[..., 1, 0]
    return out
