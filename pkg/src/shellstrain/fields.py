"""
Parametrized fields over a planar parameter domain.

A :class:`VectorField` maps parameter points ``x`` of shape (...,2) to
vectors of shape (...,3) and exposes first, second and third derivatives,
either from user-supplied closures or by central finite differences.
:class:`SurfacePatch` adds a rectangular domain and is what midsurfaces and
deformed midsurfaces are.  :class:`RotationField` maps points to SO(3).

Derivative array layout: ``grad[..., i, a] = d f_i / d x_a``,
``hess[..., i, a, b]`` and ``third[..., i, a, b, c]`` likewise.
"""

from dataclasses import dataclass

import numpy as np

from . import tensor as T
from .errors import InvalidInput, OutOfDomain

H_FIRST = 6e-6
H_SECOND = 2e-4
H_LIFT = 2e-5

_E = np.eye(2)


def _steps(x, h):
    return h*(1.0 + np.abs(x))


def _central(fun, x, h, richardson):
    """Central difference of ``fun`` along both parameter directions, stacked last."""
    def once(scale):
        cols = []
        for a in range(2):
            ha = scale*_steps(x[..., a], h)
            dx = ha[..., None]*_E[a]
            shape = (...,) + (None,)*(np.ndim(fun(x)) - np.ndim(x) + 1)
            d = (fun(x + dx) - fun(x - dx))/(2.0*ha[shape])
            cols.append(d)
        return np.stack(cols, axis=-1)
    if not richardson:
        return once(1.0)
    return (4.0*once(0.5) - once(1.0))/3.0


class VectorField:
    """
    Vector-valued map of two parameters with derivative access.

    Parameters
    ----------
    func : callable
        ``x -> f(x)`` for ``x`` of shape (...,2), returning shape (...,3).
    jac, hess, third : callable, optional
        Analytic derivatives.  Missing ones are obtained by central
        differences of the next lower available level.
    richardson : bool, optional
        Use one level of Richardson extrapolation in finite differences.

    """

    def __init__(self, func, jac=None, hess=None, third=None, richardson=False, name=None):
        self._func = func
        self._jac = jac
        self._hess = hess
        self._third = third
        self.richardson = richardson
        self.name = name

    @property
    def analytic(self):
        return self._jac is not None and self._hess is not None

    def __call__(self, x):
        return self.value(x)

    def value(self, x):
        return np.asarray(self._func(np.asarray(x, dtype=float)), dtype=float)

    def grad(self, x):
        x = np.asarray(x, dtype=float)
        if self._jac is not None:
            return np.asarray(self._jac(x), dtype=float)
        return _central(self.value, x, H_FIRST, self.richardson)

    def hess(self, x):
        x = np.asarray(x, dtype=float)
        if self._hess is not None:
            return np.asarray(self._hess(x), dtype=float)
        if self._jac is not None:
            H = _central(self.grad, x, H_LIFT, True)
            return 0.5*(H + np.swapaxes(H, -1, -2))
        return self._nested_second(x)

    def third(self, x):
        x = np.asarray(x, dtype=float)
        if self._third is not None:
            return np.asarray(self._third(x), dtype=float)
        return _central(self.hess, x, H_LIFT if self._hess is not None else H_SECOND, True)

    def _nested_second(self, x):
        def once(scale):
            out = np.empty(x.shape[:-1] + (3, 2, 2))
            f0 = self.value(x)
            for a in range(2):
                for b in range(a, 2):
                    ha = scale*_steps(x[..., a], H_SECOND)[..., None]
                    hb = scale*_steps(x[..., b], H_SECOND)[..., None]
                    da = ha*_E[a]
                    db = hb*_E[b]
                    if a == b:
                        d = (self.value(x + 2*da) - 2.0*f0 + self.value(x - 2*da))/(4.0*ha*ha)
                    else:
                        d = (self.value(x + da + db) - self.value(x + da - db)
                             - self.value(x - da + db) + self.value(x - da - db))/(4.0*ha*hb)
                    out[..., a, b] = d
                    out[..., b, a] = d
            return out
        if not self.richardson:
            return once(1.0)
        return (4.0*once(0.5) - once(1.0))/3.0

    def _combine(self, other, op):
        def level(name):
            fa = getattr(self, '_' + name) if name != 'func' else self._func
            fb = getattr(other, '_' + name) if name != 'func' else other._func
            if fa is None or fb is None:
                return None
            return lambda x: op(fa(x), fb(x))
        return type(self)._rebuild(self, level('func'), level('jac'), level('hess'), level('third'))

    def _map(self, op, op_const=None):
        """Apply a linear map to every derivative level; ``op_const`` acts on values only."""
        def level(f, const):
            if f is None:
                return None
            if const is None:
                return lambda x: op(f(x))
            return lambda x: op(f(x)) + const
        return type(self)._rebuild(self, level(self._func, op_const), level(self._jac, None),
                                   level(self._hess, None), level(self._third, None))

    @staticmethod
    def _rebuild(proto, func, jac, hess, third):
        return VectorField(func, jac, hess, third, richardson=proto.richardson)

    def __add__(self, other):
        if isinstance(other, VectorField):
            return self._combine(other, np.add)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, VectorField):
            return self._combine(other, np.subtract)
        return NotImplemented

    def __mul__(self, alpha):
        alpha = float(alpha)
        return self._map(lambda v: alpha*v)

    __rmul__ = __mul__

    def affine(self, M, c=None):
        """Field ``x -> M f(x) + c`` for a constant matrix ``M``; ``c`` is added to values only."""
        M = np.asarray(M, dtype=float)
        c = None if c is None else np.asarray(c, dtype=float)

        def rotate(v):
            # v has shape (..., 3, *deriv_axes); contract M with the vector axis
            return np.moveaxis(np.tensordot(M, np.moveaxis(v, _vec_axis(v), 0), axes=(1, 0)), 0, _vec_axis(v))
        return self._map(rotate, op_const=None)._with_offset(c)

    def _with_offset(self, c):
        if c is None:
            return self
        f = self._func
        return type(self)._rebuild(self, lambda x: f(x) + c, self._jac, self._hess, self._third)


def _vec_axis(v):
    # value arrays end with the vector axis; derivative arrays carry 1..3 extra trailing axes of length 2
    extra = 0
    for n in v.shape[::-1]:
        if n == 2:
            extra += 1
        else:
            break
    return v.ndim - 1 - extra


class SurfacePatch(VectorField):
    """
    Parametrized (mid)surface over a rectangle.

    Parameters
    ----------
    func, jac, hess, third : callable
        See :class:`VectorField`.
    domain : sequence, optional
        ``[[a1, b1], [a2, b2]]`` in parameter units.

    """

    def __init__(self, func, jac=None, hess=None, third=None, domain=((0.0, 1.0), (0.0, 1.0)),
                 richardson=False, name=None):
        super().__init__(func, jac, hess, third, richardson, name)
        self.domain = np.asarray(domain, dtype=float)
        if self.domain.shape != (2, 2) or np.any(self.domain[:, 1] <= self.domain[:, 0]):
            raise InvalidInput('domain must be [[a1, b1], [a2, b2]] with a < b')

    @classmethod
    def from_field(cls, field, domain, name=None):
        return cls(field._func, field._jac, field._hess, field._third, domain=domain,
                   richardson=field.richardson, name=name or field.name)

    @staticmethod
    def _rebuild(proto, func, jac, hess, third):
        return SurfacePatch(func, jac, hess, third, domain=proto.domain, richardson=proto.richardson)

    def margin(self):
        """Distance from the boundary required by finite-difference evaluation."""
        if self.analytic:
            return 0.0
        return 2.0*H_SECOND*(1.0 + np.max(np.abs(self.domain)))

    def check_inside(self, x):
        x = np.asarray(x, dtype=float)
        m = self.margin()
        lo = self.domain[:, 0] + m
        hi = self.domain[:, 1] - m
        inside = np.all((x > lo) & (x < hi), axis=-1) if m > 0 else np.all((x >= lo) & (x <= hi), axis=-1)
        if not np.all(inside):
            raise OutOfDomain('parameter point outside the surface domain (or its finite-difference margin)')
        return x


class RotationField:
    """
    Field of proper rotations with derivative access.

    ``deriv(x)`` returns ``dQ[..., i, j, a] = d Q_ij / d x_a``.  Without an
    analytic derivative, Richardson-extrapolated central differences are used.
    """

    def __init__(self, func, deriv=None, h_fd=1e-4, name=None):
        self._func = func
        self._deriv = deriv
        self.h_fd = h_fd
        self.name = name

    def __call__(self, x):
        return self.value(x)

    def value(self, x):
        return np.asarray(self._func(np.asarray(x, dtype=float)), dtype=float)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        if self._deriv is not None:
            return np.asarray(self._deriv(x), dtype=float)
        return _central(self.value, x, self.h_fd, True)

    def wryness(self, x, Q=None):
        """
        Axial vectors of ``Q^T d_a Q``, one column per parameter direction.

        Returns
        -------
        k : numpy.ndarray, shape (...,3,2)
        asym : float
            Largest discarded symmetric part (finite-difference noise).
        """
        Q = self.value(x) if Q is None else Q
        dQ = self.deriv(x)
        W = np.einsum('...ki,...kja->...aij', Q, dQ)
        asym = float(np.max(T.norm(T.sym(W)), initial=0.0))
        k = T.axl(T.skew(W))
        return np.moveaxis(k, -2, -1), asym

    def left(self, R):
        """Rotation field ``x -> R Q(x)`` for a constant rotation ``R``."""
        R = np.asarray(R, dtype=float)
        f, d = self._func, self._deriv
        return RotationField(lambda x: R @ f(x),
                             None if d is None else (lambda x: np.einsum('ij,...jka->...ika', R, d(x))),
                             self.h_fd)

    @classmethod
    def constant(cls, R):
        R = T.check_rotation(np.asarray(R, dtype=float))
        return cls(lambda x: np.broadcast_to(R, np.shape(x)[:-1] + (3, 3)).copy(),
                   lambda x: np.zeros(np.shape(x)[:-1] + (3, 3, 2)), name='constant')

    @classmethod
    def identity(cls):
        return cls.constant(np.eye(3))

    @classmethod
    def from_rotation_vector(cls, phi):
        """
        Rotation field ``exp(anti(phi(x)))`` from a rotation-vector field.

        The derivative is analytic, ``d_a Q = Q anti(J_r(phi) d_a phi)``.
        """
        def func(x):
            return T.rotation_from_vector(phi.value(x))

        def deriv(x):
            p = phi.value(x)
            Q = T.rotation_from_vector(p)
            w = np.einsum('...ij,...ja->...ai', T.right_jacobian(p), phi.grad(x))
            return np.moveaxis(Q[..., None, :, :] @ T.anti(w), -3, -1)
        return cls(func, deriv, name='rotation_vector')


@dataclass(frozen=True)
class ConstantField:
    """Helper for constant vectors promoted to :class:`VectorField`."""
    c: tuple

    def field(self):
        c = np.asarray(self.c, dtype=float)
        return VectorField(lambda x: np.broadcast_to(c, np.shape(x)[:-1] + (3,)).copy(),
                           lambda x: np.zeros(np.shape(x)[:-1] + (3, 2)),
                           lambda x: np.zeros(np.shape(x)[:-1] + (3, 2, 2)),
                           lambda x: np.zeros(np.shape(x)[:-1] + (3, 2, 2, 2)))
