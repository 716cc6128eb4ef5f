"""
Numerical comparison tables of the strain measures.

Each row is either the largest norm of a tensor over the evaluation points
(``kind='norm'``) or the largest residual of an identity between measures
(``kind='residual'``), grouped by topic: change of metric, bending, change
of curvature, transverse shear and drilling bending.  Residual rows carry a
tolerance and pass or fail; norm rows are informative.
"""

from dataclasses import dataclass

import numpy as np

from . import tensor as T
from .geometry import frame_at
from .linear import constrained_linear, cosserat_linear
from .nonlinear import (NormalField, _flat, _tangent_sqrt, acharya_tensors, constrained_strains,
                        cosserat_strains, koiter_strains, naghdi_strains, virga_plate_tensor)

TABLE_TOL = 1e-8


@dataclass(frozen=True)
class Row:
    table: str
    quantity: str
    kind: str
    value: float
    tolerance: float = None

    @property
    def passed(self):
        return self.kind != 'residual' or self.value <= self.tolerance

    def to_dict(self):
        d = {'table': self.table, 'quantity': self.quantity, 'kind': self.kind, 'value': self.value}
        if self.kind == 'residual':
            d['tolerance'] = self.tolerance
            d['passed'] = self.passed
        return d


def _mx(A, ndim=2):
    A = np.asarray(A, dtype=float)
    return float(np.max(np.sqrt(np.sum(A**2, axis=tuple(range(-ndim, 0))))))


def relationship_table(scn, x=None, tol=TABLE_TOL):
    """
    Rows comparing the strain measures of a scenario at points ``x``.

    The nonlinear measures use the deformation ``m`` of the scenario, the
    linear ones its displacement ``v`` and rotation vector ``phi``.

    Returns
    -------
    list of Row

    """
    x = scn.points if x is None else np.asarray(x, dtype=float)
    y0, m, v = scn.y0, scn.m, scn.v
    f0, fm = frame_at(y0, x), frame_at(m, x)
    Ti = f0.grad_theta_inv
    G_K, R_K = koiter_strains(y0, m, x, f0, fm)
    cs = cosserat_strains(y0, m, scn.Q, x, f0)
    cc = constrained_strains(y0, m, x, f0, fm)
    Rt, Rs = acharya_tensors(y0, m, x, f0, fm)
    lin = cosserat_linear(y0, v, scn.phi, x, f0)
    cl = constrained_linear(y0, v, x, f0)
    RN, TN, PN = naghdi_strains(y0, m, NormalField(m), x, f0)
    rows = []

    def norm(table, name, A, ndim=2):
        rows.append(Row(table, name, 'norm', _mx(A, ndim)))

    def res(table, name, A, ndim=2):
        rows.append(Row(table, name, 'residual', _mx(A, ndim), tol))

    t = 'change_of_metric'
    norm(t, 'G_Koiter', G_K)
    norm(t, 'G_Cosserat', cs.G)
    norm(t, 'G_inf', cc.G_inf)
    norm(t, 'G_Koiter_lin', cl.G_K)
    norm(t, 'G_lin', lin.G_lin)
    res(t, 'G_inf symmetric', cc.G_inf - T.tp(cc.G_inf))
    res(t, 'G_lin = grad y0^T grad v + <theta,n0> sqrt(det I) rot90', lin.G_lin - lin.G_lin_alt)
    res(t, 'sym G_lin = G_Koiter_lin', T.sym(lin.G_lin) - lin.G_K)

    t = 'bending'
    norm(t, 'R_Koiter', R_K)
    norm(t, 'R_Cosserat', cs.R)
    norm(t, 'R_inf_flat', cc.R_inf_flat)
    norm(t, 'R_Acharya', Rt)
    norm(t, 'R_Acharya_sym', Rs)
    norm(t, 'Virga_plate', virga_plate_tensor(m, x, fm))
    norm(t, 'R_Naghdi', RN)
    norm(t, 'R_inf_lin', cl.R_inf_lin)
    norm(t, 'R_KSB_lin', cl.R_KSB)
    res(t, 'R_KSB = sym(R_inf_lin)', cl.R_KSB - T.sym(cl.R_inf_lin))
    res(t, 'R_Acharya = -sqrt(Ti^T I_m Ti) Ti^T R_inf_flat Ti',
        Rt + _tangent_sqrt(Ti, fm.I, f0.n0) @ T.tp(Ti) @ cc.R_inf_flat @ Ti)
    res(t, 'Virga_plate = I_m L_m^2', virga_plate_tensor(m, x, fm) - fm.I @ fm.L @ fm.L)
    res(t, 'R_Naghdi(d=n) = R_Koiter', RN - R_K)

    t = 'change_of_curvature'
    norm(t, 'R_Koiter_lin', cl.R_K)
    norm(t, 'R_AL_lin', cl.R_AL)
    res(t, 'R_AL = 2 R_KSB - R_Koiter', cl.R_AL - (2.0*cl.R_KSB - cl.R_K))
    res(t, 'R_Cosserat - G_Cosserat L = C', cs.R - cs.G @ f0.L - cs.C)
    if scn.surface_kind in ('plate', 'polar_plane'):
        res(t, 'plate: R_AL = R_Koiter_lin', cl.R_AL - cl.R_K)
        res(t, 'plate: R_inf_lin = R_Koiter_lin', cl.R_inf_lin - cl.R_K)

    t = 'transverse_shear'
    norm(t, 'T_Cosserat', cs.T, 1)
    norm(t, 'T_lin', lin.T_lin, 1)
    res(t, 'T_inf = 0', cc.T_inf, 1)
    res(t, 'T_Naghdi(d=n) = 0', TN, 1)

    t = 'drilling_bending'
    norm(t, 'N_Cosserat', cs.N, 1)
    norm(t, 'N_inf', cc.N_inf, 1)
    norm(t, 'N_lin', lin.N_lin, 1)
    res(t, 'K_es = C(-C K_es) + n0 (K_es^T n0)^T',
        cs.K_es - (f0.C @ (-f0.C @ cs.K_es)
                   + np.einsum('...i,...j->...ij', f0.n0, np.einsum('...ij,...i->...j', cs.K_es, f0.n0))))
    return rows
