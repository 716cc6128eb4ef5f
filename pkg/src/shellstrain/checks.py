"""
Named property checks over catalog scenarios.

Every check evaluates a fixed set of residuals at the sample points of a
scenario and compares each with its tolerance.  Two kinds of components
exist:

* ``bound``: a quantity that must vanish, pass when its maximum over the
  points is at most the tolerance;
* ``witness``: a quantity that must *not* vanish.  Its residual is the
  shortfall ``max(0, margin - value)`` with tolerance 0, where the margin is
  half of a hand-derived magnitude.

A report passes exactly when all its components pass; ``max_residual`` and
``tolerance`` are those of the worst component (largest residual to
tolerance ratio), so ``verdict == 'pass'`` iff ``max_residual <= tolerance``.
The ``drill_report`` check is descriptive and has verdict ``'report'``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tensor as T
from .catalog import build_scenario, polynomial_field
from .energy import (DENSITY_KINDS, Quadrature, cosserat_energy, density_eval)
from .errors import IncompatibleScenario, InvalidInput
from .fields import RotationField, SurfacePatch
from .geometry import frame_at
from .linear import constrained_linear, cosserat_linear, variation_derivatives
from .nonlinear import (NormalField, acharya_tensors, constrained_strains, cosserat_strains,
                        koiter_strains, naghdi_strains, virga_plate_tensor)
from .nonlinear import _flat

# displacement and rotation used when a scenario has none of its own
DEFAULT_V = [[0.0, 0.1, 0.05, 0.02, 0.0, -0.03],
             [0.0, 0.03, -0.1, 0.0, 0.05],
             [0.02, 0.0, 0.0, 0.1, 0.0, -0.1]]
DEFAULT_PHI = [[0.1, 0.2], [0.0, 0.0, 0.3], [0.05, 0.1, -0.1]]

WITNESS_FACTOR = 0.5
FD_EPS = 1e-3

DEFAULT_TOLERANCES = {
    'rigid_vanishing': 1e-8,
    'scaling_R_inf': 1e-7,
    'scaling_acharya': 1e-7,
    'scaling_virga': 1e-7,
    'stretch_R_inf_flat': 1e-7,
    'stretch_R_K_hand': 1e-6,
    'flexure': 1e-7,
    'stretch_R_KSB': 1e-8,
    'stretch_R_inf_lin': 1e-8,
    'variation': 1e-6,
    'variation_kernel': 1e-8,
    'variation_cylinder_dH': 1e-6,
    'linearization': 1e-5,
    'appendix_Un0': 1e-9,
    'appendix_sqrt': 1e-8,
    'appendix_polar': 1e-9,
    'block_identity': 1e-9,
    'E_inf_two_forms': 1e-8,
    'acharya_relation': 1e-8,
    'koiter_linear_forms': 1e-7,
    'virga_form': 1e-8,
    'reconstruction_symmetry': 1e-9,
    'energy_zero': 1e-12,
    'energy_frame': 1e-10,
    'energy_polarization': 1e-10,
    'energy_quadrature': 1e-9,
    'energy_linearization': 1e-4,
}


@dataclass
class Component:
    """One residual of a check."""

    name: str
    kind: str
    values: list
    max: float
    tolerance: float
    margin: float = None
    measured: float = None

    @property
    def passed(self):
        return self.max <= self.tolerance

    @property
    def ratio(self):
        if self.max <= self.tolerance:
            return self.max/self.tolerance if self.tolerance > 0 else 0.0
        return np.inf if self.tolerance == 0 else self.max/self.tolerance

    def to_dict(self):
        d = {'name': self.name, 'kind': self.kind, 'max': self.max, 'tolerance': self.tolerance,
             'passed': self.passed, 'values': list(self.values)}
        if self.kind == 'witness':
            d['margin'] = self.margin
            d['measured'] = self.measured
        return d


@dataclass
class CheckReport:
    check_id: str
    scenario: str
    residuals: dict
    max_residual: float
    tolerance: float
    verdict: str
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    components: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict != 'fail'

    def to_dict(self):
        return {'check_id': self.check_id, 'scenario': self.scenario, 'verdict': self.verdict,
                'max_residual': self.max_residual, 'tolerance': self.tolerance,
                'residuals': self.residuals, 'notes': list(self.notes),
                'components': [c.to_dict() for c in self.components], 'details': self.details}


class _Builder:
    """Collects components for one report."""

    def __init__(self, tolerances):
        self.tol = dict(DEFAULT_TOLERANCES)
        self.tol.update(tolerances or {})
        self.components = []
        self.notes = []
        self.details = {}

    def bound(self, name, values, tol_key=None):
        vals = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
        vals = np.where(np.isnan(vals), np.inf, vals)
        self.components.append(Component(name, 'bound', vals.tolist(), float(np.max(vals)),
                                         float(self.tol[tol_key or name])))

    def witness(self, name, values, hand):
        vals = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
        margin = WITNESS_FACTOR*float(hand)
        short = np.maximum(0.0, margin - np.nan_to_num(vals, nan=-np.inf))
        self.components.append(Component(name, 'witness', short.tolist(), float(np.max(short)), 0.0,
                                         margin=margin, measured=float(np.min(vals))))

    def report(self, check_id, scn_id, descriptive=False):
        if not self.components:
            raise InvalidInput(f'check {check_id} produced no residuals')
        worst = max(self.components, key=lambda c: c.ratio)
        if descriptive:
            verdict = 'report'
        else:
            verdict = 'pass' if all(c.passed for c in self.components) else 'fail'
        return CheckReport(check_id, scn_id, {c.name: c.max for c in self.components}, worst.max,
                           worst.tolerance, verdict, self.notes, self.details, self.components)


def scenario_id(scn):
    d = scn.description
    return '/'.join(d[k]['kind'] for k in ('surface', 'deformation', 'rotation'))


def _norm(A, ndim=2):
    A = np.asarray(A, dtype=float)
    return np.sqrt(np.sum(A**2, axis=tuple(range(-ndim, 0))))


def _derived(scn, deformation=None, rotation=None, surface_params=None):
    """Scenario sharing the surface (and material, points) of ``scn``."""
    d = dict(scn.description)
    d['surface'] = dict(d['surface'])
    if surface_params is not None:
        d['surface']['params'] = dict(d['surface']['params'], **surface_params)
    if deformation is not None:
        d['deformation'] = deformation
    if rotation is not None:
        d['rotation'] = rotation
    return build_scenario(d)


def _is_zero(f, x):
    return np.max(np.abs(f.value(x))) == 0.0 and np.max(np.abs(f.grad(x))) == 0.0


def _test_fields(scn):
    x = scn.points
    v = scn.v if not _is_zero(scn.v, x) else polynomial_field(DEFAULT_V, 'v')
    phi = scn.phi if not _is_zero(scn.phi, x) else polynomial_field(DEFAULT_PHI, 'phi')
    return v, phi


def _richardson(fun, h=FD_EPS):
    """d/de fun(e) at 0 from central differences at h and h/2."""
    d1 = (fun(h) - fun(-h))/(2.0*h)
    d2 = (fun(0.5*h) - fun(-0.5*h))/h
    return (4.0*d2 - d1)/3.0


def _rel(fd, ref, ndim):
    return _norm(fd - ref, ndim)/(1.0 + _norm(ref, ndim))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_rigid_vanishing(scn, b):
    kind = scn.description['deformation']['kind']
    if kind not in ('rigid', 'identity'):
        raise IncompatibleScenario('rigid_vanishing needs a rigid or identity deformation')
    if kind == 'rigid':
        R = T.rotation_from_vector(np.asarray(scn.description['deformation']['params']['rotvec'], dtype=float))
        b.notes.append('microrotation set to the rotation of the rigid motion')
    else:
        R = np.eye(3)
    Q = RotationField.constant(R)
    x = scn.points
    f0, fm = frame_at(scn.y0, x), frame_at(scn.m, x)
    G, Rk = koiter_strains(scn.y0, scn.m, x, f0, fm)
    cs = cosserat_strains(scn.y0, scn.m, Q, x, f0)
    cc = constrained_strains(scn.y0, scn.m, x, f0, fm)
    Rt, _ = acharya_tensors(scn.y0, scn.m, x, f0, fm)
    virga = virga_plate_tensor(scn.m, x, fm) - virga_plate_tensor(scn.y0, x, f0)
    RN, TN, PN = naghdi_strains(scn.y0, scn.m, NormalField(scn.m), x, f0)
    parts = {'G_K': G, 'R_K': Rk, 'E_ms': cs.E_ms, 'K_es': cs.K_es, 'E_inf': cc.E_inf,
             'K_inf': cc.K_inf, 'R_inf_flat': cc.R_inf_flat, 'R_acharya': Rt, 'virga': virga,
             'R_naghdi': RN, 'P_naghdi': PN}
    for name, val in parts.items():
        b.bound(name, _norm(val), 'rigid_vanishing')
    b.bound('T_naghdi', _norm(TN, 1), 'rigid_vanishing')


def _koiter_hand(scn, alpha):
    """Hand value of |R_K(alpha m) - R_K(m)| in an orthonormal frame, if known."""
    kind = scn.surface_kind
    if scn.description['deformation']['kind'] != 'identity':
        return None
    r = scn.description['surface']['params'].get('r')
    if kind == 'sphere':
        return abs(alpha - 1.0)*np.sqrt(2.0)/r
    if kind == 'cylinder':
        return abs(alpha - 1.0)/r
    return None


def check_scaling_suite(scn, b, alphas=(0.5, 2.0)):
    x = scn.points
    f0 = frame_at(scn.y0, x)
    Ti = f0.grad_theta_inv
    base = constrained_strains(scn.y0, scn.m, x, f0)
    Rt, _ = acharya_tensors(scn.y0, scn.m, x, f0)
    vg = virga_plate_tensor(scn.m, x)
    _, Rk = koiter_strains(scn.y0, scn.m, x, f0)
    curved = scn.surface_kind not in ('plate', 'polar_plane') or scn.description['deformation']['kind'] != 'identity'
    for a in alphas:
        ma = SurfacePatch.from_field(scn.m*a, scn.domain)
        fa = frame_at(ma, x)
        cs = constrained_strains(scn.y0, ma, x, f0, fa)
        b.bound(f'R_inf_flat[alpha={a:g}]', _norm(cs.R_inf_flat - base.R_inf_flat), 'scaling_R_inf')
        Rta, _ = acharya_tensors(scn.y0, ma, x, f0, fa)
        b.bound(f'acharya[alpha={a:g}]', _norm(Rta - a*Rt), 'scaling_acharya')
        b.bound(f'virga[alpha={a:g}]', _norm(virga_plate_tensor(ma, x, fa) - vg), 'scaling_virga')
        if not curved:
            continue
        _, Rka = koiter_strains(scn.y0, ma, x, f0, fa)
        witness = _norm(T.tp(Ti) @ _flat(Rka - Rk) @ Ti)
        hand = _koiter_hand(scn, a)
        if hand is None:
            hand = abs(a - 1.0)*float(np.min(_norm(T.tp(Ti) @ _flat(frame_at(scn.m, x).II) @ Ti)))
            b.notes.append(f'alpha={a:g}: Koiter witness margin taken from |alpha-1| |II_m|')
        b.witness(f'koiter_witness[alpha={a:g}]', witness, hand)
    if not curved:
        b.notes.append('flat reference and identity deformation: no Koiter witness')


def check_pure_stretch_bending(scn, b):
    if scn.surface_kind != 'cylinder':
        raise IncompatibleScenario('pure_stretch_bending is defined on the cylinder')
    r = float(scn.description['surface']['params']['r'])
    dkind = scn.description['deformation']['kind']
    if dkind == 'radial_expansion':
        eps = float(scn.description['deformation']['params']['eps'])
        finite = scn
    else:
        eps = 0.3
        finite = _derived(scn, deformation={'kind': 'radial_expansion', 'params': {'eps': eps}})
        b.notes.append('finite radial expansion with eps=0.3 (scenario deformation is not radial)')
    x = scn.points
    f0 = frame_at(scn.y0, x)
    cs = constrained_strains(scn.y0, finite.m, x, f0)
    _, Rk = koiter_strains(scn.y0, finite.m, x, f0)
    b.bound('R_inf_flat', _norm(cs.R_inf_flat), 'stretch_R_inf_flat')
    hand = abs(eps)/r**2
    b.bound('R_K_hand', np.abs(_norm(Rk) - hand), 'stretch_R_K_hand')
    if eps != 0.0:
        b.witness('R_K', _norm(Rk), hand)
    # infinitesimal: unit normal displacement
    unit = _derived(scn, deformation={'kind': 'radial_expansion', 'params': {'eps': 1.0}})
    ls = constrained_linear(scn.y0, unit.v, x, f0)
    b.bound('R_KSB', _norm(ls.R_KSB), 'stretch_R_KSB')
    b.bound('R_inf_lin', _norm(ls.R_inf_lin), 'stretch_R_inf_lin')
    b.witness('R_K_lin', _norm(ls.R_K), 1.0/r**2)
    b.witness('R_AL', _norm(ls.R_AL), 1.0/r**2)


def check_pure_flexure(scn, b):
    if scn.surface_kind != 'plate' or scn.description['deformation']['kind'] != 'isometric_roll':
        raise IncompatibleScenario('pure_flexure needs a plate rolled isometrically')
    rho = float(scn.description['deformation']['params']['rho'])
    x = scn.points
    f0 = frame_at(scn.y0, x)
    cs = constrained_strains(scn.y0, scn.m, x, f0)
    _, Rk = koiter_strains(scn.y0, scn.m, x, f0)
    b.bound('R_inf_flat_vs_koiter', _norm(cs.R_inf_flat - _flat(Rk)), 'flexure')
    b.witness('R_K', _norm(Rk), 1.0/rho)


def check_curvature_variation(scn, b):
    x = scn.points
    f0 = frame_at(scn.y0, x)
    v, _ = _test_fields(scn)
    rec = variation_derivatives(scn.y0, v, x, f0)
    for k, val in rec.residuals().items():
        b.bound(k, val, 'variation')
    # fields in the kernel of R_AL: infinitesimal rigid motions, and in-plane plate displacements
    kernels = [('rigid_infinitesimal', {'kind': 'rigid_infinitesimal',
                                        'params': {'a': [0.1, -0.2, 0.3], 'b': [0.4, 0.1, -0.2]}})]
    if scn.surface_kind == 'plate':
        kernels.append(('in_plane', {'kind': 'polynomial',
                                     'params': {'coeffs': [[0.0, 0.2, 0.1, 0.3, -0.1], [0.1, 0.0, 0.3, 0.0, 0.2, 0.1], [0.0]]}}))
    for name, dform in kernels:
        w = _derived(scn, deformation=dform).v
        ls = constrained_linear(scn.y0, w, x, f0)
        kr = variation_derivatives(scn.y0, w, x, f0)
        b.bound(f'{name}:R_AL', _norm(ls.R_AL), 'variation_kernel')
        b.bound(f'{name}:dH', np.abs(kr.fd['dH']), 'variation_kernel')
        b.bound(f'{name}:dK', np.abs(kr.fd['dK']), 'variation_kernel')
    if scn.surface_kind == 'cylinder':
        r = float(scn.description['surface']['params']['r'])
        unit = _derived(scn, deformation={'kind': 'radial_expansion', 'params': {'eps': 1.0}})
        cr = variation_derivatives(scn.y0, unit.v, x, f0)
        b.bound('cylinder_radial_dH', np.abs(cr.fd['dH'] - 0.5/r**2), 'variation_cylinder_dH')
        b.details['cylinder_radial_dH'] = float(np.mean(cr.fd['dH']))


def check_linearization_fd(scn, b):
    x = scn.points
    f0 = frame_at(scn.y0, x)
    v, phi = _test_fields(scn)
    lin = cosserat_linear(scn.y0, v, phi, x, f0)
    clin = constrained_linear(scn.y0, v, x, f0)

    def cosserat_at(e):
        m = scn.y0 + e*v
        s = cosserat_strains(scn.y0, m, RotationField.from_rotation_vector(phi*e), x, f0)
        return {'G': s.G, 'T': s.T, 'R': s.R, 'N': s.N, 'K': s.K_es}

    def constrained_at(e):
        s = constrained_strains(scn.y0, scn.y0 + e*v, x, f0)
        return {'R_inf': s.R_inf, 'G_inf': s.G_inf, 'theta_inf': T.axl(T.skew(s.Q_inf), tol=np.inf),
                'E_inf': s.E_inf, 'K_inf': s.K_inf}

    for fam, fun in (('cosserat', cosserat_at), ('constrained', constrained_at)):
        cache = {}
        for h in (FD_EPS, -FD_EPS, 0.5*FD_EPS, -0.5*FD_EPS):
            cache[h] = fun(h)
        for k in cache[FD_EPS]:
            fd = _richardson(lambda e: cache[e][k])
            ref = {'G': lin.G_lin, 'T': lin.T_lin, 'R': lin.R_lin, 'N': lin.N_lin, 'K': lin.K_lin,
                   'R_inf': clin.R_inf_lin, 'G_inf': clin.G_K, 'theta_inf': clin.theta_inf,
                   'E_inf': clin.E_inf_lin, 'K_inf': clin.K_lin}[k]
            b.bound(f'{fam}:{k}', _rel(fd, ref, ref.ndim - x.ndim + 1), 'linearization')


def check_appendix_stretch(scn, b):
    x = scn.points
    f0, fm = frame_at(scn.y0, x), frame_at(scn.m, x)
    if np.max(_norm(fm.n0 - f0.n0, 1)) > 1e-9:
        raise IncompatibleScenario('appendix_stretch needs a deformation that preserves the normals')
    cs = constrained_strains(scn.y0, scn.m, x, f0, fm)
    U = cs.U
    b.bound('U_n0', _norm(np.einsum('...ij,...j->...i', U, f0.n0) - f0.n0, 1), 'appendix_Un0')
    Ti = f0.grad_theta_inv
    hat = np.zeros(x.shape[:-1] + (3, 3))
    hat[..., :2, :2] = fm.I
    hat[..., 2, 2] = 1.0
    root = T.spd_sqrt(T.tp(Ti) @ hat @ Ti)
    b.bound('U_sqrt', _norm(U - root), 'appendix_sqrt')
    b.bound('polar_identity', _norm(cs.Q_inf - np.eye(3)), 'appendix_polar')
    b.bound('E_inf_stretch', _norm(cs.E_inf - (U - np.eye(3))), 'appendix_sqrt')
    b.witness('U_min_eigenvalue', np.min(np.linalg.eigvalsh(T.sym(U)), axis=-1), 0.0)


def check_energy_properties(scn, b, quad=Quadrature(4, (4, 4))):
    p = scn.material
    rng = np.random.default_rng(0)
    X = rng.normal(size=(1000, 3, 3))
    Y = rng.normal(size=(1000, 3, 3))
    kappa = p.kappa
    lower = {'Wshell': min(p.mu, p.mu_c, p.mu + 3*kappa),
             'Wmp': min(p.mu, p.mu_c, p.mu + 1.5*p.lam),
             'Wcurv': p.mu*p.L_c**2*min(p.b1, p.b2, 3*p.b3),
             'WshellInf': min(p.mu, p.mu + 3*kappa),
             'WmpInf': min(p.mu, p.mu + 1.5*p.lam)}
    for kind in DENSITY_KINDS:
        if kind.endswith('Bilinear'):
            continue
        Z = T.sym(X) if kind.endswith('Inf') else X
        ratio = density_eval(kind, Z, p=p)/np.sum(Z**2, axis=(-2, -1))
        b.witness(f'positive:{kind}', ratio, lower[kind])
    for kind, bil in (('Wshell', 'WshellBilinear'), ('WshellInf', 'WshellInfBilinear')):
        lhs = density_eval(kind, X + Y, p=p) - density_eval(kind, X - Y, p=p)
        rhs = 4.0*density_eval(bil, X, Y, p=p)
        b.bound(f'polarization:{kind}', np.abs(lhs - rhs)/(1.0 + np.abs(rhs)), 'energy_polarization')

    ident = RotationField.identity()
    for variant in ('unconstrained', 'modified_constrained'):
        e0 = cosserat_energy(scn.y0, scn.y0, ident, p, quad, variant).total
        b.bound(f'zero_reference:{variant}', abs(e0), 'energy_zero')

    Rc = T.rotation_from_vector(np.array([0.4, -0.7, 0.2]))
    rm = SurfacePatch.from_field(scn.m.affine(Rc), scn.domain)
    Q = scn.Q
    for variant in ('unconstrained', 'modified_constrained'):
        e1 = cosserat_energy(scn.y0, scn.m, Q, p, quad, variant).total
        e2 = cosserat_energy(scn.y0, rm, Q.left(Rc), p, quad, variant).total
        b.bound(f'frame_invariance:{variant}', abs(e1 - e2)/max(abs(e1), 1e-14), 'energy_frame')

    cells = (4, 4)
    ref = cosserat_energy(scn.y0, scn.m, Q, p, Quadrature(8, cells)).total
    for order in (5, 6):
        e = cosserat_energy(scn.y0, scn.m, Q, p, Quadrature(order, cells)).total
        b.bound(f'quadrature:order{order}', abs(e - ref)/max(abs(ref), 1e-14), 'energy_quadrature')

    v, phi = _test_fields(scn)
    for nl, lv in (('unconstrained', 'linear'), ('modified_constrained', 'linear_constrained')):
        def e_of(t):
            Qt = RotationField.from_rotation_vector(phi*t)
            return cosserat_energy(scn.y0, scn.y0 + t*v, Qt, p, quad, nl).total
        coef = []
        for t in (FD_EPS, 0.5*FD_EPS):
            coef.append((e_of(t) + e_of(-t))/(2.0*t*t))
        c2 = (4.0*coef[1] - coef[0])/3.0
        el = cosserat_energy(scn.y0, v, phi, p, quad, lv).total
        b.bound(f'second_order:{nl}', abs(c2 - el)/max(abs(el), 1e-14), 'energy_linearization')
        b.details[f'second_order:{nl}'] = {'fd': c2, 'linear': el}


def check_drill_report(scn, b):
    if scn.surface_kind != 'plate' or scn.description['deformation']['kind'] != 'identity':
        raise IncompatibleScenario('drill_report needs an undeformed plate')
    if scn.description['rotation']['kind'] != 'drill':
        raise IncompatibleScenario('drill_report needs a drill rotation')
    x = scn.points
    f0 = frame_at(scn.y0, x)
    cs = cosserat_strains(scn.y0, scn.m, scn.Q, x, f0)
    Rt, _ = acharya_tensors(scn.y0, scn.m, x, f0)
    for name, val in (('R', _norm(cs.R)), ('R_acharya', _norm(Rt)), ('N', _norm(cs.N, 1)),
                      ('E_ms', _norm(cs.E_ms)), ('K_es', _norm(cs.K_es))):
        b.components.append(Component(name, 'report', val.tolist(), float(np.max(val)), np.inf))
    b.notes.append('descriptive: magnitudes under a pure drill rotation, no verdict')


def check_block_identities(scn, b):
    from .linear import koiter_linear
    from .nonlinear import _tangent_sqrt
    x = scn.points
    f0, fm = frame_at(scn.y0, x), frame_at(scn.m, x)
    Ti = f0.grad_theta_inv
    cs = cosserat_strains(scn.y0, scn.m, scn.Q, x, f0)

    def blocks(A, row):
        M = np.zeros(A.shape[:-2] + (3, 3))
        M[..., :2, :2] = A
        M[..., 2, :2] = row
        return T.tp(Ti) @ M @ Ti
    TL = np.einsum('...a,...ab->...b', cs.T, f0.L)
    b.bound('E_ms_blocks', _norm(cs.E_ms - blocks(cs.G, cs.T)), 'block_identity')
    b.bound('CK_blocks', _norm(cs.CK + blocks(cs.R, 0.0)), 'block_identity')
    b.bound('EB_CK_blocks', _norm(cs.EB_CK + blocks(cs.R - cs.G @ f0.L, -TL)), 'block_identity')
    nn = np.einsum('...i,...j->...ij', f0.n0, np.einsum('...ij,...i->...j', cs.K_es, f0.n0))
    b.bound('K_decomposition', _norm(cs.K_es - (f0.C @ (-f0.C @ cs.K_es) + nn)), 'block_identity')
    cc = constrained_strains(scn.y0, scn.m, x, f0, fm)
    b.bound('E_inf_two_forms', _norm(cc.E_inf - cc.E_inf_sqrt), 'E_inf_two_forms')
    Rt, _ = acharya_tensors(scn.y0, scn.m, x, f0, fm)
    b.bound('acharya_relation', _norm(Rt + _tangent_sqrt(Ti, fm.I, f0.n0) @ T.tp(Ti) @ cc.R_inf_flat @ Ti),
            'acharya_relation')
    v, _ = _test_fields(scn)
    d = koiter_linear(scn.y0, v, x)
    c = koiter_linear(scn.y0, v, x, form='christoffel')
    b.bound('koiter_linear_forms', np.maximum(_norm(d[0] - c[0]), _norm(d[1] - c[1])), 'koiter_linear_forms')
    b.bound('virga_form', _norm(virga_plate_tensor(scn.m, x, fm) - fm.I @ fm.L @ fm.L), 'virga_form')


def check_reconstruction_symmetry(scn, b):
    from .nonlinear import reconstruct_3d_strain
    x = scn.points
    f0 = frame_at(scn.y0, x)
    cc = constrained_strains(scn.y0, scn.m, x, f0)
    p = scn.material
    for x3 in (-0.5*p.h, 0.0, 0.5*p.h):
        E = reconstruct_3d_strain(cc, f0, p.lam, p.mu, x3)
        b.bound(f'asymmetry[x3={x3:g}]', _norm(E - T.tp(E)), 'reconstruction_symmetry')


CHECKS = {
    'rigid_vanishing': check_rigid_vanishing,
    'scaling_suite': check_scaling_suite,
    'pure_stretch_bending': check_pure_stretch_bending,
    'pure_flexure': check_pure_flexure,
    'curvature_variation': check_curvature_variation,
    'linearization_fd': check_linearization_fd,
    'appendix_stretch': check_appendix_stretch,
    'energy_properties': check_energy_properties,
    'drill_report': check_drill_report,
    'block_identities': check_block_identities,
    'reconstruction_symmetry': check_reconstruction_symmetry,
}


def run_check(check_id, scenario, tolerances=None):
    """
    Run one named check on a scenario.

    Parameters
    ----------
    check_id : str
        Key of ``CHECKS``.
    scenario : Scenario
    tolerances : dict, optional
        Overrides of ``DEFAULT_TOLERANCES`` entries.

    Returns
    -------
    CheckReport

    Raises
    ------
    InvalidInput
        For an unknown check id or tolerance name.
    IncompatibleScenario
        If the scenario does not fit the check.

    """
    if check_id not in CHECKS:
        raise InvalidInput(f'unknown check {check_id!r}; known: {", ".join(CHECKS)}')
    unknown = set(tolerances or {}) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise InvalidInput(f'unknown tolerance names {sorted(unknown)}')
    b = _Builder(tolerances)
    CHECKS[check_id](scenario, b)
    return b.report(check_id, scenario_id(scenario), descriptive=check_id == 'drill_report')


def run_suite(scenario, checks='all', tolerances=None):
    """
    Run several checks on one scenario, skipping incompatible ones.

    Returns the list of reports (in ``CHECKS`` order) and the list of skipped
    ``(check_id, reason)`` pairs.
    """
    ids = list(CHECKS) if checks == 'all' else ([checks] if isinstance(checks, str) else list(checks))
    reports, skipped = [], []
    for cid in ids:
        try:
            reports.append(run_check(cid, scenario, tolerances))
        except IncompatibleScenario as exc:
            if checks != 'all' and len(ids) == 1:
                raise
            skipped.append((cid, str(exc)))
    return reports, skipped
