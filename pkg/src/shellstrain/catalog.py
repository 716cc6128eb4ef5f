"""
Scenario catalog.

Surfaces, deformations and rotation fields are written symbolically with
sympy and turned into vectorized numpy closures for the map and its first
three derivatives, so every catalog scenario has analytic derivatives.

A scenario description is a plain dict (the JSON scenario schema)::

    {"schema_version": 1,
     "surface": {"kind": "cylinder", "params": {"r": 1.0}, "domain": [[0, 1.5], [0, 1]]},
     "deformation": {"kind": "radial_expansion", "params": {"eps": 0.3}},
     "rotation": {"kind": "identity"},
     "material": {"mu": 1, "lambda": 1, "mu_c": 1, "L_c": 1, "b1": 1, "b2": 1, "b3": 1, "h": 0.1},
     "sample_points": [[0.3, 0.5]]}
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy as sp

from . import tensor as T
from .errors import BadParameters, IncompatibleScenario, InvalidInput, UnknownCatalogId
from .fields import RotationField, SurfacePatch, VectorField
from .material import MaterialParams

SCHEMA_VERSION = 1

X1, X2 = sp.symbols('x1 x2', real=True)
_X = (X1, X2)

MONOMIALS = (sp.Integer(1), X1, X2, X1**2, X1*X2, X2**2, X1**3, X1**2*X2, X1*X2**2, X2**3)


# ---------------------------------------------------------------------------
# symbolic -> numeric
# ---------------------------------------------------------------------------

def _lambdify_array(exprs, shape):
    exprs = [sp.sympify(e) for e in exprs]
    f = sp.lambdify(_X, exprs, modules='numpy', cse=True)

    def fun(x):
        x = np.asarray(x, dtype=float)
        batch = x.shape[:-1]
        out = f(x[..., 0], x[..., 1])
        out = [np.broadcast_to(np.asarray(c, dtype=float), batch) for c in out]
        return np.stack(out, axis=-1).reshape(batch + shape)
    return fun


def compile_vector(expr, order=3):
    """
    Numeric closures of a symbolic 3-vector and its derivatives.

    Returns ``(func, jac, hess, third)``.
    """
    v = [sp.sympify(e) for e in expr]
    jac = [[sp.diff(c, a) for a in _X] for c in v]
    hess = [[[sp.diff(d, b) for b in _X] for d in row] for row in jac]
    out = [_lambdify_array(v, (3,)),
           _lambdify_array([e for row in jac for e in row], (3, 2)),
           _lambdify_array([e for r in hess for rr in r for e in rr], (3, 2, 2))]
    if order >= 3:
        third = [[[[sp.diff(e, c) for c in _X] for e in rr] for rr in r] for r in hess]
        out.append(_lambdify_array([e for r in third for rr in r for q in rr for e in q], (3, 2, 2, 2)))
    else:
        out.append(None)
    return tuple(out)


def symbolic_patch(expr, domain, name=None):
    func, jac, hess, third = compile_vector(expr)
    return SurfacePatch(func, jac, hess, third, domain=domain, name=name)


def symbolic_field(expr, name=None):
    func, jac, hess, third = compile_vector(expr)
    return VectorField(func, jac, hess, third, name=name)


def polynomial_field(coeffs, name='polynomial'):
    """Vector field whose components are polynomials in the monomial basis ``MONOMIALS``."""
    return symbolic_field(_poly_vector(coeffs, name), name=name)


def symbolic_normal(expr):
    a1 = sp.Matrix([sp.diff(e, X1) for e in expr])
    a2 = sp.Matrix([sp.diff(e, X2) for e in expr])
    c = a1.cross(a2)
    return list(c/sp.sqrt(c.dot(c)))


# ---------------------------------------------------------------------------
# parameter helpers
# ---------------------------------------------------------------------------

def _params(given, defaults, kind):
    given = dict(given or {})
    unknown = set(given) - set(defaults)
    if unknown:
        raise BadParameters(f'{kind}: unknown parameters {sorted(unknown)}')
    out = dict(defaults)
    out.update(given)
    return out


def _positive(p, *names):
    for n in names:
        if not isinstance(p[n], (int, float)) or not np.isfinite(p[n]) or p[n] <= 0:
            raise BadParameters(f'parameter {n} must be a positive number')


def _number(p, *names):
    for n in names:
        if not isinstance(p[n], (int, float)) or isinstance(p[n], bool) or not np.isfinite(p[n]):
            raise BadParameters(f'parameter {n} must be a finite number')


def _vector(p, name, n=3):
    try:
        v = np.asarray(p[name], dtype=float)
    except (TypeError, ValueError) as exc:
        raise BadParameters(f'parameter {name} must be a numeric vector') from exc
    if v.shape != (n,) or not np.all(np.isfinite(v)):
        raise BadParameters(f'parameter {name} must have {n} finite entries')
    return v


def _poly(coeffs, name):
    """Polynomial from up to ten monomial coefficients."""
    try:
        c = [float(a) for a in coeffs]
    except (TypeError, ValueError) as exc:
        raise BadParameters(f'{name}: coefficients must be numbers') from exc
    if len(c) > len(MONOMIALS) or not np.all(np.isfinite(c)):
        raise BadParameters(f'{name}: at most {len(MONOMIALS)} finite coefficients')
    return sum((sp.Float(a)*m for a, m in zip(c, MONOMIALS) if a != 0.0), sp.Integer(0))


def _poly_vector(rows, name):
    if not isinstance(rows, (list, tuple)) or len(rows) != 3:
        raise BadParameters(f'{name}: expected three coefficient lists')
    return [_poly(r, name) for r in rows]


def _float_matrix(R):
    return sp.Matrix(3, 3, [sp.Float(float(a)) for a in np.asarray(R).ravel()])


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------

def _s_plate(p):
    return [X1, X2, sp.Integer(0)], ((0.0, 1.0), (0.0, 1.0))


def _s_cylinder(p):
    _positive(p, 'r')
    r = sp.Float(p['r'])
    return [r*sp.cos(X1/r), r*sp.sin(X1/r), X2], ((0.0, 0.5*np.pi*p['r']), (0.0, 1.0))


def _s_sphere(p):
    _positive(p, 'r')
    r = sp.Float(p['r'])
    return ([r*sp.cos(X2)*sp.cos(X1), r*sp.cos(X2)*sp.sin(X1), r*sp.sin(X2)],
            ((-1.0, 1.0), (-1.0, 1.0)))


def _s_polar_plane(p):
    return [X1*sp.cos(X2), X1*sp.sin(X2), sp.Integer(0)], ((0.5, 1.5), (0.0, 1.0))


def _s_monge(p):
    _number(p, 'a', 'b', 'c', 'd')
    z = p['a']*X1**2 + p['b']*X1*X2 + p['c']*X2**2 + p['d']*X1**2*X2
    return [X1, X2, sp.sympify(z)], ((-0.5, 0.5), (-0.5, 0.5))


def _s_torus(p):
    _positive(p, 'R', 'r')
    if p['r'] >= p['R']:
        raise BadParameters('torus requires r < R')
    R, r = sp.Float(p['R']), sp.Float(p['r'])
    return ([(R + r*sp.cos(X2))*sp.cos(X1), (R + r*sp.cos(X2))*sp.sin(X1), r*sp.sin(X2)],
            ((0.0, 1.0), (0.0, 1.0)))


SURFACES = {
    'plate': (_s_plate, {}),
    'cylinder': (_s_cylinder, {'r': 1.0}),
    'sphere': (_s_sphere, {'r': 1.0}),
    'polar_plane': (_s_polar_plane, {}),
    'monge': (_s_monge, {'a': 0.3, 'b': 0.1, 'c': -0.2, 'd': 0.15}),
    'torus': (_s_torus, {'R': 2.0, 'r': 0.7}),
}


# ---------------------------------------------------------------------------
# deformations: symbolic m from symbolic y0
# ---------------------------------------------------------------------------

def _d_identity(y, p, kind):
    return list(y)


def _d_rigid(y, p, kind):
    Q = T.rotation_from_vector(_vector(p, 'rotvec'))
    c = _vector(p, 'c')
    return list(_float_matrix(Q)*sp.Matrix(y) + sp.Matrix([sp.Float(a) for a in c]))


def _d_scale(y, p, kind):
    _positive(p, 'alpha')
    return [sp.Float(p['alpha'])*e for e in y]


def _d_radial(y, p, kind):
    _number(p, 'eps')
    n = symbolic_normal(y)
    return [e + sp.Float(p['eps'])*ni for e, ni in zip(y, n)]


def _d_roll(y, p, kind):
    if kind != 'plate':
        raise IncompatibleScenario('isometric_roll is defined for the plate only')
    _positive(p, 'rho')
    rho = sp.Float(p['rho'])
    return [rho*sp.sin(y[0]/rho), y[1], rho*(1 - sp.cos(y[0]/rho)) + y[2]]


def _d_polynomial(y, p, kind):
    v = _poly_vector(p['coeffs'], 'polynomial')
    return [e + vi for e, vi in zip(y, v)]


def _d_rigid_infinitesimal(y, p, kind):
    a = sp.Matrix([sp.Float(t) for t in _vector(p, 'a')])
    b = sp.Matrix([sp.Float(t) for t in _vector(p, 'b')])
    return list(sp.Matrix(y) + a + b.cross(sp.Matrix(y)))


DEFORMATIONS = {
    'identity': (_d_identity, {}),
    'rigid': (_d_rigid, {'rotvec': [0.3, -0.2, 0.5], 'c': [0.1, 0.2, -0.3]}),
    'scale': (_d_scale, {'alpha': 2.0}),
    'radial_expansion': (_d_radial, {'eps': 0.3}),
    'isometric_roll': (_d_roll, {'rho': 1.0}),
    'polynomial': (_d_polynomial, {'coeffs': [[0.0], [0.0], [0.0]]}),
    'rigid_infinitesimal': (_d_rigid_infinitesimal, {'a': [0.0, 0.0, 0.0], 'b': [0.0, 0.0, 1.0]}),
}


# ---------------------------------------------------------------------------
# rotations: a rotation-vector field phi, Q = exp(anti(phi))
# ---------------------------------------------------------------------------

def _r_identity(p):
    return [sp.Integer(0)]*3


def _r_constant(p):
    return [sp.Float(a) for a in _vector(p, 'rotvec')]


def _r_drill(p):
    return [sp.Integer(0), sp.Integer(0), _poly(p['coeffs'], 'drill')]


def _r_rotvec_field(p):
    return _poly_vector(p['coeffs'], 'rotvec_field')


ROTATIONS = {
    'identity': (_r_identity, {}),
    'constant': (_r_constant, {'rotvec': [0.3, -0.2, 0.5]}),
    'drill': (_r_drill, {'coeffs': [0.0, 0.4, -0.3, 0.2]}),
    'rotvec_field': (_r_rotvec_field, {'coeffs': [[0.0], [0.0], [0.0]]}),
}


# ---------------------------------------------------------------------------
# scenario
# ---------------------------------------------------------------------------

@dataclass
class Scenario:
    """
    A fully built scenario.

    Attributes
    ----------
    y0, m : SurfacePatch
        Reference and deformed midsurface.
    v : VectorField
        Displacement ``m - y0``.
    Q : RotationField
        Microrotation ``exp(anti(phi))``.
    phi : VectorField
        Rotation-vector field, the infinitesimal microrotation of linear models.
    material : MaterialParams
    points : numpy.ndarray, shape (n,2)
    description : dict
        Normalized description (round-trips through :func:`build_scenario`).

    """

    y0: SurfacePatch
    m: SurfacePatch
    v: VectorField
    Q: RotationField
    phi: VectorField
    material: MaterialParams
    points: np.ndarray
    description: dict = field(default_factory=dict)

    @property
    def surface_kind(self):
        return self.description['surface']['kind']

    @property
    def domain(self):
        return self.y0.domain


def default_points(domain, n1=5, n2=4):
    """Deterministic interior grid of ``n1*n2`` points."""
    d = np.asarray(domain, dtype=float)
    s = (np.arange(n1) + 0.5)/n1
    t = (np.arange(n2) + 0.5)/n2
    p1 = d[0, 0] + (d[0, 1] - d[0, 0])*(0.05 + 0.9*s)
    p2 = d[1, 0] + (d[1, 1] - d[1, 0])*(0.05 + 0.9*t)
    P1, P2 = np.meshgrid(p1, p2, indexing='ij')
    return np.stack([P1.ravel(), P2.ravel()], axis=-1)


def _lookup(table, entry, what):
    if not isinstance(entry, dict):
        raise InvalidInput(f'{what} must be an object')
    allowed = {'kind', 'params', 'domain'} if what == 'surface' else {'kind', 'params'}
    unknown = set(entry) - allowed
    if unknown:
        raise InvalidInput(f'{what}: unknown keys {sorted(unknown)}')
    kind = entry.get('kind')
    if kind not in table:
        raise UnknownCatalogId(f'unknown {what} kind {kind!r}')
    builder, defaults = table[kind]
    return kind, builder, _params(entry.get('params'), defaults, kind)


@lru_cache(maxsize=256)
def _build_cached(key):
    desc = json.loads(key)
    s_kind, s_build, s_par = _lookup(SURFACES, desc['surface'], 'surface')
    y_expr, dom = s_build(s_par)
    dom = desc['surface'].get('domain', dom)
    try:
        dom = np.asarray(dom, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInput('domain must be numeric') from exc
    if dom.shape != (2, 2):
        raise InvalidInput('domain must be [[a1, b1], [a2, b2]]')

    d_kind, d_build, d_par = _lookup(DEFORMATIONS, desc.get('deformation', {'kind': 'identity'}), 'deformation')
    m_expr = d_build(y_expr, d_par, s_kind)
    r_kind, r_build, r_par = _lookup(ROTATIONS, desc.get('rotation', {'kind': 'identity'}), 'rotation')
    phi_expr = r_build(r_par)

    y0 = symbolic_patch(y_expr, dom, name=s_kind)
    m = symbolic_patch(m_expr, dom, name=d_kind)
    v = symbolic_field([a - b for a, b in zip(m_expr, y_expr)], name='displacement')
    phi = symbolic_field(phi_expr, name=r_kind)
    Q = RotationField.constant(np.eye(3)) if r_kind == 'identity' else RotationField.from_rotation_vector(phi)
    normalized = {
        'schema_version': SCHEMA_VERSION,
        'surface': {'kind': s_kind, 'params': s_par, 'domain': dom.tolist()},
        'deformation': {'kind': d_kind, 'params': d_par},
        'rotation': {'kind': r_kind, 'params': r_par},
    }
    return y0, m, v, Q, phi, normalized


def build_scenario(desc):
    """
    Build a :class:`Scenario` from a description dict.

    Raises
    ------
    UnknownCatalogId
        For unknown surface, deformation or rotation kinds.
    BadParameters
        For invalid catalog parameters.
    InvalidInput
        For malformed descriptions (unknown keys, wrong schema version).

    """
    if not isinstance(desc, dict):
        raise InvalidInput('scenario must be a JSON object')
    allowed = {'schema_version', 'surface', 'deformation', 'rotation', 'material', 'sample_points', 'options'}
    unknown = set(desc) - allowed
    if unknown:
        raise InvalidInput(f'unknown scenario keys: {sorted(unknown)}')
    if desc.get('schema_version', SCHEMA_VERSION) != SCHEMA_VERSION:
        raise InvalidInput(f'unsupported schema_version {desc.get("schema_version")!r}')
    if 'surface' not in desc:
        raise InvalidInput('scenario needs a surface')
    key = json.dumps({k: desc[k] for k in ('surface', 'deformation', 'rotation') if k in desc}, sort_keys=True)
    y0, m, v, Q, phi, normalized = _build_cached(key)
    material = MaterialParams.from_dict(desc.get('material', {}))
    if 'sample_points' in desc:
        try:
            pts = np.asarray(desc['sample_points'], dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidInput('sample_points must be numeric pairs') from exc
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
            raise InvalidInput('sample_points must be a non-empty list of [x1, x2] pairs')
        y0.check_inside(pts)
    else:
        pts = default_points(y0.domain)
    normalized = dict(normalized)
    normalized['material'] = material.to_dict()
    normalized['sample_points'] = pts.tolist()
    if 'options' in desc:
        normalized['options'] = desc['options']
    return Scenario(y0, m, v, Q, phi, material, pts, normalized)


def load_scenario(path):
    """Read and build a scenario JSON file."""
    try:
        with open(path) as fh:
            desc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f'scenario file is not valid JSON: {exc}') from exc
    return build_scenario(desc)


def describe(surface, deformation='identity', rotation='identity', *, surface_params=None,
             deformation_params=None, rotation_params=None, domain=None, points=None, material=None):
    """Convenience constructor for description dicts."""
    d = {'schema_version': SCHEMA_VERSION,
         'surface': {'kind': surface, 'params': dict(surface_params or {})},
         'deformation': {'kind': deformation, 'params': dict(deformation_params or {})},
         'rotation': {'kind': rotation, 'params': dict(rotation_params or {})}}
    if domain is not None:
        d['surface']['domain'] = [list(map(float, r)) for r in domain]
    if points is not None:
        d['sample_points'] = np.asarray(points, dtype=float).tolist()
    if material is not None:
        d['material'] = material.to_dict() if isinstance(material, MaterialParams) else dict(material)
    return d


def scenario(surface, deformation='identity', rotation='identity', **kwargs):
    return build_scenario(describe(surface, deformation, rotation, **kwargs))
