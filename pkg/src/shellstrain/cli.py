"""
Command-line front end.

Commands: ``frame``, ``strains``, ``energy``, ``verify``, ``minimize`` and
``table``.  Every command reads a scenario JSON file and writes JSON, CSV or
a plain-text table.  Exit status is 0 on success, 1 when a check or
identity fails (or the minimizer does not converge) and 2 on usage or
input errors, which are reported as one line on standard error.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .catalog import load_scenario
from .checks import CHECKS, DEFAULT_TOLERANCES, run_suite, scenario_id
from .energy import Quadrature, cosserat_energy, koiter_energy
from .errors import InvalidInput, NonConvergence, ShellError
from .geometry import frame_at
from .linear import constrained_linear, cosserat_linear, koiter_linear
from .nonlinear import (NormalField, acharya_tensors, constrained_strains, cosserat_strains,
                        koiter_strains, naghdi_strains, virga_plate_tensor)
from .tables import relationship_table

STRAIN_MODELS = ('koiter', 'cosserat', 'constrained', 'acharya', 'virga', 'naghdi',
                 'koiter_linear', 'linear', 'linear_constrained')
ENERGY_MODELS = ('unconstrained', 'modified_constrained', 'linear', 'linear_constrained',
                 'koiter', 'koiter_linear')
MINIMIZE_MODELS = ('linear', 'linear_constrained')


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _clean(obj):
    """Convert numpy containers and scalars to plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _flatten(obj, prefix=''):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f'{prefix}.{k}' if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f'{prefix}[{i}]')
    else:
        yield prefix, obj


def render(payload, fmt):
    """Serialize a command result; floats use the shortest round-trip repr."""
    payload = _clean(payload)
    if fmt == 'json':
        return json.dumps(payload, indent=2) + '\n'
    rows = list(_flatten(payload))
    if fmt == 'csv':
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator='\n')
        w.writerow(['key', 'value'])
        for k, v in rows:
            w.writerow([k, json.dumps(v) if isinstance(v, list) else v])
        return buf.getvalue()
    width = max((len(k) for k, _ in rows), default=0)
    return ''.join(f'{k.ljust(width)}  {json.dumps(v) if isinstance(v, list) else v}\n' for k, v in rows)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _points(args, scn):
    if not args.point:
        return scn.points
    pts = []
    for s in args.point:
        try:
            a, b = (float(t) for t in s.split(','))
        except ValueError as exc:
            raise UsageError(f'--point expects x1,x2 (got {s!r})') from exc
        pts.append((a, b))
    pts = np.array(pts)
    scn.y0.check_inside(pts)
    return pts


def _grid(text, default):
    if text is None:
        return default
    try:
        a, b = text.lower().split('x')
        return int(a), int(b)
    except ValueError as exc:
        raise UsageError(f'--grid expects N1xN2 (got {text!r})') from exc


def _tolerances(items):
    out = {}
    for item in items or []:
        name, sep, val = item.partition('=')
        if not sep:
            raise UsageError(f'--tol expects NAME=VALUE (got {item!r})')
        if name not in DEFAULT_TOLERANCES:
            raise UsageError(f'unknown tolerance {name!r}')
        try:
            out[name] = float(val)
        except ValueError as exc:
            raise UsageError(f'--tol {name}: not a number') from exc
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_frame(args, scn):
    x = _points(args, scn)
    f = frame_at(scn.y0, x)
    pts = []
    for i in range(len(x)):
        pts.append({'x': x[i], 'y0': scn.y0.value(x[i]), 'n0': f.n0[i], 'I': f.I[i], 'II': f.II[i],
                    'III': f.III[i], 'L': f.L[i], 'H': f.H[i], 'K': f.K[i],
                    'grad_theta': f.grad_theta[i], 'christoffel': f.gamma[i]})
    return {'command': 'frame', 'scenario': scenario_id(scn), 'points': pts}, 0


def _strain_fields(model, scn, x):
    y0, m = scn.y0, scn.m
    if model == 'koiter':
        G, R = koiter_strains(y0, m, x)
        return {'G': G, 'R': R}
    if model == 'cosserat':
        s = cosserat_strains(y0, m, scn.Q, x)
        return {k: getattr(s, k) for k in ('E_ms', 'K_es', 'G', 'T', 'R', 'C', 'N', 'CK', 'EB_CK')}
    if model == 'constrained':
        s = constrained_strains(y0, m, x)
        out = {k: getattr(s, k) for k in ('Q_inf', 'U', 'E_inf', 'K_inf', 'G_inf', 'R_inf', 'R_inf_flat',
                                          'T_inf', 'N_inf', 'sym_EB_CK')}
        lin = constrained_linear(y0, scn.v, x)
        out.update({'R_KSB_lin': lin.R_KSB, 'R_AL_lin': lin.R_AL, 'R_inf_lin': lin.R_inf_lin})
        return out
    if model == 'acharya':
        Rt, Rs = acharya_tensors(y0, m, x)
        return {'R_tilde': Rt, 'R_sym': Rs}
    if model == 'virga':
        return {'virga': virga_plate_tensor(m, x)}
    if model == 'naghdi':
        R, Tn, P = naghdi_strains(y0, m, NormalField(m), x)
        return {'R': R, 'T': Tn, 'P': P}
    if model == 'koiter_linear':
        G, R = koiter_linear(y0, scn.v, x)
        return {'G': G, 'R': R}
    if model == 'linear':
        s = cosserat_linear(y0, scn.v, scn.phi, x)
        return {k: getattr(s, k) for k in ('G_K', 'R_K', 'G_lin', 'T_lin', 'R_lin', 'N_lin', 'K_lin')}
    s = constrained_linear(y0, scn.v, x)
    return {k: getattr(s, k) for k in ('G_K', 'R_K', 'theta_inf', 'R_inf_lin', 'R_KSB', 'R_AL',
                                       'E_inf_lin', 'K_lin')}


def cmd_strains(args, scn):
    model = args.model or 'cosserat'
    if model not in STRAIN_MODELS:
        raise UsageError(f'--model for strains must be one of {", ".join(STRAIN_MODELS)}')
    x = _points(args, scn)
    fields = _strain_fields(model, scn, x)
    pts = []
    for i in range(len(x)):
        entry = {'x': x[i]}
        for k, val in fields.items():
            entry[k] = val[i]
        entry['norms'] = {k: float(np.linalg.norm(val[i])) for k, val in fields.items()}
        pts.append(entry)
    return {'command': 'strains', 'model': model, 'scenario': scenario_id(scn), 'points': pts}, 0


def cmd_energy(args, scn):
    model = args.model or 'unconstrained'
    if model not in ENERGY_MODELS:
        raise UsageError(f'--model for energy must be one of {", ".join(ENERGY_MODELS)}')
    quad = Quadrature(args.quad_order or 4, _grid(args.grid, (16, 16)))
    p = scn.material
    if model in ('koiter', 'koiter_linear'):
        linear = model == 'koiter_linear'
        total = koiter_energy(scn.y0, scn.v if linear else scn.m, p, quad, linear=linear)
        breakdown = {'total': total}
    else:
        linear = model.startswith('linear')
        first = scn.v if linear else scn.m
        second = scn.phi if linear else scn.Q
        breakdown = cosserat_energy(scn.y0, first, second, p, quad, model).to_dict()
    return {'command': 'energy', 'model': model, 'scenario': scenario_id(scn),
            'quadrature': {'order': quad.order, 'cells': list(quad.cells)}, 'energy': breakdown}, 0


def cmd_verify(args, scn):
    suite = args.suite or 'all'
    if suite != 'all' and suite not in CHECKS:
        raise UsageError(f'--suite must be "all" or one of {", ".join(CHECKS)}')
    reports, skipped = run_suite(scn, suite, _tolerances(args.tol))
    code = 0 if all(r.passed for r in reports) else 1
    payload = {'command': 'verify', 'scenario': scenario_id(scn),
               'reports': [r.to_dict() for r in reports],
               'skipped': [{'check_id': c, 'reason': why} for c, why in skipped]}
    return payload, code


def cmd_minimize(args, scn):
    from .minimize import minimize_displacement
    model = args.model or 'linear_constrained'
    if model not in MINIMIZE_MODELS:
        raise UsageError(f'--model for minimize must be one of {", ".join(MINIMIZE_MODELS)}')
    opts = scn.description.get('options', {}) or {}
    unknown = set(opts) - {'load', 'bc'}
    if unknown:
        raise InvalidInput(f'unknown scenario options {sorted(unknown)}')
    load = opts.get('load')
    bc = opts.get('bc')
    quad = Quadrature(args.quad_order, tuple(n - 1 for n in _grid(args.grid, (8, 8)))) if args.quad_order else None
    field, report = minimize_displacement(scn.y0, load, bc, scn.material, _grid(args.grid, (8, 8)), model,
                                          quadrature=quad)
    x = _points(args, scn)
    out = {'command': 'minimize', 'model': model, 'scenario': scenario_id(scn),
           'report': {k: v for k, v in report.to_dict().items() if k != 'seconds'},
           'points': [{'x': x[i], 'v': field.value(x[i])} for i in range(len(x))]}
    return out, 0


def cmd_table(args, scn):
    rows = relationship_table(scn, _points(args, scn))
    code = 0 if all(r.passed for r in rows) else 1
    return {'command': 'table', 'scenario': scenario_id(scn), 'rows': [r.to_dict() for r in rows]}, code


COMMANDS = {'frame': cmd_frame, 'strains': cmd_strains, 'energy': cmd_energy, 'verify': cmd_verify,
            'minimize': cmd_minimize, 'table': cmd_table}


def build_parser():
    p = _Parser(prog='shellstrain', description='Strain measures and energies of Cosserat shells.')
    p.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = p.add_subparsers(dest='command', parser_class=_Parser)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument('--scenario', required=True, metavar='PATH')
        c.add_argument('--model')
        c.add_argument('--point', action='append', metavar='X1,X2')
        c.add_argument('--grid', metavar='N1xN2')
        c.add_argument('--quad-order', type=int)
        c.add_argument('--tol', action='append', metavar='NAME=VALUE')
        c.add_argument('--suite')
        c.add_argument('--output', choices=('json', 'csv', 'pretty'), default='json')
        c.add_argument('--out', metavar='PATH')
    return p


def run(argv=None):
    """Run the command line; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError('a command is required: ' + ', '.join(COMMANDS))
        scn = load_scenario(args.scenario)
        payload, code = COMMANDS[args.command](args, scn)
    except UsageError as exc:
        print(f'shellstrain: usage error: {exc}', file=sys.stderr)
        return 2
    except NonConvergence as exc:
        print(f'shellstrain: {exc}', file=sys.stderr)
        return 1
    except (ShellError, OSError) as exc:
        print(f'shellstrain: {type(exc).__name__}: {exc}', file=sys.stderr)
        return 2
    text = render(payload, args.output)
    if args.out:
        with open(args.out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
