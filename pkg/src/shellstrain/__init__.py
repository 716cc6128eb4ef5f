"""
Shell strain measures, energies and verification checks for parametrized midsurfaces.

The main entry points are

* :func:`frame_at` for the differential geometry of a midsurface,
* :func:`koiter_strains`, :func:`cosserat_strains`, :func:`constrained_strains`
  and their linear counterparts for strain measures,
* :func:`cosserat_energy` and :func:`koiter_energy` for shell energies,
* :func:`minimize_displacement` for small linear boundary value problems,
* :func:`build_scenario` and :func:`run_check` for the property checks.
"""

__version__ = '0.1.0'

from .catalog import Scenario, build_scenario, describe, load_scenario, scenario
from .checks import CHECKS, CheckReport, run_check, run_suite
from .energy import Quadrature, cosserat_energy, density_eval, koiter_energy
from .errors import ShellError
from .fields import RotationField, SurfacePatch, VectorField
from .geometry import SurfaceFrame, frame_at
from .linear import constrained_linear, cosserat_linear, koiter_linear, theta_inf, variation_derivatives
from .material import MaterialParams
from .minimize import minimize_displacement
from .nonlinear import (acharya_tensors, constrained_strains, cosserat_strains, koiter_strains,
                        naghdi_strains, reconstruct_3d_strain, thickness_ansatz, virga_plate_tensor)

__all__ = [
    'CHECKS', 'CheckReport', 'MaterialParams', 'Quadrature', 'RotationField', 'Scenario', 'ShellError',
    'SurfaceFrame', 'SurfacePatch', 'VectorField', 'acharya_tensors', 'build_scenario',
    'constrained_linear', 'constrained_strains', 'cosserat_energy', 'cosserat_linear', 'cosserat_strains',
    'density_eval', 'describe', 'frame_at', 'koiter_energy', 'koiter_linear', 'koiter_strains',
    'load_scenario', 'minimize_displacement', 'naghdi_strains', 'reconstruct_3d_strain', 'run_check',
    'run_suite', 'scenario', 'theta_inf', 'thickness_ansatz', 'variation_derivatives', 'virga_plate_tensor',
]
