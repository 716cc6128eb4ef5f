# %% [markdown]
# # A loaded plate
#
# The linear Cosserat shell energy minus the work of a uniform transverse
# load is minimized on the unit square with zero boundary displacement.
# The displacement is a polynomial on a Chebyshev-Lobatto grid and the
# minimizer is conjugate gradients driven by energy evaluations only.

# %%
import numpy as np

from shellstrain import MaterialParams, minimize_displacement, scenario

plate = scenario('plate').y0
p = MaterialParams(h=0.1)

# %%
for variant in ('linear_constrained', 'linear'):
    v, rep = minimize_displacement(plate, [0.0, 0.0, 1.0], None, p, grid=(8, 8), variant=variant)
    w_mid = v.value(np.array([0.5, 0.5]))[2]
    print(f'{variant:18s} {rep.iterations:3d} iterations, energy {rep.energy_trace[-1]:.6e}, '
          f'midpoint deflection {w_mid:.6e}, {rep.seconds:.1f} s')

# %% [markdown]
# The deflection profile along the midline is symmetric about the centre.

# %%
t = np.linspace(0.0, 1.0, 11)
line = v.value(np.stack([t, np.full_like(t, 0.5)], axis=-1))[:, 2]
for ti, wi in zip(t, line):
    print(f'{ti:4.1f} {wi: .4e} ' + '#'*int(60*wi/line.max()))
