# %% [markdown]
# # Running the property checks
#
# Every check returns a report with a verdict, the largest residual and its
# components.  Checks that do not apply to a scenario are skipped with a
# reason.  Here the whole suite runs on a handful of catalog scenarios.

# %%
from shellstrain import run_suite, scenario

cases = [
    scenario('cylinder', 'rigid'),
    scenario('sphere', 'scale', 'constant'),
    scenario('plate', 'isometric_roll', deformation_params={'rho': 2.0}),
    scenario('plate', 'identity', 'drill'),
    scenario('torus', 'radial_expansion', 'constant', deformation_params={'eps': 0.1}),
]

# %%
for scn in cases:
    reports, skipped = run_suite(scn)
    d = scn.description
    print('/'.join(d[k]['kind'] for k in ('surface', 'deformation', 'rotation')))
    for r in reports:
        print(f'  {r.check_id:24s} {r.verdict:7s} max residual {r.max_residual:.2e} (tol {r.tolerance:g})')
    for cid, why in skipped:
        print(f'  {cid:24s} skipped: {why}')

# %% [markdown]
# The drill report has no verdict.  It shows that a rotation about the
# normal of a flat plate leaves the bending tensor at zero while the
# drilling bendings ``N`` pick it up.

# %%
from shellstrain import run_check

r = run_check('drill_report', cases[3])
print({name: round(value, 4) for name, value in r.residuals.items()})
