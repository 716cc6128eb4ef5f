import json

import numpy as np
import pytest

from shellstrain.catalog import build_scenario, default_points, describe, load_scenario, scenario
from shellstrain.errors import BadParameters, IncompatibleScenario, InvalidInput, OutOfDomain, UnknownCatalogId
from shellstrain.geometry import frame_at


class TestBuild:

    def test_cylinder_quadrant_metric(self):
        scn = scenario('cylinder', surface_params={'r': 1.0})
        assert np.allclose(scn.domain[0], [0, np.pi/2])
        assert np.allclose(frame_at(scn.y0, scn.points).I, np.eye(2))

    def test_plate_scale(self):
        scn = scenario('plate', 'scale', deformation_params={'alpha': 2.0})
        x = scn.points
        assert np.allclose(scn.m.value(x), 2*scn.y0.value(x))

    def test_rigid_keeps_forms(self):
        scn = scenario('cylinder', 'rigid')
        f0, fm = frame_at(scn.y0, scn.points), frame_at(scn.m, scn.points)
        assert np.allclose(f0.I, fm.I) and np.allclose(f0.II, fm.II)

    def test_default_points_interior(self):
        p = default_points(((0, 1), (0, 2)))
        assert p.shape == (20, 2)
        assert np.all((p > 0) & (p[:, :1] < 1) & (p[:, 1:] < 2))

    def test_round_trip(self):
        scn = scenario('torus', 'radial_expansion', 'drill')
        again = build_scenario(json.loads(json.dumps(scn.description)))
        assert again.description == scn.description

    def test_load(self, tmp_path):
        p = tmp_path / 's.json'
        p.write_text(json.dumps(describe('sphere', points=[[0.1, 0.2]])))
        assert load_scenario(p).points.shape == (1, 2)


class TestErrors:

    @pytest.mark.parametrize('desc, err', [
        ({'surface': {'kind': 'klein_bottle'}}, UnknownCatalogId),
        ({'surface': {'kind': 'plate'}, 'deformation': {'kind': 'twist'}}, UnknownCatalogId),
        ({'surface': {'kind': 'cylinder', 'params': {'r': -1}}}, BadParameters),
        ({'surface': {'kind': 'plate'}, 'deformation': {'kind': 'isometric_roll', 'params': {'rho': 0}}}, BadParameters),
        ({'surface': {'kind': 'plate'}, 'deformation': {'kind': 'scale', 'params': {'beta': 1}}}, BadParameters),
        ({'surface': {'kind': 'plate'}, 'colour': 'red'}, InvalidInput),
        ({'schema_version': 2, 'surface': {'kind': 'plate'}}, InvalidInput),
        ({'surface': {'kind': 'plate'}, 'sample_points': [[2.0, 0.5]]}, OutOfDomain),
        ({'surface': {'kind': 'plate'}, 'material': {'mu': -1}}, ValueError),
        ({'surface': {'kind': 'sphere'}, 'deformation': {'kind': 'isometric_roll'}}, IncompatibleScenario),
    ])
    def test_rejected(self, desc, err):
        with pytest.raises(err):
            build_scenario(desc)

    def test_bad_json(self, tmp_path):
        p = tmp_path / 'bad.json'
        p.write_text('{"surface": ')
        with pytest.raises(InvalidInput):
            load_scenario(p)
