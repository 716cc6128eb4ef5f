import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from shellstrain.catalog import scenario

settings.register_profile('shellstrain', deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile('shellstrain')


def random_rotation(rng):
    from shellstrain.tensor import rotation_from_vector
    return rotation_from_vector(rng.normal(size=3))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture(scope='session')
def generic():
    """Curved reference, polynomial deformation and a non-constant microrotation."""
    return scenario('monge', 'polynomial', 'rotvec_field',
                    deformation_params={'coeffs': [[0, 0.1, 0.05, 0.02], [0, 0.03, -0.1, 0, 0.05],
                                                   [0.02, 0, 0, 0.1, 0, -0.1]]},
                    rotation_params={'coeffs': [[0.1, 0.2], [0, 0, 0.3], [0.05, 0.1, -0.1]]})


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section('acceptance criteria')
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
