from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from thetadeform.catalog import build_sphere, build_su_theta
from thetadeform.phase import DeformationMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def su3():
    return build_su_theta(3, "theta")


@pytest.fixture(scope="session")
def su4():
    return build_su_theta(4)


@pytest.fixture(scope="session")
def s5():
    return build_sphere(DeformationMatrix.symbolic(3, "lambda"), 3)
