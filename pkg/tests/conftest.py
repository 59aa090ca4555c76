import numpy as np
import pytest

from relchron import Branch, SpinScenarioConfig, run_scenario


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260826)


@pytest.fixture(scope="session")
def nd30():
    """Nondegenerate J=30 scenario (Fig. 3 parameter set)."""
    cfg = SpinScenarioConfig(
        J=30, g=0.17, eps=0.32, Ecal=1.0, a=1.0,
        branch=Branch.NONDEGENERATE, n_times=400,
    )
    return run_scenario(cfg)


@pytest.fixture(scope="session")
def deg30():
    """Degenerate J=30 scenario (Fig. 4 parameter set)."""
    cfg = SpinScenarioConfig(
        J=30, g=0.29, eps=1.0, Ecal=1.0, a=1.0,
        branch=Branch.DEGENERATE_PLUS, n_times=400,
    )
    return run_scenario(cfg)


@pytest.fixture(scope="session")
def nd8():
    """Small nondegenerate scenario for cheap structural tests."""
    cfg = SpinScenarioConfig(
        J=8, g=0.17, eps=0.32, Ecal=1.0, a=1.0,
        branch=Branch.NONDEGENERATE, n_times=80,
    )
    return run_scenario(cfg)


@pytest.fixture(scope="session")
def deg8():
    cfg = SpinScenarioConfig(
        J=8, g=0.29, eps=1.0, Ecal=1.0, a=1.0,
        branch=Branch.DEGENERATE_PLUS, n_times=80,
    )
    return run_scenario(cfg)
