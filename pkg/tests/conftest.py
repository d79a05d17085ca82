import math
from pathlib import Path

import numpy as np
import pytest

from optomott import _kernels
from optomott.cavity import DimensionlessCavity, MirrorSpec
from optomott.config import load_config
from optomott.pipeline import Scenario, build_scenario

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once, up front, so timed tests measure the
    # algorithms rather than compiler startup
    _kernels.steady_roots(100.0, -0.1, 0.3, 0.05, 10.0, 512)
    _kernels.tridiag_lowest(np.array([[1.0, 2.0, 3.0]]), np.array([[0.1, 0.1]]), 2)


@pytest.fixture(scope="session")
def fig2_mirror() -> MirrorSpec:
    return MirrorSpec.from_reflectance(0.99)


@pytest.fixture(scope="session")
def fig2_cavity(fig2_mirror) -> DimensionlessCavity:
    """The reduced bistability scenario: phi0 = -0.005 pi, k*eta = 0.1 pi."""
    return DimensionlessCavity(finesse=fig2_mirror.finesse, phi0=-0.005 * math.pi, beta=0.1 * math.pi)


@pytest.fixture(scope="session")
def dimensionless_config_path() -> Path:
    return CONFIG_DIR / "fig2_dimensionless.cfg"


@pytest.fixture(scope="session")
def physical_config_path() -> Path:
    return CONFIG_DIR / "paper_physical.cfg"


@pytest.fixture(scope="session")
def dimensionless_scenario(dimensionless_config_path) -> Scenario:
    return build_scenario(load_config(dimensionless_config_path))


@pytest.fixture(scope="session")
def physical_scenario(physical_config_path) -> Scenario:
    return build_scenario(load_config(physical_config_path))
