from collections.abc import Generator
from pathlib import Path

import pytest

from app.core.config import Settings, settings
from app.gue.free_energy import assemble_gue_free_energy, even_free_energy
from app.gue.wick import default_oracle
from app.toda.sseries import SSeries
from app.witten.free_energy import WittenFreeEnergy, witten_free_energy

# Small enough to assemble in seconds, large enough for s_1 s_2 and s_2 s_4 terms.
G_MAX = 3
N_MAX = 2
I_MAX = 6
EPS_ORDER = 4


@pytest.fixture(autouse=True)
def restore_settings() -> Generator[None, None, None]:
    """The CLI installs its settings globally; put the defaults back afterwards."""
    saved = {name: getattr(settings, name) for name in Settings.model_fields}
    yield
    for name, value in saved.items():
        setattr(settings, name, value)
    default_oracle.cache_clear()


@pytest.fixture(scope="session")
def gue_free_energy() -> SSeries:
    return assemble_gue_free_energy(G_MAX, N_MAX, I_MAX, EPS_ORDER)


@pytest.fixture(scope="session")
def gue_even_free_energy() -> SSeries:
    return even_free_energy(G_MAX, N_MAX, I_MAX, EPS_ORDER)


@pytest.fixture(scope="session")
def witten_energy() -> WittenFreeEnergy:
    return witten_free_energy(6, 1)


@pytest.fixture
def cache_path(tmp_path: Path) -> Path:
    return tmp_path / "maps.json"
