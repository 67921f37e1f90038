import pathlib
import shutil

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def gcd_correct():
    return (FIXTURES / "gcd_correct.wl").read_text()


@pytest.fixture
def gcd_swapped():
    return (FIXTURES / "gcd_swapped.wl").read_text()


@pytest.fixture
def gcd_fixed():
    return (FIXTURES / "gcd_fixed.wl").read_text()


@pytest.fixture
def workdir(tmp_path):
    """Temp directory seeded with the .wl fixture programs."""
    for f in FIXTURES.glob("*.wl"):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


@pytest.fixture
def paired_session(gcd_correct, gcd_swapped):
    """The two-program session from the worked example, not yet started."""
    from dibug.session import DebugSession

    s = DebugSession()
    s.set_source("A", gcd_correct)
    s.add_program()
    s.set_source("B", gcd_swapped)
    s.set_inputs("A", [2, 4])
    s.set_inputs("B", [2, 4])
    return s
