import pytest

from app import main
from memory import MemoryStore
from utils.timeHelper import from_iso

NOW = from_iso("2026-03-29T14:30:00Z")
DAY = 86400.0


@pytest.fixture
def state_dir(tmp_path):
    path = tmp_path / "state"
    path.mkdir()
    return path


@pytest.fixture
def memory(state_dir):
    return MemoryStore(state_dir)


@pytest.fixture
def cli(capsys):
    """
    Run the command line in-process; returns (exit code, stdout, stderr).
    """
    def run(*argv):
        code = main([str(arg) for arg in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
