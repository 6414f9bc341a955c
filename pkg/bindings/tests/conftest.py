import json
import subprocess
import sys

import pandas as pd
import pytest

# six short curves over five time points; known ranking with a tie at
# the top region and two curves never inside any band
GOLDEN = {
    "f_0": [1, 2, 3, 2, 1],
    "f_1": [2, 4, 5, 6, 2],
    "f_2": [3, 4, 4, 2, 1],
    "f_3": [6.0, 7.0, 6.5, 6.0, 7.0],
    "f_4": [9, 9, 12, 11, 11],
    "f_5": [8, 8, 10, 10, 9],
}


@pytest.fixture
def golden_frame() -> pd.DataFrame:
    return pd.DataFrame(GOLDEN, index=["x_0", "x_1", "x_2", "x_3", "x_4"])


def run_cli(*argv: str) -> subprocess.CompletedProcess:
    proc = subprocess.run(
        [sys.executable, "-m", "depthkit", *argv],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def cli_json(tmp_path, *argv: str) -> dict:
    """Run a depthkit command with --out into tmp_path and load the JSON."""
    out = tmp_path / "cli_out.json"
    run_cli(*argv, "--quiet", "--out", str(out))
    return json.loads(out.read_text())
