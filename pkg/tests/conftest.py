import json
import subprocess
import sys

import pytest


@pytest.fixture
def run_cli():
    def _run(*args, expect: int | None = 0):
        proc = subprocess.run(
            [sys.executable, "-m", "fano_lattice", *args],
            capture_output=True,
            text=True,
        )
        if expect is not None:
            assert proc.returncode == expect, proc.stderr or proc.stdout
        return proc

    return _run


@pytest.fixture
def write_json(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write
