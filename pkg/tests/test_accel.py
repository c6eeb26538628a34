import os
import subprocess
import sys

import pytest

from scimap import _accel


@pytest.mark.parametrize("value, expected", [("1", "numpy"), ("true", "numpy"), ("0", "numba"), ("", "numba")])
def test_env_flag_selects_backend(value, expected):
    env = dict(os.environ, SCIMAP_DISABLE_NUMBA=value)
    code = "from scimap._accel import backend; print(backend())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_use_backend_restores_previous():
    before = _accel.backend()
    with _accel.use_backend("numpy"):
        assert _accel.backend() == "numpy" and not _accel.numba_enabled()
    assert _accel.backend() == before
    with pytest.raises(ValueError):
        _accel.set_backend("cuda")
