import subprocess
import sys

import pytest

from proofspace import _accel

PROBE = "from proofspace import _accel, _kernels; print(_accel.USE_NUMBA, _kernels.diagonal_of([[2, 4], [6, 8]]))"


@pytest.mark.parametrize("flag, expected", [("0", "False"), ("off", "False"), ("1", str(_accel.HAVE_NUMBA))])
def test_env_flag_selects_backend(flag, expected):
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, timeout=300,
                          env={"PROOFSPACE_NUMBA": flag, "PATH": "", "PYTHONPATH": ":".join(sys.path)})
    assert proc.returncode == 0, proc.stderr
    used, diag = proc.stdout.split(" ", 1)
    assert used == expected
    # both paths find the same diagonal up to order
    assert sorted(eval(diag)) == [2, 4]


def test_unknown_backend():
    from proofspace import _kernels
    with pytest.raises(ValueError):
        _kernels.diagonal_of([[1]], "gpu")
