"""Backend agreement: the compiled kernels and the numpy reference must
produce identical contractions, and the environment switch must select the
fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest

from pcpkit import backend
from pcpkit._core_numpy import NumpyKernel


def test_compiled_extension_is_built():
    assert backend._HAVE_COMPILED, "compiled kernel extension missing from this build"


def test_backend_name_prefers_compiled():
    if os.environ.get("PCPKIT_PURE_PYTHON", "").strip() in ("", "0"):
        assert backend.backend_name() == "compiled"


@pytest.mark.skipif(not backend._HAVE_COMPILED, reason="no compiled backend")
@pytest.mark.parametrize("order,dim", [(2, 2), (3, 2), (4, 3), (5, 2), (6, 2)])
def test_apply_agreement(order, dim):
    rng = np.random.default_rng(order * 10 + dim)
    coeffs = rng.normal(size=(dim,) * order)
    X = rng.normal(size=(16, dim))
    a = backend.CompiledKernel(coeffs).apply(X)
    b = NumpyKernel(coeffs).apply(X)
    scale = max(1.0, np.abs(b).max())
    assert np.abs(a - b).max() <= 1e-12 * scale


@pytest.mark.skipif(not backend._HAVE_COMPILED, reason="no compiled backend")
@pytest.mark.parametrize("order,dim", [(2, 3), (3, 3), (4, 2), (5, 3)])
def test_jacobian_agreement(order, dim):
    rng = np.random.default_rng(order * 100 + dim)
    coeffs = rng.normal(size=(dim,) * order)
    X = rng.normal(size=(8, dim))
    a = backend.CompiledKernel(coeffs).jacobian(X)
    b = NumpyKernel(coeffs).jacobian(X)
    scale = max(1.0, np.abs(b).max())
    assert np.abs(a - b).max() <= 1e-12 * scale


def test_make_kernel_falls_back_above_max_order():
    if not backend._HAVE_COMPILED:
        pytest.skip("no compiled backend")
    big = np.zeros((1,) * (backend._core_c.MAX_ORDER + 1))
    k = backend.make_kernel(big)
    assert isinstance(k, NumpyKernel)


def test_pure_python_env_switch():
    code = (
        "from pcpkit.backend import backend_name; "
        "print(backend_name())"
    )
    env = dict(os.environ, PCPKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "numpy"


def test_solver_runs_on_pure_backend():
    code = (
        "import numpy as np\n"
        "from pcpkit.backend import backend_name\n"
        "from pcpkit.solver import solve\n"
        "from pcpkit.tensor_core import PcpInstance, Tensor\n"
        "assert backend_name() == 'numpy'\n"
        "c = np.zeros((2, 2, 2, 2)); c[0, 0, 0, 0] = 1; c[1, 1, 1, 1] = 1\n"
        "rep = solve(PcpInstance(Tensor(c), np.array([-1.0, -1.0])))\n"
        "assert rep.status == 'solved'\n"
        "assert np.abs(rep.solutions[0] - 1.0).max() < 1e-9\n"
        "print('ok')\n"
    )
    env = dict(os.environ, PCPKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
