import os
import subprocess
import sys

import numpy as np
import pytest

from circjoin import _kernels

needs_numba = pytest.mark.skipif(
    not _kernels.HAVE_NUMBA, reason="numba is not installed"
)

SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")


@needs_numba
@pytest.mark.parametrize("k", [1, 2, 3, 8, 31, 128])
def test_circulant_eigenvalue_paths_agree(k):
    rng = np.random.default_rng(k)
    c = rng.normal(size=k) + 1j * rng.normal(size=k)
    powers = np.exp(2j * np.pi * np.arange(k) / k)
    a = _kernels.circulant_eigenvalues_numpy(c, powers)
    b = _kernels.circulant_eigenvalues_numba(c, powers)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@needs_numba
@pytest.mark.parametrize("n", [2, 5, 17, 64])
def test_rhs_paths_agree(n):
    rng = np.random.default_rng(n)
    theta = rng.uniform(-np.pi, np.pi, n)
    adj = rng.uniform(0.0, 1.0, (n, n))
    np.fill_diagonal(adj, 0.0)
    omega = rng.normal(size=n)
    a = _kernels.kuramoto_rhs_numpy(theta, adj, omega, 0.7)
    b = _kernels.kuramoto_rhs_numba(theta, adj, omega, 0.7)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@needs_numba
def test_rk4_paths_agree():
    rng = np.random.default_rng(3)
    n = 10
    theta0 = rng.uniform(-np.pi, np.pi, n)
    adj = rng.uniform(0.0, 1.0, (n, n))
    np.fill_diagonal(adj, 0.0)
    omega = np.zeros(n)
    ta, bad_a = _kernels.rk4_trajectory_numpy(theta0, adj, omega, 0.5, 0.01, 300)
    tb, bad_b = _kernels.rk4_trajectory_numba(theta0, adj, omega, 0.5, 0.01, 300)
    assert bad_a == bad_b == -1
    np.testing.assert_allclose(ta, tb, rtol=0, atol=1e-9)


def test_default_binding_matches_flag():
    if _kernels.USING_NUMBA:
        assert _kernels.kuramoto_rhs is _kernels.kuramoto_rhs_numba
    else:
        assert _kernels.kuramoto_rhs is _kernels.kuramoto_rhs_numpy


def _run_probe(extra_env):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    env.update(extra_env)
    code = (
        "import numpy as np\n"
        "from circjoin import _kernels, CirculantMatrix\n"
        "print(int(_kernels.USING_NUMBA))\n"
        "eig = CirculantMatrix([0, 1, 0, 1]).eigenvalues()\n"
        "print(np.abs(eig - np.array([2, 0, -2, 0])).max() < 1e-12)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    return out.stdout.split()


def test_env_flag_selects_numpy_fallback():
    flag_on = _run_probe({"CIRCJOIN_NO_NUMBA": "1"})
    assert flag_on == ["0", "True"]


@needs_numba
def test_env_flag_unset_uses_numba():
    flag_off = _run_probe({"CIRCJOIN_NO_NUMBA": ""})
    assert flag_off == ["1", "True"]
