import subprocess
import sys

import numpy as np
import pytest

from holoprint import AutomorphismWord, backend_name
from holoprint import _kernels_py
from holoprint.wordgen import make_rng, random_word

try:
    from holoprint import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(
    _kernels is None, reason="compiled extension not built"
)


def corpus():
    rng = make_rng(30)
    words = [AutomorphismWord.identity(1), AutomorphismWord.identity(3)]
    for n in (1, 2, 3):
        for _ in range(4):
            words.append(random_word(rng, n, max_length=4, image_bound=1e3))
    points = {
        n: rng.standard_normal((25, n)) + 1j * rng.standard_normal((25, n))
        for n in (1, 2, 3)
    }
    return words, points


@needs_compiled
class TestBackendEquivalence:
    def test_eval_points(self):
        words, points = corpus()
        for w in words:
            Z = points[w.dimension]
            a = _kernels.eval_points(w._plan, Z.copy())
            b = _kernels_py.eval_points(w._plan, Z.copy())
            assert np.abs(a - b).max() < 1e-12 * (1 + np.abs(b).max())

    def test_eval_jacobians(self):
        words, points = corpus()
        for w in words:
            Z = points[w.dimension]
            va, ja = _kernels.eval_jacobians(w._plan, Z.copy())
            vb, jb = _kernels_py.eval_jacobians(w._plan, Z.copy())
            assert np.abs(va - vb).max() < 1e-12 * (1 + np.abs(vb).max())
            assert np.abs(ja - jb).max() < 1e-12 * (1 + np.abs(jb).max())

    def test_read_only_plan_accepted(self):
        # plan arrays are frozen on construction; both backends must cope
        rng = make_rng(31)
        w = random_word(rng, 2, max_length=3, image_bound=1e3)
        for kind, *arrays in w._plan:
            for arr in arrays[-2:] if kind == "shear" else arrays:
                if isinstance(arr, np.ndarray):
                    assert not arr.flags.writeable
        Z = np.ones((3, 2), dtype=complex)
        _kernels.eval_points(w._plan, Z.copy())
        _kernels_py.eval_points(w._plan, Z.copy())


class TestBackendSelection:
    def test_reported_backend_is_valid(self):
        assert backend_name() in ("compiled", "python")

    @needs_compiled
    def test_default_prefers_compiled(self):
        assert backend_name() == "compiled"

    def _run(self, env_value):
        code = (
            "import holoprint, numpy as np\n"
            "w = holoprint.parse_automorphism('shear(2, z1^2)', 2)\n"
            "v = holoprint.evaluate(w, np.array([1.0+0j, 0.0+0j]))\n"
            "assert np.allclose(v, [1.0, 1.0]), v\n"
            "print(holoprint.backend_name())\n"
        )
        return subprocess.run(
            [sys.executable, "-c", code],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "HOLOPRINT_BACKEND": env_value},
        )

    def test_python_backend_forced(self):
        proc = self._run("python")
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "python"

    @needs_compiled
    def test_compiled_backend_forced(self):
        proc = self._run("compiled")
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "compiled"

    def test_unknown_backend_rejected_at_import(self):
        proc = self._run("fortran")
        assert proc.returncode != 0
        assert "HOLOPRINT_BACKEND" in proc.stderr
