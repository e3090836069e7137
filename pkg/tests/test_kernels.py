import os
import random
import subprocess
import sys

import pytest

from helpers import random_acyclic_quiver
from qborel import kernels
from qborel.census import FamilySpec, enumerate_structures, family_quiver, kernel_input
from qborel.quiver import BoundQuiver, enumerate_basis

needs_compiled = pytest.mark.skipif(kernels.compiled_census_chunk is None,
                                    reason="compiled extension not built")


def path_algebras():
    for key in [(1, 1, 1), (2, 1, 1), (1, 2, 2), (0, 2, 3)]:
        for opposite in (False, True):
            yield enumerate_basis(family_quiver(FamilySpec(*key, opposite)))
    rng = random.Random(7)
    for _ in range(10):
        q = random_acyclic_quiver(rng, max_vertices=6, max_arrows=9, max_relations=0)
        yield enumerate_basis(BoundQuiver(q.vertices, q.arrows))


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.census_chunk in (kernels.compiled_census_chunk, kernels.python_census_chunk)


@needs_compiled
def test_raw_chunks_identical():
    for A in path_algebras():
        n = len(A.vertices)
        inp = kernel_input(A)
        for first in range(n):
            assert kernels.compiled_census_chunk(n, *inp, first) == kernels.python_census_chunk(n, *inp, first)


@needs_compiled
def test_censuses_identical():
    for A in path_algebras():
        c = enumerate_structures(A, backend="compiled")
        p = enumerate_structures(A, backend="python")
        assert c.classes == p.classes
        assert (c.backend, p.backend) == ("compiled", "python")


def test_pure_python_fallback_selected():
    env = dict(os.environ, QB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from qborel import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"
