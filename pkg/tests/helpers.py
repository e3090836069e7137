"""Shared builders for the test-suite."""

import random
from pathlib import Path as FsPath

from qborel.quiver import Arrow, BoundQuiver, enumerate_basis
from qborel.spec_io import load_spec

FIXTURES = FsPath(__file__).parent / "fixtures"


def fixture(name):
    """(spec, algebra, order) for a fixture file such as 'fixA'."""
    spec = load_spec(FIXTURES / f"{name}.qv")
    return spec, enumerate_basis(spec.quiver), spec.order


def random_acyclic_quiver(rng: random.Random, max_vertices=6, max_arrows=10, max_relations=3):
    """Random acyclic quiver with a few monomial relations of length 2 or 3."""
    n = rng.randint(1, max_vertices)
    verts = [str(k) for k in range(1, n + 1)]
    topo = verts[:]
    rng.shuffle(topo)
    arrows = []
    if n > 1:
        for k in range(rng.randint(0, max_arrows)):
            a, b = sorted(rng.sample(range(n), 2))
            arrows.append(Arrow(f"x{k}", topo[a], topo[b]))
    q = BoundQuiver(verts, arrows)
    A = enumerate_basis(q)
    long_paths = [p for p in A.basis if p.length in (2, 3)]
    rels = rng.sample(long_paths, min(len(long_paths), rng.randint(0, max_relations)))
    return BoundQuiver(verts, arrows, rels)


def random_instances(count, seed=2024):
    """Yield (algebra, total order chain) pairs from a fixed seed."""
    rng = random.Random(seed)
    for _ in range(count):
        q = random_acyclic_quiver(rng)
        chain = list(q.vertices)
        rng.shuffle(chain)
        yield enumerate_basis(q), chain
