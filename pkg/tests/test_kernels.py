import array

import pytest
from hypothesis import given, settings, strategies as st

from affplucker import _kernels_py as pure
from affplucker.maps import concurrence_graph

compiled = pytest.importorskip("affplucker._kernels")


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 24))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    indptr, indices = [0], []
    for nb in nbrs:
        indices.extend(sorted(nb))
        indptr.append(len(indices))
    adj = bytearray(n * n)
    for u, nb in enumerate(nbrs):
        for v in nb:
            adj[u * n + v] = 1
    k = draw(st.integers(1, 3))
    colors = [draw(st.integers(0, k - 1)) for _ in range(n)]
    used = sorted(set(colors))
    colors = [used.index(c) for c in colors]
    return n, indptr, indices, bytes(adj), colors


def _equitable(indptr, indices, colors):
    """Brute oracle: vertices of one colour see the same number of each colour."""
    seen = {}
    for v, c in enumerate(colors):
        counts = [0] * (max(colors) + 1)
        for t in range(indptr[v], indptr[v + 1]):
            counts[colors[indices[t]]] += 1
        if seen.setdefault(c, counts) != counts:
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_refine_backends_agree(g):
    n, indptr, indices, adj, colors = g
    a = pure.refine(indptr, indices, colors)
    b = compiled.refine(array.array("i", indptr), array.array("i", indices), colors)
    assert a == b
    assert _equitable(indptr, indices, a)
    # refinement only splits cells
    assert all((colors[u] == colors[v]) or (a[u] != a[v]) for u in range(n) for v in range(n))


@settings(max_examples=200, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_pair_kernels_agree(g, rnd):
    n, indptr, indices, adj, _ = g
    perm = list(range(n))
    rnd.shuffle(perm)
    assert pure.is_automorphism(perm, indptr, indices, adj) == compiled.is_automorphism(perm, indptr, indices, adj)
    assert pure.count_preserved_pairs(perm, adj, adj, n) == compiled.count_preserved_pairs(perm, adj, adj, n)
    # brute-force meaning of is_automorphism
    expected = all(adj[perm[u] * n + perm[v]] == adj[u * n + v] for u in range(n) for v in range(n))
    assert pure.is_automorphism(perm, indptr, indices, adj) == expected


def test_identity_is_automorphism_of_ag33(ag33):
    g = concurrence_graph(ag33)
    indptr, indices = g.csr
    ident = list(range(g.vertex_count))
    assert compiled.is_automorphism(ident, indptr, indices, g.adj_bytes)
    agree, fwd, bwd = compiled.count_preserved_pairs(ident, g.adj_bytes, g.adj_bytes, g.vertex_count)
    assert (fwd, bwd) == (0, 0) and agree == 117 * 116


def test_unit_colouring_of_strongly_regular_graph_stays_unit(ag33):
    g = concurrence_graph(ag33)
    indptr, indices = g.csr
    assert set(compiled.refine(indptr, indices, [0] * 117)) == {0}


def test_forced_fallback_end_to_end():
    import os
    import subprocess
    import sys

    env = dict(os.environ, AFFPLUCKER_PURE_PYTHON="1")
    code = "import affplucker, sys; from affplucker.cli import main; print(affplucker.BACKEND); sys.exit(main(['verify', 'plucker-group', '-n', '3', '-p', '2']))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("python\n")
