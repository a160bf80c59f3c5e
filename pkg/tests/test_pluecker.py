from itertools import combinations

import networkx as nx
import pytest

from affplucker.geometry import Line, canonical_plane, line_points, make_space, plane_points, span_plane
from affplucker.pluecker import (
    BoundExceeded,
    build_graph,
    classify_clique,
    components,
    enumerate_maximal_cliques,
    is_maximal_clique,
    nonstar_maximal_clique,
    quotient_space,
    related,
)
from affplucker.maps import concurrence_graph


def test_related_examples(ag23, ag32):
    a = ag23.lines[0]
    assert related(ag23, a, a)
    assert not related(ag23, Line((0, 0), (1, 0)), Line((0, 1), (1, 0)))
    from affplucker.geometry import line_through

    s1 = line_through(ag32, (0, 0, 0), (1, 0, 0))
    s2 = line_through(ag32, (0, 1, 0), (0, 0, 1))
    assert not related(ag32, s1, s2)


def test_ag32_graph_is_triangular_graph(ag32):
    g = build_graph(ag32)
    assert g.vertex_count == 28 and g.edge_count == 168 == 28 * 12 // 2
    pairs = [frozenset(pts) for pts in ag32.line_point_indices]
    for i, j in combinations(range(28), 2):
        assert g.adjacent(i, j) == bool(pairs[i] & pairs[j])
    # and T(8) as built by networkx: the line graph of K8
    G = nx.Graph([(i, j) for i in range(28) for j in g.neighbors[i]])
    assert nx.is_isomorphic(G, nx.line_graph(nx.complete_graph(8)))


def test_ag33_graph_size(ag33):
    g = build_graph(ag33)
    assert g.vertex_count == 117


def test_ag22_graph_is_k6_minus_matching(ag22):
    g = build_graph(ag22)
    assert g.vertex_count == 6 and g.edge_count == 12
    non_adjacent = [(i, j) for i, j in combinations(range(6), 2) if not g.adjacent(i, j)]
    assert len(non_adjacent) == 3 and len({v for e in non_adjacent for v in e}) == 6


def test_graph_bound():
    with pytest.raises(BoundExceeded):
        build_graph(make_space(5, 7))


def test_components_plane_unrelated_are_parallel_classes(ag23):
    g = build_graph(ag23)
    comps = components(g, "unrelated")
    assert len(comps) == 4
    dirs = ag23.direction_of_line
    assert all(len({dirs[i] for i in c}) == 1 for c in comps)


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2)])
def test_components_connected(n, p):
    g = build_graph(make_space(n, p))
    assert len(components(g, "unrelated")) == 1
    assert len(components(g, "related")) == 1


def test_components_related_plane(ag23):
    assert len(components(build_graph(ag23), "related")) == 1


def test_star_is_maximal_clique_but_pencil_is_not(ag32, ag33):
    g = concurrence_graph(ag32)
    assert is_maximal_clique(g, ag32.stars[0])
    g3 = concurrence_graph(ag33)
    Q = ag33.points[0]
    E = canonical_plane(ag33.F, Q, (1, 0, 0), (0, 1, 0))
    from affplucker.geometry import pencil

    pen = [ag33.line_index(a) for a in pencil(ag33, Q, E)]
    assert not is_maximal_clique(g3, pen)


def test_clique_enumeration_ag32(ag32):
    g = concurrence_graph(ag32)
    found = enumerate_maximal_cliques(g)
    kinds = [classify_clique(ag32, c) for c in found]
    stars = [k for k in kinds if k.kind == "star"]
    nonstars = [k for k in kinds if k.kind == "nonstar"]
    assert len(stars) == 8 and all(len(k.lines) == 7 for k in stars)
    assert len(nonstars) == 56 and all(len(k.lines) == 3 for k in nonstars)
    assert len(found) == 64
    # oracle: networkx's independent enumeration
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from((i, j) for i in range(g.vertex_count) for j in g.neighbors[i])
    assert {tuple(sorted(c)) for c in nx.find_cliques(G)} == set(found)


def test_clique_enumeration_ag22(ag22):
    found = enumerate_maximal_cliques(concurrence_graph(ag22))
    kinds = sorted(classify_clique(ag22, c).kind for c in found)
    # four point stars and the four triangles of point triples
    assert kinds == ["nonstar"] * 4 + ["star"] * 4


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_every_nonstar_is_coplanar_with_no_common_point(n, p):
    S = make_space(n, p)
    for c in enumerate_maximal_cliques(concurrence_graph(S)):
        cls = classify_clique(S, c)
        assert cls.kind in ("star", "nonstar")
        if cls.kind == "nonstar":
            pts = [S.line_point_sets[i] for i in c]
            assert not frozenset.intersection(*pts)
            assert frozenset.union(*pts) <= {S.point_index(P) for P in plane_points(S, cls.plane)}


def test_deterministic_enumeration_order(ag23):
    g = concurrence_graph(ag23)
    assert enumerate_maximal_cliques(g) == enumerate_maximal_cliques(g)


def test_nonstar_construction_plane(ag23):
    Q = (0, 0)
    E = canonical_plane(ag23.F, Q, (1, 0), (0, 1))
    lines = nonstar_maximal_clique(ag23, Q, E)
    idx = sorted(ag23.line_index(a) for a in lines)
    assert len(idx) == 4
    assert is_maximal_clique(concurrence_graph(ag23), idx)
    assert not frozenset.intersection(*(line_points(ag23, a) for a in lines))
    assert len(set(idx) & set(ag23.stars[0])) == ag23.q


@pytest.mark.parametrize("n,p,h", [(3, 2, 1), (3, 3, 1), (2, 2, 2), (3, 2, 2)])
def test_nonstar_construction_everywhere(n, p, h):
    S = make_space(n, p, h)
    g = concurrence_graph(S) if S.line_count <= 400 else None
    a = S.lines[0]
    off = next(P for P in S.points if P not in line_points(S, a))
    E = span_plane(S, a, off)
    for Q in sorted(plane_points(S, E))[:4]:
        lines = nonstar_maximal_clique(S, Q, E)
        idx = sorted(S.line_index(x) for x in lines)
        assert len(idx) == S.q + 1
        assert classify_clique(S, idx).kind == "nonstar"
        assert len(set(idx) & set(S.stars[S.point_index(Q)])) == S.q
        if g is not None:
            assert is_maximal_clique(g, idx)


@pytest.mark.parametrize(
    "n,p,points,lines,size",
    [(3, 2, 7, 7, 3), (3, 3, 13, 13, 4), (4, 2, 15, 35, 3), (2, 3, 4, 1, 4)],
)
def test_quotient_space_counts(n, p, points, lines, size):
    S = make_space(n, p)
    for Q in S.points[:3]:
        qs = quotient_space(S, Q)
        assert len(qs.points) == points
        assert len(qs.lines) == lines
        assert all(len(ln) == size for ln in qs.lines)
        assert qs.dimension == n - 1


def test_fano_plane_from_quotient(ag32):
    qs = quotient_space(ag32, ag32.points[0])
    G = nx.Graph()
    for k, ln in enumerate(qs.lines):
        G.add_edges_from((("L", k), ("P", x)) for x in ln)
    fano = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    H = nx.Graph()
    for k, ln in enumerate(fano):
        H.add_edges_from((("L", k), ("P", x)) for x in ln)
    assert nx.is_isomorphic(G, H)


def test_quotient_needs_dimension_two():
    from affplucker.geometry import DimensionError

    with pytest.raises(DimensionError):
        quotient_space(make_space(1, 3), (0,))
