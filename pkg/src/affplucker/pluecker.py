"""The affine Plücker space: lines of AG(n, q) under the relation "meet".

The concurrence graph stores adjacency (distinct lines sharing a point);
relatedness is adjacency or equality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Literal

import numpy as np

from .geometry import (
    DimensionError,
    GeometryError,
    Line,
    Plane,
    Point,
    Space,
    canonical_line,
    canonical_plane,
    intersect,
    MeetKind,
    on_plane,
    pencil,
    rank,
    vadd,
)

MAX_LINES = 10_000
DEFAULT_MAX_VERTICES = 200


class BoundExceeded(RuntimeError):
    """An instance exceeds a desk-scale bound."""


def max_vertices() -> int:
    return int(os.environ.get("PLUECKER_MAX_VERTICES", DEFAULT_MAX_VERTICES))


def related(S: Space, a: Line, b: Line) -> bool:
    return intersect(S, a, b).kind in (MeetKind.EQUAL, MeetKind.POINT)


@dataclass(frozen=True, eq=False)
class ConcurrenceGraph:
    space: Space
    adjacency: np.ndarray  # bool, symmetric, zero diagonal

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(row).tolist()) for row in self.adjacency)

    @cached_property
    def csr(self) -> tuple[list[int], list[int]]:
        indptr = [0]
        indices: list[int] = []
        for nb in self.neighbors:
            indices.extend(nb)
            indptr.append(len(indices))
        return indptr, indices

    @cached_property
    def adj_bytes(self) -> bytes:
        return self.adjacency.astype(np.uint8).tobytes()

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in nb) for nb in self.neighbors)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def related(self, i: int, j: int) -> bool:
        return i == j or bool(self.adjacency[i, j])

    def adjacency_list(self) -> list[list[int]]:
        return [list(nb) for nb in self.neighbors]


def build_graph(S: Space) -> ConcurrenceGraph:
    if S.line_count > MAX_LINES:
        raise BoundExceeded(f"{S!r} has {S.line_count} lines > {MAX_LINES}")
    inc = np.zeros((S.line_count, S.point_count), dtype=np.int32)
    for i, pts in enumerate(S.line_point_indices):
        inc[i, list(pts)] = 1
    adj = (inc @ inc.T) == 1
    np.fill_diagonal(adj, False)
    return ConcurrenceGraph(S, adj)


def components(g: ConcurrenceGraph, relation: Literal["related", "unrelated"] = "related") -> list[list[int]]:
    """Connected components under relatedness or under non-relatedness."""
    n = g.vertex_count
    if relation == "related":
        nbr = g.adjacency
    elif relation == "unrelated":
        nbr = ~g.adjacency
        np.fill_diagonal(nbr, False)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            v = stack.pop()
            for w in np.flatnonzero(nbr[v]).tolist():
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_clique(g: ConcurrenceGraph, C) -> bool:
    C = sorted(set(C))
    return all(g.adjacency[i, j] for i, j in combinations(C, 2))


def is_maximal_clique(g: ConcurrenceGraph, C) -> bool:
    C = set(C)
    if not is_clique(g, C):
        return False
    members = sorted(C)
    common = np.logical_and.reduce(g.adjacency[members], axis=0) if members else np.ones(g.vertex_count, bool)
    common[members] = False
    return not common.any()


def _bron_kerbosch(masks, R: list[int], P: int, X: int, out: list):
    if not P and not X:
        out.append(tuple(sorted(R)))
        return
    # pivot: lowest-index vertex of P|X with the most neighbours in P
    best, best_cnt = -1, -1
    PX = P | X
    while PX:
        low = PX & -PX
        u = low.bit_length() - 1
        cnt = bin(P & masks[u]).count("1")
        if cnt > best_cnt:
            best, best_cnt = u, cnt
        PX ^= low
    cand = P & ~masks[best]
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        R.append(v)
        _bron_kerbosch(masks, R, P & masks[v], X & masks[v], out)
        R.pop()
        P &= ~low
        X |= low
        cand ^= low


def enumerate_maximal_cliques(g: ConcurrenceGraph) -> list[tuple[int, ...]]:
    """All maximal cliques, each as a sorted tuple, in deterministic search order."""
    if g.vertex_count > max_vertices():
        raise BoundExceeded(f"{g.vertex_count} vertices > {max_vertices()}")
    out: list[tuple[int, ...]] = []
    _bron_kerbosch(g.neighbor_masks, [], (1 << g.vertex_count) - 1, 0, out)
    return out


@dataclass(frozen=True)
class CliqueClass:
    kind: Literal["star", "nonstar", "other"]
    lines: tuple[int, ...]
    center: Point | None = None
    plane: Plane | None = None

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "lines": list(self.lines),
            "center": list(self.center) if self.center is not None else None,
            "plane": {"base": list(self.plane.base), "dirs": [list(d) for d in self.plane.dirs]}
            if self.plane is not None
            else None,
        }


def classify_clique(S: Space, lines) -> CliqueClass:
    """Star, coplanar transversal set (one line per plane direction, no common point), or other."""
    lines = tuple(sorted(lines))
    common = frozenset.intersection(*(S.line_point_sets[i] for i in lines))
    if len(common) == 1:
        (P,) = common
        if set(lines) == set(S.stars[P]):
            return CliqueClass("star", lines, center=S.points[P])
        return CliqueClass("other", lines)
    if common or len(lines) != S.q + 1:
        return CliqueClass("other", lines)
    ls = [S.lines[i] for i in lines]
    if len({ln.dir for ln in ls}) != len(ls) or rank(S.F, [ln.dir for ln in ls]) != 2:
        return CliqueClass("other", lines)
    E = canonical_plane(S.F, ls[0].base, ls[0].dir, ls[1].dir)
    if not all(on_plane(S, ln.base, E) for ln in ls):
        return CliqueClass("other", lines)
    return CliqueClass("nonstar", lines, plane=E)


def nonstar_maximal_clique(S: Space, Q: Point, E: Plane) -> frozenset[Line]:
    """A maximal set of mutually related lines of E that is not a star.

    The pencil of E at Q with its lowest-index line translated along the
    direction of the second-lowest-index line.
    """
    if S.n < 2:
        raise DimensionError("non-star cliques need dimension >= 2")
    if not on_plane(S, Q, E):
        raise GeometryError(f"point {Q} does not lie in the plane")
    pen = sorted(pencil(S, Q, E), key=S.line_index)
    first, second = pen[0], pen[1]
    moved = canonical_line(S.F, vadd(S.F, first.base, second.dir), first.dir)
    return frozenset([moved, *pen[1:]])


@dataclass(frozen=True)
class QuotientSpace:
    """The projective space on the star of ``origin``; lines are the pencils at it."""

    origin: Point
    points: tuple[int, ...]
    lines: tuple[tuple[int, ...], ...]
    dimension: int

    def verify(self, q: int) -> None:
        pts = set(self.points)
        for ln in self.lines:
            if len(ln) != q + 1 or not set(ln) <= pts:
                raise AssertionError(f"quotient line {ln} is not a pencil of {q + 1} points")
        cover: dict[tuple[int, int], int] = {}
        for ln in self.lines:
            for pair in combinations(ln, 2):
                cover[pair] = cover.get(pair, 0) + 1
        for pair in combinations(sorted(pts), 2):
            if cover.get(pair, 0) != 1:
                raise AssertionError(f"quotient points {pair} lie on {cover.get(pair, 0)} lines")


def quotient_space(S: Space, Q: Point) -> QuotientSpace:
    if S.n < 2:
        raise DimensionError("the quotient at a point needs dimension >= 2")
    iQ = S.point_index(Q)
    star_lines = S.stars[iQ]
    pencils = set()
    for i, j in combinations(star_lines, 2):
        E = canonical_plane(S.F, Q, S.lines[i].dir, S.lines[j].dir)
        pencils.add(tuple(sorted(S.line_index(ln) for ln in pencil(S, Q, E))))
    qs = QuotientSpace(Q, tuple(star_lines), tuple(sorted(pencils)), S.n - 1)
    qs.verify(S.q)
    return qs


def coplanar_through(S: Space, lines) -> bool:
    """Whether lines through one common point lie in a common plane."""
    return rank(S.F, [S.lines[i].dir for i in lines]) <= 2
