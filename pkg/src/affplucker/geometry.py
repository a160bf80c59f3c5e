"""The affine space AG(n, q): points, canonical lines and planes, incidence.

Points are tuples of field codes.  Point indices follow lexicographic order of
the coordinate codes; line indices follow the order of canonical lines sorted
by (direction codes, base codes).  Both orders are part of the file formats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import NamedTuple

from .gf import FieldSpec, field_make

Point = tuple[int, ...]


class GeometryError(ValueError):
    """Invalid geometric input (coincident points, incident point, ...)."""


class DimensionError(GeometryError):
    """A theorem-level operation was asked for a space of too small dimension."""


class Line(NamedTuple):
    base: Point
    dir: Point


class Plane(NamedTuple):
    base: Point
    dirs: tuple[Point, Point]


class MeetKind(enum.Enum):
    EQUAL = "equal"
    POINT = "point"
    PARALLEL = "parallel"
    SKEW = "skew"


class Meet(NamedTuple):
    kind: MeetKind
    point: Point | None = None


# --- vector helpers -------------------------------------------------------------

def vadd(F: FieldSpec, u: Point, v: Point) -> Point:
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vsub(F: FieldSpec, u: Point, v: Point) -> Point:
    add, neg = F.add_table, F.neg_table
    return tuple(add[a][neg[b]] for a, b in zip(u, v))


def vscale(F: FieldSpec, t: int, v: Point) -> Point:
    row = F.mul_table[t]
    return tuple(row[a] for a in v)


def pivot(v: Point) -> int:
    for i, c in enumerate(v):
        if c:
            return i
    raise GeometryError("zero vector has no pivot")


def normalize_dir(F: FieldSpec, v: Point) -> Point:
    """Scale v so its first nonzero entry is 1."""
    return vscale(F, F.inv(v[pivot(v)]), v)


def rref(F: FieldSpec, rows) -> list[Point]:
    """Reduced row-echelon form; zero rows dropped."""
    rows = [list(r) for r in rows]
    out: list[list[int]] = []
    n = len(rows[0]) if rows else 0
    col = 0
    while rows and col < n:
        k = next((i for i, r in enumerate(rows) if r[col]), None)
        if k is None:
            col += 1
            continue
        r = rows.pop(k)
        r = list(vscale(F, F.inv(r[col]), r))
        rows = [list(vsub(F, s, vscale(F, s[col], r))) for s in rows]
        out = [list(vsub(F, s, vscale(F, s[col], r))) for s in out]
        out.append(r)
        rows = [s for s in rows if any(s)]
        col += 1
    return [tuple(r) for r in out]


def rank(F: FieldSpec, rows) -> int:
    return len(rref(F, rows))


def canonical_line(F: FieldSpec, base: Point, direction: Point) -> Line:
    d = normalize_dir(F, direction)
    k = pivot(d)
    return Line(vsub(F, base, vscale(F, base[k], d)), d)


def canonical_plane(F: FieldSpec, base: Point, d1: Point, d2: Point) -> Plane:
    dirs = rref(F, [d1, d2])
    if len(dirs) != 2:
        raise GeometryError("plane directions are linearly dependent")
    b = base
    for d in dirs:
        b = vsub(F, b, vscale(F, b[pivot(d)], d))
    return Plane(b, (dirs[0], dirs[1]))


# --- the space ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Space:
    """AG(n, q) with deterministic point and line enumerations."""

    n: int
    F: FieldSpec

    def __post_init__(self):
        if self.n < 1:
            raise GeometryError(f"dimension must be >= 1, got {self.n}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Space) and (self.n, self.F) == (other.n, other.F)

    def __hash__(self) -> int:
        return hash((self.n, self.F))

    def __repr__(self) -> str:
        return f"AG({self.n},{self.q})"

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def descriptor(self) -> dict:
        return {"n": self.n, "p": self.F.p, "h": self.F.h}

    @property
    def point_count(self) -> int:
        return self.q ** self.n

    @property
    def line_count(self) -> int:
        q, n = self.q, self.n
        return q ** (n - 1) * (q ** n - 1) // (q - 1)

    @property
    def star_size(self) -> int:
        return (self.q ** self.n - 1) // (self.q - 1)

    def require_dimension(self, at_least: int = 3) -> None:
        if self.n < at_least:
            raise DimensionError(f"{self!r} has dimension {self.n} < {at_least}")

    # enumerations

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(product(range(self.q), repeat=self.n))

    def point_index(self, P: Point) -> int:
        idx = 0
        for c in P:
            idx = idx * self.q + c
        return idx

    @cached_property
    def directions(self) -> tuple[Point, ...]:
        """Normalized directions in lexicographic code order."""
        return tuple(v for v in self.points if any(v) and v[pivot(v)] == 1)

    @cached_property
    def lines(self) -> tuple[Line, ...]:
        out = []
        for d in self.directions:
            k = pivot(d)
            out.extend(Line(b, d) for b in self.points if b[k] == 0)
        return tuple(out)

    @cached_property
    def _line_lookup(self) -> dict[Line, int]:
        return {ln: i for i, ln in enumerate(self.lines)}

    def line_index(self, a: Line) -> int:
        return self._line_lookup[a]

    @cached_property
    def line_point_indices(self) -> tuple[tuple[int, ...], ...]:
        """Sorted point indices on each line, by line index."""
        return tuple(
            tuple(sorted(self.point_index(P) for P in line_points(self, ln))) for ln in self.lines
        )

    @cached_property
    def line_point_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(s) for s in self.line_point_indices)

    @cached_property
    def stars(self) -> tuple[tuple[int, ...], ...]:
        """Line indices through each point, by point index."""
        buckets: list[list[int]] = [[] for _ in range(self.point_count)]
        for i, pts in enumerate(self.line_point_indices):
            for P in pts:
                buckets[P].append(i)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        """join_table[P][Q] is the index of the line through points P != Q; -1 on the diagonal."""
        N = self.point_count
        table = [[-1] * N for _ in range(N)]
        for i, pts in enumerate(self.line_point_indices):
            for P, Q in combinations(pts, 2):
                table[P][Q] = table[Q][P] = i
        return tuple(tuple(r) for r in table)

    @cached_property
    def direction_of_line(self) -> tuple[int, ...]:
        dir_index = {d: k for k, d in enumerate(self.directions)}
        return tuple(dir_index[ln.dir] for ln in self.lines)


@lru_cache(maxsize=None)
def make_space(n: int, p: int, h: int = 1) -> Space:
    return Space(n, field_make(p, h))


# --- operations -----------------------------------------------------------------

def enumerate_points(S: Space) -> tuple[Point, ...]:
    return S.points


def line_through(S: Space, P: Point, Q: Point) -> Line:
    if P == Q:
        raise GeometryError("line_through needs two distinct points")
    return canonical_line(S.F, P, vsub(S.F, Q, P))


def line_points(S: Space, a: Line) -> frozenset[Point]:
    F = S.F
    return frozenset(vadd(F, a.base, vscale(F, t, a.dir)) for t in F.elements)


def on_line(S: Space, P: Point, a: Line) -> bool:
    return canonical_line(S.F, P, a.dir) == a


def intersect(S: Space, a: Line, b: Line) -> Meet:
    if a == b:
        return Meet(MeetKind.EQUAL)
    common = line_points(S, a) & line_points(S, b)
    if common:
        (P,) = common
        return Meet(MeetKind.POINT, P)
    if a.dir == b.dir:
        return Meet(MeetKind.PARALLEL)
    return Meet(MeetKind.SKEW)


def span_plane(S: Space, a: Line, P: Point) -> Plane:
    if on_line(S, P, a):
        raise GeometryError(f"point {P} is incident with the line")
    return canonical_plane(S.F, a.base, a.dir, vsub(S.F, P, a.base))


def plane_points(S: Space, E: Plane) -> frozenset[Point]:
    F = S.F
    d1, d2 = E.dirs
    return frozenset(
        vadd(F, E.base, vadd(F, vscale(F, s, d1), vscale(F, t, d2)))
        for s in F.elements
        for t in F.elements
    )


def on_plane(S: Space, P: Point, E: Plane) -> bool:
    return canonical_plane(S.F, P, *E.dirs) == E


def line_in_plane(S: Space, a: Line, E: Plane) -> bool:
    return on_plane(S, a.base, E) and rank(S.F, [*E.dirs, a.dir]) == 2


def star(S: Space, Q: Point) -> frozenset[Line]:
    return frozenset(S.lines[i] for i in S.stars[S.point_index(Q)])


def pencil(S: Space, Q: Point, E: Plane) -> frozenset[Line]:
    """Lines through Q inside the plane E."""
    if not on_plane(S, Q, E):
        raise GeometryError(f"point {Q} does not lie in the plane")
    F = S.F
    d1, d2 = E.dirs
    dirs = {normalize_dir(F, d1)}
    for s in F.elements:
        dirs.add(normalize_dir(F, vadd(F, vscale(F, s, d1), d2)))
    return frozenset(canonical_line(F, Q, d) for d in dirs)


def parallel_class(S: Space, a: Line) -> frozenset[Line]:
    k = pivot(a.dir)
    return frozenset(Line(b, a.dir) for b in S.points if b[k] == 0)


def collinear(S: Space, P: Point, Q: Point, R: Point) -> bool:
    """Collinearity of three distinct points.

    Decided both by incidence with the joining line and by counting lines
    common to the three stars; a disagreement raises.
    """
    if len({P, Q, R}) != 3:
        raise GeometryError("collinear needs three mutually distinct points")
    direct = on_line(S, R, line_through(S, P, Q))
    iP, iQ, iR = (S.point_index(X) for X in (P, Q, R))
    common = set(S.stars[iP]) & set(S.stars[iQ]) & set(S.stars[iR])
    if direct != (len(common) == 1):
        raise AssertionError(f"collinearity tests disagree on {P}, {Q}, {R}")
    return direct


def collinear_indices(S: Space, P: int, Q: int, R: int) -> bool:
    """Fast collinearity on point indices (mutually distinct)."""
    return S.join_table[P][Q] == S.join_table[P][R]


def triple_star_count(S: Space, P: int, Q: int, R: int) -> int:
    return len(set(S.stars[P]) & set(S.stars[Q]) & set(S.stars[R]))


def point_to_json(P: Point) -> list[int]:
    return list(P)


def line_to_json(a: Line) -> dict:
    return {"base": list(a.base), "dir": list(a.dir)}


def plane_to_json(E: Plane) -> dict:
    return {"base": list(E.base), "dirs": [list(d) for d in E.dirs]}
