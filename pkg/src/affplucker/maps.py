"""Line maps, point maps, and the passage between them.

A collineation induces a line map by joining image points; conversely a line
map of the right kind yields a point map by intersecting the images of two
adjacent lines through each point.  Maps are tables over global indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import kernels
from .geometry import DimensionError, GeometryError, Space, make_space
from .pluecker import ConcurrenceGraph, build_graph


class MapError(ValueError):
    """A map table is malformed or violates an operation's precondition."""


class WellDefinednessViolation(MapError):
    """Two adjacent line pairs through one point have image pairs meeting elsewhere.

    ``witness`` names the point, the reference pair, the violating pair (both
    as global line indices) and what each image pair meets in.
    """

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@lru_cache(maxsize=None)
def concurrence_graph(S: Space) -> ConcurrenceGraph:
    return build_graph(S)


class PointMapKind(enum.Enum):
    KAPPA = "kappa"
    LAMBDA = "lambda"
    PLAIN = "plain"


def _space_json(S: Space) -> dict:
    return S.descriptor


@dataclass(frozen=True)
class LineMap:
    src: Space
    dst: Space
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.src.line_count:
            raise MapError(f"line map has {len(self.table)} entries, expected {self.src.line_count}")
        if len(set(self.table)) != len(self.table) or self.src.line_count != self.dst.line_count:
            raise MapError("line map is not a bijection")
        if self.table and not (0 <= min(self.table) and max(self.table) < self.dst.line_count):
            raise MapError("line map image out of range")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def compose(self, other: LineMap) -> LineMap:
        """Apply self, then other."""
        return LineMap(self.src, other.dst, tuple(other.table[t] for t in self.table))

    def to_json(self) -> dict:
        return {
            "src": _space_json(self.src),
            "dst": _space_json(self.dst),
            "map": [[i, t] for i, t in enumerate(self.table)],
        }

    @classmethod
    def from_json(cls, data: dict) -> LineMap:
        src = make_space(**data["src"])
        dst = make_space(**data["dst"])
        pairs = sorted(data["map"])
        if [i for i, _ in pairs] != list(range(src.line_count)):
            raise MapError("line map must list every source index exactly once")
        return cls(src, dst, tuple(t for _, t in pairs))


@dataclass(frozen=True)
class PointMap:
    src: Space
    dst: Space
    table: tuple[int, ...]
    kind: PointMapKind = PointMapKind.PLAIN

    def __post_init__(self):
        if len(self.table) != self.src.point_count:
            raise MapError(f"point map has {len(self.table)} entries, expected {self.src.point_count}")
        if self.kind is not PointMapKind.PLAIN and len(set(self.table)) != len(self.table):
            raise MapError(f"{self.kind.name} point map is not injective")
        if self.kind is PointMapKind.KAPPA and self.src.point_count != self.dst.point_count:
            raise MapError("KAPPA point map is not surjective")

    @property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def bijective(self) -> bool:
        return self.injective and len(self.table) == self.dst.point_count

    def to_json(self) -> dict:
        return {
            "src": _space_json(self.src),
            "dst": _space_json(self.dst),
            "kind": self.kind.value,
            "map": [[i, t] for i, t in enumerate(self.table)],
        }


@dataclass(frozen=True)
class Collineation:
    """A point bijection certified to preserve collinearity and non-collinearity."""

    point_map: PointMap = field()

    def __post_init__(self):
        if not is_collineation(self.point_map):
            raise MapError("point map is not a collineation")

    @property
    def src(self) -> Space:
        return self.point_map.src

    @property
    def dst(self) -> Space:
        return self.point_map.dst

    @property
    def table(self) -> tuple[int, ...]:
        return self.point_map.table


def identity_line_map(S: Space) -> LineMap:
    return LineMap(S, S, tuple(range(S.line_count)))


def identity_point_map(S: Space) -> PointMap:
    return PointMap(S, S, tuple(range(S.point_count)))


# --- checks ---------------------------------------------------------------------

def _pair_counts(f: LineMap, complement: bool = False) -> tuple[int, int, int]:
    gs, gd = concurrence_graph(f.src), concurrence_graph(f.dst)
    a, b = gs.adj_bytes, gd.adj_bytes
    if complement:
        a = bytes(1 - x for x in a)
        b = bytes(1 - x for x in b)
    return kernels.count_preserved_pairs(f.table, a, b, f.src.line_count)


def is_isomorphism(f: LineMap) -> bool:
    """Relatedness preserved in both directions.

    Decided from the related pairs and independently from the unrelated pairs;
    the two verdicts must agree.
    """
    _, fwd, bwd = _pair_counts(f)
    via_related = fwd == 0 and bwd == 0
    _, cfwd, cbwd = _pair_counts(f, complement=True)
    via_unrelated = cfwd == 0 and cbwd == 0
    if via_related != via_unrelated:
        raise AssertionError("isomorphism verdicts via related and unrelated pairs disagree")
    return via_related


def satisfies_forward(f: LineMap) -> bool:
    """Related lines go to related lines (one direction only)."""
    return _pair_counts(f)[1] == 0


def edge_count_lemma(f: LineMap) -> dict:
    """Finite-space argument: a bijection with the forward property between
    graphs of equal edge count maps edges onto edges, hence is an isomorphism.

    Returns the lemma's verdict next to the direct check.
    """
    es, ed = concurrence_graph(f.src).edge_count, concurrence_graph(f.dst).edge_count
    forward = satisfies_forward(f)
    predicted = forward and es == ed
    return {
        "forward": forward,
        "edges_src": es,
        "edges_dst": ed,
        "lemma_predicts_isomorphism": predicted,
        "is_isomorphism": is_isomorphism(f),
    }


def is_collineation(m: PointMap) -> bool:
    """Bijective, with collinear triples going to collinear triples both ways.

    For a bijection this is the same as: every line's image lies on a line and
    every line's preimage lies on a line.
    """
    if not m.bijective or m.src.point_count != m.dst.point_count:
        return False
    S, T = m.src, m.dst
    if S.q != T.q:
        return False
    jt_dst, jt_src = T.join_table, S.join_table
    inv = [0] * len(m.table)
    for i, t in enumerate(m.table):
        inv[t] = i
    for pts in S.line_point_indices:
        img = [m.table[P] for P in pts]
        ln = jt_dst[img[0]][img[1]]
        if any(jt_dst[img[0]][x] != ln for x in img[2:]):
            return False
    for pts in T.line_point_indices:
        pre = [inv[P] for P in pts]
        ln = jt_src[pre[0]][pre[1]]
        if any(jt_src[pre[0]][x] != ln for x in pre[2:]):
            return False
    return True


def is_collineation_bruteforce(m: PointMap) -> bool:
    """Triple-by-triple version of :func:`is_collineation`; quadratic memory-free oracle."""
    if not m.bijective:
        return False
    S, T = m.src, m.dst
    for P, Q, R in combinations(range(S.point_count), 3):
        a = S.join_table[P][Q] == S.join_table[P][R]
        b = T.join_table[m.table[P]][m.table[Q]] == T.join_table[m.table[P]][m.table[R]]
        if a != b:
            return False
    return True


def is_affinity(m: PointMap) -> bool:
    """A collineation that also maps parallel lines to parallel lines, both ways."""
    if not is_collineation(m):
        return False
    f = induced_line_map(Collineation(m))
    dsrc, ddst = m.src.direction_of_line, m.dst.direction_of_line
    pairing: dict[int, int] = {}
    for i, t in enumerate(f.table):
        if pairing.setdefault(dsrc[i], ddst[t]) != ddst[t]:
            return False
    return len(set(pairing.values())) == len(pairing)


# --- constructions ----------------------------------------------------------------

def induced_line_map(k: Collineation | PointMap) -> LineMap:
    """The line map joining image points: the line QR goes to the line Q'R'."""
    pm = k.point_map if isinstance(k, Collineation) else k
    S, T = pm.src, pm.dst
    table = []
    for pts in S.line_point_indices:
        P, Q = pm.table[pts[0]], pm.table[pts[1]]
        image = T.join_table[P][Q]
        # every pair on the line must join to the same image line
        if any(T.join_table[P][pm.table[R]] != image for R in pts[2:]):
            raise MapError("point map does not take lines to lines")
        table.append(image)
    f = LineMap(S, T, tuple(table))
    if not is_isomorphism(f):
        raise AssertionError("induced line map is not an isomorphism")
    return f


def _intersection_point(T: Space, i: int, j: int) -> int | None:
    common = T.line_point_sets[i] & T.line_point_sets[j]
    if len(common) == 1:
        return next(iter(common))
    return None


def reconstruct_point_map(f: LineMap, mode: PointMapKind | str = PointMapKind.KAPPA, *, enforce_dimension: bool = True) -> PointMap:
    """Point map sending the meet of two adjacent lines to the meet of their images.

    Well-definedness is checked over every adjacent pair through every point.
    ``enforce_dimension=False`` skips the target-dimension precondition so the
    map can be probed on planes.
    """
    mode = PointMapKind(mode) if isinstance(mode, str) else mode
    S, T = f.src, f.dst
    if enforce_dimension:
        T.require_dimension(3)
    if mode is PointMapKind.KAPPA and not is_isomorphism(f):
        raise MapError("KAPPA reconstruction needs an isomorphism")
    if mode is PointMapKind.LAMBDA and not satisfies_forward(f):
        raise MapError("LAMBDA reconstruction needs the forward relatedness condition")

    table = []
    for iQ, lines in enumerate(S.stars):
        ref = ref_pair = None
        for x, y in combinations(lines, 2):
            P = _intersection_point(T, f.table[x], f.table[y])
            if ref_pair is None:
                ref, ref_pair = P, (x, y)
                if P is None:
                    raise WellDefinednessViolation(
                        f"images of lines {x}, {y} through point {S.points[iQ]} do not meet",
                        {"point": list(S.points[iQ]), "reference_pair": [x, y], "reference_meet": None,
                         "violating_pair": [x, y], "violating_meet": None},
                    )
            elif P != ref:
                raise WellDefinednessViolation(
                    f"adjacent pairs through point {S.points[iQ]} have images meeting at different points",
                    {
                        "point": list(S.points[iQ]),
                        "reference_pair": list(ref_pair),
                        "reference_meet": list(T.points[ref]),
                        "violating_pair": [x, y],
                        "violating_meet": list(T.points[P]) if P is not None else None,
                    },
                )
        if ref_pair is None:
            raise GeometryError("a star with fewer than two lines has no meet")
        table.append(ref)

    pm = PointMap(S, T, tuple(table), PointMapKind.PLAIN)
    if mode is PointMapKind.KAPPA:
        if not is_collineation(pm):
            raise AssertionError("reconstructed KAPPA map is not a collineation")
        return PointMap(S, T, pm.table, PointMapKind.KAPPA)
    if not pm.injective:
        raise AssertionError("reconstructed LAMBDA map is not injective")
    if not preserves_collinearity_both_ways(pm):
        raise AssertionError("reconstructed LAMBDA map does not preserve (non-)collinearity")
    for iQ, lines in enumerate(S.stars):
        if sorted(f.table[x] for x in lines) != list(T.stars[pm.table[iQ]]):
            raise AssertionError(f"star of point {S.points[iQ]} is not mapped onto the image star")
    return PointMap(S, T, pm.table, PointMapKind.LAMBDA)


def preserves_collinearity_both_ways(m: PointMap) -> bool:
    """Injective-map version: a triple is collinear iff its image triple is."""
    S, T = m.src, m.dst
    for pts in S.line_point_indices:
        img = [m.table[P] for P in pts]
        ln = T.join_table[img[0]][img[1]]
        if any(T.join_table[img[0]][x] != ln for x in img[2:]):
            return False
    # a non-collinear triple with collinear image: for each pair, every third
    # point whose image is on the image line must already be on the line
    image_of = {t: i for i, t in enumerate(m.table)}
    for pts in S.line_point_indices:
        a, b = m.table[pts[0]], m.table[pts[1]]
        on_image = {image_of[X] for X in T.line_point_indices[T.join_table[a][b]] if X in image_of}
        if on_image != set(pts):
            return False
    return True


def star_transport(f: LineMap, point_map: PointMap) -> bool:
    """Every star goes onto the star of the image point."""
    S, T = f.src, f.dst
    return all(
        sorted(f.table[x] for x in lines) == list(T.stars[point_map.table[iQ]])
        for iQ, lines in enumerate(S.stars)
    )


def semicollineation_check(f: LineMap, Q) -> bool:
    """Whether f restricted to the star at Q sends collinear quotient triples to collinear ones.

    Quotient points are the lines through Q; three of them are collinear when
    coplanar.  Raises if the point image at Q cannot be reconstructed.
    """
    S, T = f.src, f.dst
    lam = reconstruct_point_map(f, PointMapKind.LAMBDA)
    iQ = S.point_index(tuple(Q))
    iQ2 = lam.table[iQ]
    from .pluecker import quotient_space

    src_q = quotient_space(S, S.points[iQ])
    dst_q = quotient_space(T, T.points[iQ2])
    dst_lines = {frozenset(ln) for ln in dst_q.lines}
    dst_points = set(dst_q.points)
    restricted = {x: f.table[x] for x in src_q.points}
    if set(restricted.values()) != dst_points:
        return False
    for ln in src_q.lines:
        for trio in combinations(ln, 3):
            img = {restricted[x] for x in trio}
            if not any(img <= L for L in dst_lines):
                return False
    return True


def restriction_is_bijective(f: LineMap, Q) -> bool:
    """Whether f maps the star at Q onto the star at the reconstructed image of Q."""
    S, T = f.src, f.dst
    lam = reconstruct_point_map(f, PointMapKind.LAMBDA)
    iQ = S.point_index(tuple(Q))
    return sorted(f.table[x] for x in S.stars[iQ]) == list(T.stars[lam.table[iQ]])


# --- counting -----------------------------------------------------------------------

def _prime_powers(q_max: int) -> list[tuple[int, int]]:
    from .gf import is_prime

    out = []
    for p in range(2, q_max + 1):
        if is_prime(p):
            h = 1
            while p ** h <= q_max:
                out.append((p, h))
                h += 1
    return sorted(out, key=lambda ph: (ph[0] ** ph[1], ph))


def line_count(n: int, q: int) -> int:
    return q ** (n - 1) * (q ** n - 1) // (q - 1)


def star_size(n: int, q: int) -> int:
    return (q ** n - 1) // (q - 1)


def count_constraint_search(n_max: int, q_max: int, n_min: int = 3) -> list[tuple[int, int, int, int]]:
    """Parameters (n, m, p, h) where AG(n, 2) and AG(m, p^h) agree in line count and star size."""
    sols = []
    for n in range(n_min, n_max + 1):
        for m in range(n_min, n_max + 1):
            for p, h in _prime_powers(q_max):
                q = p ** h
                if line_count(n, 2) == line_count(m, q) and star_size(n, 2) == star_size(m, q):
                    sols.append((n, m, p, h))
    return sols


# --- planes ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TranspositionResult:
    line_map: LineMap
    isomorphism: bool
    violation: WellDefinednessViolation | None
    star_images_are_stars: bool

    def certificate(self) -> dict:
        return {
            "isomorphism": self.isomorphism,
            "reconstruction": "WellDefinednessViolation" if self.violation else "ok",
            "witness": self.violation.witness if self.violation else None,
            "star_images_are_stars": self.star_images_are_stars,
        }


def _all_star_images_are_stars(f: LineMap) -> bool:
    T = f.dst
    dst_stars = {tuple(s) for s in T.stars}
    return all(tuple(sorted(f.table[x] for x in s)) in dst_stars for s in f.src.stars)


def plane_parallel_transposition(S: Space, a: int, b: int) -> TranspositionResult:
    """Swap two distinct parallel lines of a plane, fix every other line."""
    if S.n != 2:
        raise DimensionError(f"parallel transposition is a plane construction; got dimension {S.n}")
    if a == b:
        raise MapError("the two lines must be distinct")
    if S.direction_of_line[a] != S.direction_of_line[b]:
        raise MapError("the two lines must be parallel")
    table = list(range(S.line_count))
    table[a], table[b] = b, a
    f = LineMap(S, S, tuple(table))
    violation = None
    try:
        reconstruct_point_map(f, PointMapKind.KAPPA, enforce_dimension=False)
    except WellDefinednessViolation as exc:
        violation = exc
    return TranspositionResult(f, is_isomorphism(f), violation, _all_star_images_are_stars(f))


def parallel_classes(S: Space) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in S.directions]
    for i, d in enumerate(S.direction_of_line):
        classes[d].append(i)
    return classes


@dataclass(frozen=True)
class PlaneOrderResult:
    equal_order: bool
    line_map: LineMap | None
    verified: bool


def plane_order_criterion(S: Space, S2: Space, scramble: bool = False) -> PlaneOrderResult:
    """Plücker spaces on two planes are isomorphic iff the orders agree.

    When they do, pair parallel classes and lines within classes and verify the
    resulting bijection.  ``scramble`` rotates the class pairing and reverses
    lines within each class.
    """
    if S.n != 2 or S2.n != 2:
        raise DimensionError("the order criterion compares two planes")
    if S.q != S2.q:
        return PlaneOrderResult(False, None, False)
    src_classes, dst_classes = parallel_classes(S), parallel_classes(S2)
    k = len(src_classes)
    table = [0] * S.line_count
    for ci, cls in enumerate(src_classes):
        target = dst_classes[(ci + 1) % k] if scramble else dst_classes[ci]
        if scramble:
            target = target[::-1]
        for x, y in zip(cls, target):
            table[x] = y
    f = LineMap(S, S2, tuple(table))
    return PlaneOrderResult(True, f, is_isomorphism(f))


def stems_from_collineation(f: LineMap) -> bool:
    try:
        pm = reconstruct_point_map(f, PointMapKind.KAPPA, enforce_dimension=False)
    except WellDefinednessViolation:
        return False
    return induced_line_map(pm).table == f.table
