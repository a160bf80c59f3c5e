"""Permutation groups at desk scale: affinity groups of AG(n, q) and the
automorphism group of the concurrence graph, computed independently.

Permutations are tuples in one-line notation; ``compose(a, b)`` applies ``a``
first.
"""

from __future__ import annotations

import array
from dataclasses import dataclass, field
from math import factorial, prod

from . import kernels
from .geometry import Space, vadd
from .maps import (
    Collineation,
    LineMap,
    MapError,
    PointMap,
    PointMapKind,
    WellDefinednessViolation,
    concurrence_graph,
    is_affinity,
    is_collineation,
    reconstruct_point_map,
)
from .pluecker import BoundExceeded, ConcurrenceGraph, max_vertices
from .report import FAIL, PASS, VerificationReport
from .rng import SplitMix64

CLOSURE_POINT_BOUND = 100
CLOSURE_ELEMENT_BOUND = 10 ** 6
MAX_WORD_LENGTH = 20


def compose(a, b) -> tuple[int, ...]:
    return tuple(b[x] for x in a)


def inverse(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def orbit(point: int, gens) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class StabilizerChain:
    """Deterministic Schreier-Sims.

    Base points are chosen as the first point moved by each new strong
    generator; transversals map the base point of a level to each orbit point.
    """

    def __init__(self, gens, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.level_gens: list[list[tuple[int, ...]]] = []
        self.trans: list[dict[int, tuple[int, ...]]] = []
        for g in gens:
            g = tuple(g)
            r, i = self.sift(g)
            if r != self.identity:
                self._add(r, i)
        self._complete()

    def _strong(self, i: int):
        return [g for level in self.level_gens[i:] for g in level]

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        gens = self._strong(i)
        t = {b: self.identity}
        queue = [b]
        for y in queue:
            for x in gens:
                z = x[y]
                if z not in t:
                    t[z] = compose(t[y], x)
                    queue.append(z)
        self.trans[i] = t

    def _add(self, g, i: int) -> None:
        if i == len(self.base):
            b = next(x for x in range(self.degree) if g[x] != x)
            self.base.append(b)
            self.level_gens.append([])
            self.trans.append({})
        self.level_gens[i].append(g)
        for j in range(i + 1):
            self._orbit(j)

    def sift(self, g, start: int = 0):
        for i in range(start, len(self.base)):
            y = g[self.base[i]]
            u = self.trans[i].get(y)
            if u is None:
                return g, i
            g = compose(g, inverse(u))
        return g, len(self.base)

    def _complete(self) -> None:
        changed = True
        while changed:
            changed = False
            for i in reversed(range(len(self.base))):
                t = self.trans[i]
                for y, uy in list(t.items()):
                    for x in self._strong(i):
                        h = compose(compose(uy, x), inverse(t[x[y]]))
                        r, j = self.sift(h, i + 1)
                        if r != self.identity:
                            self._add(r, j)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.trans]

    @property
    def order(self) -> int:
        return prod(self.orbit_sizes)

    def contains(self, g) -> bool:
        r, _ = self.sift(tuple(g))
        return r == self.identity


def closure_order(gens, degree: int, limit: int = CLOSURE_ELEMENT_BOUND) -> int:
    """Order of the generated group by explicit breadth-first closure."""
    if degree > 256:
        raise BoundExceeded("closure works on at most 256 points")
    tail = bytes(range(degree, 256))
    tables = [bytes(g) + tail for g in gens]
    ident = bytes(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for t in tables:
                f = e.translate(t)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        if len(seen) > limit:
            raise BoundExceeded(f"closure exceeds {limit} elements")
        frontier = nxt
    return len(seen)


# --- affinity group ---------------------------------------------------------------

def affinity_order_formula(n: int, p: int, h: int) -> int:
    q = p ** h
    return q ** n * h * prod(q ** n - q ** i for i in range(n))


def _point_perm(S: Space, fn) -> tuple[int, ...]:
    return tuple(S.point_index(fn(P)) for P in S.points)


def affinity_generators(S: Space) -> list[Collineation]:
    """Basis translations, a transvection, a primitive diagonal scaling, the
    coordinate swap and cycle, and the coordinatewise Frobenius map."""
    F, n = S.F, S.n
    perms = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        perms.append(_point_perm(S, lambda P, e=e: vadd(F, P, e)))
    if n >= 2:
        perms.append(_point_perm(S, lambda P: (F.add(P[0], P[1]),) + P[1:]))
        perms.append(_point_perm(S, lambda P: (P[1], P[0]) + P[2:]))
    if n >= 3:
        perms.append(_point_perm(S, lambda P: (P[-1],) + P[:-1]))
    if F.q > 2:
        w = F.primitive_element()
        perms.append(_point_perm(S, lambda P: (F.mul(w, P[0]),) + P[1:]))
    if F.h > 1:
        perms.append(_point_perm(S, lambda P: tuple(F.power(c, F.p) for c in P)))
    return [Collineation(PointMap(S, S, p)) for p in perms]


@dataclass(frozen=True)
class AffinityGroup:
    generators: list[Collineation]
    order: int
    order_formula: int
    order_chain: int
    order_closure: int | None

    @property
    def provenance(self) -> str:
        return "closure" if self.order_closure is not None else "chain+formula"


def affinity_group(S: Space, closure: bool | None = None) -> AffinityGroup:
    """Generators and order of the semilinear affine group of S.

    The order comes from the formula and is cross-checked by a stabilizer
    chain, and by explicit closure when ``closure`` (default: q^n <= 100).
    """
    if closure is None:
        closure = S.point_count <= CLOSURE_POINT_BOUND
    elif closure and S.point_count > CLOSURE_POINT_BOUND:
        raise BoundExceeded(f"closure mode needs q^n <= {CLOSURE_POINT_BOUND}")
    gens = affinity_generators(S)
    perms = [c.table for c in gens]
    formula = affinity_order_formula(S.n, S.F.p, S.F.h)
    chain = StabilizerChain(perms, S.point_count).order
    closed = closure_order(perms, S.point_count) if closure else None
    if chain != formula or (closed is not None and closed != formula):
        raise AssertionError(f"affinity group order mismatch: formula={formula} chain={chain} closure={closed}")
    return AffinityGroup(gens, formula, formula, chain, closed)


def random_affinity(S: Space, rng: SplitMix64, gens: list[Collineation] | None = None) -> Collineation:
    """A word of length 1..20 in the affinity generators."""
    gens = gens if gens is not None else affinity_generators(S)
    length = 1 + rng.below(MAX_WORD_LENGTH)
    perm = tuple(range(S.point_count))
    for _ in range(length):
        perm = compose(perm, gens[rng.below(len(gens))].table)
    return Collineation(PointMap(S, S, perm))


# --- graph automorphisms -------------------------------------------------------------

@dataclass
class AutomorphismResult:
    generators: list[tuple[int, ...]]
    order: int
    base: list[int]
    orbit_sizes: list[int]
    nodes: int
    certified: bool | None = None
    certificates: list[dict] = field(default_factory=list)


class _Search:
    """Individualization-refinement over ordered colourings."""

    def __init__(self, g: ConcurrenceGraph):
        self.n = g.vertex_count
        indptr, indices = g.csr
        self.indptr = array.array("i", indptr)
        self.indices = array.array("i", indices)
        self.adj = g.adj_bytes
        self.nbrs = g.neighbors
        self.nodes = 0

    def refine(self, colors):
        self.nodes += 1
        return kernels.refine(self.indptr, self.indices, colors)

    def invariant(self, colors):
        k = max(colors) + 1
        sizes = [0] * k
        reps = [-1] * k
        for v, c in enumerate(colors):
            sizes[c] += 1
            if reps[c] < 0:
                reps[c] = v
        rows = tuple(tuple(sorted(colors[w] for w in self.nbrs[r])) for r in reps)
        return tuple(sizes), rows

    @staticmethod
    def target_cell(colors):
        """Members of the first largest non-singleton cell, or None if discrete."""
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        big = max(sizes.values())
        if big == 1:
            return None
        c = min(k for k, s in sizes.items() if s == big)
        return [v for v, x in enumerate(colors) if x == c]

    @staticmethod
    def individualize(colors, v):
        c = colors[v]
        return [x if x < c or u == v else x + 1 for u, x in enumerate(colors)]

    def run(self) -> AutomorphismResult:
        colors = self.refine([0] * self.n)
        self.path_colors = [colors]
        self.path_inv = [self.invariant(colors)]
        base, cells = [], []
        while (cell := self.target_cell(colors)) is not None:
            base.append(cell[0])
            cells.append(cell)
            colors = self.refine(self.individualize(colors, cell[0]))
            self.path_colors.append(colors)
            self.path_inv.append(self.invariant(colors))
        self.depth = len(base)
        self.lab0 = [0] * self.n
        for v, c in enumerate(colors):
            self.lab0[c] = v

        gens: list[tuple[int, ...]] = []
        sizes = [1] * self.depth
        for j in reversed(range(self.depth)):
            orb = orbit(base[j], gens)
            for w in cells[j]:
                if w in orb:
                    continue
                g = self._find(j, self.path_colors[j], w)
                if g is not None:
                    gens.append(g)
                    orb = orbit(base[j], gens)
            sizes[j] = len(orb)
        return AutomorphismResult(gens, prod(sizes), base, sizes, self.nodes)

    def _find(self, depth, parent, w):
        colors = self.refine(self.individualize(parent, w))
        if self.invariant(colors) != self.path_inv[depth + 1]:
            return None
        if depth + 1 == self.depth:
            perm = [0] * self.n
            for v, c in enumerate(colors):
                perm[self.lab0[c]] = v
            if kernels.is_automorphism(perm, self.indptr, self.indices, self.adj):
                return tuple(perm)
            return None
        for u in self.target_cell(colors):
            g = self._find(depth + 1, colors, u)
            if g is not None:
                return g
        return None


def graph_automorphisms(g: ConcurrenceGraph) -> AutomorphismResult:
    """Generators and order of Aut(g); the order is cross-checked by Schreier-Sims."""
    if g.vertex_count > max_vertices():
        raise BoundExceeded(f"{g.vertex_count} vertices > {max_vertices()}")
    result = _Search(g).run()
    chain = StabilizerChain(result.generators, g.vertex_count).order
    if chain != result.order:
        raise AssertionError(f"search order {result.order} != chain order {chain}")
    return result


def brute_force_automorphism_count(g: ConcurrenceGraph) -> int:
    """Count automorphisms by trying every vertex permutation (tiny graphs only)."""
    from itertools import permutations

    n = g.vertex_count
    if n > 8:
        raise BoundExceeded("brute force is limited to 8 vertices")
    edges = [(i, j) for i in range(n) for j in g.neighbors[i] if i < j]
    A = g.adjacency
    return sum(all(A[p[i], p[j]] for i, j in edges) for p in permutations(range(n)))


def collineation_count(S: Space) -> int:
    """Order 2: every point bijection; otherwise the semilinear affine group."""
    if S.q == 2:
        return factorial(S.point_count)
    return affinity_order_formula(S.n, S.F.p, S.F.h)


def certify_plucker_group(S: Space) -> VerificationReport:
    """Compare Aut of the concurrence graph with the collineation group of S.

    Every automorphism generator must come from a collineation (an affinity
    when q > 2) through the meet construction, and the two orders must agree.
    """
    S.require_dimension(3)
    g = concurrence_graph(S)
    res = graph_automorphisms(g)
    certs = []
    point_perms = []
    for idx, gen in enumerate(res.generators):
        f = LineMap(S, S, gen)
        try:
            pm = reconstruct_point_map(f, PointMapKind.KAPPA)
        except (WellDefinednessViolation, MapError) as exc:
            certs.append({"generator": idx, "reconstructed": False, "error": str(exc)})
            continue
        point_perms.append(pm.table)
        cert = {"generator": idx, "reconstructed": True, "collineation": is_collineation(pm)}
        if S.q > 2:
            cert["affinity"] = is_affinity(pm)
        certs.append(cert)
    res.certificates = certs
    res.certified = all(c.get("reconstructed") and c.get("collineation") and c.get("affinity", True) for c in certs)

    expected = collineation_count(S)
    point_group_order = StabilizerChain(point_perms, S.point_count).order if point_perms else 1
    witnesses = {
        "graph_automorphism_order": res.order,
        "collineation_order": expected,
        "collineation_order_source": "factorial(q^n)" if S.q == 2 else "affinity formula",
        "point_group_order_from_generators": point_group_order,
        "generators": len(res.generators),
        "base": res.base,
        "orbit_sizes": res.orbit_sizes,
        "certificates": certs,
    }
    if S.q > 2:
        aff = affinity_group(S, closure=False)
        witnesses["affinity_order_chain"] = aff.order_chain
    ok = res.certified and res.order == expected and point_group_order == expected
    if not res.certified:
        witnesses["critical"] = "a graph automorphism generator does not come from a collineation"
    return VerificationReport("plucker-group", S.descriptor, PASS if ok else FAIL, witnesses)
