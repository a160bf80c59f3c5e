"""Compiled vs pure-Python kernels on the AG(3,3) concurrence graph.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

from affplucker import _kernels_py, kernels
from affplucker.geometry import make_space
from affplucker.groups import affinity_generators, graph_automorphisms
from affplucker.maps import concurrence_graph, induced_line_map

try:
    from affplucker import _kernels as _compiled
except ImportError:
    _compiled = None

NAMES = ("refine", "is_automorphism", "count_preserved_pairs")


def use(module) -> None:
    for name in NAMES:
        setattr(kernels, name, getattr(module, name))


def cases():
    S = make_space(3, 3)
    g = concurrence_graph(S)
    indptr, indices = g.csr
    adj = g.adj_bytes
    f = induced_line_map(affinity_generators(S)[-1])
    colors = [0] * g.vertex_count
    colors[0] = 1
    return {
        "refine": lambda k: k.refine(indptr, indices, colors),
        "is_automorphism": lambda k: k.is_automorphism(f.table, indptr, indices, adj),
        "count_preserved_pairs": lambda k: k.count_preserved_pairs(f.table, adj, adj, g.vertex_count),
        "graph_automorphisms": None,
    }, g


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    table, g = cases()
    print(f"{'kernel':<24}" + "".join(f"{b:>14}" for b, _ in backends) + "   speedup")
    for name, fn in table.items():
        row = []
        for _, mod in backends:
            use(mod)
            if fn is None:
                t = min(timeit.repeat(lambda: graph_automorphisms(g), number=1, repeat=args.repeat))
            else:
                t = min(timeit.repeat(lambda: fn(mod), number=20, repeat=args.repeat)) / 20
            row.append(t)
        speed = f"{row[0] / row[1]:8.1f}x" if len(row) == 2 else "       -"
        print(f"{name:<24}" + "".join(f"{t * 1000:>12.3f}ms" for t in row) + "  " + speed)
    if _compiled is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
