"""Pure-Python kernels; same API as the compiled ``_kernels`` extension."""

from __future__ import annotations


def refine(indptr, indices, colors):
    """Refine a vertex colouring to the coarsest equitable colouring below it.

    ``colors`` holds labels 0..k-1.  Each round a vertex is keyed by its colour
    followed by its neighbour counts per colour; new labels are ranks of the
    keys, so the result depends only on the input colouring, never on vertex
    names.  Returns a new list.
    """
    n = len(colors)
    colors = list(colors)
    k = max(colors) + 1 if n else 0
    while True:
        keys = []
        for v in range(n):
            counts = [0] * k
            for t in range(indptr[v], indptr[v + 1]):
                counts[colors[indices[t]]] += 1
            keys.append((colors[v], tuple(counts)))
        ranked = {key: r for r, key in enumerate(sorted(set(keys)))}
        new_k = len(ranked)
        colors = [ranked[key] for key in keys]
        if new_k == k:
            return colors
        k = new_k


def is_automorphism(perm, indptr, indices, adj):
    """True iff ``perm`` maps every edge onto an edge (adj is an n*n 0/1 row-major buffer)."""
    n = len(perm)
    for u in range(n):
        pu = perm[u] * n
        for t in range(indptr[u], indptr[u + 1]):
            if not adj[pu + perm[indices[t]]]:
                return False
    return True


def count_preserved_pairs(table, adj_src, adj_dst, n):
    """Count ordered pairs (a, b), a != b, with adj_src[a,b] == adj_dst[table[a], table[b]].

    Returns (agree, forward_violations, backward_violations): forward counts
    pairs related in the source but not the image, backward the converse.
    """
    agree = fwd = bwd = 0
    for a in range(n):
        ra = a * n
        ta = table[a] * n
        for b in range(n):
            if a == b:
                continue
            s = adj_src[ra + b]
            d = adj_dst[ta + table[b]]
            if s == d:
                agree += 1
            elif s:
                fwd += 1
            else:
                bwd += 1
    return agree, fwd, bwd
