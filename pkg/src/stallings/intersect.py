"""Product automaton and the intersection folding.

The basepoint component of the labeled-graph product of two foldings, once
cored, is the folding of the intersection subgroup.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .folding import CORE_KEEP, DegreeCensus, Folding


@dataclass
class ProductComponent:
    """Basepoint component of a product automaton, with pair annotations."""

    folding: Folding
    pairs: dict[int, tuple[int, int]]  # product vertex -> (vertex in H, vertex in K)


def product_component(h: Folding, k: Folding) -> ProductComponent:
    """Breadth-first generation from (1_H, 1_K); unreachable pairs never materialize.

    Reachability is undirected: edges are traversed both ways, since the
    component is a connected component of a labeled graph.
    """
    if h.alphabet != k.alphabet:
        raise ValueError("foldings are over different alphabets")
    if not (h.is_folded and k.is_folded):
        raise ValueError("product requires folded inputs")
    start = (h.basepoint, k.basepoint)
    index = {start: 0}
    pairs = {0: start}
    queue = deque([start])
    edges: dict[int, tuple[int, int, int]] = {}
    edge_seen: set[tuple[int, int, int]] = set()
    letters = h.alphabet.signed_letters()
    while queue:
        u, v = queue.popleft()
        for x in letters:
            hu = h._step(u, x)
            kv = k._step(v, x)
            if hu is None or kv is None:
                continue
            nxt = (hu, kv)
            if nxt not in index:
                index[nxt] = len(index)
                pairs[index[nxt]] = nxt
                queue.append(nxt)
            # record each product edge once, in its forward orientation
            if x > 0:
                key = (index[(u, v)], index[nxt], x)
            else:
                key = (index[nxt], index[(u, v)], -x)
            if key not in edge_seen:
                edge_seen.add(key)
                edges[len(edges)] = key
    folding = Folding(h.alphabet, len(index), edges, 0, is_folded=True, core_mode="raw")
    return ProductComponent(folding=folding, pairs=pairs)


def intersection_folding(h: Folding, k: Folding) -> Folding:
    """The folding of H meet K: basepointed core of the product component."""
    return product_component(h, k).folding.core(CORE_KEEP)


def product_census_bounds(ch: DegreeCensus, ck: DegreeCensus) -> tuple[int, int]:
    """Upper bounds (d4, d3) for the product automaton of two rank-2 foldings.

    d4 bound: d4(H) d4(K).
    d3 bound: d4(H) d3(K) + d3(H) d4(K) + sum_x C_x(H) C_x(K).
    """
    d4_bound = ch.d4 * ck.d4
    cross = sum(ch.C.get(x, 0) * ck.C.get(x, 0) for x in set(ch.C) | set(ck.C))
    d3_bound = ch.d4 * ck.d3 + ch.d3 * ck.d4 + cross
    return d4_bound, d3_bound
