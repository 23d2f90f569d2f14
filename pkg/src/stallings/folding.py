"""Stallings foldings: construction, the folding algorithm, cores, and censuses.

A Folding is a basepointed digraph with edges labeled by positive generator
indices; a word's negative letter traverses an edge against its orientation.
Vertices are 0..n_vertices-1 and edge ids are the keys of `edges`, each mapping
to (source, target, label).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Optional

from .words import Alphabet, Word

RAW = "raw"
CORE_KEEP = "core_with_basepoint"
CORE_CYCLIC = "cyclic_core"


class UnionFind:
    """Disjoint sets over arbitrary hashable keys with path compression."""

    def __init__(self, keys: Iterable = ()):
        self.parent = {k: k for k in keys}

    def add(self, k):
        self.parent.setdefault(k, k)

    def find(self, k):
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra


@dataclass
class FoldTrace:
    """Record of which input edges were merged by a folding pass."""

    edge_class: dict[int, int]  # pre-fold edge id -> post-fold edge id
    class_size: dict[int, int]  # post-fold edge id -> number of merged inputs
    fold_count: int

    def was_folded(self, pre_edge: int) -> bool:
        return self.class_size[self.edge_class[pre_edge]] > 1


@dataclass
class DegreeCensus:
    """Vertex-degree counts, and degree-3 type counts for rank-2 alphabets.

    C maps each signed letter x to the number of degree-3 vertices at which the
    direction x cannot be read (the unique missing direction).
    """

    d: dict[int, int]
    C: dict[int, int]

    @property
    def d1(self) -> int:
        return self.d.get(1, 0)

    @property
    def d3(self) -> int:
        return self.d.get(3, 0)

    @property
    def d4(self) -> int:
        return self.d.get(4, 0)

    @property
    def d3_total(self) -> int:
        return self.d3

    @property
    def d4_total(self) -> int:
        return self.d4

    def five_tuple(self) -> tuple[int, int, int, int, int]:
        """(C_a, C_b, C_{a^-1}, C_{b^-1}, d4) -- the invariant of the N-endo lemma."""
        return (self.C.get(1, 0), self.C.get(2, 0), self.C.get(-1, 0), self.C.get(-2, 0), self.d4)


def rank_from_census(census: DegreeCensus) -> Fraction:
    """Rank from degrees alone: 1 + sum_v (deg(v) - 2) / 2.

    For rank 2 this is d4 + d3/2 - d1/2 + 1.  Raises if the result is not an
    integer, which signals a census not coming from a connected folded graph.
    """
    total = Fraction(1) + sum(Fraction(count * (deg - 2), 2) for deg, count in census.d.items())
    if total.denominator != 1:
        raise ValueError("census does not describe a connected folded graph: rank %s" % (total,))
    return total


class Folding:
    """Basepointed labeled digraph; immutable by convention once built."""

    def __init__(self, alphabet: Alphabet, n_vertices: int, edges: dict[int, tuple[int, int, int]],
                 basepoint: int, is_folded: bool = False, core_mode: str = RAW):
        self.alphabet = alphabet
        self.n_vertices = n_vertices
        self.edges = edges
        self.basepoint = basepoint
        self.is_folded = is_folded
        self.core_mode = core_mode
        self._out: Optional[dict[tuple[int, int], int]] = None
        self._in: Optional[dict[tuple[int, int], int]] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def rose(cls, gens: Iterable[Word]) -> "Folding":
        """Wedge of labeled cycles at the basepoint, one per nontrivial generator."""
        gens = list(gens)
        alphabets = {w.alphabet for w in gens}
        if len(alphabets) > 1:
            raise ValueError("generators must share one alphabet")
        if not gens:
            raise ValueError("rose needs at least one word to fix the alphabet; "
                             "use Folding.trivial(alphabet) for the trivial subgroup")
        alphabet = gens[0].alphabet
        edges: dict[int, tuple[int, int, int]] = {}
        n = 1  # vertex 0 is the basepoint
        eid = 0
        for w in gens:
            if w.is_identity:
                continue  # identity generators are dropped
            cur = 0
            for i, letter in enumerate(w.letters):
                nxt = 0 if i == len(w.letters) - 1 else n
                if i != len(w.letters) - 1:
                    n += 1
                if letter > 0:
                    edges[eid] = (cur, nxt, letter)
                else:
                    edges[eid] = (nxt, cur, -letter)
                eid += 1
                cur = nxt
        return cls(alphabet, n, edges, 0, is_folded=not edges, core_mode=RAW)

    @classmethod
    def trivial(cls, alphabet: Alphabet) -> "Folding":
        return cls(alphabet, 1, {}, 0, is_folded=True, core_mode=CORE_CYCLIC)

    @classmethod
    def of_subgroup(cls, gens: Iterable[Word], alphabet: Optional[Alphabet] = None,
                    mode: str = CORE_KEEP) -> "Folding":
        """Fold the rose of gens and extract the requested core."""
        gens = [w for w in gens if not w.is_identity]
        if not gens:
            if alphabet is None:
                raise ValueError("alphabet required for the trivial subgroup")
            return cls.trivial(alphabet)
        folded, _ = cls.rose(gens).fold()
        return folded.core(mode)

    # -- adjacency ---------------------------------------------------------

    def _lookup(self):
        if self._out is None:
            out: dict[tuple[int, int], int] = {}
            into: dict[tuple[int, int], int] = {}
            for eid, (s, t, x) in self.edges.items():
                out[(s, x)] = eid
                into[(t, x)] = eid
            self._out, self._in = out, into
        return self._out, self._in

    def out_edge(self, v: int, x: int) -> Optional[int]:
        return self._lookup()[0].get((v, x))

    def in_edge(self, v: int, x: int) -> Optional[int]:
        return self._lookup()[1].get((v, x))

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for s, t, _ in self.edges.values():
            deg[s] += 1
            deg[t] += 1
        return deg

    # -- folding -----------------------------------------------------------

    def fold(self, rng: Optional[Random] = None) -> tuple["Folding", FoldTrace]:
        """Identify equal-labeled edge pairs sharing a head or tail, to confluence.

        The result is deterministic up to canonical form regardless of the
        order of identifications; pass `rng` to shuffle that order.
        """
        vuf = UnionFind(range(self.n_vertices))
        euf = UnionFind(self.edges)
        ends = dict(self.edges)
        inc: dict[int, list[int]] = {v: [] for v in range(self.n_vertices)}
        for eid, (s, t, _) in ends.items():
            inc[s].append(eid)
            inc[t].append(eid)

        work = list(range(self.n_vertices))
        if rng is not None:
            rng.shuffle(work)

        while work:
            v = vuf.find(work.pop())
            edges_here = inc.get(v, [])
            if rng is not None:
                rng.shuffle(edges_here)
            slots: dict[tuple[int, int], int] = {}
            collision = None
            live: list[int] = []
            seen: set[int] = set()
            for eid in edges_here:
                er = euf.find(eid)
                if er in seen:
                    continue
                s, t, x = ends[er]
                s, t = vuf.find(s), vuf.find(t)
                ends[er] = (s, t, x)
                if s != v and t != v:
                    continue  # stale entry left by a merge elsewhere
                seen.add(er)
                live.append(er)
                keys = []
                if s == v:
                    keys.append((x, 1))
                if t == v:
                    keys.append((x, -1))
                for key in keys:
                    other = slots.get(key)
                    if other is not None and other != er:
                        collision = (key, other, er)
                        break
                    slots[key] = er
                if collision:
                    break
            if collision is None:
                inc[v] = live
                continue

            (x, direction), e1, e2 = collision
            s1, t1, _ = ends[e1]
            s2, t2, _ = ends[e2]
            keep = euf.union(e1, e2)
            ends[keep] = ends[e1]
            # merge the endpoints away from v
            o1, o2 = (t1, t2) if direction == 1 else (s1, s2)
            if o1 != o2:
                root = vuf.union(o1, o2)
                dead = o2 if root == o1 else o1
                inc.setdefault(root, [])
                inc[root].extend(inc.pop(dead, []))
                work.append(root)
            else:
                work.append(o1)
            work.append(v)

        # rebuild with dense vertex and edge ids
        vroots = sorted({vuf.find(v) for v in range(self.n_vertices)})
        vmap = {r: i for i, r in enumerate(vroots)}
        eroots = sorted({euf.find(e) for e in self.edges})
        emap = {r: i for i, r in enumerate(eroots)}
        new_edges = {}
        for r in eroots:
            s, t, x = ends[r]
            new_edges[emap[r]] = (vmap[vuf.find(s)], vmap[vuf.find(t)], x)
        folded = Folding(self.alphabet, len(vroots), new_edges,
                         vmap[vuf.find(self.basepoint)], is_folded=True, core_mode=RAW)

        edge_class = {e: emap[euf.find(e)] for e in self.edges}
        class_size: dict[int, int] = {}
        for e in self.edges:
            c = edge_class[e]
            class_size[c] = class_size.get(c, 0) + 1
        trace = FoldTrace(edge_class, class_size, len(self.edges) - len(new_edges))
        return folded, trace

    # -- cores -------------------------------------------------------------

    def core(self, mode: str = CORE_KEEP) -> "Folding":
        """Strip hanging trees; cyclic mode also strips the basepoint tail."""
        if not self.is_folded:
            raise ValueError("core extraction requires a folded graph")
        if mode not in (CORE_KEEP, CORE_CYCLIC):
            raise ValueError("unknown core mode: %r" % (mode,))
        edges = dict(self.edges)
        alive = set(range(self.n_vertices))
        deg = {v: 0 for v in alive}
        incident: dict[int, set[int]] = {v: set() for v in alive}
        for eid, (s, t, _) in edges.items():
            deg[s] += 1
            deg[t] += 1
            incident[s].add(eid)
            incident[t].add(eid)
        base = self.basepoint

        def remove_vertex(v):
            alive.discard(v)
            for eid in list(incident[v]):
                s, t, _ = edges.pop(eid)
                for w in (s, t):
                    incident[w].discard(eid)
                    deg[w] -= 1
            del incident[v], deg[v]

        queue = deque(v for v in alive if deg[v] <= 1 and v != base)
        while queue:
            v = queue.popleft()
            if v not in alive or deg[v] > 1 or v == base:
                continue
            neighbors = set()
            for eid in incident[v]:
                s, t, _ = edges[eid]
                neighbors.add(t if s == v else s)
            remove_vertex(v)
            for w in neighbors:
                if w in alive and deg[w] <= 1 and w != base:
                    queue.append(w)

        if mode == CORE_CYCLIC:
            while deg.get(base, 0) == 1:
                eid = next(iter(incident[base]))
                s, t, _ = edges[eid]
                nxt = t if s == base else s
                remove_vertex(base)
                base = nxt

        vmap = {v: i for i, v in enumerate(sorted(alive))}
        new_edges = {i: (vmap[s], vmap[t], x)
                     for i, (_, (s, t, x)) in enumerate(sorted(edges.items()))}
        return Folding(self.alphabet, len(vmap), new_edges, vmap[base],
                       is_folded=True, core_mode=mode)

    # -- invariants --------------------------------------------------------

    def rank(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    def degree_census(self) -> DegreeCensus:
        if not self.is_folded:
            raise ValueError("census requires a folded graph")
        d: dict[int, int] = {}
        for deg in self.degrees():
            if deg > 0:
                d[deg] = d.get(deg, 0) + 1
        C: dict[int, int] = {}
        if self.alphabet.rank == 2:
            C = {x: 0 for x in self.alphabet.signed_letters()}
            for v, deg in enumerate(self.degrees()):
                if deg != 3:
                    continue
                missing = [x for x in self.alphabet.signed_letters() if not self._can_read(v, x)]
                if len(missing) != 1:
                    raise ValueError("degree-3 vertex %d has %d missing directions" % (v, len(missing)))
                C[missing[0]] += 1
        return DegreeCensus(d=d, C=C)

    def _can_read(self, v: int, letter: int) -> bool:
        if letter > 0:
            return self.out_edge(v, letter) is not None
        return self.in_edge(v, -letter) is not None

    def _step(self, v: int, letter: int) -> Optional[int]:
        if letter > 0:
            eid = self.out_edge(v, letter)
            return None if eid is None else self.edges[eid][1]
        eid = self.in_edge(v, -letter)
        return None if eid is None else self.edges[eid][0]

    def contains(self, word: Word) -> bool:
        """Membership: does the word trace a closed path at the basepoint?"""
        if not self.is_folded:
            raise ValueError("membership requires a folded graph")
        if self.core_mode == CORE_CYCLIC:
            raise ValueError("membership on a cyclic core answers for a conjugate; "
                             "use the basepointed core")
        if word.alphabet != self.alphabet:
            raise ValueError("word is not over the folding's alphabet")
        v = self.basepoint
        for letter in word.letters:
            v = self._step(v, letter)
            if v is None:
                return False
        return v == self.basepoint

    def __contains__(self, word: Word) -> bool:
        return self.contains(word)

    def subgroup_index(self) -> Optional[int]:
        """Vertex count if the automaton is complete, else None (infinite index)."""
        if not self.is_folded:
            raise ValueError("index requires a folded graph")
        for v in range(self.n_vertices):
            for x in self.alphabet.signed_letters():
                if not self._can_read(v, x):
                    return None
        return self.n_vertices

    # -- canonical form ----------------------------------------------------

    def _bfs_order(self) -> dict[int, int]:
        order = {self.basepoint: 0}
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for x in range(1, self.alphabet.rank + 1):
                for w in (self._step(v, x), self._step(v, -x)):
                    if w is not None and w not in order:
                        order[w] = len(order)
                        queue.append(w)
        if len(order) != self.n_vertices:
            raise ValueError("folding is not connected")
        return order

    def canonical_key(self) -> tuple:
        """Hashable identity: equal keys iff isomorphic as basepointed labeled graphs."""
        if not self.is_folded:
            raise ValueError("canonical form requires a folded graph")
        order = self._bfs_order()
        edges = tuple(sorted((order[s], order[t], x) for s, t, x in self.edges.values()))
        return (self.n_vertices, edges)

    def canonical(self) -> "Folding":
        """Relabel vertices breadth-first from the basepoint in fixed letter order."""
        n, edges = self.canonical_key()
        return Folding(self.alphabet, n, {i: e for i, e in enumerate(edges)}, 0,
                       is_folded=True, core_mode=self.core_mode)

    # -- generators and export ---------------------------------------------

    def generators(self) -> list[Word]:
        """A free basis from a breadth-first spanning tree, one word per extra edge."""
        if not self.is_folded:
            raise ValueError("generator extraction requires a folded graph")
        path: dict[int, tuple[int, ...]] = {self.basepoint: ()}
        tree: set[int] = set()
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for x in range(1, self.alphabet.rank + 1):
                for letter in (x, -x):
                    w = self._step(v, letter)
                    if w is not None and w not in path:
                        path[w] = path[v] + (letter,)
                        eid = self.out_edge(v, x) if letter > 0 else self.in_edge(v, x)
                        tree.add(eid)
                        queue.append(w)
        gens = []
        for eid, (s, t, x) in sorted(self.edges.items()):
            if eid in tree:
                continue
            letters = path[s] + (x,) + tuple(-l for l in reversed(path[t]))
            gens.append(Word(self.alphabet, letters))
        return gens

    def to_dot(self) -> str:
        """DOT text; vertex names are canonical indices, basepoint doublecircled."""
        g = self.canonical()
        lines = ["digraph folding {"]
        for v in range(g.n_vertices):
            shape = "doublecircle" if v == g.basepoint else "circle"
            lines.append('  %d [shape=%s];' % (v, shape))
        for _, (s, t, x) in sorted(g.edges.items()):
            lines.append('  %d -> %d [label="%s"];' % (s, t, g.alphabet.names[x - 1]))
        lines.append("}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        g = self.canonical()
        return {
            "alphabet": "".join(g.alphabet.names),
            "vertices": g.n_vertices,
            "basepoint": g.basepoint,
            "edges": [[s, t, g.alphabet.names[x - 1]] for _, (s, t, x) in sorted(g.edges.items())],
            "folded": g.is_folded,
            "core_mode": self.core_mode,
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = ["vertices: %d" % d["vertices"], "basepoint: %d" % d["basepoint"],
                 "rank: %d" % self.rank()]
        for s, t, x in d["edges"]:
            lines.append("%d -%s-> %d" % (s, x, t))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return "Folding(|V|=%d, |E|=%d, folded=%s, mode=%s)" % (
            self.n_vertices, len(self.edges), self.is_folded, self.core_mode)
