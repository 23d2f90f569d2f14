"""Endomorphisms acting on foldings: subdivision, fold survivors, named maps.

The image of a folding under a map is built by subdividing every edge into the
letter path of its label's image and folding the result; provenance of the
subdivided edges supports the fold-survivor machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .folding import CORE_CYCLIC, CORE_KEEP, Folding, FoldTrace
from .words import (Alphabet, F2, GeneratorMap, Word, check_n_reduced,
                    middle_decomposition)


@dataclass
class SubdividedImage:
    """The pre-fold image graph, with per-edge provenance.

    provenance maps each subdivided edge id to (original edge id, position of
    the letter within the image word of the original label).
    """

    graph: Folding
    provenance: dict[int, tuple[int, int]]
    by_position: dict[tuple[int, int], int]


def subdivide(g: Folding, f: GeneratorMap) -> SubdividedImage:
    """Replace each edge labeled x by a path spelling the image of x."""
    if f.domain != g.alphabet:
        raise ValueError("map domain does not match the folding's alphabet")
    for i, image in enumerate(f.images):
        if image.is_identity and any(x == i + 1 for _, _, x in g.edges.values()):
            raise ValueError("generator %r has empty image but labels an edge"
                             % (f.domain.names[i],))
    edges: dict[int, tuple[int, int, int]] = {}
    provenance: dict[int, tuple[int, int]] = {}
    by_position: dict[tuple[int, int], int] = {}
    n = g.n_vertices
    eid = 0
    for orig, (s, t, x) in sorted(g.edges.items()):
        image = f.images[x - 1]
        cur = s
        for pos, letter in enumerate(image.letters):
            if pos == len(image.letters) - 1:
                nxt = t
            else:
                nxt = n
                n += 1
            if letter > 0:
                edges[eid] = (cur, nxt, letter)
            else:
                edges[eid] = (nxt, cur, -letter)
            provenance[eid] = (orig, pos)
            by_position[(orig, pos)] = eid
            eid += 1
            cur = nxt
    graph = Folding(f.codomain, n, edges, g.basepoint, is_folded=False, core_mode="raw")
    return SubdividedImage(graph=graph, provenance=provenance, by_position=by_position)


def apply_endo_to_folding(g: Folding, f: GeneratorMap) -> tuple[Folding, FoldTrace, SubdividedImage]:
    """Fold the subdivided image; equals the folding built from image generators."""
    if not g.is_folded:
        raise ValueError("apply the map to a folded graph")
    sub = subdivide(g, f)
    folded, trace = sub.graph.fold()
    return folded, trace, sub


def image_subgroup_folding(gens: list[Word], f: GeneratorMap, mode: str = CORE_KEEP,
                           alphabet: Optional[Alphabet] = None) -> Folding:
    """Folding of the image subgroup, built directly from the image generators."""
    return Folding.of_subgroup([f(w) for w in gens], alphabet=f.codomain, mode=mode)


def n_images(f: GeneratorMap) -> list[Word]:
    return list(f.images)


def is_n_endomorphism(f: GeneratorMap) -> bool:
    """True iff the generator images form an N-reduced pair of F2.

    The images must be genuinely two elements (distinct and not mutually
    inverse); a collapsed image set would pass N0-N2 vacuously while the map
    is not even injective.
    """
    if f.domain.rank != 2 or f.codomain.rank != 2:
        return False
    u, v = f.images
    if u == v or u == v.inverse():
        return False
    return check_n_reduced([u, v]).passed


def check_injective(f: GeneratorMap) -> bool:
    """Injectivity via the image subgroup's rank.

    The images generate a free group whose rank the folding computes; a
    surjection between free groups of equal finite rank is injective (free
    groups are Hopfian).
    """
    nontrivial = [w for w in f.images if not w.is_identity]
    if len(nontrivial) < f.domain.rank:
        return False
    return Folding.of_subgroup(nontrivial, alphabet=f.codomain).rank() == f.domain.rank


@dataclass
class SurvivorMap:
    """Designated never-folded image edge for each original edge.

    designated maps an original edge id to (subdivided edge id, post-fold class
    size); a class size above 1 would falsify the small-cancellation lemma.
    """

    designated: dict[int, tuple[int, int]]

    @property
    def violations(self) -> list[int]:
        return [e for e, (_, size) in self.designated.items() if size != 1]

    @property
    def all_survive(self) -> bool:
        return not self.violations


def survivor_map(g: Folding, f: GeneratorMap) -> SurvivorMap:
    """For every edge, the image edge at the first letter of the middle m(x^f)."""
    if not g.is_folded:
        raise ValueError("survivor map requires a folded graph")
    if not is_n_endomorphism(f):
        raise ValueError("survivor map requires an N-endomorphism")
    decomposition = middle_decomposition(f.images)
    folded, trace, sub = apply_endo_to_folding(g, f)
    del folded
    designated: dict[int, tuple[int, int]] = {}
    for orig, (_, _, x) in g.edges.items():
        image = f.images[x - 1]
        pos = len(decomposition.prefix(image))
        eid = sub.by_position[(orig, pos)]
        cls = trace.edge_class[eid]
        designated[orig] = (eid, trace.class_size[cls])
    return SurvivorMap(designated=designated)


# -- the paper's named maps -------------------------------------------------

def phi0() -> GeneratorMap:
    """a -> a^2, b -> a^-1 b^-1 a b (the branch-vertex normalizing map)."""
    return GeneratorMap(F2, F2, (Word(F2, (1, 1)), Word(F2, (-1, -2, 1, 2))))


def bar(alphabet: Alphabet) -> GeneratorMap:
    """Every generator to its inverse."""
    return GeneratorMap(alphabet, alphabet,
                        tuple(Word(alphabet, (-i,)) for i in range(1, alphabet.rank + 1)))


def psi_embedding(rank: int) -> GeneratorMap:
    """The embedding of a rank-n free group into F2: a_i -> a^i b a^i."""
    domain = Alphabet.of_rank(rank)
    images = tuple(Word(F2, (1,) * i + (2,) + (1,) * i) for i in range(1, rank + 1))
    return GeneratorMap(domain, F2, images)


def tau(w_a: Word, w_b: Word) -> GeneratorMap:
    """a -> a w_a a, b -> b w_b b; both images must be reduced as written.

    Not every such map is injective; callers needing a monomorphism should
    screen with check_injective.
    """
    if w_a.alphabet != F2 or w_b.alphabet != F2:
        raise ValueError("tau parameters must be words over F2")
    for w, x, name in ((w_a, 1, "w_a"), (w_b, 2, "w_b")):
        if w.letters and (w.letters[0] == -x or w.letters[-1] == -x):
            raise ValueError("%s causes cancellation at the junction" % (name,))
    a = Word(F2, (1,))
    b = Word(F2, (2,))
    return GeneratorMap(F2, F2, (a * w_a * a, b * w_b * b))


def theorem2_transform(gens: list[Word]) -> Folding:
    """Embed via psi, push through phi0, and fold; returned as a cyclic core.

    The result has no degree-4 vertices and all its degree-3 vertices share a
    single type, while the rank equals that of the input subgroup.
    """
    if not gens:
        raise ValueError("need at least one generator")
    rank = gens[0].alphabet.rank
    embed = psi_embedding(rank).then(phi0())
    return Folding.of_subgroup([embed(w) for w in gens], alphabet=F2, mode=CORE_CYCLIC)
