"""Stallings foldings for finitely generated subgroups of free groups.

Folding construction, intersections via product automata, degree censuses,
endomorphism machinery, and randomized verification of rank inequalities.
"""

from .folding import (CORE_CYCLIC, CORE_KEEP, RAW, DegreeCensus, FoldTrace,
                      Folding, UnionFind, rank_from_census)
from .hnc import (LpLemmaVerdict, PairReport, bound_burns, bound_dicksformanek,
                  bound_hneumann, bound_tardos96, check_pair, delta_mu, delta_x,
                  reduced_rank, verify_lp_lemma, wneumann_estimate)
from .intersect import (ProductComponent, intersection_folding,
                        product_census_bounds, product_component)
from .morphisms import (SubdividedImage, SurvivorMap, apply_endo_to_folding, bar,
                        check_injective, image_subgroup_folding, is_n_endomorphism,
                        phi0, psi_embedding, subdivide, survivor_map, tau,
                        theorem2_transform)
from .words import (Alphabet, F2, GeneratorMap, MiddleDecomposition,
                    NReducedReport, Word, apply_map, check_n_reduced, compose,
                    enumerate_length_preserving, free_reduce,
                    middle_decomposition, parse_words)

__version__ = "0.1.0"
