import random
from fractions import Fraction

import pytest

from stallings import (CORE_CYCLIC, F2, Alphabet, DegreeCensus, Folding, Word,
                       bound_burns, bound_dicksformanek, bound_hneumann,
                       bound_tardos96, check_pair, delta_mu, delta_x,
                       enumerate_length_preserving, image_subgroup_folding,
                       phi0, reduced_rank, verify_lp_lemma, wneumann_estimate)
from stallings.experiments import random_subgroup
from stallings.morphisms import bar
from stallings.words import GeneratorMap

from conftest import w
from test_folding import subgroup


def census(*texts):
    return Folding.of_subgroup([w(t) for t in texts], alphabet=F2,
                               mode=CORE_CYCLIC).degree_census()


class TestDelta:
    def test_self_pair_conjugate(self):
        c = census("a", "baB")
        assert delta_x(c, c, 2) == Fraction(1, 2)

    def test_zero_when_no_degree_three(self):
        c = census("a", "b")
        assert delta_x(c, census("a", "baB"), 2) == 0

    def test_phi0_images_reach_one(self):
        c = census(*[str(phi0()(u)) for u in (w("a"), w("b"), w("abAB"))])
        delta, mu = delta_mu(c, c)
        assert delta == 1
        assert c.C[mu] == c.d3

    def test_delta_mu_tie_break(self):
        c = census("a", "baB")
        delta, mu = delta_mu(c, c)
        assert delta == Fraction(1, 2)
        assert mu == 2  # first maximizer in the order a, b, a^-1, b^-1

    def test_delta_mu_degenerate(self):
        c = census("a", "b")
        assert delta_mu(c, c) == (Fraction(0), None)


class TestWNeumannEstimate:
    def test_full_roses(self):
        c = census("a", "b")
        estimate, certified = wneumann_estimate(c, c)
        assert estimate == 1 and certified

    def test_degree_three_pair(self):
        c = census("a", "baB")
        estimate, certified = wneumann_estimate(c, c)
        assert estimate == 1 and certified

    def test_zero_census(self):
        c = census("a")
        estimate, certified = wneumann_estimate(c, c)
        assert estimate == 0 and certified


class TestBounds:
    def test_rank_three_pair(self):
        assert bound_hneumann(3, 3) == 8
        assert bound_burns(3, 3) == 6
        assert bound_tardos96(3, 3) == 4
        assert bound_dicksformanek(3, 3) == 4

    def test_rank_two_pair(self):
        assert bound_hneumann(2, 2) == 2
        assert bound_burns(2, 2) == 1
        assert bound_dicksformanek(2, 2) == 1

    def test_rank_one_zero_factor(self):
        for k in (1, 2, 5):
            assert bound_hneumann(1, k) == 0
            assert bound_burns(1, k) == 0
            assert bound_dicksformanek(1, k) == 0

    def test_tardos_precondition(self):
        with pytest.raises(ValueError):
            bound_tardos96(2, 3)

    def test_rank_precondition(self):
        with pytest.raises(ValueError):
            bound_hneumann(0, 2)


class TestCheckPair:
    def test_congruence_subgroups(self):
        report = check_pair([w("aa"), w("b")], [w("aaa"), w("b")])
        assert (report.rank_h, report.rank_k, report.rank_meet) == (2, 2, 2)
        assert report.rbar_meet == 1 and report.hnc_holds

    def test_whole_group_pair(self):
        report = check_pair([w("a"), w("b")], [w("a"), w("b")])
        assert (report.rank_h, report.rank_k, report.rank_meet) == (2, 2, 2)
        assert report.hnc_holds

    def test_trivial_intersection(self):
        report = check_pair([w("a")], [w("b")])
        assert report.rank_meet == 0 and report.hnc_holds

    def test_rank_three_alphabet_embeds(self):
        rank3 = Alphabet.of_rank(3)
        gens = [Word.parse(t, rank3) for t in ("a", "b", "c")]
        report = check_pair(gens, gens)
        assert report.rank_h == 3 and report.rank_meet == 3
        assert report.hnc_holds

    def test_symmetry(self):
        rng = random.Random(40)
        for _ in range(30):
            h = random_subgroup(rng, F2, 3, 8)
            k = random_subgroup(rng, F2, 3, 8)
            a = check_pair(h, k)
            b = check_pair(k, h)
            assert (a.rank_h, a.rank_k, a.rank_meet) == (b.rank_k, b.rank_h, b.rank_meet)
            assert a.delta == b.delta and a.hnc_holds == b.hnc_holds

    def test_bounds_and_estimate_hold_randomized(self):
        rng = random.Random(41)
        for _ in range(100):
            report = check_pair(random_subgroup(rng, F2, 4, 10),
                                random_subgroup(rng, F2, 4, 10))
            assert report.hnc_holds
            assert report.bounds_respected()
            if report.wn_certified:
                assert report.hnc_holds

    def test_delta_invariant_under_simultaneous_relabeling(self):
        rng = random.Random(42)
        maps = enumerate_length_preserving(F2)
        for _ in range(30):
            h = random_subgroup(rng, F2, 3, 8)
            k = random_subgroup(rng, F2, 3, 8)
            base = check_pair(h, k)
            for f in maps:
                relabeled = check_pair([f(u) for u in h], [f(u) for u in k])
                assert relabeled.delta == base.delta
                if base.mu is not None:
                    # mu maps through the relabeling up to ties at equal delta
                    from stallings.hnc import delta_x as dx
                    assert dx(relabeled.census_h, relabeled.census_k,
                              f.letter_image(base.mu).letters[0]) == base.delta

    def test_json_schema(self):
        report = check_pair([w("aa"), w("b")], [w("aaa"), w("b")])
        d = report.to_dict()
        assert set(d) == {"rank_h", "rank_k", "rank_meet", "delta", "mu",
                          "hnc_holds", "bounds", "census_h", "census_k"}
        assert set(d["bounds"]) == {"hneumann", "burns", "tardos96",
                                    "dicksformanek", "wneumann_estimate"}
        assert d["delta"] == {"num": 0, "den": 1}
        assert d["bounds"]["tardos96"] is None


def phi0_images(gens):
    return [phi0()(u) for u in gens]


class TestLpLemma:
    def high_delta_pair(self):
        h = phi0_images([w("a"), w("b")])
        k = phi0_images([w("ab"), w("ba"), w("aa")])
        return h, k

    def test_bar_vs_identity(self):
        h, k = self.high_delta_pair()
        verdict = verify_lp_lemma(h, k, bar(F2), GeneratorMap.identity(F2))
        assert verdict.applicable
        assert verdict.delta_before > Fraction(1, 2)
        assert verdict.delta_after_below_half
        assert verdict.pair_holds

    def test_agreeing_maps_rejected(self):
        h, k = self.high_delta_pair()
        verdict = verify_lp_lemma(h, k, bar(F2), bar(F2))
        assert not verdict.applicable and "agree" in verdict.reason

    def test_low_delta_rejected(self):
        verdict = verify_lp_lemma([w("a"), w("b")], [w("a"), w("b")],
                                  bar(F2), GeneratorMap.identity(F2))
        assert not verdict.applicable
        assert "criterion" in verdict.reason

    def test_non_length_preserving_rejected(self):
        h, k = self.high_delta_pair()
        verdict = verify_lp_lemma(h, k, phi0(), GeneratorMap.identity(F2))
        assert not verdict.applicable


class TestReducedRank:
    def test_values(self):
        assert reduced_rank(0) == 0
        assert reduced_rank(1) == 0
        assert reduced_rank(5) == 4

    def test_wn_criterion_against_ground_truth(self):
        rng = random.Random(43)
        for _ in range(100):
            report = check_pair(random_subgroup(rng, F2, 4, 10),
                                random_subgroup(rng, F2, 4, 10))
            if report.delta <= Fraction(1, 2):
                assert report.hnc_holds
