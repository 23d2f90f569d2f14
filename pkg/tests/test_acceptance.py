"""End-to-end acceptance checks.

Each test prints a single PASS/FAIL line on the live terminal (bypassing
capture) so the run log doubles as an acceptance report.  The twelve checks
cover: the intersection oracle, the two rank formulas, folding confluence,
membership soundness, the square-map degree law, fold-survivor edges, the
length-preserving catalog and relabeling identity, delta repair by a pair of
relabelings, the rank inequality scan with its classical bounds, the
half-delta criterion, census determinism under a fixed endomorphism, and
byte-identical experiment reports.
"""
import itertools
import random
from fractions import Fraction

import pytest

from stallings import (CORE_CYCLIC, CORE_KEEP, F2, Folding, GeneratorMap,
                       Word, bar, check_pair, enumerate_length_preserving,
                       image_subgroup_folding, intersection_folding,
                       is_n_endomorphism, phi0, rank_from_census, survivor_map,
                       tau, verify_lp_lemma)
from stallings.experiments import (ExperimentConfig, random_n_endomorphism,
                                   random_subgroup, random_word,
                                   run_experiment)

from conftest import w


def report(capsys, number, ok, text):
    with capsys.disabled():
        print("criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", text))
    assert ok, text


@pytest.fixture(scope="module")
def scan_reports():
    """1000 random pairs shared by the rank-inequality and half-delta checks."""
    rng = random.Random(900)
    reports = []
    for _ in range(1000):
        h = random_subgroup(rng, F2, 4, 10)
        k = random_subgroup(rng, F2, 4, 10)
        reports.append(check_pair(h, k))
    return reports


def test_criterion_1_intersection_oracle(capsys):
    h = Folding.of_subgroup([w("aa"), w("b")], alphabet=F2)
    k = Folding.of_subgroup([w("aaa"), w("b")], alphabet=F2)
    meet = intersection_folding(h, k)
    expected = Folding.of_subgroup([w("aaaaaa"), w("b")], alphabet=F2)
    ok = meet.rank() == 2 and meet.canonical_key() == expected.canonical_key()
    report(capsys, 1, ok, "intersection of <a^2,b> and <a^3,b> is <a^6,b>, rank 2")


def test_criterion_2_rank_formula(capsys):
    rng = random.Random(901)
    failures = 0
    for _ in range(2000):
        gens = random_subgroup(rng, F2, 5, 12)
        g = Folding.of_subgroup(gens, alphabet=F2)
        if g.rank() != rank_from_census(g.degree_census()):
            failures += 1
    report(capsys, 2, failures == 0,
           "edge-count rank equals census rank on 2000 foldings (%d failures)" % failures)


def test_criterion_3_confluence(capsys):
    rng = random.Random(902)
    failures = 0
    for _ in range(500):
        rose = Folding.rose(random_subgroup(rng, F2, 5, 12))
        keys = set()
        for _ in range(3):
            folded, _ = rose.fold(rng=random.Random(rng.random()))
            keys.add(folded.canonical_key())
        if len(keys) != 1:
            failures += 1
    report(capsys, 3, failures == 0,
           "3 shuffled fold orders agree on 500 generator sets (%d failures)" % failures)


def test_criterion_4_membership_soundness(capsys):
    rng = random.Random(903)
    failures = 0
    for _ in range(500):
        h = Folding.of_subgroup(random_subgroup(rng, F2, 4, 10), alphabet=F2)
        k = Folding.of_subgroup(random_subgroup(rng, F2, 4, 10), alphabet=F2)
        meet = intersection_folding(h, k)
        for _ in range(20):
            u = random_word(rng, F2, rng.randint(0, 14))
            if (u in meet) != ((u in h) and (u in k)):
                failures += 1
    report(capsys, 4, failures == 0,
           "intersection membership matches conjunction on 500x20 words (%d failures)" % failures)


def test_criterion_5_square_map_degree_law(capsys):
    rng = random.Random(904)
    failures = 0
    for _ in range(500):
        gens = random_subgroup(rng, F2, 4, 10)
        before = Folding.of_subgroup(gens, alphabet=F2, mode=CORE_CYCLIC)
        c0 = before.degree_census()
        image = image_subgroup_folding(gens, phi0(), mode=CORE_CYCLIC)
        c1 = image.degree_census()
        types = [x for x in c1.C if c1.C[x] > 0]
        count = c1.C[types[0]] if types else 0
        ok = (c1.d4 == 0 and len(types) <= 1
              and count == c0.d3 + 2 * c0.d4
              and count == c1.d3  # all degree-3 vertices share the type
              and image.rank() == before.rank())
        if not ok:
            failures += 1
    report(capsys, 5, failures == 0,
           "a->aa, b->[a,b] kills degree-4 vertices, one shared type of full count, "
           "rank preserved on 500 subgroups (%d failures)" % failures)


def test_criterion_6_survivor_edges(capsys):
    rng = random.Random(905)
    failures = 0
    for _ in range(300):
        g = Folding.of_subgroup(random_subgroup(rng, F2, 4, 10), alphabet=F2)
        f = random_n_endomorphism(rng)
        sm = survivor_map(g, f)
        if not sm.all_survive or any(size != 1 for _, size in sm.designated.values()):
            failures += 1
    report(capsys, 6, failures == 0,
           "designated image edges never fold on 300 random pairs (%d failures)" % failures)


def test_criterion_7_length_preserving_catalog(capsys):
    maps = enumerate_length_preserving(F2)
    fpf = [f for f in maps if not f.has_nontrivial_fixed_point()]
    ok = len(maps) == 8 and len(fpf) == 5
    rng = random.Random(906)
    failures = 0
    for _ in range(200):
        gens = random_subgroup(rng, F2, 4, 10)
        c = Folding.of_subgroup(gens, alphabet=F2, mode=CORE_CYCLIC).degree_census()
        for f in maps:
            c_star = image_subgroup_folding(gens, f, mode=CORE_CYCLIC).degree_census()
            for x in (1, 2, -1, -2):
                if c_star.C[f.letter_image(x).letters[0]] != c.C[x]:
                    failures += 1
    report(capsys, 7, ok and failures == 0,
           "catalog has 8 maps, 5 fixed-point-free; relabeling identity on "
           "200 subgroups (%d failures)" % failures)


def test_criterion_8_delta_repair_by_relabelings(capsys):
    rng = random.Random(907)
    circ, star = bar(F2), GeneratorMap.identity(F2)
    checked = failures = 0
    while checked < 200:
        h = [phi0()(u) for u in random_subgroup(rng, F2, 4, 8)]
        k = [phi0()(u) for u in random_subgroup(rng, F2, 4, 8)]
        verdict = verify_lp_lemma(h, k, circ, star)
        if not verdict.applicable:
            continue
        checked += 1
        if verdict.delta_before <= Fraction(1, 2):
            failures += 1
        elif not (verdict.delta_after_below_half and verdict.pair_holds):
            failures += 1
    report(capsys, 8, failures == 0,
           "inverting one side drops delta below 1/2 on 200 high-delta pairs "
           "(%d failures)" % failures)


def test_criterion_9_rank_inequality_scan(capsys, scan_reports):
    failures = sum(1 for r in scan_reports
                   if not (r.hnc_holds and r.bounds_respected()))
    report(capsys, 9, failures == 0,
           "reduced-rank product inequality and all applicable bounds hold on "
           "1000 pairs (%d failures)" % failures)


def test_criterion_10_half_delta_criterion(capsys, scan_reports):
    low = [r for r in scan_reports if r.delta <= Fraction(1, 2)]
    failures = sum(1 for r in low if not r.hnc_holds)
    report(capsys, 10, failures == 0,
           "every pair with delta <= 1/2 satisfies the inequality "
           "(%d of %d low-delta pairs failed)" % (failures, len(low)))


def test_criterion_11_census_determinism(capsys):
    rng = random.Random(908)
    probe = tau(w("b"), w("a"))
    assert is_n_endomorphism(probe)
    groups = {}
    for _ in range(400):
        gens = random_subgroup(rng, F2, 2, 5)
        key = Folding.of_subgroup(gens, alphabet=F2, mode=CORE_CYCLIC) \
            .degree_census().five_tuple()
        image_key = image_subgroup_folding(gens, probe, mode=CORE_CYCLIC) \
            .degree_census().five_tuple()
        groups.setdefault(key, []).append(image_key)
    matched_pairs = sum(len(v) * (len(v) - 1) // 2 for v in groups.values())
    failures = sum(1 for v in groups.values() if len(set(v)) > 1)
    report(capsys, 11, matched_pairs >= 30 and failures == 0,
           "equal degree 5-tuples map to equal 5-tuples (%d matched pairs, "
           "%d mismatched groups)" % (matched_pairs, failures))


def test_criterion_12_experiment_determinism(capsys):
    ok = True
    for name in ("hnc-scan", "phi0", "survivors"):
        cfg = ExperimentConfig(name=name, trials=30, max_gens=3, max_len=8, seed=77)
        if run_experiment(cfg).to_json() != run_experiment(cfg).to_json():
            ok = False
    report(capsys, 12, ok, "equal-seed experiment reports are byte-identical")
