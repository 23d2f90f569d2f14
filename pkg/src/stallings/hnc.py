"""Rank statistics for subgroup pairs: delta/mu, classical bounds, verdicts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .folding import CORE_CYCLIC, CORE_KEEP, DegreeCensus, Folding
from .intersect import intersection_folding
from .morphisms import psi_embedding
from .words import Alphabet, F2, GeneratorMap, Word

# tie-break order for mu: a, b, a^-1, b^-1
LETTER_ORDER = (1, 2, -1, -2)


def reduced_rank(rank: int) -> int:
    return max(rank - 1, 0)


def delta_x(ch: DegreeCensus, ck: DegreeCensus, x: int) -> Fraction:
    """min(C_x(H)/d3(H), C_x(K)/d3(K)); zero when either has no degree-3 vertex."""
    if ch.d3 == 0 or ck.d3 == 0:
        return Fraction(0)
    return min(Fraction(ch.C.get(x, 0), ch.d3), Fraction(ck.C.get(x, 0), ck.d3))


def delta_mu(ch: DegreeCensus, ck: DegreeCensus) -> tuple[Fraction, Optional[int]]:
    """Max of delta_x over the four letters, and the first letter achieving it.

    mu is None only when both censuses have no degree-3 vertices.
    """
    if ch.d3 == 0 and ck.d3 == 0:
        return Fraction(0), None
    best = Fraction(-1)
    mu = None
    for x in LETTER_ORDER:
        value = delta_x(ch, ck, x)
        if value > best:
            best, mu = value, x
    return best, mu


def wneumann_estimate(ch: DegreeCensus, ck: DegreeCensus) -> tuple[Fraction, bool]:
    """Upper bound d4 d4 + (d4 d3 + d3 d4 + sum_x C_x C_x) / 2 for rbar(H meet K).

    The flag reports whether delta <= 1/2, in which case the convexity chain
    certifies the pair satisfies the rank inequality.
    """
    cross = sum(ch.C.get(x, 0) * ck.C.get(x, 0) for x in LETTER_ORDER)
    estimate = Fraction(ch.d4 * ck.d4) + Fraction(ch.d4 * ck.d3 + ch.d3 * ck.d4 + cross, 2)
    delta, _ = delta_mu(ch, ck)
    return estimate, delta <= Fraction(1, 2)


def bound_hneumann(rh: int, rk: int) -> int:
    """H. Neumann's bound 2 (rank H - 1)(rank K - 1) on rank(H meet K) - 1."""
    _require_ranks(rh, rk)
    return 2 * (rh - 1) * (rk - 1)


def bound_burns(rh: int, rk: int) -> int:
    _require_ranks(rh, rk)
    return 2 * (rh - 1) * (rk - 1) - min(rh - 1, rk - 1)


def bound_tardos96(rh: int, rk: int) -> int:
    _require_ranks(rh, rk)
    if rh < 3 or rk < 3:
        raise ValueError("the 1996 Tardos bound needs both ranks at least 3")
    return 2 * (rh - 1) * (rk - 1) - (rh - 1) - (rk - 1)


def bound_dicksformanek(rh: int, rk: int) -> int:
    _require_ranks(rh, rk)
    return (rh - 1) * (rk - 1) + max(rh - 3, 0) * max(rk - 3, 0)


def _require_ranks(rh: int, rk: int):
    if rh < 1 or rk < 1:
        raise ValueError("bounds require both ranks at least 1")


@dataclass
class PairReport:
    """Everything computed about one subgroup pair."""

    rank_h: int
    rank_k: int
    rank_meet: int
    rbar_h: int
    rbar_k: int
    rbar_meet: int
    delta: Fraction
    mu: Optional[int]
    hnc_holds: bool
    bounds: dict[str, object]
    census_h: DegreeCensus
    census_k: DegreeCensus
    wn_certified: bool

    def bounds_respected(self) -> bool:
        """rank_meet - 1 against every applicable closed-form bound."""
        excess = self.rank_meet - 1
        for name in ("hneumann", "burns", "tardos96", "dicksformanek"):
            value = self.bounds.get(name)
            if value is not None and excess > value:
                return False
        estimate = self.bounds.get("wneumann_estimate")
        return estimate is None or self.rbar_meet <= estimate

    def to_dict(self) -> dict:
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}

        bounds = {}
        for name in ("hneumann", "burns", "tardos96", "dicksformanek"):
            bounds[name] = self.bounds.get(name)
        bounds["wneumann_estimate"] = frac(self.bounds["wneumann_estimate"])
        return {
            "rank_h": self.rank_h,
            "rank_k": self.rank_k,
            "rank_meet": self.rank_meet,
            "delta": frac(self.delta),
            "mu": None if self.mu is None else F2.letter_str(self.mu),
            "hnc_holds": self.hnc_holds,
            "bounds": bounds,
            "census_h": census_to_dict(self.census_h),
            "census_k": census_to_dict(self.census_k),
        }


def census_to_dict(census: DegreeCensus) -> dict:
    return {
        "d": {str(deg): count for deg, count in sorted(census.d.items())},
        "C": {F2.letter_str(x): census.C.get(x, 0) for x in LETTER_ORDER} if census.C else {},
        "d3_total": census.d3,
        "d4_total": census.d4,
    }


def _to_rank2(gens: list[Word], alphabet: Alphabet) -> list[Word]:
    """Words over any alphabet as words over F2: pad rank 1, embed rank > 2 via psi."""
    if alphabet.rank == 2:
        return gens
    if alphabet.rank == 1:
        return [Word(F2, w.letters) for w in gens]
    psi = psi_embedding(alphabet.rank)
    return [psi(w) for w in gens]


def check_pair(h_gens: list[Word], k_gens: list[Word],
               alphabet: Optional[Alphabet] = None) -> PairReport:
    """Full report for one pair: ranks, intersection, delta/mu, bounds, verdict."""
    words = list(h_gens) + list(k_gens)
    if alphabet is None:
        if not words:
            raise ValueError("alphabet required when both generator lists are empty")
        alphabet = words[0].alphabet
    if any(w.alphabet != alphabet for w in words):
        raise ValueError("all generators must share one alphabet")
    h_gens = _to_rank2(list(h_gens), alphabet)
    k_gens = _to_rank2(list(k_gens), alphabet)

    def build(gens):
        gens = [w for w in gens if not w.is_identity]
        if not gens:
            trivial = Folding.trivial(F2)
            return trivial, trivial
        folded, _ = Folding.rose(gens).fold()
        return folded.core(CORE_KEEP), folded.core(CORE_CYCLIC)

    gh, cyc_h = build(h_gens)
    gk, cyc_k = build(k_gens)
    rank_h, rank_k = gh.rank(), gk.rank()
    meet = intersection_folding(gh, gk)
    rank_meet = meet.rank()
    ch, ck = cyc_h.degree_census(), cyc_k.degree_census()
    delta, mu = delta_mu(ch, ck)
    estimate, certified = wneumann_estimate(ch, ck)

    bounds: dict[str, object] = {"wneumann_estimate": estimate}
    if rank_h >= 1 and rank_k >= 1:
        bounds["hneumann"] = bound_hneumann(rank_h, rank_k)
        bounds["burns"] = bound_burns(rank_h, rank_k)
        bounds["dicksformanek"] = bound_dicksformanek(rank_h, rank_k)
        if rank_h >= 3 and rank_k >= 3:
            bounds["tardos96"] = bound_tardos96(rank_h, rank_k)

    rbar_h, rbar_k, rbar_meet = reduced_rank(rank_h), reduced_rank(rank_k), reduced_rank(rank_meet)
    return PairReport(
        rank_h=rank_h, rank_k=rank_k, rank_meet=rank_meet,
        rbar_h=rbar_h, rbar_k=rbar_k, rbar_meet=rbar_meet,
        delta=delta, mu=mu,
        hnc_holds=rbar_meet <= rbar_h * rbar_k,
        bounds=bounds, census_h=ch, census_k=ck,
        wn_certified=certified,
    )


@dataclass
class LpLemmaVerdict:
    """Outcome of the two-relabelings argument on a high-delta pair."""

    applicable: bool
    reason: str
    delta_before: Optional[Fraction] = None
    mu_before: Optional[int] = None
    delta_after: Optional[Fraction] = None
    delta_after_below_half: Optional[bool] = None
    pair_holds: Optional[bool] = None
    report_after: Optional[PairReport] = None


def verify_lp_lemma(h_gens: list[Word], k_gens: list[Word],
                    circ: GeneratorMap, star: GeneratorMap) -> LpLemmaVerdict:
    """Apply circ to H and star to K, expecting delta to drop below 1/2.

    Requires delta(H, K) > 1/2 and the two relabelings to disagree on mu(H, K);
    unmet preconditions are reported, not raised.
    """
    for name, m in (("circ", circ), ("star", star)):
        if not m.is_length_preserving():
            return LpLemmaVerdict(False, "%s is not length-preserving" % (name,))
    before = check_pair(h_gens, k_gens)
    if before.delta <= Fraction(1, 2):
        return LpLemmaVerdict(
            False, "delta <= 1/2: the convexity criterion already settles the pair",
            delta_before=before.delta, mu_before=before.mu)
    mu = before.mu
    mu_circ = circ.letter_image(mu).letters[0]
    mu_star = star.letter_image(mu).letters[0]
    if mu_circ == mu_star:
        return LpLemmaVerdict(False, "the relabelings agree on mu",
                              delta_before=before.delta, mu_before=mu)
    h_new = [circ(w) for w in h_gens]
    k_new = [star(w) for w in k_gens]
    after = check_pair(h_new, k_new)
    return LpLemmaVerdict(
        True, "ok",
        delta_before=before.delta, mu_before=mu,
        delta_after=after.delta,
        delta_after_below_half=after.delta < Fraction(1, 2),
        pair_holds=after.hnc_holds,
        report_after=after,
    )
