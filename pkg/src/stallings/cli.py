"""Command-line surface.

Words use lowercase for generators and uppercase for inverses ("baB" is
b a b^-1); lists are comma-separated.  Map specs are either explicit
("a=aa;b=ABab") or catalog names: phi0, bar, psi:<n>, tau:<w_a>:<w_b>,
lp:<0..7>.

Exit codes: 0 success, 1 usage or parse error, 2 property violation found.
"""
from __future__ import annotations

import argparse
import json
import string
import sys
from fractions import Fraction

from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment
from .folding import CORE_CYCLIC, CORE_KEEP, Folding
from .hnc import census_to_dict, check_pair, delta_mu
from .intersect import intersection_folding
from .morphisms import (bar, check_injective, image_subgroup_folding,
                        is_n_endomorphism, phi0, psi_embedding, tau)
from .words import (Alphabet, F2, GeneratorMap, Word, enumerate_length_preserving,
                    parse_words)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(1)


def infer_alphabet(*texts: str) -> Alphabet:
    """Alphabet from the letters appearing in the inputs; rank at least 2."""
    rank = 2
    for text in texts:
        for ch in text:
            low = ch.lower()
            if low in string.ascii_lowercase:
                rank = max(rank, ord(low) - ord("a") + 1)
            elif ch not in ", ":
                raise ValueError("unexpected character in word list: %r" % (ch,))
    return Alphabet.of_rank(rank)


def parse_map_spec(spec: str, gen_alphabet: Alphabet = F2) -> GeneratorMap:
    if spec == "phi0":
        return phi0()
    if spec == "bar":
        return bar(gen_alphabet)
    if spec.startswith("psi:"):
        return psi_embedding(int(spec.split(":", 1)[1]))
    if spec.startswith("tau:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("tau spec must look like tau:<w_a>:<w_b>")
        return tau(Word.parse(parts[1], F2), Word.parse(parts[2], F2))
    if spec.startswith("lp:"):
        catalog = enumerate_length_preserving(F2)
        index = int(spec.split(":", 1)[1])
        if not 0 <= index < len(catalog):
            raise ValueError("lp index out of range 0..%d" % (len(catalog) - 1,))
        return catalog[index]
    if "=" in spec:
        entries = [e for e in spec.split(";") if e.strip()]
        lhs = sorted(e.partition("=")[0].strip() for e in entries)
        domain = Alphabet.of_rank(len(lhs))
        if lhs != list(domain.names):
            raise ValueError("map must define images for a, b, ... without gaps")
        rhs = "".join(e.partition("=")[2] for e in entries)
        codomain = infer_alphabet(rhs)
        return GeneratorMap.parse(spec, domain, codomain)
    raise ValueError("unrecognized map spec: %r" % (spec,))


def _emit_folding(g: Folding, fmt: str):
    if fmt == "json":
        print(json.dumps(g.to_dict(), sort_keys=True, indent=2))
    elif fmt == "dot":
        print(g.to_dot())
    else:
        print(g.to_text())


def _core_mode(flag: str) -> str:
    return CORE_CYCLIC if flag == "cyclic" else CORE_KEEP


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def build_parser() -> _Parser:
    parser = _Parser(prog="stallings", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")

    p = sub.add_parser("fold", help="fold the subgroup generated by --gens")
    p.add_argument("--gens", required=True)
    p.add_argument("--core", choices=("keep", "cyclic"), default="keep")
    add_format(p)

    p = sub.add_parser("intersect", help="folding of the intersection of two subgroups")
    p.add_argument("--h", required=True, dest="h")
    p.add_argument("--k", required=True, dest="k")
    add_format(p)

    p = sub.add_parser("check", help="full rank-inequality report for a pair")
    p.add_argument("--h", required=True, dest="h")
    p.add_argument("--k", required=True, dest="k")

    p = sub.add_parser("census", help="degree census of a subgroup folding")
    p.add_argument("--gens", required=True)

    p = sub.add_parser("delta", help="delta and mu statistics for a pair")
    p.add_argument("--h", required=True, dest="h")
    p.add_argument("--k", required=True, dest="k")

    p = sub.add_parser("endo", help="apply or classify generator maps")
    endo_sub = p.add_subparsers(dest="endo_command", required=True)
    pa = endo_sub.add_parser("apply", help="folding of the image subgroup")
    pa.add_argument("--map", required=True, dest="map_spec")
    pa.add_argument("--gens", required=True)
    pa.add_argument("--core", choices=("keep", "cyclic"), default="keep")
    add_format(pa)
    pc = endo_sub.add_parser("check", help="classify a map")
    pc.add_argument("--map", required=True, dest="map_spec")

    p = sub.add_parser("catalog", help="built-in map catalogs")
    p.add_argument("which", choices=("lp",))

    p = sub.add_parser("experiment", help="run a randomized verification suite")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-gens", type=int, default=4)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)

    return parser


def cmd_fold(args) -> int:
    alphabet = infer_alphabet(args.gens)
    gens = parse_words(args.gens, alphabet)
    g = Folding.of_subgroup(gens, alphabet=alphabet, mode=_core_mode(args.core))
    _emit_folding(g, args.format)
    return 0


def cmd_intersect(args) -> int:
    alphabet = infer_alphabet(args.h, args.k)
    gh = Folding.of_subgroup(parse_words(args.h, alphabet), alphabet=alphabet)
    gk = Folding.of_subgroup(parse_words(args.k, alphabet), alphabet=alphabet)
    _emit_folding(intersection_folding(gh, gk), args.format)
    return 0


def cmd_check(args) -> int:
    alphabet = infer_alphabet(args.h, args.k)
    report = check_pair(parse_words(args.h, alphabet), parse_words(args.k, alphabet),
                        alphabet=alphabet)
    print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return 0 if report.hnc_holds and report.bounds_respected() else 2


def cmd_census(args) -> int:
    alphabet = infer_alphabet(args.gens)
    g = Folding.of_subgroup(parse_words(args.gens, alphabet), alphabet=alphabet,
                            mode=CORE_CYCLIC)
    print(json.dumps(census_to_dict(g.degree_census()), sort_keys=True, indent=2))
    return 0


def cmd_delta(args) -> int:
    alphabet = infer_alphabet(args.h, args.k)
    if alphabet.rank != 2:
        raise ValueError("delta statistics are defined for rank-2 subgroups")
    ch = Folding.of_subgroup(parse_words(args.h, alphabet), alphabet=alphabet,
                             mode=CORE_CYCLIC).degree_census()
    ck = Folding.of_subgroup(parse_words(args.k, alphabet), alphabet=alphabet,
                             mode=CORE_CYCLIC).degree_census()
    delta, mu = delta_mu(ch, ck)
    print(json.dumps({"delta": _frac(delta),
                      "mu": None if mu is None else F2.letter_str(mu),
                      "census_h": census_to_dict(ch),
                      "census_k": census_to_dict(ck)}, sort_keys=True, indent=2))
    return 0


def cmd_endo_apply(args) -> int:
    f = parse_map_spec(args.map_spec, infer_alphabet(args.gens))
    gens = parse_words(args.gens, f.domain)
    g = image_subgroup_folding(gens, f, mode=_core_mode(args.core))
    _emit_folding(g, args.format)
    return 0


def cmd_endo_check(args) -> int:
    f = parse_map_spec(args.map_spec)
    info = {
        "map": str(f),
        "domain_rank": f.domain.rank,
        "codomain_rank": f.codomain.rank,
        "length_preserving": f.is_length_preserving(),
        "n_endomorphism": is_n_endomorphism(f),
        "injective": check_injective(f),
    }
    if info["length_preserving"]:
        info["has_nontrivial_fixed_point"] = f.has_nontrivial_fixed_point()
    print(json.dumps(info, sort_keys=True, indent=2))
    return 0


def cmd_catalog(args) -> int:
    for i, f in enumerate(enumerate_length_preserving(F2)):
        fixed = f.has_nontrivial_fixed_point()
        print("lp:%d  %-12s %s" % (i, str(f), "fixed-point" if fixed else "fixed-point-free"))
    return 0


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(name=args.name, trials=args.trials, max_gens=args.max_gens,
                           max_len=args.max_len, seed=args.seed)
    report = run_experiment(cfg)
    print(report.to_json())
    print("completed in %.2fs: %d violation(s)"
          % (report.wall_time, len(report.violations)), file=sys.stderr)
    return 2 if report.violations else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "fold": cmd_fold,
        "intersect": cmd_intersect,
        "check": cmd_check,
        "census": cmd_census,
        "delta": cmd_delta,
        "catalog": cmd_catalog,
        "experiment": cmd_experiment,
    }
    try:
        if args.command == "endo":
            handler = cmd_endo_apply if args.endo_command == "apply" else cmd_endo_check
            return handler(args)
        return handlers[args.command](args)
    except ValueError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
