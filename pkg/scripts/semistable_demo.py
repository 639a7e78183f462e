#!/usr/bin/env python3
"""Round-trip demo: weight tuples vs configurations on a growing graph.

Feeds a tuple of dominant weights through the membership test and then
builds the matching geometry.  For member tuples the grown configuration
is scanned round by round and all slopes stay nonnegative; for
non-member tuples a destabilizing vertex is constructed whose slope is
exactly the negative of the violated inequality's value.

    python3 scripts/semistable_demo.py --n 3 --weights 1,1 2,0 0,2
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from dihedralcalc.building import construct_semistable
from dihedralcalc.cones import DominantWeight


@dataclass
class DemoConfig:
    n: int = 3
    weights: tuple[DominantWeight, ...] = (
        DominantWeight(Fraction(1), Fraction(1)),
        DominantWeight(Fraction(2), Fraction(0)),
        DominantWeight(Fraction(0), Fraction(2)),
    )
    seed: int = 0
    rounds: int = 3


def parse_weight(text: str) -> DominantWeight:
    a, b = text.split(",")
    return DominantWeight(Fraction(a), Fraction(b))


def show(elem) -> str:
    coeffs = elem.to_json()
    if all(c == "0" for c in coeffs[1:]):
        return coeffs[0]
    return "(" + " ".join(coeffs) + ")"


def run(cfg: DemoConfig) -> int:
    report = construct_semistable(cfg.n, cfg.weights, seed=cfg.seed,
                                  rounds=cfg.rounds)
    shown = " ".join(f"({w.a},{w.b})" for w in cfg.weights)
    graph = report.graph
    print(f"n={cfg.n} weights {shown}")
    print(f"graph: {len(graph.types)} vertices, "
          f"{len(graph.edges())} edges after growth")
    if report.member:
        print("tuple lies in the stability cone; slope scans per round:")
        for stage in report.scans:
            parts = []
            for l in (1, 2):
                scan = stage[f"min_{l}"]
                parts.append(
                    f"type {l}: min {show(scan.value)} at {scan.vertex}")
            print(f"  round {stage['round']} "
                  f"({stage['vertices']} vertices): " + "; ".join(parts))
        print("all slopes nonnegative")
        return 0
    tag = report.violated.tag
    print(f"tuple violates {tag.system} inequality {tag.words} "
          f"on side {tag.l}")
    print(f"destabilizing vertex {report.witness.vertex} has slope "
          f"{show(report.witness.value)} < 0")
    return 0


def parse_args(argv=None) -> DemoConfig:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--weights", nargs="+", type=parse_weight,
                        help="dominant weights as a,b pairs")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rounds", type=int, default=3)
    args = parser.parse_args(argv)
    cfg = DemoConfig(n=args.n, seed=args.seed, rounds=args.rounds)
    if args.weights:
        cfg.weights = tuple(args.weights)
    return cfg


if __name__ == "__main__":
    sys.exit(run(parse_args()))
