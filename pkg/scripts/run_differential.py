#!/usr/bin/env python3
"""Differential sweep: the proof search against the enumeration oracle.

Enumerates every normal-form formula over the given atoms up to a connective
budget (optionally plus random formulas), decides each at every requested
choice bound with both engines, and reports disagreements, certificate or
counter-model failures, and monitored size-bound excesses.
"""

import argparse
import random
import time

from stitprover import (
    CalculusConfig,
    Mode,
    Provable,
    ProverConfig,
    Valid,
    check_derivation,
    check_frame,
    decide_by_enumeration,
    enumerate_formulas,
    evaluate,
    extract_countermodel,
    pretty,
    prove,
    random_formula,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-connectives", type=int, default=3, metavar="C")
    parser.add_argument("--atoms", default="p,q", metavar="NAMES",
                        help="comma-separated atom names (default p,q)")
    parser.add_argument("--bounds", default="0,1,2", metavar="NS",
                        help="comma-separated choice bounds (default 0,1,2)")
    parser.add_argument("--random", type=int, default=0, metavar="K",
                        help="additionally try K random formulas")
    parser.add_argument("--depth", type=int, default=4, metavar="D",
                        help="depth of the random formulas")
    parser.add_argument("--seed", type=int, default=7, metavar="S")
    parser.add_argument("--verify-evidence", action="store_true",
                        help="also check every certificate and counter-model")
    args = parser.parse_args()

    names = tuple(args.atoms.split(","))
    bounds = [int(n) for n in args.bounds.split(",")]
    goals = list(enumerate_formulas(args.max_connectives, names))
    rng = random.Random(args.seed)
    goals.extend(random_formula(rng, args.depth, names) for _ in range(args.random))

    start = time.perf_counter()
    runs = disagreements = evidence_failures = 0
    violations: list[tuple[str, int]] = []
    for goal in goals:
        for n in bounds:
            runs += 1
            result = prove(ProverConfig(choices=n), goal)
            verdict = decide_by_enumeration(goal, choices=n)
            if isinstance(result, Provable) != isinstance(verdict, Valid):
                disagreements += 1
                print(f"DISAGREEMENT n={n}: {pretty(goal)}")
            if result.stats.bound_violations:
                violations.append((pretty(goal), n))
            if args.verify_evidence:
                if isinstance(result, Provable):
                    cfg = CalculusConfig(agents=1, choices=n, mode=Mode.REFINED)
                    if not check_derivation(cfg, result.derivation).ok:
                        evidence_failures += 1
                        print(f"BAD CERTIFICATE n={n}: {pretty(goal)}")
                else:
                    model, interp = extract_countermodel(result.stable, 0, n)
                    if not check_frame(model, 1, n).ok or evaluate(
                        model, interp[0], goal
                    ):
                        evidence_failures += 1
                        print(f"BAD COUNTER-MODEL n={n}: {pretty(goal)}")

    elapsed = time.perf_counter() - start
    print(f"{runs} runs over {len(goals)} goals in {elapsed:.1f} s")
    print(f"disagreements: {disagreements}")
    if args.verify_evidence:
        print(f"evidence failures: {evidence_failures}")
    print(f"runs exceeding a monitored size bound: {len(violations)}")
    for text, n in violations[:20]:
        print(f"  n={n}: {text}")
    if len(violations) > 20:
        print(f"  ... and {len(violations) - 20} more")
    return 1 if disagreements or evidence_failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
