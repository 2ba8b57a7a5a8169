"""Formula corpora: exhaustive small-formula enumeration and seeded sampling.

Both generators produce formulas directly in negation normal form, so every
output is a well-formed goal for the prover and the oracle without any
rewriting step.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .formula import AgBox, AgDia, And, Atom, Box, Dia, Formula, NegAtom, Or


def enumerate_formulas(
    max_connectives: int,
    atom_names: Sequence[str] = ("p", "q"),
    agents: int = 1,
) -> Iterator[Formula]:
    """Every NNF formula with at most ``max_connectives`` connectives.

    Literals count zero connectives; each boolean or modal operator counts
    one.  The order is deterministic: ascending connective count, and within
    one count, unary wrappers over smaller formulas first, then conjunctions
    and disjunctions over all splits of the remaining budget.
    """
    literals: list[Formula] = [Atom(a) for a in atom_names]
    literals += [NegAtom(a) for a in atom_names]
    by_count: list[list[Formula]] = [literals]
    yield from literals
    for count in range(1, max_connectives + 1):
        level: list[Formula] = []
        for body in by_count[count - 1]:
            level.append(Box(body))
            level.append(Dia(body))
            for i in range(1, agents + 1):
                level.append(AgBox(i, body))
                level.append(AgDia(i, body))
        for left_count in range(count):
            right_count = count - 1 - left_count
            for left in by_count[left_count]:
                for right in by_count[right_count]:
                    level.append(And(left, right))
                    level.append(Or(left, right))
        by_count.append(level)
        yield from level


def random_formula(
    rng: random.Random,
    max_depth: int,
    atom_names: Sequence[str] = ("p", "q"),
    agents: int = 1,
) -> Formula:
    """A random NNF formula of nesting depth at most ``max_depth``."""
    if max_depth <= 0:
        kind = "literal"
    else:
        kind = rng.choice(
            ("literal", "and", "or", "box", "dia", "agbox", "agdia")
        )
    match kind:
        case "literal":
            name = rng.choice(tuple(atom_names))
            return Atom(name) if rng.random() < 0.5 else NegAtom(name)
        case "and":
            return And(
                random_formula(rng, max_depth - 1, atom_names, agents),
                random_formula(rng, max_depth - 1, atom_names, agents),
            )
        case "or":
            return Or(
                random_formula(rng, max_depth - 1, atom_names, agents),
                random_formula(rng, max_depth - 1, atom_names, agents),
            )
        case "box":
            return Box(random_formula(rng, max_depth - 1, atom_names, agents))
        case "dia":
            return Dia(random_formula(rng, max_depth - 1, atom_names, agents))
        case "agbox":
            return AgBox(
                rng.randint(1, agents),
                random_formula(rng, max_depth - 1, atom_names, agents),
            )
        case _:
            return AgDia(
                rng.randint(1, agents),
                random_formula(rng, max_depth - 1, atom_names, agents),
            )
