"""Backward proof search deciding validity for the single-agent logics.

The procedure works on a growing labelled sequent, applying the first
instruction of the following priority list that fires (scanning labels in
ascending order and formulas in insertion order, for reproducibility):

1. an atomic clash ``w:p, w:~p`` closes the branch (rule ``id``);
2. a *stable* sequent — saturated, realized, propagated, and within the
   choice bound — refutes the goal and is returned as a counter-model seed;
3. (i) unsaturated disjunctions add both disjuncts; (ii) unsaturated
   conjunctions branch, one conjunct per premise;
4. an agentive diamond ``w:<1>f`` copies ``f`` to a choice-tree mate of
   ``w`` that is missing it;
5. a settledness diamond ``w:dia f`` copies ``f`` to any label missing it;
6. an unrealized agentive box ``w:[1]f`` spawns a fresh ``R_1``-successor
   carrying ``f``;
7. an unrealized settledness box ``w:box f`` spawns a fresh label carrying
   ``f``;
8. with a positive choice bound ``n``, more than ``n`` choice-trees trigger
   a case split joining two of the ``n+1`` smallest roots per premise.

Blocking conditions (the stability predicates below) ensure each instruction
fires at most once per trigger, which gives termination.  Successful
branches are folded into a refined-mode derivation via the step-to-rule
correspondence; failed branches surface the stable sequent itself.

Two theoretical size bounds — labels and relational atoms — are *monitored*
rather than enforced: a search that outgrows them records the event in its
statistics and keeps going (see ``SearchStats.bound_violations``).  The
structural invariants that the search actually relies on (forest shape,
choice-tree count dropping across a case split) are hard assertions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .calculus import Derivation, RuleTag
from .formula import AgBox, AgDia, And, Atom, Box, Dia, Formula, NegAtom, Or
from .formula import agents_of, negate, subformulae
from .sequent import (
    LabelledFormula,
    LabelledSequent,
    RelAtom,
    choice_trees,
    fresh_label,
    is_forestlike,
    tree_of,
)


class InternalInvariantError(AssertionError):
    """A structural invariant of the search was broken (a genuine bug)."""


class SearchLimitExceeded(RuntimeError):
    """A user-supplied diagnostic cap (steps or labels) was hit."""


@dataclass(frozen=True)
class ProverConfig:
    choices: int = 0
    max_steps: int | None = None
    max_labels: int | None = None

    def __post_init__(self) -> None:
        if self.choices < 0:
            raise ValueError("the choice bound cannot be negative")


@dataclass
class SearchStats:
    steps: int = 0
    max_labels: int = 0
    label_bound: int = 0
    rel_bound_base: int = 0
    bound_violations: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Provable:
    derivation: Derivation
    stats: SearchStats


@dataclass(frozen=True)
class Unprovable:
    stable: LabelledSequent
    stats: SearchStats


ProveResult = Provable | Unprovable


# ---------------------------------------------------------------------------
# Stability predicates
# ---------------------------------------------------------------------------


def is_saturated(s: LabelledSequent, w: int) -> bool:
    """No complementary pair at ``w``; disjunctions have both disjuncts;
    conjunctions have at least one conjunct."""
    for f in s.forms_at(w):
        if s.has_form(w, negate(f)):
            return False
        match f:
            case Or(left, right):
                if not (s.has_form(w, left) and s.has_form(w, right)):
                    return False
            case And(left, right):
                if not (s.has_form(w, left) or s.has_form(w, right)):
                    return False
    return True


def is_box_realized(s: LabelledSequent, w: int) -> bool:
    """Every ``w:box f`` has some label carrying ``f``."""
    labels = s.labels()
    return all(
        any(s.has_form(u, f.body) for u in labels)
        for f in s.forms_at(w)
        if isinstance(f, Box)
    )


def is_agbox_realized(s: LabelledSequent, w: int) -> bool:
    """Every ``w:[1]f`` has some label in ``w``'s choice-tree carrying ``f``."""
    members: frozenset[int] | None = None
    for f in s.forms_at(w):
        if isinstance(f, AgBox):
            if members is None:
                members = tree_of(s, w)
            if not any(s.has_form(u, f.body) for u in members):
                return False
    return True


def is_dia_propagated(s: LabelledSequent, w: int) -> bool:
    """Every ``w:dia f`` has ``f`` at *all* labels."""
    labels = s.labels()
    return all(
        all(s.has_form(u, f.body) for u in labels)
        for f in s.forms_at(w)
        if isinstance(f, Dia)
    )


def is_agdia_propagated(s: LabelledSequent, w: int) -> bool:
    """Every ``w:<1>f`` has ``f`` at all labels of ``w``'s choice-tree."""
    members: frozenset[int] | None = None
    for f in s.forms_at(w):
        if isinstance(f, AgDia):
            if members is None:
                members = tree_of(s, w)
            if not all(s.has_form(u, f.body) for u in members):
                return False
    return True


def is_n_choice_consistent(s: LabelledSequent, n: int) -> bool:
    """At most ``n`` choice-trees.  Callers skip this check when n = 0."""
    return len(choice_trees(s)) <= n


def is_stable(s: LabelledSequent, n: int) -> bool:
    """Saturated, realized, and propagated everywhere; within the
    choice-tree budget when ``n`` is positive."""
    for w in s.labels():
        if not (
            is_saturated(s, w)
            and is_box_realized(s, w)
            and is_agbox_realized(s, w)
            and is_dia_propagated(s, w)
            and is_agdia_propagated(s, w)
        ):
            return False
    return n == 0 or is_n_choice_consistent(s, n)


# ---------------------------------------------------------------------------
# Proof search
# ---------------------------------------------------------------------------

_AGENT = 1  # the search handles exactly one agent


def prove(cfg: ProverConfig, goal: Formula) -> ProveResult:
    """Decide the goal, returning a checkable derivation or a stable sequent.

    The goal may only mention agent 1.  ``Provable`` results carry a
    derivation that passes the refined-mode checker; ``Unprovable`` results
    carry a stable sequent from which a counter-model can be read off.
    """
    bad_agents = set(agents_of(goal)) - {_AGENT}
    if bad_agents:
        raise ValueError(
            f"proof search is single-agent; goal mentions agents {sorted(bad_agents)}"
        )
    boxes = sum(1 for f in subformulae(goal) if isinstance(f, (Box, AgBox)))
    agboxes = sum(1 for f in subformulae(goal) if isinstance(f, AgBox))
    stats = SearchStats(label_bound=1 + boxes, rel_bound_base=agboxes)
    root = LabelledSequent(forms=[LabelledFormula(0, goal)])
    searcher = _Searcher(cfg, stats)
    searcher.note(root, apc_edges=0)
    outcome = searcher.search(root, apc_edges=0)
    if isinstance(outcome, LabelledSequent):
        return Unprovable(outcome, stats)
    return Provable(outcome, stats)


class _Searcher:
    """One proof-search run: configuration, statistics, bound monitoring."""

    def __init__(self, cfg: ProverConfig, stats: SearchStats) -> None:
        self.cfg = cfg
        self.stats = stats
        self._seen_violations: set[str] = set()

    # -- bookkeeping --------------------------------------------------------

    def note(self, s: LabelledSequent, apc_edges: int) -> None:
        """Record sizes, monitor the theoretical bounds, hard-check shape."""
        stats = self.stats
        labels = s.labels()
        stats.max_labels = max(stats.max_labels, len(labels))
        if not is_forestlike(s):
            raise InternalInvariantError(f"sequent is not forestlike: {s.show()}")
        if len(labels) > stats.label_bound:
            self._record(
                f"label bound exceeded: {len(labels)} labels > {stats.label_bound}"
            )
        rel_bound = stats.rel_bound_base + apc_edges
        if len(s.rel) > rel_bound:
            self._record(
                f"relational bound exceeded: {len(s.rel)} atoms > {rel_bound}"
            )
        if self.cfg.max_labels is not None and len(labels) > self.cfg.max_labels:
            raise SearchLimitExceeded(
                f"label cap {self.cfg.max_labels} exceeded ({len(labels)} labels)"
            )

    def _record(self, message: str) -> None:
        if message not in self._seen_violations:
            self._seen_violations.add(message)
            self.stats.bound_violations.append(message)

    def _tick(self) -> None:
        self.stats.steps += 1
        if self.cfg.max_steps is not None and self.stats.steps > self.cfg.max_steps:
            raise SearchLimitExceeded(f"step cap {self.cfg.max_steps} exceeded")

    # -- the instruction loop ----------------------------------------------

    def search(
        self, s: LabelledSequent, apc_edges: int
    ) -> Derivation | LabelledSequent:
        """Run the priority loop; recurse at case splits.

        Returns a derivation when every branch closes, otherwise the stable
        sequent found on the first failing branch.
        """
        trail: list[tuple[LabelledSequent, RuleTag, dict]] = []
        current = s

        def fold(top: Derivation) -> Derivation:
            for concl, rule, principal in reversed(trail):
                top = Derivation(concl, rule, principal, (top,))
            return top

        def step_to(s2: LabelledSequent, rule: RuleTag, principal: dict) -> None:
            nonlocal current
            self._tick()
            trail.append((current, rule, principal))
            current = s2
            self.note(current, apc_edges)

        while True:
            scan = [(w, f) for w in current.labels() for f in current.forms_at(w)]

            # 1. atomic clash
            clash = next(
                (
                    (w, f.name)
                    for w, f in scan
                    if isinstance(f, (Atom, NegAtom))
                    and current.has_form(w, negate(f))
                ),
                None,
            )
            if clash is not None:
                self._tick()
                w, name = clash
                leaf = Derivation(current, RuleTag.ID, {"label": w, "atom": name})
                return fold(leaf)

            # 2. stability — refutation found
            if is_stable(current, self.cfg.choices):
                return current

            # 3(i). disjunction missing a disjunct
            fired = False
            for w, f in scan:
                if isinstance(f, Or) and not (
                    current.has_form(w, f.left) and current.has_form(w, f.right)
                ):
                    step_to(
                        current.extended(
                            forms=[
                                LabelledFormula(w, f.left),
                                LabelledFormula(w, f.right),
                            ]
                        ),
                        RuleTag.OR,
                        {"label": w, "formula": f},
                    )
                    fired = True
                    break
            if fired:
                continue

            # 3(ii). conjunction with neither conjunct — case split
            for w, f in scan:
                if isinstance(f, And) and not (
                    current.has_form(w, f.left) or current.has_form(w, f.right)
                ):
                    self._tick()
                    subderivs = []
                    for part in (f.left, f.right):
                        premise = current.extended(forms=[LabelledFormula(w, part)])
                        self.note(premise, apc_edges)
                        outcome = self.search(premise, apc_edges)
                        if isinstance(outcome, LabelledSequent):
                            return outcome
                        subderivs.append(outcome)
                    node = Derivation(
                        current,
                        RuleTag.AND,
                        {"label": w, "formula": f},
                        tuple(subderivs),
                    )
                    return fold(node)

            # 4. agentive diamond not yet propagated through its choice-tree
            for w, f in scan:
                if isinstance(f, AgDia):
                    u = next(
                        (
                            u
                            for u in sorted(tree_of(current, w))
                            if not current.has_form(u, f.body)
                        ),
                        None,
                    )
                    if u is not None:
                        step_to(
                            current.extended(forms=[LabelledFormula(u, f.body)]),
                            RuleTag.PROP,
                            {
                                "agent": _AGENT,
                                "label": w,
                                "formula": f,
                                "witness": u,
                            },
                        )
                        fired = True
                        break
            if fired:
                continue

            # 5. settledness diamond not yet propagated everywhere
            for w, f in scan:
                if isinstance(f, Dia):
                    u = next(
                        (
                            u
                            for u in current.labels()
                            if not current.has_form(u, f.body)
                        ),
                        None,
                    )
                    if u is not None:
                        step_to(
                            current.extended(forms=[LabelledFormula(u, f.body)]),
                            RuleTag.DIA,
                            {"label": w, "formula": f, "witness": u},
                        )
                        fired = True
                        break
            if fired:
                continue

            # 6. unrealized agentive box — fresh choice-tree mate
            for w, f in scan:
                if isinstance(f, AgBox) and not any(
                    current.has_form(u, f.body) for u in tree_of(current, w)
                ):
                    v = fresh_label(current)
                    step_to(
                        current.extended(
                            rel=[RelAtom(_AGENT, w, v)],
                            forms=[LabelledFormula(v, f.body)],
                        ),
                        RuleTag.AGBOX,
                        {"agent": _AGENT, "label": w, "formula": f, "fresh": v},
                    )
                    fired = True
                    break
            if fired:
                continue

            # 7. unrealized settledness box — fresh label
            for w, f in scan:
                if isinstance(f, Box) and not any(
                    current.has_form(u, f.body) for u in current.labels()
                ):
                    v = fresh_label(current)
                    step_to(
                        current.extended(forms=[LabelledFormula(v, f.body)]),
                        RuleTag.BOX,
                        {"label": w, "formula": f, "fresh": v},
                    )
                    fired = True
                    break
            if fired:
                continue

            # 8. too many choice-trees — join roots pairwise, case per pair
            n = self.cfg.choices
            trees = choice_trees(current)
            if n > 0 and len(trees) > n:
                roots = [t.root for t in trees][: n + 1]
                self._tick()
                subderivs = []
                for k in range(n):
                    for j in range(k + 1, n + 1):
                        premise = current.extended(
                            rel=[RelAtom(_AGENT, roots[k], roots[j])]
                        )
                        self.note(premise, apc_edges + 1)
                        if len(choice_trees(premise)) != len(trees) - 1:
                            raise InternalInvariantError(
                                "joining two roots must reduce the choice-tree "
                                f"count by one: {premise.show()}"
                            )
                        outcome = self.search(premise, apc_edges + 1)
                        if isinstance(outcome, LabelledSequent):
                            return outcome
                        subderivs.append(outcome)
                node = Derivation(
                    current,
                    RuleTag.APC,
                    {"agent": _AGENT, "roots": tuple(roots)},
                    tuple(subderivs),
                )
                return fold(node)

            raise InternalInvariantError(
                f"no instruction applies to the unstable sequent {current.show()}"
            )
