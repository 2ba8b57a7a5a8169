"""Acceptance suite: one end-to-end test per shipping criterion.

Criteria 3-6 share one corpus sweep: every normal-form formula over {p, q}
with at most three connectives, plus 500 seeded random formulas of depth at
most four, each decided at choice bounds 0, 1 and 2 by both the search
procedure and the enumeration oracle.  The sweep also verifies every
certificate and counter-model it produces and records every monitored
size-bound excess.
"""

import random
import time
from dataclasses import dataclass, field

import pytest

from stitprover import (
    Atom,
    CalculusConfig,
    Derivation,
    LabelledFormula,
    LabelledSequent,
    Mode,
    Provable,
    ProverConfig,
    RelAtom,
    Valid,
    ValidUpToBound,
    check_derivation,
    check_frame,
    decide_by_enumeration,
    enumerate_formulas,
    evaluate,
    extract_countermodel,
    graph_of,
    parse,
    pretty,
    prove,
    random_formula,
    side_condition_holds,
)


def _line(number: int, description: str, ok: bool) -> None:
    print(f"criterion {number} [{description}]: {'PASS' if ok else 'FAIL'}")


def _best_of_five(operation) -> float:
    best = float("inf")
    for _ in range(5):
        start = time.perf_counter()
        operation()
        best = min(best, time.perf_counter() - start)
    return best


# ---------------------------------------------------------------------------
# Criterion 1: worked examples reproduce exactly, in under a millisecond
# ---------------------------------------------------------------------------


def test_criterion_1_worked_examples():
    # A line of four labels 0-1-2-3: the 2-labelled middle edge blocks
    # <1>-propagation from label 0 to label 3 but not to its neighbour 1.
    prop_seq = LabelledSequent(
        rel=[RelAtom(1, 0, 1), RelAtom(2, 1, 2), RelAtom(1, 2, 3)],
        forms=[LabelledFormula(0, Atom("p"))],
    )

    def check_propagation():
        return (
            side_condition_holds(prop_seq, 1, 0, 3),
            side_condition_holds(prop_seq, 1, 0, 1),
        )

    # Three labels, two relational atoms, mixed formulas at each label.
    graph_seq = LabelledSequent(
        rel=[RelAtom(1, 0, 1), RelAtom(1, 2, 0)],
        forms=[
            LabelledFormula(0, Atom("p")),
            LabelledFormula(1, parse("~p | q")),
            LabelledFormula(2, Atom("r")),
            LabelledFormula(2, parse("dia q")),
        ],
    )

    def check_graph():
        return graph_of(graph_seq)

    timings = [_best_of_five(check_propagation), _best_of_five(check_graph)]

    blocked, direct = check_propagation()
    graph = check_graph()
    exact = (
        blocked is False
        and direct is True
        and graph.vertices == frozenset({0, 1, 2})
        and graph.edges == frozenset({(0, 1, 1), (2, 0, 1)})
        and dict(graph.vertex_labels)
        == {
            0: frozenset({Atom("p")}),
            1: frozenset({parse("~p | q")}),
            2: frozenset({Atom("r"), parse("dia q")}),
        }
    )
    fast = all(t < 0.001 for t in timings)
    _line(1, "worked examples, exact and < 1 ms", exact and fast)
    assert exact
    assert fast, f"timings {timings}"


# ---------------------------------------------------------------------------
# Criterion 2: the axiom suite is provable and valid in under five seconds
# ---------------------------------------------------------------------------

AXIOMS = [
    # Propositional base.
    ("p -> (q -> p)", 0),
    ("(~q -> ~p) -> (p -> q)", 0),
    ("(p -> (q -> r)) -> ((p -> q) -> (p -> r))", 0),
    # S5 for the historic modality.
    ("box (p -> q) -> (box p -> box q)", 0),
    ("box p -> p", 0),
    ("dia p -> box dia p", 0),
    ("box p | dia ~p", 0),
    # S5 for the agentive modality.
    ("[1] (p -> q) -> ([1] p -> [1] q)", 0),
    ("[1] p -> p", 0),
    ("<1> p -> [1] <1> p", 0),
    ("[1] p | <1> ~p", 0),
    # Settledness implies agentive necessity.
    ("box p -> [1] p", 0),
    # Independence of agents is trivial for one agent.
    ("dia [1] p -> dia [1] p", 0),
    # Bounded choice, one axiom per bound.
    ("dia [1] p -> p", 1),
    ("dia [1] p & dia (~p & [1] q) -> p | q", 2),
    (
        "dia [1] p & dia (~p & [1] q) & dia (~p & ~q & [1] r) -> p | q | r",
        3,
    ),
]


def test_criterion_2_axiom_suite():
    start = time.perf_counter()
    failures = []
    for text, n in AXIOMS:
        goal = parse(text)
        if not isinstance(prove(ProverConfig(choices=n), goal), Provable):
            failures.append(f"not provable at n={n}: {text}")
        if not isinstance(decide_by_enumeration(goal, choices=n), Valid):
            failures.append(f"not valid at n={n}: {text}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5.0
    _line(2, f"16 axioms provable and valid in {elapsed:.2f} s", ok)
    assert not failures, failures
    assert elapsed < 5.0


# ---------------------------------------------------------------------------
# The shared corpus sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    enumerated: int = 0
    runs: int = 0
    provable_runs: int = 0
    unprovable_runs: int = 0
    disagreements: list = field(default_factory=list)
    certificate_failures: list = field(default_factory=list)
    model_failures: list = field(default_factory=list)
    violation_runs: list = field(default_factory=list)
    derivation_sample: list = field(default_factory=list)
    elapsed: float = 0.0


BOUNDS = (0, 1, 2)


@pytest.fixture(scope="module")
def sweep():
    start = time.perf_counter()
    report = SweepReport()

    goals = list(enumerate_formulas(3, ("p", "q")))
    report.enumerated = len(goals)
    rng = random.Random(7)
    goals.extend(random_formula(rng, 4, ("p", "q")) for _ in range(500))

    for goal in goals:
        for n in BOUNDS:
            report.runs += 1
            result = prove(ProverConfig(choices=n), goal)
            verdict = decide_by_enumeration(goal, choices=n)
            if isinstance(result, Provable) != isinstance(verdict, Valid):
                report.disagreements.append(
                    f"n={n}: {pretty(goal)} (search says "
                    f"{type(result).__name__}, oracle says "
                    f"{type(verdict).__name__})"
                )
            if result.stats.bound_violations:
                report.violation_runs.append(
                    (pretty(goal), n, tuple(result.stats.bound_violations))
                )
            if isinstance(result, Provable):
                report.provable_runs += 1
                cfg = CalculusConfig(agents=1, choices=n, mode=Mode.REFINED)
                outcome = check_derivation(cfg, result.derivation)
                if not outcome.ok:
                    report.certificate_failures.append(
                        f"n={n}: {pretty(goal)} at {outcome.path}: {outcome.error}"
                    )
                elif report.provable_runs % 50 == 1:
                    report.derivation_sample.append((n, result.derivation))
            else:
                report.unprovable_runs += 1
                model, interp = extract_countermodel(result.stable, 0, choices=n)
                frame = check_frame(model, agents=1, choices=n)
                if not frame.ok:
                    report.model_failures.append(
                        f"n={n}: {pretty(goal)} frame: {frame.violations}"
                    )
                elif evaluate(model, interp[0], goal):
                    report.model_failures.append(
                        f"n={n}: {pretty(goal)} not falsified at its label"
                    )

    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Criterion 3: the search agrees with the oracle everywhere
# ---------------------------------------------------------------------------


def test_criterion_3_differential_agreement(sweep):
    ok = (
        sweep.enumerated == 24820
        and sweep.runs == (sweep.enumerated + 500) * len(BOUNDS)
        and not sweep.disagreements
        and sweep.elapsed < 600.0
    )
    _line(
        3,
        f"{sweep.runs} search/oracle runs agree in {sweep.elapsed:.0f} s",
        ok,
    )
    assert sweep.enumerated == 24820
    assert sweep.runs == 75960
    assert sweep.disagreements == []
    assert sweep.elapsed < 600.0


# ---------------------------------------------------------------------------
# Criterion 4: every unprovable run yields a genuine counter-model
# ---------------------------------------------------------------------------


def test_criterion_4_counter_models(sweep):
    ok = sweep.unprovable_runs > 0 and not sweep.model_failures
    _line(
        4,
        f"{sweep.unprovable_runs} counter-models check out",
        ok,
    )
    assert sweep.unprovable_runs > 0
    assert sweep.model_failures == []


# ---------------------------------------------------------------------------
# Criterion 5: every provable run yields a checkable certificate, and
# mutated certificates are rejected
# ---------------------------------------------------------------------------


def _drop_one_formula(node: Derivation, path: tuple, rng) -> Derivation:
    if not path:
        w, f = rng.choice(list(node.conclusion.forms))
        return Derivation(
            node.conclusion.without_form(w, f),
            node.rule,
            node.principal,
            node.premises,
        )
    i = path[0]
    rebuilt = _drop_one_formula(node.premises[i], path[1:], rng)
    premises = node.premises[:i] + (rebuilt,) + node.premises[i + 1 :]
    return Derivation(node.conclusion, node.rule, node.principal, premises)


def _all_paths(node: Derivation, prefix=()):
    yield prefix
    for i, premise in enumerate(node.premises):
        yield from _all_paths(premise, prefix + (i,))


def test_criterion_5_certificates_and_mutations(sweep):
    rng = random.Random(99)
    assert sweep.derivation_sample, "the sweep collected no derivations"
    surviving_mutants = []
    for k in range(50):
        n, derivation = rng.choice(sweep.derivation_sample)
        path = rng.choice(list(_all_paths(derivation)))
        mutant = _drop_one_formula(derivation, path, rng)
        cfg = CalculusConfig(agents=1, choices=n, mode=Mode.REFINED)
        if check_derivation(cfg, mutant).ok:
            surviving_mutants.append(f"mutation {k} at {path} passed")

    ok = (
        sweep.provable_runs > 0
        and not sweep.certificate_failures
        and not surviving_mutants
    )
    _line(
        5,
        f"{sweep.provable_runs} certificates pass, 50 mutants rejected",
        ok,
    )
    assert sweep.provable_runs > 0
    assert sweep.certificate_failures == []
    assert surviving_mutants == []


# ---------------------------------------------------------------------------
# Criterion 6: the advertised termination bounds never trip
# ---------------------------------------------------------------------------


def test_criterion_6_termination_bounds(sweep):
    ok = not sweep.violation_runs
    _line(
        6,
        f"size bounds respected on all {sweep.runs} runs",
        ok,
    )
    # The label bound (one label per universal-modal occurrence, plus one)
    # does not hold of this search procedure: a historic possibility can
    # propagate a box-type formula into a choice tree created after the
    # box was first realized, forcing one extra realization per tree.  The
    # monitor below records every such excess; this criterion demands zero.
    witnesses = "\n".join(
        f"  n={n}: {text}: {'; '.join(messages)}"
        for text, n, messages in sweep.violation_runs[:30]
    )
    assert not sweep.violation_runs, (
        f"{len(sweep.violation_runs)} of {sweep.runs} runs exceeded a "
        f"monitored bound:\n{witnesses}"
    )


# ---------------------------------------------------------------------------
# Criterion 7: the documented scope boundary holds
# ---------------------------------------------------------------------------


def test_criterion_7_scope_boundary():
    # Proof search is single-agent by design; multi-agent goals are refused
    # rather than mishandled...
    from stitprover import AgBox

    with pytest.raises(ValueError):
        prove(ProverConfig(choices=0), AgBox(2, Atom("p")))

    # ...while the checker and the oracle do cover several agents, and a
    # truncated multi-agent enumeration reports its own incompleteness
    # instead of overclaiming.
    goal = parse("dia [1] p & dia [2] q -> dia ([1] p & [2] q)", agents=2)
    truncated = decide_by_enumeration(goal, agents=2, max_worlds=2)
    assert truncated == ValidUpToBound(bound=2, default_bound=5)

    _line(7, "multi-agent search out of scope, gates in place", True)
