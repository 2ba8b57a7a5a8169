"""Labelled sequents and their graphs.

A labelled sequent is a pair ``R, Γ`` of a set of relational atoms
``R_i w u`` and a set of labelled formulas ``w : φ``.  Both parts are
duplicate-free sets, but insertion order is preserved so that proof search
is deterministic.  Labels are opaque naturals, printed ``w0, w1, ...``.

The sequent graph has the labels as vertices and one edge ``w -> u`` per
relational atom.  A sequent is forestlike when that graph is a disjoint
union of rooted trees; the tree containing a label is its choice tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .formula import Formula, parse, pretty

Label = int


class RelAtom(NamedTuple):
    agent: int
    source: Label
    target: Label


class LabelledFormula(NamedTuple):
    label: Label
    formula: Formula


class LabelledSequent:
    """Immutable ``R, Γ`` with set equality and ordered iteration."""

    __slots__ = ("rel", "forms", "_rel_set", "_forms_set", "_hash")

    def __init__(
        self,
        rel: Iterable[RelAtom] = (),
        forms: Iterable[LabelledFormula] = (),
    ):
        self.rel: tuple[RelAtom, ...] = tuple(dict.fromkeys(rel))
        self.forms: tuple[LabelledFormula, ...] = tuple(dict.fromkeys(forms))
        self._rel_set = frozenset(self.rel)
        self._forms_set = frozenset(self.forms)
        self._hash = hash((self._rel_set, self._forms_set))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledSequent):
            return NotImplemented
        return self._rel_set == other._rel_set and self._forms_set == other._forms_set

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"LabelledSequent({self.show()!r})"

    def show(self) -> str:
        parts = [f"R_{a} w{s} w{t}" for a, s, t in self.rel]
        parts += [f"w{w}: {pretty(f)}" for w, f in self.forms]
        return ", ".join(parts) if parts else "(empty)"

    # -- membership -------------------------------------------------------

    def has_rel(self, atom: RelAtom) -> bool:
        return atom in self._rel_set

    def has_form(self, label: Label, formula: Formula) -> bool:
        return LabelledFormula(label, formula) in self._forms_set

    def forms_at(self, label: Label) -> tuple[Formula, ...]:
        return tuple(f for w, f in self.forms if w == label)

    def labels(self) -> tuple[Label, ...]:
        """All labels occurring in the sequent, ascending."""
        seen = {w for w, _ in self.forms}
        for _, s, t in self.rel:
            seen.add(s)
            seen.add(t)
        return tuple(sorted(seen))

    # -- functional updates ------------------------------------------------

    def extended(
        self,
        rel: Iterable[RelAtom] = (),
        forms: Iterable[LabelledFormula] = (),
    ) -> "LabelledSequent":
        return LabelledSequent(self.rel + tuple(rel), self.forms + tuple(forms))

    def without_form(self, label: Label, formula: Formula) -> "LabelledSequent":
        drop = LabelledFormula(label, formula)
        return LabelledSequent(self.rel, (lf for lf in self.forms if lf != drop))


def fresh_label(s: LabelledSequent) -> Label:
    """Smallest natural strictly above every label in ``s`` (0 if empty)."""
    labels = s.labels()
    return labels[-1] + 1 if labels else 0


# ---------------------------------------------------------------------------
# Sequent graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequentGraph:
    vertices: frozenset[Label]
    edges: frozenset[tuple[Label, Label, int]]  # (source, target, agent)
    vertex_labels: Mapping[Label, frozenset[Formula]]


def graph_of(s: LabelledSequent) -> SequentGraph:
    vertex_labels = {
        w: frozenset(s.forms_at(w)) for w in s.labels()
    }
    return SequentGraph(
        vertices=frozenset(s.labels()),
        edges=frozenset((src, tgt, agent) for agent, src, tgt in s.rel),
        vertex_labels=vertex_labels,
    )


def _edge_pairs(s: LabelledSequent) -> set[tuple[Label, Label]]:
    # Parallel edges with different agent labels collapse to one arc; the
    # graph's edge set lives over V x V.
    return {(src, tgt) for _, src, tgt in s.rel}


def _components(labels: Iterable[Label], pairs: Iterable[tuple[Label, Label]]):
    parent = {w: w for w in labels}

    def find(w: Label) -> Label:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    groups: dict[Label, set[Label]] = {}
    for w in parent:
        groups.setdefault(find(w), set()).add(w)
    return [frozenset(g) for g in groups.values()]


def is_forestlike(s: LabelledSequent) -> bool:
    """True when the sequent graph is a disjoint union of rooted trees.

    Agent labels on edges are ignored; the check is meant for single-agent
    sequents, where every edge carries agent 1 anyway.
    """
    labels = s.labels()
    pairs = _edge_pairs(s)
    in_deg = {w: 0 for w in labels}
    for _, tgt in pairs:
        in_deg[tgt] += 1
        if in_deg[tgt] > 1:
            return False
    # With in-degree <= 1 everywhere, each weakly connected component is a
    # tree exactly when it has one in-degree-0 vertex (its root).
    for component in _components(labels, pairs):
        roots = [w for w in component if in_deg[w] == 0]
        if len(roots) != 1:
            return False
    return True


@dataclass(frozen=True)
class ChoiceTree:
    root: Label
    members: frozenset[Label]


def choice_trees(s: LabelledSequent) -> tuple[ChoiceTree, ...]:
    """The trees of a forestlike sequent, sorted by root label."""
    if not is_forestlike(s):
        raise ValueError("sequent graph is not forestlike")
    pairs = _edge_pairs(s)
    targets = {tgt for _, tgt in pairs}
    trees = []
    for component in _components(s.labels(), pairs):
        (root,) = [w for w in component if w not in targets]
        trees.append(ChoiceTree(root=root, members=component))
    return tuple(sorted(trees, key=lambda t: t.root))


def tree_of(s: LabelledSequent, label: Label) -> frozenset[Label]:
    """Members of the weakly connected component containing ``label``."""
    for component in _components(s.labels(), _edge_pairs(s)):
        if label in component:
            return component
    raise ValueError(f"label w{label} does not occur in the sequent")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def sequent_to_json(s: LabelledSequent) -> dict:
    return {
        "rel": [[agent, src, tgt] for agent, src, tgt in s.rel],
        "forms": [[label, pretty(f)] for label, f in s.forms],
    }


def sequent_from_json(obj: dict, agents: int = 1) -> LabelledSequent:
    rel = [RelAtom(int(a), int(s), int(t)) for a, s, t in obj.get("rel", [])]
    forms = [
        LabelledFormula(int(w), parse(text, agents))
        for w, text in obj.get("forms", [])
    ]
    for atom in rel:
        if not 1 <= atom.agent <= agents:
            raise ValueError(f"agent index {atom.agent} out of range 1..{agents}")
    return LabelledSequent(rel, forms)
