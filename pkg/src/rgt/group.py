"""Relationship graphs, decomposition into polynomials, and structure edits.

A group is a complete graph over subjects where each edge is labeled as an
alliance or a conflict. When the graph is decomposable it is equivalent to
a polynomial over the subject variables: alliance blocks become meets and
conflict blocks become joins.

Decomposition looks for the finest partition of the vertex set whose
cross-block pairs all carry the same relation. That partition is exactly
the set of connected components of one of the two relation subgraphs: if
the conflict subgraph is disconnected its components are pairwise fully
allied, and symmetrically for the alliance subgraph. Recursing into each
component yields a flattened n-ary Meet/Join tree; when neither subgraph
is disconnected the graph has no polynomial and NotDecomposable is raised.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import check_name
from .errors import (
    DuplicateRelation,
    IncompleteGraph,
    InvalidName,
    InvalidPolynomial,
    LastSubjectRemoval,
    NotDecomposable,
    SelfRelation,
    UnknownSubject,
)


class Relation(enum.Enum):
    ALLIANCE = "alliance"
    CONFLICT = "conflict"

    @classmethod
    def parse(cls, text: str) -> "Relation":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InvalidName(f"relation must be 'alliance' or 'conflict', got {text!r}") from None

    def __str__(self) -> str:
        return self.value


class RelationshipGraph:
    """Complete edge-labeled graph over a group's subjects.

    Immutable: edits return new graph values.
    """

    __slots__ = ("_subjects", "_order", "_relations")

    def __init__(
        self,
        subjects: Iterable[str],
        relations: Iterable[tuple[str, str, Relation]] = (),
    ):
        names = tuple(subjects)
        for name in names:
            check_name(name, "subject")
        if len(set(names)) != len(names):
            raise InvalidName("subject ids must be distinct")
        if not names:
            raise IncompleteGraph("a group needs at least one subject")
        self._subjects = names
        self._order = {name: i for i, name in enumerate(names)}
        self._relations: dict[tuple[str, str], Relation] = {}
        for s1, s2, rel in relations:
            key = self._pair_key(s1, s2)
            if key in self._relations:
                raise DuplicateRelation(f"relation for ({s1}, {s2}) given twice")
            self._relations[key] = rel
        expected = len(names) * (len(names) - 1) // 2
        if len(self._relations) != expected:
            missing = [
                f"({a}, {b})"
                for a, b in self._all_pairs()
                if (a, b) not in self._relations
            ]
            raise IncompleteGraph(
                f"missing relation(s): {', '.join(missing)}", detail=missing
            )

    def _pair_key(self, s1: str, s2: str) -> tuple[str, str]:
        if s1 not in self._order:
            raise UnknownSubject(f"unknown subject {s1!r}")
        if s2 not in self._order:
            raise UnknownSubject(f"unknown subject {s2!r}")
        if s1 == s2:
            raise SelfRelation(f"subject {s1!r} cannot relate to itself")
        if self._order[s1] > self._order[s2]:
            s1, s2 = s2, s1
        return (s1, s2)

    def _all_pairs(self) -> Iterator[tuple[str, str]]:
        for i, a in enumerate(self._subjects):
            for b in self._subjects[i + 1 :]:
                yield (a, b)

    @property
    def subjects(self) -> tuple[str, ...]:
        return self._subjects

    def relation(self, s1: str, s2: str) -> Relation:
        return self._relations[self._pair_key(s1, s2)]

    def pairs(self) -> Iterator[tuple[str, str, Relation]]:
        """All unordered pairs with their relation, in declaration order."""
        for a, b in self._all_pairs():
            yield (a, b, self._relations[(a, b)])

    def remove_subject(self, subject: str) -> "RelationshipGraph":
        if subject not in self._order:
            raise UnknownSubject(f"unknown subject {subject!r}")
        if len(self._subjects) == 1:
            raise LastSubjectRemoval("cannot remove the last subject of a group")
        keep = [s for s in self._subjects if s != subject]
        return RelationshipGraph(
            keep,
            [
                (a, b, rel)
                for (a, b), rel in self._relations.items()
                if subject not in (a, b)
            ],
        )

    def set_relation(self, s1: str, s2: str, rel: Relation) -> "RelationshipGraph":
        key = self._pair_key(s1, s2)
        updated = dict(self._relations)
        updated[key] = rel
        return RelationshipGraph(
            self._subjects, [(a, b, r) for (a, b), r in updated.items()]
        )

    def to_dot(self) -> str:
        """DOT rendering: solid edges for alliance, dashed for conflict."""
        lines = ["graph group {"]
        for subject in self._subjects:
            lines.append(f'  "{subject}";')
        for a, b, rel in self.pairs():
            style = "solid" if rel is Relation.ALLIANCE else "dashed"
            lines.append(f'  "{a}" -- "{b}" [style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationshipGraph):
            return NotImplemented
        return (
            set(self._subjects) == set(other._subjects)
            and {frozenset(k): v for k, v in self._relations.items()}
            == {frozenset(k): v for k, v in other._relations.items()}
        )

    __hash__ = None  # mutable-looking identity would be a trap in sets

    def __repr__(self) -> str:
        return f"RelationshipGraph(subjects={list(self._subjects)!r})"


# -- polynomials -----------------------------------------------------------

class Polynomial:
    """Base class for the group structure term: Var, Meet or Join nodes."""

    __slots__ = ()

    def subject_set(self) -> frozenset[str]:
        raise NotImplementedError

    @property
    def least_subject(self) -> str:
        raise NotImplementedError

    def render(self) -> str:
        single = all(len(s) == 1 for s in self.subject_set())
        return self._render(single)

    def _render(self, single_char: bool) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class Var(Polynomial):
    subject: str

    def subject_set(self) -> frozenset[str]:
        return frozenset((self.subject,))

    @property
    def least_subject(self) -> str:
        return self.subject

    def _render(self, single_char: bool) -> str:
        return self.subject


@dataclass(frozen=True, slots=True)
class Meet(Polynomial):
    children: tuple[Polynomial, ...]

    def subject_set(self) -> frozenset[str]:
        return frozenset().union(*(c.subject_set() for c in self.children))

    @property
    def least_subject(self) -> str:
        return min(c.least_subject for c in self.children)

    def _render(self, single_char: bool) -> str:
        parts = []
        for child in self.children:
            text = child._render(single_char)
            if isinstance(child, Join):
                text = f"({text})"
            parts.append(text)
        return ("" if single_char else "·").join(parts)


@dataclass(frozen=True, slots=True)
class Join(Polynomial):
    children: tuple[Polynomial, ...]

    def subject_set(self) -> frozenset[str]:
        return frozenset().union(*(c.subject_set() for c in self.children))

    @property
    def least_subject(self) -> str:
        return min(c.least_subject for c in self.children)

    def _render(self, single_char: bool) -> str:
        return " + ".join(c._render(single_char) for c in self.children)


def _combine(kind: type, children: Iterable[Polynomial]) -> Polynomial:
    flat: list[Polynomial] = []
    for child in children:
        if isinstance(child, kind):
            flat.extend(child.children)
        else:
            flat.append(child)
    if not flat:
        raise InvalidPolynomial("a polynomial node needs at least one child")
    if len(flat) == 1:
        return flat[0]
    seen: set[str] = set()
    for child in flat:
        subjects = child.subject_set()
        overlap = seen & subjects
        if overlap:
            raise InvalidPolynomial(
                f"subject(s) appear more than once: {', '.join(sorted(overlap))}"
            )
        seen |= subjects
    flat.sort(key=lambda c: c.least_subject)
    return kind(tuple(flat))


def meet_of(children: Iterable[Polynomial]) -> Polynomial:
    """Canonical n-ary meet: flattened, children ordered by least subject."""
    return _combine(Meet, children)


def join_of(children: Iterable[Polynomial]) -> Polynomial:
    """Canonical n-ary join: flattened, children ordered by least subject."""
    return _combine(Join, children)


# -- decomposition ---------------------------------------------------------

def _components(
    subjects: list[str], graph: RelationshipGraph, rel: Relation
) -> list[list[str]]:
    remaining = set(subjects)
    components = []
    while remaining:
        start = next(iter(remaining))
        stack = [start]
        component = {start}
        remaining.discard(start)
        while stack:
            current = stack.pop()
            for other in list(remaining):
                if graph.relation(current, other) is rel:
                    remaining.discard(other)
                    component.add(other)
                    stack.append(other)
        components.append(sorted(component))
    return components


def decompose(graph: RelationshipGraph) -> Polynomial:
    """Extract the group polynomial, or raise NotDecomposable."""

    def recurse(subjects: list[str]) -> Polynomial:
        if len(subjects) == 1:
            return Var(subjects[0])
        conflict_parts = _components(subjects, graph, Relation.CONFLICT)
        if len(conflict_parts) > 1:
            return meet_of(recurse(part) for part in conflict_parts)
        alliance_parts = _components(subjects, graph, Relation.ALLIANCE)
        if len(alliance_parts) > 1:
            return join_of(recurse(part) for part in alliance_parts)
        raise NotDecomposable(
            f"no uniform split of subjects {{{', '.join(subjects)}}}",
            detail=subjects,
        )

    return recurse(sorted(graph.subjects))


def polynomial_to_graph(polynomial: Polynomial) -> RelationshipGraph:
    """Rebuild the graph: pairs meet under a Meet node are allies, else foes."""
    relations: list[tuple[str, str, Relation]] = []

    def walk(node: Polynomial) -> None:
        if isinstance(node, Var):
            return
        rel = Relation.ALLIANCE if isinstance(node, Meet) else Relation.CONFLICT
        for i, left in enumerate(node.children):
            for right in node.children[i + 1 :]:
                for a in sorted(left.subject_set()):
                    for b in sorted(right.subject_set()):
                        relations.append((a, b, rel))
        for child in node.children:
            walk(child)

    walk(polynomial)
    return RelationshipGraph(sorted(polynomial.subject_set()), relations)
