"""Brute-force reference implementations the tests check the package against.

Everything here is deliberately slow and direct: independent re-derivations
of the interesting answers, not calls back into the code under test.
"""

from __future__ import annotations

from itertools import combinations, product

from rgt.algebra import ActionUniverse, Alternative
from rgt.group import Relation, RelationshipGraph


def eval_terms(terms, assignment: dict[str, Alternative], universe: ActionUniverse) -> int:
    """Evaluate a term tuple directly on the bit vectors."""
    bits = 0
    for term in terms:
        value = term.coeff_bits
        for var in term.variables:
            value &= assignment[var].bits
        bits |= value
    return bits & universe.mask


def brute_leq(left, right) -> bool:
    """Containment checked on every assignment of free vars to alternatives."""
    universe = left.universe
    names = sorted(set(left.free_variables) | set(right.free_variables))
    choices = [universe.from_bits(b) for b in range(universe.mask + 1)]
    for values in product(choices, repeat=len(names)):
        assignment = dict(zip(names, values))
        lhs = eval_terms(left.terms, assignment, universe)
        rhs = eval_terms(right.terms, assignment, universe)
        if lhs & ~rhs:
            return False
    return True


def set_partitions(items: list) -> list[list[list]]:
    """All partitions of items into nonempty blocks."""
    if len(items) == 1:
        return [[[items[0]]]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        for i in range(len(part)):
            out.append(part[:i] + [[first] + part[i]] + part[i + 1 :])
        out.append([[first]] + part)
    return out


def oracle_decomposable(graph: RelationshipGraph, subjects: list[str] | None = None) -> bool:
    """A subject set splits iff some multi-block partition has one relation
    across every block boundary and each block splits recursively."""
    if subjects is None:
        subjects = list(graph.subjects)
    if len(subjects) == 1:
        return True
    for part in set_partitions(subjects):
        if len(part) < 2:
            continue
        cross = {
            graph.relation(a, b)
            for block1, block2 in combinations(part, 2)
            for a in block1
            for b in block2
        }
        if len(cross) == 1 and all(oracle_decomposable(graph, block) for block in part):
            return True
    return False


def has_induced_conflict_path4(graph: RelationshipGraph) -> bool:
    """True when four subjects induce a simple conflict path of length 3."""
    for quad in combinations(graph.subjects, 4):
        edges = [
            (a, b) for a, b in combinations(quad, 2)
            if graph.relation(a, b) is Relation.CONFLICT
        ]
        if len(edges) != 3:
            continue
        degree = {s: 0 for s in quad}
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        if sorted(degree.values()) == [1, 1, 2, 2]:
            return True
    return False
