"""Canonical symbolic expressions over set constants and subject variables.

An expression is a join of terms, each term the meet of one set constant
(the coefficient) with zero or more subject variables. Expressions are kept
in a canonical disjunctive form: zero-coefficient terms are dropped, terms
over the same variables are merged (their coefficients joined), absorbed
terms are removed, and terms are sorted by variable tuple then coefficient
bit pattern. There is no complement operator; the solver eliminates the
complemented decision variable before results are stored.

Containment between expressions is decided semantically. Because meets and
joins act independently on every action of the universe, ``e1 ⊆ e2`` for
all variable assignments reduces to a per-action implication check over
boolean assignments of the free variables, which keeps the decision cheap
while agreeing exactly with brute-force enumeration of alternatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import ActionUniverse, Alternative, check_name
from .errors import (
    ExprSyntaxError,
    GuardExceeded,
    UnboundVariable,
    UniverseMismatch,
)

#: Default guards for semantic containment checks.
MAX_FREE_VARIABLES = 4
MAX_UNIVERSE_SIZE = 12


@dataclass(frozen=True, slots=True)
class Term:
    """Meet of a set constant with a set of subject variables."""

    coeff_bits: int
    variables: tuple[str, ...]  # sorted, duplicate-free


def _canonical_terms(universe: ActionUniverse, terms: Iterable[Term]) -> tuple[Term, ...]:
    # Merge terms over identical variable sets, then drop absorbed terms.
    merged: dict[tuple[str, ...], int] = {}
    for term in terms:
        if term.coeff_bits == 0:
            continue
        merged[term.variables] = merged.get(term.variables, 0) | term.coeff_bits
    kept = []
    for variables, coeff in merged.items():
        absorbed = any(
            other_vars != variables
            and set(other_vars) <= set(variables)
            and coeff & ~other_coeff == 0
            for other_vars, other_coeff in merged.items()
        )
        if not absorbed:
            kept.append(Term(coeff, variables))
    if not kept:
        return (Term(0, ()),)
    kept.sort(key=lambda t: (t.variables, t.coeff_bits))
    return tuple(kept)


@dataclass(frozen=True, slots=True)
class SymbolicExpr:
    """A canonical join-of-meets expression over one universe."""

    universe: ActionUniverse
    terms: tuple[Term, ...]

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: Alternative) -> "SymbolicExpr":
        return cls(value.universe, (Term(value.bits, ()),))

    @classmethod
    def variable(cls, name: str, universe: ActionUniverse) -> "SymbolicExpr":
        check_name(name, "subject")
        return cls(universe, (Term(universe.mask, (name,)),))

    @classmethod
    def zero(cls, universe: ActionUniverse) -> "SymbolicExpr":
        return cls(universe, (Term(0, ()),))

    @classmethod
    def one(cls, universe: ActionUniverse) -> "SymbolicExpr":
        return cls(universe, (Term(universe.mask, ()),))

    @classmethod
    def _build(cls, universe: ActionUniverse, terms: Iterable[Term]) -> "SymbolicExpr":
        return cls(universe, _canonical_terms(universe, terms))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.terms == (Term(0, ()),)

    @property
    def is_one(self) -> bool:
        return self.terms == (Term(self.universe.mask, ()),)

    @property
    def is_ground(self) -> bool:
        return all(not t.variables for t in self.terms)

    @property
    def free_variables(self) -> frozenset[str]:
        return frozenset(v for t in self.terms for v in t.variables)

    def as_constant(self) -> Alternative:
        """The value of a ground expression."""
        if not self.is_ground:
            missing = ", ".join(sorted(self.free_variables))
            raise UnboundVariable(f"expression still depends on: {missing}")
        bits = 0
        for term in self.terms:
            bits |= term.coeff_bits
        return Alternative(self.universe, bits)

    def _check(self, other: "SymbolicExpr") -> None:
        if self.universe != other.universe:
            raise UniverseMismatch("expressions belong to different universes")

    # -- operations --------------------------------------------------------

    def meet(self, other: "SymbolicExpr") -> "SymbolicExpr":
        self._check(other)
        products = []
        for t1 in self.terms:
            for t2 in other.terms:
                coeff = t1.coeff_bits & t2.coeff_bits
                if coeff == 0:
                    continue
                variables = tuple(sorted(set(t1.variables) | set(t2.variables)))
                products.append(Term(coeff, variables))
        return SymbolicExpr._build(self.universe, products)

    def join(self, other: "SymbolicExpr") -> "SymbolicExpr":
        self._check(other)
        return SymbolicExpr._build(self.universe, self.terms + other.terms)

    def substitute(
        self, bindings: Mapping[str, "SymbolicExpr | Alternative"]
    ) -> "SymbolicExpr":
        """Replace bound variables; unbound ones stay symbolic."""
        exprs: dict[str, SymbolicExpr] = {}
        for name, value in bindings.items():
            expr = SymbolicExpr.constant(value) if isinstance(value, Alternative) else value
            self._check(expr)
            exprs[name] = expr
        result = SymbolicExpr.zero(self.universe)
        for term in self.terms:
            product = SymbolicExpr.constant(Alternative(self.universe, term.coeff_bits))
            for var in term.variables:
                replacement = exprs.get(var)
                if replacement is None:
                    replacement = SymbolicExpr.variable(var, self.universe)
                product = product.meet(replacement)
            result = result.join(product)
        return result

    def evaluate(self, assignment: Mapping[str, Alternative]) -> Alternative:
        """Ground evaluation; every free variable must be assigned."""
        missing = self.free_variables - set(assignment)
        if missing:
            raise UnboundVariable(
                f"no value for variable(s): {', '.join(sorted(missing))}"
            )
        bits = 0
        for term in self.terms:
            term_bits = term.coeff_bits
            for var in term.variables:
                value = assignment[var]
                if value.universe != self.universe:
                    raise UniverseMismatch("assignment value from a different universe")
                term_bits &= value.bits
            bits |= term_bits
        return Alternative(self.universe, bits)

    def leq(
        self,
        other: "SymbolicExpr",
        *,
        max_variables: int = MAX_FREE_VARIABLES,
        max_universe: int = MAX_UNIVERSE_SIZE,
    ) -> bool:
        """True iff self ⊆ other under every assignment of the free variables."""
        self._check(other)
        free = sorted(self.free_variables | other.free_variables)
        if len(free) > max_variables:
            raise GuardExceeded(
                f"{len(free)} free variables exceed the containment guard ({max_variables})"
            )
        if self.universe.size > max_universe:
            raise GuardExceeded(
                f"universe size {self.universe.size} exceeds the containment guard ({max_universe})"
            )
        index = {name: i for i, name in enumerate(free)}

        def holds(terms: list[Term], valuation: int) -> bool:
            return any(
                all(valuation >> index[v] & 1 for v in t.variables) for t in terms
            )

        for action in range(self.universe.size):
            lhs = [t for t in self.terms if t.coeff_bits >> action & 1]
            rhs = [t for t in other.terms if t.coeff_bits >> action & 1]
            for valuation in range(1 << len(free)):
                if holds(lhs, valuation) and not holds(rhs, valuation):
                    return False
        return True

    def equivalent(self, other: "SymbolicExpr", **guards) -> bool:
        return self.leq(other, **guards) and other.leq(self, **guards)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        rendered = []
        for term in self.terms:
            factors = []
            if term.coeff_bits != self.universe.mask or not term.variables:
                if term.coeff_bits == self.universe.mask:
                    factors.append("1")
                else:
                    factors.append(str(Alternative(self.universe, term.coeff_bits)))
            factors.extend(term.variables)
            rendered.append("·".join(factors))
        return " + ".join(rendered)

    def __repr__(self) -> str:
        return f"SymbolicExpr({self})"


# -- parsing ---------------------------------------------------------------

def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "{":
            end = text.find("}", i)
            if end < 0:
                raise ExprSyntaxError(f"unclosed set literal in {text!r}")
            tokens.append(("set", text[i : end + 1]))
            i = end + 1
        elif ch == "+":
            tokens.append(("plus", ch))
            i += 1
        elif ch in "·*":
            tokens.append(("dot", ch))
            i += 1
        elif ch in "01":
            tokens.append(("const", ch))
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("var", text[i:j]))
            i = j
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r} in {text!r}")
    return tokens


def parse_expr(text: str, universe: ActionUniverse) -> SymbolicExpr:
    """Parse the canonical grammar; whitespace-insensitive.

    Factors inside a term may be separated by ``·`` (or ``*``) or simply
    juxtaposed, e.g. ``{β}c``; terms are separated by ``+``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExprSyntaxError("empty expression")
    result = SymbolicExpr.zero(universe)
    pos = 0
    while pos < len(tokens):
        term = SymbolicExpr.one(universe)
        saw_factor = False
        pending_dot = False
        while pos < len(tokens) and tokens[pos][0] != "plus":
            kind, value = tokens[pos]
            if kind == "dot":
                if not saw_factor or pending_dot:
                    raise ExprSyntaxError(f"misplaced '·' in {text!r}")
                pending_dot = True
                pos += 1
                continue
            if kind == "set":
                factor = SymbolicExpr.constant(universe.parse_alternative(value))
            elif kind == "const":
                factor = (
                    SymbolicExpr.one(universe) if value == "1" else SymbolicExpr.zero(universe)
                )
            else:
                factor = SymbolicExpr.variable(value, universe)
            term = term.meet(factor)
            saw_factor = True
            pending_dot = False
            pos += 1
        if not saw_factor:
            raise ExprSyntaxError(f"empty term in {text!r}")
        if pending_dot:
            raise ExprSyntaxError(f"dangling '·' in {text!r}")
        result = result.join(term)
        if pos < len(tokens):
            pos += 1  # consume '+'
            if pos == len(tokens):
                raise ExprSyntaxError(f"trailing '+' in {text!r}")
    return result
