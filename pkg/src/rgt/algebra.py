"""Boolean algebra of alternatives over a finite set of actions.

An alternative is a subset of a universe's actions, stored as a bit vector
against the declared action order. The full set plays the role of 1 and the
empty set the role of 0; meet/join/complement are intersection, union and
set complement in the subset lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DuplicateAction,
    EmptyInterval,
    EmptyUniverse,
    InvalidName,
    UniverseMismatch,
    UnknownAction,
)

# Characters that would collide with the expression grammar or the set
# rendering if they appeared inside an action or subject name.
_FORBIDDEN_CHARS = set("{},+·*()¬⊇=[]\"'")


def check_name(name: str, role: str) -> None:
    """Reject names that cannot round-trip through rendering and parsing."""
    if not isinstance(name, str) or not name:
        raise InvalidName(f"{role} name must be a non-empty string")
    if name in ("0", "1"):
        raise InvalidName(f"{role} name {name!r} collides with a constant")
    if any(ch.isspace() or ch in _FORBIDDEN_CHARS for ch in name):
        raise InvalidName(f"{role} name {name!r} contains a reserved character")


class ActionUniverse:
    """The ordered set of atomic actions a group can choose between.

    The declaration order is canonical: all rendering and enumeration
    follow it.
    """

    __slots__ = ("_actions", "_index")

    def __init__(self, actions: Iterable[str]):
        names = tuple(actions)
        if not names:
            raise EmptyUniverse("a universe needs at least one action")
        for name in names:
            check_name(name, "action")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise DuplicateAction(f"duplicate action name(s): {', '.join(dupes)}")
        self._actions = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def actions(self) -> tuple[str, ...]:
        return self._actions

    @property
    def size(self) -> int:
        return len(self._actions)

    @property
    def mask(self) -> int:
        """Bit mask of the full action set."""
        return (1 << len(self._actions)) - 1

    def alternative(self, members: Iterable[str] = ()) -> "Alternative":
        bits = 0
        for name in members:
            try:
                bits |= 1 << self._index[name]
            except KeyError:
                raise UnknownAction(f"action {name!r} is not in the universe") from None
        return Alternative(self, bits)

    def from_bits(self, bits: int) -> "Alternative":
        return Alternative(self, bits)

    @property
    def empty(self) -> "Alternative":
        return Alternative(self, 0)

    @property
    def full(self) -> "Alternative":
        return Alternative(self, self.mask)

    def all_alternatives(self) -> list["Alternative"]:
        """All 2^size alternatives in canonical (bit pattern) order."""
        return [Alternative(self, bits) for bits in range(1 << len(self._actions))]

    def parse_alternative(self, text: str) -> "Alternative":
        """Parse ``{a,b}``, ``{}``, ``0``, ``1`` or a full listing."""
        stripped = text.strip()
        if stripped == "0":
            return self.empty
        if stripped == "1":
            return self.full
        if not (stripped.startswith("{") and stripped.endswith("}")):
            raise InvalidName(f"cannot parse an alternative from {text!r}")
        inner = stripped[1:-1].strip()
        if not inner:
            return self.empty
        return self.alternative(part.strip() for part in inner.split(","))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ActionUniverse) and self._actions == other._actions

    def __hash__(self) -> int:
        return hash(self._actions)

    def __repr__(self) -> str:
        return f"ActionUniverse({list(self._actions)!r})"


@dataclass(frozen=True, slots=True)
class Alternative:
    """One element of the algebra: a subset of the universe's actions."""

    universe: ActionUniverse
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits <= self.universe.mask:
            raise UnknownAction(f"bit pattern {self.bits:#x} outside the universe")

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(
            name for i, name in enumerate(self.universe.actions) if self.bits >> i & 1
        )

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == self.universe.mask

    def _check(self, other: "Alternative") -> None:
        if self.universe != other.universe:
            raise UniverseMismatch("alternatives belong to different universes")

    def meet(self, other: "Alternative") -> "Alternative":
        self._check(other)
        return Alternative(self.universe, self.bits & other.bits)

    def join(self, other: "Alternative") -> "Alternative":
        self._check(other)
        return Alternative(self.universe, self.bits | other.bits)

    def complement(self) -> "Alternative":
        return Alternative(self.universe, self.universe.mask & ~self.bits)

    def leq(self, other: "Alternative") -> bool:
        """Subset order: self ⊆ other."""
        self._check(other)
        return self.bits & ~other.bits == 0

    __and__ = meet
    __or__ = join
    __invert__ = complement

    def __le__(self, other: "Alternative") -> bool:
        return self.leq(other)

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"

    def __repr__(self) -> str:
        return f"Alternative({self})"


def enumerate_between(inf: Alternative, sup: Alternative) -> list[Alternative]:
    """All lattice elements between ``inf`` and ``sup``, inclusive.

    Returns exactly 2^|sup \\ inf| alternatives in canonical bit-pattern
    order; raises EmptyInterval when the bounds are not comparable.
    """
    inf._check(sup)
    if not inf.leq(sup):
        raise EmptyInterval(f"{inf} is not contained in {sup}")
    free = [i for i in range(sup.universe.size) if (sup.bits & ~inf.bits) >> i & 1]
    out = []
    for pattern in range(1 << len(free)):
        bits = inf.bits
        for j, pos in enumerate(free):
            if pattern >> j & 1:
                bits |= 1 << pos
        out.append(Alternative(inf.universe, bits))
    return out


def interval_size(inf: Alternative, sup: Alternative) -> int:
    """Number of lattice elements in [inf, sup] without materializing them."""
    inf._check(sup)
    if not inf.leq(sup):
        raise EmptyInterval(f"{inf} is not contained in {sup}")
    return 1 << bin(sup.bits & ~inf.bits).count("1")
