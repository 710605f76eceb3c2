"""Propositional core: feature models, literals, DNF presence conditions, configurations.

Literals are signed integers in the DIMACS convention: ``+i`` selects feature ``i``
(1-based), ``-i`` deselects it.  A clause is a tuple of literals; a presence
condition is a disjunction of such clauses.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Clause = tuple[int, ...]

_BAD_NAME = re.compile(r"[\s!&|()]")


class StructuralError(ValueError):
    """A literal refers to a feature outside the model, or a name is malformed."""


class InconsistentConfigurationError(ValueError):
    pass


def complement(literal: int) -> int:
    return -literal


def literal_key(literal: int) -> tuple[int, bool]:
    """Sort key: feature index first, positive before negative."""
    return (abs(literal), literal < 0)


def make_clause(literals: Iterable[int]) -> Clause:
    """Deduplicate and sort literals into canonical order."""
    return tuple(sorted(set(literals), key=literal_key))


def clause_key(clause: Clause) -> tuple:
    return tuple(literal_key(lit) for lit in clause)


def is_contradictory(clause: Iterable[int]) -> bool:
    lits = set(clause)
    return any(-lit in lits for lit in lits)


@dataclass(frozen=True)
class FeatureModel:
    """Features (named, indexed 1..n) plus CNF dependency clauses."""

    names: tuple[str, ...]
    clauses: tuple[Clause, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        index = {}
        for i, name in enumerate(names, start=1):
            if not name or _BAD_NAME.search(name):
                raise StructuralError(f"invalid feature name {name!r}")
            if name in index:
                raise StructuralError(f"duplicate feature name {name!r}")
            index[name] = i
        object.__setattr__(self, "_index", index)
        for clause in self.clauses:
            self.check_literals(clause)

    @classmethod
    def unconstrained(cls, names: Iterable[str]) -> "FeatureModel":
        return cls(tuple(names), ())

    @property
    def size(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown feature {name!r}") from None

    def name(self, index: int) -> str:
        if not 1 <= index <= len(self.names):
            raise StructuralError(f"feature index {index} out of range 1..{len(self.names)}")
        return self.names[index - 1]

    def literal(self, name: str, positive: bool = True) -> int:
        i = self.index(name)
        return i if positive else -i

    def format_literal(self, literal: int) -> str:
        name = self.name(abs(literal))
        return name if literal > 0 else "!" + name

    def check_literals(self, literals: Iterable[int]) -> None:
        n = len(self.names)
        for lit in literals:
            if lit == 0 or abs(lit) > n:
                raise StructuralError(f"literal {lit} out of range for a {n}-feature model")

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update("\n".join(self.names).encode())
        h.update(b"\0")
        for clause in self.clauses:
            h.update((" ".join(map(str, clause)) + " 0\n").encode())
        return h.hexdigest()


@dataclass(frozen=True)
class PresenceCondition:
    """A DNF over literals.

    ``clauses == ((),)`` is the tautology (an empty conjunction), ``clauses == ()``
    the contradiction.  Construct through :meth:`of` to get canonical ordering.
    """

    clauses: tuple[Clause, ...]
    origin: str | None = field(default=None, compare=False)

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]], origin: str | None = None) -> "PresenceCondition":
        return canonicalize(cls(tuple(tuple(c) for c in clauses), origin))

    @classmethod
    def true(cls, origin: str | None = None) -> "PresenceCondition":
        return cls(((),), origin)

    @classmethod
    def false(cls, origin: str | None = None) -> "PresenceCondition":
        return cls((), origin)

    @property
    def kind(self) -> str:
        if not self.clauses:
            return "contradiction"
        if any(len(c) == 0 for c in self.clauses):
            return "tautology"
        return "proper"

    @property
    def is_tautology(self) -> bool:
        return self.kind == "tautology"

    @property
    def is_contradiction(self) -> bool:
        return not self.clauses

    def variables(self) -> set[int]:
        return {abs(lit) for clause in self.clauses for lit in clause}

    def min_clause_size(self) -> int:
        return min((len(c) for c in self.clauses), default=0)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """Evaluate under a complete assignment; ``assignment[i]`` is feature ``i`` (index 0 unused)."""
        return any(all(assignment[lit] if lit > 0 else not assignment[-lit] for lit in c) for c in self.clauses)

    def format(self, model: FeatureModel) -> str:
        if self.is_tautology:
            return "1"
        if self.is_contradiction:
            return "0"
        parts = []
        for clause in self.clauses:
            body = " && ".join(model.format_literal(lit) for lit in clause)
            parts.append(f"({body})" if len(self.clauses) > 1 and len(clause) > 1 else body)
        return " || ".join(parts)


class Configuration(frozenset):
    """A consistent set of literals; partial or complete."""

    def __new__(cls, literals: Iterable[int] = ()):
        self = super().__new__(cls, literals)
        if 0 in self:
            raise InconsistentConfigurationError("0 is not a literal")
        for lit in self:
            if -lit in self:
                raise InconsistentConfigurationError(f"configuration contains both {lit} and {-lit}")
        return self

    def extended(self, literals: Iterable[int]) -> "Configuration":
        return Configuration(self | frozenset(literals))

    def conflicts_with(self, literals: Iterable[int]) -> bool:
        return any(-lit in self for lit in literals)

    def sorted(self) -> list[int]:
        return sorted(self, key=literal_key)

    def __repr__(self) -> str:
        return f"Configuration({self.sorted()})"


def canonicalize(pc: PresenceCondition) -> PresenceCondition:
    """Sort literals and clauses, merge duplicate clauses.  No semantic rewriting."""
    clauses = {make_clause(c) for c in pc.clauses}
    return PresenceCondition(tuple(sorted(clauses, key=clause_key)), pc.origin)


def active(pc: PresenceCondition, config: Iterable[int], model: FeatureModel | None = None) -> bool:
    """True iff some clause of ``pc`` is contained in ``config``.

    On partial configurations this is definite activation: the condition holds in
    every completion.
    """
    if model is not None:
        for clause in pc.clauses:
            model.check_literals(clause)
    lits = config if isinstance(config, frozenset) else frozenset(config)
    return any(lits.issuperset(clause) for clause in pc.clauses)


def complete(config: Configuration, model: FeatureModel) -> bool:
    return len(config) == model.size
