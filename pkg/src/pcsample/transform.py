"""DNF algebra on presence conditions and construction of the sampling universe."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import formula as fm
from .logic import (
    Clause,
    FeatureModel,
    PresenceCondition,
    canonicalize,
    is_contradictory,
    make_clause,
)

log = logging.getLogger(__name__)

DEFAULT_CLAUSE_CAP = 10**6

MODES = ("pc", "fm", "concrete")


class BlowUpError(RuntimeError):
    """A DNF conversion produced more intermediate clauses than allowed."""

    def __init__(self, count: int, cap: int, origin: str | None = None):
        where = f" (from {origin})" if origin else ""
        super().__init__(f"DNF conversion exceeded {cap} clauses ({count}){where}")
        self.origin = origin


def _reduce(clauses: Iterable[frozenset]) -> list[frozenset]:
    """Drop contradictory clauses, duplicates and clauses subsumed by a smaller one."""
    kept: list[frozenset] = []
    for c in sorted({c for c in clauses if not is_contradictory(c)}, key=len):
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _pc(clauses: Iterable[frozenset], origin: str | None) -> PresenceCondition:
    return canonicalize(PresenceCondition(tuple(make_clause(c) for c in clauses), origin))


def simplify(pc: PresenceCondition) -> PresenceCondition:
    """Remove contradictory and subsumed clauses; canonical result."""
    return _pc(_reduce(frozenset(c) for c in pc.clauses), pc.origin)


def _product(dnfs: Sequence[list[frozenset]], cap: int, origin: str | None) -> list[frozenset]:
    acc = [frozenset()]
    for clauses in dnfs:
        if len(acc) * len(clauses) > cap:
            raise BlowUpError(len(acc) * len(clauses), cap, origin)
        acc = _reduce(a | c for a in acc for c in clauses)
        if not acc:
            break
    return acc


def conjoin(pcs: Sequence[PresenceCondition], cap: int = DEFAULT_CLAUSE_CAP) -> PresenceCondition:
    """DNF of the conjunction, by pairwise clause union followed by simplification."""
    if not pcs:
        raise ValueError("conjoin needs at least one presence condition")
    origin = pcs[0].origin if len(pcs) == 1 else None
    return _pc(_product([[frozenset(c) for c in p.clauses] for p in pcs], cap, origin), origin)


def negate(pc: PresenceCondition, cap: int = DEFAULT_CLAUSE_CAP) -> PresenceCondition:
    """Complement as a DNF.

    De Morgan turns the negated DNF into a CNF whose clauses are the flipped DNF
    clauses; distributing that CNF back yields the DNF.
    """
    cnf = [[frozenset((-lit,)) for lit in clause] for clause in pc.clauses]
    return _pc(_product(cnf, cap, pc.origin), pc.origin)


def equivalent(a: PresenceCondition, b: PresenceCondition, cap: int = DEFAULT_CLAUSE_CAP) -> bool:
    """Logical equivalence: identical canonical forms, else ``a xor b`` is unsatisfiable."""
    a, b = simplify(a), simplify(b)
    if a.clauses == b.clauses:
        return True
    return (conjoin([a, negate(b, cap)], cap).is_contradiction
            and conjoin([negate(a, cap), b], cap).is_contradiction)


def expr_to_pc(expr: fm.Expr, model: FeatureModel, origin: str | None = None,
               cap: int = DEFAULT_CLAUSE_CAP) -> PresenceCondition:
    """Convert an expression tree straight to DNF by recursive distribution."""

    def dnf(e, positive: bool) -> list[frozenset]:
        if isinstance(e, fm.Const):
            return [frozenset()] if e.value == positive else []
        if isinstance(e, fm.Var):
            i = model.index(e.name)
            return [frozenset((i if positive else -i,))]
        if isinstance(e, fm.Not):
            return dnf(e.arg, not positive)
        conjunctive = isinstance(e, fm.And) == positive
        parts = [dnf(a, positive) for a in e.args]
        if conjunctive:
            return _product(parts, cap, origin)
        merged = _reduce(c for p in parts for c in p)
        if len(merged) > cap:
            raise BlowUpError(len(merged), cap, origin)
        return merged

    return _pc(dnf(expr, True), origin)


RawPc = Union[PresenceCondition, fm.Expr, str]


@dataclass(frozen=True)
class PcUniverse:
    """Ordered, duplicate-free list of proper presence conditions to interact.

    ``groups`` holds tuples of entry indices; an empty tuple means one group
    spanning everything.
    """

    entries: tuple[PresenceCondition, ...]
    mode: str = "pc"
    groups: tuple[tuple[int, ...], ...] = ()
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> PresenceCondition:
        return self.entries[i]

    def group_list(self) -> list[tuple[int, ...]]:
        return list(self.groups) if self.groups else [tuple(range(len(self.entries)))]


def _fingerprint(pc: PresenceCondition, probes: list[list[bool]]) -> tuple[bool, ...]:
    return tuple(pc.evaluate(p) for p in probes)


class _Deduper:
    """Keeps the first of every group of logically equivalent conditions."""

    def __init__(self, n_features: int, cap: int):
        rng = random.Random(0x5EED)
        self.probes = [[False] + [rng.random() < 0.5 for _ in range(n_features)] for _ in range(64)]
        self.by_form: set[tuple] = set()
        self.by_print: dict[tuple, list[PresenceCondition]] = {}
        self.cap = cap

    def add(self, pc: PresenceCondition) -> bool:
        if pc.clauses in self.by_form:
            return False
        fp = _fingerprint(pc, self.probes)
        bucket = self.by_print.setdefault(fp, [])
        if any(equivalent(pc, other, self.cap) for other in bucket):
            return False
        bucket.append(pc)
        self.by_form.add(pc.clauses)
        return True


def to_pc(raw: RawPc, model: FeatureModel, cap: int = DEFAULT_CLAUSE_CAP,
          warnings: list[str] | None = None) -> PresenceCondition:
    """Accept a PresenceCondition, an expression tree or formula text.

    Names missing from the model are reported and their conjunct dropped.
    """
    if isinstance(raw, PresenceCondition):
        return simplify(raw)
    origin = None
    if isinstance(raw, str):
        raw = fm.parse(raw)
    unknown = [a for a in fm.atoms(raw) if a not in model]
    if unknown:
        msg = f"features not in model, conjunct treated as true: {', '.join(unknown)}"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        raw = fm.restrict(raw, model)
    return expr_to_pc(raw, model, origin, cap)


def _literal_universe(indices: Iterable[int]) -> list[PresenceCondition]:
    idx = list(indices)
    return [PresenceCondition(((i,),)) for i in idx] + [PresenceCondition(((-i,),)) for i in idx]


def preprocess(raw: Sequence[RawPc], model: FeatureModel, mode: str = "pc",
               grouping: Sequence[str] | None = None,
               cap: int = DEFAULT_CLAUSE_CAP) -> PcUniverse:
    """Build the sampling universe from raw presence conditions.

    pc mode: canonical DNFs without tautologies, contradictions or equivalent
    duplicates, followed by their complements (again deduplicated), originals
    first, both in input order.

    fm mode: every literal of the model.  concrete mode: every literal of a
    feature occurring in some raw condition.

    ``grouping`` assigns a group key to each raw entry (e.g. its file); each
    group gets the indices of its own conditions and their complements.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if grouping is not None and len(grouping) != len(raw):
        raise ValueError("grouping must have one key per raw presence condition")
    warnings: list[str] = []
    pcs = [to_pc(r, model, cap, warnings) for r in raw]

    if mode == "fm":
        return PcUniverse(tuple(_literal_universe(range(1, model.size + 1))), mode, (), tuple(warnings))
    if mode == "concrete":
        used = set().union(*(p.variables() for p in pcs)) if pcs else set()
        return PcUniverse(tuple(_literal_universe(sorted(used))), mode, (), tuple(warnings))

    dedup = _Deduper(model.size, cap)
    originals: list[PresenceCondition] = []
    owner_keys: list[list[str]] = []
    position: dict[tuple, int] = {}
    negations: dict[tuple, PresenceCondition] = {}
    for i, pc in enumerate(pcs):
        if pc.kind != "proper":
            continue
        if pc.clauses not in negations:
            negations[pc.clauses] = negate(pc, cap)
        if negations[pc.clauses].is_contradiction:
            continue  # tautology not visible syntactically
        if dedup.add(pc):
            position[pc.clauses] = len(originals)
            originals.append(pc)
            owner_keys.append([])
        if grouping is not None:
            j = position.get(pc.clauses)
            if j is None:
                j = next(k for k, o in enumerate(originals) if equivalent(o, pc, cap))
                position[pc.clauses] = j
            if grouping[i] not in owner_keys[j]:
                owner_keys[j].append(grouping[i])

    entries = list(originals)
    complement_slot: list[int | None] = []
    for pc in originals:
        neg = negations[pc.clauses]
        if dedup.add(neg):
            complement_slot.append(len(entries))
            entries.append(neg)
        else:
            complement_slot.append(next(k for k, e in enumerate(entries) if equivalent(e, neg, cap)))

    groups: tuple[tuple[int, ...], ...] = ()
    if grouping is not None:
        members: dict[str, set[int]] = {}
        for j, keys in enumerate(owner_keys):
            for key in keys:
                members.setdefault(key, set()).update((j, complement_slot[j]))
        groups = tuple(tuple(sorted(members[k])) for k in sorted(members))
    return PcUniverse(tuple(entries), "pc", groups, tuple(warnings))
