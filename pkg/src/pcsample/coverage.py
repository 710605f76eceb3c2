"""Measuring t-wise presence-condition coverage and fault coverage of a sample.

Counting convention: an interaction is a set of ``t`` *distinct* universe entries
whose combined condition is satisfiable under the feature model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .logic import Configuration, FeatureModel, PresenceCondition, active
from .sat import DEFAULT_TIMEOUT, SatContext
from .transform import DEFAULT_CLAUSE_CAP, PcUniverse, conjoin

DEFAULT_UNCOVERED_CAP = 100
BRUTE_FORCE_MAX_FEATURES = 20


class InstanceTooLargeError(ValueError):
    pass


@dataclass
class CoverageReport:
    t: int
    mode: str
    total_valid_interactions: int
    covered_interactions: int
    uncovered: list[PresenceCondition] = field(default_factory=list)
    uncovered_interactions: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ratio(self) -> Fraction:
        if self.total_valid_interactions == 0:
            return Fraction(1)
        return Fraction(self.covered_interactions, self.total_valid_interactions)

    def to_text(self, model: FeatureModel | None = None) -> str:
        lines = [
            f"t: {self.t}",
            f"mode: {self.mode}",
            f"total_valid_interactions: {self.total_valid_interactions}",
            f"covered_interactions: {self.covered_interactions}",
            f"ratio: {float(self.ratio):.6f}",
            f"uncovered_listed: {len(self.uncovered)}",
        ]
        if model is not None:
            lines += [f"uncovered: {pc.format(model)}" for pc in self.uncovered]
        return "\n".join(lines) + "\n"

    def to_dict(self, model: FeatureModel | None = None) -> dict:
        return {
            "t": self.t,
            "mode": self.mode,
            "total_valid_interactions": self.total_valid_interactions,
            "covered_interactions": self.covered_interactions,
            "ratio": float(self.ratio),
            "uncovered": [pc.format(model) if model else [list(c) for c in pc.clauses]
                          for pc in self.uncovered],
        }


def _note_uncovered(report: CoverageReport, combo, combined: PresenceCondition,
                    seen: set, cap: int) -> None:
    report.uncovered_interactions.append(combo)
    if combined.clauses not in seen and len(report.uncovered) < cap:
        seen.add(combined.clauses)
        report.uncovered.append(combined)


def coverage(sample: Iterable[Iterable[int]], universe: PcUniverse, model: FeatureModel, t: int,
             *, uncovered_cap: int = DEFAULT_UNCOVERED_CAP, timeout: float | None = DEFAULT_TIMEOUT,
             clause_cap: int = DEFAULT_CLAUSE_CAP) -> CoverageReport:
    """t-wise presence-condition coverage of ``sample`` over ``universe``.

    ``uncovered`` lists each distinct uncovered combined condition once (capped);
    ``uncovered_interactions`` holds every uncovered index tuple.
    """
    configs = [frozenset(c) for c in sample]
    context = SatContext(model, timeout)
    report = CoverageReport(t, universe.mode, 0, 0)
    seen: set = set()
    entries = universe.entries
    for combo in itertools.combinations(range(len(entries)), t):
        combined = conjoin([entries[i] for i in combo], clause_cap)
        if combined.is_contradiction:
            continue
        if any(active(combined, c) for c in configs):
            report.total_valid_interactions += 1
            report.covered_interactions += 1
            continue
        if not any(context.valid(clause) for clause in combined.clauses):
            continue
        report.total_valid_interactions += 1
        _note_uncovered(report, combo, combined, seen, uncovered_cap)
    return report


def _valid_assignments(model: FeatureModel) -> list[tuple[bool, ...]]:
    n = model.size
    out = []
    for bits in itertools.product((False, True), repeat=n):
        a = (False,) + bits
        if all(any(a[l] if l > 0 else not a[-l] for l in c) for c in model.clauses):
            out.append(a)
    return out


def _assignment(config: Iterable[int], n: int) -> tuple[bool, ...] | None:
    a = [None] * (n + 1)
    for lit in config:
        a[abs(lit)] = lit > 0
    if any(v is None for v in a[1:]):
        return None
    a[0] = False
    return tuple(a)


def brute_force_coverage(sample: Iterable[Iterable[int]], universe: PcUniverse,
                         model: FeatureModel, t: int, *,
                         uncovered_cap: int = DEFAULT_UNCOVERED_CAP) -> CoverageReport:
    """Reference implementation by enumerating every complete assignment.

    Satisfiability of an interaction is decided by looking for a valid complete
    assignment that makes each member condition true on its own; coverage by
    evaluating every member condition on each (complete) sample configuration.
    """
    if model.size > BRUTE_FORCE_MAX_FEATURES:
        raise InstanceTooLargeError(f"{model.size} features exceed the brute-force limit")
    n = model.size
    valid_points = _valid_assignments(model)
    sample_points = []
    for c in sample:
        a = _assignment(c, n)
        if a is None:
            raise ValueError("brute-force coverage needs complete configurations")
        sample_points.append(a)
    entries = universe.entries
    truth_valid = [[e.evaluate(a) for a in valid_points] for e in entries]
    truth_sample = [[e.evaluate(a) for a in sample_points] for e in entries]
    report = CoverageReport(t, universe.mode, 0, 0)
    seen: set = set()
    for combo in itertools.combinations(range(len(entries)), t):
        if not any(all(truth_valid[i][p] for i in combo) for p in range(len(valid_points))):
            continue
        report.total_valid_interactions += 1
        if any(all(truth_sample[i][p] for i in combo) for p in range(len(sample_points))):
            report.covered_interactions += 1
        else:
            _note_uncovered(report, combo, conjoin([entries[i] for i in combo]), seen, uncovered_cap)
    return report


@dataclass(frozen=True)
class FaultSpec:
    identifier: str
    condition: PresenceCondition

    def __post_init__(self):
        if self.condition.kind != "proper":
            raise ValueError(f"fault {self.identifier}: condition must be neither true nor false")

    @property
    def degree(self) -> int:
        """Literals in the smallest clause: the least t guaranteed to expose the fault."""
        return self.condition.min_clause_size()


def fault_covered(sample: Iterable[Iterable[int]], fault: FaultSpec) -> bool:
    return any(active(fault.condition, frozenset(c)) for c in sample)


def classic_uncovered_pairs(sample: Sequence[Iterable[int]], model: FeatureModel) -> list[tuple[int, int]]:
    """Literal pairs over distinct features that some valid configuration exhibits but no sample configuration does.

    Brute force over all assignments; meant for small models.
    """
    if model.size > BRUTE_FORCE_MAX_FEATURES:
        raise InstanceTooLargeError(f"{model.size} features exceed the brute-force limit")
    valid_points = _valid_assignments(model)
    configs = [frozenset(c) for c in sample]
    n = model.size
    missing = []
    for a, b in itertools.combinations(range(1, n + 1), 2):
        for la, lb in itertools.product((a, -a), (b, -b)):
            want_a, want_b = la > 0, lb > 0
            if not any(p[a] == want_a and p[b] == want_b for p in valid_points):
                continue
            if not any(la in c and lb in c for c in configs):
                missing.append((la, lb))
    return missing
