"""Greedy construction of t-wise presence-condition samples, plus a random baseline."""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .logic import Configuration, FeatureModel, PresenceCondition
from .sat import DEFAULT_TIMEOUT, SatContext
from .transform import DEFAULT_CLAUSE_CAP, PcUniverse, conjoin

log = logging.getLogger(__name__)

DEFAULT_INTERACTION_CAP = 2**31


class InteractionCapError(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(
            f"{count} interactions exceed the cap of {cap}; group the presence conditions "
            "per file or folder to reduce them"
        )
        self.count = count
        self.cap = cap


class UnsatisfiableModelError(ValueError):
    pass


@dataclass(frozen=True)
class Sample:
    model_hash: str
    t: int
    mode: str
    configurations: tuple[Configuration, ...]
    stats: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)


def interaction_count(k: int, t: int) -> int:
    """Number of size-t multisets over k entries."""
    return math.comb(k + t - 1, t)


def interactions(indices: Sequence[int], t: int) -> Iterator[tuple[int, ...]]:
    """Size-t multisets of ``indices`` in lexicographic order."""
    return itertools.combinations_with_replacement(indices, t)


@dataclass
class SamplerState:
    """The growing list of (partial) configurations and run counters."""

    context: SatContext
    configurations: list[set[int]] = field(default_factory=list)
    enumerated: int = 0
    already_covered: int = 0
    newly_covered: int = 0
    unsatisfiable: int = 0

    def covers(self, combined: PresenceCondition) -> bool:
        return any(c.issuperset(clause) for c in self.configurations for clause in combined.clauses)

    def step(self, combined: PresenceCondition) -> str:
        """Process one combined presence condition.

        Returns ``"covered"``, ``"merged"``, ``"new"`` or ``"unsatisfiable"``.
        """
        self.enumerated += 1
        if self.covers(combined):
            self.already_covered += 1
            return "covered"
        candidates = []
        for clause in combined.clauses:
            if not self.context.valid(clause):
                continue
            for config in self.configurations:
                if any(-lit in config for lit in clause):
                    continue
                if self.context.valid(config.union(clause)):
                    config.update(clause)
                    self.newly_covered += 1
                    return "merged"
            candidates.append(clause)
        if not candidates:
            self.unsatisfiable += 1
            return "unsatisfiable"
        # min() keeps the first of equally small clauses
        self.configurations.append(set(min(candidates, key=len)))
        self.newly_covered += 1
        return "new"

    def snapshot(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.configurations]


def _run_group(state: SamplerState, universe: PcUniverse, indices: Sequence[int], t: int,
               clause_cap: int, on_step: Callable | None) -> None:
    entries = universe.entries
    for combo in interactions(indices, t):
        combined = conjoin([entries[i] for i in combo], clause_cap)
        if combined.is_contradiction:
            state.enumerated += 1
            state.unsatisfiable += 1
            outcome = "unsatisfiable"
        else:
            outcome = state.step(combined)
        if on_step is not None:
            on_step(combo, combined, outcome, state)


def _finish(state: SamplerState, universe: PcUniverse, model: FeatureModel, t: int,
            seed: int) -> Sample:
    rng = random.Random(seed)
    configs = tuple(state.context.extend_to_complete(c, rng) for c in state.configurations)
    stats = {
        "enumerated": state.enumerated,
        "already_covered": state.already_covered,
        "newly_covered": state.newly_covered,
        "unsatisfiable": state.unsatisfiable,
    }
    return Sample(model.checksum(), t, universe.mode, configs, stats)


def _check(universe: PcUniverse, model: FeatureModel, t: int, groups, cap: int,
           context: SatContext) -> None:
    if t < 1:
        raise ValueError("t must be at least 1")
    total = sum(interaction_count(len(g), t) for g in groups)
    if total > cap:
        raise InteractionCapError(total, cap)
    if not context.satisfiable():
        raise UnsatisfiableModelError("the feature model has no valid configuration")


def _ordered(universe: PcUniverse, groups, shuffle_seed):
    if shuffle_seed is None:
        return groups
    rng = random.Random(shuffle_seed)
    out = []
    for g in groups:
        g = list(g)
        rng.shuffle(g)
        out.append(tuple(g))
    return out


def sample(universe: PcUniverse, model: FeatureModel, t: int, seed: int = 0, *,
           interaction_cap: int = DEFAULT_INTERACTION_CAP, timeout: float | None = DEFAULT_TIMEOUT,
           clause_cap: int = DEFAULT_CLAUSE_CAP, shuffle_seed: int | None = None,
           on_step: Callable | None = None) -> Sample:
    """Cover every satisfiable t-wise interaction of the universe's entries.

    Interactions are the size-t multisets of entries in lexicographic index
    order.  ``seed`` only drives the final completion of partial configurations;
    ``shuffle_seed`` optionally permutes the entry order first.  ``on_step`` is
    called as ``on_step(indices, combined_pc, outcome, state)`` after every
    interaction.
    """
    groups = [tuple(range(len(universe)))]
    return _sample_groups(universe, model, t, seed, groups, interaction_cap, timeout,
                          clause_cap, shuffle_seed, on_step)


def sample_grouped(universe: PcUniverse, model: FeatureModel, t: int, seed: int = 0, *,
                   interaction_cap: int = DEFAULT_INTERACTION_CAP,
                   timeout: float | None = DEFAULT_TIMEOUT, clause_cap: int = DEFAULT_CLAUSE_CAP,
                   shuffle_seed: int | None = None, on_step: Callable | None = None) -> Sample:
    """Run the greedy cover once per group, accumulating into one configuration list."""
    groups = universe.group_list()
    seen = set().union(*groups) if groups else set()
    if seen != set(range(len(universe))):
        raise ValueError("groups must cover every universe entry")
    return _sample_groups(universe, model, t, seed, groups, interaction_cap, timeout,
                          clause_cap, shuffle_seed, on_step)


def _sample_groups(universe, model, t, seed, groups, interaction_cap, timeout, clause_cap,
                   shuffle_seed, on_step) -> Sample:
    context = SatContext(model, timeout)
    _check(universe, model, t, groups, interaction_cap, context)
    state = SamplerState(context)
    for g in _ordered(universe, groups, shuffle_seed):
        _run_group(state, universe, g, t, clause_cap, on_step)
    result = _finish(state, universe, model, t, seed)
    log.info("sampled %d configurations (%s)", len(result), result.stats)
    return result


def random_sample(model: FeatureModel, n: int, seed: int = 0,
                  timeout: float | None = DEFAULT_TIMEOUT) -> Sample:
    """``n`` valid complete configurations, each from a freshly shuffled branching order.

    Duplicates are possible.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    context = SatContext(model, timeout)
    if not context.satisfiable():
        raise UnsatisfiableModelError("the feature model has no valid configuration")
    rng = random.Random(seed)
    configs = tuple(context.extend_to_complete((), rng) for _ in range(n))
    return Sample(model.checksum(), 0, "random", configs)
