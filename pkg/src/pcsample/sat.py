"""Satisfiability queries against a feature model's CNF.

A small DPLL solver (unit propagation, chronological backtracking) with a
caller-controlled branching order, so completions can be made deterministic
under a seed.
"""

from __future__ import annotations

import random
import time
from typing import Iterable, Sequence

from .logic import Configuration, FeatureModel

DEFAULT_TIMEOUT = 30.0


class SatTimeout(RuntimeError):
    """A query ran past its time budget; its answer is indeterminate."""


class ContractError(ValueError):
    pass


class SatContext:
    """Single-owner query context over an immutable model.

    Contexts are cheap: build one per thread.
    """

    def __init__(self, model: FeatureModel, timeout: float | None = DEFAULT_TIMEOUT):
        self.model = model
        self.timeout = timeout
        n = model.size
        clauses = []
        self.trivially_unsat = False
        for c in model.clauses:
            lits = set(c)
            if any(-l in lits for l in lits):
                continue
            if not lits:
                self.trivially_unsat = True
            clauses.append(tuple(sorted(lits)))
        self.clauses = clauses
        self.occ: dict[int, list[int]] = {l: [] for i in range(1, n + 1) for l in (i, -i)}
        for ci, c in enumerate(clauses):
            for l in c:
                self.occ[l].append(ci)
        self._cache: dict[frozenset, bool] = {}

    def solve(self, assumptions: Iterable[int] = (), order: Sequence[int] | None = None,
              phase: dict[int, bool] | None = None) -> list[int] | None:
        """Return a complete satisfying assignment (as literals) extending ``assumptions``, or None."""
        n = self.model.size
        if self.trivially_unsat:
            return None
        deadline = None if self.timeout is None else time.monotonic() + self.timeout
        value = [0] * (n + 1)
        trail: list[int] = []
        clauses, occ = self.clauses, self.occ
        order = list(order) if order is not None else list(range(1, n + 1))
        phase = phase or {}
        steps = 0

        def assign(lit):
            value[abs(lit)] = 1 if lit > 0 else -1
            trail.append(lit)

        def propagate(head):
            nonlocal steps
            while head < len(trail):
                falsified = -trail[head]
                head += 1
                for ci in occ[falsified]:
                    steps += 1
                    unassigned = 0
                    free = 0
                    for l in clauses[ci]:
                        v = value[abs(l)]
                        if v == 0:
                            free += 1
                            unassigned = l
                            if free > 1:
                                break
                        elif (v > 0) == (l > 0):
                            break
                    else:
                        if free == 0:
                            return False
                        assign(unassigned)
            return True

        for c in clauses:
            if len(c) == 1:
                v = value[abs(c[0])]
                if v == 0:
                    assign(c[0])
                elif (v > 0) != (c[0] > 0):
                    return None
        for lit in assumptions:
            v = value[abs(lit)]
            if v == 0:
                assign(lit)
            elif (v > 0) != (lit > 0):
                return None
        if not propagate(0):
            return None

        stack: list[tuple[int, int, bool, int]] = []
        pos = 0
        while True:
            if deadline is not None and steps > 2000:
                steps = 0
                if time.monotonic() > deadline:
                    raise SatTimeout(f"SAT query exceeded {self.timeout}s")
            while pos < len(order) and value[order[pos]] != 0:
                pos += 1
            if pos == len(order):
                return [v if value[v] > 0 else -v for v in range(1, n + 1)]
            var = order[pos]
            lit = var if phase.get(var, True) else -var
            stack.append((len(trail), lit, False, pos))
            assign(lit)
            steps += 1
            ok = propagate(len(trail) - 1)
            while not ok:
                while stack:
                    mark, lit, flipped, pos = stack.pop()
                    for undone in trail[mark:]:
                        value[abs(undone)] = 0
                    del trail[mark:]
                    if not flipped:
                        stack.append((mark, -lit, True, pos))
                        assign(-lit)
                        break
                else:
                    return None
                ok = propagate(len(trail) - 1)

    def valid(self, literals: Iterable[int]) -> bool:
        """True iff the model's CNF plus these unit literals is satisfiable."""
        key = frozenset(literals)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if any(-l in key for l in key):
            result = False
        elif not self.clauses and not self.trivially_unsat:
            result = True
        else:
            result = self.solve(key) is not None
        self._cache[key] = result
        return result

    def satisfiable(self) -> bool:
        return self.valid(())

    def extend_to_complete(self, config: Iterable[int], rng: random.Random) -> Configuration:
        """Complete ``config`` using a shuffled branching order and random phases drawn from ``rng``."""
        config = frozenset(config)
        n = self.model.size
        order = list(range(1, n + 1))
        rng.shuffle(order)
        phase = {v: rng.random() < 0.5 for v in order}
        if len(config) == n and self.valid(config):
            return Configuration(config)
        model = self.solve(config, order, phase)
        if model is None:
            raise ContractError(f"configuration {sorted(config, key=abs)} is not valid for the model")
        return Configuration(model)


def valid(config: Iterable[int], model: FeatureModel, timeout: float | None = DEFAULT_TIMEOUT) -> bool:
    return SatContext(model, timeout).valid(config)


def extend_to_complete(config: Iterable[int], model: FeatureModel, seed: int,
                       timeout: float | None = DEFAULT_TIMEOUT) -> Configuration:
    return SatContext(model, timeout).extend_to_complete(config, random.Random(seed))
