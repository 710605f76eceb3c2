"""File formats: DIMACS models, presence-condition lists, sample CSV, fault lists."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import formula as fm
from .logic import Configuration, FeatureModel, literal_key


class InputFormatError(ValueError):
    pass


def parse_dimacs(text: str) -> FeatureModel:
    """DIMACS CNF; ``c <index> <name>`` comments bind names, unnamed variables get ``VAR_<index>``."""
    names: dict[int, str] = {}
    n_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) >= 3 and parts[0] == "c" and re.fullmatch(r"\d+\$?", parts[1]):
                names[int(parts[1].rstrip("$"))] = parts[2]
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputFormatError(f"line {lineno}: bad problem line {line!r}")
            n_vars = int(parts[2])
            continue
        try:
            nums = [int(x) for x in line.split()]
        except ValueError:
            raise InputFormatError(f"line {lineno}: not a clause: {line!r}") from None
        for x in nums:
            if x == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(x)
    if current:
        clauses.append(tuple(current))
    if n_vars is None:
        raise InputFormatError("missing 'p cnf' line")
    for c in clauses:
        for lit in c:
            if abs(lit) > n_vars:
                raise InputFormatError(f"literal {lit} exceeds declared {n_vars} variables")
    used = set(names.values())
    out = []
    for i in range(1, n_vars + 1):
        name = names.get(i)
        if name is None:
            name = f"VAR_{i}"
            while name in used:
                name = "_" + name
            used.add(name)
        out.append(name)
    return FeatureModel(tuple(out), tuple(clauses))


def format_dimacs(model: FeatureModel) -> str:
    lines = [f"c {i} {name}" for i, name in enumerate(model.names, start=1)]
    lines.append(f"p cnf {model.size} {len(model.clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in model.clauses]
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> FeatureModel:
    return parse_dimacs(Path(path).read_text())


@dataclass(frozen=True)
class PcRecord:
    """One line's presence condition as written by the extractor."""

    path: str
    line: int
    formula: str


def format_records(records: Iterable[PcRecord]) -> str:
    return "".join(f"{r.path}\t{r.line}\t{r.formula}\n" for r in records)


def parse_records(text: str) -> list[PcRecord]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InputFormatError(f"line {lineno}: expected <path>\\t<line>\\t<formula>")
        try:
            out.append(PcRecord(parts[0], int(parts[1]), parts[2]))
        except ValueError:
            raise InputFormatError(f"line {lineno}: bad line number {parts[1]!r}") from None
    return out


def implicit_model(formulas: Iterable[str]) -> FeatureModel:
    """Unconstrained model over every name mentioned, in order of first appearance."""
    names: dict[str, None] = {}
    for f in formulas:
        for a in fm.atoms(fm.parse(f)):
            names.setdefault(a)
    return FeatureModel.unconstrained(names)


def format_sample_csv(configs: Sequence[Iterable[int]], model: FeatureModel) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(model.names)
    for c in configs:
        lits = set(c)
        w.writerow(["+" if i in lits else "-" for i in range(1, model.size + 1)])
    return buf.getvalue()


def parse_sample_csv(text: str, model: FeatureModel) -> list[Configuration]:
    """Read a ``+``/``-`` matrix; columns may come in any order but must name exactly the model's features."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise InputFormatError("empty sample file")
    header = [h.strip() for h in rows[0]]
    unknown = [h for h in header if h not in model]
    missing = [n for n in model.names if n not in header]
    if unknown or missing or len(set(header)) != len(header):
        offenders = unknown + missing
        raise InputFormatError("feature names do not match the model: " + ", ".join(offenders or header))
    index = [model.index(h) for h in header]
    configs = []
    for rowno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputFormatError(f"row {rowno}: expected {len(header)} fields, got {len(row)}")
        lits = []
        for i, cell in zip(index, row):
            cell = cell.strip()
            if cell not in ("+", "-"):
                raise InputFormatError(f"row {rowno}: cell {cell!r} is not + or -")
            lits.append(i if cell == "+" else -i)
        configs.append(Configuration(lits))
    return configs


def sample_csv_header(text: str) -> list[str]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise InputFormatError("empty sample file")
    return [h.strip() for h in rows[0]]


def parse_faults(text: str) -> list[tuple[str, str]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected <id>\\t<formula>")
        out.append((parts[0], parts[1]))
    return out


def format_configuration(config: Iterable[int], model: FeatureModel) -> str:
    return " ".join(model.format_literal(l) for l in sorted(config, key=literal_key))
