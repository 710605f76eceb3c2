"""Line-level presence conditions from C-preprocessor conditionals.

No macro expansion, no ``#include`` following.  A condition that is not a pure
Boolean expression over macro names (comparisons, arithmetic, function-like
macros) is treated as true, with a warning.
"""

from __future__ import annotations

import fnmatch
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import formula as fm
from .io import PcRecord

SOURCE_SUFFIXES = (".c", ".h", ".cxx", ".hxx")

_DIRECTIVE = re.compile(r"^\s*#\s*([A-Za-z_]+)\b(.*)$", re.S)


class ExtractionError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class ExtractWarning:
    path: str
    line: int
    message: str

    def __str__(self):
        return f"{self.path}:{self.line}: {self.message}"


@dataclass
class ExtractionResult:
    records: list[PcRecord] = field(default_factory=list)
    warnings: list[ExtractWarning] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


@dataclass
class _Frame:
    prior: list  # parsed conditions of earlier branches; None where unparseable
    branch: fm.Expr
    start: int
    seen_else: bool = False


def parse_condition(text: str) -> fm.Expr:
    """Parse an ``#if``/``#elif`` argument; raises FormulaSyntaxError when not Boolean."""
    return fm.parse_cpp(text)


def _strip_comments(text: str) -> str:
    text = re.sub(r"/\*.*?\*/", " ", text, flags=re.S)
    return re.sub(r"//.*", "", text).strip()


def _block_comment_state(lines: Sequence[str]) -> list[bool]:
    """For each line, whether it begins inside a ``/* */`` comment."""
    states = []
    inside = False
    for line in lines:
        states.append(inside)
        i, n = 0, len(line)
        quote = None
        while i < n:
            ch = line[i]
            if inside:
                if line.startswith("*/", i):
                    inside = False
                    i += 2
                    continue
            elif quote:
                if ch == "\\":
                    i += 2
                    continue
                if ch == quote:
                    quote = None
            elif ch in "\"'":
                quote = ch
            elif line.startswith("//", i):
                break
            elif line.startswith("/*", i):
                inside = True
                i += 2
                continue
            i += 1
    return states


def _negated_prior(prior: list) -> list:
    return [fm.negation(c) for c in prior if c is not None]


def extract_text(text: str, path: str = "<string>") -> tuple[list[PcRecord], list[ExtractWarning]]:
    """Presence condition of every physical line of ``text``."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [l[:-1] if l.endswith("\r") else l for l in lines]
    in_comment = _block_comment_state(lines)
    stack: list[_Frame] = []
    records: list[PcRecord] = []
    warnings: list[ExtractWarning] = []

    def context(frames) -> str:
        return fm.to_text(fm.conjunction(f.branch for f in frames))

    def parse(arg: str, lineno: int, kind: str):
        try:
            if kind in ("ifdef", "elifdef", "ifndef", "elifndef"):
                name = arg.split()
                if len(name) != 1 or not re.fullmatch(r"[A-Za-z_]\w*", name[0]):
                    raise fm.FormulaSyntaxError(f"bad #{kind} argument {arg!r}")
                cond = fm.Var(name[0])
                return fm.Not(cond) if kind.endswith("ndef") else cond
            return parse_condition(arg)
        except fm.FormulaSyntaxError as exc:
            warnings.append(ExtractWarning(path, lineno, f"condition treated as true: {exc}"))
            return None

    i = 0
    while i < len(lines):
        lineno = i + 1
        m = None if in_comment[i] else _DIRECTIVE.match(lines[i])
        if m is None:
            records.append(PcRecord(path, lineno, context(stack)))
            i += 1
            continue
        j = i
        logical = lines[i]
        while logical.endswith("\\") and j + 1 < len(lines):
            j += 1
            logical = logical[:-1] + " " + lines[j]
        m = _DIRECTIVE.match(logical)
        kind, arg = m.group(1), _strip_comments(m.group(2))

        if kind in ("if", "ifdef", "ifndef"):
            pc = context(stack)
            cond = parse(arg, lineno, kind)
            stack.append(_Frame([cond], cond if cond is not None else fm.TRUE, lineno))
        elif kind in ("elif", "elifdef", "elifndef", "else"):
            if not stack:
                raise ExtractionError(path, lineno, f"#{kind} without #if")
            top = stack[-1]
            if top.seen_else:
                raise ExtractionError(path, lineno, f"#{kind} after #else")
            pc = context(stack[:-1])
            if kind == "else":
                top.seen_else = True
                top.branch = fm.conjunction(_negated_prior(top.prior))
            else:
                cond = parse(arg, lineno, kind)
                own = [cond] if cond is not None else []
                top.branch = fm.conjunction(own + _negated_prior(top.prior))
                top.prior.append(cond)
        elif kind == "endif":
            if not stack:
                raise ExtractionError(path, lineno, "#endif without #if")
            stack.pop()
            pc = context(stack)
        else:
            pc = context(stack)
        for k in range(i, j + 1):
            records.append(PcRecord(path, k + 1, pc))
        i = j + 1
    if stack:
        raise ExtractionError(path, stack[-1].start, "unterminated #if")
    return records, warnings


def extract_file(path, display_path: str | None = None) -> tuple[list[PcRecord], list[ExtractWarning]]:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return extract_text(data.decode("utf-8", errors="replace"), display_path or str(path))


def _excluded(rel: str, patterns: Sequence[str]) -> bool:
    parts = rel.split("/")
    prefixes = ["/".join(parts[:k]) for k in range(1, len(parts) + 1)]
    for pat in patterns:
        pat = pat.rstrip("/")
        if any(fnmatch.fnmatchcase(p, pat) for p in prefixes):
            return True
    return False


def extract_tree(root, exclusions: Sequence[str] = ()) -> ExtractionResult:
    """Extract every C source/header below ``root`` in lexicographic path order.

    Per-file failures are collected in ``errors``; paths are relative to ``root``.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"{root} is not a directory")
    files = []
    for dirpath, dirnames, filenames in os.walk(root):
        for name in filenames:
            if name.endswith(SOURCE_SUFFIXES):
                full = Path(dirpath) / name
                rel = full.relative_to(root).as_posix()
                if not _excluded(rel, exclusions):
                    files.append(rel)
    result = ExtractionResult()
    for rel in sorted(files):
        try:
            records, warnings = extract_file(root / rel, rel)
        except (OSError, ExtractionError) as exc:
            result.errors.append(str(exc))
            continue
        result.records.extend(records)
        result.warnings.extend(warnings)
    return result
