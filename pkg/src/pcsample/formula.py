"""Propositional expression trees and the textual formula grammar.

Grammar (shared by presence-condition files, fault files and extractor output)::

    expr   := term ('||' term)*
    term   := factor ('&&' factor)*
    factor := '!' factor | '(' expr ')' | NAME | '1' | '0'

The C-preprocessor flavour additionally accepts ``defined(NAME)``, ``defined NAME``
and arbitrary integer literals (zero is false, anything else true).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

Expr = Union["Const", "Var", "Not", "And", "Or"]


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: Expr


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


TRUE = Const(True)
FALSE = Const(False)


class FormulaSyntaxError(ValueError):
    pass


def conjunction(args: Iterable[Expr]) -> Expr:
    """Build a flattened conjunction, dropping ``true`` operands."""
    flat = []
    for a in args:
        if a == TRUE:
            continue
        if a == FALSE:
            return FALSE
        flat.extend(a.args if isinstance(a, And) else (a,))
    if not flat:
        return TRUE
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disjunction(args: Iterable[Expr]) -> Expr:
    flat = []
    for a in args:
        if a == FALSE:
            continue
        if a == TRUE:
            return TRUE
        flat.extend(a.args if isinstance(a, Or) else (a,))
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def negation(arg: Expr) -> Expr:
    if isinstance(arg, Const):
        return Const(not arg.value)
    if isinstance(arg, Not):
        return arg.arg
    return Not(arg)


_TOKEN = re.compile(
    r"\s*(?:(?P<op>&&|\|\||!(?!=)|\(|\))|(?P<num>\d+[uUlL]*)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    return tokens


class _Parser:
    def __init__(self, text: str, cpp: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.cpp = cpp

    def error(self, msg: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(f"{msg} in {self.text!r}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, tok = self.take()
        if tok != value:
            raise self.error(f"expected {value!r}, got {tok!r}")

    def parse(self) -> Expr:
        if not self.tokens:
            raise self.error("empty formula")
        expr = self.expr()
        if self.pos != len(self.tokens):
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return expr

    def expr(self) -> Expr:
        args = [self.term()]
        while self.peek() == ("op", "||"):
            self.take()
            args.append(self.term())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def term(self) -> Expr:
        args = [self.factor()]
        while self.peek() == ("op", "&&"):
            self.take()
            args.append(self.factor())
        return args[0] if len(args) == 1 else And(tuple(args))

    def factor(self) -> Expr:
        kind, tok = self.take()
        if tok == "!":
            return Not(self.factor())
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "num":
            value = int(tok.rstrip("uUlL"))
            if not self.cpp and value not in (0, 1):
                raise self.error(f"integer literal {tok}")
            return Const(value != 0)
        if kind == "name":
            if self.cpp and tok == "defined":
                if self.peek() == ("op", "("):
                    self.take()
                    k, name = self.take()
                    if k != "name":
                        raise self.error("defined() needs an identifier")
                    self.expect(")")
                    return Var(name)
                k, name = self.take()
                if k != "name":
                    raise self.error("defined needs an identifier")
                return Var(name)
            if self.peek() == ("op", "("):
                raise self.error(f"function-like macro {tok}()")
            return Var(tok)
        if tok is None:
            raise self.error("unexpected end of formula")
        raise self.error(f"unexpected token {tok!r}")


def parse(text: str) -> Expr:
    """Parse the plain formula grammar (``! && || ( ) 1 0`` and names)."""
    return _Parser(text, cpp=False).parse()


def parse_cpp(text: str) -> Expr:
    """Parse a C-preprocessor ``#if``/``#elif`` condition.

    Comparisons, arithmetic and function-like macros raise FormulaSyntaxError.
    """
    return _Parser(text, cpp=True).parse()


def _prec(e: Expr) -> int:
    if isinstance(e, Or):
        return 1
    if isinstance(e, And):
        return 2
    return 3


def to_text(e: Expr) -> str:
    if isinstance(e, Const):
        return "1" if e.value else "0"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Not):
        inner = to_text(e.arg)
        return "!" + (inner if _prec(e.arg) == 3 else f"({inner})")
    op, prec = (" && ", 2) if isinstance(e, And) else (" || ", 1)
    return op.join(to_text(a) if _prec(a) > prec else f"({to_text(a)})" for a in e.args)


def atoms(e: Expr) -> list[str]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(x):
        if isinstance(x, Var):
            seen.setdefault(x.name)
        elif isinstance(x, Not):
            walk(x.arg)
        elif isinstance(x, (And, Or)):
            for a in x.args:
                walk(a)

    walk(e)
    return list(seen)


def restrict(e: Expr, known) -> Expr:
    """Replace every top-level conjunct mentioning a name outside ``known`` by true."""
    conjuncts = e.args if isinstance(e, And) else (e,)
    return conjunction(c for c in conjuncts if all(a in known for a in atoms(c)))


def evaluate(e: Expr, values) -> bool:
    """Direct evaluation; ``values`` maps names to booleans."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return bool(values[e.name])
    if isinstance(e, Not):
        return not evaluate(e.arg, values)
    if isinstance(e, And):
        return all(evaluate(a, values) for a in e.args)
    return any(evaluate(a, values) for a in e.args)
