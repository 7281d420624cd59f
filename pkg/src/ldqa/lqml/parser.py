"""Lexer and recursive-descent parser for the metric language.

One program defines one metric: identification clauses, zero or more
match/action rules binding named accumulators, and a single finally
expression combining them.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple, Optional

from ldqa.lqml.ast import (
    VARIABLES,
    And,
    Call,
    Expr,
    MetricDef,
    Not,
    NumberLit,
    Or,
    Rule,
    RuleRef,
    StringLit,
    Var,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, token: str = ""):
        detail = f"{message} at line {line}, column {column}"
        if token:
            detail += f" (near {token!r})"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.token = token


class UnboundRuleRef(ParseError):
    pass


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<ARROW>=>)
  | (?P<AND>&&)
  | (?P<OR>\|\|)
  | (?P<IRI><[^<>\s]*>)
  | (?P<STRING>"(?:[^"\\]|\\.)*")
  | (?P<NUMBER>\d+(?:\.\d+)?)
  | (?P<VAR>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<PUNCT>[{}();:.,=!])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError("unexpected character", line, pos - line_start + 1, source[pos])
        kind = match.lastgroup or ""
        value = match.group()
        if kind != "WS":
            tokens.append(Token(kind, value, line, match.start() - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = match.start() + value.rfind("\n") + 1
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> Optional[Token]:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _next(self) -> Token:
        token = self._peek()
        if token is None:
            last = self._tokens[-1] if self._tokens else Token("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.column)
        self._pos += 1
        return token

    def _expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self._next()
        if token.kind != kind or (value is not None and token.value != value):
            wanted = value or kind
            raise ParseError(f"expected {wanted!r}", token.line, token.column, token.value)
        return token

    def _expect_punct(self, char: str) -> Token:
        return self._expect("PUNCT", char)

    def program(self) -> MetricDef:
        def_kw = self._expect("IDENT")
        if def_kw.value != "def":
            raise ParseError("program must start with 'def'", def_kw.line, def_kw.column, def_kw.value)
        self._expect_punct("{")
        name = self._expect("IDENT").value
        self._expect_punct("}")
        self._expect_punct(":")

        metric_iri: Optional[str] = None
        label = ""
        description = ""
        rules: List[Rule] = []
        final_expr: Optional[Expr] = None

        while True:
            clause_head = self._next()
            if clause_head.kind != "IDENT":
                raise ParseError("expected a clause", clause_head.line, clause_head.column, clause_head.value)
            head = clause_head.value
            if head == "metric":
                self._expect_punct("{")
                iri_token = self._expect("IRI")
                if metric_iri is not None:
                    raise ParseError("duplicate metric clause", iri_token.line, iri_token.column)
                metric_iri = iri_token.value[1:-1]
                self._expect_punct("}")
            elif head in ("label", "description"):
                self._expect_punct("{")
                text = _unquote(self._expect("STRING"))
                self._expect_punct("}")
                if head == "label":
                    label = text
                else:
                    description = text
            elif head == "finally":
                self._expect_punct("{")
                if final_expr is not None:
                    raise ParseError("duplicate finally clause", clause_head.line, clause_head.column)
                final_expr = self.expression()
                self._expect_punct("}")
            else:
                self._expect_punct("=")
                match_kw = self._expect("IDENT")
                if match_kw.value != "match":
                    raise ParseError("expected 'match'", match_kw.line, match_kw.column, match_kw.value)
                self._expect_punct("{")
                condition = self.expression()
                self._expect_punct("}")
                self._expect("ARROW")
                action_kw = self._expect("IDENT")
                if action_kw.value != "action":
                    raise ParseError("expected 'action'", action_kw.line, action_kw.column, action_kw.value)
                self._expect_punct("{")
                action = self.expression()
                self._expect_punct("}")
                if any(rule.binding == head for rule in rules):
                    raise ParseError(f"rule {head!r} defined twice", clause_head.line, clause_head.column)
                rules.append(Rule(head, condition, action))

            separator = self._next()
            if separator.kind != "PUNCT" or separator.value not in ";.":
                raise ParseError("expected ';' or '.'", separator.line, separator.column, separator.value)
            if separator.value == ".":
                break

        trailing = self._peek()
        if trailing is not None:
            raise ParseError("text after final '.'", trailing.line, trailing.column, trailing.value)
        if metric_iri is None:
            raise ParseError("missing metric clause", 1, 1)
        if final_expr is None:
            raise ParseError("missing finally clause", 1, 1)

        definition = MetricDef(name, metric_iri, label, description, tuple(rules), final_expr)
        _validate_refs(definition)
        return definition

    def expression(self) -> Expr:
        return self._or()

    def _or(self) -> Expr:
        left = self._and()
        while True:
            token = self._peek()
            if token is None or token.kind != "OR":
                return left
            self._next()
            left = Or(left, self._and())

    def _and(self) -> Expr:
        left = self._unary()
        while True:
            token = self._peek()
            if token is None or token.kind != "AND":
                return left
            self._next()
            left = And(left, self._unary())

    def _unary(self) -> Expr:
        token = self._peek()
        if token is not None and token.kind == "PUNCT" and token.value == "!":
            self._next()
            return Not(self._unary())
        return self._primary()

    def _primary(self) -> Expr:
        token = self._next()
        if token.kind == "PUNCT" and token.value == "(":
            inner = self.expression()
            self._expect_punct(")")
            return inner
        if token.kind == "VAR":
            name = token.value[1:]
            if name not in VARIABLES:
                raise ParseError(f"unknown variable ?{name}", token.line, token.column, token.value)
            return Var(name)
        if token.kind == "NUMBER":
            return NumberLit(float(token.value))
        if token.kind == "STRING":
            return StringLit(_unquote(token))
        if token.kind == "IDENT":
            nxt = self._peek()
            if nxt is not None and nxt.kind == "PUNCT" and nxt.value == "(":
                self._next()
                args: List[Expr] = []
                closing = self._peek()
                if closing is not None and closing.kind == "PUNCT" and closing.value == ")":
                    self._next()
                else:
                    while True:
                        args.append(self.expression())
                        sep = self._next()
                        if sep.kind == "PUNCT" and sep.value == ")":
                            break
                        if sep.kind != "PUNCT" or sep.value != ",":
                            raise ParseError("expected ',' or ')'", sep.line, sep.column, sep.value)
                return Call(token.value, tuple(args))
            return RuleRef(token.value)
        raise ParseError("expected an expression", token.line, token.column, token.value)


def _unquote(token: Token) -> str:
    body = token.value[1:-1]
    return body.replace('\\"', '"').replace("\\\\", "\\")


def _walk(expr: Expr):
    yield expr
    if isinstance(expr, Call):
        for arg in expr.args:
            yield from _walk(arg)
    elif isinstance(expr, (And, Or)):
        yield from _walk(expr.left)
        yield from _walk(expr.right)
    elif isinstance(expr, Not):
        yield from _walk(expr.operand)


def _validate_refs(definition: MetricDef) -> None:
    bound = {rule.binding for rule in definition.rules}
    for rule in definition.rules:
        for part in (rule.condition, rule.action):
            for node in _walk(part):
                if isinstance(node, RuleRef):
                    raise ParseError(
                        f"rule reference {node.name!r} not allowed in match/action", 1, 1
                    )
    for node in _walk(definition.final_expr):
        if isinstance(node, RuleRef) and node.name not in bound:
            raise UnboundRuleRef(f"finally references undefined rule {node.name!r}", 1, 1)


def parse_lqml(source: str) -> MetricDef:
    """Parse a metric definition; raises ParseError with position info."""
    return _Parser(tokenize(source)).program()
