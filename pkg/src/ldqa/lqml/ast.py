"""AST for the declarative metric language."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union

Expr = Union["Var", "RuleRef", "Call", "And", "Or", "Not", "NumberLit", "StringLit"]

VARIABLES = ("s", "p", "o")


@dataclass(frozen=True)
class Var:
    name: str  # "s" | "p" | "o"


@dataclass(frozen=True)
class RuleRef:
    name: str


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class And:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not:
    operand: Expr


@dataclass(frozen=True)
class NumberLit:
    value: float


@dataclass(frozen=True)
class StringLit:
    value: str


@dataclass(frozen=True)
class Rule:
    binding: str
    condition: Expr
    action: Expr


@dataclass(frozen=True)
class MetricDef:
    name: str
    metric_iri: str
    label: str = ""
    description: str = ""
    rules: Tuple[Rule, ...] = field(default_factory=tuple)
    final_expr: Expr = NumberLit(0.0)


def expr_to_source(expr: Expr) -> str:
    if isinstance(expr, Var):
        return f"?{expr.name}"
    if isinstance(expr, RuleRef):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(expr_to_source(a) for a in expr.args)})"
    if isinstance(expr, And):
        return f"({expr_to_source(expr.left)} && {expr_to_source(expr.right)})"
    if isinstance(expr, Or):
        return f"({expr_to_source(expr.left)} || {expr_to_source(expr.right)})"
    if isinstance(expr, Not):
        return f"!({expr_to_source(expr.operand)})"
    if isinstance(expr, NumberLit):
        value = expr.value
        return str(int(value)) if float(value).is_integer() else repr(value)
    if isinstance(expr, StringLit):
        escaped = expr.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    raise TypeError(f"not an expression: {expr!r}")


def expr_to_dict(expr: Expr) -> dict:
    if isinstance(expr, Var):
        return {"var": expr.name}
    if isinstance(expr, RuleRef):
        return {"rule": expr.name}
    if isinstance(expr, Call):
        return {"call": expr.func, "args": [expr_to_dict(a) for a in expr.args]}
    if isinstance(expr, And):
        return {"and": [expr_to_dict(expr.left), expr_to_dict(expr.right)]}
    if isinstance(expr, Or):
        return {"or": [expr_to_dict(expr.left), expr_to_dict(expr.right)]}
    if isinstance(expr, Not):
        return {"not": expr_to_dict(expr.operand)}
    if isinstance(expr, NumberLit):
        return {"number": expr.value}
    if isinstance(expr, StringLit):
        return {"string": expr.value}
    raise TypeError(f"not an expression: {expr!r}")


def to_dict(definition: MetricDef) -> dict:
    return {
        "name": definition.name,
        "metric": definition.metric_iri,
        "label": definition.label,
        "description": definition.description,
        "rules": [
            {
                "binding": rule.binding,
                "match": expr_to_dict(rule.condition),
                "action": expr_to_dict(rule.action),
            }
            for rule in definition.rules
        ],
        "finally": expr_to_dict(definition.final_expr),
    }


def to_source(definition: MetricDef) -> str:
    """Pretty-print a definition; parsing the output reproduces the AST."""
    lines = [f"def{{{definition.name}}}:"]
    clauses = [f"  metric{{<{definition.metric_iri}>}}"]
    if definition.label:
        clauses.append(f"  label{{{expr_to_source(StringLit(definition.label))}}}")
    if definition.description:
        clauses.append(f"  description{{{expr_to_source(StringLit(definition.description))}}}")
    for rule in definition.rules:
        clauses.append(
            f"  {rule.binding} = match{{{expr_to_source(rule.condition)}}}\n"
            f"    => action{{{expr_to_source(rule.action)}}}"
        )
    clauses.append(f"  finally{{{expr_to_source(definition.final_expr)}}}")
    return lines[0] + "\n" + ";\n".join(clauses) + ".\n"
