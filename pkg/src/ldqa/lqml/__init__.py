"""Declarative metric language: parse, compile, run."""

from ldqa.lqml.ast import MetricDef, Rule, to_source
from ldqa.lqml.compiler import (
    ArityMismatch,
    CompiledMetric,
    EvaluationError,
    FunctionEntry,
    FunctionRegistry,
    LqmlCompileError,
    UnknownFunction,
    UnsupportedAction,
    compile_metric,
    default_registry,
)
from ldqa.lqml.parser import ParseError, UnboundRuleRef, parse_lqml

__all__ = [
    "MetricDef",
    "Rule",
    "to_source",
    "parse_lqml",
    "ParseError",
    "UnboundRuleRef",
    "compile_metric",
    "default_registry",
    "CompiledMetric",
    "FunctionRegistry",
    "FunctionEntry",
    "LqmlCompileError",
    "UnknownFunction",
    "ArityMismatch",
    "UnsupportedAction",
    "EvaluationError",
]
