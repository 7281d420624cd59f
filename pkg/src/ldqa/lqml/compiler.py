"""Compile metric definitions into executable metric instances.

An accumulator backs each rule: ``count(unique(e))`` keeps a distinct-term
set, ``count(e)`` a plain trigger counter. The finally expression combines
accumulator values with the pure arithmetic builtins at finalize time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

from ldqa.core.descriptors import MetricDescriptor
from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.http_probe import DerefProber
from ldqa.lqml.ast import (
    And,
    Call,
    Expr,
    MetricDef,
    Not,
    NumberLit,
    Or,
    RuleRef,
    StringLit,
    Var,
)
from ldqa.terms import Iri, RdfTerm, Triple

logger = logging.getLogger(__name__)


class LqmlCompileError(ValueError):
    pass


class UnknownFunction(LqmlCompileError):
    pass


class ArityMismatch(LqmlCompileError):
    pass


class UnsupportedAction(LqmlCompileError):
    pass


class EvaluationError(RuntimeError):
    pass


@dataclass(frozen=True)
class FunctionEntry:
    name: str
    arity: int
    kind: str  # "pure" | "effectful" | "structural"
    evaluator: Optional[Callable] = None


class FunctionRegistry:
    """Immutable-after-compile name -> entry table, extendable by hosts."""

    def __init__(self) -> None:
        self._entries: Dict[str, FunctionEntry] = {}

    def register(self, entry: FunctionEntry) -> None:
        if entry.name in self._entries:
            raise LqmlCompileError(f"function {entry.name!r} registered twice")
        self._entries[entry.name] = entry

    def get(self, name: str) -> Optional[FunctionEntry]:
        return self._entries.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._entries


def _is_uri(term) -> bool:
    return isinstance(term, Iri)


def default_registry(deref_prober: Optional[DerefProber] = None) -> FunctionRegistry:
    """The builtin function set; isDereferenceable probes through the host."""
    registry = FunctionRegistry()

    def is_dereferenceable(term) -> bool:
        if not isinstance(term, Iri):
            return False
        if deref_prober is None:
            raise EvaluationError("no dereferenceability prober configured")
        ok, _ = deref_prober(term.text)
        return ok

    registry.register(FunctionEntry("isURI", 1, "pure", _is_uri))
    registry.register(FunctionEntry("isDereferenceable", 1, "effectful", is_dereferenceable))
    registry.register(FunctionEntry("ratio", 2, "pure", None))
    registry.register(FunctionEntry("add", 2, "pure", None))
    registry.register(FunctionEntry("count", 1, "structural", None))
    registry.register(FunctionEntry("unique", 1, "structural", None))
    registry.register(FunctionEntry("action", 1, "structural", None))
    registry.register(FunctionEntry("totaltriples", 1, "structural", None))
    return registry


_COUNT_UNIQUE = "count-unique"
_COUNT = "count"


@dataclass
class _Accumulator:
    mode: str
    inner: Optional[Expr]
    members: set
    triggers: int = 0

    def value(self) -> float:
        return float(len(self.members) if self.mode == _COUNT_UNIQUE else self.triggers)


def _analyse_action(action: Expr) -> tuple[str, Optional[Expr]]:
    if isinstance(action, Call) and action.func == "count":
        inner = action.args[0]
        if isinstance(inner, Call) and inner.func == "unique":
            return _COUNT_UNIQUE, inner.args[0]
        return _COUNT, inner
    raise UnsupportedAction(
        "actions must be count(unique(expr)) or count(expr)"
    )


def _validate_calls(expr: Expr, registry: FunctionRegistry) -> None:
    if isinstance(expr, Call):
        entry = registry.get(expr.func)
        if entry is None:
            raise UnknownFunction(f"unknown function {expr.func!r}")
        if len(expr.args) != entry.arity:
            raise ArityMismatch(
                f"{expr.func} expects {entry.arity} argument(s), got {len(expr.args)}"
            )
        for arg in expr.args:
            _validate_calls(arg, registry)
    elif isinstance(expr, (And, Or)):
        _validate_calls(expr.left, registry)
        _validate_calls(expr.right, registry)
    elif isinstance(expr, Not):
        _validate_calls(expr.operand, registry)


class CompiledMetric(MetricInstance):
    """A metric definition bound to evaluators, driving the standard
    init/accept/finalize lifecycle."""

    def __init__(self, definition: MetricDef, registry: FunctionRegistry):
        descriptor = MetricDescriptor(
            metric_iri=definition.metric_iri,
            label=definition.label or definition.name,
            dimension_iri="",
            category_iri="",
            value_kind="real",
            normalized=False,
        )
        super().__init__(descriptor)
        self.definition = definition
        self._registry = registry
        self._accumulators: Dict[str, _Accumulator] = {}
        self.evaluation_errors: List[str] = []

        for rule in definition.rules:
            _validate_calls(rule.condition, registry)
            mode, inner = _analyse_action(rule.action)
            if inner is not None:
                _validate_calls(inner, registry)
            self._accumulators[rule.binding] = _Accumulator(mode, inner, set())
        _validate_calls(definition.final_expr, registry)

    # -- trigger-time evaluation ------------------------------------------

    def _eval(self, expr: Expr, bindings: Dict[str, RdfTerm]):
        if isinstance(expr, Var):
            return bindings[expr.name]
        if isinstance(expr, NumberLit):
            return expr.value
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, And):
            return bool(self._eval(expr.left, bindings)) and bool(self._eval(expr.right, bindings))
        if isinstance(expr, Or):
            return bool(self._eval(expr.left, bindings)) or bool(self._eval(expr.right, bindings))
        if isinstance(expr, Not):
            return not bool(self._eval(expr.operand, bindings))
        if isinstance(expr, Call):
            entry = self._registry.get(expr.func)
            if entry is None or entry.evaluator is None:
                raise EvaluationError(f"{expr.func} is not evaluable in a rule")
            args = [self._eval(arg, bindings) for arg in expr.args]
            try:
                return entry.evaluator(*args)
            except EvaluationError:
                raise
            except Exception as exc:
                raise EvaluationError(f"{expr.func} raised {exc.__class__.__name__}: {exc}") from exc
        if isinstance(expr, RuleRef):
            raise EvaluationError(f"rule reference {expr.name!r} outside finally")
        raise EvaluationError(f"cannot evaluate {expr!r}")

    def _accept(self, triple: Triple) -> None:
        bindings = {"s": triple.subject, "p": triple.predicate, "o": triple.object}
        for rule in self.definition.rules:
            accumulator = self._accumulators[rule.binding]
            try:
                if not self._eval(rule.condition, bindings):
                    continue
                if accumulator.mode == _COUNT_UNIQUE:
                    accumulator.members.add(self._eval(accumulator.inner, bindings))
                else:
                    accumulator.triggers += 1
            except EvaluationError as exc:
                self.evaluation_errors.append(f"rule {rule.binding}: {exc}")
                logger.warning("rule %s skipped a triple: %s", rule.binding, exc)

    # -- finalize-time evaluation -----------------------------------------

    def _eval_final(self, expr: Expr, total_triples: int) -> Union[float, str]:
        if isinstance(expr, NumberLit):
            return expr.value
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, Call):
            if expr.func == "action":
                ref = expr.args[0]
                if not isinstance(ref, RuleRef):
                    raise EvaluationError("action() takes a rule name")
                return self._accumulators[ref.name].value()
            if expr.func == "totaltriples":
                # dataset-global: the parsed argument is kept for fidelity
                # with the surface syntax and deliberately ignored
                return float(total_triples)
            if expr.func == "ratio":
                numerator = float(self._eval_final(expr.args[0], total_triples))
                denominator = float(self._eval_final(expr.args[1], total_triples))
                if denominator == 0.0:
                    self.mark_degenerate()
                    return 0.0
                return numerator / denominator
            if expr.func == "add":
                return float(self._eval_final(expr.args[0], total_triples)) + float(
                    self._eval_final(expr.args[1], total_triples)
                )
            entry = self._registry.get(expr.func)
            if entry is not None and entry.evaluator is not None and entry.kind == "pure":
                args = [self._eval_final(arg, total_triples) for arg in expr.args]
                return entry.evaluator(*args)
            raise EvaluationError(f"{expr.func} is not evaluable in finally")
        raise EvaluationError(f"cannot evaluate {expr!r} in finally")

    def _finalize(self, run) -> MetricValue:
        total = run.total_triples if run is not None else self.accept_count
        return float(self._eval_final(self.definition.final_expr, total))


def compile_metric(definition: MetricDef, registry: FunctionRegistry) -> CompiledMetric:
    """Bind a parsed definition to a registry; all calls are checked now."""
    return CompiledMetric(definition, registry)
