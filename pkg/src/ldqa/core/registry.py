"""Binding resolution: turn a MetricBinding into a ready MetricInstance."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Callable, Dict, Optional

from ldqa.core.descriptors import MetricBinding, MetricDescriptor
from ldqa.core.instance import MetricInstance
from ldqa.http_probe import ContentTypeProber, DerefProber

if TYPE_CHECKING:
    from ldqa.metrics.vocabulary import VocabularyStore


class UnknownBuiltin(KeyError):
    pass


@dataclass
class MetricContext:
    """Per-run wiring shared by metric instances.

    ``deref_prober`` and ``ct_prober`` are injected so tests can supply
    scripted oracles; when absent, network-dependent metrics raise at
    instantiation rather than mid-stream.
    """

    dataset_iri: str = ""
    base_iri: Optional[str] = None
    deref_prober: Optional[DerefProber] = None
    ct_prober: Optional[ContentTypeProber] = None
    vocab_store: Optional["VocabularyStore"] = None
    sampling: bool = False
    pld_capacity: int = 50
    per_pld_capacity: int = 100
    seed: int = 0
    options: Dict[str, dict] = field(default_factory=dict)

    def effective_base(self) -> str:
        return self.base_iri or self.dataset_iri

    def metric_options(self, metric_iri: str) -> dict:
        return self.options.get(metric_iri, {})


MetricFactory = Callable[[MetricDescriptor, MetricContext], MetricInstance]


def default_builtins() -> Dict[str, MetricFactory]:
    from ldqa.metrics import BUILTIN_FACTORIES

    return dict(BUILTIN_FACTORIES)


def instantiate(
    binding: MetricBinding,
    descriptor: MetricDescriptor,
    context: MetricContext,
    builtins: Optional[Dict[str, MetricFactory]] = None,
) -> MetricInstance:
    """Resolve a binding to a ready instance; fails before streaming begins."""
    if binding.builtin is not None:
        factories = builtins if builtins is not None else default_builtins()
        factory = factories.get(binding.builtin)
        if factory is None:
            raise UnknownBuiltin(binding.builtin)
        return factory(descriptor, context)

    from ldqa.lqml import compile_metric, default_registry, parse_lqml

    source = Path(binding.lqml_path).read_text("utf-8")
    definition = parse_lqml(source)
    registry = default_registry(deref_prober=context.deref_prober)
    instance = compile_metric(definition, registry)
    instance.descriptor = descriptor
    return instance
