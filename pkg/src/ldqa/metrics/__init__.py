"""Builtin metric implementations and their registry names.

Every factory takes (descriptor, context) and returns a ready instance;
per-metric options from the taxonomy config override context defaults.
"""

from __future__ import annotations

from typing import Dict

from ldqa.core.instance import MetricInstance
from ldqa.core.registry import MetricContext, MetricFactory
from ldqa.core.descriptors import MetricDescriptor
from ldqa.metrics.conciseness import ExtensionalConciseness
from ldqa.metrics.declarations import (
    BasicProvenance,
    DifferentSerialisations,
    ExtendedProvenance,
    HumanReadableLicense,
    MachineReadableLicense,
)
from ldqa.metrics.interlinking import InterlinkClustering, LinksToExternalProviders
from ldqa.metrics.network import Dereferenceability, MisreportedContentTypes
from ldqa.metrics.representation import (
    HashVsSlashUris,
    LowBlankNodeUsage,
    MultipleLanguageUsage,
    NoRdfCollections,
    ShortUris,
)
from ldqa.metrics.vocabulary import (
    MemberOfDisjointClasses,
    UndefinedClassesAndProperties,
    VocabularyStore,
)


def _opt(context: MetricContext, descriptor: MetricDescriptor, key: str, default):
    return context.metric_options(descriptor.metric_iri).get(key, default)


def _dereferenceability(descriptor, context):
    return Dereferenceability(
        descriptor,
        deref_prober=context.deref_prober,
        sampling=bool(_opt(context, descriptor, "sampling", context.sampling)),
        pld_capacity=int(_opt(context, descriptor, "pld_capacity", context.pld_capacity)),
        per_pld_capacity=int(
            _opt(context, descriptor, "per_pld_capacity", context.per_pld_capacity)
        ),
        seed=context.seed,
    )


def _misreported_content_types(descriptor, context):
    return MisreportedContentTypes(
        descriptor,
        ct_prober=context.ct_prober,
        sampling=bool(_opt(context, descriptor, "sampling", context.sampling)),
        pld_capacity=int(_opt(context, descriptor, "pld_capacity", context.pld_capacity)),
        per_pld_capacity=int(
            _opt(context, descriptor, "per_pld_capacity", context.per_pld_capacity)
        ),
        seed=context.seed,
    )


def _extensional_conciseness(descriptor, context):
    return ExtensionalConciseness(
        descriptor,
        bloom_bits=int(_opt(context, descriptor, "bloom_bits", 1 << 20)),
        bloom_hashes=int(_opt(context, descriptor, "bloom_hashes", 7)),
    )


def _undefined_classes_properties(descriptor, context):
    return UndefinedClassesAndProperties(descriptor, store=context.vocab_store)


def _member_disjoint_classes(descriptor, context):
    return MemberOfDisjointClasses(
        descriptor,
        store=context.vocab_store,
        sampling=bool(_opt(context, descriptor, "sampling", context.sampling)),
        capacity=int(_opt(context, descriptor, "capacity", 1000)),
        seed=context.seed,
    )


def _links_external_providers(descriptor, context):
    return LinksToExternalProviders(
        descriptor,
        base_iri=str(_opt(context, descriptor, "base_iri", context.effective_base())),
        sampling=bool(_opt(context, descriptor, "sampling", context.sampling)),
        capacity=int(_opt(context, descriptor, "capacity", 1000)),
        seed=context.seed,
    )


def _hash_vs_slash(descriptor, context):
    return HashVsSlashUris(
        descriptor, base_iri=str(_opt(context, descriptor, "base_iri", context.effective_base()))
    )


def _human_readable_license(descriptor, context):
    return HumanReadableLicense(descriptor, dataset_iri=context.dataset_iri)


def _interlink_clustering(descriptor, context):
    return InterlinkClustering(
        descriptor,
        walk_budget_per_node=int(_opt(context, descriptor, "walk_budget_per_node", 10)),
        seed=context.seed,
    )


def _simple(cls):
    def factory(descriptor, context):
        return cls(descriptor)

    return factory


BUILTIN_FACTORIES: Dict[str, MetricFactory] = {
    "dereferenceability": _dereferenceability,
    "misreported-content-types": _misreported_content_types,
    "extensional-conciseness": _extensional_conciseness,
    "undefined-classes-properties": _undefined_classes_properties,
    "machine-readable-license": _simple(MachineReadableLicense),
    "human-readable-license": _human_readable_license,
    "basic-provenance": _simple(BasicProvenance),
    "extended-provenance": _simple(ExtendedProvenance),
    "short-uris": _simple(ShortUris),
    "no-rdf-collections": _simple(NoRdfCollections),
    "hash-vs-slash-uris": _hash_vs_slash,
    "low-blank-node-usage": _simple(LowBlankNodeUsage),
    "multiple-language-usage": _simple(MultipleLanguageUsage),
    "different-serialisations": _simple(DifferentSerialisations),
    "links-external-providers": _links_external_providers,
    "member-disjoint-classes": _member_disjoint_classes,
    # outside the default 16-metric taxonomy; bindable explicitly
    "interlink-clustering": _interlink_clustering,
}

__all__ = [
    "BUILTIN_FACTORIES",
    "VocabularyStore",
    "Dereferenceability",
    "MisreportedContentTypes",
    "ExtensionalConciseness",
    "UndefinedClassesAndProperties",
    "MemberOfDisjointClasses",
    "MachineReadableLicense",
    "HumanReadableLicense",
    "BasicProvenance",
    "ExtendedProvenance",
    "ShortUris",
    "NoRdfCollections",
    "HashVsSlashUris",
    "LowBlankNodeUsage",
    "MultipleLanguageUsage",
    "DifferentSerialisations",
    "LinksToExternalProviders",
    "InterlinkClustering",
]
