"""Test-side oracles and fixture builders, kept independent of the code
paths they check."""

from __future__ import annotations

import random
from typing import Dict, List, Set, Tuple

from ldqa.terms import BlankNode, Iri, Literal, Triple

EX = "http://fixture.example/"
P = Iri(EX + "vocab/p")


def iri(text: str) -> Iri:
    return Iri(text if text.startswith(("http", "urn:")) else EX + text)


def t(subject, predicate, obj) -> Triple:
    return Triple(subject, predicate, obj)


def drive(metric, triples, run=None):
    """Feed triples through a metric's lifecycle and return (value, problems)."""
    for triple in triples:
        metric.accept(triple)
    metric.finalize(run)
    return metric.collect()


# ---------------------------------------------------------------------------
# Dereferenceability fixture: 20 triples, 6 subjects (4 dereferenceable),
# 4 IRI objects (2 dereferenceable); value = (4 + 2) / 20 = 0.3 exactly.


def deref_fixture(base: str) -> Tuple[List[Triple], Set[str], Set[str]]:
    """Returns (triples, dereferenceable_iris, all_probe_iris); `base` hosts
    the non-hash IRIs so a mock server can answer the probes."""
    s = {
        1: Iri(f"{base}/res/s1"),
        2: Iri(f"{base}/res/s2"),
        3: Iri(f"{base}/vocab#s3"),
        4: Iri(f"{base}/vocab#s4"),
        5: Iri(f"{base}/res/s5"),
        6: Iri(f"{base}/res/s6"),
    }
    o = {
        1: Iri(f"{base}/res/o1"),
        2: Iri(f"{base}/vocab#o2"),
        3: Iri(f"{base}/res/o3"),
        4: Iri(f"{base}/res/o4"),
    }
    lit = lambda x: Literal(x)  # noqa: E731
    triples = [
        t(s[1], P, o[1]),
        t(s[1], P, o[2]),
        t(s[2], P, o[3]),
        t(s[2], P, o[4]),
        t(s[3], P, lit("v1")),
        t(s[3], P, o[1]),
        t(s[4], P, o[2]),
        t(s[4], P, lit("v2")),
        t(s[5], P, o[3]),
        t(s[5], P, lit("v3")),
        t(s[6], P, o[4]),
        t(s[6], P, lit("v4")),
        t(s[1], P, lit("a")),
        t(s[2], P, lit("b")),
        t(s[3], P, lit("c")),
        t(s[4], P, lit("d")),
        t(s[5], P, lit("e")),
        t(s[6], P, lit("f")),
        t(s[1], P, o[3]),
        t(s[2], P, o[1]),
    ]
    dereferenceable = {s[1].text, s[2].text, s[3].text, s[4].text, o[1].text, o[2].text}
    probe_targets = {term.text for term in (*s.values(), *o.values())}
    assert len(triples) == 20
    return triples, dereferenceable, probe_targets


# ---------------------------------------------------------------------------
# Exact clustering-coefficient oracle: plain adjacency sets, no CSR, no walk.


def exact_mean_local_coefficient(adjacency: Dict[int, Set[int]]) -> float:
    if not adjacency:
        raise ValueError("empty graph")
    total = 0.0
    for node, neighbours in adjacency.items():
        degree = len(neighbours)
        if degree < 2:
            continue
        ordered_pairs = sum(
            1 for u in neighbours for w in adjacency[u] if w in neighbours
        )
        total += ordered_pairs / (degree * (degree - 1))
    return total / len(adjacency)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Dict[int, Set[int]]:
    """G(n, p) plus a random spanning path, so one walk can reach everything."""
    adjacency: Dict[int, Set[int]] = {i: set() for i in range(n)}

    def connect(a: int, b: int) -> None:
        if a != b:
            adjacency[a].add(b)
            adjacency[b].add(a)

    order = list(range(n))
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        connect(a, b)
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                connect(a, b)
    return adjacency


# ---------------------------------------------------------------------------
# Brute-force ranking oracle over a plain tree description.


def brute_force_totals(
    level: str,
    weights: Dict[str, float],
    tree: Dict[str, Dict[str, List[str]]],
    values: Dict[str, Dict[str, float]],
) -> Dict[str, float]:
    """tree: category -> dimension -> [metric]; values: dataset -> metric -> v."""

    def metrics_of(dimension: str) -> List[str]:
        for dims in tree.values():
            if dimension in dims:
                return dims[dimension]
        raise KeyError(dimension)

    totals: Dict[str, float] = {}
    for dataset, metric_values in values.items():
        total = 0.0
        if level == "metric":
            for metric, theta in weights.items():
                total += theta * metric_values[metric]
        elif level == "dimension":
            for dimension, theta in weights.items():
                members = metrics_of(dimension)
                total += theta * sum(metric_values[m] for m in members) / len(members)
        else:
            for category, theta in weights.items():
                dims = tree[category]
                acc = 0.0
                for dimension, members in dims.items():
                    acc += theta * sum(metric_values[m] for m in members) / len(members)
                total += acc / len(dims)
        totals[dataset] = total
    return totals


def brute_force_order(totals: Dict[str, float]) -> List[str]:
    return sorted(totals, key=lambda ds: (-totals[ds], ds))


class StubStore:
    """Duck-typed stand-in for MetadataStore in ranking-math tests."""

    def __init__(self, values: Dict[str, Dict[str, float]]):
        self._values = values

    def dataset_iris(self) -> List[str]:
        return sorted(self._values)

    def latest_values(self, dataset_iri: str) -> Dict[str, float]:
        return dict(self._values[dataset_iri])


def random_taxonomy_instance(rng: random.Random):
    """(Taxonomy, tree, values, weights-per-level) with 2..4 categories,
    1..4 dimensions each, 1..6 metrics each, 2..5 datasets."""
    from ldqa.core.descriptors import MetricDescriptor, Taxonomy

    taxonomy = Taxonomy()
    tree: Dict[str, Dict[str, List[str]]] = {}
    metric_counter = 0
    for c in range(rng.randint(2, 4)):
        category = f"urn:cat:{c}"
        tree[category] = {}
        dims = []
        for d in range(rng.randint(1, 4)):
            dimension = f"urn:dim:{c}:{d}"
            metrics = []
            for _ in range(rng.randint(1, 6)):
                metric = f"urn:metric:{metric_counter}"
                metric_counter += 1
                taxonomy.descriptors[metric] = MetricDescriptor(
                    metric_iri=metric,
                    label=metric,
                    dimension_iri=dimension,
                    category_iri=category,
                    value_kind="real",
                    normalized=True,
                )
                metrics.append(metric)
            taxonomy.dimensions[dimension] = tuple(metrics)
            tree[category][dimension] = metrics
            dims.append(dimension)
        taxonomy.categories[category] = tuple(dims)
    taxonomy.validate()

    values = {
        f"urn:ds:{i}": {m: rng.random() for m in taxonomy.descriptors}
        for i in range(rng.randint(2, 5))
    }

    def pick_weights(nodes: List[str]) -> Dict[str, float]:
        count = rng.randint(1, len(nodes))
        chosen = rng.sample(nodes, count)
        return {node: rng.random() * 2 for node in chosen}

    weights = {
        "metric": pick_weights(list(taxonomy.descriptors)),
        "dimension": pick_weights(list(taxonomy.dimensions)),
        "category": pick_weights(list(taxonomy.categories)),
    }
    return taxonomy, tree, values, weights


# ---------------------------------------------------------------------------
# Synthetic N-Triples generator for the scaling runs.


def write_synthetic_ntriples(path, n: int, seed: int = 0) -> None:
    rng = random.Random(seed)
    subject_pool = max(1, n // 10)
    predicates = [f"<http://bench.example/vocab/p{i}> " for i in range(20)]
    with open(path, "w", encoding="utf-8") as handle:
        for _ in range(n):
            s = f"<http://bench.example/resource/r{rng.randrange(subject_pool):07d}> "
            p = predicates[rng.randrange(20)]
            if rng.random() < 0.5:
                o = f'"value {rng.randrange(1_000_000)}"'
            else:
                o = f"<http://bench.example/resource/r{rng.randrange(subject_pool):07d}>"
            handle.write(s + p + o + " .\n")


def random_triples(rng: random.Random, count: int) -> List[Triple]:
    """Arbitrary well-formed triples over small term pools."""
    triples = []
    for _ in range(count):
        roll = rng.random()
        if roll < 0.15:
            subject = BlankNode(f"b{rng.randrange(8)}")
        else:
            subject = Iri(EX + f"s{rng.randrange(12)}")
        predicate = Iri(EX + f"p{rng.randrange(6)}")
        roll = rng.random()
        if roll < 0.3:
            obj = Literal(f"lit{rng.randrange(10)}", language=rng.choice([None, "en", "de"]))
        elif roll < 0.45:
            obj = BlankNode(f"b{rng.randrange(8)}")
        else:
            obj = Iri(EX + f"o{rng.randrange(12)}")
        triples.append(Triple(subject, predicate, obj))
    return triples
