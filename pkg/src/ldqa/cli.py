"""Command-line entry points: assess, rank, serve, lqml check.

Exit codes: 0 success, 1 pipeline failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from pathlib import Path
from typing import List, Optional

from ldqa.core.descriptors import TaxonomyError, load_taxonomy
from ldqa.core.registry import MetricContext, UnknownBuiltin
from ldqa.endpoint import Endpoint, TransportError, TruncationSuspected
from ldqa.http_probe import HttpClient, cached_probers
from ldqa.metadata.store import MetadataStore
from ldqa.pipeline import DumpFile, SinkPanicked, SourceUnreadable

EXIT_OK = 0
EXIT_PIPELINE = 1
EXIT_CONFIG = 2

DEFAULT_TAXONOMY = Path(__file__).parent / "data" / "default_taxonomy.json"


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldqa", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    assess = commands.add_parser("assess", help="assess a dump or endpoint")
    source = assess.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="N-Triples dump file")
    source.add_argument("--endpoint", help="SPARQL endpoint URL")
    assess.add_argument("--dataset-iri", required=True)
    assess.add_argument("--taxonomy", default=str(DEFAULT_TAXONOMY))
    assess.add_argument("--metrics", help="comma-separated metric IRIs (default: all bound)")
    assess.add_argument("--out", required=True, help="metadata store directory")
    assess.add_argument("--sample", action="store_true", help="enable sketch sampling")
    assess.add_argument("--seed", type=int, default=0)
    assess.add_argument("--base-iri", help="dataset base IRI (defaults to --dataset-iri)")
    assess.add_argument("--vocab-dir", help="directory of vocabulary .nt files")
    assess.add_argument("--graph-iri", help="assessed graph IRI for the reports")
    assess.add_argument("--page-size", type=int, default=5000)
    assess.add_argument("--parallel", action="store_true", help="one consumer thread per metric")
    assess.add_argument("--http-timeout", type=float, default=10.0)

    rank = commands.add_parser("rank", help="rank stored datasets by weights")
    rank.add_argument("--store", required=True)
    rank.add_argument("--weights", required=True, help="JSON weight file")
    rank.add_argument("--taxonomy", help="defaults to <store>/taxonomy.json")
    rank.add_argument("--out", default="ranking.json")

    serve = commands.add_parser("serve", help="serve the HTTP API over a store")
    serve.add_argument("--store", required=True)
    serve.add_argument("--taxonomy", help="defaults to <store>/taxonomy.json")
    serve.add_argument("--port", type=int, required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", help="directory of static UI assets to serve at /")

    lqml = commands.add_parser("lqml", help="metric language tools")
    lqml_commands = lqml.add_subparsers(dest="lqml_command", required=True)
    check = lqml_commands.add_parser("check", help="validate a metric definition")
    check.add_argument("file")

    return parser


def cmd_assess(args: argparse.Namespace) -> int:
    try:
        taxonomy = load_taxonomy(Path(args.taxonomy))
    except (OSError, ValueError, TaxonomyError) as exc:
        print(f"error: cannot load taxonomy: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.input is not None:
        path = Path(args.input)
        if not path.is_file():
            print(f"error: input file {path} does not exist", file=sys.stderr)
            return EXIT_CONFIG
        source = DumpFile(path)
    else:
        try:
            source = Endpoint(args.endpoint, page_size=args.page_size)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG

    selected: Optional[List[str]] = None
    if args.metrics:
        selected = [iri.strip() for iri in args.metrics.split(",") if iri.strip()]

    vocab_store = None
    if args.vocab_dir:
        from ldqa.metrics.vocabulary import VocabularyStore

        vocab_dir = Path(args.vocab_dir)
        if not vocab_dir.is_dir():
            print(f"error: vocabulary directory {vocab_dir} does not exist", file=sys.stderr)
            return EXIT_CONFIG
        vocab_store = VocabularyStore.from_dir(vocab_dir)

    deref_prober, ct_prober = cached_probers(HttpClient(timeout=args.http_timeout))
    context = MetricContext(
        dataset_iri=args.dataset_iri,
        base_iri=args.base_iri,
        deref_prober=deref_prober,
        ct_prober=ct_prober,
        vocab_store=vocab_store,
        sampling=args.sample,
        seed=args.seed,
        options=dict(getattr(taxonomy, "options", {})),
    )

    from ldqa.assess import assess as run_assessment

    try:
        result = run_assessment(
            source,
            taxonomy,
            context,
            selected=selected,
            parallel=args.parallel,
            graph_iri=args.graph_iri,
        )
    except (KeyError, UnknownBuiltin, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SourceUnreadable, SinkPanicked, TransportError, TruncationSuspected) as exc:
        print(f"pipeline failure: {exc}", file=sys.stderr)
        return EXIT_PIPELINE

    store = MetadataStore(args.out)
    store.append_run(args.dataset_iri, result.observations(), result.report())
    snapshot = Path(args.out) / "taxonomy.json"
    if Path(args.taxonomy).resolve() != snapshot.resolve():
        shutil.copyfile(args.taxonomy, snapshot)

    total = result.run.total_triples
    print(f"dataset:  {args.dataset_iri}")
    print(f"triples:  {total}  (parse errors: {len(result.run.parse_errors)})")
    print(f"{'metric':<58} {'value':>10} {'problems':>9}")
    for outcome in result.outcomes:
        note = " (degenerate input)" if outcome.degenerate else ""
        value = f"{outcome.value:.6g}" if not isinstance(outcome.value, bool) else str(outcome.value)
        print(f"{outcome.label:<58} {value:>10} {len(outcome.problems):>9}{note}")
    return EXIT_OK


def _load_rank_inputs(args: argparse.Namespace):
    from ldqa.ranking import WeightConfig

    store_dir = Path(args.store)
    if not store_dir.is_dir():
        raise FileNotFoundError(f"store directory {store_dir} does not exist")
    taxonomy_path = Path(args.taxonomy) if args.taxonomy else store_dir / "taxonomy.json"
    taxonomy = load_taxonomy(taxonomy_path)
    raw = json.loads(Path(args.weights).read_text("utf-8"))
    config = WeightConfig(level=raw.get("level", "metric"), weights=dict(raw.get("weights", {})))
    config.validate_against(taxonomy)
    return MetadataStore(store_dir), taxonomy, config


def ranked_result_to_dict(result) -> dict:
    return {
        "level": result.level,
        "results": [
            {
                "dataset": entry.dataset_iri,
                "slug": _slug(entry.dataset_iri),
                "total": entry.total,
                "breakdown": [
                    {"node": c.node_iri, "amount": c.amount} for c in entry.breakdown
                ],
            }
            for entry in result.entries
        ],
    }


def _slug(dataset_iri: str) -> str:
    from ldqa.metadata.store import dataset_slug

    return dataset_slug(dataset_iri)


def cmd_rank(args: argparse.Namespace) -> int:
    from ldqa.ranking import (
        EmptyCategory,
        EmptyDimension,
        InvalidWeightTarget,
        MissingObservation,
        NegativeWeight,
        rank_datasets,
    )

    try:
        store, taxonomy, config = _load_rank_inputs(args)
    except (OSError, ValueError, KeyError, TaxonomyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = rank_datasets(store, config, taxonomy)
    except (InvalidWeightTarget, NegativeWeight) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissingObservation, EmptyDimension, EmptyCategory) as exc:
        print(f"ranking failure: {exc}", file=sys.stderr)
        return EXIT_PIPELINE

    print(f"{'rank':>4} {'dataset':<56} {'total':>12}  top contributor")
    for position, entry in enumerate(result.entries, 1):
        top = max(entry.breakdown, key=lambda c: c.amount, default=None)
        top_label = top.node_iri if top is not None else "-"
        print(f"{position:>4} {entry.dataset_iri:<56} {entry.total:>12.6f}  {top_label}")

    payload = ranked_result_to_dict(result)
    Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from ldqa.api import make_server

    store_dir = Path(args.store)
    if not store_dir.is_dir():
        print(f"error: store directory {store_dir} does not exist", file=sys.stderr)
        return EXIT_CONFIG
    taxonomy_path = Path(args.taxonomy) if args.taxonomy else store_dir / "taxonomy.json"
    try:
        taxonomy = load_taxonomy(taxonomy_path)
    except (OSError, ValueError, TaxonomyError) as exc:
        print(f"error: cannot load taxonomy: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    server = make_server(
        MetadataStore(store_dir), taxonomy, host=args.host, port=args.port, ui_dir=args.ui
    )
    print(f"serving on http://{args.host}:{server.server_address[1]}/")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def cmd_lqml_check(args: argparse.Namespace) -> int:
    from ldqa.lqml import LqmlCompileError, ParseError, compile_metric, default_registry, parse_lqml
    from ldqa.lqml.ast import to_dict

    path = Path(args.file)
    if not path.is_file():
        print(f"error: {path} does not exist", file=sys.stderr)
        return EXIT_CONFIG
    try:
        definition = parse_lqml(path.read_text("utf-8"))
        compile_metric(definition, default_registry())  # names and arities
    except (ParseError, LqmlCompileError) as exc:
        print(f"invalid metric definition: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    print(json.dumps(to_dict(definition), indent=2))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "assess":
        return cmd_assess(args)
    if args.command == "rank":
        return cmd_rank(args)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "lqml":
        return cmd_lqml_check(args)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
