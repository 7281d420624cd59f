"""Stream a dataset source into every metric instance exactly once.

The default drive is sequential: each parsed triple is handed to every
sink in registration order, which under the GIL outperforms per-sink
threads for CPU-bound metrics. ``parallel=True`` runs one consumer thread
per sink behind a bounded queue (backpressure on the producer) for sinks
that block on I/O; both modes deliver identical per-sink sequences.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ldqa.core.instance import MetricInstance
from ldqa.endpoint import Endpoint, fetch_endpoint_pages
from ldqa.ntriples import LineError, parse_ntriples
from ldqa.terms import Triple


class SourceUnreadable(RuntimeError):
    pass


class SinkPanicked(RuntimeError):
    def __init__(self, sink: MetricInstance, cause: BaseException):
        super().__init__(f"{type(sink).__name__} raised {cause.__class__.__name__}: {cause}")
        self.sink = sink
        self.cause = cause


@dataclass(frozen=True)
class DumpFile:
    path: Union[str, Path]
    format: str = "ntriples"

    def __post_init__(self) -> None:
        if self.format != "ntriples":
            raise ValueError(f"unsupported dump format {self.format!r}")


DatasetSource = Union[DumpFile, Endpoint]


@dataclass
class AssessmentRun:
    dataset_iri: str
    total_triples: int = 0
    started_at: Optional[datetime] = None
    finished_at: Optional[datetime] = None
    parse_errors: List[Tuple[int, str]] = field(default_factory=list)


def iter_source(source: DatasetSource) -> Iterator[Union[Triple, LineError]]:
    if isinstance(source, DumpFile):
        path = Path(source.path)
        try:
            handle = open(path, "rb")
        except OSError as exc:
            raise SourceUnreadable(f"cannot open dump {path}: {exc}") from exc
        with handle:
            yield from parse_ntriples(handle)
    else:
        yield from fetch_endpoint_pages(source)


def stream_dataset(
    source: DatasetSource,
    sinks: Sequence[MetricInstance],
    dataset_iri: str = "",
    parallel: bool = False,
    queue_capacity: int = 1024,
) -> AssessmentRun:
    """Fan every triple out to all sinks, then finalize them with the run."""
    for sink in sinks:
        if sink.state != "ready":
            raise RuntimeError(f"sink {type(sink).__name__} is not in the ready state")

    run = AssessmentRun(dataset_iri=dataset_iri, started_at=datetime.now(timezone.utc))
    if parallel and sinks:
        _drive_parallel(source, sinks, run, queue_capacity)
    else:
        _drive_sequential(source, sinks, run)
    run.finished_at = datetime.now(timezone.utc)
    for sink in sinks:
        sink.finalize(run)
    return run


def _drive_sequential(source, sinks, run) -> None:
    for event in iter_source(source):
        if type(event) is LineError:
            run.parse_errors.append((event.line, event.message))
            continue
        run.total_triples += 1
        for sink in sinks:
            try:
                sink.accept(event)
            except Exception as exc:
                raise SinkPanicked(sink, exc) from exc


_DONE = object()


def _drive_parallel(source, sinks, run, queue_capacity) -> None:
    queues = [queue.Queue(maxsize=queue_capacity) for _ in sinks]
    failures: dict[int, BaseException] = {}
    failed = threading.Event()

    def consume(index: int, sink: MetricInstance) -> None:
        q = queues[index]
        broken = False
        while True:
            item = q.get()
            if item is _DONE:
                return
            if broken:
                continue
            try:
                sink.accept(item)
            except Exception as exc:  # drain the queue so the producer never blocks
                failures[index] = exc
                failed.set()
                broken = True

    threads = [
        threading.Thread(target=consume, args=(i, sink), daemon=True)
        for i, sink in enumerate(sinks)
    ]
    for thread in threads:
        thread.start()
    try:
        for event in iter_source(source):
            if type(event) is LineError:
                run.parse_errors.append((event.line, event.message))
                continue
            run.total_triples += 1
            for q in queues:
                q.put(event)
            if failed.is_set():
                break
    finally:
        for q in queues:
            q.put(_DONE)
        for thread in threads:
            thread.join()
    if failures:
        index = min(failures)
        raise SinkPanicked(sinks[index], failures[index]) from failures[index]
