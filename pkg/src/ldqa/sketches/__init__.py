"""Probabilistic sketches backing the sampled quality metrics."""

from ldqa.sketches.bloom import BloomFilter
from ldqa.sketches.graphwalk import StreamedGraph, clustering_coefficient_estimate
from ldqa.sketches.reservoir import Reservoir, TwoLevelReservoir

__all__ = [
    "BloomFilter",
    "Reservoir",
    "TwoLevelReservoir",
    "StreamedGraph",
    "clustering_coefficient_estimate",
]
