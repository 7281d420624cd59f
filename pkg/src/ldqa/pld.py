"""Pay-level-domain extraction against the bundled public-suffix snapshot.

The PLD of a host is the registrable domain: one label below the longest
matching public suffix. Hosts under an unknown TLD fall back to treating
the last label as the suffix; IP addresses and single-label hosts are
their own PLD.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from urllib.parse import urlsplit

_IPV4 = re.compile(r"^\d{1,3}(?:\.\d{1,3}){3}$")


def _load_suffixes() -> frozenset[str]:
    text = (
        resources.files("ldqa.data").joinpath("public_suffix_snapshot.dat").read_text("utf-8")
    )
    return frozenset(
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


_SUFFIXES = _load_suffixes()


@lru_cache(maxsize=65536)
def pay_level_domain(iri_or_host: str) -> str:
    """PLD of an IRI or bare host; empty string when there is no host."""
    host = iri_or_host
    if "/" in host or ":" in host:
        parsed = urlsplit(iri_or_host)
        host = parsed.hostname or ""
        if not host and "://" not in iri_or_host:
            host = iri_or_host
    host = host.strip().strip(".").lower()
    if not host or _IPV4.match(host) or host.startswith("["):
        return host
    labels = host.split(".")
    if len(labels) == 1:
        return host
    for cut in range(len(labels) - 1):
        suffix = ".".join(labels[cut + 1:])
        if suffix in _SUFFIXES:
            return ".".join(labels[cut:])
    # unknown TLD: registrable domain is the last two labels
    return ".".join(labels[-2:])
