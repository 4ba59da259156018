"""On-disk reuse of minimal-fort censuses, keyed by the graph digest."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Optional

from .forts import FortCensus, enumerate_minimal_forts, is_fort, is_minimal_fort
from .graph import Graph
from .io import dumps

log = logging.getLogger(__name__)

ENV_VAR = "FORTLIB_CACHE"


def resolve_cache_dir(cli_value: Optional[str]) -> Optional[Path]:
    """The environment variable wins over the command-line flag."""
    value = os.environ.get(ENV_VAR) or cli_value
    return Path(value) if value else None


def cache_path(cache_dir: Path, g: Graph, operation: str, params: str = "") -> Path:
    suffix = f"-{params}" if params else ""
    return cache_dir / f"{g.graph_id}-{operation}{suffix}.json"


def _load_census(path: Path, g: Graph) -> Optional[FortCensus]:
    try:
        census = FortCensus.from_dict(json.loads(path.read_text()))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable cache file %s: %s", path, exc)
        return None
    if census.graph_id != g.graph_id or not census.complete:
        log.warning("ignoring cache file %s: wrong graph or incomplete", path)
        return None
    for f in census.minimal_forts:
        if f >> g.n or not is_fort(g, f) or not is_minimal_fort(g, f):
            log.warning("ignoring cache file %s: entry is not a minimal fort", path)
            return None
    return census


def get_census(g: Graph, cache_dir: Optional[Path] = None, jobs: int = 1) -> FortCensus:
    """Return the minimal-fort census, reading and refreshing the cache if given.

    Cached entries are re-validated as minimal forts before use; a corrupt
    file is reported and replaced.
    """
    if cache_dir is None:
        return enumerate_minimal_forts(g, jobs)
    path = cache_path(cache_dir, g, "minimal-forts")
    if path.exists():
        census = _load_census(path, g)
        if census is not None:
            return census
    census = enumerate_minimal_forts(g, jobs)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(census.to_dict()))
    return census
