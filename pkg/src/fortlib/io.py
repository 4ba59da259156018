"""Graph and vertex-set serialization.

Two graph formats are understood:

* JSON: ``{"n": int, "edges": [[u, v], ...], "labels": [...]?, "hypercube_dim": int?}``
* edge list text: first line ``n m``, then ``m`` lines ``u v`` (0-based).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .bits import VertexSet, members
from .errors import GraphError
from .graph import Graph, build_from_edge_list, with_hypercube_meta


def graph_to_dict(g: Graph) -> dict[str, Any]:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    if g.dim is not None:
        out["hypercube_dim"] = g.dim
    return out


def graph_from_dict(data: dict[str, Any]) -> Graph:
    try:
        n = data["n"]
        edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'n' and 'edges': {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError(f"'n' must be an integer, got {n!r}")
    pairs = []
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise GraphError(f"edge entries must be [u, v] pairs, got {e!r}")
        pairs.append((int(e[0]), int(e[1])))
    g = build_from_edge_list(n, pairs, data.get("labels"))
    dim = data.get("hypercube_dim")
    if dim is not None:
        g = with_hypercube_meta(g, int(dim))
    return g


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        n, m = (int(x) for x in lines[0].split())
        pairs = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    if any(len(p) != 2 for p in pairs):
        raise GraphError("each edge line must hold exactly two vertices")
    return build_from_edge_list(n, pairs)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def load_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON ({exc})") from None
        return graph_from_dict(data)
    return parse_edge_list(text)


def set_to_list(mask: VertexSet) -> list[int]:
    return members(mask)


def parse_vertex_set(g: Graph, spec: str | Iterable) -> VertexSet:
    """Read a vertex set given as a JSON list, or comma/space separated tokens.

    Tokens may be indices or vertex labels (``"0110"`` on Q_4).
    """
    if isinstance(spec, str):
        spec = spec.strip()
        if spec.startswith("["):
            tokens = json.loads(spec)
        else:
            tokens = [t for t in spec.replace(",", " ").split() if t]
    else:
        tokens = list(spec)
    return g.set_from(tokens)


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


_SCALAR_ARRAY = re.compile(r"\[\s*((?:[-\w\".]+\s*,\s*)*[-\w\".]+)\s*\]")


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, scalar arrays kept on one line."""
    text = json.dumps(obj, sort_keys=True, indent=2)
    text = _SCALAR_ARRAY.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"
