"""Fort and zero forcing constructions on Cartesian products.

Every construction re-checks its output on the explicit product graph. A
guarantee that fails to hold raises :class:`ConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .bits import VertexSet, iter_members, members
from .errors import ConsistencyError, PreconditionError, ResourceLimitError
from .forcing import closure, is_zero_forcing_set
from .forts import enumerate_minimal_forts, is_fort, is_minimal_fort
from .graph import Graph, NotBipartiteError, bipartition, build_hypercube, cartesian_product
from .search import min_zero_forcing_number
from .symmetry import orbit

FORT = "fort"
MINIMAL_FORT = "minimal-fort"


@dataclass
class ConstructionResult:
    result: VertexSet
    guarantee: str
    preconditions: list[tuple[str, bool]] = field(default_factory=list)
    graph: Optional[Graph] = None
    minimal: Optional[bool] = None

    def to_dict(self) -> dict:
        out = {
            "result": members(self.result),
            "guarantee": self.guarantee,
            "preconditions_checked": [{"name": n, "ok": ok} for n, ok in self.preconditions],
            "minimal": self.minimal,
        }
        if self.graph is not None:
            out["graph_id"] = self.graph.graph_id
            if self.graph.labels is not None:
                out["result_labels"] = [self.graph.labels[v] for v in iter_members(self.result)]
        return out


def _fail_if(checks: list[tuple[str, bool]], what: str) -> None:
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise PreconditionError(f"{what}: failed preconditions {failed}", failed)


def _safe_minimal(g: Graph, f: VertexSet) -> bool:
    return is_fort(g, f) and is_minimal_fort(g, f)


def has_adjacent_members(g: Graph, f: VertexSet) -> bool:
    return any(g.adjacency[v] & f for v in iter_members(f))


def every_member_has_neighbor(g: Graph, f: VertexSet) -> bool:
    return all(g.adjacency[v] & f for v in iter_members(f))


def every_member_has_one_neighbor(g: Graph, f: VertexSet) -> bool:
    return all((g.adjacency[v] & f).bit_count() == 1 for v in iter_members(f))


def product_set(g: Graph, a: VertexSet, h: Graph, b: VertexSet) -> VertexSet:
    """``A x B`` under the index map ``(u, u') -> u * |V(H)| + u'``."""
    out = 0
    for u in iter_members(a):
        out |= b << (u * h.n)
    return out


def _verify(product: Graph, result: VertexSet, guarantee: str) -> bool:
    if not is_fort(product, result):
        raise ConsistencyError(f"construction output {members(result)} is not a fort")
    minimal = is_minimal_fort(product, result)
    if guarantee == MINIMAL_FORT and not minimal:
        raise ConsistencyError(f"construction output {members(result)} is not a minimal fort")
    return minimal


def product_fort(
    g: Graph, f: VertexSet, h: Graph, f2: VertexSet, product: Optional[Graph] = None
) -> ConstructionResult:
    """``F x F'`` for minimal forts; minimal whenever ``F`` has no adjacent members."""
    checks = [("F minimal fort of G", _safe_minimal(g, f)), ("F' minimal fort of H", _safe_minimal(h, f2))]
    _fail_if(checks, "product_fort")
    independent = not has_adjacent_members(g, f)
    checks.append(("F has no adjacent members", independent))
    guarantee = MINIMAL_FORT if independent else FORT
    product = product or cartesian_product(g, h)
    result = product_set(g, f, h, f2)
    minimal = _verify(product, result, guarantee)
    return ConstructionResult(result, guarantee, checks, product, minimal)


def bipartite_parity_fort(
    g: Graph,
    f: VertexSet,
    h: Graph,
    f2: VertexSet,
    require_minimal: bool = False,
    swap_parts: bool = False,
    product: Optional[Graph] = None,
) -> ConstructionResult:
    """``(F ∩ V1) x (F' ∩ V1') ∪ (F ∩ V2) x (F' ∩ V2')`` on bipartite factors.

    ``V1`` is the part containing vertex 0; ``swap_parts`` exchanges the two
    parts of ``H`` (the other valid alignment).
    """
    checks = []
    parts = []
    for name, graph in (("G", g), ("H", h)):
        try:
            parts.append(bipartition(graph))
            checks.append((f"{name} bipartite", True))
        except NotBipartiteError:
            parts.append(None)
            checks.append((f"{name} bipartite", False))
    checks += [
        ("F fort of G", is_fort(g, f)),
        ("F' fort of H", is_fort(h, f2)),
        ("every member of F has a neighbor in F", every_member_has_neighbor(g, f)),
        ("every member of F' has a neighbor in F'", every_member_has_neighbor(h, f2)),
    ]
    if require_minimal:
        checks += [
            ("F minimal fort of G", _safe_minimal(g, f)),
            ("F' minimal fort of H", _safe_minimal(h, f2)),
            ("every member of F' has exactly one neighbor in F'", every_member_has_one_neighbor(h, f2)),
        ]
    _fail_if(checks, "bipartite_parity_fort")
    (g1, g2), (h1, h2) = parts
    if swap_parts:
        h1, h2 = h2, h1
    result = product_set(g, f & g1, h, f2 & h1) | product_set(g, f & g2, h, f2 & h2)
    guarantee = MINIMAL_FORT if require_minimal else FORT
    product = product or cartesian_product(g, h)
    minimal = _verify(product, result, guarantee)
    return ConstructionResult(result, guarantee, checks, product, minimal)


@lru_cache(maxsize=None)
def hypercube_zero_forcing_number(d: int) -> int:
    """Computed, not quoted: fort-cover search for d <= 4."""
    if d > 4:
        raise ResourceLimitError(f"zero forcing number of Q_{d} is beyond the exhaustive range")
    g = build_hypercube(d)
    z, _ = min_zero_forcing_number(g, enumerate_minimal_forts(g))
    return z


def lift_zfs(s: VertexSet, d: int) -> VertexSet:
    """Two copies of a minimum zero forcing set of Q_d give one of Q_{d+1}.

    The copy of vertex ``v`` is ``2v`` in the 0-layer and ``2v + 1`` in the
    1-layer. Minimality and propagation time are re-checked on Q_{d+1}.
    """
    g = build_hypercube(d)
    if s >> g.n or not is_zero_forcing_set(g, s):
        raise PreconditionError(f"{members(s)} is not a zero forcing set of Q_{d}")
    if s.bit_count() != hypercube_zero_forcing_number(d):
        raise PreconditionError(f"{members(s)} is not a minimum zero forcing set of Q_{d}")
    big = build_hypercube(d + 1)
    lifted = product_set(g, s, build_hypercube(1), 0b11)
    trace = closure(big, lifted)
    if trace.final != big.vertices or lifted.bit_count() != hypercube_zero_forcing_number(d + 1):
        raise ConsistencyError(f"lift of {members(s)} is not a minimum zero forcing set of Q_{d + 1}")
    if trace.propagation_time != closure(g, s).propagation_time:
        raise ConsistencyError(f"lift of {members(s)} changed the propagation time")
    return lifted


@dataclass
class SweepResult:
    direct: set[VertexSet]
    closed: set[VertexSet]


def hypercube_construction_sweep(d: int) -> SweepResult:
    """All minimal forts of Q_d reachable from Q_{d-1} x Q_1 constructions.

    ``direct`` holds the neighbourhoods of Q_d plus every minimal output of
    ``product_fort`` and ``bipartite_parity_fort`` applied to the minimal
    forts of Q_{d-1} with ``F' = V(Q_1)``; ``closed`` adds all images under
    the hypercube automorphisms.
    """
    small = build_hypercube(d - 1)
    edge = build_hypercube(1)
    big = build_hypercube(d)
    direct = {big.adjacency[v] for v in range(big.n)}
    for f in enumerate_minimal_forts(small).minimal_forts:
        r = product_fort(small, f, edge, 0b11, product=big)
        if r.minimal:
            direct.add(r.result)
        if every_member_has_neighbor(small, f):
            for swap in (False, True):
                r = bipartite_parity_fort(small, f, edge, 0b11, True, swap, product=big)
                direct.add(r.result)
    closed = set()
    for f in direct:
        closed |= orbit(d, f)
    return SweepResult(direct, closed)
