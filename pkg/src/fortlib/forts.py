"""Fort tests, minimality, and exhaustive fort enumeration."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bits import VertexSet, iter_members, members
from .errors import ConsistencyError, PreconditionError, ResourceLimitError
from .forcing import is_zero_forcing_set
from .graph import Graph

CENSUS_MAX_VERTICES = 16
DEFAULT_BUDGET = 10**8
DIRECT_FAILED_ZF_MAX_VERTICES = 13


@dataclass(frozen=True)
class ViolationReport:
    """Outside vertices with exactly one neighbour in the candidate set."""

    violations: tuple[tuple[int, int], ...] = ()
    empty_set: bool = False

    def __bool__(self) -> bool:
        return bool(self.violations) or self.empty_set


def fort_violations(g: Graph, f: VertexSet) -> ViolationReport:
    if not f:
        return ViolationReport((), empty_set=True)
    out = []
    adj = g.adjacency
    for u in range(g.n):
        if f >> u & 1:
            continue
        inside = adj[u] & f
        if inside and not inside & (inside - 1):
            out.append((u, inside.bit_length() - 1))
    return ViolationReport(tuple(out))


def is_fort(g: Graph, f: VertexSet) -> bool:
    if not f:
        return False
    adj = g.adjacency
    # only vertices adjacent to f can be violated
    reach = 0
    for v in iter_members(f):
        reach |= adj[v]
    for u in iter_members(reach & ~f):
        inside = adj[u] & f
        if not inside & (inside - 1):
            return False
    return True


def is_minimal_fort(g: Graph, f: VertexSet) -> bool:
    """Minimality through zero forcing: ``F`` is minimal iff for every
    ``v`` in ``F`` the set ``(V \\ F) | {v}`` forces the whole graph, i.e.
    ``F - v`` contains no fort.
    """
    if not is_fort(g, f):
        raise PreconditionError(f"{members(f)} is not a fort")
    outside = g.vertices & ~f
    return all(is_zero_forcing_set(g, outside | (1 << v)) for v in iter_members(f))


def is_minimal_fort_bruteforce(g: Graph, f: VertexSet) -> bool:
    """Reference check: no proper non-empty subset of ``f`` is a fort."""
    if not is_fort(g, f):
        raise PreconditionError(f"{members(f)} is not a fort")
    sub = (f - 1) & f
    while sub:
        if is_fort(g, sub):
            return False
        sub = (sub - 1) & f
    return True


@dataclass
class FortCensus:
    graph_id: str
    minimal_forts: list[VertexSet]
    complete: bool
    by_size: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.minimal_forts = sorted(set(self.minimal_forts))
        if not self.by_size:
            hist: dict[int, int] = {}
            for f in self.minimal_forts:
                hist[f.bit_count()] = hist.get(f.bit_count(), 0) + 1
            self.by_size = dict(sorted(hist.items()))

    @property
    def count(self) -> int:
        return len(self.minimal_forts)

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "complete": self.complete,
            "count": self.count,
            "by_size": {str(k): v for k, v in self.by_size.items()},
            "minimal_forts": [members(f) for f in self.minimal_forts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FortCensus":
        forts = [sum(1 << v for v in f) for f in data["minimal_forts"]]
        census = cls(data["graph_id"], forts, bool(data["complete"]))
        if census.count != data.get("count", census.count):
            raise ValueError("census count field disagrees with its fort list")
        return census


def _census_range(g: Graph, lo: int, hi: int) -> list[VertexSet]:
    found = []
    for mask in range(lo, hi):
        if is_fort(g, mask) and is_minimal_fort(g, mask):
            found.append(mask)
    return found


def enumerate_minimal_forts(g: Graph, jobs: int = 1) -> FortCensus:
    """Scan every non-empty subset of V; feasible up to 16 vertices."""
    if g.n > CENSUS_MAX_VERTICES:
        raise ResourceLimitError(
            f"full minimal-fort census needs 2^{g.n} subsets; limit is "
            f"{CENSUS_MAX_VERTICES} vertices. Use enumerate_forts_of_size "
            f"(CLI: forts --size k) instead."
        )
    top = 1 << g.n
    if jobs <= 1 or top < 1 << 12:
        found = _census_range(g, 1, top)
    else:
        bounds = [1 + (top - 1) * i // jobs for i in range(jobs + 1)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(_census_range, [g] * jobs, bounds[:-1], bounds[1:])
            found = [f for part in parts for f in part]
    return FortCensus(g.graph_id, found, complete=True)


def _check_budget(n: int, k: int, budget: int) -> int:
    count = math.comb(n, k)
    if count > budget:
        raise ResourceLimitError(
            f"C({n}, {k}) = {count} candidate sets exceeds the budget of {budget}"
        )
    return count


def forts_of_size_python(g: Graph, k: int) -> list[VertexSet]:
    """Plain k-subset iteration; any graph size."""
    out = []
    for combo in combinations(range(g.n), k):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if is_fort(g, mask):
            out.append(mask)
    return sorted(out)


def _extend(masks: np.ndarray, last: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    new_masks, new_last = [], []
    one = np.uint64(1)
    for t in range(n):
        sel = last < t
        if sel.any():
            new_masks.append(masks[sel] | (one << np.uint64(t)))
            new_last.append(np.full(int(sel.sum()), t, dtype=np.int64))
    if not new_masks:
        return np.empty(0, np.uint64), np.empty(0, np.int64)
    return np.concatenate(new_masks), np.concatenate(new_last)


def _fort_filter(g: Graph, masks: np.ndarray) -> np.ndarray:
    bad = np.zeros(masks.shape, dtype=bool)
    one = np.uint64(1)
    for v in range(g.n):
        row = np.uint64(g.adjacency[v])
        cnt = np.bitwise_count(masks & row)
        outside = ((masks >> np.uint64(v)) & one) == 0
        bad |= (cnt == 1) & outside
    return masks[~bad]


def forts_of_size_numpy(g: Graph, k: int, chunk: int = 1 << 20) -> list[VertexSet]:
    """Vectorised k-subset scan over uint64 masks; needs n <= 64."""
    if g.n > 64:
        raise ValueError("vectorised scan needs at most 64 vertices")
    if k == 0 or k > g.n:
        return []
    n = g.n
    masks = np.zeros(1, np.uint64)
    last = np.full(1, -1, np.int64)
    # grow prefixes to k-1 elements, then finish in bounded chunks
    for _ in range(k - 1):
        masks, last = _extend(masks, last, n)
    found = []
    step = max(1, chunk // max(1, n))
    for lo in range(0, len(masks), step):
        full_masks, _ = _extend(masks[lo : lo + step], last[lo : lo + step], n)
        if len(full_masks):
            found.append(_fort_filter(g, full_masks))
    if not found:
        return []
    return sorted(int(x) for x in np.concatenate(found))


def enumerate_forts_of_size(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> list[VertexSet]:
    """All forts with exactly ``k`` vertices, sorted by bitmask."""
    if k < 1 or k > g.n:
        return []
    _check_budget(g.n, k, budget)
    if g.n <= 64:
        return forts_of_size_numpy(g, k)
    return forts_of_size_python(g, k)


def minimum_fort(g: Graph, budget: int = DEFAULT_BUDGET) -> tuple[int, VertexSet]:
    """Smallest fort size and the smallest-bitmask fort of that size.

    ``budget`` caps the total number of candidate sets examined across levels.
    """
    spent = 0
    for k in range(1, g.n + 1):
        spent += _check_budget(g.n, k, budget - spent)
        forts = enumerate_forts_of_size(g, k, budget)
        if forts:
            return k, forts[0]
    raise ConsistencyError("V itself is always a fort; scan found none")


def direct_failed_zf_number(g: Graph) -> int:
    """Largest non-forcing set by trying every subset (small graphs only)."""
    if g.n > 20:
        raise ResourceLimitError(f"direct failed zero forcing search on {g.n} vertices")
    best = -1
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size > best and not is_zero_forcing_set(g, mask):
            best = size
    return best


def confirm_failed_zf_number(g: Graph, value: int, witness: VertexSet,
                             budget: int = DEFAULT_BUDGET) -> bool:
    """Direct confirmation of ``F(G) = value`` without a full 2^n scan.

    ``witness`` must fail to force and have ``value`` vertices, and every set
    of ``value + 1`` vertices must force (subsets of failed sets fail, so no
    larger failed set can exist either).
    """
    if witness.bit_count() != value or is_zero_forcing_set(g, witness):
        return False
    if value + 1 > g.n:
        return True
    _check_budget(g.n, value + 1, budget)
    for combo in combinations(range(g.n), value + 1):
        if not is_zero_forcing_set(g, sum(1 << v for v in combo)):
            return False
    return True


def failed_zf_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    size, _ = minimum_fort(g, budget)
    value = g.n - size
    if g.n <= DIRECT_FAILED_ZF_MAX_VERTICES:
        direct = direct_failed_zf_number(g)
        if direct != value:
            raise ConsistencyError(
                f"failed zero forcing number: fort route gives {value}, direct search {direct}"
            )
    return value
