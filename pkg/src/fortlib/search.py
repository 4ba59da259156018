"""Exact combinatorial search: zero forcing number, fort number, propagation
time spectrum and the domination-type parameters.

Two engines do the work. :func:`min_hitting_set` finds a smallest vertex set
meeting every row (fort cover, domination, total domination), and
:func:`max_disjoint_rows` finds a largest family of pairwise disjoint rows
(fort number, open packing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .bits import VertexSet, iter_members, members
from .errors import ConsistencyError, PreconditionError, ResourceLimitError
from .forcing import closure, is_zero_forcing_set
from .forts import (
    CENSUS_MAX_VERTICES,
    DEFAULT_BUDGET,
    FortCensus,
    enumerate_minimal_forts,
    failed_zf_number,
    is_fort,
)
from .graph import Graph
from .io import rational_str


# -- hitting set (set cover over columns) -----------------------------------

def _greedy_hitting_set(rows: Sequence[VertexSet], n: int) -> VertexSet:
    chosen = 0
    unhit = list(rows)
    while unhit:
        best_v, best_hits = -1, -1
        for v in range(n):
            hits = sum(1 for r in unhit if r >> v & 1)
            if hits > best_hits:
                best_v, best_hits = v, hits
        chosen |= 1 << best_v
        unhit = [r for r in unhit if not r >> best_v & 1]
    # drop redundant picks
    for v in members(chosen):
        trial = chosen & ~(1 << v)
        if all(r & trial for r in rows):
            chosen = trial
    return chosen


def _reduce_rows(rows: Iterable[VertexSet]) -> list[VertexSet]:
    """Drop duplicate rows and rows containing another row (implied constraints)."""
    uniq = sorted(set(rows), key=lambda r: (r.bit_count(), r))
    kept: list[VertexSet] = []
    for r in uniq:
        if not any(k & r == k for k in kept):
            kept.append(r)
    return kept


def _disjoint_lower_bound(rows: Sequence[VertexSet], allowed: VertexSet) -> int:
    used = 0
    count = 0
    for r in rows:
        a = r & allowed
        if not a & used:
            used |= a
            count += 1
    return count


def min_hitting_set(n: int, rows: Iterable[VertexSet]) -> tuple[int, VertexSet]:
    """Smallest vertex set meeting every row, by branch and bound.

    Branches on the unhit row with the fewest admissible columns; the bound
    counts greedily chosen pairwise disjoint unhit rows.
    """
    rows = _reduce_rows(rows)
    if any(r == 0 for r in rows):
        raise PreconditionError("an empty row can never be hit")
    if not rows:
        return 0, 0
    best = [_greedy_hitting_set(rows, n)]
    everything = (1 << n) - 1

    def search(chosen: VertexSet, excluded: VertexSet, unhit: list[VertexSet]) -> None:
        if not unhit:
            if chosen.bit_count() < best[0].bit_count():
                best[0] = chosen
            return
        allowed = everything & ~excluded
        room = best[0].bit_count() - chosen.bit_count()
        if _disjoint_lower_bound(unhit, allowed) >= room:
            return
        pivot = min(unhit, key=lambda r: ((r & allowed).bit_count(), r))
        cols = pivot & allowed
        tried = 0
        for v in iter_members(cols):
            bit = 1 << v
            search(chosen | bit, excluded | tried, [r for r in unhit if not r & bit])
            tried |= bit

    search(0, 0, rows)
    return best[0].bit_count(), best[0]


# -- set packing ------------------------------------------------------------

def max_disjoint_rows(rows: Sequence[VertexSet], n: int) -> list[int]:
    """Indices of a largest pairwise-disjoint subfamily of ``rows``.

    Rows are tried smallest first; the bound divides the still-free vertices
    by the smallest remaining compatible row size. Empty rows are disjoint
    from everything and always taken.
    """
    empty = [i for i, r in enumerate(rows) if r == 0]
    order = sorted((i for i, r in enumerate(rows) if r), key=lambda i: (rows[i].bit_count(), rows[i]))
    sorted_rows = [rows[i] for i in order]
    everything = (1 << n) - 1
    best: list[list[int]] = [[]]

    def search(start: int, used: VertexSet, picked: list[int]) -> None:
        if len(picked) > len(best[0]):
            best[0] = list(picked)
        free = (everything & ~used).bit_count()
        for i in range(start, len(sorted_rows)):
            r = sorted_rows[i]
            if r & used:
                continue
            # rows are size-sorted: r is the smallest candidate left
            if len(picked) + free // r.bit_count() <= len(best[0]):
                return
            picked.append(i)
            search(i + 1, used | r, picked)
            picked.pop()

    search(0, 0, [])
    return sorted(empty + [order[i] for i in best[0]])


# -- zero forcing -----------------------------------------------------------

def _require_complete(g: Graph, census: FortCensus) -> None:
    if census.graph_id != g.graph_id:
        raise PreconditionError("census was computed for a different graph")
    if not census.complete:
        raise PreconditionError("an incomplete census cannot certify optimality")


def zfs_of_size(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> list[VertexSet]:
    """Every zero forcing set with exactly ``k`` vertices, sorted by bitmask."""
    count = math.comb(g.n, k)
    if count > budget:
        raise ResourceLimitError(f"C({g.n}, {k}) = {count} candidate sets exceeds the budget of {budget}")
    out = []
    for combo in combinations(range(g.n), k):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if is_zero_forcing_set(g, mask):
            out.append(mask)
    return out


def _first_zfs_of_size(g: Graph, k: int) -> Optional[VertexSet]:
    for combo in combinations(range(g.n), k):
        mask = sum(1 << v for v in combo)
        if is_zero_forcing_set(g, mask):
            return mask
    return None


def min_zero_forcing_number(
    g: Graph, census: Optional[FortCensus] = None, budget: int = DEFAULT_BUDGET
) -> tuple[int, VertexSet]:
    """Zero forcing number with a witness.

    With a complete census this is a minimum hitting set of the minimal forts;
    otherwise an ascending exhaustive scan over subset sizes (n <= 16).
    """
    if census is not None and census.complete:
        _require_complete(g, census)
        z, witness = min_hitting_set(g.n, census.minimal_forts)
        if not is_zero_forcing_set(g, witness):
            raise ConsistencyError(f"fort cover {members(witness)} does not force the graph")
        return z, witness
    if g.n > CENSUS_MAX_VERTICES:
        raise ResourceLimitError(f"exhaustive zero forcing scan limited to {CENSUS_MAX_VERTICES} vertices")
    spent = 0
    for k in range(g.n + 1):
        spent += math.comb(g.n, k)
        if spent > budget:
            raise ResourceLimitError(f"zero forcing scan exceeded the budget of {budget}")
        witness = _first_zfs_of_size(g, k)
        if witness is not None:
            return k, witness
    raise ConsistencyError("V always forces itself")


def enumerate_minimum_zfs(g: Graph, z: int, budget: int = DEFAULT_BUDGET) -> list[VertexSet]:
    return zfs_of_size(g, z, budget)


@dataclass
class PtSpectrum:
    pt_min: int
    pt_max: int
    spectrum: tuple[int, ...]
    witnesses: dict[int, VertexSet]
    sets_examined: int

    def to_dict(self) -> dict:
        return {
            "pt_min": self.pt_min,
            "pt_max": self.pt_max,
            "pt_spectrum": list(self.spectrum),
            "witnesses": {str(t): members(s) for t, s in sorted(self.witnesses.items())},
            "minimum_zfs_count": self.sets_examined,
        }


def pt_spectrum(
    g: Graph,
    z: Optional[int] = None,
    census: Optional[FortCensus] = None,
    budget: int = DEFAULT_BUDGET,
) -> PtSpectrum:
    """Propagation times over all minimum zero forcing sets.

    The witness for each time is the smallest-bitmask set attaining it.
    """
    if z is None:
        z, _ = min_zero_forcing_number(g, census, budget)
    sets = enumerate_minimum_zfs(g, z, budget)
    if not sets:
        raise ConsistencyError(f"no zero forcing set of size {z}")
    witnesses: dict[int, VertexSet] = {}
    for s in sets:
        t = closure(g, s).propagation_time
        witnesses.setdefault(t, s)
    times = tuple(sorted(witnesses))
    return PtSpectrum(times[0], times[-1], times, witnesses, len(sets))


def no_zfs_of_size(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Exhaustive confirmation that no ``k``-set is zero forcing."""
    if k < 0:
        return True
    count = math.comb(g.n, k)
    if count > budget:
        raise ResourceLimitError(f"C({g.n}, {k}) = {count} candidate sets exceeds the budget of {budget}")
    return _first_zfs_of_size(g, k) is None


# -- forts and domination ---------------------------------------------------

def fort_number(g: Graph, census: FortCensus) -> tuple[int, list[VertexSet]]:
    """Maximum number of pairwise disjoint forts, packed from minimal forts."""
    _require_complete(g, census)
    rows = census.minimal_forts
    family = [rows[i] for i in max_disjoint_rows(rows, g.n)]
    seen = 0
    for f in family:
        if f & seen or not is_fort(g, f):
            raise ConsistencyError("fort packing is not a disjoint family of forts")
        seen |= f
    return len(family), family


def _size_guard(g: Graph, what: str) -> None:
    if g.n > CENSUS_MAX_VERTICES:
        raise ResourceLimitError(f"{what} solver limited to {CENSUS_MAX_VERTICES} vertices")


def domination_number(g: Graph) -> tuple[int, VertexSet]:
    _size_guard(g, "domination")
    rows = [g.adjacency[v] | (1 << v) for v in range(g.n)]
    k, s = min_hitting_set(g.n, rows)
    if not is_dominating(g, s):
        raise ConsistencyError("dominating-set witness failed re-verification")
    return k, s


def total_domination_number(g: Graph) -> tuple[int, VertexSet]:
    _size_guard(g, "total domination")
    rows = [g.adjacency[v] for v in range(g.n)]
    if any(r == 0 for r in rows):
        raise PreconditionError("a graph with an isolated vertex has no total dominating set")
    k, s = min_hitting_set(g.n, rows)
    if not is_total_dominating(g, s):
        raise ConsistencyError("total-dominating witness failed re-verification")
    return k, s


def open_packing_number(g: Graph) -> tuple[int, VertexSet]:
    _size_guard(g, "open packing")
    picked = max_disjoint_rows(list(g.adjacency), g.n)
    s = sum(1 << v for v in picked)
    if not is_open_packing(g, s):
        raise ConsistencyError("open packing witness failed re-verification")
    return len(picked), s


def is_dominating(g: Graph, s: VertexSet) -> bool:
    return all((g.adjacency[v] | (1 << v)) & s for v in range(g.n))


def is_total_dominating(g: Graph, s: VertexSet) -> bool:
    return all(g.adjacency[v] & s for v in range(g.n))


def is_open_packing(g: Graph, s: VertexSet) -> bool:
    seen = 0
    for v in iter_members(s):
        if g.adjacency[v] & seen:
            return False
        seen |= g.adjacency[v]
    return True


# -- report -----------------------------------------------------------------

PARAMETERS = ("Z", "zstar", "ft", "pt", "gamma", "gamma_t", "rho", "failedzf")


@dataclass
class ParameterReport:
    graph_id: str
    Z: Optional[int] = None
    Z_witnesses: Optional[list[VertexSet]] = None
    zstar: Optional[Fraction] = None
    ft: Optional[int] = None
    ft_witness: Optional[list[VertexSet]] = None
    pt: Optional[PtSpectrum] = None
    gamma: Optional[int] = None
    gamma_witness: Optional[VertexSet] = None
    gamma_t: Optional[int] = None
    gamma_t_witness: Optional[VertexSet] = None
    rho_open: Optional[int] = None
    rho_open_witness: Optional[VertexSet] = None
    failed_zf: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {"graph_id": self.graph_id}
        if self.Z is not None:
            out["Z"] = self.Z
            out["Z_witnesses"] = [members(s) for s in self.Z_witnesses or []]
        if self.zstar is not None:
            out["zstar"] = rational_str(self.zstar)
        if self.ft is not None:
            out["ft"] = self.ft
            out["ft_witness"] = [members(f) for f in self.ft_witness or []]
        if self.pt is not None:
            out.update(self.pt.to_dict())
        for name in ("gamma", "gamma_t", "rho_open"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
                out[f"{name}_witness"] = members(getattr(self, f"{name}_witness"))
        if self.failed_zf is not None:
            out["failed_zf"] = self.failed_zf
        return out


def compute_parameters(
    g: Graph,
    selected: Iterable[str] = PARAMETERS,
    census: Optional[FortCensus] = None,
    budget: int = DEFAULT_BUDGET,
) -> ParameterReport:
    """Compute the requested parameters, sharing one fort census among them."""
    from .lp import fractional_zf

    selected = set(selected)
    unknown = selected - set(PARAMETERS)
    if unknown:
        raise PreconditionError(f"unknown parameters: {sorted(unknown)}")
    report = ParameterReport(g.graph_id)
    needs_census = selected & {"Z", "zstar", "ft", "pt"}
    if needs_census and census is None:
        census = enumerate_minimal_forts(g)
    if "Z" in selected or "pt" in selected:
        z, w = min_zero_forcing_number(g, census, budget)
        if "Z" in selected:
            report.Z, report.Z_witnesses = z, [w]
        if "pt" in selected:
            report.pt = pt_spectrum(g, z, census, budget)
    if "zstar" in selected:
        report.zstar = fractional_zf(g, census)
    if "ft" in selected:
        report.ft, report.ft_witness = fort_number(g, census)
    if "gamma" in selected:
        report.gamma, report.gamma_witness = domination_number(g)
    if "gamma_t" in selected:
        report.gamma_t, report.gamma_t_witness = total_domination_number(g)
    if "rho" in selected:
        report.rho_open, report.rho_open_witness = open_packing_number(g)
    if "failedzf" in selected:
        report.failed_zf = failed_zf_number(g, budget)
    return report
