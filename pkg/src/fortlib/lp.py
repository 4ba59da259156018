"""Exact covering LPs: minimise sum(x) subject to sum(x[v] for v in row) >= 1.

The simplex runs on the packing dual ``max sum(y) s.t. A^T y <= 1, y >= 0``,
whose slack basis is feasible from the start, so no phase one is needed. The
primal weights are read off the slack columns of the optimal tableau. All
arithmetic is :class:`fractions.Fraction`; Bland's rule prevents cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bits import VertexSet, iter_members
from .errors import ConsistencyError, PreconditionError
from .forts import FortCensus
from .graph import Graph
from .io import rational_str

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class CoveringLp:
    n_vars: int
    rows: tuple[VertexSet, ...]

    def __post_init__(self):
        limit = 1 << self.n_vars
        for r in self.rows:
            if r <= 0 or r >= limit:
                raise PreconditionError(f"row {r:b} is empty or uses a variable >= {self.n_vars}")


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    weights: tuple[Fraction, ...]
    status: str = OPTIMAL
    dual: tuple[Fraction, ...] = ()
    pivots: int = 0

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": rational_str(self.value),
            "weights": [rational_str(w) for w in self.weights],
            "dual": [rational_str(y) for y in self.dual],
            "pivots": self.pivots,
        }


def _simplex_packing_dual(n_vars: int, rows: Sequence[VertexSet]):
    """Maximise sum(y) over y >= 0 with column sums of A^T y at most one.

    Returns ``(y, x, pivots)`` where ``x`` are the optimal tableau prices.
    """
    m = len(rows)
    width = m + n_vars
    zero, one = Fraction(0), Fraction(1)
    # constraint j (one per covering variable): sum_{i: j in row_i} y_i + s_j = 1
    tab = []
    for j in range(n_vars):
        line = [one if rows[i] >> j & 1 else zero for i in range(m)]
        line += [one if k == j else zero for k in range(n_vars)]
        tab.append(line)
    rhs = [one] * n_vars
    basis = [m + j for j in range(n_vars)]
    # reduced costs for maximisation; entering requires a positive entry
    cost = [one] * m + [zero] * n_vars
    pivots = 0
    while True:
        enter = next((c for c in range(width) if cost[c] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for r in range(n_vars):
            a = tab[r][enter]
            if a > 0:
                ratio = rhs[r] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            raise ConsistencyError("packing dual reported unbounded; impossible for 0/1 rows")
        piv = tab[leave][enter]
        prow = [a / piv for a in tab[leave]]
        tab[leave] = prow
        rhs[leave] = rhs[leave] / piv
        for r in range(n_vars):
            if r != leave:
                f = tab[r][enter]
                if f:
                    row = tab[r]
                    tab[r] = [a - f * p for a, p in zip(row, prow)]
                    rhs[r] -= f * rhs[leave]
        f = cost[enter]
        cost = [c - f * p for c, p in zip(cost, prow)]
        basis[leave] = enter
        pivots += 1
    y = [zero] * m
    for r, b in enumerate(basis):
        if b < m:
            y[b] = rhs[r]
    x = [-cost[m + j] for j in range(n_vars)]
    return y, x, pivots


def check_certificate(p: CoveringLp, x: Sequence[Fraction], y: Sequence[Fraction]) -> None:
    """Raise unless ``x`` is primal feasible, ``y`` dual feasible, objectives equal."""
    if any(w < 0 for w in x) or any(w < 0 for w in y):
        raise ConsistencyError("negative weight in LP certificate")
    for r in p.rows:
        if sum(x[v] for v in iter_members(r)) < 1:
            raise ConsistencyError(f"primal row {r:b} is under-covered")
    for j in range(p.n_vars):
        if sum(y[i] for i, r in enumerate(p.rows) if r >> j & 1) > 1:
            raise ConsistencyError(f"dual column {j} exceeds one")
    if sum(x) != sum(y):
        raise ConsistencyError(f"duality gap: primal {sum(x)} vs dual {sum(y)}")


def solve_covering_lp(p: CoveringLp) -> LpSolution:
    if not p.rows:
        return LpSolution(Fraction(0), tuple(Fraction(0) for _ in range(p.n_vars)))
    y, x, pivots = _simplex_packing_dual(p.n_vars, p.rows)
    check_certificate(p, x, y)
    return LpSolution(sum(x, Fraction(0)), tuple(x), OPTIMAL, tuple(y), pivots)


def fractional_zf_solution(g: Graph, census: FortCensus) -> LpSolution:
    if not census.complete:
        raise PreconditionError("fractional zero forcing needs a complete minimal-fort census")
    if census.graph_id != g.graph_id:
        raise PreconditionError("census was computed for a different graph")
    return solve_covering_lp(CoveringLp(g.n, tuple(census.minimal_forts)))


def fractional_zf(g: Graph, census: FortCensus) -> Fraction:
    return fractional_zf_solution(g, census).value
