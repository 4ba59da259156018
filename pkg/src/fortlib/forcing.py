"""Standard colour change rule: closure, zero forcing sets, propagation time.

Forces are applied in simultaneous time steps judged against the colouring at
the start of each step. When several filled vertices could force the same
white vertex, the smallest-index forcer is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import VertexSet, iter_members, members
from .errors import NotZeroForcingError
from .graph import Graph

Force = tuple[int, int]


@dataclass(frozen=True)
class ForcingTrace:
    initial: VertexSet
    steps: tuple[tuple[Force, ...], ...] = field(default_factory=tuple)
    final: VertexSet = 0

    @property
    def propagation_time(self) -> int:
        return len(self.steps)

    def forced(self) -> VertexSet:
        return self.final & ~self.initial

    def to_dict(self) -> dict:
        return {
            "initial": members(self.initial),
            "steps": [[[u, v] for u, v in step] for step in self.steps],
            "final": members(self.final),
        }


def forcing_step(g: Graph, filled: VertexSet) -> tuple[list[Force], VertexSet]:
    """Apply one simultaneous time step; return the forces and the new filled set."""
    adj = g.adjacency
    forces = []
    newly = 0
    for u in iter_members(filled):
        white = adj[u] & ~filled
        # exactly one white neighbour
        if white and not white & (white - 1):
            if not newly & white:
                newly |= white
                forces.append((u, white.bit_length() - 1))
    return forces, filled | newly


def closure(g: Graph, s: VertexSet) -> ForcingTrace:
    steps = []
    filled = s
    while True:
        forces, after = forcing_step(g, filled)
        if not forces:
            break
        steps.append(tuple(forces))
        filled = after
    return ForcingTrace(s, tuple(steps), filled)


def is_zero_forcing_set(g: Graph, s: VertexSet) -> bool:
    return closure(g, s).final == g.vertices


def propagation_time(g: Graph, s: VertexSet) -> int:
    trace = closure(g, s)
    if trace.final != g.vertices:
        raise NotZeroForcingError(
            f"set {members(s)} is not a zero forcing set; stalls at {members(trace.final)}",
            trace.final,
        )
    return trace.propagation_time


def is_stalled(g: Graph, s: VertexSet) -> bool:
    """True iff ``s`` is not all of V and no force applies to it at all."""
    if s == g.vertices:
        return False
    forces, _ = forcing_step(g, s)
    return not forces
