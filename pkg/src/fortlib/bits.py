"""Vertex sets as Python int bitmasks.

Bit ``i`` set means vertex ``i`` is a member. All set algebra in the library
goes through plain ``&``, ``|``, ``^`` on these ints.
"""

from __future__ import annotations

from typing import Iterable, Iterator

VertexSet = int


def from_members(members: Iterable[int]) -> VertexSet:
    mask = 0
    for v in members:
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Return the sorted member indices of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: VertexSet) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def size(mask: VertexSet) -> int:
    return mask.bit_count()


def full(n: int) -> VertexSet:
    return (1 << n) - 1


def lowest(mask: VertexSet) -> int:
    """Index of the smallest member; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1
