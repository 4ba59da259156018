"""Hypercube symmetries as signed permutations of the coordinates.

An element ``(perm, mask)`` moves bit ``i`` of a vertex to position
``perm[i]`` and then XORs the result with ``mask``. These ``2^d * d!`` maps
are the automorphisms of Q_d; the canonical form of a vertex set is the
smallest bitmask in its orbit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

from .bits import VertexSet, iter_members, members
from .errors import ResourceLimitError
from .graph import Graph

MAX_SYMMETRY_DIM = 8


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple[int, ...]
    mask: int = 0

    def __post_init__(self):
        d = len(self.perm)
        if sorted(self.perm) != list(range(d)):
            raise ValueError(f"{self.perm} is not a permutation of 0..{d - 1}")
        if not 0 <= self.mask < 1 << d:
            raise ValueError(f"mask {self.mask} has bits outside {d} coordinates")

    @property
    def d(self) -> int:
        return len(self.perm)

    def __call__(self, v: int) -> int:
        out = 0
        for i, p in enumerate(self.perm):
            if v >> i & 1:
                out |= 1 << p
        return out ^ self.mask

    def apply_set(self, s: VertexSet) -> VertexSet:
        return sum(1 << self(v) for v in iter_members(s))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """``self ∘ other``: apply ``other`` first."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.d))
        return SignedPermutation(perm, self(other.mask))

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.d
        for i, p in enumerate(self.perm):
            inv[p] = i
        inv_perm = SignedPermutation(tuple(inv), 0)
        return SignedPermutation(tuple(inv), inv_perm(self.mask))

    @classmethod
    def identity(cls, d: int) -> "SignedPermutation":
        return cls(tuple(range(d)), 0)


def _guard(d: int) -> None:
    if not 1 <= d <= MAX_SYMMETRY_DIM:
        raise ResourceLimitError(
            f"symmetry sweep supports 1 <= d <= {MAX_SYMMETRY_DIM}, got d={d}"
        )


def group_order(d: int) -> int:
    return (1 << d) * math.factorial(d)


def elements(d: int) -> Iterator[SignedPermutation]:
    _guard(d)
    for perm in permutations(range(d)):
        for mask in range(1 << d):
            yield SignedPermutation(perm, mask)


def random_element(d: int, rng: random.Random) -> SignedPermutation:
    perm = list(range(d))
    rng.shuffle(perm)
    return SignedPermutation(tuple(perm), rng.randrange(1 << d))


@lru_cache(maxsize=None)
def _perm_tables(d: int) -> tuple[tuple[int, ...], ...]:
    """For each coordinate permutation, the image of every vertex."""
    tables = []
    for perm in permutations(range(d)):
        sp = SignedPermutation(perm, 0)
        tables.append(tuple(sp(v) for v in range(1 << d)))
    return tuple(tables)


def orbit(d: int, s: VertexSet) -> set[VertexSet]:
    """Every image of ``s`` under the group."""
    _guard(d)
    verts = members(s)
    out = set()
    for table in _perm_tables(d):
        moved = [table[v] for v in verts]
        for mask in range(1 << d):
            img = 0
            for x in moved:
                img |= 1 << (x ^ mask)
            out.add(img)
    return out


@dataclass(frozen=True)
class CanonicalForm:
    canonical: VertexSet
    orbit_size: int

    def to_dict(self) -> dict:
        return {"canonical": members(self.canonical), "orbit_size": self.orbit_size}


def canonical_form(d: int, s: VertexSet) -> CanonicalForm:
    images = orbit(d, s)
    return CanonicalForm(min(images), len(images))


def canonical_set(d: int, s: VertexSet) -> VertexSet:
    return canonical_form(d, s).canonical


def are_automorphic(d: int, a: VertexSet, b: VertexSet) -> bool:
    _guard(d)
    if a.bit_count() != b.bit_count():
        return False
    return canonical_set(d, a) == canonical_set(d, b)


@dataclass(frozen=True)
class OrbitClass:
    canonical: VertexSet
    orbit_size: int
    members: tuple[VertexSet, ...]

    def to_dict(self) -> dict:
        return {
            "canonical": members(self.canonical),
            "orbit_size": self.orbit_size,
            "members": [members(m) for m in self.members],
        }


def classify_orbits(d: int, sets: Iterable[VertexSet]) -> list[OrbitClass]:
    """Partition ``sets`` by canonical form, ordered by canonical bitmask."""
    _guard(d)
    groups: dict[VertexSet, list[VertexSet]] = {}
    sizes: dict[VertexSet, int] = {}
    for s in sets:
        cf = canonical_form(d, s)
        groups.setdefault(cf.canonical, []).append(s)
        sizes[cf.canonical] = cf.orbit_size
    return [
        OrbitClass(c, sizes[c], tuple(sorted(set(groups[c]))))
        for c in sorted(groups)
    ]


def preserves_adjacency(g: Graph, element: SignedPermutation) -> bool:
    return all(element.apply_set(g.adjacency[v]) == g.adjacency[element(v)] for v in range(g.n))


def automorphisms_bruteforce(g: Graph) -> list[tuple[int, ...]]:
    """All adjacency-preserving vertex permutations, by pruned backtracking.

    Meant for small graphs; it knows nothing about hypercube structure.
    """
    n = g.n
    adj = g.adjacency
    degree = [row.bit_count() for row in adj]
    found: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or degree[w] != degree[v]:
                continue
            ok = True
            for u in range(v):
                if (adj[v] >> u & 1) != (adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return found


def as_vertex_permutation(element: SignedPermutation) -> tuple[int, ...]:
    return tuple(element(v) for v in range(1 << element.d))

