"""Orientations, couplings, the P and Q involutions and Eulerian equivalence.

An orientation stores one bit per edge: 0 points the edge from its first
listed endpoint to its second, 1 reverses it.  Loops carry a bit too, so a
graph with m edges has exactly 2**m orientations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from . import kernels
from .errors import DomainError, check_edges
from .multigraph import MultiGraph, components


@dataclass(frozen=True, order=True)
class Orientation:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise DomainError("orientation bits must be 0 or 1")

    @classmethod
    def parse(cls, s: str) -> "Orientation":
        if any(ch not in "01" for ch in s):
            raise DomainError(f"orientation must be a 0/1 string, got {s!r}")
        return cls(tuple(int(ch) for ch in s))

    @classmethod
    def default(cls, g: MultiGraph) -> "Orientation":
        return cls((0,) * g.num_edges)

    @classmethod
    def from_mask(cls, mask: int, m: int) -> "Orientation":
        """Bit i of ``mask`` is the bit of edge i."""
        return cls(tuple((mask >> i) & 1 for i in range(m)))

    @property
    def mask(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def ends(self, g: MultiGraph, e: int) -> tuple[int, int]:
        """(tail, head) of edge ``e``."""
        u, v = g.edges[e]
        return (v, u) if self.bits[e] else (u, v)

    def sign(self, g: MultiGraph, v: int, e: int) -> int:
        """Incidence value: +1 if ``e`` leaves ``v``, -1 if it enters, 0 otherwise.

        Loops give 0: their out- and in-contributions cancel.
        """
        tail, head = self.ends(g, e)
        if tail == head:
            return 0
        if v == tail:
            return 1
        if v == head:
            return -1
        return 0

    def flip(self, edges) -> "Orientation":
        es = set(edges)
        return Orientation(tuple(b ^ 1 if i in es else b for i, b in enumerate(self.bits)))

    def reversed(self) -> "Orientation":
        return Orientation(tuple(b ^ 1 for b in self.bits))


def _check_pair(rho: Orientation, sigma: Orientation) -> None:
    if len(rho) != len(sigma):
        raise DomainError("orientations belong to graphs with different edge counts")


def _check_graph(g: MultiGraph, rho: Orientation) -> None:
    if len(rho) != g.num_edges:
        raise DomainError(f"orientation has {len(rho)} bits, graph has {g.num_edges} edges")


def enumerate_orientations(g: MultiGraph) -> Iterator[Orientation]:
    """All 2**m orientations in lexicographic bitstring order."""
    check_edges(g.num_edges)
    for bits in product((0, 1), repeat=g.num_edges):
        yield Orientation(bits)


def coupling(rho: Orientation, sigma: Orientation) -> tuple[int, ...]:
    _check_pair(rho, sigma)
    return tuple(1 if a == b else -1 for a, b in zip(rho.bits, sigma.bits))


def apply_P(rho: Orientation, sigma: Orientation, f: Sequence[int]) -> tuple[int, ...]:
    _check_pair(rho, sigma)
    if len(f) != len(rho):
        raise DomainError("vector length does not match the edge count")
    return tuple(x if a == b else -x for a, b, x in zip(rho.bits, sigma.bits, f))


def apply_Q(rho: Orientation, sigma: Orientation, g: Sequence[int], q: int) -> tuple[int, ...]:
    _check_pair(rho, sigma)
    if len(g) != len(rho):
        raise DomainError("vector length does not match the edge count")
    if q <= 0:
        raise DomainError("q must be positive")
    for e, x in enumerate(g):
        if not 0 <= x <= q:
            raise DomainError(f"entry {e} = {x} outside [0, {q}]")
    return tuple(x if a == b else q - x for a, b, x in zip(rho.bits, sigma.bits, g))


def induced_orientation(rho: Orientation, f: Sequence) -> Orientation:
    """Keep rho where f > 0, reverse it where f <= 0."""
    if len(f) != len(rho):
        raise DomainError("vector length does not match the edge count")
    return Orientation(tuple(b if x > 0 else b ^ 1 for b, x in zip(rho.bits, f)))


def symmetric_difference(rho: Orientation, sigma: Orientation) -> tuple[int, ...]:
    _check_pair(rho, sigma)
    return tuple(a ^ b for a, b in zip(rho.bits, sigma.bits))


def is_directed_eulerian(g: MultiGraph, rho: Orientation, X) -> bool:
    _check_graph(g, rho)
    balance = [0] * g.num_vertices
    for e in X:
        tail, head = rho.ends(g, e)
        balance[tail] += 1
        balance[head] -= 1
    return not any(balance)


def eulerian_equivalent(g: MultiGraph, rho: Orientation, sigma: Orientation) -> bool:
    _check_pair(rho, sigma)
    diff = [e for e, (a, b) in enumerate(zip(rho.bits, sigma.bits)) if a != b]
    return is_directed_eulerian(g, rho, diff)


def _reach(g: MultiGraph, rho: Orientation, start: int, backward: bool) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for e in range(g.num_edges):
        tail, head = rho.ends(g, e)
        if tail == head:
            continue
        if backward:
            adj[head].append(tail)
        else:
            adj[tail].append(head)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


class DirectedCut(NamedTuple):
    """Every edge of ``edges`` points from ``side`` to its complement."""

    side: frozenset
    edges: tuple[int, ...]


def find_directed_cut(g: MultiGraph, rho: Orientation) -> DirectedCut | None:
    _check_graph(g, rho)
    for comp in components(g):
        comp_set = set(comp)
        root = comp[0]
        back = _reach(g, rho, root, backward=True)
        if back != comp_set:
            side = frozenset(back)
        else:
            fwd = _reach(g, rho, root, backward=False)
            if fwd == comp_set:
                continue
            side = frozenset(comp_set - fwd)
        cut = tuple(e for e, (u, v) in enumerate(g.edges) if (u in side) != (v in side))
        return DirectedCut(side, cut)
    return None


def is_totally_cyclic(g: MultiGraph, rho: Orientation) -> bool:
    """True iff every component is strongly connected under ``rho``."""
    _check_graph(g, rho)
    for comp in components(g):
        root = comp[0]
        if len(_reach(g, rho, root, False)) != len(comp):
            return False
        if len(_reach(g, rho, root, True)) != len(comp):
            return False
    return True


def totally_cyclic_orientations(g: MultiGraph) -> list[Orientation]:
    """Totally cyclic orientations in lexicographic order."""
    check_edges(g.num_edges)
    m = g.num_edges
    flags = kernels.totally_cyclic_flags(g.num_vertices,
                                         [u for u, _ in g.edges], [v for _, v in g.edges])
    return [o for o in enumerate_orientations(g) if flags[o.mask]]


def count_totally_cyclic(g: MultiGraph) -> int:
    check_edges(g.num_edges)
    flags = kernels.totally_cyclic_flags(g.num_vertices,
                                         [u for u, _ in g.edges], [v for _, v in g.edges])
    return sum(flags)


@dataclass(frozen=True)
class OrientationClass:
    representative: Orientation
    members: tuple[Orientation, ...]
    totally_cyclic: bool

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"representative": str(self.representative),
                "members": [str(o) for o in self.members],
                "size": self.size,
                "totally_cyclic": self.totally_cyclic}


def eulerian_class(g: MultiGraph, eps: Orientation) -> OrientationClass:
    """Class of ``eps``, built from the 0-1 flows of (g, eps)."""
    from .flowspace import zero_one_flows

    _check_graph(g, eps)
    check_edges(g.num_edges)
    members = sorted(eps.flip(e for e, x in enumerate(f) if x) for f in zero_one_flows(g, eps))
    return OrientationClass(members[0], tuple(members), is_totally_cyclic(g, eps))


def eulerian_classes(g: MultiGraph, only_totally_cyclic: bool = False) -> list[OrientationClass]:
    """Partition of all (or all totally cyclic) orientations, ordered by representative."""
    check_edges(g.num_edges)
    pool = totally_cyclic_orientations(g) if only_totally_cyclic else list(enumerate_orientations(g))
    assigned: set[Orientation] = set()
    classes = []
    for o in pool:
        if o in assigned:
            continue
        cls = eulerian_class(g, o)
        assigned.update(cls.members)
        classes.append(cls)
    return classes
