"""Flow enumeration and counting over Z/qZ and bounded integer boxes.

Every bounded enumeration walks the co-tree coordinates of a greedy
maximal spanning forest; tree coordinates follow from the fundamental
circuits and are range-checked by the kernel.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import kernels
from .errors import DomainError, InvariantViolation, check_enum
from .multigraph import (MultiGraph, SpanningForest, fundamental_circuit,
                         maximal_spanning_forest)
from .orientation import Orientation, apply_P, apply_Q


@dataclass(frozen=True)
class FlowVector:
    """Wire-format flow: integers aligned with edge indices, optional modulus."""

    values: tuple[int, ...]
    modulus: int | None = None

    def to_json(self) -> dict | list:
        if self.modulus is None:
            return list(self.values)
        return {"values": list(self.values), "mod": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "FlowVector":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, list):
            values, mod = obj, None
        elif isinstance(obj, dict) and "values" in obj:
            values, mod = obj["values"], obj.get("mod")
        else:
            raise DomainError("flow must be an integer array or {'values': [...], 'mod': q}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
            raise DomainError("flow entries must be integers")
        if mod is not None:
            if not isinstance(mod, int) or mod < 1:
                raise DomainError("'mod' must be a positive integer")
            values = [x % mod for x in values]
        return cls(tuple(values), mod)


@dataclass(frozen=True)
class LiftResult:
    flow: tuple[int, ...]
    iterations: int
    eta: int
    orientation: Orientation


@dataclass(frozen=True)
class CircuitBasis:
    """Forest plus the matrix expressing tree values through co-tree values."""

    forest: SpanningForest
    rows: tuple[tuple[int, ...], ...]  # rows[i][j]: tree edge i, co-tree edge j

    @property
    def tree(self) -> tuple[int, ...]:
        return self.forest.tree

    @property
    def cotree(self) -> tuple[int, ...]:
        return self.forest.cotree

    def assemble(self, cot: Sequence[int], tree: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.forest.graph.num_edges
        for e, x in zip(self.forest.cotree, cot):
            out[e] = x
        for e, x in zip(self.forest.tree, tree):
            out[e] = x
        return tuple(out)


@lru_cache(maxsize=4096)
def circuit_basis(g: MultiGraph, eps: Orientation) -> CircuitBasis:
    forest = maximal_spanning_forest(g)
    circuits = [fundamental_circuit(g, forest, e, eps) for e in forest.cotree]
    rows = tuple(tuple(c[x] for c in circuits) for x in forest.tree)
    return CircuitBasis(forest, rows)


def _check_orientation(g: MultiGraph, eps: Orientation) -> None:
    if len(eps) != g.num_edges:
        raise DomainError(f"orientation has {len(eps)} bits, graph has {g.num_edges} edges")


def vertex_excess(g: MultiGraph, rho: Orientation, f: Sequence[int]) -> list[int]:
    """Out-flow minus in-flow at every vertex; loops contribute nothing."""
    ex = [0] * g.num_vertices
    for e, x in enumerate(f):
        tail, head = rho.ends(g, e)
        if tail != head:
            ex[tail] += x
            ex[head] -= x
    return ex


def is_flow(g: MultiGraph, eps: Orientation, f: Sequence[int], modulus: int | None = None) -> bool:
    _check_orientation(g, eps)
    if len(f) != g.num_edges:
        raise DomainError("flow length does not match the edge count")
    ex = vertex_excess(g, eps, f)
    if modulus:
        return all(x % modulus == 0 for x in ex)
    return not any(ex)


def flow_from_cotree(g: MultiGraph, forest: SpanningForest, eps: Orientation,
                     a: Sequence[int]) -> tuple[int, ...]:
    if len(a) != len(forest.cotree):
        raise DomainError(f"need {len(forest.cotree)} co-tree values, got {len(a)}")
    out = [0] * g.num_edges
    for e, k in zip(forest.cotree, a):
        if k:
            circ = fundamental_circuit(g, forest, e, eps)
            for x, c in enumerate(circ):
                out[x] += c * k
    return tuple(out)


def _guard(nvalues: int, basis: CircuitBasis) -> None:
    check_enum(nvalues ** len(basis.cotree))


def enumerate_modular_flows(g: MultiGraph, eps: Orientation, q: int,
                            nowhere_zero: bool = False) -> list[tuple[int, ...]]:
    """Flows mod q as residue vectors in {0..q-1}, sorted."""
    if q < 1:
        raise DomainError("q must be >= 1")
    _check_orientation(g, eps)
    basis = circuit_basis(g, eps)
    check_enum(q ** len(basis.cotree))
    values = range(1, q) if nowhere_zero else range(q)
    found = kernels.list_flows(basis.rows, len(basis.cotree), values,
                               modulus=q, forbid_zero=nowhere_zero)
    return sorted(basis.assemble(c, t) for c, t in found)


def count_modular_flows(g: MultiGraph, eps: Orientation, q: int,
                        nowhere_zero: bool = True) -> int:
    if q < 1:
        raise DomainError("q must be >= 1")
    basis = circuit_basis(g, eps)
    values = range(1, q) if nowhere_zero else range(q)
    return kernels.count_flows(basis.rows, len(basis.cotree), values,
                               modulus=q, forbid_zero=nowhere_zero)


def count_integer_flows_open(g: MultiGraph, rho: Orientation, q: int) -> int:
    """Integer flows of (g, rho) with every value in (0, q)."""
    if q < 1:
        raise DomainError("q must be >= 1")
    _check_orientation(g, rho)
    basis = circuit_basis(g, rho)
    return kernels.count_flows(basis.rows, len(basis.cotree), range(1, q), lo=1, hi=q - 1)


def count_integer_flows_closed(g: MultiGraph, rho: Orientation, q: int) -> int:
    """Integer flows of (g, rho) with every value in [0, q]."""
    if q < 0:
        raise DomainError("q must be >= 0")
    _check_orientation(g, rho)
    basis = circuit_basis(g, rho)
    return kernels.count_flows(basis.rows, len(basis.cotree), range(q + 1), lo=0, hi=q)


def _two_sided(q: int) -> list[int]:
    return [x for x in range(-(q - 1), q) if x]


def count_nowhere_zero_integer(g: MultiGraph, eps: Orientation, q: int) -> int:
    """Integer flows with 0 < |f(e)| < q on every edge."""
    if q < 1:
        raise DomainError("q must be >= 1")
    _check_orientation(g, eps)
    basis = circuit_basis(g, eps)
    return kernels.count_flows(basis.rows, len(basis.cotree), _two_sided(q),
                               lo=-(q - 1), hi=q - 1, forbid_zero=True)


def enumerate_nowhere_zero_integer(g: MultiGraph, eps: Orientation, q: int) -> list[tuple[int, ...]]:
    if q < 1:
        raise DomainError("q must be >= 1")
    _check_orientation(g, eps)
    basis = circuit_basis(g, eps)
    _guard(max(2 * q - 2, 1), basis)
    found = kernels.list_flows(basis.rows, len(basis.cotree), _two_sided(q),
                               lo=-(q - 1), hi=q - 1, forbid_zero=True)
    return sorted(basis.assemble(c, t) for c, t in found)


def enumerate_integer_flows_box(g: MultiGraph, rho: Orientation, lo: int, hi: int,
                                forbid_zero: bool = False) -> list[tuple[int, ...]]:
    """Integer flows of (g, rho) with every value in [lo, hi]."""
    _check_orientation(g, rho)
    basis = circuit_basis(g, rho)
    values = [x for x in range(lo, hi + 1) if not (forbid_zero and x == 0)]
    _guard(max(len(values), 1), basis)
    found = kernels.list_flows(basis.rows, len(basis.cotree), values,
                               lo=lo, hi=hi, forbid_zero=forbid_zero)
    return sorted(basis.assemble(c, t) for c, t in found)


def zero_one_flows(g: MultiGraph, eps: Orientation) -> list[tuple[int, ...]]:
    """Indicator vectors of the directed Eulerian subgraphs of (g, eps)."""
    return enumerate_integer_flows_box(g, eps, 0, 1)


def eta(g: MultiGraph, rho: Orientation, vec: Sequence[int]) -> int:
    """Sum over vertices of the absolute net out-flow of ``vec`` under ``rho``."""
    return sum(abs(x) for x in vertex_excess(g, rho, vec))


def _augmenting_path(g: MultiGraph, rho: Orientation, fstar: Sequence[int],
                     excess: list[int]) -> list[int] | None:
    """Directed path from the least positive-excess vertex to a negative one.

    Breadth-first; arcs out of a vertex are tried in order of decreasing
    carried value, then edge index, so flips favour small lifted magnitudes.
    """
    start = next(v for v, x in enumerate(excess) if x > 0)
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for e in range(g.num_edges):
        tail, head = rho.ends(g, e)
        if tail != head:
            out[tail].append((head, e))
    for arcs in out:
        arcs.sort(key=lambda he: (-fstar[he[1]], he[1]))
    prev: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w, e in out[v]:
            if w in prev:
                continue
            prev[w] = (v, e)
            if excess[w] < 0:
                path = []
                x = w
                while x != start:
                    px, pe = prev[x]
                    path.append(pe)
                    x = px
                return path[::-1]
            queue.append(w)
    return None


def lift_modular_flow(g: MultiGraph, eps: Orientation, ftilde: Sequence[int], q: int) -> LiftResult:
    """Lift a nowhere-zero flow mod q to an integer flow with 0 < |f(e)| < q.

    Starts from rho = eps and f* = Q_{rho,eps} ftilde, then repeatedly
    reverses rho along a directed path from a surplus vertex to a deficit
    vertex; each reversal lowers eta(f*, rho) by exactly 2q.
    """
    _check_orientation(g, eps)
    if q < 2:
        raise DomainError("q must be >= 2 for a nowhere-zero modular flow")
    if len(ftilde) != g.num_edges:
        raise DomainError("flow length does not match the edge count")
    ft = tuple(ftilde)
    if any(not (1 <= x <= q - 1) for x in ft):
        raise DomainError(f"entries must lie in 1..{q - 1}")
    if not is_flow(g, eps, ft, q):
        raise DomainError("input is not a flow mod q")

    rho = eps
    fstar = ft
    current = eta(g, rho, fstar)
    iterations = 0
    while current > 0:
        excess = vertex_excess(g, rho, fstar)
        path = _augmenting_path(g, rho, fstar, excess)
        if path is None:
            raise InvariantViolation(
                f"no augmenting path while eta={current} (orientation {rho})")
        rho = rho.flip(path)
        fstar = apply_Q(rho, eps, ft, q)
        new = eta(g, rho, fstar)
        if new != current - 2 * q:
            raise InvariantViolation(f"eta went from {current} to {new}, expected a drop of {2 * q}")
        current = new
        iterations += 1
    f = apply_P(eps, rho, fstar)
    if not is_flow(g, eps, f):
        raise InvariantViolation("lifted vector is not an integer flow")
    for x, y in zip(f, ft):
        if (x - y) % q or not 0 < abs(x) < q:
            raise InvariantViolation("lifted vector does not reduce to the input")
    return LiftResult(f, iterations, current, rho)
