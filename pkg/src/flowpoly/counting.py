"""Flow polynomial pipelines.

The modular flow polynomial is computed four independent ways (Tutte
specialization, subset expansion, interpolation of enumerated counts,
Moebius sum over the flat poset).  Integral, local and dual polynomials
come from Ehrhart-style interpolation of exact lattice-point counts.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from . import kernels
from .errors import DomainError, InvariantViolation, check_edges, check_subsets
from .flowspace import (count_integer_flows_closed, count_integer_flows_open,
                        count_modular_flows, count_nowhere_zero_integer)
from .multigraph import MultiGraph, bridges, contract, cycle_rank, induced
from .orientation import (Orientation, OrientationClass, count_totally_cyclic,
                          eulerian_classes, is_totally_cyclic,
                          totally_cyclic_orientations)
from .polyalg import (BiPoly, Poly, binomial, binomial_poly, lagrange_interpolate,
                      reciprocity_transform)

MODULAR_METHODS = ("tutte", "subset", "interp", "charpoly")
INTEGRAL_METHODS = ("sum_orientations", "interp")


@dataclass
class MethodReport:
    method: str
    poly: Poly
    samples: list[tuple[int, int]] | None = None
    millis: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"method": self.method, "polynomial": self.poly.to_json()}
        if self.samples is not None:
            out["samples"] = [[q, c] for q, c in self.samples]
        if timing:
            out["millis"] = round(self.millis, 3)
        return out


def _timed(method: str, fn: Callable[[], tuple[Poly, list | None]]) -> MethodReport:
    start = time.perf_counter()
    poly, samples = fn()
    return MethodReport(method, poly, samples, (time.perf_counter() - start) * 1000.0)


def interpolate_counts(count: Callable[[int], int], start: int, degree: int,
                       what: str = "counting function") -> tuple[Poly, list[tuple[int, int]]]:
    """Interpolate ``count`` at start..start+degree and confirm one more sample."""
    samples = [(q, count(q)) for q in range(start, start + degree + 1)]
    poly = lagrange_interpolate(samples, degree)
    extra = start + degree + 1
    got = count(extra)
    if poly(extra) != got:
        raise InvariantViolation(
            f"{what} is not a polynomial of degree {degree}: predicted {poly(extra)} at {extra}, counted {got}")
    return poly, samples + [(extra, got)]


def _edge_arrays(g: MultiGraph) -> tuple[list[int], list[int]]:
    return [u for u, _ in g.edges], [v for _, v in g.edges]


def _subset_ranks(g: MultiGraph):
    check_subsets(g.num_edges)
    eu, ev = _edge_arrays(g)
    return kernels.subset_ranks(g.num_vertices, eu, ev)


# -- Tutte polynomial ------------------------------------------------------

class _Dsu:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x


def _bridges_raw(nv: int, edges) -> set[int]:
    adj = [[] for _ in range(nv)]
    for i, (u, v) in enumerate(edges):
        if u != v:
            adj[u].append((v, i))
            adj[v].append((u, i))
    disc = [-1] * nv
    low = [0] * nv
    out = set()
    t = 0
    for root in range(nv):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            for w, i in it:
                if i == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, i, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(pe)
    return out


def _normalize(edges) -> tuple:
    """Relabel vertices by (degree desc, first appearance) and sort edges."""
    deg: dict[int, int] = {}
    order: dict[int, int] = {}
    for u, v in edges:
        for x in (u, v):
            deg[x] = deg.get(x, 0) + 1
            order.setdefault(x, len(order))
    ranked = sorted(deg, key=lambda x: (-deg[x], order[x]))
    relabel = {x: i for i, x in enumerate(ranked)}
    return tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))


def _memo_key(edges) -> tuple:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    pairs = sorted(tuple(sorted((deg[u], deg[v]))) for u, v in edges)
    return (tuple(sorted(deg.values())), tuple(pairs))


class _TutteMemo:
    """Degree-refined key; entries under one key are told apart by exact comparison."""

    def __init__(self):
        self.table: dict[tuple, list[tuple[tuple, BiPoly]]] = {}

    def get(self, norm):
        for other, value in self.table.get(_memo_key(norm), ()):
            if other == norm:
                return value
        return None

    def put(self, norm, value):
        self.table.setdefault(_memo_key(norm), []).append((norm, value))


def _tutte_rec(edges: tuple, memo: _TutteMemo) -> BiPoly:
    loops = sum(1 for u, v in edges if u == v)
    edges = tuple((u, v) for u, v in edges if u != v)
    if not edges:
        return BiPoly.one().shift(0, loops)
    norm = _normalize(edges)
    hit = memo.get(norm)
    if hit is None:
        nv = 1 + max(max(u, v) for u, v in norm)
        br = _bridges_raw(nv, norm)
        if br:
            # contracting bridges neither creates loops nor changes other bridges
            dsu = _Dsu(nv)
            for i in br:
                u, v = norm[i]
                ru, rv = dsu.find(u), dsu.find(v)
                dsu.p[max(ru, rv)] = min(ru, rv)
            rest = tuple((dsu.find(u), dsu.find(v)) for i, (u, v) in enumerate(norm) if i not in br)
            hit = _tutte_rec(rest, memo).shift(len(br), 0)
        else:
            u, v = norm[0]
            deleted = norm[1:]
            contracted = tuple((u if a == v else a, u if b == v else b) for a, b in norm[1:])
            hit = _tutte_rec(deleted, memo) + _tutte_rec(contracted, memo)
        memo.put(norm, hit)
    return hit.shift(0, loops)


def tutte(g: MultiGraph) -> BiPoly:
    """Tutte polynomial by memoized deletion-contraction."""
    check_edges(g.num_edges)
    return _tutte_rec(tuple(g.edges), _TutteMemo())


def _x_minus_1_pow(a: int, b: int) -> BiPoly:
    """(x-1)**a * (y-1)**b."""
    terms = {}
    for i in range(a + 1):
        for j in range(b + 1):
            terms[(i, j)] = binomial(a, i) * binomial(b, j) * (-1) ** ((a - i) + (b - j))
    return BiPoly(terms)


def tutte_subset_sum(g: MultiGraph) -> BiPoly:
    """Tutte polynomial from the rank-generating subset expansion."""
    ranks = _subset_ranks(g)
    m = g.num_edges
    hist = kernels.rank_histogram(ranks, m)
    r_full = ranks[(1 << m) - 1] if m else 0
    out = BiPoly()
    for size in range(m + 1):
        for r in range(m + 1):
            c = hist[size][r]
            if c:
                out = out + _x_minus_1_pow(r_full - r, size - r) * c
    return out


# -- flat poset -------------------------------------------------------------

@dataclass
class FlatPoset:
    """Flats of the flow arrangement keyed by cyclic-part edge masks."""

    num_edges: int
    keys: list[int]
    rank: dict[int, int]
    top: int
    mobius: dict[int, int]  # mu(x, top)

    def leq(self, x: int, y: int) -> bool:
        return x & y == x

    def characteristic_polynomial(self) -> Poly:
        out = [0] * (max(self.rank.values()) + 1)
        for k in self.keys:
            out[self.rank[k]] += self.mobius[k]
        return Poly(out)

    def mobius_sanity(self) -> bool:
        if self.mobius[self.top] != 1:
            return False
        for x in self.keys:
            if x == self.top:
                continue
            if sum(self.mobius[z] for z in self.keys if self.leq(x, z)) != 0:
                return False
        return True

    def key_sets(self) -> list[frozenset]:
        return [frozenset(i for i in range(self.num_edges) if k >> i & 1) for k in self.keys]


def flat_poset(g: MultiGraph) -> FlatPoset:
    ranks = _subset_ranks(g)
    m = g.num_edges
    keys = kernels.cyclic_masks(ranks, m)
    full = (1 << m) - 1
    top = sum(1 << i for i in range(m) if ranks[full ^ (1 << i)] == ranks[full])
    rk = {k: bin(k).count("1") - ranks[k] for k in keys}
    ordered = sorted(keys, key=lambda k: -bin(k).count("1"))
    mu: dict[int, int] = {}
    for x in ordered:
        if x == top:
            mu[x] = 1
            continue
        mu[x] = -sum(mu[z] for z in mu if z != x and x & z == x)
    return FlatPoset(m, keys, rk, top, mu)


# -- modular flow polynomial ------------------------------------------------

def _modular_tutte(g: MultiGraph):
    n = cycle_rank(g)
    t = tutte(g)
    return t.substitute(Poly(), Poly([1, -1])) * (-1) ** n, None


def _modular_subset(g: MultiGraph):
    ranks = _subset_ranks(g)
    m = g.num_edges
    hist = kernels.rank_histogram(ranks, m)
    coeffs = [0] * (m + 1)
    for size in range(m + 1):
        for r in range(m + 1):
            c = hist[size][r]
            if c:
                coeffs[size - r] += c * (-1) ** (m - size)
    return Poly(coeffs), None


def _modular_interp(g: MultiGraph):
    eps = Orientation.default(g)
    n = cycle_rank(g)
    return interpolate_counts(lambda q: count_modular_flows(g, eps, q, nowhere_zero=True),
                              1, n, "nowhere-zero modular count")


def _modular_charpoly(g: MultiGraph):
    fp = flat_poset(g)
    if bridges(g):
        # a bridge vanishes on every flow, so its "hyperplane" is the whole
        # space and the complement is empty
        return Poly(), None
    return fp.characteristic_polynomial(), None


_MODULAR = {"tutte": _modular_tutte, "subset": _modular_subset,
            "interp": _modular_interp, "charpoly": _modular_charpoly}


def modular_flow_poly(g: MultiGraph, method: str = "tutte") -> MethodReport:
    check_edges(g.num_edges)
    try:
        fn = _MODULAR[method]
    except KeyError:
        raise DomainError(f"unknown modular method {method!r}; choose from {', '.join(MODULAR_METHODS)}") from None
    return _timed(method, lambda: fn(g))


def modular_flow_poly_all(g: MultiGraph) -> list[MethodReport]:
    """Run every method; raises InvariantViolation if they disagree."""
    reports = [modular_flow_poly(g, m) for m in MODULAR_METHODS]
    _assert_agree(reports)
    return reports


class MethodMismatch(InvariantViolation):
    def __init__(self, reports):
        self.reports = reports
        body = "; ".join(f"{r.method}: {r.poly}" for r in reports)
        super().__init__(f"methods disagree: {body}")


def _assert_agree(reports) -> None:
    if len({r.poly for r in reports}) > 1:
        raise MethodMismatch(reports)


# -- local, integral and dual polynomials ------------------------------------

@dataclass
class LocalPolys:
    orientation: Orientation
    open: Poly
    closed: Poly
    totally_cyclic: bool
    open_samples: list[tuple[int, int]] = field(default_factory=list)
    closed_samples: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"orientation": str(self.orientation),
               "totally_cyclic": self.totally_cyclic,
               "open": self.open.to_json(),
               "closed": self.closed.to_json(),
               "open_samples": [list(s) for s in self.open_samples],
               "closed_samples": [list(s) for s in self.closed_samples]}
        if not self.totally_cyclic:
            out["warning"] = "orientation has a directed cut; open polynomial is zero"
        return out


def local_flow_polys(g: MultiGraph, rho: Orientation) -> LocalPolys:
    """Open and closed lattice-point polynomials of (g, rho)."""
    check_edges(g.num_edges)
    if len(rho) != g.num_edges:
        raise DomainError(f"orientation has {len(rho)} bits, graph has {g.num_edges} edges")
    n = cycle_rank(g)
    tc = is_totally_cyclic(g, rho)
    open_poly, open_samples = interpolate_counts(
        lambda q: count_integer_flows_open(g, rho, q), 1, n, f"open count of {rho}")
    closed_poly, closed_samples = interpolate_counts(
        lambda q: count_integer_flows_closed(g, rho, q), 0, n, f"closed count of {rho}")
    if not tc and not open_poly.is_zero():
        raise InvariantViolation(f"orientation {rho} has a directed cut but positive flows")
    return LocalPolys(rho, open_poly, closed_poly, tc, open_samples, closed_samples)


def _local_worker(args):
    g, bits = args
    return local_flow_polys(g, Orientation(bits))


def local_polys_for(g: MultiGraph, orientations, jobs: int = 1) -> list[LocalPolys]:
    """Local polynomials for each orientation, in input order."""
    orientations = list(orientations)
    if jobs > 1 and len(orientations) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_local_worker, [(g, o.bits) for o in orientations]))
    return [local_flow_polys(g, o) for o in orientations]


def _integral_sum(g: MultiGraph, jobs: int = 1):
    total = Poly()
    for lp in local_polys_for(g, totally_cyclic_orientations(g), jobs):
        total = total + lp.open
    return total, None


def _integral_interp(g: MultiGraph):
    eps = Orientation.default(g)
    n = cycle_rank(g)
    return interpolate_counts(lambda q: count_nowhere_zero_integer(g, eps, q),
                              1, n, "nowhere-zero integer count")


def integral_flow_poly(g: MultiGraph, method: str = "interp", jobs: int = 1) -> MethodReport:
    check_edges(g.num_edges)
    if method == "sum_orientations":
        return _timed(method, lambda: _integral_sum(g, jobs))
    if method == "interp":
        return _timed(method, lambda: _integral_interp(g))
    raise DomainError(f"unknown integral method {method!r}; choose from {', '.join(INTEGRAL_METHODS)}")


def integral_flow_poly_all(g: MultiGraph, jobs: int = 1) -> list[MethodReport]:
    reports = [integral_flow_poly(g, m, jobs) for m in INTEGRAL_METHODS]
    _assert_agree(reports)
    return reports


@dataclass
class DualPolys:
    closed_integral: Poly
    closed_modular: Poly
    closed_modular_alt: Poly
    classes: list[OrientationClass]
    local: dict[Orientation, LocalPolys]

    def to_json(self) -> dict:
        return {
            "closed_integral": self.closed_integral.to_json(),
            "closed_modular": self.closed_modular.to_json(),
            "classes": [{"representative": str(c.representative), "size": c.size,
                         "closed": self.local[c.representative].closed.to_json()}
                        for c in self.classes],
        }


def dual_polys(g: MultiGraph, jobs: int = 1) -> DualPolys:
    """Dual integral and dual modular polynomials as orientation/class sums.

    The class sum is recomputed with the lexicographically greatest member
    of each class as representative; the two must agree.
    """
    check_edges(g.num_edges)
    tcs = totally_cyclic_orientations(g)
    local = dict(zip(tcs, local_polys_for(g, tcs, jobs)))
    classes = eulerian_classes(g, only_totally_cyclic=True)
    closed_integral = sum((lp.closed for lp in local.values()), Poly())
    closed_modular = sum((local[c.representative].closed for c in classes), Poly())
    alt = sum((local[c.members[-1]].closed for c in classes), Poly())
    if alt != closed_modular:
        raise InvariantViolation("dual modular polynomial depends on class representatives")
    return DualPolys(closed_integral, closed_modular, alt, classes, local)


def modular_dual_flow_poly_from_reciprocity(g: MultiGraph) -> Poly:
    return reciprocity_transform(modular_flow_poly(g, "tutte").poly, cycle_rank(g))


def tutte_specializations(g: MultiGraph) -> dict:
    n = cycle_rank(g)
    t = tutte(g)
    return {
        "T(0,1)": t(0, 1),
        "T(0,2)": t(0, 2),
        "flow": t.substitute(Poly(), Poly([1, -1])) * (-1) ** n,
        "dual_flow": t.substitute(Poly(), Poly([1, 1])),
    }


# -- the subset/contraction identity ----------------------------------------

@dataclass
class BS1Result:
    q: int
    lhs: Fraction
    rhs: int
    terms: list[dict]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"q": self.q, "lhs": str(self.lhs), "rhs": str(self.rhs), "ok": self.ok,
                "terms": self.terms}


def bs1_check(g: MultiGraph, q: int) -> BS1Result:
    """phi(G,-q) against (-1)^n sum_X phi(<X>,q) * #totally-cyclic(G/X)."""
    if q < 1:
        raise DomainError("q must be >= 1")
    check_subsets(g.num_edges)
    m = g.num_edges
    n = cycle_rank(g)
    lhs = modular_flow_poly(g, "tutte").poly(-q)
    total = 0
    terms = []
    for mask in range(1 << m):
        X = [i for i in range(m) if mask >> i & 1]
        sub = induced(g, X)
        nz = count_modular_flows(sub, Orientation.default(sub), q, nowhere_zero=True)
        if not nz:
            continue
        quotient = contract(g, X)
        tc = count_totally_cyclic(quotient)
        if not tc:
            continue
        total += nz * tc
        terms.append({"X": X, "flows": nz, "totally_cyclic_quotient": tc})
    return BS1Result(q, lhs, (-1) ** n * total, terms)


# -- B_n fixtures -------------------------------------------------------------

def s_n_closed_form(n: int, q: int) -> int:
    """Integer solutions of y_1+...+y_n = n(q-1) with 0 <= y_i <= 2q-2.

    Inclusion-exclusion over the variables forced to be >= 2q-1.  The
    j = 1 term equals C((n-2)q, n-1); from j = 2 on the shifted variables
    keep their own slack, so the general term is C(nq-1-j(2q-1), n-1).
    """
    if n < 0 or q < 1:
        raise DomainError("need n >= 0 and q >= 1")
    if n == 0:
        return 1
    total = binomial(n * q - 1, n - 1)
    for j in range(1, n * (q - 1) // (2 * q - 1) + 1):
        total += (-1) ** j * binomial(n, j) * binomial(n * q - 1 - j * (2 * q - 1), n - 1)
    return total


def s_n_brute(n: int, q: int) -> int:
    target = n * (q - 1)
    return sum(1 for ys in product(range(2 * q - 1), repeat=n) if sum(ys) == target)


def s_n_poly(n: int) -> Poly:
    """s_n as a polynomial in q (valid for q >= 1).

    Terms with j <= n/2 have a nonnegative top argument for every q >= 1,
    so the polynomial binomials vanish exactly where the counts do.
    """
    if n == 0:
        return Poly([1])
    qv = Poly.t()
    out = binomial_poly(qv * n - 1, n - 1)
    for j in range(1, n // 2 + 1):
        top = qv * (n - 2 * j) + (j - 1)
        out = out + binomial_poly(top, n - 1) * ((-1) ** j * binomial(n, j))
    return out
