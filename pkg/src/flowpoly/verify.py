"""End-to-end identity checks on a single graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from .counting import (InvariantViolation, MethodMismatch, bs1_check, dual_polys,
                       flat_poset, integral_flow_poly_all, modular_flow_poly_all,
                       tutte, tutte_subset_sum)
from .flowspace import (count_integer_flows_closed, count_integer_flows_open,
                        enumerate_integer_flows_box, enumerate_modular_flows,
                        enumerate_nowhere_zero_integer, lift_modular_flow, zero_one_flows)
from .multigraph import MultiGraph, bridges, cycle_rank, cyclic_part, induced, num_components
from .orientation import (Orientation, apply_P, apply_Q, enumerate_orientations,
                          eulerian_classes, eulerian_equivalent, induced_orientation,
                          is_directed_eulerian, is_totally_cyclic)
from .polyalg import Poly, reciprocity_transform

PAIRWISE_EDGE_LIMIT = 8
Q_BIJECTION_EDGE_LIMIT = 6


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    summary: dict
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"graph": self.summary, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def graph_summary(g: MultiGraph) -> dict:
    br = sorted(bridges(g))
    c = num_components(g)
    return {"vertices": g.num_vertices, "edges": g.num_edges, "components": c,
            "rank": g.num_vertices - c, "cycle_rank": cycle_rank(g),
            "bridges": br, "bridgeless": not br}


def _poly_str(p: Poly) -> str:
    return str(p)


class _Collector:
    def __init__(self):
        self.checks: list[Check] = []

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def run(self, name: str, fn) -> None:
        """Run ``fn`` returning (passed, detail); invariant errors become failures."""
        try:
            passed, detail = fn()
        except InvariantViolation as exc:
            passed, detail = False, {"error": str(exc)}
        self.add(name, passed, **detail)


def verify(g: MultiGraph, q_max: int = 3, jobs: int = 1) -> VerificationReport:
    summary = graph_summary(g)
    if not summary["bridgeless"]:
        summary["hypothesis"] = "not met: graph has bridges"
    out = _Collector()
    n = summary["cycle_rank"]
    sign = (-1) ** n
    eps = Orientation.default(g)

    try:
        mod_reports = modular_flow_poly_all(g)
        out.add("modular_methods_agree", True, polynomial=_poly_str(mod_reports[0].poly))
    except MethodMismatch as exc:
        mod_reports = exc.reports
        out.add("modular_methods_agree", False,
                methods={r.method: _poly_str(r.poly) for r in exc.reports})
    phi = mod_reports[0].poly

    try:
        int_reports = integral_flow_poly_all(g, jobs)
        out.add("integral_methods_agree", True, polynomial=_poly_str(int_reports[0].poly))
    except MethodMismatch as exc:
        int_reports = exc.reports
        out.add("integral_methods_agree", False,
                methods={r.method: _poly_str(r.poly) for r in exc.reports})
    phi_z = next(r.poly for r in int_reports if r.method == "interp")

    T = tutte(g)
    out.add("tutte_subset_sum", T == tutte_subset_sum(g))

    def flats():
        fp = flat_poset(g)
        closed = True
        for K in fp.key_sets():
            order = sorted(K)
            part = {order[i] for i in cyclic_part(induced(g, order))}
            closed = closed and part == K
        return fp.mobius_sanity() and closed, {"flats": len(fp.keys)}
    out.run("flat_poset_mobius", flats)

    dp = dual_polys(g, jobs)
    tcs = list(dp.local)
    classes = dp.classes

    bad = [str(o) for o, lp in dp.local.items()
           if reciprocity_transform(lp.open, n) != lp.closed
           or lp.open(0) != sign or lp.closed(0) != 1]
    out.add("local_reciprocity", not bad, orientations=len(tcs), failing=bad)
    out.add("integral_reciprocity", reciprocity_transform(phi_z, n) == dp.closed_integral,
            dual=_poly_str(dp.closed_integral))
    out.add("modular_reciprocity", reciprocity_transform(phi, n) == dp.closed_modular,
            dual=_poly_str(dp.closed_modular))

    sum_all = sum((lp.open for lp in dp.local.values()), Poly())
    sum_reps = sum((dp.local[c.representative].open for c in classes), Poly())
    out.add("orientation_sum_integral", sum_all == phi_z, sum=_poly_str(sum_all))
    out.add("orientation_sum_modular", sum_reps == phi, sum=_poly_str(sum_reps))
    out.add("representative_independence", dp.closed_modular_alt == dp.closed_modular)

    n_tc = len(tcs)
    vals = {"phi(-1)": str(phi(-1)), "phi(0)": str(phi(0)), "phi_z(0)": str(phi_z(0)),
            "totally_cyclic": n_tc, "classes": len(classes),
            "T(0,1)": str(T(0, 1)), "T(0,2)": str(T(0, 2))}
    out.add("totally_cyclic_count", abs(phi(-1)) == n_tc == T(0, 2), **vals)
    out.add("class_count", abs(phi(0)) == len(classes) == T(0, 1), **vals)
    out.add("integral_constant_term", abs(phi_z(0)) == n_tc, **vals)

    all_classes = eulerian_classes(g)

    def class_sizes():
        wrong = []
        for c in all_classes:
            rep = c.representative
            closed1 = count_integer_flows_closed(g, rep, 1)
            zo = zero_one_flows(g, rep)
            if not (c.size == closed1 == len(zo)):
                wrong.append(str(rep))
        return not wrong, {"classes": len(all_classes), "failing": wrong}
    out.run("class_sizes", class_sizes)

    def zero_one():
        wrong = []
        for c in classes or all_classes[:1]:
            rep = c.representative
            found = set(zero_one_flows(g, rep))
            brute = set()
            for mask in range(1 << g.num_edges):
                X = [i for i in range(g.num_edges) if mask >> i & 1]
                if is_directed_eulerian(g, rep, X):
                    brute.add(tuple(1 if mask >> i & 1 else 0 for i in range(g.num_edges)))
            if found != brute:
                wrong.append(str(rep))
        return not wrong, {"failing": wrong}
    out.run("zero_one_flows", zero_one)

    if g.num_edges <= PAIRWISE_EDGE_LIMIT:
        def pairwise():
            label = {}
            for i, c in enumerate(all_classes):
                for o in c.members:
                    label[o] = i
            orients = list(enumerate_orientations(g))
            for a in orients:
                for b in orients:
                    if eulerian_equivalent(g, a, b) != (label[a] == label[b]):
                        return False, {"witness": [str(a), str(b)]}
            for c in all_classes:
                flags = {is_totally_cyclic(g, o) for o in c.members}
                if len(flags) != 1:
                    return False, {"mixed_class": str(c.representative)}
            return True, {"pairs": len(orients) ** 2}
        out.run("equivalence_relation", pairwise)

    if g.num_edges <= Q_BIJECTION_EDGE_LIMIT:
        def q_bijection():
            for q in range(0, min(q_max, 3) + 1):
                for c in all_classes:
                    rep = c.representative
                    src = enumerate_integer_flows_box(g, rep, 0, q)
                    for sigma in c.members:
                        image = {apply_Q(sigma, rep, f, q) for f in src} if q else set(src)
                        target = set(enumerate_integer_flows_box(g, sigma, 0, q))
                        if image != target or len(image) != len(src):
                            return False, {"q": q, "pair": [str(sigma), str(rep)]}
            return True, {}
        out.run("q_bijection", q_bijection)

    for q in range(2, q_max + 1):
        out.run(f"lifting_q{q}", lambda q=q: _lifting(g, eps, q))
        out.run(f"congruence_fibers_q{q}", lambda q=q: _fibers(g, eps, q, all_classes))
        out.run(f"flow_decomposition_q{q}", lambda q=q: _decomposition(g, eps, q))

    for q in range(1, q_max + 1):
        res = bs1_check(g, q)
        out.add(f"bs1_q{q}", res.ok, lhs=str(res.lhs), rhs=str(res.rhs), terms=len(res.terms))

    return VerificationReport(summary, out.checks)


def _lifting(g: MultiGraph, eps: Orientation, q: int):
    modular = enumerate_modular_flows(g, eps, q, nowhere_zero=True)
    iterations = 0
    for ft in modular:
        res = lift_modular_flow(g, eps, ft, q)
        iterations += res.iterations
    integer = enumerate_nowhere_zero_integer(g, eps, q)
    image = {tuple(x % q for x in f) for f in integer}
    onto = image == set(modular)
    return onto, {"modular": len(modular), "integer": len(integer),
                  "flips": iterations, "onto": onto}


def _fibers(g: MultiGraph, eps: Orientation, q: int, all_classes):
    """Congruent q-flows: equivalent induced orientations, fibers of class size."""
    members_of = {}
    for c in all_classes:
        for o in c.members:
            members_of[o] = c
    groups: dict[tuple, list] = {}
    for f in enumerate_nowhere_zero_integer(g, eps, q):
        groups.setdefault(tuple(x % q for x in f), []).append(f)
    for residue, fs in groups.items():
        induced_ = [induced_orientation(eps, f) for f in fs]
        rho = induced_[0]
        for a in induced_[1:]:
            if not eulerian_equivalent(g, rho, a):
                return False, {"residue": list(residue), "pair": [str(rho), str(a)]}
        cls = members_of[rho]
        if len(fs) != cls.size:
            return False, {"residue": list(residue), "fiber": len(fs), "class_size": cls.size}
        f = fs[0]
        base = apply_P(rho, eps, f)
        images = [apply_P(eps, sigma, apply_Q(sigma, rho, base, q)) for sigma in cls.members]
        if len(set(images)) != len(images) or set(images) != set(fs):
            return False, {"residue": list(residue), "transport": "mismatch"}
    return True, {"fibers": len(groups)}


def _decomposition(g: MultiGraph, eps: Orientation, q: int):
    """Nowhere-zero q-flows split by induced orientation into totally cyclic cones."""
    cones: dict[Orientation, int] = {}
    for f in enumerate_nowhere_zero_integer(g, eps, q):
        rho = induced_orientation(eps, f)
        cones[rho] = cones.get(rho, 0) + 1
    for rho, k in cones.items():
        if not is_totally_cyclic(g, rho):
            return False, {"non_totally_cyclic": str(rho)}
        if k != count_integer_flows_open(g, rho, q):
            return False, {"orientation": str(rho), "cone": k}
    return True, {"cones": len(cones)}
