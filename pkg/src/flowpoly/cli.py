"""Command-line interface.

JSON on stdout is the canonical output; ``--format text`` renders the same
data for people.  Exit codes: 0 success, 1 identity failure, 2 parse or
usage error, 3 resource cap exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting
from .errors import DomainError, InvariantViolation, ResourceLimitError, limits
from .flowspace import FlowVector, lift_modular_flow
from .multigraph import GraphFormatError, load_graph
from .orientation import (Orientation, enumerate_orientations, eulerian_classes,
                          find_directed_cut, totally_cyclic_orientations)
from .polyalg import BiPoly, Poly
from .verify import graph_summary, verify

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3, 4

MODULAR_CHOICES = counting.MODULAR_METHODS + ("all",)
INTEGRAL_CHOICES = ("sum-orientations", "interp", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class IdentityFailure(Exception):
    """Carries a report whose identities did not all hold."""

    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


# -- rendering ---------------------------------------------------------------

def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        if obj.get("var") == "t" and "coeffs" in obj:
            return [pad + str(Poly.from_json(obj))]
        if obj.get("vars") == ["x", "y"]:
            return [pad + str(BiPoly.from_json(obj))]
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _is_leaf(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_leaf(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for item in obj:
            if isinstance(item, list) and _is_leaf(item):
                lines.append(pad + "- " + _leaf(item))
                continue
            sub = _render_text(item, indent + 1)
            if sub:
                lines.append(pad + "- " + sub[0].lstrip())
                lines.extend(sub[1:])
        return lines
    return [pad + _leaf(obj)]


def _is_leaf(v) -> bool:
    if isinstance(v, dict):
        return (v.get("var") == "t" and "coeffs" in v) or v.get("vars") == ["x", "y"]
    return all(not isinstance(x, (dict, list)) for x in v)


def _leaf(v) -> str:
    if isinstance(v, dict):
        return _render_text(v)[0]
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(payload: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "text":
        stream.write("\n".join(_render_text(payload)) + "\n")
    else:
        stream.write(json.dumps(payload, indent=2) + "\n")


# -- commands ----------------------------------------------------------------

def _orientation_arg(g, bits: str) -> Orientation:
    rho = Orientation.parse(bits)
    if len(rho) != g.num_edges:
        raise DomainError(f"orientation has {len(rho)} bits, graph has {g.num_edges} edges")
    return rho


def cmd_info(g, args) -> dict:
    return {"graph": graph_summary(g)}


def cmd_tutte(g, args) -> dict:
    tv = counting.tutte_specializations(g)
    return {"tutte": counting.tutte(g).to_json(),
            "T(0,1)": str(tv["T(0,1)"]), "T(0,2)": str(tv["T(0,2)"]),
            "flow": tv["flow"].to_json(), "dual_flow": tv["dual_flow"].to_json()}


def _methods_payload(reports, timing: bool) -> dict:
    agree = len({r.poly for r in reports}) == 1
    return {"polynomial": reports[0].poly.to_json(), "agree": agree,
            "reports": [r.to_json(timing) for r in reports]}


def cmd_modular(g, args) -> dict:
    if args.method == "all":
        reports = [counting.modular_flow_poly(g, m) for m in counting.MODULAR_METHODS]
        out = {"method": "all", **_methods_payload(reports, args.timing)}
        if not out["agree"]:
            raise IdentityFailure("modular flow polynomial methods disagree", out)
        return out
    rep = counting.modular_flow_poly(g, args.method)
    return {"method": args.method, "polynomial": rep.poly.to_json(),
            "reports": [rep.to_json(args.timing)]}


def cmd_integral(g, args) -> dict:
    if args.method == "all":
        reports = [counting.integral_flow_poly(g, m, args.jobs) for m in counting.INTEGRAL_METHODS]
        out = {"method": "all", **_methods_payload(reports, args.timing)}
        if not out["agree"]:
            raise IdentityFailure("integral flow polynomial methods disagree", out)
    else:
        method = args.method.replace("-", "_")
        rep = counting.integral_flow_poly(g, method, args.jobs)
        out = {"method": args.method, "polynomial": rep.poly.to_json(),
               "reports": [rep.to_json(args.timing)]}
    if args.dual:
        dp = counting.dual_polys(g, args.jobs)
        recip = counting.modular_dual_flow_poly_from_reciprocity(g)
        out["dual"] = dp.to_json()
        out["dual"]["closed_modular_from_reciprocity"] = recip.to_json()
        out["dual"]["reciprocity_holds"] = recip == dp.closed_modular
        if recip != dp.closed_modular:
            raise IdentityFailure("dual modular polynomial differs from reciprocity", out)
    return out


def cmd_local(g, args) -> dict:
    rho = _orientation_arg(g, args.orientation)
    return counting.local_flow_polys(g, rho).to_json()


def cmd_orientations(g, args) -> dict:
    if args.totally_cyclic:
        pool = totally_cyclic_orientations(g)
    else:
        pool = list(enumerate_orientations(g))
    items = []
    for o in pool:
        cut = find_directed_cut(g, o)
        entry = {"bits": str(o), "totally_cyclic": cut is None}
        if cut is not None:
            entry["directed_cut"] = {"side": [g.vertices[v] for v in sorted(cut.side)],
                                     "edges": list(cut.edges)}
        items.append(entry)
    out = {"count": len(items), "orientations": items}
    if args.classes:
        classes = eulerian_classes(g, only_totally_cyclic=args.totally_cyclic)
        out["classes"] = [c.to_json() for c in classes]
        out["class_sizes"] = [c.size for c in classes]
    return out


def cmd_lift(g, args) -> dict:
    eps = _orientation_arg(g, args.orientation)
    try:
        raw = json.loads(args.flow)
    except json.JSONDecodeError as exc:
        raise DomainError(f"--flow is not valid JSON: {exc.msg}") from exc
    fv = FlowVector.from_json(raw)
    q = args.mod if args.mod is not None else fv.modulus
    if q is None:
        raise DomainError("a modulus is required (--mod or 'mod' in the flow object)")
    if fv.modulus is not None and fv.modulus != q:
        raise DomainError(f"--mod {q} conflicts with flow modulus {fv.modulus}")
    values = tuple(x % q for x in fv.values)
    res = lift_modular_flow(g, eps, values, q)
    return {"input": FlowVector(values, q).to_json(), "flow": list(res.flow),
            "iterations": res.iterations, "orientation": str(res.orientation)}


def cmd_verify(g, args) -> dict:
    report = verify(g, args.qmax, args.jobs)
    out = report.to_json()
    if not report.passed:
        raise IdentityFailure(
            "identities failed: " + ", ".join(c.name for c in report.failures()), out)
    return out


COMMANDS = {"info": cmd_info, "tutte": cmd_tutte, "modular": cmd_modular,
            "integral": cmd_integral, "local": cmd_local,
            "orientations": cmd_orientations, "lift": cmd_lift, "verify": cmd_verify}


# -- argument parsing ----------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _common(suppress: bool) -> argparse.ArgumentParser:
    # options may appear before or after the command; the copy attached to
    # each command must not overwrite values given earlier
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=d("json"))
    common.add_argument("--jobs", type=_positive, default=d(1), help="worker processes")
    common.add_argument("--max-edges", type=_positive, default=d(None), help="edge cap")
    common.add_argument("--max-enum", type=_positive, default=d(None),
                        help="enumeration size cap")
    common.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall times")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flowpoly", description="Exact flow polynomials of multigraphs.",
                     parents=[_common(False)])
    common = _common(True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("graph", help="graph JSON file")
        return p

    add("info", "graph summary")
    add("tutte", "Tutte polynomial and its specializations")
    p = add("modular", "modular flow polynomial")
    p.add_argument("--method", choices=MODULAR_CHOICES, default="tutte")
    p = add("integral", "integral flow polynomial")
    p.add_argument("--method", choices=INTEGRAL_CHOICES, default="interp")
    p.add_argument("--dual", action="store_true", help="also report dual polynomials")
    p = add("local", "local polynomials of one orientation")
    p.add_argument("--orientation", required=True, help="bitstring in edge order")
    p = add("orientations", "enumerate orientations")
    p.add_argument("--totally-cyclic", action="store_true")
    p.add_argument("--classes", action="store_true", help="group into Eulerian classes")
    p = add("lift", "lift a nowhere-zero modular flow to an integer flow")
    p.add_argument("--orientation", required=True)
    p.add_argument("--flow", required=True, help="JSON array or {'values': [...], 'mod': q}")
    p.add_argument("--mod", type=_positive)
    p = add("verify", "check every identity on the graph")
    p.add_argument("--qmax", type=_positive, default=3)
    return parser


def _error(fmt: str, code: int, message: str, **extra) -> int:
    # errors stay machine-readable in either format
    emit({"error": message, "exit_code": code, **extra}, "json")
    if fmt == "text":
        sys.stderr.write(f"error: {message}\n")
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--format=text" in argv or _follows(argv, "--format", "text") else "json"
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error(fmt, EXIT_USAGE, str(exc), kind="usage")
    fmt = args.format
    caps = {}
    if args.max_edges:
        caps["max_edges"] = args.max_edges
    if args.max_enum:
        caps["max_enum"] = args.max_enum
    try:
        with limits(**caps):
            g = load_graph(args.graph)
            payload = COMMANDS[args.command](g, args)
    except GraphFormatError as exc:
        return _error(fmt, EXIT_USAGE, str(exc), kind="parse", location=exc.location)
    except OSError as exc:
        return _error(fmt, EXIT_USAGE, f"cannot read {args.graph}: {exc.strerror}", kind="io")
    except DomainError as exc:
        return _error(fmt, EXIT_USAGE, str(exc), kind="domain")
    except ResourceLimitError as exc:
        return _error(fmt, EXIT_RESOURCE, str(exc), kind="resource",
                      cap=exc.cap_name, limit=exc.cap, requested=exc.requested)
    except IdentityFailure as exc:
        payload = {"error": str(exc), "exit_code": EXIT_IDENTITY, **exc.payload}
        emit(payload, fmt)
        return EXIT_IDENTITY
    except InvariantViolation as exc:
        return _error(fmt, EXIT_INVARIANT, str(exc), kind="invariant")
    emit(payload, fmt)
    return EXIT_OK


def _follows(argv, flag, value) -> bool:
    return any(a == flag and b == value for a, b in zip(argv, argv[1:]))


if __name__ == "__main__":
    sys.exit(main())
