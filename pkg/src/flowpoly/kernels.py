"""Backend selection for the enumeration kernels.

The compiled extension is used when it imports; setting
``FLOWPOLY_PURE_PYTHON=1`` forces the pure-Python twin.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _pykernels
from .errors import check_enum

_pure = _pykernels
try:
    if os.environ.get("FLOWPOLY_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _pure}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

DEFAULT = "cython" if _compiled is not None else "python"


def backend(name: str | None = None):
    return BACKENDS[name or DEFAULT]


def _canonical(rows, ncot, values, lo, hi, modulus, forbid_zero):
    """Reduce a counting problem without changing its count.

    Returns ``(factor, rows, ncot)`` or ``None`` if the count is zero.
    Zero columns are independent coordinates; zero rows are constant 0;
    duplicate rows repeat a constraint; row and column order is irrelevant.
    """
    cols = [tuple(r[j] for r in rows) for j in range(ncot)]
    live = [c for c in cols if any(c)]
    factor = len(values) ** (ncot - len(live))
    zero_ok = not forbid_zero and (modulus > 0 or lo <= 0 <= hi)
    kept = set()
    for i in range(len(rows)):
        row = tuple(c[i] for c in live)
        if not any(row):
            if not zero_ok:
                return None
            continue
        kept.add(row)
    if not kept:
        return factor, (), len(live)
    # sort columns after restricting to surviving rows
    order = sorted(kept)
    cols2 = sorted(tuple(r[j] for r in order) for j in range(len(live)))
    new_rows = tuple(sorted(tuple(c[i] for c in cols2) for i in range(len(order))))
    return factor, new_rows, len(live)


@lru_cache(maxsize=65536)
def _count_cached(rows, ncot, values, lo, hi, modulus, forbid_zero, name):
    return backend(name).count_flows([list(r) for r in rows], ncot, list(values),
                                     lo, hi, modulus, forbid_zero)


def count_flows(rows, ncot, values, lo=0, hi=0, modulus=0, forbid_zero=False,
                *, name: str | None = None) -> int:
    values = tuple(values)
    if ncot > 0 and not values:
        return 0
    reduced = _canonical(rows, ncot, values, lo, hi, modulus, forbid_zero)
    if reduced is None:
        return 0
    factor, rows2, ncot2 = reduced
    if not rows2:
        return factor * len(values) ** ncot2
    check_enum(len(values) ** ncot2)
    return factor * _count_cached(rows2, ncot2, values, lo, hi, modulus,
                                  bool(forbid_zero), name or DEFAULT)


def list_flows(rows, ncot, values, lo=0, hi=0, modulus=0, forbid_zero=False,
               *, name: str | None = None):
    return backend(name).list_flows([list(r) for r in rows], ncot, list(values),
                                    lo, hi, modulus, bool(forbid_zero))


def totally_cyclic_flags(nv, eu, ev, *, name: str | None = None) -> bytearray:
    be = backend(name)
    if nv > 64:
        be = _pure
    return be.totally_cyclic_flags(nv, list(eu), list(ev))


def subset_ranks(nv, eu, ev, *, name: str | None = None) -> bytearray:
    return backend(name).subset_ranks(nv, list(eu), list(ev))


def cyclic_masks(ranks, m, *, name: str | None = None) -> list[int]:
    return backend(name).cyclic_masks(ranks, m)


def rank_histogram(ranks, m, *, name: str | None = None) -> list[list[int]]:
    return backend(name).rank_histogram(ranks, m)
