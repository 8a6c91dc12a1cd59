"""Pure-Python enumeration kernels; reference twins of ``_ckernels``."""

from __future__ import annotations

from itertools import product


def _accept(sums, lo, hi, modulus, forbid_zero):
    if modulus > 0:
        if forbid_zero:
            return all(s % modulus for s in sums)
        return True
    for s in sums:
        if s < lo or s > hi or (forbid_zero and s == 0):
            return False
    return True


def _sums(rows, a):
    return [sum(c * x for c, x in zip(row, a) if c) for row in rows]


def count_flows(rows, ncot, values, lo, hi, modulus, forbid_zero):
    """Count co-tree assignments over ``values`` whose derived tree values pass.

    ``rows[i][j]`` is the coefficient of co-tree coordinate j in tree edge i.
    With ``modulus > 0`` tree values are reduced mod it (``lo``/``hi``
    ignored); otherwise they must lie in ``[lo, hi]``.
    """
    if ncot > 0 and not values:
        return 0
    count = 0
    for a in product(values, repeat=ncot):
        if _accept(_sums(rows, a), lo, hi, modulus, forbid_zero):
            count += 1
    return count


def list_flows(rows, ncot, values, lo, hi, modulus, forbid_zero):
    """As count_flows, returning (cotree_values, tree_values) pairs."""
    if ncot > 0 and not values:
        return []
    out = []
    for a in product(values, repeat=ncot):
        sums = _sums(rows, a)
        if _accept(sums, lo, hi, modulus, forbid_zero):
            if modulus > 0:
                sums = [s % modulus for s in sums]
            out.append((tuple(a), tuple(sums)))
    return out


def _closure(start, adj):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def totally_cyclic_flags(nv, eu, ev):
    m = len(eu)
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in zip(eu, ev):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, set] = {}
    for v in range(nv):
        comps.setdefault(find(v), set()).add(v)
    out = bytearray(1 << m)
    for mask in range(1 << m):
        fwd = [[] for _ in range(nv)]
        bwd = [[] for _ in range(nv)]
        for i in range(m):
            a, b = eu[i], ev[i]
            if a == b:
                continue
            if (mask >> i) & 1:
                a, b = b, a
            fwd[a].append(b)
            bwd[b].append(a)
        ok = all(_closure(r, fwd) == c and _closure(r, bwd) == c for r, c in comps.items())
        out[mask] = 1 if ok else 0
    return out


def subset_ranks(nv, eu, ev):
    m = len(eu)
    out = bytearray(1 << m)
    for mask in range(1 << m):
        parent = list(range(nv))
        r = 0
        for i in range(m):
            if not (mask >> i) & 1:
                continue
            a, b = eu[i], ev[i]
            while parent[a] != a:
                a = parent[a]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                parent[b] = a
                r += 1
        out[mask] = r
    return out


def cyclic_masks(ranks, m):
    seen = set()
    for mask in range(1 << m):
        key = 0
        for i in range(m):
            bit = 1 << i
            if mask & bit and ranks[mask ^ bit] == ranks[mask]:
                key |= bit
        seen.add(key)
    return sorted(seen)


def rank_histogram(ranks, m):
    hist = [[0] * (m + 1) for _ in range(m + 1)]
    for mask in range(1 << m):
        hist[bin(mask).count("1")][ranks[mask]] += 1
    return hist
