# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free

ctypedef long long i64
ctypedef unsigned long long u64


cdef inline bint _accept(i64 *sums, int ntree, i64 lo, i64 hi, i64 modulus,
                         bint forbid_zero) nogil:
    cdef int i
    cdef i64 s, r
    for i in range(ntree):
        s = sums[i]
        if modulus > 0:
            r = s % modulus
            if r < 0:
                r += modulus
            if forbid_zero and r == 0:
                return False
        else:
            if s < lo or s > hi:
                return False
            if forbid_zero and s == 0:
                return False
    return True


cdef class _Odometer:
    cdef int ntree, ncot, nval
    cdef i64 *cm
    cdef i64 *vals
    cdef int *idx
    cdef i64 *sums

    def __cinit__(self, list rows, int ncot, list values):
        cdef int i, j
        self.ntree = len(rows)
        self.ncot = ncot
        self.nval = len(values)
        self.cm = <i64 *> malloc(sizeof(i64) * max(1, self.ntree * ncot))
        self.vals = <i64 *> malloc(sizeof(i64) * max(1, self.nval))
        self.idx = <int *> malloc(sizeof(int) * max(1, ncot))
        self.sums = <i64 *> malloc(sizeof(i64) * max(1, self.ntree))
        if not (self.cm and self.vals and self.idx and self.sums):
            raise MemoryError()
        for j in range(self.nval):
            self.vals[j] = values[j]
        for i in range(self.ntree):
            row = rows[i]
            self.sums[i] = 0
            for j in range(ncot):
                # column-major so a digit change touches one contiguous block
                self.cm[j * self.ntree + i] = row[j]
                if self.nval:
                    self.sums[i] += self.cm[j * self.ntree + i] * self.vals[0]
        for j in range(ncot):
            self.idx[j] = 0

    def __dealloc__(self):
        free(self.cm)
        free(self.vals)
        free(self.idx)
        free(self.sums)

    cdef inline bint step(self) nogil:
        """Advance to the next assignment; False once every one was visited."""
        cdef int j = 0, i
        cdef i64 delta
        cdef i64 *col
        while j < self.ncot:
            col = self.cm + j * self.ntree
            if self.idx[j] + 1 < self.nval:
                delta = self.vals[self.idx[j] + 1] - self.vals[self.idx[j]]
                self.idx[j] += 1
                for i in range(self.ntree):
                    self.sums[i] += delta * col[i]
                return True
            delta = self.vals[0] - self.vals[self.nval - 1]
            self.idx[j] = 0
            for i in range(self.ntree):
                self.sums[i] += delta * col[i]
            j += 1
        return False


def count_flows(list rows, int ncot, list values, i64 lo, i64 hi, i64 modulus,
                bint forbid_zero):
    if ncot > 0 and not values:
        return 0
    cdef _Odometer od = _Odometer(rows, ncot, values)
    cdef u64 count = 0
    with nogil:
        while True:
            if _accept(od.sums, od.ntree, lo, hi, modulus, forbid_zero):
                count += 1
            if not od.step():
                break
    return count


def list_flows(list rows, int ncot, list values, i64 lo, i64 hi, i64 modulus,
               bint forbid_zero):
    if ncot > 0 and not values:
        return []
    cdef _Odometer od = _Odometer(rows, ncot, values)
    cdef list out = []
    cdef int i, j
    cdef i64 s
    while True:
        if _accept(od.sums, od.ntree, lo, hi, modulus, forbid_zero):
            cot = tuple([od.vals[od.idx[j]] for j in range(ncot)])
            tree = []
            for i in range(od.ntree):
                s = od.sums[i]
                if modulus > 0:
                    s = s % modulus
                    if s < 0:
                        s += modulus
                tree.append(s)
            out.append((cot, tuple(tree)))
        if not od.step():
            break
    return out


def totally_cyclic_flags(int nv, list eu, list ev):
    """bytearray over masks 0..2**m-1 (bit i set = edge i reversed)."""
    cdef int m = len(eu)
    if nv > 64:
        raise ValueError("kernel supports at most 64 vertices")
    cdef int *U = <int *> malloc(sizeof(int) * max(1, m))
    cdef int *V = <int *> malloc(sizeof(int) * max(1, m))
    cdef u64 *outm = <u64 *> malloc(sizeof(u64) * max(1, nv))
    cdef u64 *inm = <u64 *> malloc(sizeof(u64) * max(1, nv))
    cdef int *parent = <int *> malloc(sizeof(int) * max(1, nv))
    cdef u64 *compmask = <u64 *> malloc(sizeof(u64) * max(1, nv))
    cdef int *roots = <int *> malloc(sizeof(int) * max(1, nv))
    if not (U and V and outm and inm and parent and compmask and roots):
        raise MemoryError()
    cdef int i, v, a, b, ra, rb, nroots = 0, k
    cdef u64 mask, total = (<u64> 1) << m
    cdef u64 reach, prev, w
    cdef bint ok
    for i in range(m):
        U[i] = eu[i]
        V[i] = ev[i]
    for v in range(nv):
        parent[v] = v
        compmask[v] = 0
    for i in range(m):
        a = U[i]
        b = V[i]
        while parent[a] != a:
            a = parent[a]
        while parent[b] != b:
            b = parent[b]
        if a != b:
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    for v in range(nv):
        a = v
        while parent[a] != a:
            a = parent[a]
        compmask[a] |= (<u64> 1) << v
        if a == v:
            roots[nroots] = v
            nroots += 1
    result = bytearray(total)
    cdef unsigned char[:] res = result
    with nogil:
        for mask in range(total):
            for v in range(nv):
                outm[v] = 0
                inm[v] = 0
            for i in range(m):
                a = U[i]
                b = V[i]
                if a == b:
                    continue
                if (mask >> i) & 1:
                    a, b = b, a
                outm[a] |= (<u64> 1) << b
                inm[b] |= (<u64> 1) << a
            ok = True
            for k in range(nroots):
                ra = roots[k]
                # forward closure
                reach = (<u64> 1) << ra
                prev = 0
                while reach != prev:
                    prev = reach
                    w = prev
                    v = 0
                    while w:
                        if w & 1:
                            reach |= outm[v]
                        w >>= 1
                        v += 1
                if reach != compmask[ra]:
                    ok = False
                    break
                reach = (<u64> 1) << ra
                prev = 0
                while reach != prev:
                    prev = reach
                    w = prev
                    v = 0
                    while w:
                        if w & 1:
                            reach |= inm[v]
                        w >>= 1
                        v += 1
                if reach != compmask[ra]:
                    ok = False
                    break
            res[mask] = 1 if ok else 0
    free(U)
    free(V)
    free(outm)
    free(inm)
    free(parent)
    free(compmask)
    free(roots)
    return result


def subset_ranks(int nv, list eu, list ev):
    """bytearray over edge masks: rank |V| - c of the spanning subgraph."""
    cdef int m = len(eu)
    cdef int *U = <int *> malloc(sizeof(int) * max(1, m))
    cdef int *V = <int *> malloc(sizeof(int) * max(1, m))
    cdef int *parent = <int *> malloc(sizeof(int) * max(1, nv))
    if not (U and V and parent):
        raise MemoryError()
    cdef int i, v, a, b, r
    cdef u64 mask, total = (<u64> 1) << m
    for i in range(m):
        U[i] = eu[i]
        V[i] = ev[i]
    result = bytearray(total)
    cdef unsigned char[:] res = result
    with nogil:
        for mask in range(total):
            for v in range(nv):
                parent[v] = v
            r = 0
            for i in range(m):
                if not ((mask >> i) & 1):
                    continue
                a = U[i]
                b = V[i]
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[b] = a
                    r += 1
            res[mask] = r
    free(U)
    free(V)
    free(parent)
    return result


def cyclic_masks(ranks, int m):
    """Sorted distinct cyclic parts {e in Y : r(Y - e) = r(Y)} over all Y."""
    cdef const unsigned char[:] rk = ranks
    cdef u64 mask, total = (<u64> 1) << m, key, bit
    cdef int i
    seen = set()
    for mask in range(total):
        key = 0
        for i in range(m):
            bit = (<u64> 1) << i
            if (mask & bit) and rk[mask ^ bit] == rk[mask]:
                key |= bit
        seen.add(key)
    return sorted(seen)


def rank_histogram(ranks, int m):
    """hist[size][rank] = number of edge subsets with that size and rank."""
    cdef const unsigned char[:] rk = ranks
    cdef u64 mask, total = (<u64> 1) << m, x
    cdef int size
    hist = [[0] * (m + 1) for _ in range(m + 1)]
    cdef i64 *h = <i64 *> malloc(sizeof(i64) * (m + 1) * (m + 1))
    if not h:
        raise MemoryError()
    for size in range((m + 1) * (m + 1)):
        h[size] = 0
    with nogil:
        for mask in range(total):
            x = mask
            size = 0
            while x:
                x &= x - 1
                size += 1
            h[size * (m + 1) + rk[mask]] += 1
    for size in range(m + 1):
        for x in range(m + 1):
            hist[size][x] = h[size * (m + 1) + x]
    free(h)
    return hist
