"""Finite permutation groups from generators.

Enumeration is breadth-first closure over a numpy element table; there is no
stabilizer-chain machinery, which keeps every census and subgroup count
auditable at the orders this package targets (a few hundred thousand elements
at most).
"""

from __future__ import annotations

from collections import Counter
from math import lcm

import numpy as np

from . import _nputil as npu
from .errors import BadParams, DegreeMismatch, OrderCapExceeded
from .perm import Perm, compose, identity, inverse

ENUM_CAP = 500_000
SUBGROUP_ORDER_CAP = 20_000


class PermGroup:
    """A permutation group given by generators; elements materialize lazily."""

    def __init__(self, generators, cap=ENUM_CAP):
        generators = list(generators)
        if not generators:
            raise BadParams("need at least one generator (identity is allowed)")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise DegreeMismatch("generators act on different point sets")
        self.degree = degree
        self.generators = generators
        self.cap = cap
        self._table = None

    @property
    def table(self):
        """ElementTable of all elements (enumerates on first use)."""
        if self._table is None:
            gen_rows = [npu.as_row(g.images, self.degree) for g in self.generators]
            self._table = npu.ElementTable(npu.bfs_closure(gen_rows, self.cap))
        return self._table

    def order(self):
        return len(self.table)

    def elements(self):
        """All elements as Perm objects (use only at small orders)."""
        return [Perm(row) for row in self.table.arr.tolist()]

    def element_set(self):
        return set(self.table.index.keys())

    def __contains__(self, p):
        row = npu.as_row(p.images, self.degree)
        return self.table.row_index(row) >= 0

    def orbit(self, point):
        """Orbit of a point under the generators (no enumeration needed)."""
        if not 0 <= point < self.degree:
            raise BadParams(f"point {point} out of range")
        seen = {point}
        frontier = [point]
        gens = [g.images for g in self.generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def order_census(self):
        """Map element order -> multiplicity; counts sum to the group order."""
        orders = self.table.orders
        return dict(sorted(Counter(orders.tolist()).items()))

    def exponent(self):
        return lcm(*self.order_census().keys())

    def is_abelian(self):
        gens = self.generators
        return all(
            compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:]
        )

    def conjugacy_classes(self):
        """(representative, class size) pairs; the rep is the first class member
        in element-table order, so output is deterministic."""
        class_id = self.class_ids()
        arr = self.table.arr
        sizes = Counter(class_id.tolist())
        out = []
        seen = set()
        for i in range(arr.shape[0]):
            c = int(class_id[i])
            if c not in seen:
                seen.add(c)
                out.append((Perm(arr[i].tolist()), sizes[c]))
        return out

    def class_ids(self):
        """Conjugacy class id per element row (id = index of first member found)."""
        table = self.table
        arr, inv, index = table.arr, table.inv, table.index
        n = arr.shape[0]
        gen_rows = [npu.as_row(g.images, self.degree) for g in self.generators]
        gen_invs = [npu.as_row(inverse(g).images, self.degree) for g in self.generators]
        class_id = np.full(n, -1, dtype=np.int64)
        for start in range(n):
            if class_id[start] >= 0:
                continue
            class_id[start] = start
            frontier = [start]
            while frontier:
                nxt = []
                for x in frontier:
                    xrow = arr[x]
                    for g, ginv in zip(gen_rows, gen_invs):
                        ci = index[g[xrow[ginv]].tobytes()]
                        if class_id[ci] < 0:
                            class_id[ci] = start
                            nxt.append(ci)
                frontier = nxt
        return class_id

    def normal_closure(self, perms):
        """Smallest normal subgroup containing the given elements."""
        gens = reduce_generators(perms, self.degree, self.cap)
        while True:
            grown = False
            closure = PermGroup(gens or [identity(self.degree)], cap=self.cap)
            members = closure.element_set()
            for g in self.generators:
                ginv = inverse(g)
                for s in list(gens):
                    c = compose(compose(g, s), ginv)
                    if npu.as_row(c.images, self.degree).tobytes() not in members:
                        gens.append(c)
                        grown = True
            if not grown:
                return closure

    def derived_subgroup(self):
        comms = []
        seen = set()
        for a in self.generators:
            for b in self.generators:
                c = compose(compose(a, b), inverse(compose(b, a)))
                if not c.is_identity() and c not in seen:
                    seen.add(c)
                    comms.append(c)
        if not comms:
            return PermGroup([identity(self.degree)], cap=self.cap)
        return self.normal_closure(comms)

    def is_solvable(self):
        g = self
        while True:
            d = g.derived_subgroup()
            if d.order() == 1:
                return True
            if d.order() == g.order():
                return False
            g = d


class PointedGroup:
    """A transitive PermGroup with a distinguished base point.

    The base-point stabilizer plays the part of the subgroup fixing the
    intermediate field: the pair (group, stabilizer) is the whole Galois datum.
    """

    def __init__(self, group, base_point=0):
        if not 0 <= base_point < group.degree:
            raise BadParams(f"base point {base_point} out of range")
        if not group.is_transitive():
            raise BadParams("pointed groups must act transitively")
        self.group = group
        self.base_point = base_point

    @property
    def degree(self):
        return self.group.degree

    def order(self):
        return self.group.order()

    def stabilizer_order(self):
        return self.group.order() // self.degree

    def is_regular(self):
        return self.group.order() == self.degree

    def stabilizer_generators(self):
        """Schreier generators of the base-point stabilizer (deduplicated)."""
        base = self.base_point
        reps = {base: identity(self.degree)}
        frontier = [base]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.group.generators:
                    y = g(x)
                    if y not in reps:
                        reps[y] = compose(g, reps[x])
                        nxt.append(y)
            frontier = nxt
        out = []
        seen = set()
        for x in sorted(reps):
            for g in self.group.generators:
                s = compose(inverse(reps[g(x)]), compose(g, reps[x]))
                if not s.is_identity() and s not in seen:
                    seen.add(s)
                    out.append(s)
        if not out:
            out = [identity(self.degree)]
        return out

    def stabilizer_elements(self):
        """All elements fixing the base point (enumerates the group)."""
        arr = self.group.table.arr
        mask = arr[:, self.base_point] == self.base_point
        return [Perm(row) for row in arr[mask].tolist()]


def reduce_generators(perms, degree, cap=ENUM_CAP, target_order=None):
    """Greedy generating subset: scan candidates, keep those that grow the closure."""
    gens = []
    members = {npu.as_row(identity(degree).images, degree).tobytes()}
    for p in perms:
        if npu.as_row(p.images, degree).tobytes() in members:
            continue
        gens.append(p)
        rows = npu.bfs_closure([npu.as_row(g.images, degree) for g in gens], cap)
        members = set(npu.row_keys(rows))
        if target_order is not None and len(members) == target_order:
            break
    return gens


def normalizes(h, subgroup, gens=None):
    """True iff h normalizes the given subgroup.

    subgroup is a PermGroup or a collection of Perms; conjugation is checked on
    a generating subset when available, else on every element given.
    """
    if isinstance(subgroup, PermGroup):
        gens = gens or subgroup.generators
        members = subgroup.element_set()
        degree = subgroup.degree
    else:
        subgroup = list(subgroup)
        degree = h.degree
        members = {npu.as_row(s.images, degree).tobytes() for s in subgroup}
        gens = gens or subgroup
    if h.degree != degree:
        raise DegreeMismatch("normalizer test across different degrees")
    hinv = inverse(h)
    return all(
        npu.as_row(compose(compose(h, s), hinv).images, degree).tobytes() in members
        for s in gens
    )


class _SubgroupLattice:
    """Cyclic-extension subgroup enumeration over a fixed parent group.

    Subgroups are index sets into the parent's element table; extensions pull
    prime-order coset representatives from vectorized normalizer scans.
    """

    def __init__(self, group):
        self.group = group
        self.table = group.table
        self.n = len(self.table)
        self.primes = [p for p in range(2, self.n + 1) if self.n % p == 0 and _is_prime(p)]

    def normalizer_mask(self, gen_indices):
        arr, inv = self.table.arr, self.table.inv
        mask = np.ones(self.n, dtype=bool)
        for gi in gen_indices:
            conj = npu.conjugate_rows_by(arr, arr[gi], inv)
            cidx = self.table.lookup_rows(conj)
            mask &= self._member_mask[cidx]
        return mask

    def run(self):
        arr = self.table.arr
        id_idx = int(self.table.row_index(np.arange(self.group.degree, dtype=arr.dtype)))
        trivial = frozenset([id_idx])
        found = {trivial: [id_idx]}
        layer = [trivial]
        while layer:
            nxt = []
            for sub in layer:
                sub_sorted = np.fromiter(sorted(sub), dtype=np.int64, count=len(sub))
                self._member_mask = np.zeros(self.n, dtype=bool)
                self._member_mask[sub_sorted] = True
                norm = np.flatnonzero(self.normalizer_mask(found[sub]))
                sub_rows = arr[sub_sorted]
                for q in self.primes:
                    if self.n % (len(sub) * q) != 0:
                        continue
                    covered = set(sub)
                    for xi in norm.tolist():
                        if xi in covered:
                            continue
                        x = arr[xi]
                        xpow = x
                        for _ in range(q - 1):
                            xpow = xpow[x]
                        if int(self.table.row_index(xpow)) not in sub:
                            continue
                        new = set(sub)
                        shift = x
                        for _ in range(q - 1):
                            coset = npu.compose_with_rows(shift, sub_rows)
                            new.update(self.table.lookup_rows(coset).tolist())
                            shift = shift[x]
                        newf = frozenset(new)
                        covered |= new
                        if newf not in found:
                            found[newf] = found[sub] + [xi] if sub != trivial else [xi]
                            nxt.append(newf)
            layer = nxt
        out = []
        for keys in sorted(found, key=lambda ks: (len(ks), sorted(ks))):
            out.append([Perm(arr[i].tolist()) for i in found[keys]])
        return out


def all_subgroups(group, order_cap=SUBGROUP_ORDER_CAP):
    """Every subgroup, each as a generator list, built by cyclic extension.

    Exhaustive for solvable parents (every subgroup of a solvable group has a
    normal chain with prime steps); nonsolvable input is rejected.
    """
    n = group.order()
    if n > order_cap:
        raise OrderCapExceeded(f"group order {n} above subgroup cap {order_cap}")
    if not group.is_solvable():
        raise BadParams("cyclic-extension enumeration needs a solvable group")
    return _SubgroupLattice(group).run()


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))
