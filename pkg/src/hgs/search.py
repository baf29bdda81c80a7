"""Backtracking count of injective homomorphisms into a prepared target group.

This is the engine behind the structure counter: images of the base-point
stabilizer's generators are drawn from the target's own base stabilizer, the
remaining generators from the whole target, and the first level is factored
into conjugacy classes of the symmetry group that preserves every constraint
(per-class completion counts are equal because all filters are conjugation
covariant).  A candidate tuple is accepted only after an exact
homomorphism-plus-injectivity check over the whole source group, so every
filter is a pure speedup.
"""

from __future__ import annotations

import numpy as np

from . import _nputil as npu
from .errors import NodeBudgetExceeded
from .groups import reduce_generators
from .perm import Perm, compose, element_order, inverse

NODE_BUDGET = 10**10


def conj_class_ids(table, conj_gen_rows):
    """Orbit id per row of the table under conjugation by the given perms."""
    arr, inv, index = table.arr, table.inv, table.index
    n = arr.shape[0]
    pairs = [(np.asarray(g), npu.invert_rows(np.asarray(g)[None, :])[0]) for g in conj_gen_rows]
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
                for g, ginv in pairs:
                    ci = index[g[xrow[ginv]].tobytes()]
                    if class_id[ci] < 0:
                        class_id[ci] = start
                        nxt.append(ci)
            frontier = nxt
    return class_id


class EmbeddingTarget:
    """Element table of the target plus pools and symmetry data for the search.

    Rows are sorted lexicographically so candidate iteration order is the
    lexicographic order on image tuples.
    """

    def __init__(self, element_rows, group_gen_rows, base_point=0, name=""):
        arr = np.ascontiguousarray(element_rows)
        order = np.lexsort(arr.T[::-1])
        self.table = npu.ElementTable(arr[order])
        self.name = name
        self.base = base_point
        self.degree = self.table.degree
        arr = self.table.arr
        self.fix_mask = arr[:, base_point] == base_point
        self.group_gen_rows = [np.asarray(g, dtype=arr.dtype) for g in group_gen_rows]
        self._pools = {}
        self._class_id = None

    @classmethod
    def from_pointed_group(cls, pg, name=""):
        arr = pg.group.table.arr
        gens = [npu.as_row(g.images, pg.degree) for g in pg.group.generators]
        return cls(arr, gens, base_point=pg.base_point, name=name)

    def __len__(self):
        return len(self.table)

    def pool(self, order, prefix_only):
        key = (int(order), bool(prefix_only))
        if key not in self._pools:
            mask = self.table.orders == order
            if prefix_only:
                mask = mask & self.fix_mask
            self._pools[key] = np.flatnonzero(mask)
        return self._pools[key]

    @property
    def class_id(self):
        """Conjugation-orbit ids under the constraint-preserving symmetry group.

        With a trivial base stabilizer that group is the whole target;
        otherwise it is the normalizer of the stabilizer subgroup.
        """
        if self._class_id is None:
            stab_count = int(self.fix_mask.sum())
            if stab_count == len(self.table):
                # target fixes the base entirely (self-target of an aut count
                # on a regular group): symmetry = whole group
                gen_rows = self.group_gen_rows
            elif stab_count == 1:
                gen_rows = self.group_gen_rows
            else:
                gen_rows = self._normalizer_gen_rows()
            self._class_id = conj_class_ids(self.table, gen_rows)
        return self._class_id

    def _normalizer_gen_rows(self):
        arr, inv = self.table.arr, self.table.inv
        stab_idx = np.flatnonzero(self.fix_mask)
        stab_rows = arr[stab_idx]
        stab_gens = reduce_generators(
            [Perm(r.tolist()) for r in stab_rows], self.degree,
            cap=len(self.table), target_order=len(stab_idx),
        )
        member = np.zeros(len(self.table), dtype=bool)
        member[stab_idx] = True
        mask = np.ones(len(self.table), dtype=bool)
        for g in stab_gens:
            conj = npu.conjugate_rows_by(arr, npu.as_row(g.images, self.degree), inv)
            mask &= member[self.table.lookup_rows(conj)]
        norm_rows = arr[np.flatnonzero(mask)]
        gens = reduce_generators(
            [Perm(r.tolist()) for r in norm_rows], self.degree,
            cap=len(self.table), target_order=int(mask.sum()),
        )
        return [npu.as_row(g.images, self.degree) for g in gens]

    def lookup_orders(self, rows):
        return self.table.orders[self.table.lookup_rows(rows)]


def generating_sequence(pg):
    """Deterministic generating sequence of a PointedGroup.

    Stabilizer generators come first (a greedy minimal set, highest element
    order first); the rest are greedy coset completions.  Returns
    (perms, prefix_len).
    """
    m = pg.order()
    degree = pg.degree
    stab = pg.stabilizer_elements()
    stab_sorted = sorted(stab, key=lambda q: (-element_order(q), q.images))
    prefix = reduce_generators(stab_sorted, degree, cap=m, target_order=len(stab))
    gens = list(prefix)
    arr = pg.group.table.arr
    all_sorted = sorted(
        (Perm(r) for r in arr.tolist()), key=lambda q: (-element_order(q), q.images)
    )
    while True:
        if gens:
            rows = npu.bfs_closure([npu.as_row(g.images, degree) for g in gens], m)
            members = set(npu.row_keys(rows))
        else:
            members = {npu.as_row(Perm(range(degree)).images, degree).tobytes()}
        if len(members) == m:
            break
        for x in all_sorted:
            if npu.as_row(x.images, degree).tobytes() not in members:
                gens.append(x)
                break
    return gens, len(prefix)


class _SourcePlan:
    """Subgroup-chain programs and relation filters for one generating sequence."""

    def __init__(self, pg, gens, prefix_len):
        self.gens = gens
        self.prefix_len = prefix_len
        self.degree = pg.degree
        self.req_orders = []
        self.programs = []      # per level: (bfs levels, edge target arrays)
        self.relations = []     # per level i: list of (j, kind, payload)
        dt = npu.point_dtype(pg.degree)
        gen_rows = [npu.as_row(g.images, pg.degree) for g in gens]
        for i, g in enumerate(gens):
            self.req_orders.append(element_order(g))
            self.programs.append(self._subgroup_program(gen_rows[: i + 1], dt))
            rels = []
            for j in range(i):
                gj, gi = gens[j], gens[i]
                if compose(gj, gi) == compose(gi, gj):
                    rels.append((j, "commute", None))
                rels.append((j, "prodorder", element_order(compose(gj, gi))))
                rels.append((j, "invprodorder", element_order(compose(inverse(gj), gi))))
            self.relations.append(rels)

    @staticmethod
    def _subgroup_program(gen_rows, dt):
        d = gen_rows[0].shape[0]
        ident = np.arange(d, dtype=dt)
        rows = [ident]
        index = {ident.tobytes(): 0}
        levels = []  # (parent positions, gen slots) per BFS layer
        frontier = [0]
        while frontier:
            parents, slots, children = [], [], []
            for x in frontier:
                for s, g in enumerate(gen_rows):
                    child = rows[x][g]
                    key = child.tobytes()
                    if key not in index:
                        index[key] = len(rows)
                        rows.append(child)
                        parents.append(x)
                        slots.append(s)
                        children.append(index[key])
            if children:
                levels.append(
                    (np.array(parents), np.array(slots), np.array(children))
                )
            frontier = children
        size = len(rows)
        edges = []
        for g in gen_rows:
            tgt = np.empty(size, dtype=np.int64)
            for x in range(size):
                tgt[x] = index[rows[x][g].tobytes()]
            edges.append(tgt)
        return size, levels, edges


class _Search:
    def __init__(self, target, plan, node_budget, existence, class_factor=True):
        self.t = target
        self.plan = plan
        self.budget = node_budget if node_budget is not None else NODE_BUDGET
        self.nodes = 0
        self.existence = existence
        self.class_factor = class_factor
        self.k = len(plan.gens)
        self.degree = target.degree
        self.found = 0

    def run(self):
        pool0 = self.t.pool(self.plan.req_orders[0], self.plan.prefix_len > 0)
        if pool0.size == 0:
            return 0
        if self.class_factor:
            class_id = self.t.class_id
            reps = {}
            for idx in pool0.tolist():
                c = int(class_id[idx])
                if c not in reps:
                    reps[c] = [idx, 0]
                reps[c][1] += 1
            level0 = [tuple(reps[c]) for c in sorted(reps)]
        else:
            level0 = [(idx, 1) for idx in pool0.tolist()]
        total = 0
        for rep_idx, size in level0:
            self.nodes += 1
            if self.nodes > self.budget:
                raise NodeBudgetExceeded(f"embedding search passed {self.budget} nodes")
            if not self._consistent(0, [rep_idx]):
                continue
            got = self._descend(1, [rep_idx], {})
            total += size * got
            if self.existence and total:
                return total
        return total

    def _assign_masks(self, level, idx, mask_cache):
        """Precompute this assignment's relation masks over later levels' pools.

        Pure array filters (commuting) run on the whole pool; order-lookup
        filters only on its survivors.
        """
        arr = self.t.table.arr
        row = arr[idx]
        row_inv = self.t.table.inv[idx]
        for i in range(level + 1, self.k):
            rels = [r for r in self.plan.relations[i] if r[0] == level]
            if not rels:
                continue
            pool = self.t.pool(self.plan.req_orders[i], i < self.plan.prefix_len)
            if pool.size == 0:
                continue
            cand_rows = arr[pool]
            keep = np.ones(pool.size, dtype=bool)
            for (_, kind, _) in rels:
                if kind == "commute":
                    keep &= np.all(row[cand_rows] == cand_rows[:, row], axis=1)
            alive = np.flatnonzero(keep)
            for (_, kind, payload) in rels:
                if kind == "commute" or alive.size == 0:
                    continue
                sub = cand_rows[alive]
                prod = row[sub] if kind == "prodorder" else row_inv[sub]
                ok = self.t.lookup_orders(prod) == payload
                keep[alive[~ok]] = False
                alive = alive[ok]
            mask_cache[(level, i)] = keep

    def _descend(self, level, assigned_idx, mask_cache):
        if level == self.k:
            return 1
        self._assign_masks(level - 1, assigned_idx[-1], mask_cache)
        pool = self.t.pool(self.plan.req_orders[level], level < self.plan.prefix_len)
        if pool.size == 0:
            return 0
        keep = np.ones(pool.size, dtype=bool)
        for j in range(level):
            m = mask_cache.get((j, level))
            if m is not None:
                keep &= m
        cands = pool[keep]
        total = 0
        arr = self.t.table.arr
        for idx in cands.tolist():
            self.nodes += 1
            if self.nodes > self.budget:
                raise NodeBudgetExceeded(f"embedding search passed {self.budget} nodes")
            if not self._consistent(level, assigned_idx + [idx]):
                continue
            # depth-first: children overwrite their own (level, i) mask slots,
            # so the cache can be shared down the branch
            got = self._descend(level + 1, assigned_idx + [idx], mask_cache)
            total += got
            if self.existence and total:
                return total
        return total

    def _consistent(self, level, assigned_idx):
        """Exact check: images define an injective hom on <g_0..g_level>,
        and at the last level the image is transitive."""
        size, levels, edges = self.plan.programs[level]
        arr = self.t.table.arr
        d = self.degree
        img = np.empty((size, d), dtype=arr.dtype)
        img[0] = np.arange(d, dtype=arr.dtype)
        gen_rows = [arr[i] for i in assigned_idx]
        for parents, slots, children in levels:
            for s in range(level + 1):
                sel = slots == s
                if sel.any():
                    img[children[sel]] = img[parents[sel]][:, gen_rows[s]]
        for s in range(level + 1):
            if not np.array_equal(img[edges[s]], img[:, gen_rows[s]]):
                return False
        if len(set(npu.row_keys(img))) != size:
            return False
        if level == self.k - 1:
            seen = {self.t.base}
            frontier = [self.t.base]
            gl = [g.tolist() for g in gen_rows]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gl:
                        y = g[x]
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            if len(seen) != d:
                return False
        return True


def count_embeddings_into(target, pg, node_budget=None, existence=False, class_factor=True):
    """Number of injective homomorphisms of the pointed group into the target
    whose stabilizer images fix the target base point and whose image acts
    transitively.  With existence=True, stops at the first one; class_factor
    turns the first-level conjugacy factoring off (plain backtracking, used to
    cross-check the factored strategy)."""
    m = pg.order()
    if m == 1:
        return 1 if target.degree == 1 else 0
    if len(target.table) % m != 0:
        return 0
    gens, prefix_len = generating_sequence(pg)
    for i, g in enumerate(gens):
        if target.pool(element_order(g), i < prefix_len).size == 0:
            return 0
    plan = _SourcePlan(pg, gens, prefix_len)
    return _Search(target, plan, node_budget, existence, class_factor=class_factor).run()


def count_pair_automorphisms(pg, node_budget=None):
    """|Aut(G, G')|: automorphisms of the group preserving the base stabilizer."""
    target = EmbeddingTarget.from_pointed_group(pg, name="self")
    return count_embeddings_into(target, pg, node_budget=node_budget)


def pair_isomorphic(g1, g2):
    """Permutation-equivalence of two pointed groups (iso carrying stabilizer
    to stabilizer)."""
    if g1.degree != g2.degree or g1.order() != g2.order():
        return False
    if g1.group.order_census() != g2.group.order_census():
        return False
    target = EmbeddingTarget.from_pointed_group(g2, name="iso-target")
    return count_embeddings_into(target, g1, existence=True) > 0
