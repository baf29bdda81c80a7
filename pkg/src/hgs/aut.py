"""Automorphism groups and holomorphs of the catalog groups.

The generic automorphism search backtracks over generator images constrained
by element order and relation satisfaction (product orders), then accepts a
candidate only after an exact consistency check over the whole Cayley graph.
Where the construction admits a closed count, automorphism_count verifies the
order without materializing the list.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _nputil as npu
from .catalog import LabeledGroup, P3Type, primitive_root_mod_p2
from .errors import BadParams, OrderCapExceeded, SearchExhausted
from .groups import PermGroup, PointedGroup, reduce_generators
from .perm import Perm, compose, inverse
from .search import count_pair_automorphisms

AUT_CAP = 1000


class Automorphism:
    """A multiplicative, 0-fixing permutation of a LabeledGroup's labels."""

    __slots__ = ("perm", "group")

    def __init__(self, perm, group, verify=True):
        if verify and not is_multiplicative(perm, group):
            raise BadParams("permutation is not an automorphism of the group")
        self.perm = perm
        self.group = group

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"Automorphism({self.group.name}, {self.perm!r})"


def is_multiplicative(perm, group):
    """Exhaustive check that perm(x*y) = perm(x)*perm(y) and perm(0) = 0."""
    if perm.degree != group.order or perm(0) != 0:
        return False
    phi = np.asarray(perm.images)
    t = group.table
    return np.array_equal(phi[t], t[np.ix_(phi, phi)])


def _label_bfs_program(table, gen_labels):
    """BFS of the generated subgroup over labels: discovery order, build steps
    and the full right-multiplication edge map, for hom extension checks."""
    n = table.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    pos[0] = 0
    rows = [0]
    levels = []
    frontier = [0]
    while frontier:
        parents, slots, children = [], [], []
        for x in frontier:
            for s, g in enumerate(gen_labels):
                y = int(table[x, g])
                if pos[y] < 0:
                    pos[y] = len(rows)
                    rows.append(y)
                    parents.append(pos[x])
                    slots.append(s)
                    children.append(pos[y])
        if children:
            levels.append((np.array(parents), np.array(slots), np.array(children)))
        frontier = [rows[c] for c in children]
    label_of = np.array(rows)
    edges = [pos[table[label_of, g]] for g in gen_labels]
    return label_of, levels, edges


def automorphism_group(group, cap=AUT_CAP):
    """The full automorphism group as a list of Automorphism, lexicographic.

    Backtracking over images of the canonical generators: pools are filtered
    by element order and pairwise product orders, and each surviving tuple is
    verified by extending over the Cayley graph.
    """
    n = group.order
    if n > cap:
        raise OrderCapExceeded(f"|N| = {n} above automorphism cap {cap}")
    gens = list(group.generator_labels)
    t = group.table
    orders = group.element_orders
    label_of, levels, edges = _label_bfs_program(t, gens)
    if label_of.shape[0] != n:
        raise BadParams("generator labels do not generate the group")
    inv_pos = np.empty(n, dtype=np.int64)
    inv_pos[label_of] = np.arange(n)
    pools = [np.flatnonzero(orders == orders[g]) for g in gens]
    found = []

    def descend(level, images):
        if level == len(gens):
            phi = np.empty(n, dtype=np.int64)
            phi[0] = 0
            for parents, slots, children in levels:
                for s, img in enumerate(images):
                    sel = slots == s
                    if sel.any():
                        phi[children[sel]] = t[phi[parents[sel]], img]
            for s, img in enumerate(images):
                if not np.array_equal(phi[edges[s]], t[phi, img]):
                    return
            if np.unique(phi).size != n:
                return
            out = np.empty(n, dtype=np.int64)
            out[label_of] = phi
            found.append(Perm(out.tolist()))
            return
        cand = pools[level]
        keep = np.ones(cand.size, dtype=bool)
        for j in range(level):
            keep &= orders[t[images[j], cand]] == orders[t[gens[j], gens[level]]]
            gj_inv = group.inverse_label(gens[j])
            ij_inv = group.inverse_label(images[j])
            keep &= orders[t[ij_inv, cand]] == orders[t[gj_inv, gens[level]]]
        for c in cand[keep].tolist():
            descend(level + 1, images + [c])

    descend(0, [])
    found.sort(key=lambda q: q.images)
    result = [Automorphism(q, group, verify=False) for q in found]
    expected = automorphism_count(group)
    if expected is not None and len(result) != expected:
        raise SearchExhausted(
            f"automorphism search of {group.name} found {len(result)}, expected {expected}"
        )
    return result


def _count_mix(group):
    p = group.p
    t, orders = group.table, group.element_orders
    total = 0
    omega = np.flatnonzero(orders <= p)  # y with y^p = identity
    for x in np.flatnonzero(orders == p * p).tolist():
        cyc = {0}
        acc = 0
        for _ in range(p * p):
            acc = int(t[acc, x])
            cyc.add(acc)
        total += sum(1 for y in omega.tolist() if y not in cyc)
    return total


def _count_heis(group):
    t, orders = group.table, group.element_orders
    xs = np.flatnonzero(orders == group.p)
    total = 0
    for x in xs.tolist():
        total += int(np.count_nonzero(t[x, xs] != t[xs, x]))
    return total


def _count_exp2(group):
    p = group.p
    t, orders = group.table, group.element_orders
    inv = group.inverses
    ys = np.flatnonzero(orders == p)
    total = 0
    for x in np.flatnonzero(orders == p * p).tolist():
        xe = group.power(x, p + 1)
        conj = t[t[ys, x], inv[ys]]
        total += int(np.count_nonzero(conj == xe))
    return total


def gl3_order_census(p, chunk=1 << 20):
    """|GL(3,p)| by brute determinant census over all p^9 matrices mod p."""
    total = p**9
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        m = []
        for k in range(9):
            m.append(idx % p)
            idx = idx // p
        a, b, c, d, e, f, g, h, i = m
        det = (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
        count += int(np.count_nonzero(det))
    return count


def automorphism_count(group):
    """|Aut(N)| by counting valid generator images (no listing); None if the
    group is not one of the catalog constructions."""
    if group.ptype is None or group.p is None:
        return None
    p = group.p
    if group.ptype is P3Type.CYC:
        return group.order_census()[group.order]
    if group.ptype is P3Type.MIX:
        return _count_mix(group)
    if group.ptype is P3Type.HEIS:
        return _count_heis(group)
    if group.ptype is P3Type.EXP2:
        return _count_exp2(group)
    if group.ptype is P3Type.ELEM:
        return gl3_order_census(p)
    return None


def aut_order(group, cap=AUT_CAP):
    counted = automorphism_count(group)
    if counted is not None:
        return counted
    return len(automorphism_group(group, cap=cap))


def _powers(group, x):
    out = [0]
    acc = 0
    while True:
        acc = group.mult(acc, x)
        if acc == 0:
            break
        out.append(acc)
    return out


def _heis_pair_perm(group, x, y):
    """Automorphism of H_p from images (x, y) of the generators (A, C)."""
    p = group.p
    t = group.table
    z = group.mult(group.mult(x, y), group.inverse_label(group.mult(y, x)))
    xp = np.array([_powers(group, x)[i % p] for i in range(p)])
    yp = np.array([_powers(group, y)[i % p] for i in range(p)])
    zp = np.array([_powers(group, z)[i % p] for i in range(p)])
    lab = np.arange(p**3)
    a, b, c = lab // (p * p), (lab // p) % p, lab % p
    phi = t[t[yp[c], xp[a]], zp[b]]
    return Perm(phi.tolist())


def _exp2_pair_perm(group, x, y):
    """Automorphism of G_p from images (x, y) of the generators (M, N)."""
    p = group.p
    t = group.table
    xp = np.array(_powers(group, x))
    yp = np.array(_powers(group, y))
    if xp.size != p * p or yp.size != p:
        raise BadParams("generator images must keep their orders")
    lab = np.arange(p**3)
    a, b = lab // p, lab % p
    phi = t[xp[a], yp[b]]
    return Perm(phi.tolist())


def aut_generators(group):
    """A small verified generating set of Aut(N) as label permutations."""
    p = group.p
    if group.ptype is P3Type.CYC:
        m = group.order
        sigma = primitive_root_mod_p2(p) % m
        gens = [Perm([x * sigma % m for x in range(m)])]
    elif group.ptype is P3Type.MIX:
        from .catalog import _mix_automorphism_perms

        gens = _mix_automorphism_perms(p)
    elif group.ptype is P3Type.ELEM:
        g = primitive_root_mod_p2(p) % p
        lab = np.arange(p**3)
        x, y, z = lab // (p * p), (lab // p) % p, lab % p
        enc = lambda u, v, w: ((u % p) * p * p + (v % p) * p + (w % p))
        gens = [
            Perm(enc(g * x, y, z).tolist()),   # diag(g, 1, 1)
            Perm(enc(x + y, y, z).tolist()),   # transvection e1 += e2
            Perm(enc(x, y + x, z).tolist()),   # transvection e2 += e1
            Perm(enc(y, z, x).tolist()),       # coordinate 3-cycle
        ]
    elif group.ptype is P3Type.HEIS:
        g = primitive_root_mod_p2(p) % p
        A, C = group.generator_labels
        B = group.mult(group.mult(A, C), group.inverse_label(group.mult(C, A)))
        pairs = [
            (group.mult(B, A), C),            # kernel: A -> BA
            (A, group.mult(B, C)),            # kernel: C -> BC
            (group.power(A, g), C),           # diag(g, 1) lift
            (group.mult(A, C), C),            # transvection lift
            (A, group.mult(C, A)),            # transvection lift
        ]
        gens = [_heis_pair_perm(group, x, y) for x, y in pairs]
    elif group.ptype is P3Type.EXP2:
        g = primitive_root_mod_p2(p)
        M, N = group.generator_labels
        pairs = [
            (group.power(M, g), N),                    # M -> M^g
            (group.mult(M, N), N),                     # M -> MN
            (M, group.mult(N, group.power(M, p))),     # N -> N M^p
        ]
        gens = [_exp2_pair_perm(group, x, y) for x, y in pairs]
    else:
        auts = automorphism_group(group)
        perms = [a.perm for a in auts]
        return reduce_generators(perms, group.order, target_order=len(perms))
    for q in gens:
        if not is_multiplicative(q, group):
            raise SearchExhausted(f"bad automorphism generator for {group.name}")
    expected = aut_order(group)
    pg = PermGroup(gens, cap=2 * expected)
    if pg.order() != expected:
        raise SearchExhausted(
            f"Aut({group.name}) generators close to {pg.order()}, expected {expected}"
        )
    return gens


def holomorph(group, cap=500_000):
    """Hol(N) acting on N's labels: translations extended by Aut(N); base 0."""
    n_aut = aut_order(group)
    order = group.order * n_aut
    if order > cap:
        raise OrderCapExceeded(f"|Hol({group.name})| = {order} above cap {cap}")
    gens = [group.left_translation(g) for g in group.generator_labels]
    gens += aut_generators(group)
    pg = PermGroup(gens, cap=cap)
    if pg.order() != order:
        raise SearchExhausted(
            f"Hol({group.name}) closed to {pg.order()}, expected {order}"
        )
    hol = PointedGroup(pg, 0)
    fixing = int((pg.table.arr[:, 0] == 0).sum())
    if fixing != n_aut:
        raise SearchExhausted(
            f"Stab_Hol(0) has {fixing} elements, expected |Aut| = {n_aut}"
        )
    return hol


def holomorph_membership(f, group):
    """Decompose f = (left translation by f(0)) o alpha with alpha in Aut(N).

    Returns (translation label, Automorphism) when f normalizes the left
    translations, None otherwise.  Works without enumerating Hol(N).
    """
    if f.degree != group.order:
        raise BadParams("degree mismatch with the group's label set")
    t_inv = group.left_translation(group.inverse_label(f(0)))
    alpha = compose(t_inv, f)
    if not is_multiplicative(alpha, group):
        return None
    return f(0), Automorphism(alpha, group, verify=False)


def aut_pair_count(g_pointed, cap=AUT_CAP):
    """|Aut(G, G')|: automorphisms of G carrying the base stabilizer to itself."""
    if g_pointed.order() > cap:
        raise OrderCapExceeded(f"|G| = {g_pointed.order()} above cap {cap}")
    return count_pair_automorphisms(g_pointed)


@dataclass(frozen=True)
class CyclicHolomorphFrame:
    """The explicit coordinates of Hol(C_{p^n}): sigma generates the units,
    tau = sigma^(p-1) its p-part, k = sigma(1)."""

    p: int
    n: int
    sigma: int
    tau: int
    k: int

    @property
    def modulus(self):
        return self.p**self.n


def cyclic_holomorph_frame(p, n):
    m = p**n
    sigma = primitive_root_mod_p2(p) % m
    tau = pow(sigma, p - 1, m)
    frame = CyclicHolomorphFrame(p=p, n=n, sigma=sigma, tau=tau, k=sigma % m)
    if _unit_order(sigma, m) != p ** (n - 1) * (p - 1):
        raise BadParams("sigma does not generate the units")
    if _unit_order(tau, m) != p ** (n - 1):
        raise BadParams("tau has the wrong order")
    return frame


def _unit_order(u, m):
    k, acc = 1, u % m
    while acc != 1:
        acc = acc * u % m
        k += 1
    return k


def sylow_p_of_cyclic_holomorph(frame):
    """The p-Sylow subgroup of Hol(C_{p^n}): translations extended by tau."""
    m = frame.modulus
    trans = Perm([(x + 1) % m for x in range(m)])
    tau_perm = Perm([x * frame.tau % m for x in range(m)])
    pg = PermGroup([trans, tau_perm])
    expected = frame.p ** (2 * frame.n - 1)
    if pg.order() != expected:
        raise SearchExhausted(f"Sylow closure {pg.order()} != {expected}")
    return pg
