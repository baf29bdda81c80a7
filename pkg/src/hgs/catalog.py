"""Canonical constructions of the groups the counter needs.

Each construction fixes a mixed-radix labeling once and for all, so every
census, table row and golden file is stable across runs.  Multiplication lives
in a dense numpy Cayley table (orders here never exceed 729).
"""

from __future__ import annotations

from enum import Enum
from math import lcm

import numpy as np

from .errors import BadParams, NotOrderP3
from .groups import PermGroup, PointedGroup
from .perm import DEGREE_CAP, Perm


class P3Type(Enum):
    """The five isomorphism types of groups of order p^3 (p odd)."""

    CYC = "CYC"    # C_{p^3}
    MIX = "MIX"    # C_{p^2} x C_p
    HEIS = "HEIS"  # upper unitriangular 3x3 over F_p, exponent p
    ELEM = "ELEM"  # C_p x C_p x C_p
    EXP2 = "EXP2"  # 2x2 matrices (1+pb, a; 0, 1) over Z/p^2, exponent p^2

    def display(self, p):
        return {
            P3Type.CYC: f"C{p ** 3}",
            P3Type.MIX: f"C{p ** 2}xC{p}",
            P3Type.HEIS: f"H{p ** 3}",
            P3Type.ELEM: f"C{p}^3",
            P3Type.EXP2: f"G{p ** 3}",
        }[self]


# Column order of the degree-27 tables.
P3_COLUMNS = (P3Type.CYC, P3Type.MIX, P3Type.HEIS, P3Type.ELEM, P3Type.EXP2)


class LabeledGroup:
    """An abstract finite group on labels {0..order-1} with a Cayley table.

    Label 0 is the identity.  generator_labels is a fixed generating tuple
    (the construction's own generators, or a greedy set for derived groups).
    """

    def __init__(self, table, name, generator_labels, p=None, ptype=None):
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n):
            raise BadParams("Cayley table must be square")
        ar = np.arange(n)
        if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
            raise BadParams("label 0 must be the identity")
        if not (np.all(np.sort(table, axis=1) == ar) and np.all(np.sort(table, axis=0) == ar[:, None])):
            raise BadParams("table rows/columns must be permutations")
        self.table = table
        self.order = n
        self.name = name
        self.generator_labels = tuple(generator_labels)
        self.p = p
        self.ptype = ptype
        self._orders = None
        self._inverses = None

    def mult(self, i, j):
        return int(self.table[i, j])

    def power(self, i, k):
        if k < 0:
            i, k = self.inverse_label(i), -k
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, i])
        return acc

    def inverse_label(self, i):
        return int(self.inverses[i])

    @property
    def inverses(self):
        if self._inverses is None:
            self._inverses = np.argmax(self.table == 0, axis=1)
        return self._inverses

    @property
    def element_orders(self):
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            power = np.arange(n)
            alive = np.arange(n)
            k = 1
            while alive.size:
                done = power[alive] == 0
                orders[alive[done]] = k
                alive = alive[~done]
                if alive.size:
                    power[alive] = self.table[power[alive], alive]
                    k += 1
            self._orders = orders
        return self._orders

    def order_census(self):
        vals, counts = np.unique(self.element_orders, return_counts=True)
        return dict(zip(vals.tolist(), counts.tolist()))

    def exponent(self):
        return lcm(*self.order_census().keys())

    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    def left_translation(self, g):
        """The permutation x -> g*x of the labels."""
        return Perm(self.table[g].tolist())

    def translation_rows(self):
        """All left translations at once (row g is the permutation of label g)."""
        return self.table

    def __repr__(self):
        return f"LabeledGroup({self.name}, order={self.order})"


def _check_odd_prime(p):
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p**0.5) + 1, 2)):
        raise BadParams(f"p must be an odd prime, got {p}")


def _check_degree(n):
    if n > DEGREE_CAP:
        raise BadParams(f"order {n} exceeds the degree cap {DEGREE_CAP}")


def build_cyclic(p, n):
    """C_{p^n} as residues mod p^n under addition."""
    _check_odd_prime(p)
    if n < 1:
        raise BadParams("n must be >= 1")
    m = p**n
    _check_degree(m)
    ar = np.arange(m)
    table = (ar[:, None] + ar[None, :]) % m
    return LabeledGroup(table, f"C{m}", (1,), p=p,
                        ptype=P3Type.CYC if n == 3 else None)


def build_mixed(p):
    """C_{p^2} x C_p = <a> x <b>, label (i, j) -> i*p + j."""
    _check_odd_prime(p)
    _check_degree(p**3)
    lab = np.arange(p**3)
    i, j = lab // p, lab % p
    table = ((i[:, None] + i[None, :]) % (p * p)) * p + (j[:, None] + j[None, :]) % p
    return LabeledGroup(table, f"C{p * p}xC{p}", (p, 1), p=p, ptype=P3Type.MIX)


def build_elementary(p):
    """C_p^3 as the additive group of F_p^3, label (x, y, z) -> x*p^2 + y*p + z."""
    _check_odd_prime(p)
    _check_degree(p**3)
    lab = np.arange(p**3)
    x, y, z = lab // (p * p), (lab // p) % p, lab % p
    table = (
        ((x[:, None] + x[None, :]) % p) * p * p
        + ((y[:, None] + y[None, :]) % p) * p
        + (z[:, None] + z[None, :]) % p
    )
    return LabeledGroup(table, f"C{p}^3", (p * p, p, 1), p=p, ptype=P3Type.ELEM)


def build_elementary_rank2(p):
    """C_p x C_p (used by the degree-p^2 oracle comparisons)."""
    _check_odd_prime(p)
    _check_degree(p * p)
    lab = np.arange(p * p)
    x, y = lab // p, lab % p
    table = ((x[:, None] + x[None, :]) % p) * p + (y[:, None] + y[None, :]) % p
    return LabeledGroup(table, f"C{p}^2", (p, 1), p=p)


def build_heisenberg(p):
    """H_p: upper unitriangular (1,a,b; 0,1,c; 0,0,1) over F_p, label a*p^2 + b*p + c.

    Product: (a,b,c)*(a',b',c') = (a+a', b+b'+a*c', c+c').  Generators A = (1,0,0)
    and C = (0,0,1) satisfy AC = BCA with B = (0,1,0) spanning the centre.
    """
    _check_odd_prime(p)
    _check_degree(p**3)
    lab = np.arange(p**3)
    a, b, c = lab // (p * p), (lab // p) % p, lab % p
    table = (
        ((a[:, None] + a[None, :]) % p) * p * p
        + ((b[:, None] + b[None, :] + a[:, None] * c[None, :]) % p) * p
        + (c[:, None] + c[None, :]) % p
    )
    return LabeledGroup(table, f"H{p ** 3}", (p * p, 1), p=p, ptype=P3Type.HEIS)


def build_exp_p2(p):
    """G_p: matrices (1+pb, a; 0, 1), a mod p^2, b mod p, label a*p + b.

    Product: (a1,b1)*(a2,b2) = (a1 + a2*(1 + p*b1) mod p^2, b1+b2 mod p).
    Generators M = (1,0) of order p^2 and N = (0,1) of order p, NM = M^(p+1)N.
    """
    _check_odd_prime(p)
    _check_degree(p**3)
    lab = np.arange(p**3)
    a, b = lab // p, lab % p
    anew = (a[:, None] + a[None, :] * (1 + p * b[:, None])) % (p * p)
    bnew = (b[:, None] + b[None, :]) % p
    table = anew * p + bnew
    return LabeledGroup(table, f"G{p ** 3}", (p, 1), p=p, ptype=P3Type.EXP2)


_BUILDERS = {
    P3Type.CYC: lambda p: build_cyclic(p, 3),
    P3Type.MIX: build_mixed,
    P3Type.HEIS: build_heisenberg,
    P3Type.ELEM: build_elementary,
    P3Type.EXP2: build_exp_p2,
}


def build_p3(ptype, p):
    return _BUILDERS[P3Type(ptype)](p)


def classify_p3_type(group):
    """Type of a group of order p^3 (p odd) from abelianness and exponent."""
    order = group.order() if isinstance(group, (PermGroup, PointedGroup)) else group.order
    p = round(order ** (1 / 3))
    if p**3 != order:
        raise NotOrderP3(f"order {order} is not a cube")
    try:
        _check_odd_prime(p)
    except BadParams as exc:
        raise NotOrderP3(str(exc)) from exc
    if isinstance(group, PointedGroup):
        group = group.group
    abelian = group.is_abelian()
    exp = group.exponent()
    if exp == p**3:
        return P3Type.CYC
    if abelian:
        return P3Type.MIX if exp == p * p else P3Type.ELEM
    return P3Type.EXP2 if exp == p * p else P3Type.HEIS


def primitive_root_mod_p2(p):
    """Smallest primitive root mod p^2; it generates (Z/p^n Z)* for every n."""
    m = p * p
    target = p * (p - 1)
    for g in range(2, m):
        if g % p == 0:
            continue
        k, acc = 1, g % m
        while acc != 1:
            acc = acc * g % m
            k += 1
        if k == target:
            return g
    raise BadParams(f"no primitive root mod {m}")  # unreachable for prime p


def regular_representation(n_group):
    """Left-regular PointedGroup of a LabeledGroup (degree = order, base 0)."""
    _check_degree(n_group.order)
    gens = [n_group.left_translation(g) for g in n_group.generator_labels]
    pg = PermGroup(gens)
    if pg.order() != n_group.order:
        raise BadParams(
            f"generator labels of {n_group.name} generate order {pg.order()}, "
            f"expected {n_group.order}"
        )
    return PointedGroup(pg, 0)


def labeled_from_regular(pointed):
    """Abstract group of a regular PointedGroup, with the point relabeling.

    Returns (group, to_label): to_label maps points to labels (base point to
    0), and conjugating the original action by to_label turns it into the new
    group's left-translation action.  Each point x corresponds to the unique
    element sending the base point to x, so the point-indexed Cayley table is
    just that element list read as a matrix.
    """
    if not pointed.is_regular():
        raise BadParams("need a regular pointed group")
    n = pointed.degree
    base = pointed.base_point
    arr = pointed.group.table.arr
    u_rows = np.empty((n, n), dtype=np.int64)
    for row in arr:
        u_rows[row[base]] = row
    points = [base] + [x for x in range(n) if x != base]
    to_label = np.empty(n, dtype=np.int64)
    for lab, pt in enumerate(points):
        to_label[pt] = lab
    from_label = np.array(points)
    table = to_label[u_rows[np.ix_(from_label, from_label)]]
    gen_labels = [int(to_label[g(base)]) for g in pointed.group.generators]
    group = LabeledGroup(table, f"regular-{n}", gen_labels)
    return group, Perm(to_label.tolist())


def build_cpn_semidirect(p, n, d_order):
    """C_{p^n} : C_D of degree p^n inside the cyclic holomorph.

    Generated by x -> x+1 and x -> sigma^l * x with l = p^(n-1)(p-1)/D, which
    makes the point stabilizer cyclic of order D.  D = 1 gives the regular
    cyclic group.
    """
    _check_odd_prime(p)
    m = p**n
    _check_degree(m)
    full = p ** (n - 1) * (p - 1)
    if d_order < 1 or full % d_order != 0:
        raise BadParams(f"D = {d_order} must divide p^(n-1)(p-1) = {full}")
    sigma = primitive_root_mod_p2(p)
    ell = full // d_order
    mul = pow(sigma, ell, m)
    trans = Perm([(x + 1) % m for x in range(m)])
    gens = [trans]
    if d_order > 1:
        gens.append(Perm([x * mul % m for x in range(m)]))
    pg = PermGroup(gens)
    if pg.order() != m * d_order:
        raise BadParams(f"semidirect build came out with order {pg.order()}")
    return PointedGroup(pg, 0)


def _mix_automorphism_perms(p):
    """The automorphisms phi_1..3, psi_1..2 of C_{p^2} x C_p as label perms.

    phi_1: a -> a^(p+1); phi_2: b -> a^p b; phi_3: a -> ab; psi_1: a -> a^i with
    i of order p-1 mod p^2; psi_2: b -> b^l with l of order p-1 mod p.
    """
    p2 = p * p
    lab = np.arange(p**3)
    i, j = lab // p, lab % p
    sigma = primitive_root_mod_p2(p)
    i0 = pow(sigma, p, p2)       # order p-1 mod p^2
    l0 = sigma % p               # order p-1 mod p
    phi1 = (((p + 1) * i) % p2) * p + j
    phi2 = ((i + p * j) % p2) * p + j
    phi3 = i * p + (i + j) % p
    psi1 = ((i0 * i) % p2) * p + j
    psi2 = i * p + (l0 * j) % p
    return [Perm(v.tolist()) for v in (phi1, phi2, phi3, psi1, psi2)]


def build_P1(p):
    """Sylow p-subgroup of Hol(C_{p^2} x C_p): <a, b> : <phi_1, phi_2, phi_3>."""
    _check_odd_prime(p)
    _check_degree(p**3)
    mix = build_mixed(p)
    phi1, phi2, phi3 = _mix_automorphism_perms(p)[:3]
    gens = [mix.left_translation(g) for g in mix.generator_labels] + [phi1, phi2, phi3]
    pg = PermGroup(gens, cap=max(2 * p**6, 500_000))
    if pg.order() != p**6:
        raise BadParams(f"P1 closure has order {pg.order()}, expected {p ** 6}")
    return pg


def build_P2(p):
    """Sylow p-subgroup of Hol(C_p^3): F_p^3 : H_p (H_p acting as matrices)."""
    _check_odd_prime(p)
    _check_degree(p**3)
    elem = build_elementary(p)
    lab = np.arange(p**3)
    x, y, z = lab // (p * p), (lab // p) % p, lab % p
    a_mat = ((x + y) % p) * p * p + y * p + z          # (x,y,z) -> (x+y, y, z)
    c_mat = x * p * p + ((y + z) % p) * p + z          # (x,y,z) -> (x, y+z, z)
    gens = [elem.left_translation(g) for g in elem.generator_labels]
    gens += [Perm(a_mat.tolist()), Perm(c_mat.tolist())]
    pg = PermGroup(gens, cap=max(2 * p**6, 500_000))
    if pg.order() != p**6:
        raise BadParams(f"P2 closure has order {pg.order()}, expected {p ** 6}")
    return pg
