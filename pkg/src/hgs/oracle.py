"""Independent oracle: direct enumeration of regular subgroups of Sym(g)
normalized by the Galois image, for small g.

Every nonidentity element of a regular subgroup is fixed-point free with
uniform cycle type, so seeding on those elements and closing is a complete
enumeration.  The counts this module produces are compared type by type with
the holomorph-embedding counter; the two routes share nothing beyond the
permutation primitives.
"""

from __future__ import annotations

import sys
from collections import Counter
from math import lcm

import numpy as np

from . import _nputil as npu
from .errors import DegreeCapExceeded, OrderCapExceeded
from .groups import PermGroup, normalizes
from .perm import Perm

ORACLE_DEGREE_CAP = 9

_REGULAR_CACHE = {}


def uniform_fpf_elements(degree, d):
    """All permutations of {0..degree-1} whose cycles all have length d >= 2."""
    if degree % d != 0 or d < 2:
        return []
    out = []
    images = [-1] * degree

    def _choose_cycle(rest, cyc):
        if len(cyc) == d:
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % d]
            extend()
            for pt in cyc:
                images[pt] = -1
            return
        for i, nxt in enumerate(rest):
            cyc.append(nxt)
            _choose_cycle(rest[:i] + rest[i + 1:], cyc)
            cyc.pop()

    def extend():
        if -1 not in images:
            out.append(Perm(list(images)))
            return
        start = images.index(-1)
        rest = [x for x in range(degree) if images[x] < 0 and x != start]
        _choose_cycle(rest, [start])

    extend()
    return out


def _all_uniform_fpf(degree):
    seeds = []
    for d in range(2, degree + 1):
        if degree % d == 0:
            seeds.extend(uniform_fpf_elements(degree, d))
    return seeds


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def regular_subgroups_of_sym(degree):
    """Every regular subgroup of Sym(degree) as (element keys, generators).

    Grown from uniform fixed-point-free seeds; a partial subgroup is kept only
    while its order divides the degree.  For degree p^2 the target groups are
    abelian, so extension candidates are prefiltered to commute with the
    current generators.  Cached per degree.
    """
    if degree in _REGULAR_CACHE:
        return _REGULAR_CACHE[degree]
    seeds = _all_uniform_fpf(degree)
    dt = npu.point_dtype(degree)
    seed_rows = np.array([s.images for s in seeds], dtype=dt)
    p2root = round(degree**0.5)
    abelian_mode = p2root * p2root == degree and _is_prime(p2root)

    def closure(gens):
        try:
            rows = npu.bfs_closure([npu.as_row(g.images, degree) for g in gens], degree)
        except OrderCapExceeded:
            return None
        if degree % rows.shape[0] != 0:
            return None
        return rows

    complete = {}
    partial = {}
    for s in seeds:
        rows = closure([s])
        if rows is None:
            continue
        key = frozenset(npu.row_keys(rows))
        (complete if len(key) == degree else partial).setdefault(key, [s])
    while partial:
        grown = {}
        for key, gens in partial.items():
            if abelian_mode:
                keep = np.ones(seed_rows.shape[0], dtype=bool)
                for g in gens:
                    grow = npu.as_row(g.images, degree)
                    keep &= np.all(seed_rows[:, grow] == grow[seed_rows], axis=1)
                cand_idx = np.flatnonzero(keep).tolist()
            else:
                cand_idx = range(seed_rows.shape[0])
            for i in cand_idx:
                if seed_rows[i].tobytes() in key:
                    continue
                rows = closure(gens + [seeds[i]])
                if rows is None:
                    continue
                new_key = frozenset(npu.row_keys(rows))
                bucket = complete if len(new_key) == degree else grown
                if new_key not in bucket and new_key not in partial:
                    bucket[new_key] = gens + [seeds[i]]
        partial = grown
    out = []
    for key, gens in sorted(complete.items(), key=lambda kv: sorted(kv[0])):
        pg = PermGroup(gens)
        if pg.is_transitive():
            out.append((key, gens, pg.elements()))
    _REGULAR_CACHE[degree] = out
    return out


def _iso_label(gens):
    """Isomorphism label; (order, exponent, abelian, #involutions) separates
    all groups of order <= 9."""
    pg = PermGroup(gens)
    census = pg.order_census()
    order = pg.order()
    exp = lcm(*census.keys())
    if exp == order:
        return f"C{order}"
    if pg.is_abelian():
        return {
            (4, 2): "C2^2", (8, 2): "C2^3", (8, 4): "C4xC2", (9, 3): "C3^2",
        }.get((order, exp), f"ab{order}e{exp}")
    if order == 6:
        return "S3"
    if order == 8:
        return "Q8" if census.get(2, 0) == 1 else "D4"
    return f"nonab{order}e{exp}"


def regular_subgroups_normalized_by(pointed, degree_cap=ORACLE_DEGREE_CAP):
    """Regular subgroups of Sym(g) normalized by every generator of the
    Galois image, each tagged with its isomorphism label.

    degree_cap may be raised past 9, but the seed enumeration is factorial in
    the degree; a warning goes to stderr.
    """
    degree = pointed.degree
    if degree > degree_cap:
        raise DegreeCapExceeded(
            f"oracle degree {degree} above cap {degree_cap} "
            f"(pass degree_cap to force; expect a factorial blowup)"
        )
    if degree > ORACLE_DEGREE_CAP:
        print(
            f"oracle: degree {degree} seed enumeration is factorial; "
            "this may effectively never finish",
            file=sys.stderr,
        )
    gal_gens = pointed.group.generators
    out = []
    for key, gens, elems in regular_subgroups_of_sym(degree):
        if all(normalizes(h, elems, gens=gens) for h in gal_gens):
            out.append((key, _iso_label(gens)))
    return out


def oracle_row(pointed, degree_cap=ORACLE_DEGREE_CAP):
    """Per-type counts of normalized regular subgroups; by the bijective
    correspondence these are the structure counts themselves."""
    found = regular_subgroups_normalized_by(pointed, degree_cap=degree_cap)
    return dict(sorted(Counter(label for _, label in found).items()))
