"""Exact arithmetic on permutations of {0, ..., g-1}.

A permutation is stored as the tuple of images (image of point i at index i).
Points are 0-based internally; the cycle-notation text format is 1-based.
"""

from __future__ import annotations

import re
from collections import Counter
from math import lcm

from .errors import BadParams, DegreeCapExceeded, DegreeMismatch, ParseError

DEGREE_CAP = 512


class Perm:
    """An immutable permutation given by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if not images:
            raise BadParams("degree must be >= 1")
        if sorted(images) != list(range(len(images))):
            raise BadParams(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Perm({format_cycles(self)!r})"

    def __mul__(self, other):
        return compose(self, other)

    def is_identity(self):
        return all(i == v for i, v in enumerate(self.images))


def identity(degree):
    return Perm(range(degree))


def compose(p, q):
    """p * q: apply q first, then p (so (p*q)(x) = p(q(x)))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degree {p.degree} != {q.degree}")
    pi = p.images
    return Perm(tuple(pi[x] for x in q.images))


def inverse(p):
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Perm(inv)


def cycles(p):
    """Cycle decomposition including fixed points, each cycle led by its least point."""
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p.images[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p.images[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p):
    """Multiset of cycle lengths (fixed points count as 1-cycles)."""
    return Counter(len(c) for c in cycles(p))


def element_order(p):
    return lcm(*(len(c) for c in cycles(p)))


_CYCLE_RE = re.compile(r"\(\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\)")


def parse_cycles(text, degree=None):
    """Parse 1-based cycle notation like "(1,2,3)(4,5)"; "()" is the identity.

    Omitted points are fixed.  When degree is None it is inferred from the
    largest point mentioned (at least 1).
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseError("empty permutation text")
    pos = 0
    cycs = []
    maxpt = 0
    while pos < len(stripped):
        m = _CYCLE_RE.match(stripped, pos)
        if m is None:
            raise ParseError(f"bad cycle syntax at {stripped[pos:pos + 12]!r}")
        body = m.group(1)
        pos = m.end()
        if not body:
            continue
        pts = [int(tok) for tok in body.split(",")]
        if any(pt < 1 for pt in pts):
            raise ParseError("points are 1-based; 0 is not a point")
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point in cycle {body!r}")
        maxpt = max(maxpt, max(pts))
        cycs.append(pts)
    if degree is None:
        degree = max(maxpt, 1)
    if degree > DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {degree} above cap {DEGREE_CAP}")
    if maxpt > degree:
        raise ParseError(f"point {maxpt} above degree {degree}")
    moved = set()
    for pts in cycs:
        if moved & set(pts):
            raise ParseError("cycles are not disjoint")
        moved |= set(pts)
    images = list(range(degree))
    for pts in cycs:
        for i, pt in enumerate(pts):
            images[pt - 1] = pts[(i + 1) % len(pts)] - 1
    return Perm(images)


def format_cycles(p):
    """1-based disjoint-cycle text; identity prints as "()"."""
    parts = [
        "(" + ",".join(str(pt + 1) for pt in cyc) + ")"
        for cyc in cycles(p)
        if len(cyc) > 1
    ]
    return "".join(parts) if parts else "()"
