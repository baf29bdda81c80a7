"""The structure counter: a(N, L/K) = e / |Aut(N)|.

e counts injective homomorphisms of the Galois pair (G, G') into Hol(N) whose
stabilizer part lands in the stabilizer of the identity label and whose image
is transitive.  Holomorph element tables are built once per type and shared
across every row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .aut import aut_order, aut_pair_count, holomorph
from .catalog import P3_COLUMNS, P3Type, build_p3, classify_p3_type
from .errors import DivisibilityViolation, HgsError, NotOrderP3
from .search import EmbeddingTarget, count_embeddings_into

_HOL_CACHE = {}


@dataclass
class HolData:
    """Everything the search reuses for one type N."""

    group: object            # LabeledGroup
    hol: object              # PointedGroup
    target: EmbeddingTarget
    aut_order: int


def hol_data(n_group, cap=500_000):
    key = (n_group.name, n_group.order)
    if key not in _HOL_CACHE:
        hol = holomorph(n_group, cap=cap)
        target = EmbeddingTarget.from_pointed_group(hol, name=f"Hol({n_group.name})")
        _HOL_CACHE[key] = HolData(
            group=n_group, hol=hol, target=target, aut_order=aut_order(n_group)
        )
    return _HOL_CACHE[key]


def clear_hol_cache():
    _HOL_CACHE.clear()


def count_embeddings(g_pointed, n_group, node_budget=None, class_factor=True):
    """e: injective homs G -> Hol(N) with beta(G') fixing label 0, image transitive."""
    if g_pointed.degree != n_group.order:
        raise HgsError(
            f"degree {g_pointed.degree} does not match |N| = {n_group.order}"
        )
    data = hol_data(n_group)
    return count_embeddings_into(
        data.target, g_pointed, node_budget=node_budget, class_factor=class_factor
    )


def hgs_count(g_pointed, n_group, node_budget=None):
    """a(N, L/K) = e / |Aut(N)| (divisibility is a structural guarantee)."""
    data = hol_data(n_group)
    e = count_embeddings(g_pointed, n_group, node_budget=node_budget)
    if e % data.aut_order != 0:
        raise DivisibilityViolation(
            f"e = {e} not divisible by |Aut({n_group.name})| = {data.aut_order}"
        )
    return e // data.aut_order


@dataclass
class HgsRow:
    """Counts a(N, L/K) for one Galois pair across the five types of order p^3."""

    g_name: str
    p: int
    counts: dict = field(default_factory=dict)
    error: str = ""

    @property
    def total(self):
        return sum(self.counts.values())

    def as_tuple(self):
        return tuple(self.counts[t] for t in P3_COLUMNS)

    def __str__(self):
        cells = ",".join(str(c) for c in self.as_tuple())
        return f"{self.g_name}: ({cells}|{self.total})"


def hgs_row(g_pointed, name=None, p=None, node_budget=None, check_corollary=True):
    """One table row: a(N) for all five types N of order p^3 = degree.

    With check_corollary the row is re-derived through the subgroup-count form
    (b = e/|Aut(G,G')| must be integral and reproduce a), an end-to-end check
    of the counting identity.
    """
    degree = g_pointed.degree
    if p is None:
        p = round(degree ** (1 / 3))
    if p**3 != degree:
        raise NotOrderP3(f"degree {degree} is not a prime cube")
    if name is None:
        name = f"group of order {g_pointed.order()} on {degree} points"
    row = HgsRow(g_name=name, p=p)
    apc = aut_pair_count(g_pointed) if check_corollary else None
    for t in P3_COLUMNS:
        n_group = build_p3(t, p)
        data = hol_data(n_group)
        e = count_embeddings_into(data.target, g_pointed, node_budget=node_budget)
        if e % data.aut_order != 0:
            raise DivisibilityViolation(
                f"e = {e} not divisible by |Aut({n_group.name})| = {data.aut_order}"
            )
        a = e // data.aut_order
        if check_corollary and e:
            if e % apc != 0:
                raise DivisibilityViolation(
                    f"e = {e} not divisible by |Aut(G,G')| = {apc}"
                )
            b = e // apc
            if apc * b != a * data.aut_order:
                raise DivisibilityViolation("counting identity violated")
        row.counts[t] = a
    return row


def hgs_table(pointed_groups, names=None, node_budget=None, on_row=None):
    """Rows for a list of Galois pairs, order preserving; a failed row carries
    its error message instead of aborting the table."""
    rows = []
    for i, g in enumerate(pointed_groups):
        name = names[i] if names else None
        try:
            row = hgs_row(g, name=name, node_budget=node_budget)
        except HgsError as exc:
            row = HgsRow(g_name=name or f"row {i}", p=0, error=str(exc))
        rows.append(row)
        if on_row is not None:
            on_row(row)
    return rows


def galois_regular_row(ptype, p, node_budget=None):
    """Row for a Galois extension with group of the given order-p^3 type."""
    from .catalog import regular_representation

    n_group = build_p3(ptype, p)
    g = regular_representation(n_group)
    return hgs_row(g, name=n_group.name, p=p, node_budget=node_budget)
