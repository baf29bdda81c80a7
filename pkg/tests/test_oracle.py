import pytest

from hgs.byott import hgs_count
from hgs.catalog import (
    build_cpn_semidirect,
    build_cyclic,
    build_elementary_rank2,
    regular_representation,
)
from hgs.errors import DegreeCapExceeded
from hgs.groups import PermGroup, PointedGroup, normalizes
from hgs.oracle import (
    oracle_row,
    regular_subgroups_normalized_by,
    regular_subgroups_of_sym,
    uniform_fpf_elements,
)
from hgs.perm import Perm, parse_cycles


def test_uniform_fpf_counts():
    assert len(uniform_fpf_elements(9, 9)) == 40320   # (9-1)!
    assert len(uniform_fpf_elements(9, 3)) == 2240    # 9!/(3^3 3!) * 2^3
    assert len(uniform_fpf_elements(6, 2)) == 15
    assert uniform_fpf_elements(9, 2) == []           # 2 does not divide 9


def test_regular_subgroup_enumeration_s9():
    subs = regular_subgroups_of_sym(9)
    # 6720 cyclic (8!/phi(9)) + 840 elementary (|S9| / |AGL(2,3)|)
    assert len(subs) == 7560
    from collections import Counter

    from hgs.oracle import _iso_label

    counts = Counter(_iso_label(gens) for _, gens, _ in subs)
    assert counts == {"C9": 6720, "C3^2": 840}


def test_oracle_counts_match_propositions():
    c9 = regular_representation(build_cyclic(3, 2))
    row = oracle_row(c9)
    assert row == {"C9": 3}          # p^(n-1) cyclic, zero noncyclic
    d9 = build_cpn_semidirect(3, 2, 2)
    assert oracle_row(d9) == {"C9": 1}


def test_oracle_subgroups_are_regular_and_normalized():
    g = regular_representation(build_elementary_rank2(3))
    found = regular_subgroups_normalized_by(g)
    assert found, "the translation image itself is always there"
    for key, label in found:
        perms = [Perm(_images(k)) for k in key]
        sub = PermGroup(perms)
        assert sub.order() == 9
        assert sub.is_transitive()
        for h in g.group.generators:
            assert normalizes(h, perms)


def _images(key):
    import numpy as np

    return np.frombuffer(key, dtype=np.uint8).tolist()


def test_sym9_normalizes_nothing():
    s9 = PointedGroup(
        PermGroup([parse_cycles("(1,2)", 9), parse_cycles("(1,2,3,4,5,6,7,8,9)", 9)]),
        0,
    )
    assert oracle_row(s9) == {}


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        oracle_row(
            PointedGroup(PermGroup([parse_cycles("(1,2,3,4,5,6,7,8,9,10)", 10)]), 0)
        )


def test_oracle_equals_byott_on_catalog_groups():
    cyc9 = build_cyclic(3, 2)
    e9 = build_elementary_rank2(3)
    cases = [
        ("C9", regular_representation(cyc9)),
        ("C3^2", regular_representation(e9)),
        ("C9:C2", build_cpn_semidirect(3, 2, 2)),
        ("C9:C3", build_cpn_semidirect(3, 2, 3)),
        ("C9:C6", build_cpn_semidirect(3, 2, 6)),
    ]
    for name, g in cases:
        row = oracle_row(g)
        assert row.get("C9", 0) == hgs_count(g, cyc9), name
        assert row.get("C3^2", 0) == hgs_count(g, e9), name
