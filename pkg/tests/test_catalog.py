import numpy as np
import pytest

from hgs.catalog import (
    P3Type,
    build_cpn_semidirect,
    build_cyclic,
    build_elementary,
    build_elementary_rank2,
    build_exp_p2,
    build_heisenberg,
    build_mixed,
    build_P1,
    build_P2,
    classify_p3_type,
    labeled_from_regular,
    primitive_root_mod_p2,
    regular_representation,
)
from hgs.errors import BadParams, NotOrderP3
from hgs.groups import PermGroup, PointedGroup
from hgs.perm import compose, cycle_type


def assert_associative(group):
    t = group.table
    n = group.order
    for i in range(n):
        assert np.array_equal(t[t[i], :], t[i, t]), f"associativity fails at {i}"


@pytest.mark.parametrize("p", [3, 5])
def test_builders_are_groups(p):
    for group in (
        build_cyclic(p, 3),
        build_mixed(p),
        build_elementary(p),
        build_heisenberg(p),
        build_exp_p2(p),
    ):
        assert group.order == p**3
        assert_associative(group)
        inv = group.inverses
        assert len(set(inv.tolist())) == group.order


def test_cyclic():
    c27 = build_cyclic(3, 3)
    assert c27.order == 27
    assert c27.element_orders[1] == 27
    assert c27.order_census()[27] == 18  # Euler phi
    assert build_cyclic(5, 3).order == 125


def test_mixed_censuses():
    for p in (3, 5, 7):
        mix = build_mixed(p)
        census = mix.order_census()
        assert census[p * p] == (p * p - p) * p
        assert census[p] == p * p - 1
        assert mix.mult(0, 0) == 0


def test_elementary():
    elem = build_elementary(3)
    assert elem.order == 27
    assert elem.order_census() == {1: 1, 3: 26}
    assert build_elementary_rank2(3).order_census() == {1: 1, 3: 8}


def test_heisenberg_relations():
    for p in (3, 5):
        h = build_heisenberg(p)
        A, C = (h.left_translation(g) for g in h.generator_labels)
        b_lab = h.mult(h.mult(p * p, 1), h.inverse_label(h.mult(1, p * p)))
        B = h.left_translation(b_lab)
        assert compose(A, C) == compose(compose(B, C), A)  # AC = BCA
        census = h.order_census()
        assert census == {1: 1, p: p**3 - 1}
        # centre is <B> of order p: elements commuting with both generators
        t = h.table
        central = [
            x for x in range(h.order)
            if t[x, p * p] == t[p * p, x] and t[x, 1] == t[1, x]
        ]
        assert len(central) == p
        assert b_lab in central


def test_exp_p2_relations():
    for p in (3, 5):
        g = build_exp_p2(p)
        M, N = (g.left_translation(x) for x in g.generator_labels)
        mp1 = M
        for _ in range(p):
            mp1 = compose(mp1, M)
        assert compose(N, M) == compose(mp1, N)  # NM = M^{p+1} N
        assert g.order_census()[p * p] == p**3 - p * p


def test_classify():
    assert classify_p3_type(build_cyclic(3, 3)) is P3Type.CYC
    assert classify_p3_type(build_mixed(3)) is P3Type.MIX
    assert classify_p3_type(build_heisenberg(3)) is P3Type.HEIS
    assert classify_p3_type(build_elementary(3)) is P3Type.ELEM
    assert classify_p3_type(build_exp_p2(3)) is P3Type.EXP2
    for p in (5, 7):
        assert classify_p3_type(build_heisenberg(p)) is P3Type.HEIS
        assert classify_p3_type(build_exp_p2(p)) is P3Type.EXP2
    with pytest.raises(NotOrderP3):
        classify_p3_type(build_elementary_rank2(3))
    # permutation-group input
    assert classify_p3_type(regular_representation(build_mixed(3)).group) is P3Type.MIX


def test_regular_representation():
    h27 = regular_representation(build_heisenberg(3))
    assert h27.order() == 27
    assert h27.is_regular()
    for g in h27.group.elements():
        if not g.is_identity():
            assert dict(cycle_type(g)) == {3: 9}
    assert all(g.is_identity() for g in h27.stabilizer_generators())


def test_semidirect_builder():
    reg = build_cpn_semidirect(3, 3, 1)
    assert reg.is_regular() and reg.order() == 27
    g243 = build_cpn_semidirect(3, 3, 9)
    assert g243.order() == 243
    assert g243.group.is_transitive()
    census = g243.group.order_census()
    assert max(census) == 27  # the Sylow-3 is the whole group, order 27 elements exist
    g54 = build_cpn_semidirect(3, 3, 2)
    assert g54.order() == 54 and g54.stabilizer_order() == 2
    with pytest.raises(BadParams):
        build_cpn_semidirect(3, 3, 5)
    with pytest.raises(BadParams):
        build_cpn_semidirect(4, 2, 1)


def test_primitive_root():
    assert primitive_root_mod_p2(3) == 2
    for p in (3, 5, 7):
        g = primitive_root_mod_p2(p)
        m = p * p
        k, acc = 1, g % m
        while acc != 1:
            acc = acc * g % m
            k += 1
        assert k == p * (p - 1)


def test_p1_p2():
    p1, p2 = build_P1(3), build_P2(3)
    assert p1.order() == 3**6 and p2.order() == 3**6
    assert p1.is_transitive() and p2.is_transitive()
    # p = 3 is the exceptional case: both contain order-9 elements
    assert p1.order_census().get(9, 0) > 0
    assert p2.order_census().get(9, 0) > 0


def test_labeled_from_regular_roundtrip():
    mix = build_mixed(3)
    reg = regular_representation(mix)
    lab, to_label = labeled_from_regular(reg)
    assert lab.order == 27
    assert_associative(lab)
    assert classify_p3_type(lab) is P3Type.MIX
    # conjugating the original action by the relabeling gives left translations
    from hgs.perm import Perm, inverse

    for g in reg.group.generators:
        moved = compose(compose(to_label, g), inverse(to_label))
        assert moved == lab.left_translation(moved(0))
