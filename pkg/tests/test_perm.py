import random

import pytest

from hgs.errors import BadParams, DegreeMismatch, ParseError
from hgs.perm import (
    Perm,
    compose,
    cycle_type,
    element_order,
    format_cycles,
    identity,
    inverse,
    parse_cycles,
)


def test_identity_laws():
    q = parse_cycles("(1,5)(2,9,3)", 27)
    assert compose(identity(27), q) == q
    assert compose(q, identity(27)) == q


def test_inverse_pair_is_identity():
    p = parse_cycles("(1,2,3)", 3)
    assert compose(p, inverse(p)).is_identity()


def test_hand_composition():
    # (0 1) after (1 2) on 3 points: apply q=(1 2) then p=(0 1)
    p = Perm((1, 0, 2))
    q = Perm((0, 2, 1))
    assert compose(p, q).images == (1, 2, 0)


def test_27_cycle_inverse():
    c = parse_cycles("(" + ",".join(str(i) for i in range(1, 28)) + ")")
    assert c.degree == 27
    assert compose(c, inverse(c)).is_identity()
    assert inverse(c).images == tuple((i - 1) % 27 for i in range(27))


def test_element_orders():
    assert element_order(identity(9)) == 1
    g = parse_cycles("(1,2,3,4,5,6,7,8,9)")
    assert element_order(g) == 9
    # cycle type (9,9,9) on 27 points has order 9: check against brute power
    p = parse_cycles("(1,...)".replace("...", ",".join(str(i) for i in range(2, 10)))
                     + "(10," + ",".join(str(i) for i in range(11, 19)) + ")"
                     + "(19," + ",".join(str(i) for i in range(20, 28)) + ")")
    assert sorted(cycle_type(p).elements()) == [9, 9, 9]
    assert element_order(p) == 9
    acc = p
    for k in range(2, 10):
        acc = compose(acc, p)
    assert acc.is_identity()


def test_cycle_types():
    assert dict(cycle_type(identity(9))) == {1: 9}
    c27 = parse_cycles("(" + ",".join(str(i) for i in range(1, 28)) + ")")
    assert dict(cycle_type(c27)) == {27: 1}


def test_regular_group_uniform_cycle_type():
    from hgs.catalog import build_cyclic, build_elementary_rank2, regular_representation

    for n_group in (build_cyclic(3, 2), build_elementary_rank2(3)):
        reg = regular_representation(n_group)
        for g in reg.group.elements():
            if g.is_identity():
                continue
            lengths = set(cycle_type(g))
            assert len(lengths) == 1, "regular groups force uniform cycle types"


def test_parse_format_roundtrip():
    rng = random.Random(7)
    for _ in range(50):
        images = list(range(12))
        rng.shuffle(images)
        p = Perm(images)
        assert parse_cycles(format_cycles(p), 12) == p
    assert format_cycles(identity(4)) == "()"
    assert parse_cycles("()", 5) == identity(5)
    assert parse_cycles(" ( 1 , 2 ) ", 4) == Perm((1, 0, 2, 3))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_cycles("(1,2", 4)
    with pytest.raises(ParseError):
        parse_cycles("(1,1)", 4)
    with pytest.raises(ParseError):
        parse_cycles("(1,2)(2,3)", 4)
    with pytest.raises(ParseError):
        parse_cycles("(0,1)", 4)
    with pytest.raises(ParseError):
        parse_cycles("(1,9)", 4)


def test_validation_errors():
    with pytest.raises(BadParams):
        Perm((0, 0, 2))
    with pytest.raises(DegreeMismatch):
        compose(identity(3), identity(4))


def test_associativity_random_triples():
    rng = random.Random(11)
    for _ in range(100):
        ps = []
        for _ in range(3):
            images = list(range(10))
            rng.shuffle(images)
            ps.append(Perm(images))
        p, q, r = ps
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


def test_inverse_involution():
    rng = random.Random(13)
    for _ in range(50):
        images = list(range(27))
        rng.shuffle(images)
        p = Perm(images)
        assert inverse(inverse(p)) == p
