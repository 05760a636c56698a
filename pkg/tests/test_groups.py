from __future__ import annotations

import pytest

from treeorder.groups import (
    FreeGroup,
    GroupError,
    InfiniteDihedral,
    TableGroup,
    Z,
    Zk,
    make_group,
)

Z5_TABLE = [[(i + j) % 5 for j in range(5)] for i in range(5)]


def test_integers_basics():
    z = Z()
    assert z.ball(2) == [0, -1, 1, -2, 2]
    assert z.mult(3, -5) == -2
    assert z.inv(7) == -7
    assert z.components(4) == (4,)
    assert z.format(-2) == "-2"


def test_lattice_ball_and_ops():
    g = Zk(2)
    assert g.ball(1) == [(0, 0), (-1, 0), (0, -1), (0, 1), (1, 0)]
    assert g.mult((1, 2), (3, -1)) == (4, 1)
    assert g.inv((2, -3)) == (-2, 3)
    assert g.components((5, 6)) == (5, 6)


def test_free_group_words():
    f = FreeGroup(2)
    assert [len(f.ball(r)) for r in range(3)] == [1, 5, 17]
    a, b = (1,), (2,)
    assert f.mult(a, f.inv(a)) == ()
    word = f.mult(a, b)
    assert f.inv(word) == f.mult(f.inv(b), f.inv(a))
    with pytest.raises(GroupError):
        f.components(word)


def test_free_group_order_sign():
    f = FreeGroup(2)
    identity = ()
    assert f.order_sign(identity) == 0
    for w in f.ball(3):
        if w == identity:
            continue
        s = f.order_sign(w)
        assert s in (-1, 1)
        assert f.order_sign(f.inv(w)) == -s


def test_dihedral_ball_and_relations():
    d = InfiniteDihedral()
    assert d.ball(2) == [
        (0, 0), (-1, 0), (0, 1), (1, 0), (-2, 0), (-1, 1), (1, 1), (2, 0),
    ]
    s, t = (0, 1), (1, 0)
    assert d.mult(s, s) == (0, 0)
    assert d.mult(t, s) == (1, 1)
    # Conjugating the shift by the flip inverts it.
    assert d.mult(d.mult(s, t), s) == d.inv(t)
    assert [d.format(g) for g in d.ball(1)] == ["e", "t^-1", "s", "t"]


def test_table_group_valid():
    g = TableGroup(list(range(5)), Z5_TABLE, 0)
    assert g.mult(3, 4) == 2
    assert g.inv(2) == 3
    assert g.ball(1) == g.ball(99)
    assert len(g.ball(1)) == 5
    assert g.components(3) == (3,)


def test_table_group_rejects_bad_tables():
    with pytest.raises(GroupError, match="square"):
        TableGroup([0, 1], [[0, 1]], 0)
    with pytest.raises(GroupError, match="identity"):
        TableGroup([0, 1], [[0, 1], [1, 0]], 2)
    with pytest.raises(GroupError, match="escapes"):
        TableGroup([0, 1], [[0, 1], [1, 7]], 0)
    # Left-identity broken in row order.
    with pytest.raises(GroupError):
        TableGroup([0, 1], [[1, 0], [0, 1]], 0)
    # A non-associative magma with an identity and inverses.
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupError, match="associativity"):
        TableGroup(list(range(5)), loop, 0)


def test_make_group_families():
    assert make_group("z", None).format(1) == "1"
    assert make_group("zk", 3).components((1, 2, 3)) == (1, 2, 3)
    assert make_group("free", 2).ball(0) == [()]
    assert make_group("dihedral", None).mult((0, 1), (0, 1)) == (0, 0)
    with pytest.raises(GroupError):
        make_group("icosahedral", None)
