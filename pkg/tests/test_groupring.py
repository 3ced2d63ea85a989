import pytest
from hypothesis import given

from handlebody.groupring import GR, Matrix, antipode, format_gr, format_matrix, parse_gr, parse_matrix
from handlebody.words import F, WordError

from conftest import G, rings


@given(rings(), rings(), rings())
def test_ring_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert (u + v) * w == u * w + v * w


@given(rings(), rings())
def test_antipode_reverses_products(u, v):
    assert antipode(u * v) == antipode(v) * antipode(u)
    assert (u * v).augmentation() == u.augmentation() * v.augmentation()


@given(rings())
def test_text_roundtrip(u):
    al = F(G)
    assert parse_gr(al, format_gr(al, u)) == u


def test_matrix_text_roundtrip():
    al = F(2)
    m = Matrix([[GR.word((1,)) - 1, 2], [0, GR.word((-2, 1), 3)]])
    text = format_matrix(al, m)
    assert parse_matrix(al, text) == m
    assert format_matrix(al, parse_matrix(al, text)) == text


def test_dagger_is_involution():
    m = Matrix([[GR.word((1, 2)), 1], [GR.word((-1,)) - 2, 0]])
    assert m.dagger().dagger() == m
    assert (m @ m).dagger() == m.dagger() @ m.dagger()


@pytest.mark.parametrize("bad", ["x1 +", "y2", "1/0*x1", "x1 x"])
def test_parse_rejects(bad):
    with pytest.raises((WordError, ValueError, ZeroDivisionError)):
        parse_gr(F(G), bad)
