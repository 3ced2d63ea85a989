import pytest
from hypothesis import given
from hypothesis import strategies as st

from handlebody._tensor import Tensor, expand_lyndon, is_lie
from handlebody.liefree import (
    LieParseError, NotInGamma, a, act_F, class_of, coinvariant_reduce, format_lie,
    letter_key, lyndon_form, module_basis, parse_lie, zeta_class,
)
from handlebody.words import commutator, mul, zeta

from conftest import G, aelts, fwords, piwords


@given(aelts(), aelts(), aelts())
def test_lyndon_form_reexpands(x, y, z):
    u = x.bracket(y) + x.bracket(y.bracket(z))
    back = sum((expand_lyndon(w, letter_key).scale(c) for w, c in lyndon_form(u)), Tensor())
    assert back == u


@given(fwords(), aelts(), aelts())
def test_action_commutes_with_bracket(f, x, y):
    assert act_F(f, x.bracket(y)) == act_F(f, x).bracket(act_F(f, y))


@given(aelts(), aelts())
def test_text_roundtrip(x, y):
    u = x + x.bracket(y)
    assert parse_lie(format_lie(u)) == u


@given(piwords(max_size=4), piwords(max_size=4))
def test_class_of_is_additive_in_degree_one(u, v):
    p, q = mul(u, (1,), _inv(u)), mul(v, (2,), _inv(v))
    assert class_of(G, mul(p, q), 1) == class_of(G, p, 1) + class_of(G, q, 1)


@given(piwords(max_size=3), piwords(max_size=3))
def test_class_of_is_additive_in_degree_two(u, v):
    p = commutator(mul(u, (1,), _inv(u)), (2,))
    q = commutator((3,), mul(v, (1,), _inv(v)))
    assert class_of(G, mul(p, q), 2) == class_of(G, p, 2) + class_of(G, q, 2)


def _inv(w):
    return tuple(-x for x in reversed(w))


def test_class_of_rejects_lower_classes():
    with pytest.raises(NotInGamma):
        class_of(G, (1,), 2)


def test_alpha_classes_are_the_basis():
    assert [class_of(G, (i,), 1) for i in range(1, G + 1)] == [a(i) for i in range(1, G + 1)]


def test_zeta_class_small_genus():
    assert zeta_class(1) == a(1) - a(1, (-1,))
    assert zeta_class(2) == a(1) - a(1, (-1,)) + a(2) - a(2, (-2,))
    for g in (1, 2, 3):
        assert class_of(g, zeta(g), 1) == zeta_class(g)


@given(aelts(), aelts())
def test_coinvariant_decomposition(x, y):
    u = x.bracket(y)
    rep, parts = coinvariant_reduce(u)
    assert u == rep + sum((act_F(f, v) - v for f, v in parts), Tensor())


def test_module_basis_is_lie_with_plain_first_letter():
    basis = module_basis(2, 2, [(), (1,)])
    assert basis and all(is_lie(b) for b in basis)


@pytest.mark.parametrize("bad", ["[(1 . a1)", "(x1 . b1)", "2*", "(1 . a1) ]"])
def test_parse_rejects(bad):
    with pytest.raises(LieParseError):
        parse_lie(bad)


@given(st.integers(1, G), fwords())
def test_letter_format(i, f):
    assert parse_lie(format_lie(a(i, f))) == a(i, f)
