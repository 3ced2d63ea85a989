from fractions import Fraction

import pytest
from hypothesis import given

from handlebody._tensor import ONE, Tensor, exp_series, log_series
from handlebody.envelope import (
    SolverFailure, degree_one_conjugators, ell, env_mul, expansion_from_json,
    expansion_to_json, free_special_conjugators, is_special, special_construct,
    theta_eval, theta_standard, theta_tensor, validate_expansion,
)
from handlebody.liefree import a, zeta_class
from handlebody.words import in_A, mul, zeta

from conftest import G, aelts, piwords


@given(piwords(max_size=4), piwords(max_size=4))
def test_expansion_is_multiplicative(u, v):
    th = theta_standard(G, 3)
    assert theta_eval(th, mul(u, v)) == env_mul(theta_eval(th, u), theta_eval(th, v))


@given(piwords(max_size=5))
def test_trivial_F_part_iff_in_A(w):
    _, y = theta_tensor(theta_standard(G, 2), w)
    assert (y == ()) == in_A(G, w)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_exp_log_roundtrip(N):
    x = a(1) + a(2, (1,)).scale(2) + a(1).bracket(a(3))
    assert log_series(exp_series(x, N), N) == x.truncate(N)
    y = exp_series(x, N)
    assert exp_series(log_series(y, N), N) == y


def test_standard_expansion_values():
    th = theta_standard(G, 4)
    assert validate_expansion(th)
    assert ell(th, (1,)) == a(1)
    assert theta_tensor(th, (G + 2,)) == (ONE, (2,))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_special_construct(g):
    th = special_construct(g, 4)
    assert validate_expansion(th)
    assert is_special(th)
    assert ell(th, zeta(g)) - zeta_class(g) == Tensor()


def test_standard_is_not_special():
    assert not is_special(theta_standard(2, 3))


def test_degree_one_seed_sums_below():
    d = [Tensor.letter(i) for i in range(1, 5)]
    vs = degree_one_conjugators(4)
    assert vs[0] == Tensor()
    assert vs[3] == (d[0] + d[1] + d[2]).scale(Fraction(1, 2))


def test_literal_degree_one_seed_fails_in_degree_two():
    # sum over j > i solves the reversed product order, not ours
    with pytest.raises(SolverFailure):
        free_special_conjugators(4, 3, seed=degree_one_conjugators(4, literal=True))
    assert free_special_conjugators(4, 3)[0].degree_part(1) == Tensor()


def test_expansion_json_roundtrip():
    th = special_construct(2, 3)
    back = expansion_from_json(expansion_to_json(th))
    assert back.ell_alpha == th.ell_alpha and back.m_beta == th.m_beta


@given(aelts(g=2))
def test_log_of_grouplike_is_lie(x):
    from handlebody._tensor import is_lie
    assert is_lie(log_series(exp_series(x, 3), 3))
