from hypothesis import given
from hypothesis import strategies as st

from handlebody.groupring import GR, Matrix
from handlebody.intersect import (
    ask_identity, eta, inversion, kind_of_sym_rhs, left_theta, pairing, pairing_matrix, psi,
    psi_oracle, pseudo_jacobi, pseudo_jacobi_bis, right_theta,
)
from handlebody.liefree import a, zeta_class
from handlebody.words import inv, lift_F, mul

from conftest import G, aelts, fwords, letters, piwords, rings


def test_eta_values():
    al, be = (1,), (G + 1,)
    assert eta(G, be, al) == GR.lift(-1)
    assert eta(G, al, be) == GR.word(al) + GR.word(be) - 1


@given(piwords(max_size=4), piwords(max_size=4))
def test_ask_identity(u, v):
    lhs, rhs = ask_identity(G, u, v)
    assert lhs == rhs


def test_pairing_values():
    assert pairing(GR.word((1,)) - 1, a(1), G, check=True) == GR.lift(-1)
    assert pairing_matrix(G) == Matrix.identity(G).map(lambda e: -e)


@given(rings(), aelts())
def test_pairing_paths_agree(x, u):
    pairing(x, u, G, check=True)


def test_psi_base_values():
    assert psi(a(1), a(1)).terms == {((), (1, ())): 1}
    assert not psi(a(1), a(2))


@given(aelts())
def test_psi_on_boundary_class(u):
    assert psi(u, zeta_class(G)).terms == {((), w[0]): c for w, c in u.terms.items()}


@given(letters(), letters())
def test_psi_matches_oracle(x, y):
    wx = mul(lift_F(G, x[1]), (x[0],), inv(lift_F(G, x[1])))
    wy = mul(lift_F(G, y[1]), (y[0],), inv(lift_F(G, y[1])))
    assert psi(a(*x), a(*y)) == psi_oracle(G, wx, wy)


@given(aelts(), aelts())
def test_peeling_order_is_confluent(u, v):
    assert psi(u, v) == psi(u, v, peeled=True)


@given(aelts(), aelts())
def test_twisted_symmetry(u, v):
    assert psi(v, u) == kind_of_sym_rhs(u, v)


@given(fwords(), fwords(), aelts())
def test_left_theta(x, y, u):
    lhs, rhs = left_theta(x, y, u)
    assert lhs == rhs


@given(rings(), fwords(), aelts())
def test_right_theta_and_inversion(r, f, u):
    for lhs, rhs in (right_theta(r, f, u), inversion(r, u)):
        assert lhs == rhs


@given(aelts(max_terms=2), aelts(max_terms=2), aelts(max_terms=2))
def test_pseudo_jacobi_pair(u, v, w):
    for lhs, rhs in (pseudo_jacobi(u, v, w), pseudo_jacobi_bis(u, v, w)):
        assert lhs == rhs


@given(st.integers(1, G))
def test_psi_oracle_diagonal(i):
    assert psi_oracle(G, (i,), (i,)).terms == {((), (i, ())): 1}
