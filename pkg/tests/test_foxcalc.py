import pytest
from hypothesis import given

from handlebody.foxcalc import (
    NotInTwistBlock, apply_F_to_matrix, conjugation_formula, fox_left, hermitian_check,
    jacobian_F, kappa, lower_left, mag00, mag01, mag10, reconstruct, reconstruct_right,
    varpi_ring,
)
from handlebody.groupring import GR, Matrix
from handlebody.words import (
    elem_d, elem_e, handle_slide, handle_swap, in_A, mul, twist_alpha, twist_boundary,
    twist_separating,
)

from conftest import G, piwords

HANDLEBODY = [twist_alpha(G, 1), twist_boundary(G), twist_separating(G, 1, 2),
              handle_swap(G, 1), handle_slide(G, 1), handle_slide(G, 2)]


@given(piwords(max_size=8))
def test_fundamental_formula(w):
    u = GR.word(w) - 1
    assert reconstruct(w, 2 * G) == u
    assert reconstruct_right(w, 2 * G) == u


@pytest.mark.parametrize("f", HANDLEBODY[:3] + [elem_d(G, 1, -1, (G + 2,))])
@pytest.mark.parametrize("h", HANDLEBODY[3:] + [elem_e(G, 1, 3, (G + 1,))])
def test_crossed_homomorphism(f, h):
    assert jacobian_F(f @ h) == jacobian_F(f) @ apply_F_to_matrix(f, jacobian_F(h))


def test_boundary_magnus_matrix():
    want = Matrix([[(1 - GR.word((i,))) * (1 - GR.word((-j,))) for j in range(1, G + 1)]
                   for i in range(1, G + 1)])
    assert mag01(twist_boundary(G)) == want
    assert lower_left(twist_boundary(G)).is_zero()


@pytest.mark.parametrize("f", HANDLEBODY)
def test_diagonal_blocks_are_adjoint_inverse(f):
    assert mag10(f) @ mag00(f).dagger() == Matrix.identity(G)


def test_elem_d_upper_left_block():
    f = elem_d(G, 2, -1, (G + 2, G + 3))
    want = Matrix([[1, 0, 0], [0, -GR.word((2, 3)), 0], [0, 0, 1]])
    assert mag10(f) == want


def test_kappa_sends_alpha_to_basis():
    for i in range(1, G + 1):
        assert kappa(G, (i,)) == tuple(GR.one() if j == i else GR() for j in range(1, G + 1))


@given(piwords(max_size=6))
def test_beta_derivatives_vanish_on_A(w):
    a = mul(w, (1,), tuple(-x for x in reversed(w)))
    assert in_A(G, a)
    for j in range(G + 1, 2 * G + 1):
        assert not varpi_ring(G, fox_left(a, j))


@pytest.mark.parametrize("f", [twist_boundary(G), twist_alpha(G, 2) @ twist_boundary(G),
                               twist_separating(G, 2, 3) @ twist_alpha(G, 1).inverse()])
def test_hermitian(f):
    assert hermitian_check(f)


@pytest.mark.parametrize("h", [handle_slide(G, 1), handle_swap(G, 2) @ handle_slide(G, 2)])
def test_conjugation_formula_upper_left(h):
    lhs, rhs = conjugation_formula(twist_boundary(G) @ twist_alpha(G, 2), h)
    assert lhs == rhs


def test_conjugation_formula_lower_right_block_fails():
    # the same formula written with the beta/beta block does not hold
    f, h = twist_alpha(G, 2), handle_slide(G, 1)
    u = mag00(h)
    rhs = u @ apply_F_to_matrix(h, mag01(f)) @ u.dagger()
    assert mag01(h @ f @ h.inverse()) != rhs


def test_magnus_requires_twist_group():
    with pytest.raises(NotInTwistBlock):
        mag01(handle_slide(G, 1))
