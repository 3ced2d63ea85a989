import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from handlebody.acceptance import deep_commutators, random_product, random_tree, twist_generators
from handlebody.diagrams import diag_to_sder, eta_tree
from handlebody.envelope import special_construct, theta_standard
from handlebody.johnson import (
    GREATER, NotInFiltration, SDer, bch_sder, d0_to_d1, d0_to_d1_division, jf_degree,
    jf_degree_alpha, jf_degree_beta, leading_term, non_equiv_check, sder_bracket, tau,
    tau0, tau1, varrho,
)
from handlebody.liefree import a, act_F, zeta_class
from handlebody.words import (
    PI, handle_slide, handle_swap, identity, twist_alpha, twist_boundary, twist_separating,
)

from conftest import G, fwords


def random_sder(seed: int, k: int) -> SDer:
    rng = random.Random(seed)
    d = diag_to_sder(eta_tree(random_tree(rng, G, k), G))
    return d.with_trunc(k + 3)


def test_boundary_twist_degree_one():
    z = zeta_class(G)
    d = tau(twist_boundary(G), 1)
    assert d.c == tuple(z - act_F((j,), z) for j in range(1, G + 1))


@pytest.mark.parametrize("f", [twist_alpha(G, 1), twist_boundary(G), twist_separating(G, 1, 2),
                               twist_alpha(G, 2) @ twist_boundary(G).inverse()])
def test_tau_vanishes_on_boundary(f):
    assert not tau(f, 1).on_zeta()


@pytest.mark.parametrize("c", deep_commutators(G))
def test_deep_commutators_are_degree_two(c):
    assert jf_degree(c, 3) == 2
    d = tau(c, 2)
    assert d and not d.on_zeta()
    with pytest.raises(NotInFiltration):
        tau(c, 3)


@given(fwords(max_size=2), st.integers(1, G), st.sampled_from(sorted(twist_generators(G))))
def test_non_equivariance_formula(x, i, name):
    assert non_equiv_check(twist_generators(G)[name], 1, x, i)


@given(st.integers(0, 10_000))
def test_filtration_degree_sides_agree(seed):
    rng = random.Random(seed)
    cat = dict(twist_generators(G), L1=handle_slide(G, 1), W1=handle_swap(G, 1))
    f = random_product(rng, cat, rng.randint(1, 3))
    assert jf_degree_alpha(f, 3) == jf_degree_beta(f, 3)


def test_identity_is_deeper_than_truncation():
    assert jf_degree(identity(PI(G)), 4) == GREATER
    f = twist_alpha(G, 1)
    assert jf_degree(f @ f.inverse(), 4) == GREATER
    assert jf_degree(f @ f, 4) == 1


def test_tau_precondition():
    with pytest.raises(NotInFiltration):
        tau0(handle_slide(G, 1), 1)
    with pytest.raises(NotInFiltration):
        tau0(twist_alpha(G, 1), 2)
    assert not any(tau1(twist_alpha(G, 1), 2))


@given(st.integers(0, 10_000))
def test_bracket_antisymmetry_and_jacobi(seed):
    d, e, f = random_sder(seed, 1), random_sder(seed + 1, 1), random_sder(seed + 2, 1)
    assert sder_bracket(d, e) == -sder_bracket(e, d)
    jac = (sder_bracket(d, sder_bracket(e, f)) + sder_bracket(e, sder_bracket(f, d))
           + sder_bracket(f, sder_bracket(d, e)))
    assert not jac


@given(st.integers(0, 10_000))
def test_bracket_is_operator_commutator(seed):
    d, e = random_sder(seed, 1), random_sder(seed + 7, 2)
    br = sder_bracket(d, e, 4)
    x = a(1 + seed % G, ((seed % 2) + 1,))
    lhs = br.with_trunc(4).apply(x)
    rhs = d.with_trunc(4).apply(e.apply(x)) - e.with_trunc(4).apply(d.apply(x))
    assert lhs == rhs.truncate(4)


@given(st.integers(0, 10_000), st.integers(1, 2))
def test_d0_to_d1_paths_agree(seed, k):
    d = random_sder(seed, k)
    assert d0_to_d1(d.c) == d0_to_d1_division(d.c) == d.h


def test_varrho_leading_term_and_homomorphism():
    g, N = 2, 3
    th = theta_standard(g, N + 1)
    f, h = twist_alpha(g, 1), twist_boundary(g)
    vf, vh = varrho(f, th, N), varrho(h, th, N)
    k, lead = leading_term(vh)
    assert k == 1 and lead == tau(h, 1)
    assert varrho(f @ h, th, N) == bch_sder(vf, vh, N)


def test_special_varrho_vanishes_on_boundary():
    g, N = 2, 2
    v = varrho(twist_boundary(g), special_construct(g, N + 1), N)
    assert not v.with_trunc(N + 1).on_zeta().truncate(N + 1)
