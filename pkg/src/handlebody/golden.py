"""Canonical text of reference values, compared byte-for-byte against tests/golden."""

from __future__ import annotations

import json
from pathlib import Path

from .diagrams import (
    disk_twist_tau1, ell_n_tau1, ell_n_trees, eta_tree, format_laurent,
    mccullough_m, milnor_mu, project_mod_R, tau_d, tau_d_braid, tree_bracket,
)
from .envelope import (
    degree_one_conjugators, ell, expansion_to_json, special_construct, theta_standard,
)
from .foxcalc import kappa, lower_left, mag01, mag10
from .groupring import GR, Matrix, format_gr, format_matrix
from .intersect import eta, format_psi, pairing, pairing_matrix, psi
from .liefree import a, format_lie, zeta_class
from .words import (
    F, PI, elem_d, endo_to_json, format_word, mul, phi, twist_alpha, twist_boundary, varpi,
    zeta,
)

G = 3


def _gamma(n):
    zn = (G + 2,) * n
    return mul((-(G + 1), 1, G + 1), zn, (-1,), tuple(-x for x in reversed(zn)))


def _upsilon(n):
    z = (G + 3,) * n
    return mul(z, (2,), tuple(-x for x in reversed(z)), (1,))


def _seed_text(vs):
    """Degree-one seeds as linear forms in the letters d_k."""
    lines = []
    for i, v in enumerate(vs, start=1):
        terms = sorted(v.terms.items())
        body = " + ".join(f"{c}*d{w[0]}" for w, c in terms) or "0"
        lines.append(f"v{i}: {body}")
    return "\n".join(lines)


def _cases() -> dict:
    al, fa = PI(G), F(G)
    return {
        "zeta_genus1": lambda: format_word(PI(1), zeta(1)),
        "zeta_in_F": lambda: format_word(fa, varpi(G, zeta(G))) or "1",
        "twist_boundary_genus1": lambda: endo_to_json(twist_boundary(1)),
        "phi_on_beta1": lambda: format_word(al, phi(G, 1, 2, (G + 2,))((G + 1,))),
        "magnus_boundary": lambda: format_matrix(fa, mag01(twist_boundary(G))),
        "lower_left_boundary": lambda: format_matrix(fa, lower_left(twist_boundary(G))),
        "elem_d_upper_left": lambda: format_matrix(fa, mag10(elem_d(G, 2, -1, (G + 2, G + 3)))),
        "kappa_alphas": lambda: format_matrix(fa, Matrix([kappa(G, (i,)) for i in range(1, G + 1)])),
        "zeta_class_genus1": lambda: format_lie(zeta_class(1)),
        "zeta_class_genus2": lambda: format_lie(zeta_class(2)),
        "ell_alpha1_standard": lambda: format_lie(ell(theta_standard(G, 4), (1,))),
        "special_expansion_genus2": lambda: json.dumps(expansion_to_json(special_construct(2, 3)),
                                                       indent=2),
        "degree_one_seed": lambda: _seed_text(degree_one_conjugators(2 * G)),
        "eta_beta1_alpha1": lambda: format_gr(al, eta(G, (G + 1,), (1,))),
        "eta_alpha1_beta1": lambda: format_gr(al, eta(G, (1,), (G + 1,))),
        "pairing_x1_a1": lambda: format_gr(fa, pairing(GR.word((1,)) - 1, a(1), G, check=True)),
        "pairing_matrix": lambda: format_matrix(fa, pairing_matrix(G)),
        "psi_a1_a1": lambda: format_psi(psi(a(1), a(1)), G),
        "psi_a1_a2": lambda: format_psi(psi(a(1), a(2)), G),
        "psi_a1_zeta": lambda: format_psi(psi(a(1, (2,)), zeta_class(G)), G),
        "tau_d_alpha1": lambda: tau_d(twist_alpha(G, 1), 1).format(),
        "tau_d_boundary": lambda: tau_d(twist_boundary(G), 1).format(),
        "disk_twist_gamma": lambda: "\n--\n".join(disk_twist_tau1(G, _gamma(n)).format()
                                                  for n in range(3)),
        "disk_twist_upsilon": lambda: "\n--\n".join(disk_twist_tau1(G, _upsilon(n)).format()
                                                    for n in range(3)),
        "mccullough": lambda: "\n".join(
            [f"T_alpha1: {format_laurent(mccullough_m(tau_d(twist_alpha(G, 1), 1)))}"]
            + [f"gamma_{n}: {format_laurent(mccullough_m(disk_twist_tau1(G, _gamma(n))))}"
               for n in range(3)]),
        "ell_0": lambda: ell_n_tau1(0).format(),
        "infiniteness_m0_n1": lambda: format_lie(
            project_mod_R(eta_tree(tree_bracket(ell_n_trees(0), ell_n_trees(1)), G))[0]),
        "milnor_mu_t12": lambda: eta_tree(milnor_mu((1, 2)), G).format(),
        "tau_braid_t12": lambda: eta_tree(tau_d_braid((1, 2)), G).format(),
    }


CASES = _cases()


def render(name: str) -> str:
    return CASES[name]() + "\n"


def write_all(directory) -> list:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name in sorted(CASES):
        path = d / f"{name}.txt"
        path.write_text(render(name))
        out.append(path)
    return out
