"""Fox derivatives, free Jacobians and the Magnus blocks over Z[F]."""

from __future__ import annotations

from functools import lru_cache

from .groupring import GR, Matrix
from .words import Endo, WordError, apply_endo, in_A, varpi


class NotInTwistBlock(ValueError):
    """Raised when the diagonal Magnus blocks are not identities."""


@lru_cache(maxsize=200_000)
def _fox_left_word(w: tuple, z: int) -> GR:
    terms: dict = {}
    prefix: list = []
    for a in w:
        if a == z:
            key = tuple(prefix)
            terms[key] = terms.get(key, 0) + 1
            prefix.append(a)
        elif a == -z:
            prefix.append(a)
            key = tuple(prefix)
            terms[key] = terms.get(key, 0) - 1
        else:
            prefix.append(a)
    return GR(terms)


@lru_cache(maxsize=200_000)
def _fox_right_word(w: tuple, z: int) -> GR:
    terms: dict = {}
    for p, a in enumerate(w):
        if a == z:
            key = w[p + 1:]
            terms[key] = terms.get(key, 0) + 1
        elif a == -z:
            key = w[p:]
            terms[key] = terms.get(key, 0) - 1
    return GR(terms)


def _coerce(w) -> GR:
    return w if isinstance(w, GR) else GR.word(tuple(w))


def fox_left(w, z: int) -> GR:
    """Left Fox derivative: d(uv) = du + u dv."""
    if z <= 0:
        raise WordError("differentiate with respect to a positive generator index")
    return _coerce(w).map_linear(lambda v: _fox_left_word(v, z))


def fox_right(w, z: int) -> GR:
    """Right Fox derivative: d(uv) = (du) v + dv."""
    if z <= 0:
        raise WordError("differentiate with respect to a positive generator index")
    return _coerce(w).map_linear(lambda v: _fox_right_word(v, z))


def jacobian(f: Endo) -> Matrix:
    """Entry (i, j) is bar of d f(z_j) / d z_i."""
    n = f.alphabet.rank
    return Matrix([[fox_left(f.images[j], i + 1).bar() for j in range(n)]
                   for i in range(n)])


def apply_to_ring(f: Endo, u: GR) -> GR:
    return u.map_words(lambda w: apply_endo(f, w))


def apply_to_matrix(f: Endo, m: Matrix) -> Matrix:
    return m.map(lambda e: apply_to_ring(f, e))


def varpi_ring(g: int, u: GR) -> GR:
    return u.map_words(lambda w: varpi(g, w))


def induced_F(f: Endo):
    """The automorphism of F induced by f, as a function on F-words."""
    g = f.genus
    imgs = [varpi(g, f.images[g + j]) for j in range(g)]

    def act(w):
        from .words import reduce, inv
        out = []
        for a in w:
            out.extend(imgs[a - 1] if a > 0 else inv(imgs[-a - 1]))
        return reduce(out)
    return act


def apply_F_to_matrix(f: Endo, m: Matrix) -> Matrix:
    act = induced_F(f)
    return m.map(lambda e: e.map_words(act))


def jacobian_F(f: Endo) -> Matrix:
    g = f.genus
    for i in range(1, g + 1):
        if not in_A(g, f.images[i - 1]):
            raise WordError("endomorphism does not preserve A")
    return jacobian(f).map(lambda e: varpi_ring(g, e))


def mag10(f: Endo) -> Matrix:
    """Upper-left block (alpha rows, alpha columns)."""
    g = f.genus
    return jacobian_F(f).block(0, g, 0, g)


def mag00(f: Endo) -> Matrix:
    """Lower-right block (beta rows, beta columns)."""
    g = f.genus
    return jacobian_F(f).block(g, 2 * g, g, 2 * g)


def lower_left(f: Endo) -> Matrix:
    g = f.genus
    return jacobian_F(f).block(g, 2 * g, 0, g)


def mag01(f: Endo) -> Matrix:
    """Upper-right block; defined here only when both diagonal blocks are identities."""
    g = f.genus
    jf = jacobian_F(f)
    ident = Matrix.identity(g)
    if jf.block(0, g, 0, g) != ident or jf.block(g, 2 * g, g, 2 * g) != ident:
        raise NotInTwistBlock("diagonal Magnus blocks are not identities")
    return jf.block(0, g, g, 2 * g)


magnus = mag01


def kappa(g: int, a) -> tuple:
    """Row vector (varpi(da/dalpha_i))_i for a word a in A."""
    a = tuple(a)
    if not in_A(g, a):
        raise WordError("word is not in A")
    return tuple(varpi_ring(g, fox_left(a, i)) for i in range(1, g + 1))


def hermitian_check(f: Endo) -> bool:
    m = mag01(f)
    return m == m.dagger()


def conjugation_formula(f: Endo, h: Endo) -> tuple[Matrix, Matrix]:
    """(Mag(h f h^-1), U h^F(Mag f) U^dagger) with U the alpha/alpha block of h."""
    lhs = mag01(h @ f @ h.inverse())
    u = mag10(h)
    rhs = u @ apply_F_to_matrix(h, mag01(f)) @ u.dagger()
    return lhs, rhs


def reconstruct(w, rank: int) -> GR:
    """Right side of the fundamental formula for left derivatives."""
    w = _coerce(w)
    out = GR()
    for z in range(1, rank + 1):
        out = out + fox_left(w, z) * (GR.word((z,)) - 1)
    return out


def reconstruct_right(w, rank: int) -> GR:
    w = _coerce(w)
    out = GR()
    for z in range(1, rank + 1):
        out = out + (GR.word((z,)) - 1) * fox_right(w, z)
    return out
