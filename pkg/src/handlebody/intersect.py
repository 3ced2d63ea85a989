"""Homotopy intersection form, the pairing < , >, and the operations Theta and Psi."""

from __future__ import annotations

from functools import lru_cache

from ._tensor import Tensor
from .foxcalc import fox_left, fox_right
from .groupring import GR, Matrix
from .words import beta_part, in_A, inv, lift_F, mul, varpi, WordError


class Lin:
    """Finite Z-linear combination of hashable keys."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        d: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for k, c in items:
            if c:
                d[k] = d.get(k, 0) + c
        self.terms = {k: c for k, c in d.items() if c}

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        return Lin(d)

    def __neg__(self):
        return Lin({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Lin({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Lin) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self):
        return f"Lin({sorted(self.terms.items(), key=repr)!r})"

    def map_keys(self, fn):
        d: dict = {}
        for k, c in self.terms.items():
            nk = fn(k)
            d[nk] = d.get(nk, 0) + c
        return Lin(d)


# ------------------------------------------------------------------ eta


def _P(x: GR, y: GR) -> GR:
    return -((x - 1) * (y - 1))


@lru_cache(maxsize=None)
def e_matrix(g: int) -> Matrix:
    """Matrix of eta on the basis (alpha_1..alpha_g, beta_1..beta_g)."""
    al = [GR.word((i,)) for i in range(1, g + 1)]
    be = [GR.word((g + i,)) for i in range(1, g + 1)]
    n = 2 * g
    rows = [[GR() for _ in range(n)] for _ in range(n)]
    for i in range(g):
        for j in range(g):
            if i == j:
                rows[i][j] = al[i] - 1
                rows[i][g + j] = al[i] + be[i] - 1
                rows[g + i][j] = GR.lift(-1)
                rows[g + i][g + j] = be[i] - 1
            elif i > j:
                rows[i][j] = _P(al[i], al[j])
                rows[i][g + j] = _P(al[i], be[j])
                rows[g + i][j] = _P(be[i], al[j])
                rows[g + i][g + j] = _P(be[i], be[j])
    return Matrix(rows)


def eta(g: int, x, y) -> GR:
    """sum_{i,j} dx/dz_i E_ij (right derivative of y along z_j)."""
    x = x if isinstance(x, GR) else GR.word(tuple(x))
    y = y if isinstance(y, GR) else GR.word(tuple(y))
    E = e_matrix(g)
    n = 2 * g
    left = [fox_left(x, i + 1) for i in range(n)]
    right = [fox_right(y, j + 1) for j in range(n)]
    out = GR()
    for i in range(n):
        if not left[i]:
            continue
        for j in range(n):
            if right[j] and E[i, j]:
                out = out + left[i] * E[i, j] * right[j]
    return out


# -------------------------------------------------------------- pairing


def _fox_F(f: tuple, j: int) -> GR:
    return fox_left(f, j)


@lru_cache(maxsize=200_000)
def pairing_word(f: tuple, letter: tuple) -> GR:
    """<f, h.a_j> = -(df/dx_j) h^-1 for a group element f."""
    j, h = letter
    return -(fox_left(f, j) * GR.word(inv(h)))


def pairing_fox(x: GR, a: Tensor) -> GR:
    out = GR()
    for f, c in GR.lift(x).terms.items():
        for w, d in a.terms.items():
            out = out + pairing_word(f, w[0]) * (c * d)
    return out


def pairing_lift(g: int, x: GR, a: Tensor) -> GR:
    """varpi o eta on lifts; the independent path."""
    out = GR()
    for f, c in GR.lift(x).terms.items():
        for w, d in a.terms.items():
            i, h = w[0]
            hl = lift_F(g, h)
            val = eta(g, lift_F(g, f), mul(hl, (i,), inv(hl)))
            out = out + val.map_words(lambda u: varpi(g, u)) * (c * d)
    return out


def pairing(x, a: Tensor, g: int | None = None, check: bool = False) -> GR:
    val = pairing_fox(GR.lift(x), a)
    if check:
        if g is None:
            raise ValueError("genus needed for the lift path")
        other = pairing_lift(g, GR.lift(x), a)
        if other != val:
            raise AssertionError("pairing paths disagree")
    return val


def pairing_matrix(g: int) -> Matrix:
    from .liefree import a as gen
    return Matrix([[pairing(GR.word((i,)) - 1, gen(j), g, check=True)
                    for j in range(1, g + 1)] for i in range(1, g + 1)])


# ---------------------------------------------------------------- Theta


@lru_cache(maxsize=200_000)
def theta_word(f: tuple, letter: tuple) -> Lin:
    out: dict = {}
    for k, c in pairing_word(f, letter).terms.items():
        key = (mul(inv(k), f), k)
        out[key] = out.get(key, 0) + c
    return Lin(out)


def theta_pair(x, a: Tensor) -> Lin:
    out = Lin()
    for f, c in GR.lift(x).terms.items():
        for w, d in a.terms.items():
            out = out + theta_word(f, w[0]).scale(c * d)
    return out


# ------------------------------------------------------------------ Psi


@lru_cache(maxsize=500_000)
def psi_letters(x: tuple, y: tuple) -> Lin:
    """Psi(f.a_i, h.a_j) from the closed form."""
    i, f = x
    j, h = y
    base: dict = {}
    if i == j:
        base[(inv(h), (i, h))] = 1
    # - bar<h, a_i> (x) h.a_j
    for k, c in pairing_word(h, (i, ())).terms.items():
        key = (inv(k), (j, h))
        base[key] = base.get(key, 0) - c
    if not f:
        return Lin(base)
    out: dict = {}
    for (gw, r), c in base.items():
        key = (mul(f, gw), r)
        out[key] = out.get(key, 0) + c
    for (p, q), c in theta_word(f, y).terms.items():
        key = (q, (i, p))
        out[key] = out.get(key, 0) - c
    return Lin(out)


@lru_cache(maxsize=500_000)
def psi_letters_peeled(x: tuple, y: tuple) -> Lin:
    """Psi(f.a_i, h.a_j) by peeling one generator at a time, left argument first."""
    i, f = x
    j, h = y
    if f:
        s, rest = f[0], f[1:]
        inner = psi_letters_peeled((i, rest), y)
        out: dict = {}
        for (gw, r), c in inner.terms.items():
            key = (mul((s,), gw), r)
            out[key] = out.get(key, 0) + c
        for (p, q), c in theta_word((s,), y).terms.items():
            key = (q, (i, mul(p, rest)))
            out[key] = out.get(key, 0) - c
        return Lin(out)
    if h:
        s, rest = h[0], h[1:]
        inner = psi_letters_peeled(x, (j, rest))
        out = {}
        for (gw, (k, e)), c in inner.terms.items():
            key = (mul(gw, (-s,)), (k, mul((s,), e)))
            out[key] = out.get(key, 0) + c
        for k, c in pairing_word((s,), (i, ())).terms.items():
            key = (inv(k), (j, h))
            out[key] = out.get(key, 0) - c
        return Lin(out)
    return Lin({((), (i, ())): 1}) if i == j else Lin()


def psi(a: Tensor, b: Tensor, peeled: bool = False) -> Lin:
    fn = psi_letters_peeled if peeled else psi_letters
    out = Lin()
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            out = out + fn(u[0], v[0]).scale(c * d)
    return out


def kappa_class(g: int, w) -> Tensor:
    """[a] = sum_i varpi(da/dalpha_i) . a_i for a word a in A."""
    out: dict = {}
    for i in range(1, g + 1):
        for u, c in fox_left(tuple(w), i).terms.items():
            key = ((i, varpi(g, u)),)
            out[key] = out.get(key, 0) + c
    return Tensor(out)


def psi_oracle(g: int, a, b) -> Lin:
    """Psi through eta(a, b) and the inverse of the degree-one isomorphism J/J^2."""
    a, b = tuple(a), tuple(b)
    if not (in_A(g, a) and in_A(g, b)):
        raise WordError("psi_oracle needs words in A")
    j = eta(g, a, b)
    out: dict = {}
    for w, c in j.terms.items():
        bw = beta_part(g, w)
        aw = mul(inv(bw), w)
        fw = varpi(g, bw)
        for (lt,), d in kappa_class(g, aw).terms.items():
            key = (fw, lt)
            out[key] = out.get(key, 0) + c * d
    return Lin(out)


def word_class(g: int, w) -> Tensor:
    return kappa_class(g, w)


# ------------------------------------------------------- identity checks


def _bar_word(f):
    return inv(f)


def kind_of_sym_rhs(a: Tensor, b: Tensor) -> Lin:
    """Right side of the twisted symmetry: Psi(b, a) from Psi(a, b)."""
    out: dict = {}
    for (gw, (k, e)), c in psi(a, b).terms.items():
        key = (inv(gw), (k, mul(gw, e)))
        out[key] = out.get(key, 0) + c
    return Lin(out)


def _letter_tensor(r):
    return Tensor.letter(r)


def pseudo_jacobi(a: Tensor, b: Tensor, c: Tensor) -> tuple[Lin, Lin]:
    lhs: dict = {}
    for (gw, r), k in psi(b, a).terms.items():
        for (hw, s), m in psi(_letter_tensor(r), c).terms.items():
            key = (gw, hw, s)
            lhs[key] = lhs.get(key, 0) + k * m
    rhs: dict = {}
    for (gw, r), k in psi(a, c).terms.items():
        for (hw, s), m in psi(b, _letter_tensor(r)).terms.items():
            key = (mul(hw, inv(gw)), gw, s)
            rhs[key] = rhs.get(key, 0) + k * m
    for (gw, r), k in psi(b, c).terms.items():
        for (p, q), m in theta_pair(GR.word(gw), a).terms.items():
            key = (q, p, r)
            rhs[key] = rhs.get(key, 0) - k * m
    for (gw, r), k in psi(a, c).terms.items():
        for u, m in pairing_fox(GR.word(gw), b).terms.items():
            key = (inv(u), gw, r)
            rhs[key] = rhs.get(key, 0) - k * m
    return Lin(lhs), Lin(rhs)


def pseudo_jacobi_bis(a: Tensor, b: Tensor, c: Tensor) -> tuple[Lin, Lin]:
    lhs: dict = {}
    for (gw, r), k in psi(a, c).terms.items():
        for (hw, s), m in psi(b, _letter_tensor(r)).terms.items():
            key = (gw, hw, s)
            lhs[key] = lhs.get(key, 0) + k * m
    rhs: dict = {}
    for (gw, r), k in psi(b, a).terms.items():
        for (hw, s), m in psi(_letter_tensor(r), c).terms.items():
            key = (hw, mul(gw, hw), s)
            rhs[key] = rhs.get(key, 0) + k * m
    for (gw, r), k in psi(b, c).terms.items():
        for u, m in pairing_fox(GR.word(gw), a).terms.items():
            key = (mul(inv(u), gw), gw, r)
            rhs[key] = rhs.get(key, 0) + k * m
    for (gw, r), k in psi(a, c).terms.items():
        for u, m in pairing_fox(GR.word(gw), b).terms.items():
            key = (gw, mul(inv(u), gw), r)
            rhs[key] = rhs.get(key, 0) + k * m
    return Lin(lhs), Lin(rhs)


def left_theta(x: tuple, y: tuple, a: Tensor) -> tuple[Lin, Lin]:
    lhs = theta_pair(GR.word(mul(x, y)), a)
    rhs: dict = {}
    for (p, q), c in theta_pair(GR.word(y), a).terms.items():
        key = (p, mul(x, q))
        rhs[key] = rhs.get(key, 0) + c
    for (p, q), c in theta_pair(GR.word(x), a).terms.items():
        key = (mul(p, y), q)
        rhs[key] = rhs.get(key, 0) + c
    return lhs, Lin(rhs)


def right_theta(x, f: tuple, a: Tensor) -> tuple[Lin, Lin]:
    from .liefree import act_F
    lhs = theta_pair(x, act_F(f, a))
    rhs = theta_pair(x, a).map_keys(lambda k: (mul(f, k[0]), mul(k[1], inv(f))))
    return lhs, rhs


def inversion(x: GR, a: Tensor) -> tuple[Lin, Lin]:
    lhs = theta_pair(GR.lift(x).bar(), a)
    rhs = theta_pair(x, a).map_keys(lambda k: (inv(k[1]), inv(k[0]))).scale(-1)
    return lhs, rhs


def ask_identity(g: int, u: tuple, v: tuple) -> tuple[GR, GR]:
    """eta(u, v) versus -u bar(eta(v, u)) v - (u - 1)(v - 1) for group elements."""
    U, V = GR.word(u), GR.word(v)
    return eta(g, u, v), -(U * eta(g, v, u).bar() * V) - (U - 1) * (V - 1)


def format_psi(val: Lin, rank: int) -> str:
    from .liefree import format_letter
    from .words import F as F_alph, format_word
    al = F_alph(rank)
    if not val:
        return "0"
    parts = []
    for (gw, r), c in sorted(val.terms.items(), key=lambda t: (len(t[0][0]), t[0][0], t[0][1])):
        left = format_word(al, gw) or "1"
        parts.append(f"{c:+d}*({left}) (x) {format_letter(r, rank)}")
    return " ".join(parts)


def format_theta(val: Lin, rank: int) -> str:
    from .words import F as F_alph, format_word
    al = F_alph(rank)
    if not val:
        return "0"
    parts = []
    for (p, q), c in sorted(val.terms.items(), key=lambda t: (len(t[0][0]), t[0])):
        parts.append(f"{c:+d}*({format_word(al, p) or '1'}) (x) ({format_word(al, q) or '1'})")
    return " ".join(parts)
