"""Johnson filtration data: tau maps, special derivations, and the infinitesimal representation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._tensor import ONE, ZERO, Tensor, bch_generic, is_lie, right_normed
from .envelope import Expansion, ell, theta_standard, theta_tensor
from .foxcalc import fox_left
from .groupring import GR
from .intersect import psi
from .liefree import a as gen, act_F, coinvariant_rep_tensor, translate_word, zeta_class
from .words import Endo, in_A, inv, mul, varpi, verify_pair_automorphism, OK


class NotInFiltration(ValueError):
    """F_NOT_IN_H_K: carries the witnessing generator and degree."""

    def __init__(self, generator: str, degree: int):
        super().__init__(f"F_NOT_IN_H_K: {generator} has a nonzero class in degree {degree}")
        self.generator = generator
        self.degree = degree


class NotInD0(ValueError):
    """NOT_IN_D0: the cocycle fails the coinvariant bracket condition."""


class NotInTwistGroup(ValueError):
    pass


GREATER = ">N"


# ------------------------------------------------------ special derivations


@dataclass(frozen=True)
class SDer:
    """Derivation of F x Lie(A) given by cocycle values c(x_j) and values h(a_i).

    ``trunc`` bounds the tensor length kept when the derivation is applied.
    """

    genus: int
    c: tuple
    h: tuple
    trunc: int | None = None

    @classmethod
    def zero(cls, g: int, trunc: int | None = None) -> "SDer":
        return cls(g, tuple(ZERO for _ in range(g)), tuple(ZERO for _ in range(g)), trunc)

    def __add__(self, other: "SDer") -> "SDer":
        return SDer(self.genus, tuple(p + q for p, q in zip(self.c, other.c)),
                    tuple(p + q for p, q in zip(self.h, other.h)), _tr(self, other))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SDer":
        return SDer(self.genus, tuple(p.scale(s) for p in self.c),
                    tuple(p.scale(s) for p in self.h), self.trunc)

    def __eq__(self, other):
        return isinstance(other, SDer) and self.c == other.c and self.h == other.h

    def __hash__(self):
        return hash((self.c, self.h))

    def __bool__(self):
        return any(self.c) or any(self.h)

    def degree_part(self, k: int) -> "SDer":
        return SDer(self.genus, tuple(p.degree_part(k) for p in self.c),
                    tuple(p.degree_part(k + 1) for p in self.h), self.trunc)

    def truncate(self, n: int) -> "SDer":
        """Keep cocycle degrees <= n (and h-degrees <= n + 1)."""
        return SDer(self.genus, tuple(p.truncate(n) for p in self.c),
                    tuple(p.truncate(n + 1) for p in self.h), self.trunc)

    def with_trunc(self, n: int | None) -> "SDer":
        return SDer(self.genus, self.c, self.h, n)

    def min_degree(self):
        ds = [p.min_degree() for p in self.c if p] + [p.min_degree() - 1 for p in self.h if p]
        return min(ds) if ds else None

    # evaluation
    def cocycle(self, f: tuple) -> Tensor:
        return _cocycle(self.c, tuple(f), self.trunc)

    def on_letter(self, x) -> Tensor:
        i, f = x
        base = act_F(f, self.h[i - 1])
        if f:
            base = base + self.cocycle(f).bracket(Tensor.letter(x), self.trunc)
        return base.truncate(self.trunc) if self.trunc is not None else base

    def apply(self, u: Tensor) -> Tensor:
        """Leibniz extension to tensors."""
        out: dict = {}
        cache: dict = {}
        N = self.trunc
        for w, coef in u.terms.items():
            for k, x in enumerate(w):
                if x not in cache:
                    cache[x] = self.on_letter(x)
                dx = cache[x]
                pre, post = w[:k], w[k + 1:]
                for v, d in dx.terms.items():
                    nw = pre + v + post
                    if N is not None and len(nw) > N:
                        continue
                    out[nw] = out.get(nw, 0) + coef * d
        return Tensor(out)

    def on_zeta(self) -> Tensor:
        return self.apply(zeta_class(self.genus))


def _tr(a: SDer, b: SDer):
    if a.trunc is None:
        return b.trunc
    if b.trunc is None:
        return a.trunc
    return min(a.trunc, b.trunc)


def _cocycle(c: tuple, f: tuple, trunc) -> Tensor:
    out = ZERO
    prefix: tuple = ()
    for s in f:
        j = abs(s)
        val = c[j - 1] if s > 0 else -act_F((-j,), c[j - 1])
        out = out + act_F(prefix, val)
        prefix = mul(prefix, (s,))
    return out


def sder_bracket(d: SDer, e: SDer, trunc: int | None = None) -> SDer:
    """Commutator d e - e d, computed on generators."""
    if trunc is None:
        trunc = _tr(d, e)
    d_, e_ = d.with_trunc(trunc), e.with_trunc(trunc)
    g = d.genus
    c = []
    for j in range(g):
        t = d_.apply(e.c[j]) - e_.apply(d.c[j]) - d.c[j].bracket(e.c[j], trunc)
        c.append(t.truncate(trunc) if trunc is not None else t)
    h = []
    for i in range(g):
        t = d_.apply(e.h[i]) - e_.apply(d.h[i])
        h.append(t.truncate(trunc) if trunc is not None else t)
    return SDer(g, tuple(c), tuple(h), trunc)


def bch_sder(x: SDer, y: SDer, N: int) -> SDer:
    """BCH series of two derivation series, kept through cocycle degree N."""
    trunc = N + 1
    x, y = x.with_trunc(trunc), y.with_trunc(trunc)
    out = bch_generic(x, y, N, lambda p, q: sder_bracket(p, q, trunc).truncate(N),
                      lambda p, q: p + q, lambda p, s: p.scale(s), SDer.zero(x.genus, trunc))
    return out.truncate(N)


# ------------------------------------------------------------ tau maps


def _check_H(f: Endo):
    code = verify_pair_automorphism(f)
    if code != OK:
        raise ValueError(f"automorphism is not in the handlebody group: {code}")


def _lowdeg(g: int, w, N: int) -> int | None:
    """Lowest nonzero degree of ell(w) up to N; 0 if w is not in A; None if trivial.

    The truncation is raised one degree at a time, so shallow classes stay cheap.
    """
    if not in_A(g, w):
        return 0
    for k in range(1, N + 1):
        lw = ell(theta_standard(g, k), w)
        if lw:
            return lw.min_degree()
    return None


def tau0(f: Endo, k: int, theta: Expansion | None = None, check: bool = True) -> tuple:
    g = f.genus
    if check:
        _check_H(f)
    theta = theta or theta_standard(g, k)
    out = []
    for j in range(1, g + 1):
        w = mul(f.images[g + j - 1], (-(g + j),))
        if not in_A(g, w):
            raise NotInFiltration(f"x{j}", 0)
        lw = ell(theta, w)
        low = lw.min_degree()
        if low is not None and low < k:
            raise NotInFiltration(f"x{j}", low)
        out.append(lw.degree_part(k))
    return tuple(out)


def tau1(f: Endo, k: int, theta: Expansion | None = None, check: bool = True) -> tuple:
    g = f.genus
    if check:
        _check_H(f)
    theta = theta or theta_standard(g, k + 1)
    out = []
    for i in range(1, g + 1):
        w = mul(f.images[i - 1], (-i,))
        if not in_A(g, w):
            raise NotInFiltration(f"a{i}", 0)
        lw = ell(theta, w)
        low = lw.min_degree()
        if low is not None and low < k + 1:
            raise NotInFiltration(f"a{i}", low - 1)
        out.append(lw.degree_part(k + 1))
    return tuple(out)


def tau(f: Endo, k: int, theta: Expansion | None = None) -> SDer:
    return SDer(f.genus, tau0(f, k, theta), tau1(f, k, theta))


def jf_degree_beta(f: Endo, N: int):
    g = f.genus
    best = None
    for j in range(1, g + 1):
        d = _lowdeg(g, mul(f.images[g + j - 1], (-(g + j),)), N)
        if d is not None:
            best = d if best is None else min(best, d)
    return GREATER if best is None else best


def _alpha_test_words(g: int):
    out = []
    for i in range(1, g + 1):
        out.append((i,))
        for j in range(1, g + 1):
            for s in (1, -1):
                b = (s * (g + j),)
                out.append(mul(b, (i,), inv(b)))
    return out


def jf_degree_alpha(f: Endo, N: int):
    """Degree read from alpha-side classes f(w) w^-1 over a finite test set of w."""
    g = f.genus
    best = None
    for w in _alpha_test_words(g):
        d = _lowdeg(g, mul(f(w), inv(w)), N + 1)
        if d is not None:
            best = d if best is None else min(best, d)
    if best is None:
        return GREATER
    return max(best - 1, 0)


def jf_degree(f: Endo, N: int, check: bool = True):
    b = jf_degree_beta(f, N)
    if check:
        a = jf_degree_alpha(f, N)
        if a != b:
            raise AssertionError(f"filtration degrees disagree: beta side {b}, alpha side {a}")
    return b


def non_equiv_check(f: Endo, k: int, x: tuple, i: int) -> bool:
    """tau1(f)(x.a_i) = x.tau1(f)(a_i) + [tau0(f)(x), x.a_i] on the letter x.a_i."""
    g = f.genus
    d = tau(f, k)
    from .words import lift_F
    xl = lift_F(g, x)
    w = mul(xl, (i,), inv(xl))
    theta = theta_standard(g, k + 1)
    lhs = ell(theta, mul(f(w), inv(w))).degree_part(k + 1)
    return lhs == d.on_letter((i, tuple(x)))


# -------------------------------------------------- D0 <-> D1 conversions


def beta_condition(c: tuple) -> Tensor:
    """Coinvariant class of -sum_i [a_i, c(x_i)]."""
    s = ZERO
    for i, ci in enumerate(c, start=1):
        s = s - gen(i).bracket(ci)
    return coinvariant_rep_tensor(s)


def _bracket_trivial_lift(c: tuple) -> list:
    """Terms (u, v, coef) of a lift of -sum a_i (x) c(x_i) whose brackets cancel."""
    terms = []
    total = ZERO
    for i, ci in enumerate(c, start=1):
        if ci:
            terms.append(((i, ()), ci, -1))
            total = total - gen(i).bracket(ci)
    for w, cw in total.terms.items():
        f, wp = translate_word(w)
        if not f:
            continue
        m = len(w)
        s = Fraction(cw, m)
        t = right_normed(wp[1:], lambda p, q: p.bracket(q), Tensor.letter) if len(wp) > 1 else None
        if t is None:
            continue
        i = wp[0][0]
        terms.append(((i, f), act_F(f, t), -s))
        terms.append(((i, ()), t, s))
    return terms


def d0_to_d1(c: tuple, check: bool = True) -> tuple:
    """Values h(a_i) of the special derivation with cocycle c, via Psi."""
    g = len(c)
    if check and beta_condition(c):
        raise NotInD0("NOT_IN_D0: coinvariant bracket condition fails")
    lift = _bracket_trivial_lift(c)
    out = []
    for i in range(1, g + 1):
        acc = ZERO
        ai = gen(i)
        for u, v, coef in lift:
            for (gw, r), k in psi(Tensor.letter(u), ai).terms.items():
                acc = acc - act_F(inv(gw), v).bracket(Tensor.letter(r)).scale(coef * k)
        out.append(acc)
    return tuple(out)


def _free_coords(u: Tensor) -> dict:
    """Coordinates of a tensor in the free Z[F]-module on first-letter-trivial words."""
    coords: dict = {}
    for w, c in u.terms.items():
        f, wp = translate_word(w)
        coords.setdefault(wp, {})
        coords[wp][f] = coords[wp].get(f, 0) + c
    return {wp: GR(d) for wp, d in coords.items()}


def d0_to_d1_division(c: tuple) -> tuple:
    """Solve sum (1 - x_i^-1) u_i = -sum x_i^-1 [c(x_i), a_i] by Fox division."""
    g = len(c)
    rhs = ZERO
    for i, ci in enumerate(c, start=1):
        rhs = rhs - act_F((-i,), ci.bracket(gen(i)))
    coords = _free_coords(rhs)
    us = [dict() for _ in range(g)]
    for wp, r in coords.items():
        if r.augmentation() != 0:
            raise NotInD0("NOT_IN_D0: right side is not in the augmentation ideal")
        rb = r.bar()
        for i in range(1, g + 1):
            ui = -(fox_left(rb, i).bar())
            for f, k in ui.terms.items():
                w = tuple((j, mul(f, h)) for j, h in wp)
                us[i - 1][w] = us[i - 1].get(w, 0) + k
    out = tuple(Tensor(d) for d in us)
    for u in out:
        if u and not is_lie(u):
            raise NotInD0("division produced a non-Lie value")
    return out


def special_derivation(c: tuple) -> SDer:
    return SDer(len(c), tuple(c), d0_to_d1(c))


# ------------------------------------------------------------- varrho


def _ad_conj(T: Tensor, Tinv: Tensor, x: Tensor, M: int) -> Tensor:
    return T.mul(x, M).mul(Tinv, M)


def _inverse_grouplike(t: Tensor, M: int) -> Tensor:
    """Inverse of 1 + x as the geometric series."""
    x = t - ONE
    out = ONE
    power = ONE
    for _ in range(M):
        power = power.mul(x, M).scale(-1)
        if not power:
            break
        out = out + power
    return out


class _RhoMap:
    """Automorphism of the truncated envelope fixed by its generator images."""

    def __init__(self, g: int, a_img: list, x_img: list, M: int):
        self.g, self.a_img, self.x_img, self.M = g, a_img, x_img, M
        self.x_inv = [_inverse_grouplike(X, M) for X in x_img]
        self._tcache: dict = {(): (ONE, ONE)}
        self._lcache: dict = {}

    def group_T(self, h: tuple):
        """T-part of rho(1 (x) h), with its inverse."""
        if h in self._tcache:
            return self._tcache[h]
        M = self.M
        prev, s = h[:-1], h[-1]
        T, Ti = self.group_T(prev)
        j = abs(s)
        if s > 0:
            X, Xi = self.x_img[j - 1], self.x_inv[j - 1]
            newT = T.mul(act_F(prev, X), M)
            newTi = act_F(prev, Xi).mul(Ti, M)
        else:
            X, Xi = act_F((-j,), self.x_inv[j - 1]), act_F((-j,), self.x_img[j - 1])
            newT = T.mul(act_F(prev, X), M)
            newTi = act_F(prev, Xi).mul(Ti, M)
        self._tcache[h] = (newT, newTi)
        return newT, newTi

    def on_letter(self, x) -> Tensor:
        if x in self._lcache:
            return self._lcache[x]
        i, h = x
        base = self.a_img[i - 1]
        if h:
            T, Ti = self.group_T(h)
            base = _ad_conj(T, Ti, act_F(h, base), self.M)
        self._lcache[x] = base
        return base

    def apply(self, u: Tensor) -> Tensor:
        return u.substitute(self.on_letter, self.M)


def _rho_images(f: Endo, theta: Expansion, M: int):
    g = f.genus
    for j in range(1, g + 1):
        if varpi(g, f.images[g + j - 1]) != (j,):
            raise NotInTwistGroup("automorphism acts nontrivially on F")
    ell_f = [ell(theta, f.images[i - 1]) for i in range(1, g + 1)]
    G = []
    for j in range(1, g + 1):
        t, y = theta_tensor(theta, f.images[g + j - 1])
        G.append(t)
    H = [l - Tensor.letter((i, ())) for i, l in enumerate(theta.ell_alpha, start=1)]
    from ._tensor import exp_series
    expm = [exp_series(m, M) for m in theta.m_beta]
    a_img = [gen(i) for i in range(1, g + 1)]
    x_img = [ONE for _ in range(g)]
    for _ in range(M + 1):
        rho = _RhoMap(g, a_img, x_img, M)
        new_a = [(ell_f[i] - rho.apply(H[i])).truncate(M) for i in range(g)]
        new_x = [_inverse_grouplike(rho.apply(expm[j]), M).mul(G[j], M) for j in range(g)]
        if new_a == a_img and new_x == x_img:
            break
        a_img, x_img = new_a, new_x
    return _RhoMap(g, a_img, x_img, M)


def varrho(f: Endo, theta: Expansion | None = None, N: int = 3, check: bool = True) -> SDer:
    """Logarithm of the induced automorphism, as a derivation series through degree N."""
    g = f.genus
    if check:
        _check_H(f)
    M = N + 1
    theta = theta or theta_standard(g, M)
    if theta.N < M:
        raise ValueError(f"expansion truncated at {theta.N}, need {M}")
    rho = _rho_images(f, theta, M)
    h = []
    for i in range(1, g + 1):
        acc = ZERO
        cur = gen(i)
        for n in range(1, M + 1):
            cur = (rho.apply(cur) - cur).truncate(M)
            if not cur:
                break
            acc = acc + cur.scale(Fraction((-1) ** (n + 1), n))
        h.append(acc.truncate(M))
    c = []
    for j in range(1, g + 1):
        X = rho.x_img[j - 1]
        acc = ZERO
        Y = ONE
        for n in range(1, M + 1):
            Y = (rho.apply(Y).mul(X, M) - Y).truncate(M)
            if not Y:
                break
            acc = acc + Y.scale(Fraction((-1) ** (n + 1), n))
        c.append(acc.truncate(N))
    return SDer(g, tuple(c), tuple(hh.truncate(N + 1) for hh in h), M)


def leading_term(d: SDer):
    k = d.min_degree()
    return k, (d.degree_part(k) if k is not None else d)
