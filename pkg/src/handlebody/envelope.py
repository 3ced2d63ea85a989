"""Truncated envelope T(A^Q) (x) Q[F], expansions of (pi, A), and special expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ._tensor import ONE, ZERO, Tensor, exp_series, is_lie, log_series
from .liefree import act_F, zeta_class
from .words import Word, mul, zeta

DEFAULT_TRUNCATION = 4


class SolverFailure(RuntimeError):
    """Raised if the degree-by-degree construction cannot cancel a residual."""


class Env:
    """Element sum_y v_y (x) y of the envelope, truncated at tensor length N."""

    __slots__ = ("parts", "N")

    def __init__(self, parts: dict, N: int):
        self.N = N
        self.parts = {y: v.truncate(N) for y, v in parts.items()}
        self.parts = {y: v for y, v in self.parts.items() if v}

    @classmethod
    def one(cls, N: int) -> "Env":
        return cls({(): ONE}, N)

    @classmethod
    def group(cls, y: Word, N: int) -> "Env":
        return cls({tuple(y): ONE}, N)

    @classmethod
    def tensor(cls, v: Tensor, N: int, y: Word = ()) -> "Env":
        return cls({tuple(y): v}, N)

    def __mul__(self, other: "Env") -> "Env":
        if self.N != other.N:
            raise ValueError("truncation mismatch")
        out: dict = {}
        for y, v in self.parts.items():
            for y2, v2 in other.parts.items():
                w = mul(y, y2)
                out[w] = out.get(w, ZERO) + v.mul(act_F(y, v2), self.N)
        return Env(out, self.N)

    def __add__(self, other: "Env") -> "Env":
        out = dict(self.parts)
        for y, v in other.parts.items():
            out[y] = out.get(y, ZERO) + v
        return Env(out, self.N)

    def __eq__(self, other):
        return isinstance(other, Env) and self.N == other.N and self.parts == other.parts

    def __repr__(self):
        return f"Env(N={self.N}, parts={self.parts!r})"

    def group_part(self):
        """(T-part, F-part) when the element is a single tensor times one group element."""
        if len(self.parts) != 1:
            raise ValueError("element is not of the form v (x) y")
        (y, v), = self.parts.items()
        return v, y


def env_mul(u: Env, v: Env) -> Env:
    return u * v


def env_exp(u: Tensor, N: int) -> Env:
    return Env.tensor(exp_series(u, N), N)


def env_log(v: Env) -> Tensor:
    t, y = v.group_part()
    if y:
        raise ValueError("log needs a trivial F-part")
    return log_series(t, v.N)


@dataclass(frozen=True)
class Expansion:
    """Images of generators: theta(alpha_i) = exp(ell_i), theta(beta_j) = exp(m_j) (x) x_j."""

    genus: int
    N: int
    ell_alpha: tuple  # Lie series, one per alpha
    m_beta: tuple  # Lie series, one per beta
    label: str = "custom"
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def letter_image(self, a: int):
        """(T-part, F-part) of theta on a signed letter."""
        if a in self._cache:
            return self._cache[a]
        g, N = self.genus, self.N
        if abs(a) <= g:
            out = (exp_series(self.ell_alpha[abs(a) - 1].scale(1 if a > 0 else -1), N), ())
        else:
            j = abs(a) - g
            if a > 0:
                out = (exp_series(self.m_beta[j - 1], N), (j,))
            else:
                out = (act_F((-j,), exp_series(-self.m_beta[j - 1], N)), (-j,))
        self._cache[a] = out
        return out


def theta_standard(g: int, N: int = DEFAULT_TRUNCATION) -> Expansion:
    key = (g, N)
    if key not in _STD:
        _STD[key] = Expansion(g, N, tuple(Tensor.letter((i, ())) for i in range(1, g + 1)),
                              tuple(ZERO for _ in range(g)), "standard")
    return _STD[key]


_STD: dict = {}


def theta_tensor(theta: Expansion, w) -> tuple[Tensor, Word]:
    """(T-part, F-part) of theta(w)."""
    N = theta.N
    t, y = ONE, ()
    for a in w:
        v, z = theta.letter_image(a)
        t = t.mul(act_F(y, v), N)
        y = mul(y, z)
    return t, y


def theta_eval(theta: Expansion, w) -> Env:
    t, y = theta_tensor(theta, w)
    return Env.tensor(t, theta.N, y)


def ell(theta: Expansion, w) -> Tensor:
    """log of theta(w) for w in A."""
    t, y = theta_tensor(theta, tuple(w))
    if y:
        raise ValueError("word is not in A")
    return log_series(t, theta.N)


def validate_expansion(theta: Expansion) -> bool:
    for i, l in enumerate(theta.ell_alpha, start=1):
        if l.degree_part(1) != Tensor.letter((i, ())) or l.constant():
            return False
        if not is_lie(l):
            return False
    for m in theta.m_beta:
        if m and not is_lie(m):
            return False
    return True


def is_special(theta: Expansion) -> bool:
    return ell(theta, zeta(theta.genus)) == zeta_class(theta.genus)


# ------------------------------------------------------ special expansions


def _free_ad_exp(v: Tensor, x: Tensor, N: int) -> Tensor:
    """e^{ad v}(x) truncated at N."""
    out = x
    term = x
    for n in range(1, N + 1):
        term = v.bracket(term, N).scale(Fraction(1, n))
        if not term:
            break
        out = out + term
    return out


def _product_log(vs: list, N: int) -> Tensor:
    n = len(vs)
    prod = ONE
    for i in range(n, 0, -1):
        d = Tensor.letter(i)
        prod = prod.mul(exp_series(_free_ad_exp(vs[i - 1], d, N), N), N)
    return log_series(prod, N)


def degree_one_conjugators(n: int, literal: bool = False) -> list:
    """Degree-one seeds v_i; literal=True sums over j > i instead of j < i."""
    out = []
    for i in range(1, n + 1):
        js = range(i + 1, n + 1) if literal else range(1, i)
        out.append(sum((Tensor.letter(j) for j in js), ZERO).scale(Fraction(1, 2)))
    return out


def free_special_conjugators(n: int, N: int, seed: list | None = None) -> list:
    """Conjugators v_1..v_n with prod_{i=n..1} exp(e^{ad v_i} d_i) = exp(sum d_i) to degree N."""
    vs = list(seed) if seed is not None else degree_one_conjugators(n)
    target = sum((Tensor.letter(i) for i in range(1, n + 1)), ZERO)
    for m in range(2, N):
        resid = (_product_log(vs, m + 1) - target).degree_part(m + 1)
        if not resid:
            continue
        corr = [ZERO] * n
        for w, c in resid.terms.items():
            acc = Tensor.letter(w[0])
            for x in w[1:-1]:
                acc = acc.bracket(Tensor.letter(x))
            corr[w[-1] - 1] = corr[w[-1] - 1] + acc.scale(c)
        vs = [v - cr.scale(Fraction(1, m + 1)) for v, cr in zip(vs, corr)]
    check = (_product_log(vs, N) - target)
    if check:
        raise SolverFailure(f"residual survives in degree {check.min_degree()}")
    return vs


def special_construct(g: int, N: int = DEFAULT_TRUNCATION) -> Expansion:
    key = (g, N)
    if key in _SPECIAL:
        return _SPECIAL[key]
    n = 2 * g
    vs = free_special_conjugators(n, N) if N >= 2 else degree_one_conjugators(n)

    def q_letter(k):
        i = (k + 1) // 2
        if k % 2 == 0:
            return Tensor.letter((i, ()))
        return Tensor.letter((i, (-i,)), -1)

    def q(t: Tensor) -> Tensor:
        return t.substitute(q_letter, N)

    ells, ms = [], []
    for i in range(1, g + 1):
        u, up = q(vs[2 * i - 1]), q(vs[2 * i - 2])
        ells.append(_free_ad_exp(u, Tensor.letter((i, ())), N))
        t = exp_series(u, N).mul(exp_series(-act_F((i,), up), N), N)
        ms.append(log_series(t, N))
    theta = Expansion(g, N, tuple(ells), tuple(ms), "special")
    _SPECIAL[key] = theta
    return theta


_SPECIAL: dict = {}


def expansion_to_json(theta: Expansion) -> dict:
    from .liefree import format_lie
    return {
        "genus": theta.genus,
        "truncation": theta.N,
        "label": theta.label,
        "ell_alpha": [format_lie(l) for l in theta.ell_alpha],
        "m_beta": [format_lie(m) for m in theta.m_beta],
    }


def expansion_from_json(doc: dict) -> Expansion:
    from .liefree import parse_lie
    return Expansion(int(doc["genus"]), int(doc["truncation"]),
                     tuple(parse_lie(s) for s in doc["ell_alpha"]),
                     tuple(parse_lie(s) for s in doc["m_beta"]), doc.get("label", "file"))
