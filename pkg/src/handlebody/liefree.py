"""The free Z[F]-module on a_1..a_g and its free Lie algebra.

A letter is a pair ``(i, f)``: generator index i and an F-word f, standing
for f . a_i.  Lie elements are stored as primitive tensors (see _tensor);
the Lyndon basis is used for coordinates and printing only.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product

from ._tensor import (ONE, ZERO, Tensor, expand_lyndon, is_lie, is_lyndon,
                      lyndon_coordinates, right_normed, standard_factor)
from .groupring import GR
from .words import F as F_alphabet
from .words import WordError, format_word, inv, mul, parse_word


class NotInGamma(ValueError):
    """Raised when a word has a nonzero class below the requested degree."""


def letter_key(x):
    i, f = x
    return (i, len(f), f)


def a(i: int, f: tuple = ()) -> Tensor:
    return Tensor.letter((i, tuple(f)))


def aelt(coeffs) -> Tensor:
    """Sum of u_i . a_i for a mapping i -> group ring element of F."""
    out = ZERO
    for i, u in coeffs.items():
        for w, c in GR.lift(u).terms.items():
            out = out + Tensor.letter((i, w), c)
    return out


def lie_bracket(u: Tensor, v: Tensor) -> Tensor:
    return u.bracket(v)


def act_F(f: tuple, u: Tensor) -> Tensor:
    """Letterwise left action of a group element."""
    f = tuple(f)
    if not f:
        return u
    return u.map_letters(lambda x: (x[0], mul(f, x[1])))


def act_ring(r: GR, u: Tensor) -> Tensor:
    """Linear extension of the action to the group ring."""
    out = ZERO
    for w, c in GR.lift(r).terms.items():
        out = out + act_F(w, u).scale(c)
    return out


def coeff_vector(u: Tensor, g: int) -> tuple:
    """Degree-one element as a vector in Z[F]^g."""
    vec = [dict() for _ in range(g)]
    for w, c in u.terms.items():
        if len(w) != 1:
            raise ValueError("not a degree-one element")
        i, f = w[0]
        vec[i - 1][f] = vec[i - 1].get(f, 0) + c
    return tuple(GR(v) for v in vec)


def zeta_class(g: int) -> Tensor:
    out = ZERO
    for i in range(1, g + 1):
        out = out + a(i) - a(i, (-i,))
    return out


def class_of(g: int, w, m: int, N: int | None = None) -> Tensor:
    """Degree-m class of a word of A; raises NotInGamma if a lower class is nonzero."""
    from .envelope import ell, theta_standard
    N = m if N is None else N
    if N < m:
        raise ValueError("truncation must be at least the degree")
    lw = ell(theta_standard(g, N), w)
    for k in range(1, m):
        if lw.degree_part(k):
            raise NotInGamma(f"W_NOT_IN_GAMMA_M: nonzero class in degree {k}")
    return lw.degree_part(m)


def lyndon_form(u: Tensor) -> list:
    return lyndon_coordinates(u, letter_key)


def lie_degree_parts(u: Tensor) -> dict:
    return {d: u.degree_part(d) for d in sorted(u.degrees())}


# ---------------------------------------------------------- coinvariants


def translate_word(w: tuple) -> tuple[tuple, tuple]:
    """(f, w') with w = f . w' and the first letter of w' carrying trivial F-part."""
    f = w[0][1]
    if not f:
        return (), w
    fi = inv(f)
    return f, tuple((i, mul(fi, h)) for i, h in w)


def coinvariant_reduce(u: Tensor):
    """Representative and decomposition u = rep + sum (f - 1) . w_f.

    Every term is first rewritten by the Dynkin projection (exact for Lie
    input), then translated so that its leading letter has trivial F-part.
    """
    rep = ZERO
    parts: dict = {}
    for w, c in u.terms.items():
        coef = Fraction(c, len(w))
        f, wp = translate_word(w)
        lie = right_normed(wp, lambda p, q: p.bracket(q), Tensor.letter).scale(coef)
        rep = rep + lie
        if f:
            parts[f] = parts.get(f, ZERO) + lie
    decomposition = [(f, v) for f, v in sorted(parts.items(), key=lambda t: (len(t[0]), t[0]))
                     if v]
    return rep, decomposition


def coinvariant_rep_tensor(u: Tensor) -> Tensor:
    """Cheaper canonical coinvariant class of any tensor: translate each word."""
    d: dict = {}
    for w, c in u.terms.items():
        _, wp = translate_word(w)
        d[wp] = d.get(wp, 0) + c
    return Tensor(d)


# ---------------------------------------------------------- module bases


def module_basis(g: int, m: int, support) -> list:
    """Lyndon words of degree m whose first letter has trivial F-part."""
    letters = sorted({(i, tuple(f)) for i in range(1, g + 1) for f in support},
                     key=letter_key)
    out = []
    for w in product(letters, repeat=m):
        if w[0][1]:
            continue
        if is_lyndon(w, letter_key):
            out.append(expand_lyndon(w, letter_key))
    return out


# ----------------------------------------------------------- text format

_FA_CACHE: dict = {}


def _fa(rank: int):
    if rank not in _FA_CACHE:
        _FA_CACHE[rank] = F_alphabet(rank)
    return _FA_CACHE[rank]


def format_letter(x, rank: int = 9) -> str:
    i, f = x
    word = format_word(_fa(max(rank, max((abs(t) for t in f), default=1))), f) if f else "1"
    return f"({word} . a{i})"


def format_lyndon_word(w: tuple) -> str:
    if len(w) == 1:
        return format_letter(w[0])
    u, v = standard_factor(w, letter_key)
    return f"[{format_lyndon_word(u)}, {format_lyndon_word(v)}]"


def _fmt_coef(c) -> str:
    return str(Fraction(c)) if not isinstance(c, int) else str(c)


def format_lie(u: Tensor) -> str:
    if not u:
        return "0"
    parts = []
    for k, (w, c) in enumerate(lyndon_form(u)):
        body = f"{_fmt_coef(abs(c))}*{format_lyndon_word(w)}"
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


class LieParseError(WordError):
    pass


_LEX = re.compile(r"\s*(?:(\()|(\))|(\[)|(\])|(,)|(\+)|(-)|(\*)|(\d+(?:/\d+)?)|(\.)|([abx]\d+(?:\^-?\d+)?))")


def _lex(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m or m.end() == pos:
            raise LieParseError(f"unexpected character at column {pos}")
        kind = m.lastindex
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return toks


def parse_lie(text: str) -> Tensor:
    toks = _lex(text)
    if len(toks) == 1 and toks[0][1] == "0":
        return ZERO
    pos = [0]

    def peek():
        return toks[pos[0]][1] if pos[0] < len(toks) else None

    def take(expected=None):
        if pos[0] >= len(toks):
            raise LieParseError("unexpected end of input")
        t = toks[pos[0]]
        if expected is not None and t[1] != expected:
            raise LieParseError(f"expected {expected!r} at column {t[2]}, got {t[1]!r}")
        pos[0] += 1
        return t

    def letter():
        take("(")
        fw = []
        while peek() not in (".", None):
            t = take()
            if t[1] == "1":
                continue
            fw.append(t[1])
        take(".")
        t = take()
        if not t[1].startswith("a"):
            raise LieParseError(f"expected a generator a<i> at column {t[2]}")
        take(")")
        rank = max([int(re.match(r"x(\d+)", s).group(1)) for s in fw] + [1])
        return Tensor.letter((int(t[1][1:]), parse_word(_fa(rank), " ".join(fw))))

    def atom():
        if peek() == "(":
            return letter()
        take("[")
        u = expr()
        take(",")
        v = expr()
        take("]")
        return u.bracket(v)

    def term():
        coef = Fraction(1)
        if peek() is not None and re.fullmatch(r"\d+(?:/\d+)?", peek()):
            coef = Fraction(take()[1])
            take("*")
        return atom().scale(coef)

    def expr():
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        out = term().scale(sign)
        while peek() in ("+", "-"):
            s = 1 if take()[1] == "+" else -1
            out = out + term().scale(s)
        return out

    out = expr()
    if pos[0] != len(toks):
        raise LieParseError(f"trailing input at column {toks[pos[0]][2]}")
    return out


__all__ = [
    "ONE", "ZERO", "Tensor", "NotInGamma", "a", "aelt", "act_F", "act_ring", "class_of",
    "coeff_vector", "coinvariant_reduce", "coinvariant_rep_tensor", "format_lie",
    "is_lie", "letter_key", "lie_bracket", "lyndon_form", "module_basis", "parse_lie",
    "zeta_class",
]
