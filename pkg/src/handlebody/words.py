"""Reduced words in free groups and automorphism records for the pair (pi, A).

Letters are signed integers: generator k (1-based) is ``k`` and its inverse
is ``-k``.  For the surface group of genus g the generators are numbered
alpha_1..alpha_g as 1..g and beta_1..beta_g as g+1..2g.  Words of F use
x_1..x_g as 1..g.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Word = tuple  # tuple[int, ...], always freely reduced


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    kind: str  # "PI", "F" or "GENERIC"
    p: int  # number of alpha generators (0 for F)
    q: int  # number of beta / x generators

    def __post_init__(self):
        if self.kind == "PI":
            if self.p < 1 or self.p != self.q:
                raise WordError("PI alphabet needs p = q = g >= 1")
        elif self.kind == "F":
            if self.p != 0 or self.q < 1:
                raise WordError("F alphabet needs q = g >= 1")
        elif self.kind == "GENERIC":
            if not (self.p >= 2 or (self.p >= 1 and self.q >= 1)):
                raise WordError("GENERIC alphabet needs p >= 2 or p, q >= 1")
        else:
            raise WordError(f"unknown alphabet kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return self.p + self.q

    def name(self, k: int) -> str:
        if self.kind == "F":
            return f"x{k}"
        return f"a{k}" if k <= self.p else f"b{k - self.p}"

    def index(self, token: str) -> int:
        kind, num = token[0], int(token[1:])
        if self.kind == "F":
            if kind != "x" or not 1 <= num <= self.q:
                raise WordError(f"generator {token!r} not in alphabet")
            return num
        if kind == "a" and 1 <= num <= self.p:
            return num
        if kind == "b" and 1 <= num <= self.q:
            return self.p + num
        raise WordError(f"generator {token!r} not in alphabet")


def PI(g: int) -> Alphabet:
    return Alphabet("PI", g, g)


def F(g: int) -> Alphabet:
    return Alphabet("F", 0, g)


def reduce(letters: Iterable[int]) -> Word:
    """Free reduction by a single stack scan."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def mul(*ws: Sequence[int]) -> Word:
    out: list[int] = []
    for w in ws:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def inv(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def power(w: Sequence[int], n: int) -> Word:
    base = tuple(w) if n >= 0 else inv(w)
    return reduce(base * abs(n))


def conj(x: Sequence[int], w: Sequence[int]) -> Word:
    """Left conjugate x w x^-1."""
    return mul(x, w, inv(x))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return mul(a, b, inv(a), inv(b))


def check_letters(alphabet: Alphabet, letters: Iterable[int]) -> None:
    for a in letters:
        if a == 0 or abs(a) > alphabet.rank:
            raise WordError(f"letter {a} outside alphabet of rank {alphabet.rank}")


def word_key(w: Word):
    """Length-lex key used for every canonical ordering of words."""
    return (len(w), w)


# ---------------------------------------------------------------- text form

_TOKEN = re.compile(r"([abx])(\d+)(?:\^([+-]?\d+))?$")


def parse_word(alphabet: Alphabet, text: str) -> Word:
    letters: list[int] = []
    for pos, tok in _tokens(text):
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r} at column {pos}")
        k = alphabet.index(m.group(1) + m.group(2))
        e = int(m.group(3)) if m.group(3) is not None else 1
        letters.extend([k if e > 0 else -k] * abs(e))
    return reduce(letters)


def _tokens(text: str):
    for m in re.finditer(r"\S+", text):
        yield m.start(), m.group(0)


def format_word(alphabet: Alphabet, w: Word) -> str:
    """Run-length text form; empty word prints as the empty string."""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k, e = abs(w[i]), (j - i) * (1 if w[i] > 0 else -1)
        name = alphabet.name(k)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


# ----------------------------------------------------------- the pair (pi, A)


def alpha(g: int, i: int) -> Word:
    return (i,)


def beta(g: int, j: int) -> Word:
    return (g + j,)


def varpi(g: int, w: Sequence[int]) -> Word:
    """Project pi -> F: delete alpha letters, rename beta_j to x_j."""
    return reduce((a - g) if a > 0 else (a + g) for a in w if abs(a) > g)


def in_A(g: int, w: Sequence[int]) -> bool:
    return not varpi(g, w)


def beta_part(g: int, w: Sequence[int]) -> Word:
    """The beta-word obtained by deleting alpha letters (as a word of pi)."""
    return reduce(a for a in w if abs(a) > g)


def zeta(g: int) -> Word:
    """Boundary word: inverse of prod_i [beta_i^-1, alpha_i]."""
    prod: Word = ()
    for i in range(1, g + 1):
        b, a = beta(g, i), alpha(g, i)
        prod = mul(prod, commutator(inv(b), a))
    return inv(prod)


def lift_F(g: int, f: Sequence[int]) -> Word:
    """Section F -> pi sending x_j to beta_j."""
    return tuple(a + g if a > 0 else a - g for a in f)


# --------------------------------------------------------------- automorphisms


@dataclass(frozen=True)
class Endo:
    """Endomorphism of a free group given by the images of its generators."""

    alphabet: Alphabet
    images: tuple  # images[k-1] is the image of generator k
    inverse_images: tuple | None = None

    def __post_init__(self):
        if len(self.images) != self.alphabet.rank:
            raise WordError("need one image per generator")
        for w in self.images:
            check_letters(self.alphabet, w)
        if self.inverse_images is not None:
            if len(self.inverse_images) != self.alphabet.rank:
                raise WordError("need one inverse image per generator")
            for w in self.inverse_images:
                check_letters(self.alphabet, w)

    @property
    def genus(self) -> int:
        return self.alphabet.p

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_endo(self, w)

    def inverse(self) -> "Endo":
        if self.inverse_images is None:
            raise WordError("inverse images not supplied")
        return Endo(self.alphabet, self.inverse_images, self.images)

    def compose(self, other: "Endo") -> "Endo":
        """self o other (apply other first)."""
        imgs = tuple(apply_endo(self, w) for w in other.images)
        inv_imgs = None
        if self.inverse_images is not None and other.inverse_images is not None:
            oi = Endo(self.alphabet, other.inverse_images)
            inv_imgs = tuple(apply_endo(oi, w) for w in self.inverse_images)
        return Endo(self.alphabet, imgs, inv_imgs)

    def __matmul__(self, other: "Endo") -> "Endo":
        return self.compose(other)


def apply_endo(f: Endo, w: Sequence[int]) -> Word:
    out: list[int] = []
    imgs = f.images
    for a in w:
        piece = imgs[a - 1] if a > 0 else inv(imgs[-a - 1])
        for b in piece:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def identity(alphabet: Alphabet) -> Endo:
    gens = tuple((k,) for k in range(1, alphabet.rank + 1))
    return Endo(alphabet, gens, gens)


def endo_from_map(alphabet: Alphabet, changes: Mapping[int, Word],
                  inverse_changes: Mapping[int, Word] | None = None) -> Endo:
    """Endomorphism moving only the listed generators."""
    imgs = tuple(reduce(changes.get(k, (k,))) for k in range(1, alphabet.rank + 1))
    inv_imgs = None
    if inverse_changes is not None:
        inv_imgs = tuple(reduce(inverse_changes.get(k, (k,)))
                         for k in range(1, alphabet.rank + 1))
    return Endo(alphabet, imgs, inv_imgs)


def commutator_endo(f: Endo, h: Endo) -> Endo:
    """Group commutator f h f^-1 h^-1 of two automorphisms."""
    return f @ h @ f.inverse() @ h.inverse()


# ---------------------------------------------------------------- catalog


def twist_alpha(g: int, i: int) -> Endo:
    """Dehn twist along the meridian alpha_i: beta_i -> alpha_i beta_i."""
    _check_index(g, i)
    b = g + i
    return endo_from_map(PI(g), {b: (i, b)}, {b: (-i, b)})


def twist_boundary(g: int) -> Endo:
    """Conjugation by zeta on every generator."""
    z = zeta(g)
    al = PI(g)
    fwd = {k: conj(z, (k,)) for k in range(1, al.rank + 1)}
    bwd = {k: conj(inv(z), (k,)) for k in range(1, al.rank + 1)}
    return endo_from_map(al, fwd, bwd)


def elem_d(g: int, i: int, eps: int, x: Sequence[int]) -> Endo:
    """alpha_i -> x^-1 alpha_i^eps x, with x a word in the betas."""
    _check_index(g, i)
    if eps not in (1, -1):
        raise WordError("eps must be +1 or -1")
    x = reduce(x)
    if any(abs(a) <= g for a in x):
        raise WordError("conjugator must be a word in the betas")
    fwd = {i: mul(inv(x), (eps * i,), x)}
    bwd = {i: power(mul(x, (i,), inv(x)), eps)}
    return endo_from_map(PI(g), fwd, bwd)


def elem_e(g: int, i: int, j: int, x: Sequence[int]) -> Endo:
    """alpha_j -> (x^-1 alpha_i x) alpha_j for i != j."""
    _check_index(g, i)
    _check_index(g, j)
    if i == j:
        raise WordError("elem_e needs i != j")
    x = reduce(x)
    if any(abs(a) <= g for a in x):
        raise WordError("conjugator must be a word in the betas")
    c = mul(inv(x), (i,), x)
    return endo_from_map(PI(g), {j: mul(c, (j,))}, {j: mul(inv(c), (j,))})


def phi(g: int, i: int, s: int, b: Sequence[int]) -> Endo:
    """(alpha_s -> b alpha_s b^-1) o (beta_i -> alpha_s beta_i) o (alpha_s -> b alpha_s b^-1)^-1."""
    _check_index(g, i)
    _check_index(g, s)
    b = reduce(b)
    if any(abs(a) <= g for a in b):
        raise WordError("b must be a word in the betas")
    al = PI(g)
    bi = g + i
    # b involves no alphas, so conjugating alpha_s by b fixes b itself
    conj_s = endo_from_map(al, {s: conj(b, (s,))}, {s: conj(inv(b), (s,))})
    shear = endo_from_map(al, {bi: (s, bi)}, {bi: (-s, bi)})
    return conj_s @ shear @ conj_s.inverse()


def aut_F_lift(g: int, images: Sequence[Sequence[int]],
               inverse_images: Sequence[Sequence[int]]) -> Endo:
    """Extend an automorphism of <beta> = F (given on x_j) by the identity on alphas."""
    if len(images) != g or len(inverse_images) != g:
        raise WordError("need g images")
    fwd = {g + j: lift_F(g, reduce(images[j - 1])) for j in range(1, g + 1)}
    bwd = {g + j: lift_F(g, reduce(inverse_images[j - 1])) for j in range(1, g + 1)}
    return endo_from_map(PI(g), fwd, bwd)


def handle_commutator(g: int, i: int) -> Word:
    """[alpha_i, beta_i^-1], the i-th factor of zeta."""
    return commutator((i,), (-(g + i),))


def twist_separating(g: int, i: int, j: int) -> Endo:
    """Twist along the separating meridian around handles i..j.

    Conjugates alpha_k, beta_k (i <= k <= j) by the partial boundary word.
    """
    _check_index(g, i)
    _check_index(g, j)
    if i > j:
        raise WordError("need i <= j")
    w: Word = ()
    for k in range(j, i - 1, -1):
        w = mul(w, handle_commutator(g, k))
    ks = [k for k in range(i, j + 1)] + [g + k for k in range(i, j + 1)]
    return endo_from_map(PI(g), {k: conj(w, (k,)) for k in ks},
                         {k: conj(inv(w), (k,)) for k in ks})


def handle_swap(g: int, i: int) -> Endo:
    """Exchange handles i and i+1, correcting by c_{i+1} so that zeta is fixed."""
    _check_index(g, i)
    _check_index(g, i + 1)
    a, b, a2, b2 = i, g + i, i + 1, g + i + 1
    c1, c0 = handle_commutator(g, i + 1), handle_commutator(g, i)
    fwd = {a: (a2,), b: (b2,), a2: conj(c1, (a,)), b2: conj(c1, (b,))}
    bwd = {a2: (a,), b2: (b,), a: conj(inv(c0), (a2,)), b: conj(inv(c0), (b2,))}
    return endo_from_map(PI(g), fwd, bwd)


def handle_slide(g: int, i: int) -> Endo:
    """Slide along handles i and i+1; acts on F by x_{i+1} -> x_{i+1} x_i^-1.

    The images were solved from the zeta-fixing equation by a conjugacy
    search in the free group and are checked by verify_pair_automorphism.
    """
    _check_index(g, i)
    _check_index(g, i + 1)
    r = {1: i, 2: i + 1, 3: g + i, 4: g + i + 1}

    def tr(w):
        return tuple(r[a] if a > 0 else -r[-a] for a in w)

    fwd = {i: tr((1, 3, -1, -4, 2, 4, 1, -3)), g + i + 1: tr((4, 1, -3, -1))}
    bwd = {i: tr((-4, -2, 4, 1)), g + i + 1: tr((-2, 4, 1, 3, -1, -4, 2, 4))}
    return endo_from_map(PI(g), fwd, bwd)


def _check_index(g: int, i: int) -> None:
    if not 1 <= i <= g:
        raise WordError(f"index {i} out of range for genus {g}")


CATALOG = {
    "twist_alpha": twist_alpha,
    "twist_boundary": twist_boundary,
    "elem_d": elem_d,
    "elem_e": elem_e,
    "phi": phi,
    "aut_F_lift": aut_F_lift,
    "twist_separating": twist_separating,
    "handle_swap": handle_swap,
    "handle_slide": handle_slide,
}


def catalog(name: str, g: int, *params) -> Endo:
    try:
        maker = CATALOG[name]
    except KeyError:
        raise WordError(f"unknown catalog entry {name!r}") from None
    return maker(g, *params)


# ----------------------------------------------------------- verification

OK = "OK"
NOT_INVERTIBLE = "NOT_INVERTIBLE"
NOT_A_PRESERVING = "NOT_A_PRESERVING"
NOT_ZETA_FIXING = "NOT_ZETA_FIXING"


def verify_pair_automorphism(f: Endo, check_zeta: bool = True) -> str:
    if f.inverse_images is None:
        raise WordError("inverse_images required")
    g = f.genus
    inv_f = Endo(f.alphabet, f.inverse_images)
    gens = [(k,) for k in range(1, f.alphabet.rank + 1)]
    for w in gens:
        if apply_endo(f, apply_endo(inv_f, w)) != w or apply_endo(inv_f, apply_endo(f, w)) != w:
            return NOT_INVERTIBLE
    for i in range(1, g + 1):
        if not in_A(g, apply_endo(f, (i,))):
            return NOT_A_PRESERVING
    if check_zeta:
        z = zeta(g)
        if apply_endo(f, z) != z:
            return NOT_ZETA_FIXING
    return OK


def acts_trivially_on_F(f: Endo) -> bool:
    g = f.genus
    return all(varpi(g, f.images[g + j - 1]) == (j,) for j in range(1, g + 1))


# -------------------------------------------------------------- endo files


def endo_to_json(f: Endo) -> str:
    al = f.alphabet
    doc = {
        "genus": al.p,
        "images": {al.name(k): format_word(al, f.images[k - 1]) for k in range(1, al.rank + 1)},
    }
    if f.inverse_images is not None:
        doc["inverse_images"] = {al.name(k): format_word(al, f.inverse_images[k - 1])
                                 for k in range(1, al.rank + 1)}
    return json.dumps(doc, indent=2, sort_keys=False)


def endo_from_json(text: str) -> Endo:
    doc = json.loads(text)
    al = PI(int(doc["genus"]))

    def read(table):
        out = []
        for k in range(1, al.rank + 1):
            name = al.name(k)
            out.append(parse_word(al, table[name]) if name in table else (k,))
        return tuple(out)

    inv_imgs = read(doc["inverse_images"]) if "inverse_images" in doc else None
    return Endo(al, read(doc["images"]), inv_imgs)
