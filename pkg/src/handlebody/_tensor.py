"""Truncated free associative algebra over Q on an ordered alphabet of letters.

Elements are dicts from words (tuples of hashable letters) to exact
coefficients.  Lie elements live here too, as the primitive polynomials;
equality is therefore plain dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c)
    return c


class Tensor:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if type(terms) is dict:
            d = terms
        else:
            d = {}
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                if c:
                    d[w] = d.get(w, 0) + c
        self.terms = {w: _norm(c) for w, c in d.items() if c}
        self._hash = None

    @classmethod
    def letter(cls, x, c=1) -> "Tensor":
        return cls({(x,): c})

    @classmethod
    def scalar(cls, c) -> "Tensor":
        return cls({(): c})

    # arithmetic
    def __add__(self, other: "Tensor") -> "Tensor":
        if not other.terms:
            return self
        d = dict(self.terms)
        for w, c in other.terms.items():
            d[w] = d.get(w, 0) + c
        return Tensor(d)

    def __neg__(self):
        return Tensor({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        if c == 0:
            return Tensor()
        return Tensor({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def by_degree(self) -> dict:
        buckets: dict = {}
        for w, c in self.terms.items():
            buckets.setdefault(len(w), []).append((w, c))
        return buckets

    def mul(self, other: "Tensor", trunc: int | None = None) -> "Tensor":
        d: dict = {}
        if trunc is None:
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    d[w] = d.get(w, 0) + a * b
            return Tensor(d)
        right = other.by_degree()
        for n, left in self.by_degree().items():
            for m, rterms in right.items():
                if n + m > trunc:
                    continue
                for u, a in left:
                    for v, b in rterms:
                        w = u + v
                        d[w] = d.get(w, 0) + a * b
        return Tensor(d)

    def __mul__(self, other):
        if isinstance(other, Tensor):
            return self.mul(other)
        return self.scale(other)

    def bracket(self, other: "Tensor", trunc: int | None = None) -> "Tensor":
        return self.mul(other, trunc) - other.mul(self, trunc)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Tensor({self.terms!r})"

    # grading
    def degree_part(self, n: int) -> "Tensor":
        return Tensor({w: c for w, c in self.terms.items() if len(w) == n})

    def truncate(self, n: int) -> "Tensor":
        return Tensor({w: c for w, c in self.terms.items() if len(w) <= n})

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def min_degree(self):
        return min((len(w) for w in self.terms), default=None)

    def max_degree(self):
        return max((len(w) for w in self.terms), default=None)

    def constant(self):
        return self.terms.get((), 0)

    def map_letters(self, fn: Callable) -> "Tensor":
        """Apply a letter substitution (letter -> letter) to every word."""
        d: dict = {}
        for w, c in self.terms.items():
            v = tuple(fn(x) for x in w)
            d[v] = d.get(v, 0) + c
        return Tensor(d)

    def substitute(self, fn: Callable, trunc: int | None = None) -> "Tensor":
        """Algebra map determined by letter -> Tensor."""
        images: dict = {}
        prefixes: dict = {(): {(): 1}}
        out: dict = {}

        def image(x):
            if x not in images:
                images[x] = sorted(fn(x).terms.items(), key=lambda t: len(t[0]))
            return images[x]

        def prod(w):
            if w in prefixes:
                return prefixes[w]
            left = prod(w[:-1])
            right = image(w[-1])
            d: dict = {}
            for u, a in left.items():
                lu = len(u)
                for v, b in right:
                    if trunc is not None and lu + len(v) > trunc:
                        break
                    k = u + v
                    d[k] = d.get(k, 0) + a * b
            d = {k: c for k, c in d.items() if c}
            prefixes[w] = d
            return d

        for w, c in self.terms.items():
            for k, v in prod(w).items():
                out[k] = out.get(k, 0) + c * v
        return Tensor(out)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())


ZERO = Tensor()
ONE = Tensor.scalar(1)


def exp_series(x: Tensor, trunc: int) -> Tensor:
    if x.constant():
        raise ValueError("exp needs an element without constant term")
    out = ONE
    power = ONE
    for n in range(1, trunc + 1):
        power = power.mul(x, trunc).scale(Fraction(1, n))
        if not power:
            break
        out = out + power
    return out


def log_series(y: Tensor, trunc: int) -> Tensor:
    if y.constant() != 1:
        raise ValueError("log needs an element with constant term 1")
    x = y - ONE
    out = ZERO
    power = ONE
    for n in range(1, trunc + 1):
        power = power.mul(x, trunc)
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (n + 1), n))
    return out


def right_normed(word: tuple, bracket: Callable, atom: Callable):
    """[w1, [w2, [..., w_m]]] evaluated with the given bracket."""
    acc = atom(word[-1])
    for x in reversed(word[:-1]):
        acc = bracket(atom(x), acc)
    return acc


def left_normed(word: tuple, bracket: Callable, atom: Callable):
    acc = atom(word[0])
    for x in word[1:]:
        acc = bracket(acc, atom(x))
    return acc


def _right_normed_words(w: tuple) -> list:
    """Signed words of the expanded bracket [w1, [w2, [..., w_m]]]."""
    acc = [(w[-1:], 1)]
    for x in reversed(w[:-1]):
        acc = [((x,) + u, s) for u, s in acc] + [(u + (x,), -s) for u, s in acc]
    return acc


def _dynkin_terms(x: Tensor, weight) -> Tensor:
    out: dict = {}
    for w, c in x.terms.items():
        if not w:
            continue
        c = weight(c, len(w))
        for u, s in _right_normed_words(w):
            out[u] = out.get(u, 0) + s * c
    return Tensor(out)


def dynkin(x: Tensor) -> Tensor:
    """Right-normed Dynkin operator; multiplies a degree-m Lie element by m."""
    return _dynkin_terms(x, lambda c, m: c)


def lie_project(x: Tensor) -> Tensor:
    """Dynkin projection sum_m r(x_m)/m; identity on Lie elements."""
    return _dynkin_terms(x, lambda c, m: Fraction(c, m))


def is_lie(x: Tensor) -> bool:
    return not x.constant() and lie_project(x) == x


# ------------------------------------------------------------ BCH formula

_BCH_CACHE: dict = {}


def bch_terms(n: int) -> list:
    """BCH(X, Y) up to degree n as a list of (coefficient, word in 'X','Y').

    Each word w stands for the right-normed bracket r(w) / len(w).
    """
    if n in _BCH_CACHE:
        return _BCH_CACHE[n]
    X, Y = Tensor.letter("X"), Tensor.letter("Y")
    z = log_series(exp_series(X, n).mul(exp_series(Y, n), n), n)
    terms = []
    for w, c in sorted(z.terms.items(), key=lambda t: (len(t[0]), t[0])):
        terms.append((Fraction(c) / len(w), w))
    _BCH_CACHE[n] = terms
    return terms


def bch_generic(x, y, n: int, bracket: Callable, add: Callable, scale: Callable, zero):
    """BCH in any Lie algebra given by its operations, through bracket length n."""
    out = zero
    for c, w in bch_terms(n):
        if len(w) == 1:
            term = x if w[0] == "X" else y
        else:
            term = right_normed(w, bracket, lambda s: x if s == "X" else y)
        out = add(out, scale(term, c))
    return out


# ------------------------------------------------------- Lyndon expansion


def is_lyndon(word: tuple, key: Callable) -> bool:
    ks = [key(x) for x in word]
    n = len(ks)
    return all(ks < ks[i:] + ks[:i] for i in range(1, n))


def standard_factor(word: tuple, key: Callable):
    """Split a Lyndon word as u v with v its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:], key):
            return word[:i], word[i:]
    raise ValueError("single letter has no standard factorization")


def lyndon_coordinates(x: Tensor, key: Callable) -> list:
    """Coordinates of a Lie element in the Lyndon basis as (word, coefficient)."""
    out = []
    rest = x
    while rest:
        w = min(rest.terms, key=lambda u: (len(u), [key(a) for a in u]))
        c = rest.terms[w]
        if not is_lyndon(w, key):
            raise ValueError("element is not a Lie polynomial")
        out.append((w, c))
        rest = rest - expand_lyndon(w, key).scale(c)
    return out


_LYN_CACHE: dict = {}


def expand_lyndon(word: tuple, key: Callable) -> Tensor:
    ck = (word, key)
    if ck in _LYN_CACHE:
        return _LYN_CACHE[ck]
    if len(word) == 1:
        out = Tensor.letter(word[0])
    else:
        u, v = standard_factor(word, key)
        out = expand_lyndon(u, key).bracket(expand_lyndon(v, key))
    _LYN_CACHE[ck] = out
    return out
