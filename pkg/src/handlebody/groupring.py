"""Exact arithmetic in Z[G] and Q[G] for a free group G, and matrices over it."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .words import Alphabet, WordError, format_word, inv, mul, parse_word, word_key


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c)
    return c


class GR:
    """Finite formal sum of reduced words with exact coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if type(terms) is dict:
            d = terms
        else:
            d = {}
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                if c:
                    w = tuple(w)
                    d[w] = d.get(w, 0) + c
        self.terms = {w: _norm(c) for w, c in d.items() if c}
        self._hash = None

    # constructors
    @classmethod
    def word(cls, w=(), c=1) -> "GR":
        return cls({tuple(w): c})

    @classmethod
    def one(cls) -> "GR":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "GR":
        return cls()

    @classmethod
    def lift(cls, x) -> "GR":
        if isinstance(x, GR):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({(): x})
        if isinstance(x, tuple):
            return cls.word(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a group ring element")

    # ring operations
    def __add__(self, other):
        other = GR.lift(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            d[w] = d.get(w, 0) + c
        return GR(d)

    __radd__ = __add__

    def __neg__(self):
        return GR({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-GR.lift(other))

    def __rsub__(self, other):
        return GR.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GR({w: c * other for w, c in self.terms.items()})
        other = GR.lift(other)
        d: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = mul(u, v)
                d[w] = d.get(w, 0) + a * b
        return GR(d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return GR.lift(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in a group ring")
        out = GR.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, tuple)):
            other = GR.lift(other)
        if not isinstance(other, GR):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: word_key(t[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"GR({self.sorted_terms()!r})"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    # structure maps
    def augmentation(self):
        return _norm(sum(self.terms.values(), 0))

    def bar(self) -> "GR":
        return GR({inv(w): c for w, c in self.terms.items()})

    def map_words(self, fn) -> "GR":
        d: dict = {}
        for w, c in self.terms.items():
            v = fn(w)
            d[v] = d.get(v, 0) + c
        return GR(d)

    def map_linear(self, fn) -> "GR":
        """Extend fn: word -> GR linearly."""
        out = GR()
        for w, c in self.terms.items():
            out = out + fn(w) * c
        return out

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def subs(self, fn) -> "GR":
        return self.map_words(fn)


def augmentation(u: GR):
    return u.augmentation()


def antipode(u: GR) -> GR:
    return u.bar()


# --------------------------------------------------------------- matrices


class Matrix:
    """Rectangular matrix with group ring entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [[GR.lift(e) for e in r] for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"dimension mismatch {self.shape} x {other.shape}")
        return Matrix([[sum((self.rows[i][t] * other.rows[t][j] for t in range(k)), GR())
                        for j in range(m)] for i in range(n)])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.map(lambda e: -e)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(e) for e in r] for r in self.rows])

    def dagger(self) -> "Matrix":
        n, m = self.shape
        return Matrix([[self.rows[i][j].bar() for i in range(n)] for j in range(m)])

    def transpose(self) -> "Matrix":
        n, m = self.shape
        return Matrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def block(self, r0, r1, c0, c1) -> "Matrix":
        return Matrix([list(r[c0:c1]) for r in self.rows[r0:r1]])

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    def __repr__(self):
        return f"Matrix({self.shape})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_dagger(a: Matrix) -> Matrix:
    return a.dagger()


# ------------------------------------------------------------- text form

def format_gr(alphabet: Alphabet, u: GR) -> str:
    """Canonical text: `3*x1 x2 - 1*x1^-1 + 2`."""
    if not u:
        return "0"
    parts = []
    for k, (w, c) in enumerate(u.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(mag) if not w else f"{mag}*{format_word(alphabet, w)}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def parse_gr(alphabet: Alphabet, text: str) -> GR:
    text = text.strip()
    if text == "0" or not text:
        return GR()
    # split on +/- that start a new term (preceded by whitespace or start)
    chunks = re.split(r"(?:^|\s)([+-])\s", " " + text)
    terms = []
    first = chunks[0].strip()
    pieces = []
    if first:
        pieces.append((1, first))
    for k in range(1, len(chunks), 2):
        pieces.append((1 if chunks[k] == "+" else -1, chunks[k + 1].strip()))
    for sign, body in pieces:
        if body.startswith("-"):
            sign, body = -sign, body[1:]
        if "*" in body:
            coef, word = body.split("*", 1)
            c = Fraction(coef.strip())
            w = parse_word(alphabet, word)
        else:
            try:
                c = Fraction(body)
                w = ()
            except ValueError:
                c = Fraction(1)
                w = parse_word(alphabet, body)
        terms.append((w, sign * c))
    return GR(terms)


def format_matrix(alphabet: Alphabet, m: Matrix) -> str:
    return "[" + ",\n ".join("[" + ", ".join(format_gr(alphabet, e) for e in r) + "]"
                             for r in m.rows) + "]"


def parse_matrix(alphabet: Alphabet, text: str) -> Matrix:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise WordError("matrix text must be a bracketed list of rows")
    body = text[1:-1]
    rows = re.findall(r"\[([^\[\]]*)\]", body)
    return Matrix([[parse_gr(alphabet, e) for e in r.split(",")] for r in rows])
