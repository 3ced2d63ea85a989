"""Trees with beads on A^Q, their canonical slots, and the bracket by branching and grafting.

A tree is stored as a graph: leaves carry an atomic colour (i, f) = f.a_i,
nodes carry a cyclic order of their three neighbours, and an oriented edge
u -> v carries an F-word bead (the reverse edge carries its inverse).  The
canonical form of a combination of trees is its image in Lie^g, slot i
holding the Lie element paired with a_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ._tensor import ZERO, Tensor, expand_lyndon, lyndon_coordinates, standard_factor
from .envelope import Expansion, ell, is_special
from .groupring import GR, Matrix
from .intersect import psi_letters, theta_word
from .johnson import SDer, beta_condition, d0_to_d1, tau0
from .liefree import a as gen, act_F, class_of, format_lie, letter_key
from .words import F as F_alphabet
from .words import WordError, format_word, in_A, inv, mul, parse_word


class TreeError(WordError):
    """Malformed tree text or structure."""


class BetaConditionError(ValueError):
    """NOT_IN_K: the slots fail the coinvariant bracket condition."""


# -------------------------------------------------------------- DiagElt


@dataclass(frozen=True)
class DiagElt:
    genus: int
    slots: tuple

    @classmethod
    def zero(cls, g: int) -> "DiagElt":
        return cls(g, tuple(ZERO for _ in range(g)))

    def __add__(self, other):
        return DiagElt(self.genus, tuple(p + q for p, q in zip(self.slots, other.slots)))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return DiagElt(self.genus, tuple(p.scale(s) for p in self.slots))

    def __bool__(self):
        return any(self.slots)

    @property
    def degree(self):
        ds = {d for p in self.slots for d in p.degrees()}
        return ds.pop() if len(ds) == 1 else (None if not ds else tuple(sorted(ds)))

    def beta_ok(self) -> bool:
        return not beta_condition(tuple(-s for s in self.slots))

    def format(self) -> str:
        return "\n".join(f"a{i}: {format_lie(s)}" for i, s in enumerate(self.slots, start=1))


def diag_to_sder(d: DiagElt) -> SDer:
    c = tuple(-s for s in d.slots)
    return SDer(d.genus, c, d0_to_d1(c))


def sder_to_diag(s: SDer) -> DiagElt:
    return DiagElt(s.genus, tuple(-x for x in s.c))


# ----------------------------------------------------------------- trees


@dataclass(frozen=True)
class Tree:
    coeff: object
    colours: tuple  # per vertex: (i, f) for a leaf, None for a node
    nbrs: tuple  # per vertex: neighbours in cyclic order
    beads: tuple  # sorted ((u, v), word) with u < v, nontrivial words only

    def bead(self, u: int, v: int) -> tuple:
        if u < v:
            return dict(self.beads).get((u, v), ())
        return inv(dict(self.beads).get((v, u), ()))

    @property
    def leaves(self):
        return [v for v, c in enumerate(self.colours) if c is not None]

    @property
    def degree(self) -> int:
        return len(self.leaves) - 1

    def scale(self, s) -> "Tree":
        return Tree(self.coeff * s, self.colours, self.nbrs, self.beads)


class _Builder:
    def __init__(self):
        self.colours: list = []
        self.nbrs: list = []
        self.beads: dict = {}

    def vertex(self, colour=None) -> int:
        self.colours.append(colour)
        self.nbrs.append([])
        return len(self.colours) - 1

    def link(self, u: int, v: int, bead: tuple = ()):
        """Append v to u's neighbours and u to v's, with bead on u -> v."""
        self.nbrs[u].append(v)
        self.nbrs[v].append(u)
        self.set_bead(u, v, bead)

    def set_bead(self, u: int, v: int, bead: tuple):
        bead = tuple(bead)
        key, val = ((u, v), bead) if u < v else ((v, u), inv(bead))
        if val:
            self.beads[key] = val
        else:
            self.beads.pop(key, None)

    def build(self, coeff) -> Tree:
        for v, (c, n) in enumerate(zip(self.colours, self.nbrs)):
            want = 1 if c is not None else 3
            if len(n) != want:
                raise TreeError(f"vertex {v} has valence {len(n)}, expected {want}")
        return Tree(coeff, tuple(self.colours), tuple(tuple(n) for n in self.nbrs),
                    tuple(sorted(self.beads.items())))


def _copy_into(b: _Builder, t: Tree, skip=()) -> dict:
    ids = {}
    for v, c in enumerate(t.colours):
        if v in skip:
            continue
        ids[v] = b.vertex(c)
    for v, ns in enumerate(t.nbrs):
        if v in skip:
            continue
        b.nbrs[ids[v]] = [ids.get(u, ("hole", u)) for u in ns]
    for (u, v), w in t.beads:
        if u in ids and v in ids:
            b.set_bead(ids[u], ids[v], w)
    return ids


def _fill(b: _Builder, x: int, hole, y: int, bead: tuple):
    b.nbrs[x] = [y if u == hole else u for u in b.nbrs[x]]
    b.set_bead(x, y, bead)


# tree construction


def two_leaf(x, y, bead=(), coeff=1) -> Tree:
    b = _Builder()
    u, v = b.vertex(tuple_letter(x)), b.vertex(tuple_letter(y))
    b.link(u, v, bead)
    return b.build(coeff)


def tuple_letter(x):
    i, f = x
    return (int(i), tuple(f))


def rooted_tree(root, body, coeff=1) -> Tree:
    """Tree with a leaf coloured ``root`` attached to the bracket tree ``body``.

    ``body`` is a letter (i, f) or a pair (left, right) of bodies.
    """
    b = _Builder()
    r = b.vertex(tuple_letter(root))

    def grow(parent, t):
        if isinstance(t[0], int):
            v = b.vertex(tuple_letter(t))
            b.link(parent, v)
            return
        v = b.vertex()
        b.link(parent, v)
        grow(v, t[0])
        grow(v, t[1])

    grow(r, body)
    return b.build(coeff)


def lyndon_body(w: tuple):
    if len(w) == 1:
        return w[0]
    u, v = standard_factor(w, letter_key)
    return (lyndon_body(u), lyndon_body(v))


# --------------------------------------------------------------- eta


def _sub(t: Tree, n: int, parent: int) -> Tensor:
    if t.colours[n] is not None:
        return Tensor.letter(t.colours[n])
    ns = t.nbrs[n]
    k = ns.index(parent)
    c1, c2 = ns[(k + 1) % 3], ns[(k + 2) % 3]
    left = act_F(t.bead(n, c1), _sub(t, c1, n))
    right = act_F(t.bead(n, c2), _sub(t, c2, n))
    return left.bracket(right)


def leaf_word(t: Tree, leaf: int) -> Tensor:
    n = t.nbrs[leaf][0]
    return act_F(t.bead(leaf, n), _sub(t, n, leaf))


def eta_tree(trees, g: int) -> DiagElt:
    if isinstance(trees, Tree):
        trees = [trees]
    slots = [dict() for _ in range(g)]
    for t in trees:
        for v in t.leaves:
            i, f = t.colours[v]
            if not 1 <= i <= g:
                raise TreeError(f"leaf colour index {i} outside genus {g}")
            w = act_F(inv(f), leaf_word(t, v))
            d = slots[i - 1]
            for k, c in w.terms.items():
                d[k] = d.get(k, 0) + c * t.coeff
    return DiagElt(g, tuple(Tensor(d) for d in slots))


def framed(t: Tree) -> Tree:
    """Bead-free presentation: push every bead out to the leaves, rooted at the first leaf."""
    root = t.leaves[0]
    b = _Builder()
    b.colours = list(t.colours)
    b.nbrs = [list(n) for n in t.nbrs]
    stack = [(root, None, ())]
    while stack:
        v, parent, acc = stack.pop()
        if t.colours[v] is not None and v != root:
            i, f = t.colours[v]
            b.colours[v] = (i, mul(acc, f))
        for u in t.nbrs[v]:
            if u != parent:
                stack.append((u, v, mul(acc, t.bead(v, u))))
    return b.build(t.coeff)


# ----------------------------------------------------------- present


def tree_present(d: DiagElt, check: bool = True) -> list:
    """Section of eta: the 1/(k+1)-symmetrization over slots."""
    if check and not d.beta_ok():
        raise BetaConditionError("NOT_IN_K: bracket condition fails")
    out = []
    for i, s in enumerate(d.slots, start=1):
        for w, c in lyndon_coordinates(s, letter_key):
            out.append(rooted_tree((i, ()), lyndon_body(w), Fraction(c, len(w) + 1)))
    return out


# ----------------------------------------------------- branching/grafting


def branch(D: Tree, v: int, E: Tree, w: int) -> list:
    """D branched with E at leaves v, w.

    The new node carries a leaf coloured Psi^r, and the edge from D into it the bead Psi^l.
    """
    out = []
    for (gw, r), c in psi_letters(D.colours[v], E.colours[w]).terms.items():
        b = _Builder()
        ids_d = _copy_into(b, D)
        ids_e = _copy_into(b, E, skip=(w,))
        n = ids_d[v]
        dv = ids_d[D.nbrs[v][0]]
        ew = ids_e[E.nbrs[w][0]]
        leaf = b.vertex(r)
        bead_d = D.bead(v, D.nbrs[v][0])
        bead_e = E.bead(w, E.nbrs[w][0])
        b.colours[n] = None
        b.nbrs[n] = [dv, ew, leaf]
        b.set_bead(n, dv, mul(inv(gw), bead_d))
        _fill(b, ew, ("hole", w), n, inv(bead_e))
        b.nbrs[leaf] = [n]
        out.append(b.build(D.coeff * E.coeff * c))
    return out


def graft(D: Tree, edge: tuple, E: Tree, w: int) -> list:
    """E grafted on the bead of D's edge u -> u2 through its leaf w.

    The bead splits as Theta^r then Theta^l, with E attached at the new node in between.
    """
    u, u2 = edge
    f = D.bead(u, u2)
    out = []
    for (p, q), c in theta_word(f, E.colours[w]).terms.items():
        b = _Builder()
        ids_d = _copy_into(b, D)
        ids_e = _copy_into(b, E, skip=(w,))
        x, y = ids_d[u], ids_d[u2]
        ew = ids_e[E.nbrs[w][0]]
        bead_e = E.bead(w, E.nbrs[w][0])
        n = b.vertex()
        b.nbrs[x] = [n if z == y else z for z in b.nbrs[x]]
        b.nbrs[y] = [n if z == x else z for z in b.nbrs[y]]
        b.beads.pop((min(x, y), max(x, y)), None)
        b.nbrs[n] = [x, ew, y]
        b.set_bead(x, n, q)
        b.set_bead(n, y, p)
        _fill(b, ew, ("hole", w), n, inv(bead_e))
        out.append(b.build(D.coeff * E.coeff * c))
    return out


def _bead_edges(t: Tree):
    return [uv for uv, _ in t.beads]


def tree_bracket(Ds, Es) -> list:
    """Branching over leaf pairs, minus grafting of E on D's beads, plus grafting of D on E's."""
    if isinstance(Ds, Tree):
        Ds = [Ds]
    if isinstance(Es, Tree):
        Es = [Es]
    out = []
    for D in Ds:
        for E in Es:
            for v in D.leaves:
                for w in E.leaves:
                    out.extend(branch(D, v, E, w))
            for uv in _bead_edges(D):
                for w in E.leaves:
                    out.extend(t.scale(-1) for t in graft(D, uv, E, w))
            for uv in _bead_edges(E):
                for v in D.leaves:
                    out.extend(graft(E, uv, D, v))
    return out


def tree_bracket_diag(d: DiagElt, e: DiagElt) -> DiagElt:
    return eta_tree(tree_bracket(tree_present(d), tree_present(e)), d.genus)


def tree_derivation_apply(D, a: Tensor, g: int) -> Tensor:
    """Value on a of the derivation of a tree, read leafwise through Psi on a bead-free presentation."""
    if isinstance(D, Tree):
        D = [D]
    out = ZERO
    for t in D:
        t = framed(t)
        for v in t.leaves:
            w = leaf_word(t, v)
            for x, k in a.terms.items():
                for (gw, r), c in psi_letters(t.colours[v], x[0]).terms.items():
                    out = out - act_F(inv(gw), w).bracket(Tensor.letter(r)).scale(t.coeff * k * c)
    return out


# ----------------------------------------------------- text format


_FA: dict = {}


def _fword(f: tuple) -> str:
    if not f:
        return "()"
    rank = max(abs(s) for s in f)
    if rank not in _FA:
        _FA[rank] = F_alphabet(rank)
    return "(" + format_word(_FA[rank], f) + ")"


def _fmt_coef(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_tree(t: Tree) -> str:
    root = t.leaves[0]

    def leaf(v):
        i, f = t.colours[v]
        return f"(leaf {_fword(f)} {i})"

    def sub(n, parent):
        body = leaf(n) if t.colours[n] is not None else None
        if body is None:
            ns = t.nbrs[n]
            k = ns.index(parent)
            body = f"(node {sub(ns[(k + 1) % 3], n)} {sub(ns[(k + 2) % 3], n)})"
        bd = t.bead(parent, n)
        return f"(bead {_fword(bd)} {body})" if bd else body

    return f"(tree {_fmt_coef(t.coeff)} (node {leaf(root)} {sub(t.nbrs[root][0], root)}))"


def format_trees(ts) -> str:
    return "\n".join(format_tree(t) for t in ts)


_TOK = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _sexpr(text: str):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise TreeError(f"unexpected character at column {pos}")
        toks.append((m.group(1), m.start(1)))
        pos = m.end()
    k = [0]

    def read():
        if k[0] >= len(toks):
            raise TreeError("unexpected end of input")
        tok, col = toks[k[0]]
        k[0] += 1
        if tok == "(":
            out = []
            while True:
                if k[0] >= len(toks):
                    raise TreeError(f"unclosed parenthesis opened at column {col}")
                if toks[k[0]][0] == ")":
                    k[0] += 1
                    return (col, out)
                out.append(read())
        if tok == ")":
            raise TreeError(f"unbalanced ')' at column {col}")
        return (col, tok)

    out = read()
    if k[0] != len(toks):
        raise TreeError(f"trailing input at column {toks[k[0]][1]}")
    return out


def _word_of(node) -> tuple:
    col, body = node
    if not isinstance(body, list):
        raise TreeError(f"expected a parenthesized x-word at column {col}")
    text = " ".join(tok for _, tok in body)
    if not text:
        return ()
    rank = max(int(n) for n in re.findall(r"x(\d+)", text)) if "x" in text else 1
    try:
        return parse_word(F_alphabet(rank), text)
    except WordError as exc:
        raise TreeError(f"bad x-word at column {col}: {exc}") from None


def parse_tree(text: str) -> Tree:
    col, body = _sexpr(text)
    if not isinstance(body, list) or len(body) != 3 or body[0][1] != "tree":
        raise TreeError(f"expected (tree coeff body) at column {col}")
    try:
        coeff = Fraction(body[1][1])
    except (ValueError, TypeError):
        raise TreeError(f"bad coefficient at column {body[1][0]}") from None
    coeff = int(coeff) if coeff.denominator == 1 else coeff
    b = _Builder()

    def head(node):
        c, items = node
        if not isinstance(items, list) or not items or isinstance(items[0][1], list):
            raise TreeError(f"expected a tagged expression at column {c}")
        return items[0][1], items[1:], c

    def strip(node):
        tag, args, c = head(node)
        bead = ()
        while tag == "bead":
            if len(args) != 2:
                raise TreeError(f"bead takes a word and a subtree at column {c}")
            bead = mul(bead, _word_of(args[0]))
            node = args[1]
            tag, args, c = head(node)
        return bead, tag, args, c

    def build(node, parent=None, pbead=()):
        bead, tag, args, c = strip(node)
        bead = mul(pbead, bead)
        if tag == "leaf":
            if len(args) != 2:
                raise TreeError(f"leaf takes an x-word and an index at column {c}")
            try:
                i = int(args[1][1])
            except (ValueError, TypeError):
                raise TreeError(f"bad leaf index at column {args[1][0]}") from None
            v = b.vertex((i, _word_of(args[0])))
        elif tag == "node":
            if len(args) != 2:
                raise TreeError(f"node takes two subtrees at column {c}")
            v = b.vertex()
        else:
            raise TreeError(f"unknown tag {tag!r} at column {c}")
        if parent is not None:
            b.link(parent, v, bead)
        if tag == "node":
            build(args[0], v)
            build(args[1], v)
        return v

    bead, tag, args, c = strip(body[2])
    if tag != "node" or len(args) != 2 or bead:
        raise TreeError(f"tree body must be (node L R) at column {c}")
    if head(args[0])[0] == "bead":
        raise TreeError(f"put the bead on the right of the top edge at column {args[0][0]}")
    left = build(args[0])
    build(args[1], left)
    return b.build(coeff)


def parse_trees(text: str) -> list:
    return [parse_tree(line) for line in text.splitlines() if line.strip()]


# ------------------------------------------------------ tau and twists


def tau_d(f, k: int, theta: Expansion | None = None) -> DiagElt:
    return DiagElt(f.genus, tuple(-x for x in tau0(f, k, theta)))


def tree_from_matrix(M: Matrix, check: bool = True) -> DiagElt:
    """Degree-one element -1/2 sum a_i -m_ij-> a_j of a hermitian matrix."""
    if check and M != M.dagger():
        raise ValueError("matrix is not hermitian")
    g = len(M.rows)
    slots = []
    for i in range(g):
        s = ZERO
        for j in range(g):
            for w, c in GR.lift(M.rows[i][j]).terms.items():
                s = s - Tensor.letter((j + 1, w), c)
        slots.append(s)
    return DiagElt(g, tuple(slots))


def matrix_trees(M: Matrix) -> list:
    g = len(M.rows)
    out = []
    for i in range(g):
        for j in range(g):
            for w, c in GR.lift(M.rows[i][j]).terms.items():
                out.append(two_leaf((i + 1, ()), (j + 1, ()), w, Fraction(-c, 2)))
    return out


def colour_trees(u: Tensor, v: Tensor, coeff=1) -> list:
    """Atomic expansion of the two-leaf tree u --- v for degree-one u, v."""
    out = []
    for x, c in u.terms.items():
        for y, d in v.terms.items():
            out.append(two_leaf(x[0], y[0], (), coeff * c * d))
    return out


def disk_twist_trees(g: int, u) -> list:
    if not in_A(g, u):
        raise ValueError("W_NOT_IN_A: the word is not in A")
    cu = class_of(g, u, 1)
    return colour_trees(cu, cu, Fraction(-1, 2))


def disk_twist_tau1(g: int, u) -> DiagElt:
    return eta_tree(disk_twist_trees(g, u), g)


def mccullough_m(d: DiagElt) -> dict:
    """Upper-left Magnus entry with every x_i sent to t, as exponent -> coefficient."""
    out: dict = {}
    for (x,), c in d.slots[0].terms.items():
        if len(x) and x[0] != 1:
            continue
        e = sum(1 if s > 0 else -1 for s in x[1])
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in sorted(out.items()) if c}


def format_laurent(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.items(), key=lambda t: (t[0] != 0, -t[0])):
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = abs(c)
        body = str(mag) if (mono == "" or mag != 1) else ""
        body = f"{body}{'*' if body and mono else ''}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        text += f" {s} {body}"
    return text


# --------------------------------------------------- infiniteness data


def ell_n_trees(n: int, g: int = 3) -> list:
    if g < 3:
        raise ValueError("needs genus at least 3")
    return [two_leaf((2, ()), (1, ()), (-3,) * n if n >= 0 else (3,) * (-n))]


def ell_n_tau1(n: int, g: int = 3) -> DiagElt:
    return eta_tree(ell_n_trees(n, g), g)


def ell_n_tau1_composite(n: int, g: int = 3) -> DiagElt:
    """The same value from disk twists: -tau(T_upsilon) + tau(T_alpha1) + tau(T_alpha2)."""
    if g < 3:
        raise ValueError("needs genus at least 3")
    z = (g + 3,) * n if n >= 0 else (-(g + 3),) * (-n)
    upsilon = mul(z, (2,), inv(z), (1,))
    return (disk_twist_tau1(g, (1,)) + disk_twist_tau1(g, (2,))
            - disk_twist_tau1(g, upsilon))


def project_mod_R(d: DiagElt):
    """(Lie part rooted at a_1, remaining slots), dropping words with an index-1 letter.

    Trees with two or more a_1-leaves contribute only words containing an
    index-1 letter, so both components vanish on them.
    """
    def clean(s: Tensor) -> Tensor:
        return Tensor({w: c for w, c in s.terms.items() if all(x[0] != 1 for x in w)})

    return clean(d.slots[0]), tuple(clean(s) for s in d.slots[1:])


def words_with_exponents(word, ns):
    """Evaluate a bracketing pattern over letters x_3^n . a_2."""
    if isinstance(word, int):
        n = ns[word]
        return gen(2, (3,) * n if n >= 0 else (-3,) * (-n))
    return words_with_exponents(word[0], ns).bracket(words_with_exponents(word[1], ns))


# ------------------------------------------------------------------ KK


def _lyndon_phi(w: tuple, X: Tensor) -> list:
    """Leaf expansion of a bracket-coloured leaf: list of (letter, Lie element)."""
    if len(w) == 1:
        return [(w[0], X)]
    u, v = standard_factor(w, letter_key)
    L1, L2 = expand_lyndon(u, letter_key), expand_lyndon(v, letter_key)
    return _lyndon_phi(u, L2.bracket(X)) + _lyndon_phi(v, X.bracket(L1))


def phi_slots(L: Tensor, X: Tensor, g: int) -> list:
    slots = [ZERO] * g
    for w, c in lyndon_coordinates(L, letter_key):
        for (i, f), Y in _lyndon_phi(w, X):
            slots[i - 1] = slots[i - 1] + act_F(inv(f), Y).scale(c)
    return slots


def lie_coloured_eta(L: Tensor, M: Tensor, g: int) -> DiagElt:
    """eta of the two-leaf tree with Lie colours L and M."""
    s1 = phi_slots(L, M, g)
    s2 = phi_slots(M, L, g)
    return DiagElt(g, tuple(p + q for p, q in zip(s1, s2)))


def kk_rhs(theta: Expansion, u, N: int, check: bool = True) -> SDer:
    """Derivation series of -1/2 log theta(u) --- log theta(u), through degree N."""
    g = theta.genus
    if check and not is_special(theta):
        raise ValueError("expansion is not special")
    if not in_A(g, u):
        raise ValueError("W_NOT_IN_A: the word is not in A")
    L = ell(theta, u).truncate(N)
    c = [ZERO] * g
    parts = {p: L.degree_part(p) for p in range(1, N + 1)}
    for p in range(1, N + 1):
        for q in range(1, N + 2 - p):
            if not parts[p] or not parts[q]:
                continue
            for i, s in enumerate(phi_slots(parts[p], parts[q], g)):
                c[i] = c[i] + s
    c = tuple(c)
    return SDer(g, c, d0_to_d1(c), N + 1)


# --------------------------------------------------------------- Milnor


class CommutatorError(ValueError):
    """Malformed commutator word in the t_ij symbols."""


def parse_commutator(text: str):
    toks = re.findall(r"\[|\]|,|t\d\d|\S", text)
    pos = [0]

    def take():
        if pos[0] >= len(toks):
            raise CommutatorError("unexpected end of commutator word")
        t = toks[pos[0]]
        pos[0] += 1
        return t

    def expr():
        t = take()
        if t == "[":
            left = expr()
            if take() != ",":
                raise CommutatorError("expected ','")
            right = expr()
            if take() != "]":
                raise CommutatorError("expected ']'")
            return (left, right)
        m = re.fullmatch(r"t(\d)(\d)", t)
        if not m or m.group(1) == m.group(2):
            raise CommutatorError(f"bad generator {t!r}")
        return (int(m.group(1)), int(m.group(2)))

    out = expr()
    if pos[0] != len(toks):
        raise CommutatorError("trailing input in commutator word")
    return out


def commutator_length(w) -> int:
    if isinstance(w[0], int):
        return 1
    return commutator_length(w[0]) + commutator_length(w[1])


def milnor_bracket(Ds, Es) -> list:
    """Gluing along equally coloured leaves, the new leaf taking that colour."""
    out = []
    for D in Ds:
        for E in Es:
            for v in D.leaves:
                for w in E.leaves:
                    if D.colours[v] != E.colours[w]:
                        continue
                    b = _Builder()
                    ids_d = _copy_into(b, D)
                    ids_e = _copy_into(b, E, skip=(w,))
                    n = ids_d[v]
                    dv = ids_d[D.nbrs[v][0]]
                    ew = ids_e[E.nbrs[w][0]]
                    leaf = b.vertex(D.colours[v])
                    b.colours[n] = None
                    b.nbrs[n] = [dv, ew, leaf]
                    _fill(b, ew, ("hole", w), n, ())
                    b.nbrs[leaf] = [n]
                    out.append(b.build(D.coeff * E.coeff))
    return out


def milnor_mu(w) -> list:
    if isinstance(w[0], int):
        i, j = w
        return [two_leaf((i, ()), (j, ()))]
    return milnor_bracket(milnor_mu(w[0]), milnor_mu(w[1]))


def tau_d_braid(w) -> list:
    """Johnson side: bracket the degree-one values -a_i --- a_j with tree_bracket."""
    if isinstance(w[0], int):
        i, j = w
        return [two_leaf((i, ()), (j, ()), (), -1)]
    return tree_bracket(tau_d_braid(w[0]), tau_d_braid(w[1]))


def milnor_square_check(w, g: int = 3) -> bool:
    k = commutator_length(w)
    lhs = eta_tree(milnor_mu(w), g).scale((-1) ** k)
    rhs = eta_tree(tau_d_braid(w), g)
    return lhs == rhs


def commutator_words(gens, k: int) -> list:
    """All bracketings of length k over the given generators."""
    if k == 1:
        return list(gens)
    out = []
    for p in range(1, k):
        for u in commutator_words(gens, p):
            for v in commutator_words(gens, k - p):
                out.append((u, v))
    return out


# ------------------------------------------------------ relation suite


def relation_instances(g: int = 3) -> dict:
    """Named combinations of trees that must vanish under eta."""
    a1, a2, a3 = (1, ()), (2, ()), (3, ())
    b1 = (1, (2,))
    out = {}
    out["AS"] = [rooted_tree(a1, (a2, a3)), rooted_tree(a1, (a3, a2))]
    out["IHX"] = [rooted_tree(a1, ((a2, a3), b1)), rooted_tree(a1, ((a3, b1), a2)),
                  rooted_tree(a1, ((b1, a2), a3))]
    out["multilinearity"] = [two_leaf(a1, b1, (), 2), two_leaf(a1, b1, (), -1),
                             two_leaf(a1, b1, (), -1)]
    out["hopf_unit"] = [parse_tree("(tree 1 (node (leaf () 1) (bead () (leaf () 2))))"),
                        parse_tree("(tree -1 (node (leaf () 1) (leaf () 2)))")]
    out["hopf_product"] = [
        parse_tree("(tree 1 (node (leaf () 1) (bead (x1) (bead (x2) (leaf () 2)))))"),
        parse_tree("(tree -1 (node (leaf () 1) (bead (x1 x2) (leaf () 2))))")]
    out["hopf_inversion"] = [
        parse_tree("(tree 1 (node (leaf () 1) (bead (x1 x2^-1) (leaf () 2))))"),
        parse_tree("(tree -1 (node (leaf () 2) (bead (x2 x1^-1) (leaf () 1))))")]
    out["hopf_coproduct"] = [
        parse_tree("(tree 1 (node (leaf () 1) (bead (x2) (node (leaf () 2) (leaf (x1) 3)))))"),
        parse_tree("(tree -1 (node (leaf () 1) (node (bead (x2) (leaf () 2)) "
                   "(bead (x2) (leaf (x1) 3)))))")]
    out["bead_out"] = [
        parse_tree("(tree 1 (node (leaf () 1) (node (bead (x1^-1) (leaf () 2)) (leaf () 3))))"),
        parse_tree("(tree -1 (node (leaf () 1) (node (leaf (x1^-1) 2) (leaf () 3))))")]
    return out


def relation_residuals(g: int = 3) -> dict:
    return {name: eta_tree(ts, g) for name, ts in relation_instances(g).items()}

