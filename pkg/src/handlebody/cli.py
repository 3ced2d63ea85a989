"""Command-line front end.

Elements of the handlebody group are given either as a path to an endo file
(JSON with `genus`, `images` and optional `inverse_images`) or as a product of
catalog entries, e.g. ``twist_alpha:1*twist_boundary^-1*twist_separating:1,2``.
Non-integer parameters are read as words, e.g. ``elem_d:1,1,b2``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import acceptance
from .diagrams import (
    BetaConditionError, CommutatorError, TreeError, commutator_length, disk_twist_tau1, disk_twist_trees,
    eta_tree, format_laurent, format_trees, kk_rhs, mccullough_m, milnor_mu, parse_commutator,
    parse_tree, parse_trees, tau_d_braid, tree_bracket,
)
from .envelope import (
    SolverFailure, expansion_from_json, is_special, special_construct, theta_standard,
    validate_expansion,
)
from .foxcalc import NotInTwistBlock, fox_left, jacobian, mag01
from .groupring import format_gr, format_matrix, parse_gr, parse_matrix
from .intersect import format_psi, format_theta, pairing, psi, theta_pair
from .johnson import (
    GREATER, NotInD0, NotInFiltration, NotInTwistGroup, jf_degree, tau, varrho,
)
from .liefree import LieParseError, format_lie, parse_lie
from .words import (
    CATALOG, F, PI, Endo, WordError, catalog, endo_from_json, endo_to_json, format_word,
    identity, in_A, parse_word, twist_alpha, twist_boundary, verify_pair_automorphism, zeta,
)

SCHEMA = "handlebody-output/1"

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


@dataclass
class Job:
    command: str
    genus: int = 3
    N: int = 4
    inputs: list = field(default_factory=list)
    fmt: str = "text"
    expansion: str = "standard"
    expansion_file: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        if self.N < 1:
            raise ValueError("truncation must be at least 1")


class Outcome:
    """Output document: ordered named text fields plus an exit status."""

    def __init__(self, command: str):
        self.command = command
        self.fields: list[tuple[str, str]] = []
        self.status = EXIT_OK

    def add(self, name: str, text: str):
        self.fields.append((name, text))
        return self

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            doc = {"schema": SCHEMA, "command": self.command, "status": self.status,
                   "fields": [{"name": n, "text": t} for n, t in self.fields]}
            return json.dumps(doc, indent=2, ensure_ascii=False)
        if len(self.fields) == 1:
            return self.fields[0][1]
        return "\n".join(f"{n}:\n{t}" if "\n" in t else f"{n}: {t}" for n, t in self.fields)


# ------------------------------------------------------------- inputs


def _param(g: int, text: str):
    try:
        return int(text)
    except ValueError:
        return parse_word(PI(g), text)


def parse_element(g: int, spec: str) -> Endo:
    """Endo file path, or a '*'-separated product of catalog factors name[:p,...][^e]."""
    if os.path.exists(spec):
        with open(spec) as fh:
            f = endo_from_json(fh.read())
        if f.genus != g:
            raise WordError(f"endo file has genus {f.genus}, job has genus {g}")
        return f
    out = identity(PI(g))
    if spec.strip() in ("", "id", "identity"):
        return out
    for factor in spec.split("*"):
        factor = factor.strip()
        exp = 1
        if "^" in factor:
            factor, e = factor.rsplit("^", 1)
            try:
                exp = int(e)
            except ValueError:
                raise WordError(f"bad exponent {e!r} in {spec!r}") from None
        name, _, params = factor.partition(":")
        if name not in CATALOG:
            raise WordError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}")
        args = [_param(g, p) for p in params.split(",")] if params else []
        try:
            e = catalog(name, g, *args)
        except TypeError as exc:
            raise WordError(f"bad parameters for {name}: {exc}") from None
        if exp < 0:
            e = e.inverse()
        for _ in range(abs(exp)):
            out = out @ e
    return out


def _text_or_file(s: str) -> str:
    if os.path.exists(s):
        with open(s) as fh:
            return fh.read()
    return s


def _expansion(job: Job, N: int):
    g = job.genus
    if job.expansion == "standard":
        return theta_standard(g, N)
    if job.expansion == "special":
        return special_construct(g, N)
    if not job.expansion_file:
        raise ValueError("--expansion file needs --expansion-file")
    with open(job.expansion_file) as fh:
        theta = expansion_from_json(json.load(fh))
    if theta.genus != g or theta.N < N or not validate_expansion(theta):
        raise ValueError("expansion file does not match genus/truncation or is not valid")
    return theta


def format_sder(d) -> str:
    lines = [f"c(x{j}): {format_lie(u)}" for j, u in enumerate(d.c, start=1)]
    lines += [f"h(a{i}): {format_lie(u)}" for i, u in enumerate(d.h, start=1)]
    return "\n".join(lines)


# ----------------------------------------------------------- commands


def cmd_verify(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    status = verify_pair_automorphism(f, check_zeta=not job.options.get("no_zeta"))
    out.add("status", status)
    out.status = EXIT_OK if status == "OK" else EXIT_FALSE


def cmd_fox(job: Job, out: Outcome):
    g = job.genus
    w = parse_word(PI(g), job.inputs[0])
    z = parse_word(PI(g), job.inputs[1])
    if len(z) != 1 or z[0] < 0:
        raise WordError("second argument must be a single generator")
    out.add("fox", format_gr(PI(g), fox_left(w, z[0])))


def cmd_jacobian(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    out.add("jacobian", format_matrix(PI(job.genus), jacobian(f)))


def cmd_magnus(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    out.add("magnus", format_matrix(F(job.genus), mag01(f)))


def cmd_jfdegree(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    d = jf_degree(f, job.N)
    out.add("jfdegree", GREATER.replace("N", str(job.N)) if d == GREATER else str(d))


def cmd_tau(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    k = job.options.get("k") or 1
    theta = _expansion(job, k + 2) if job.expansion != "standard" else None
    out.add(f"tau_{k}", format_sder(tau(f, k, theta)))


def cmd_varrho(job: Job, out: Outcome):
    f = parse_element(job.genus, job.inputs[0])
    theta = _expansion(job, job.N + 1)
    out.add("varrho", format_sder(varrho(f, theta, job.N)))


def cmd_pairing(job: Job, out: Outcome):
    g = job.genus
    x = parse_gr(F(g), _text_or_file(job.inputs[0]))
    a = parse_lie(_text_or_file(job.inputs[1]))
    out.add("pairing", format_gr(F(g), pairing(x, a, g, check=True)))


def cmd_theta(job: Job, out: Outcome):
    g = job.genus
    x = parse_gr(F(g), _text_or_file(job.inputs[0]))
    a = parse_lie(_text_or_file(job.inputs[1]))
    out.add("theta", format_theta(theta_pair(x, a), g))


def cmd_psi(job: Job, out: Outcome):
    a = parse_lie(_text_or_file(job.inputs[0]))
    b = parse_lie(_text_or_file(job.inputs[1]))
    out.add("psi", format_psi(psi(a, b), job.genus))


def cmd_tree_bracket(job: Job, out: Outcome):
    g = job.genus
    Ds = parse_trees(_text_or_file(job.inputs[0]))
    Es = parse_trees(_text_or_file(job.inputs[1]))
    trees = tree_bracket(Ds, Es)
    out.add("trees", format_trees(trees) or "0")
    out.add("eta", eta_tree(trees, g).format())


def cmd_disk_twist(job: Job, out: Outcome):
    g = job.genus
    u = parse_word(PI(g), job.inputs[0])
    if not in_A(g, u):
        raise ValueError("W_NOT_IN_A: the word is not in A")
    out.add("trees", format_trees(disk_twist_trees(g, u)))
    out.add("tau_1", disk_twist_tau1(g, u).format())


def _kk_curve(g: int, name: str):
    if name == "boundary":
        return zeta(g), twist_boundary(g)
    if name.startswith("alpha:"):
        i = int(name.split(":", 1)[1])
        return (i,), twist_alpha(g, i)
    raise WordError(f"unknown curve {name!r}; use alpha:<i> or boundary")


def cmd_kk_check(job: Job, out: Outcome):
    g = job.genus
    u, f = _kk_curve(g, job.inputs[0])
    N = job.N
    theta = special_construct(g, N + 1) if job.expansion == "standard" else _expansion(job, N + 1)
    if not is_special(theta):
        raise ValueError("kk-check needs a special expansion")
    lhs = kk_rhs(theta, u, N).truncate(N)
    rhs = varrho(f, theta, N).truncate(N)
    out.add("equal", str(lhs == rhs).lower())
    out.add("kk", format_sder(lhs))
    if lhs != rhs:
        out.add("varrho", format_sder(rhs))
        out.status = EXIT_FALSE


def cmd_milnor(job: Job, out: Outcome):
    g = job.genus
    w = parse_commutator(job.inputs[0])
    k = commutator_length(w)
    mu = milnor_mu(w)
    lhs = eta_tree(mu, g).scale((-1) ** k)
    rhs = eta_tree(tau_d_braid(w), g)
    out.add("mu", format_trees(mu))
    out.add("eta", lhs.format())
    out.add("equal", str(lhs == rhs).lower())
    if lhs != rhs:
        out.status = EXIT_FALSE


def cmd_mccullough(job: Job, out: Outcome):
    g = job.genus
    u = parse_word(PI(g), job.inputs[0])
    if not in_A(g, u):
        raise ValueError("W_NOT_IN_A: the word is not in A")
    out.add("m", format_laurent(mccullough_m(disk_twist_tau1(g, u))))


def cmd_selftest(job: Job, out: Outcome):
    only = set(job.options.get("only") or []) or None
    results = acceptance.run_all(only=only, echo=job.options.get("echo"))
    out.add("results", "\n".join(r.line() for r in results))
    passed = sum(r.passed for r in results)
    out.add("summary", f"{passed}/{len(results)} passed")
    if passed != len(results):
        out.status = EXIT_FALSE


_ROUNDTRIP = {
    "word": (lambda g, s: parse_word(PI(g), s), lambda g, v: format_word(PI(g), v)),
    "fword": (lambda g, s: parse_word(F(g), s), lambda g, v: format_word(F(g), v)),
    "matrix": (lambda g, s: parse_matrix(F(g), s), lambda g, v: format_matrix(F(g), v)),
    "lie": (lambda g, s: parse_lie(s), lambda g, v: format_lie(v)),
    "tree": (lambda g, s: parse_tree(s), lambda g, v: format_trees([v])),
    "endo": (lambda g, s: endo_from_json(s), lambda g, v: endo_to_json(v)),
}


def cmd_roundtrip(job: Job, out: Outcome):
    kind = job.options.get("kind") or "word"
    parse, show = _ROUNDTRIP[kind]
    text = _text_or_file(job.inputs[0]).strip()
    value = parse(job.genus, text)
    again = show(job.genus, value)
    same = again == text and show(job.genus, parse(job.genus, again)) == again
    out.add("canonical", again)
    out.add("identical", str(same).lower())
    if not same:
        out.status = EXIT_FALSE


COMMANDS = {
    "verify": (cmd_verify, 1), "fox": (cmd_fox, 2), "jacobian": (cmd_jacobian, 1),
    "magnus": (cmd_magnus, 1), "jfdegree": (cmd_jfdegree, 1), "tau": (cmd_tau, 1),
    "varrho": (cmd_varrho, 1), "pairing": (cmd_pairing, 2), "theta": (cmd_theta, 2),
    "psi": (cmd_psi, 2), "tree-bracket": (cmd_tree_bracket, 2),
    "disk-twist": (cmd_disk_twist, 1), "kk-check": (cmd_kk_check, 1),
    "milnor": (cmd_milnor, 1), "mccullough": (cmd_mccullough, 1),
    "selftest": (cmd_selftest, 0), "roundtrip": (cmd_roundtrip, 1),
}

_PARSE_ERRORS = (WordError, LieParseError, TreeError, CommutatorError, json.JSONDecodeError)
_PRECONDITIONS = (NotInFiltration, NotInD0, NotInTwistGroup, NotInTwistBlock,
                  BetaConditionError, SolverFailure, ValueError, KeyError)


def run(job: Job) -> tuple[int, str]:
    out = Outcome(job.command)
    fn, nargs = COMMANDS[job.command]
    try:
        if len(job.inputs) < nargs:
            raise WordError(f"{job.command} needs {nargs} input(s)")
        fn(job, out)
    except _PARSE_ERRORS as exc:
        out.status = EXIT_PARSE
        out.add("error", f"parse error: {exc}")
    except AssertionError as exc:
        out.status = EXIT_INTERNAL
        out.add("error", f"internal assertion failed: {exc}")
    except _PRECONDITIONS as exc:
        out.status = EXIT_PRECONDITION
        out.add("error", f"precondition failed: {exc}")
    return out.status, out.render(job.fmt)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="handlebody", description=__doc__.split("\n\n")[0])
    p.add_argument("--genus", type=int, default=3)
    p.add_argument("--deg", type=int, default=None, help="truncation degree N")
    p.add_argument("--expansion", choices=["standard", "special", "file"], default="standard")
    p.add_argument("--expansion-file", default=None)
    p.add_argument("--format", choices=["text", "structured"], default="text")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--k", type=int, default=None, help="filtration degree for tau")
    p.add_argument("--kind", choices=sorted(_ROUNDTRIP), default=None, help="roundtrip document kind")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers for selftest")
    p.add_argument("--no-zeta", action="store_true", help="verify: skip the boundary check")
    return p


_DEFAULT_DEG = {"varrho": 3, "kk-check": 3}


def main(argv=None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    opts = {"k": args.k, "kind": args.kind, "no_zeta": args.no_zeta,
            "only": [int(s) for s in args.only.split(",")] if args.only else None}
    if args.command == "selftest" and args.format == "text":
        opts["echo"] = print
    try:
        job = Job(args.command, args.genus, args.deg or _DEFAULT_DEG.get(args.command, 4),
                  args.inputs, args.format, args.expansion, args.expansion_file, opts)
    except ValueError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    status, text = run(job)
    if args.command == "selftest" and args.format == "text":
        text = text.split("summary: ", 1)[-1]
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
