"""Command line interface: ``apolar <subcommand> [options] inputs``.

Exit codes: 0 when the computation succeeded and every checked condition
holds, 1 when a checked condition fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .apolarity import (
    AlgebraPresentation,
    apolar_algebra,
    connected_sum,
    from_generators,
    is_very_general_cubic,
    sample_very_general_cubic,
    socle,
    union_along_point,
)
from .certify import (
    certify_nonreduced,
    expected_fiber,
    search,
    verify_paper_examples,
)
from .cotangent import t1_bigraded, t1_graded, t2_residue_graded
from .errors import ApolarError, NotCubic, PreconditionFailed
from .field import Field
from .graded import GradedDims, hf_text
from .groebner import minimal_betti
from .poly import MPoly, parse_poly, ring_for_texts

SUBCOMMANDS = (
    "apolar",
    "hilbert",
    "betti",
    "tangent",
    "very-general",
    "union",
    "connect",
    "fiber",
    "certify",
    "search",
    "paper-examples",
)
INPUT_COUNT = {
    "apolar": (1, 1),
    "hilbert": (1, 1),
    "betti": (1, 1),
    "tangent": (1, 1),
    "very-general": (0, 1),
    "union": (2, 2),
    "connect": (2, 2),
    "fiber": (2, 2),
    "certify": (2, 2),
    "search": (0, 0),
    "paper-examples": (0, 0),
}
KINDS = ("auto", "cubic", "dual", "ideal")


class UsageError(ApolarError):
    """Bad command line; ``token`` is the offending argument when known."""

    def __init__(self, message: str, token: str | None = None):
        self.token = token
        super().__init__(message if token is None else f"{message}: {token!r}")


@dataclass(frozen=True)
class Command:
    subcommand: str
    inputs: tuple[tuple[str, str], ...] = ()
    field: str = ""
    seed: int = 0
    json: bool = False
    window: tuple[int, int] | None = None
    out: str | None = None
    n: int | None = None
    trials: int = 20
    log: str | None = None
    bigraded: bool = False

    def to_args(self) -> list[str]:
        """Normalized argument list; ``parse_cli(cmd.to_args()) == cmd``."""
        args = [self.subcommand]
        for kind, text in self.inputs:
            if kind == "auto":
                args.append(text)
            else:
                args += [f"--{kind}", text]
        if self.field:
            args += ["--field", self.field]
        if self.seed:
            args += ["--seed", str(self.seed)]
        if self.json:
            args.append("--json")
        if self.window is not None:
            args.append(f"--window={self.window[0]}:{self.window[1]}")
        if self.out:
            args += ["--out", self.out]
        if self.n is not None:
            args += ["--n", str(self.n)]
        if self.trials != 20:
            args += ["--trials", str(self.trials)]
        if self.log:
            args += ["--log", self.log]
        if self.bigraded:
            args.append("--bigraded")
        return args


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


class _Tagged(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        kind = option_string.lstrip("-")
        items = getattr(namespace, "tagged", None) or []
        items.append((kind, values))
        namespace.tagged = items


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--field", default="", help="fp:P or rational (default: $APOLAR_FIELD or fp:32003)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--window", type=_window, default=None, help="degree window a:b (use --window=a:b)")
    common.add_argument("--out", default=None, help="also write the report to this file")
    for kind in KINDS[1:]:
        common.add_argument(f"--{kind}", action=_Tagged, dest="tagged", metavar="TEXT", default=None)
    parser = _Parser(prog="apolar", description="Apolar algebras and graded cotangent invariants.")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("inputs", nargs="*", help="polynomial text or a file containing it")
        if name in ("very-general", "search"):
            p.add_argument("--n", type=int, default=None, help="number of variables of sampled cubics")
        if name == "search":
            p.add_argument("--trials", type=int, default=20)
            p.add_argument("--log", default=None, help="append JSONL records here")
        if name == "union":
            p.add_argument("--bigraded", action="store_true", help="also compute bigraded T1")
    return parser


def parse_cli(args: list[str]) -> Command:
    """Validate an argument list into a :class:`Command` (raises :class:`UsageError`)."""
    args = list(args)
    if not args:
        raise UsageError("missing subcommand")
    if args[0] not in SUBCOMMANDS and not args[0].startswith("-"):
        raise UsageError("unknown subcommand", args[0])
    ns = _build_parser().parse_args(args)
    if ns.subcommand is None:
        raise UsageError("missing subcommand")
    tagged = list(getattr(ns, "tagged", None) or [])
    inputs = tuple([("auto", t) for t in ns.inputs] + tagged)
    lo, hi = INPUT_COUNT[ns.subcommand]
    if not lo <= len(inputs) <= hi:
        raise UsageError(f"{ns.subcommand} takes {lo}..{hi} polynomial inputs, got {len(inputs)}")
    if ns.field:
        try:
            Field.from_spec(ns.field)
        except ValueError:
            raise UsageError("bad field", ns.field) from None
    n = getattr(ns, "n", None)
    if ns.subcommand == "search" and (n is None or n < 3):
        raise UsageError("search needs --n >= 3")
    if ns.subcommand == "very-general" and not inputs and n is None:
        raise UsageError("very-general needs a cubic or --n")
    trials = getattr(ns, "trials", 20)
    if trials < 0:
        raise UsageError("negative trial count", str(trials))
    return Command(
        subcommand=ns.subcommand,
        inputs=inputs,
        field=ns.field,
        seed=ns.seed,
        json=ns.json,
        window=ns.window,
        out=ns.out,
        n=n,
        trials=trials,
        log=getattr(ns, "log", None),
        bigraded=getattr(ns, "bigraded", False),
    )


# input handling


def _read(text: str) -> str:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def _is_dual(kind: str, text: str) -> bool:
    if kind in ("cubic", "dual"):
        return True
    if kind == "ideal":
        return False
    letters = [c for c in text if c.isalpha()]
    return bool(letters) and all(c.isupper() for c in letters)


def _split_generators(text: str) -> list[str]:
    return [t.strip() for t in text.replace(";", ",").replace("\n", ",").split(",") if t.strip()]


@dataclass
class _Input:
    dual: MPoly | None = None
    algebra: AlgebraPresentation | None = None
    extra: dict = field(default_factory=dict)


def _load(kind: str, text: str, fld: Field) -> _Input:
    text = _read(text)
    if _is_dual(kind, text):
        upper = text.upper()
        ring = ring_for_texts([upper], fld).divided_power_ring()
        form = parse_poly(upper, ring)
        if kind == "cubic" and form.degree != 3:
            raise NotCubic(f"expected a cubic, got degree {form.degree}")
        return _Input(dual=form, algebra=apolar_algebra(form))
    gens = _split_generators(text)
    ring = ring_for_texts(gens, fld)
    return _Input(algebra=from_generators([parse_poly(g, ring) for g in gens], ring))


def _need_dual(inp: _Input, what: str) -> MPoly:
    if inp.dual is None:
        raise UsageError(f"{what} needs a dual form (uppercase variables or --dual/--cubic)")
    return inp.dual


# rendering


def _table(rows: list[list[str]], header: list[str]) -> str:
    cols = [header] + rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cols)


def _pairs(g: GradedDims) -> str:
    nz = g.nonzero()
    return " ".join(f"{k}:{v}" for k, v in nz.items()) if nz else "0"


def _yes(flag) -> str:
    return "true" if flag else "false"


def _algebra_json(alg: AlgebraPresentation) -> dict:
    return {
        "ring": list(alg.ring.names),
        "generators": [str(g) for g in alg.generators],
        "hilbert": list(alg.hilbert.as_tuple()),
        "length": alg.length,
    }


def _algebra_text(alg: AlgebraPresentation) -> list[str]:
    return [
        f"ring: {alg.ring}",
        f"generators ({len(alg.generators)}): " + ", ".join(str(g) for g in alg.generators),
        f"Hilbert function: {hf_text(alg.hilbert)}",
        f"length: {alg.length}",
    ]


# commands


def _run(cmd: Command, fld: Field) -> tuple[int, dict, list[str]]:
    inputs = [_load(k, t, fld) for k, t in cmd.inputs]
    name = cmd.subcommand
    if name == "apolar":
        form = _need_dual(inputs[0], "apolar")
        alg = inputs[0].algebra
        return 0, {"algebra": _algebra_json(alg), "dual": str(form)}, [f"dual form: {form}"] + _algebra_text(alg)
    if name == "hilbert":
        alg = inputs[0].algebra
        return 0, {"hilbert": list(alg.hilbert.as_tuple()), "length": alg.length}, [hf_text(alg.hilbert)]
    if name == "betti":
        bt = minimal_betti(inputs[0].algebra.ideal)
        return 0, {"betti": bt.to_json()}, [str(bt)]
    if name == "tangent":
        alg = inputs[0].algebra
        rep = t1_graded(alg, cmd.window)
        t2 = t2_residue_graded(alg)
        rows = [
            [str(e), str(rep.t0[e]), str(rep.t1[e]), str(rep.hom[e])]
            for e in range(rep.window[0], rep.window[1] + 1)
        ]
        lines = [
            _table(rows, ["degree", "Der", "T1", "Hom"]),
            f"T1: {_pairs(rep.t1)}",
            f"T2(B,k): {_pairs(t2)}",
            f"trivial negative tangents: {_yes(rep.tnt)}",
            f"concentrated in degree -1: {_yes(rep.concentrated_minus_one)}",
            f"positive part vanishes: {_yes(rep.positive_vanishes)}",
            f"cross-checks: {_yes(rep.two_path_ok and rep.inclusion_ok)}",
        ]
        if not rep.char_ok:
            lines.append("warning: characteristic does not exceed the length")
        code = 0 if (rep.two_path_ok and rep.inclusion_ok) else 1
        return code, {"tangent": rep.to_json(), "t2_residue": t2.to_json()}, lines
    if name == "very-general":
        if inputs:
            form = _need_dual(inputs[0], "very-general")
            rep = is_very_general_cubic(form, inputs[0].algebra)
        else:
            rep = sample_very_general_cubic(cmd.n, cmd.seed, fld)
        lines = [
            f"cubic: {rep.form}",
            f"Hilbert function {hf_text(rep.hilbert)}: {_yes(rep.hilbert_ok)}",
            f"quadric generators with linear syzygies: {_yes(rep.betti_ok)}",
            f"trivial negative tangents: {_yes(rep.tnt)}",
        ]
        if rep.seed is not None:
            lines.append(f"seed {rep.seed}, attempt {rep.attempt}")
        return (0 if rep.passed else 1), {"report": rep.to_json()}, lines
    if name == "union":
        union = union_along_point(inputs[0].algebra, inputs[1].algebra)
        soc = socle(union)
        out = {"algebra": _algebra_json(union), "socle_dim": soc.dimension}
        lines = _algebra_text(union) + [f"socle dimension: {soc.dimension}"]
        if cmd.bigraded:
            bt = t1_bigraded(union, cmd.window)
            out["bigraded"] = bt.to_json()
            rows = [[f"({a},{b})", bt.kind((a, b)), str(v)] for (a, b), v in bt.t1.nonzero().items()]
            lines += [_table(rows, ["bidegree", "kind", "T1"]), f"negative mixed tangents: {len(bt.negative_mixed())}"]
        return 0, out, lines
    if name == "connect":
        form = _need_dual(inputs[0], "connect")
        other = _need_dual(inputs[1], "connect")
        cs = connected_sum(form, other)
        lines = ["direct presentation:"] + ["  " + s for s in _algebra_text(cs.direct)]
        lines += ["union modulo f - g:"] + ["  " + s for s in _algebra_text(cs.quotient)]
        lines.append(f"presentations agree: {_yes(cs.agree)}")
        data = {"direct": _algebra_json(cs.direct), "quotient": _algebra_json(cs.quotient), "agree": cs.agree}
        return (0 if cs.agree else 1), data, lines
    if name == "fiber":
        form = _need_dual(inputs[0], "fiber")
        other = _need_dual(inputs[1], "fiber")
        fr = expected_fiber(form, other)
        lines = [
            "generators: " + ", ".join(str(g) for g in fr.generators),
            f"Hilbert function: {hf_text(fr.hilbert)}",
            f"length: {fr.length}",
            f"tangent dimension: {fr.tangent_dim} (expected {fr.expected_tangent_dim})",
            f"connected sum negative T1: {fr.connected_sum_negative}",
        ]
        if fr.prediction_ok is not None:
            lines.append(f"matches the connected sum: {_yes(fr.prediction_ok)}")
        ok = fr.tangent_ok and fr.prediction_ok is not False
        return (0 if ok else 1), {"fiber": fr.to_json()}, lines
    if name == "certify":
        form = _need_dual(inputs[0], "certify")
        other = _need_dual(inputs[1], "certify")
        try:
            cert = certify_nonreduced(form, other, seed=cmd.seed or None)
        except PreconditionFailed as exc:
            lines = ["precondition failed:"] + [f"  {c}" for c in exc.failing]
            return 1, {"certificate": {"verdict": "precondition-failed", "failing": exc.failing}}, lines
        doc = cert.to_json()
        rows = [[c["name"], c["tier"], _yes(c["passed"])] for c in doc["setting"] + doc["extra"]]
        lines = [_table(rows, ["condition", "tier", "passed"]), f"verdict: {doc['verdict']}", f"hash: {doc['canonical_hash']}"]
        return 0, {"certificate": doc}, lines
    if name == "search":
        summary = search(cmd.n, cmd.trials, cmd.seed, cmd.log, fld)
        rows = [[k, str(v), f"{summary.frequencies[k]:.2f}"] for k, v in summary.counts.items()]
        lines = [f"n={cmd.n} trials={cmd.trials} seed={cmd.seed}", _table(rows, ["bullet", "count", "freq"])]
        return 0, {"summary": summary.to_json(), "records": summary.records}, lines
    if name == "paper-examples":
        reports = verify_paper_examples(fld)
        lines = []
        for r in reports:
            lines += [
                f"m={r.m}: {r.text}",
                f"  variables used: {r.variables_used}",
                f"  Hilbert function {hf_text(r.hilbert)} (expected {hf_text(r.expected_hilbert)}): {_yes(r.hilbert_ok)}",
                f"  T1: {_pairs(r.tangent.t1)}",
                f"  concentrated in degree -1: {_yes(r.concentrated_minus_one and r.minus_one_nonzero)}",
            ]
            lines += [f"  {c.name}: {_yes(c.passed)}" for c in r.setting]
        passed = all(r.passed for r in reports)
        return (0 if passed else 1), {"examples": [r.to_json() for r in reports], "passed": passed}, lines
    raise UsageError("unknown subcommand", name)


def run(cmd: Command) -> tuple[int, str]:
    """Execute a parsed command; returns the exit code and the rendered report."""
    try:
        fld = Field.from_spec(cmd.field) if cmd.field else Field.default()
        code, data, lines = _run(cmd, fld)
    except UsageError as exc:
        return 2, f"error: {exc}"
    except ApolarError as exc:
        return 2, f"error: {type(exc).__name__}: {exc}"
    except ValueError as exc:
        return 2, f"error: {exc}"
    if cmd.json:
        data = {"command": cmd.subcommand, "field": fld.to_json(), **data}
        return code, json.dumps(data, indent=2, sort_keys=True)
    return code, "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_cli(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    code, text = run(cmd)
    stream = sys.stderr if code == 2 else sys.stdout
    print(text, file=stream)
    if cmd.out and code != 2:
        with open(cmd.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code
