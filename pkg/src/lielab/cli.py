"""Command-line interface: ``lielab build|check|eigen|recognize|lemmas|census``.

Machine-readable JSON goes to stdout, human-readable notes to stderr.

Exit codes: 0 success / property true / recognized; 2 property false /
not isomorphic / counterexample / unrecognized census tables; 3 recognition
inconclusive; 1 malformed input or any other error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io as docio
from .analysis import recognize_ga1, recognize_sl2
from .census import census_dim3
from .constructions import CONSTRUCTION_NAMES, build, make_ga1_twisted
from .errors import LemmaFailure, LieLabError
from .fields import ExtensionField, parse_field
from .lemmas import LEMMA_IDS, default_catalog, randomized_lemma_sweep
from .ring import LieRing, verify_jacobi
from .structure import (
    center,
    derived_series,
    grading,
    is_nilpotent,
    is_soluble,
    lower_central_series,
    simplicity,
    upper_central_series,
)

EXIT_OK, EXIT_ERROR, EXIT_FALSE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _default_seed() -> int:
    raw = os.environ.get("LIE_LAB_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise LieLabError(f"LIE_LAB_SEED must be an integer, got {raw!r}") from None


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _note(text: str) -> None:
    sys.stderr.write(text + "\n")


def _rows(S) -> list:
    return [[S.field.encode(x) for x in r] for r in S.rows]


def _parse_element(L: LieRing, text: str) -> tuple:
    names = L.metadata.get("basis") or []
    if text in names:
        return L.basis(names.index(text))
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
    elif L.field.characteristic == 0:
        values = [Fraction(t.strip()) for t in text.split(",")]
    else:
        values = [int(t) for t in text.split(",")]
    return L.element(values)


# -- verbs -----------------------------------------------------------------------


def cmd_build(args) -> int:
    F = parse_field(args.field) if args.field else None
    if args.alpha is not None:
        if args.name != "ga1-twisted" or not isinstance(F, ExtensionField):
            raise LieLabError("--alpha only applies to ga1-twisted over p=P,k=K")
        L = make_ga1_twisted(F.p, F.degree, json.loads(args.alpha))
    else:
        L = build(args.name, F)
    assert verify_jacobi(L)
    text = docio.dumps(L)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _emit({"path": args.out, "dim": L.dim, "name": L.name})
        _note(f"wrote {L.name or 'ring'} (dim {L.dim}) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    which = args.which
    if which == "jacobi":
        L = docio.load(args.path, check=False)
        rep = verify_jacobi(L)
        out = {"property": "jacobi", "value": rep.holds}
        if not rep.holds:
            out["triple"] = [t + 1 for t in rep.triple]
        _emit(out)
        return EXIT_OK if rep.holds else EXIT_FALSE
    L = docio.load(args.path)
    if which in ("soluble", "nilpotent"):
        value = is_soluble(L) if which == "soluble" else is_nilpotent(L)
        _emit({"property": which, "value": value})
        return EXIT_OK if value else EXIT_FALSE
    if which == "simple":
        res = simplicity(L, seed=args.seed)
        out = {"property": "simple", "value": res.simple, "exhaustive": res.exhaustive, "reason": res.reason,
               "seed": args.seed}
        if res.proper_ideal is not None:
            out["proper_ideal"] = _rows(res.proper_ideal)
        _emit(out)
        _note(f"simple: {str(res.simple).lower()} ({res.reason})")
        return EXIT_OK if res.simple else EXIT_FALSE
    if which == "center":
        Z = center(L)
        _emit({"property": "center", "dim": Z.dim, "basis": _rows(Z)})
        return EXIT_OK
    if which == "series":
        _emit({
            "property": "series",
            "derived": [S.dim for S in derived_series(L)],
            "lower_central": [S.dim for S in lower_central_series(L)],
            "upper_central": [S.dim for S in upper_central_series(L)],
        })
        return EXIT_OK
    raise LieLabError(f"unknown property {which!r}")


def cmd_eigen(args) -> int:
    L = docio.load(args.path)
    if L.field.characteristic == 0:
        raise LieLabError("eigenspace gradings need positive characteristic")
    h = _parse_element(L, args.element)
    G = grading(L, h)
    comps = {str(k): _rows(S) for k, S in sorted(G.components.items())}
    _emit({"element": [L.field.encode(x) for x in h], "components": comps,
           "sum": "full" if G.is_full else "proper", "residual_dim": G.residual.dim})
    for k, S in sorted(G.components.items()):
        _note(f"E_{k}: dim {S.dim}")
    _note(f"sum = {'full' if G.is_full else 'proper'}")
    return EXIT_OK


def cmd_recognize(args) -> int:
    L = docio.load(args.path)
    if args.target == "sl2":
        rep = recognize_sl2(L, seed=args.seed, budget=args.budget)
    else:
        rep = recognize_ga1(L)
    out = rep.to_json(L.field)
    out["seed"] = args.seed
    _emit(out)
    _note(f"{args.target}: {rep.verdict}" + (f" ({rep.failure_reason})" if rep.failure_reason else ""))
    return {"recognized": EXIT_OK, "not_isomorphic": EXIT_FALSE}.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_lemmas(args) -> int:
    if args.path and args.catalog:
        raise LieLabError("give either a document path or --catalog, not both")
    if args.path:
        rings = [docio.load(args.path)]
    elif args.catalog:
        rings = default_catalog(parse_field(args.field))
    else:
        raise LieLabError("give a document path or --catalog")
    try:
        verdicts = randomized_lemma_sweep(rings, args.trials, args.seed)
    except LemmaFailure as exc:
        _emit({"seed": args.seed, "trials": args.trials, "counterexample": exc.verdict.to_json()})
        _note(str(exc))
        return EXIT_FALSE
    summary = {lid: {"checked": 0, "hypothesis_met": 0, "holds": 0} for lid in LEMMA_IDS}
    for v in verdicts:
        s = summary[v.lemma_id]
        s["checked"] += 1
        s["hypothesis_met"] += v.hypothesis_met
        s["holds"] += v.holds
    out = {"seed": args.seed, "trials": args.trials, "rings": [L.name or f"dim{L.dim}" for L in rings],
           "summary": summary, "counterexamples": []}
    if args.verbose:
        out["verdicts"] = [v.to_json() for v in verdicts]
    _emit(out)
    _note(f"{len(verdicts)} verdicts, {sum(v.hypothesis_met for v in verdicts)} with hypotheses met, "
          "no counterexamples")
    return EXIT_OK


def cmd_census(args) -> int:
    res = census_dim3(args.p, dim=args.dim, jobs=args.jobs, seed=args.seed, explore=args.explore)
    _emit(res.to_json())
    _note(f"F_{args.p}, dim {args.dim}: {res.total_tables} tables, {res.jacobi_count} Jacobi, "
          f"{res.simple_count} simple, {res.recognized_sl2_count} recognized as sl2 "
          f"({res.seconds:.1f}s, {res.jobs} job(s))")
    return EXIT_FALSE if res.unrecognized else EXIT_OK


# -- parser ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, keeping 2 free for "property false"
    def error(self, message):
        self.print_usage(sys.stderr)
        raise LieLabError(message)


def make_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    p = _Parser(prog="lielab", description="Exact Lie rings over finite fields and Q.")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="construct a named Lie ring and write its document")
    b.add_argument("name", help="one of: " + ", ".join(CONSTRUCTION_NAMES))
    b.add_argument("--field", help="Q, p=P, p=P,k=K or q=Q")
    b.add_argument("--out", help="output path (default: stdout)")
    b.add_argument("--alpha", help="ga1-twisted only: k x k matrix over F_p as JSON")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="test a structural property")
    c.add_argument("path")
    c.add_argument("which", choices=["jacobi", "soluble", "nilpotent", "simple", "center", "series"])
    c.add_argument("--seed", type=int, default=seed)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("eigen", help="eigenspace decomposition of ad_h")
    e.add_argument("path")
    e.add_argument("element", help="coordinates like 1,0,0, a JSON array, or a basis name")
    e.set_defaults(func=cmd_eigen)

    r = sub.add_parser("recognize", help="recognize sl2 or ga1")
    r.add_argument("path")
    r.add_argument("--target", choices=["sl2", "ga1"], default="sl2")
    r.add_argument("--seed", type=int, default=seed)
    r.add_argument("--budget", type=int, default=4096, help="random trials for the regular-element search")
    r.set_defaults(func=cmd_recognize)

    lm = sub.add_parser("lemmas", help="seeded random lemma sweep")
    lm.add_argument("path", nargs="?")
    lm.add_argument("--catalog", action="store_true", help="sweep the built-in catalog")
    lm.add_argument("--field", default="p=5", help="field for --catalog (default p=5)")
    lm.add_argument("--trials", type=int, default=100)
    lm.add_argument("--seed", type=int, default=seed)
    lm.add_argument("--verbose", action="store_true", help="include every verdict")
    lm.set_defaults(func=cmd_lemmas)

    cs = sub.add_parser("census", help="exhaustive census of bracket tables")
    cs.add_argument("--dim", type=int, default=3)
    cs.add_argument("--p", type=int, default=5)
    cs.add_argument("--jobs", type=int, default=1)
    cs.add_argument("--seed", type=int, default=seed)
    cs.add_argument("--explore", action="store_true", help="allow p = 2, 3 (counts only)")
    cs.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.func(args)
    except (LieLabError, ValueError, TypeError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        msg = str(exc) or exc.__class__.__name__
        _emit({"error": msg, "type": exc.__class__.__name__})
        _note(f"error: {msg}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
