"""Command-line front end: ``linkcob <verb> ...``.

Exit codes: 0 success (found / verified / exact), 1 witness rejected,
2 bad input, 3 impossible by obstruction, 4 not found within bounds,
5 inexact, 130 interrupted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Optional

from . import corpus
from .abgroup import FgAbelianGroup, GroupHom
from .cobordism import (CobordismReport, diagonal_witness, search_witness, stabilize,
                        verify_witness)
from .exactlink import IllDefinedBoundary, SeifertHomologyData, is_exact_surface
from .forms import BilinearForm, boundary_homology, invariants
from .witt import (DEFAULT_HEIGHT, DEFAULT_NODES, SearchInterrupted, SearchOutcome, Verdict,
                   find_metabolizer)
from .zlattice import IntMatrix, Submodule

EXIT_OK, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2
EXIT_IMPOSSIBLE, EXIT_NOT_FOUND, EXIT_INEXACT, EXIT_INTERRUPTED = 3, 4, 5, 130
VERDICT_EXIT = {Verdict.FOUND: EXIT_OK, Verdict.IMPOSSIBLE: EXIT_IMPOSSIBLE,
                Verdict.NOT_FOUND: EXIT_NOT_FOUND}
DEFAULT_SEED = 20240101
SAFE_INT = 2**53


class InputError(Exception):
    pass


# -- serialization ------------------------------------------------------------

def encode_int(x: int):
    """Integers beyond 53 bits become decimal strings."""
    return x if -SAFE_INT < x < SAFE_INT else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise InputError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"expected an integer, got {x!r}")


def encode(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if isinstance(obj, IntMatrix):
        return [[encode_int(x) for x in row] for row in obj]
    if isinstance(obj, FgAbelianGroup):
        return {"free_rank": obj.free_rank, "torsion": [encode_int(d) for d in obj.torsion]}
    if isinstance(obj, GroupHom):
        return {"source": encode(obj.source), "target": encode(obj.target),
                "matrix": encode(obj.matrix)}
    if isinstance(obj, Submodule):
        return {"ambient_rank": obj.ambient_rank, "basis": encode(obj.basis)}
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _matrix(raw, what: str, rows: Optional[int] = None, cols: Optional[int] = None) -> IntMatrix:
    if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
        raise InputError(f"{what} must be a list of rows")
    try:
        return IntMatrix([[decode_int(x) for x in r] for r in raw], rows=rows, cols=cols)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def _read_json(path: str) -> dict:
    if path.startswith("corpus:"):
        p = corpus.data_dir() / f"{path[len('corpus:'):]}.json"
    else:
        p = Path(path)
    try:
        raw = json.loads(p.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a JSON object")
    return raw


def read_form(path: str, adjoint: str = "right") -> tuple[BilinearForm, str]:
    raw = _read_json(path)
    if "matrix" not in raw or "epsilon" not in raw:
        raise InputError(f"{path}: a form file needs 'epsilon' and 'matrix'")
    eps = decode_int(raw["epsilon"])
    if eps not in (1, -1):
        raise InputError(f"{path}: epsilon must be +1 or -1")
    m = len(raw["matrix"]) if isinstance(raw["matrix"], list) else 0
    M = _matrix(raw["matrix"], f"{path}: matrix", rows=m, cols=m)
    if not M.is_square():
        raise InputError(f"{path}: matrix must be square")
    return BilinearForm(M, eps, adjoint), raw.get("name", Path(path).stem)


def form_to_json(A: BilinearForm, name: Optional[str] = None) -> dict:
    out = {"epsilon": A.epsilon, "matrix": encode(A.gram)}
    if name:
        out["name"] = name
    return out


def read_submodule(path: str) -> Submodule:
    raw = _read_json(path)
    if "basis" not in raw or "ambient_rank" not in raw:
        raise InputError(f"{path}: a witness file needs 'ambient_rank' and 'basis'")
    n = decode_int(raw["ambient_rank"])
    B = _matrix(raw["basis"], f"{path}: basis", cols=n)
    return Submodule.from_generators(B, n)


def _group(raw, what: str) -> FgAbelianGroup:
    try:
        return FgAbelianGroup(decode_int(raw.get("free_rank", 0)),
                              tuple(decode_int(d) for d in raw.get("torsion", [])))
    except (ValueError, AttributeError) as exc:
        raise InputError(f"{what}: {exc}") from None


def read_sequence(path: str) -> SeifertHomologyData:
    raw = _read_json(path)
    try:
        g, mp = raw["groups"], raw["maps"]
        HnK, HnF, HnFK, Hn1K = (_group(g[k], k) for k in ("HnK", "HnF", "HnFK", "Hn1K"))
        alpha = _matrix(mp["alpha"], "alpha", rows=HnF.ngens, cols=HnK.ngens)
        beta = _matrix(mp["beta"], "beta", rows=HnFK.ngens, cols=HnF.ngens)
        bd = _matrix(mp["boundary"], "boundary", rows=Hn1K.ngens, cols=HnFK.ngens)
    except KeyError as exc:
        raise InputError(f"{path}: missing key {exc}") from None
    try:
        return SeifertHomologyData.build(HnK, HnF, HnFK, Hn1K, alpha, beta, bd)
    except IllDefinedBoundary as exc:
        raise InputError(f"{path}: ill-defined datum: the boundary map "
                         f"H_n(F,K)/Tors -> H_(n-1)(K) is not well defined ({exc})") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- reporting ----------------------------------------------------------------

def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(encode(payload), indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _stats(out: SearchOutcome) -> dict:
    s = out.stats
    return {"height": s.height, "node_budget": s.node_budget, "nodes": s.nodes,
            "candidates": s.candidates, "exhausted_budget": s.exhausted_budget}


def _report_json(rep: CobordismReport) -> dict:
    return {
        "verdict": rep.verdict,
        "failed_clause": rep.failed_clause.value if rep.failed_clause else None,
        "clauses": dict(rep.clauses),
        "metabolizer": rep.metabolizer,
        "kernel_bases": list(rep.kernel_bases),
        "phi": rep.phi,
        "theta": rep.theta,
        "order_check": list(rep.order_check),
        "intersection_identity": rep.intersection_identity,
    }


def _report_lines(rep: CobordismReport) -> list[str]:
    mark = {True: "pass", False: "FAIL"}
    lines = [f"verdict: {'cobordant' if rep.verdict else 'not verified'}",
             f"  (1) metabolizer for (-A0)+A1: {mark[rep.clauses['metabolizer']]}",
             f"  (2) image of M in G/Ker S* pure: {mark[rep.clauses['mbar_pure']]}",
             f"  (c1) M ∩ Ker S* is a graph: {mark[rep.clauses['c1']]}",
             f"  (c2) d(S*(M)^) is a graph: {mark[rep.clauses['c2']]}",
             f"  metabolizer: {[list(r) for r in rep.metabolizer.basis]}",
             f"  phi: {rep.phi if rep.phi is not None else '-'}",
             f"  theta: {rep.theta if rep.theta is not None else '-'}",
             f"  order check |d(S*(M)^)| = {rep.order_check[0]}, "
             f"|Tors Coker S0*| = {rep.order_check[1]}"]
    if rep.failed_clause:
        lines.insert(1, f"  first failure: {rep.failed_clause.value}")
    return lines


# -- commands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    A, name = read_form(args.path, args.adjoint)
    inv = invariants(A)
    Hn, Hn1 = boundary_homology(A)
    payload = {
        "command": "analyze", "name": name, "epsilon": A.epsilon, "adjoint": A.adjoint,
        "rank": A.rank, "S": inv.symmetrized, "det_S": inv.det_S,
        "kernel_rank": inv.kernel_of_adjoint.rank, "kernel_basis": inv.kernel_of_adjoint.basis,
        "cokernel": inv.cokernel, "torsion_of_cokernel": inv.torsion_of_cokernel,
        "signature": inv.signature,
        "boundary_homology": {"H_n(K)": Hn, "H_n-1(K)": Hn1},
    }
    lines = [f"form {name}: rank {A.rank}, epsilon {A.epsilon:+d}",
             "S = A + eps A^T:", str(inv.symmetrized) if A.rank else "  (0x0)",
             f"det S = {inv.det_S}",
             f"Ker S*: rank {inv.kernel_of_adjoint.rank}",
             f"Coker S* = {inv.cokernel}  (torsion {inv.torsion_of_cokernel})",
             f"signature: {inv.signature if inv.signature is not None else 'n/a (skew)'}",
             f"boundary homology: H_n(K) = {Hn}, H_(n-1)(K) = {Hn1}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _outcome(args, out: SearchOutcome, command: str, extra: dict) -> int:
    payload = {"command": command, "verdict": out.verdict.value,
               "metabolizer": out.witness.submodule if out.witness else None,
               "obstruction": ({"kind": out.obstruction.kind, "detail": out.obstruction.detail}
                               if out.obstruction else None),
               "stats": _stats(out), **extra}
    lines = [f"verdict: {out.verdict.value}"]
    if out.witness:
        lines.append(f"  metabolizer: {[list(r) for r in out.witness.submodule.basis]}")
    if out.obstruction:
        lines.append(f"  obstruction: {out.obstruction}")
    lines.append(f"  stats: {_stats(out)}")
    if out.report is not None:
        payload["report"] = _report_json(out.report)
        lines += _report_lines(out.report)
    _emit(args, payload, lines)
    return VERDICT_EXIT[out.verdict]


def cmd_witt(args) -> int:
    A, _ = read_form(args.path, args.adjoint)
    return _outcome(args, find_metabolizer(A, args.height, args.nodes), "witt", {})


def cmd_cobordant(args) -> int:
    A0, _ = read_form(args.path_a, args.adjoint)
    A1, _ = read_form(args.path_b, args.adjoint)
    if A0.epsilon != A1.epsilon:
        raise InputError(f"epsilon mismatch: {A0.epsilon:+d} vs {A1.epsilon:+d}")
    if args.witness is None:
        return _outcome(args, search_witness(A0, A1, args.height, args.nodes), "cobordant",
                        {"mode": "search"})
    if args.witness == "diagonal":
        if A0.rank != A1.rank:
            raise InputError("the diagonal witness needs forms of equal rank")
        M = diagonal_witness(A0)
    else:
        M = read_submodule(args.witness)
    if M.ambient_rank != A0.rank + A1.rank:
        raise InputError(f"witness lives in Z^{M.ambient_rank}, expected Z^{A0.rank + A1.rank}")
    rep = verify_witness(A0, A1, M)
    _emit(args, {"command": "cobordant", "mode": "verify", **_report_json(rep)},
          _report_lines(rep))
    return EXIT_OK if rep.verdict else EXIT_REJECTED


def cmd_exact(args) -> int:
    data = read_sequence(args.path)
    rep = is_exact_surface(data)
    lines = ["exact" if rep.exact else "inexact"] + [f"  {d}" for d in rep.describe()]
    _emit(args, {"command": "exact", "exact": rep.exact, "failures": list(rep.failures),
                 "first_failure": rep.first_failure, "messages": rep.describe()}, lines)
    return EXIT_OK if rep.exact else EXIT_INEXACT


def cmd_stabilize(args) -> int:
    A, name = read_form(args.path, args.adjoint)
    A2, M = stabilize(A)
    prefix = Path(args.out) if args.out else Path(f"{Path(args.path.split(':')[-1]).stem}-stab")
    form_path = prefix.with_name(prefix.name + ".json")
    wit_path = prefix.with_name(prefix.name + "-M.json")
    try:
        form_path.write_text(json.dumps(form_to_json(A2, f"{name}-stab")) + "\n")
        wit_path.write_text(json.dumps(encode(M)) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write output: {exc.strerror}") from None
    _emit(args, {"command": "stabilize", "form": str(form_path), "witness": str(wit_path),
                 "rank": A2.rank},
          [f"wrote {form_path} (rank {A2.rank}) and {wit_path}"])
    return EXIT_OK


def random_form(rng: random.Random, max_rank: int, bound: int, epsilon: int) -> BilinearForm:
    m = rng.randint(0, max_rank)
    return BilinearForm([[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)],
                        epsilon)


def cmd_corpus(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        forms = []
        for i in range(args.random):
            eps = args.epsilon if args.epsilon else rng.choice((1, -1))
            forms.append(form_to_json(random_form(rng, args.max_rank, args.bound, eps),
                                      f"random-{args.seed}-{i}"))
        print(json.dumps(forms, indent=None if not args.json else 2))
        return EXIT_OK
    if args.name:
        e = corpus.load(args.name, args.epsilon or None, args.adjoint)
        _emit(args, {"command": "corpus", **form_to_json(e.form, e.name), "notes": e.notes,
                     "expected": e.expected, "alexander": list(e.alexander)},
              [f"{e.name}: epsilon {e.form.epsilon:+d}", str(e.form.gram) if e.form.rank
               else "(0x0)", f"notes: {e.notes}", f"Alexander polynomial: {list(e.alexander)}"])
        return EXIT_OK
    _emit(args, {"command": "corpus", "names": corpus.names()}, corpus.names())
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--adjoint", choices=("right", "left"), default="right",
                        help="matrix convention for the adjoint S* (default: right)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random data")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--height", type=int, default=DEFAULT_HEIGHT)
    search.add_argument("--nodes", type=int, default=DEFAULT_NODES)

    p = argparse.ArgumentParser(prog="linkcob", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="invariants of a form")
    s.add_argument("path")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("witt", parents=[common, search], help="search for a metabolizer")
    s.add_argument("path")
    s.set_defaults(func=cmd_witt)

    s = sub.add_parser("cobordant", parents=[common, search],
                       help="verify or search an algebraic cobordism")
    s.add_argument("path_a")
    s.add_argument("path_b")
    s.add_argument("--witness", help="witness file, or 'diagonal'")
    s.set_defaults(func=cmd_cobordant)

    s = sub.add_parser("exact", parents=[common], help="check a homology sequence file")
    s.add_argument("path")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("stabilize", parents=[common], help="write the default stabilization")
    s.add_argument("path")
    s.add_argument("--out", help="output prefix (writes PREFIX.json and PREFIX-M.json)")
    s.set_defaults(func=cmd_stabilize)

    s = sub.add_parser("corpus", parents=[common], help="list, show or generate forms")
    s.add_argument("name", nargs="?")
    s.add_argument("--epsilon", type=int, choices=(1, -1))
    s.add_argument("--random", type=int, default=0, metavar="K", help="emit K random forms")
    s.add_argument("--max-rank", type=int, default=5)
    s.add_argument("--bound", type=int, default=3)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    except SearchInterrupted as exc:
        s = exc.stats
        print(f"interrupted: explored {s.nodes} nodes over {s.candidates} candidates "
              f"(height {s.height})", file=sys.stderr)
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
