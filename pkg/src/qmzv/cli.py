"""Command-line front end: ``qmzv <command> [subcommand] [flags]``.

Exit codes: 0 when everything checked holds, 1 when an identity is falsified
or a target is not derivable, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analytic import limit_check
from .brackets import (
    BiIndex,
    bracket_via_conjugation,
    eval_bracket,
    expand_partition_relation,
    expand_shuffle,
    expand_stuffle,
    verify_bracket_identity,
)
from .exact_core import rat_to_str
from .formal_space import (
    TARGETS,
    FormalSymbol,
    FormalVec,
    in_span,
    named_target,
    qdsh_consistency,
    relation_set,
    symbol_basis,
    welldefined_check,
)
from .realizations import (
    RealizationTable,
    realize,
    realize_bernoulli,
    verify_betadsh,
    verify_eisenstein,
    verify_lemma_algstruct,
    verify_realization_images,
)

DEFAULT_ORDER = 40
DEFAULT_DEGREE = 8

TARGET_NAMES = sorted([*TARGETS, "theorem41", "cor1", "cor1-flipped", "cor2"])


class UsageError(Exception):
    pass


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=_int_tuple, help="comma-separated k tuple, e.g. 2,1")
    p.add_argument("--d", type=_int_tuple, help="comma-separated d tuple (default all zero)")
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--d1", type=int, default=0)
    p.add_argument("--d2", type=int, default=0)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="q-order N (default 40)")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="generating degree D (default 8)")
    p.add_argument("--weight", type=int, help="weight K")
    p.add_argument("--target", choices=TARGET_NAMES)
    p.add_argument("--tolerance", type=float, help="tolerance for limits")
    p.add_argument("--json", action="store_true", help="print the full JSON report")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmzv", description="q-analogues of multiple zeta values")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("bracket", help="q-expansion of g(k;d)"))

    verify = sub.add_parser("verify", help="check an identity")
    vsub = verify.add_subparsers(dest="sub", required=True)
    for name in ("stuffle", "shuffle", "partition", "conjugation", "lemma", "betadsh", "eisenstein", "images"):
        _add_common(vsub.add_parser(name))

    formal = sub.add_parser("formal", help="formal double Eisenstein space")
    fsub = formal.add_subparsers(dest="sub", required=True)
    for name in ("basis", "relations", "derive", "welldefined", "qdsh"):
        p = fsub.add_parser(name)
        _add_common(p)
        if name == "basis":
            p.add_argument("--space", choices=("de", "dz"), default="de")

    p = sub.add_parser("realize", help="Eisenstein and Bernoulli images of a target or symbol")
    _add_common(p)
    p.add_argument("--product", action="store_true", help="with --k/--d of length 2: realize P instead of G")

    _add_common(sub.add_parser("limits", help="numerical q -> 1 limit against zeta"))
    return parser


def _index(args) -> BiIndex:
    if not args.k:
        raise UsageError("--k is required")
    d = args.d if args.d else (0,) * len(args.k)
    if len(d) != len(args.k):
        raise UsageError("--k and --d must have the same length")
    args.d = d  # echo the resolved tuple in the config
    return BiIndex(args.k, d)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required")


def _config(args) -> dict:
    cfg = {"command": args.command}
    if getattr(args, "sub", None):
        cfg["subcommand"] = args.sub
    for key in ("k", "d", "k1", "k2", "d1", "d2", "order", "degree", "weight", "target", "tolerance", "space", "product"):
        val = getattr(args, key, None)
        if val is None or val is False:
            continue
        cfg[key] = list(val) if isinstance(val, tuple) else val
    return cfg


def _series_reports(reports) -> tuple[bool, dict]:
    ok = all(reports)
    return ok, {"holds": ok, "checks": [r.to_json() for r in reports]}


def cmd_bracket(args):
    idx = _index(args)
    s = eval_bracket(idx, args.order)
    return True, {"index": str(idx), "series": s.to_json()}


def cmd_verify(args):
    N = args.order
    if args.sub in ("stuffle", "shuffle"):
        _need(args, "k1", "k2")
        a = BiIndex((args.k1,), (args.d1,))
        b = BiIndex((args.k2,), (args.d2,))
        expand = expand_stuffle if args.sub == "stuffle" else expand_shuffle
        rhs = expand(args.k1, args.d1, args.k2, args.d2)
        rep = verify_bracket_identity([a, b], rhs, N, f"{a}*{b} {args.sub}")
        return rep.holds, {"expansion": rhs.to_json(), **rep.to_json()}
    if args.sub == "partition":
        idx = _index(args)
        rhs = expand_partition_relation(idx)
        rep = verify_bracket_identity(idx, rhs, N, f"partition {idx}")
        return rep.holds, {"expansion": rhs.to_json(), **rep.to_json()}
    if args.sub == "conjugation":
        idx = _index(args)
        rep = verify_bracket_identity(idx, bracket_via_conjugation(idx, N), N, f"conjugation {idx}")
        return rep.holds, rep.to_json()
    D = args.degree
    if args.sub == "lemma":
        return _series_reports(verify_lemma_algstruct(D, N))
    if args.sub == "betadsh":
        return _series_reports(verify_betadsh(D))
    if args.sub == "eisenstein":
        return _series_reports(verify_eisenstein(D, N))
    if args.sub == "images":
        kmax = args.weight if args.weight is not None else D + 1
        table = RealizationTable(max(D, 2 * kmax - 3), N)
        return _series_reports(verify_realization_images(table, kmax))
    raise UsageError(f"unknown verify subcommand {args.sub}")


def _target(args) -> FormalVec:
    _need(args, "target")
    return named_target(args.target, args.weight, args.k1, args.k2)


def cmd_formal(args):
    if args.sub == "derive":
        v = _target(args)
        res = in_span(v, relation_set(v.weight))
        return res.in_span, {"target": args.target, "vector": v.to_json(), **res.to_json()}
    _need(args, "weight")
    K = args.weight
    if args.sub == "basis":
        syms = symbol_basis(K, args.space)
        return True, {"weight": K, "space": args.space, "size": len(syms), "symbols": [s.to_json() for s in syms]}
    if args.sub == "relations":
        R = relation_set(K)
        return True, {**R.to_json(), "dimension": R.dimension}
    if args.sub == "welldefined":
        rep = welldefined_check(K)
        return rep.ok, rep.to_json()
    if args.sub == "qdsh":
        rep = qdsh_consistency(K)
        return rep.ok, rep.to_json()
    raise UsageError(f"unknown formal subcommand {args.sub}")


def cmd_realize(args):
    if args.target:
        v = _target(args)
    else:
        idx = _index(args)
        if idx.depth == 1:
            kind = "G1"
        elif idx.depth == 2:
            kind = "P" if args.product else "G2"
        else:
            raise UsageError("only depth 1 and 2 symbols can be realized")
        v = FormalVec.of(FormalSymbol(kind, (*idx.k, *idx.d) if kind != "G1" else (idx.k[0], idx.d[0])))
    K = v.weight
    table = RealizationTable(max(args.degree, K - 1), args.order)
    series = realize(v, table)
    rational = realize_bernoulli(v)
    vanishes = not any(series.coeffs)
    out = {"vector": v.to_json(), "eisenstein": series.to_json(), "bernoulli": rat_to_str(rational), "vanishes": vanishes}
    # a named target is an identity, so a nonzero image falsifies it
    return (vanishes if args.target else True), out


def cmd_limits(args):
    rep = limit_check(_index(args), args.tolerance)
    return rep.passed, rep.to_json()


COMMANDS = {
    "bracket": cmd_bracket,
    "verify": cmd_verify,
    "formal": cmd_formal,
    "realize": cmd_realize,
    "limits": cmd_limits,
}


def _text(doc: dict) -> str:
    head = " ".join(str(doc["config"].get(k, "")) for k in ("command", "subcommand")).strip()
    lines = [f"{head}: {'ok' if doc['ok'] else 'FAILED'}"]
    res = doc["result"]
    for key in ("index", "target", "label", "weight", "rank", "dimension", "in_span", "first_discrepancy",
                "bernoulli", "vanishes", "extrapolated", "reference", "abs_error"):
        if key in res:
            lines.append(f"  {key}: {res[key]}")
    if "series" in res:
        lines.append("  coeffs: " + " ".join(res["series"]["coeffs"]))
    if "eisenstein" in res:
        lines.append("  coeffs: " + " ".join(res["eisenstein"]["coeffs"]))
    for chk in res.get("checks", []):
        lines.append(f"  {chk['label']}: {'ok' if chk['holds'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ok, result = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"qmzv: error: {exc}", file=sys.stderr)
        return 2
    doc = {"config": _config(args), "ok": bool(ok), "result": result}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n" if args.json else _text(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
