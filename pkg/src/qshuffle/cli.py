"""Command-line front end.

    qshuffle --config CFG.json <subcommand> [arguments]

Element arguments are JSON strings, or ``@path`` to read them from a file.
Reports are JSON documents written to stdout (or --output).  Exit status:
0 success, 1 mathematical negative (NOT_MEMBER, failed check), 2 UNDECIDED,
3 malformed input, 4 budget exhausted, 5 other errors.
"""

import argparse
import json
import random
import sys
from pathlib import Path

from . import serialize as ser
from .cache import ResultCache, cache_key
from .errors import BudgetExhausted, ParseError, QShuffleError
from .exactfield import format_scalar
from .laurent import LaurentPoly
from .pairing import pair_minus, pair_plus
from .quantum import (UElement, kernel_window, membership, order_classes, phi_map, psi_map,
                      straighten, transfer_kernel, upsilon)
from .shuffle import shuffle_mul
from .suites import SUITES, run_suite
from .words import relabel, word_key
from .zeta import FactoredZeta, as_datum, find_wheels, is_symmetric, specialize

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDECIDED = 0, 1, 2
EXIT_INPUT, EXIT_BUDGET, EXIT_ERROR = 3, 4, 5


def _load_json(text):
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON argument: %s" % exc) from None


def _factored(cfg):
    if not isinstance(cfg.zeta, FactoredZeta):
        raise ParseError("this command needs a factored, quiver or kac_moody zeta")
    return cfg.zeta


# -- subcommands: each returns (result document, exit code) -----------------

def cmd_zeta_info(cfg, args):
    z = as_datum(cfg.zeta)
    n = z.size
    entries = []
    for i in range(n):
        for j in range(n):
            entries.append({
                "i": cfg.name(i), "j": cfg.name(j),
                "tilde": {str(e): format_scalar(c) for e, c in sorted(z.tilde[i][j].items())},
                "pole": z.pole[i][j],
                "alpha": format_scalar(z.alpha(i, j)),
                "beta": format_scalar(z.beta(i, j)),
                "s": z.s(i, j),
                "count": z.count(i, j),
            })
    return {"vertices": cfg.vertices, "entries": entries, "symmetric": is_symmetric(z)}, EXIT_OK


def cmd_mul(cfg, args):
    a = ser.shuffle_from_json(_load_json(args.a), cfg)
    b = ser.shuffle_from_json(_load_json(args.b), cfg)
    return {"product": ser.shuffle_to_json(shuffle_mul(a, b, cfg.zeta), cfg)}, EXIT_OK


def cmd_upsilon(cfg, args):
    u = ser.u_from_json(_load_json(args.element), cfg)
    return {"image": ser.shuffle_to_json(upsilon(u, cfg.zeta), cfg)}, EXIT_OK


def cmd_pair(cfg, args):
    u = ser.u_from_json(_load_json(args.element), cfg)
    r = ser.shuffle_from_json(_load_json(args.shuffle), cfg)
    if u.sign == "+":
        val = pair_plus(u, r, cfg.zeta, cfg.margin)
    else:
        val = pair_minus(r, u, cfg.zeta, cfg.margin)
    return {"value": format_scalar(val)}, EXIT_OK


def cmd_straighten(cfg, args):
    u = ser.u_from_json(_load_json(args.element), cfg)
    return {"straightened": ser.u_to_json(straighten(u, cfg.zeta, cfg.budget), cfg)}, EXIT_OK


def cmd_member(cfg, args):
    r = ser.shuffle_from_json(_load_json(args.shuffle), cfg)
    v = membership(r, cfg.zeta, cfg.budget)
    doc = {"status": v.status, "report": v.report}
    if v.expansion is not None:
        doc["expansion"] = [[ser.word_to_json(w, cfg), format_scalar(c)]
                            for w, c in sorted(v.expansion.items(), key=lambda t: word_key(t[0]))]
    if v.witness is not None:
        doc["witness"] = ser.u_to_json(v.witness, cfg)
        doc["witness_pairing"] = format_scalar(
            pair_plus(v.witness, r, cfg.zeta) if r.sign == "-" else pair_minus(r, v.witness, cfg.zeta))
    code = {"MEMBER": EXIT_OK, "NOT_MEMBER": EXIT_NEGATIVE}.get(v.status, EXIT_UNDECIDED)
    return doc, code


def cmd_kernel(cfg, args):
    n = ser.degree_from_json(_load_json(args.degree), cfg)
    ks = kernel_window((n, args.d), (args.window[0], args.window[1]), cfg.zeta, args.sign)
    return {"dimension": len(ks), "basis": [ser.u_to_json(k, cfg) for k in ks]}, EXIT_OK


def cmd_wheels(cfg, args):
    n = ser.degree_from_json(_load_json(args.degree), cfg)
    ws = find_wheels(_factored(cfg), n, args.max_points)
    out = []
    for p, w in ws:
        out.append({"point": ser.point_to_json(p, cfg),
                    "cycle": [[cfg.name(c), a] for c, a in w.cycle],
                    "ratios": [format_scalar(r) for r in w.ratios],
                    "verified": w.verify(p, _factored(cfg))})
    return {"count": len(out), "truncated": ws.truncated, "wheels": out}, EXIT_OK


def cmd_specialize(cfg, args):
    n = ser.degree_from_json(_load_json(args.degree), cfg)
    p = ser.point_from_json(_load_json(args.point), cfg)
    sp = specialize(_factored(cfg), n, p)
    return {
        "classes": [{"vertex": cfg.name(c), "value": format_scalar(v), "slots": list(s)}
                    for c, v, s in sp.classes],
        "counts": sp.counts,
        "quiver": sp.quiver,
        "partial": {"%d,%d" % k: {str(e): format_scalar(c) for e, c in sorted(v.items())}
                    for k, v in sorted(sp.partial.items())},
    }, EXIT_OK


def cmd_transfer(cfg, args):
    z = _factored(cfg)
    p = ser.point_from_json(_load_json(args.point), cfg)
    doc = _load_json(args.element)
    # words of the input use class indices as vertices
    terms = {}
    for w, c in doc.get("terms", []):
        terms[tuple((int(a), int(b)) for a, b in w)] = ser._scalar(c)
    phi = UElement("+", terms)
    out = transfer_kernel(phi, p, z, args.order)
    img = upsilon(out, z)
    return {"transferred": ser.u_to_json(out, cfg), "upsilon_zero": not img.body}, \
        EXIT_OK if not img.body else EXIT_NEGATIVE


def cmd_phi_psi_check(cfg, args):
    z = as_datum(cfg.zeta)
    colors = [cfg.index(v) for v in args.colors]
    rng = random.Random(args.seed)
    lv = relabel(colors)
    sigmas = order_classes(colors)
    failures = 0
    for _ in range(args.trials):
        f = {}
        for s in sigmas:
            for t in sigmas:
                if s != t and rng.random() < 0.5:
                    f[s, t] = LaurentPoly.from_items(
                        [({v: rng.randint(-1, 1) for v in lv}, rng.randint(1, 3))])
        if phi_map(psi_map(f, colors, z), colors, z):
            failures += 1
    return {"trials": args.trials, "failures": failures}, EXIT_OK if not failures else EXIT_NEGATIVE


def cmd_verify(cfg, args):
    res = run_suite(args.suite, cfg.zeta, args.seed)
    ok = all(r["passed"] for r in res)
    return {"suite": args.suite, "checks": res, "passed": ok}, EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {
    "zeta-info": cmd_zeta_info, "mul": cmd_mul, "upsilon": cmd_upsilon, "pair": cmd_pair,
    "straighten": cmd_straighten, "member": cmd_member, "kernel": cmd_kernel,
    "wheels": cmd_wheels, "specialize": cmd_specialize, "transfer": cmd_transfer,
    "phi-psi-check": cmd_phi_psi_check, "verify": cmd_verify,
}


def _common(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="JSON config file")
    p.add_argument("--budget-window", type=int, default=d, help="largest window enlargement")
    p.add_argument("--budget-iters", type=int, default=d, help="greedy reduction steps")
    p.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS if suppress else False)
    p.add_argument("--output", default=d, help="write the report here instead of stdout")


def build_parser():
    p = argparse.ArgumentParser(prog="qshuffle", description="Shuffle algebras and quadratic quantum loop groups.")
    _common(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, True)
        return sp

    add("zeta-info", "derived constants of the zeta datum")
    sp = add("mul", "shuffle product of two elements")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("upsilon", "image of a word combination in the shuffle algebra")
    sp.add_argument("element")
    sp = add("pair", "pairing of a word combination with a shuffle element")
    sp.add_argument("element")
    sp.add_argument("shuffle")
    sp = add("straighten", "rewrite in the non-increasing word basis")
    sp.add_argument("element")
    sp = add("member", "decide membership in the image of upsilon")
    sp.add_argument("shuffle")
    sp = add("kernel", "kernel of upsilon on a window of basis words")
    sp.add_argument("--degree", required=True, help='JSON {"vertex": count}')
    sp.add_argument("--d", type=int, required=True, help="total exponent of the words")
    sp.add_argument("--window", type=int, nargs=2, required=True, metavar=("LO", "HI"))
    sp.add_argument("--sign", choices=["+", "-"], default="+")
    sp = add("wheels", "points carrying a wheel")
    sp.add_argument("--degree", required=True)
    sp.add_argument("--max-points", type=int, default=1000)
    sp = add("specialize", "quiver and partial zeta at a point")
    sp.add_argument("--degree", required=True)
    sp.add_argument("--point", required=True)
    sp = add("transfer", "move a quiver kernel element to the general algebra")
    sp.add_argument("element", help="U^+ element whose vertices are class indices")
    sp.add_argument("--point", required=True)
    sp.add_argument("--order", type=int, nargs="*", default=None, help="class indices, smallest first")
    sp = add("phi-psi-check", "check Phi(Psi(f)) = 0 on random inputs")
    sp.add_argument("--colors", nargs="+", required=True, help="vertex names i_1 .. i_n")
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("verify", "run a named self-check suite")
    sp.add_argument("--suite", choices=sorted(SUITES), default="core")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(doc, output):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Parse argv, execute, and return (exit code, report)."""
    return execute(build_parser().parse_args(argv))


def execute(args):
    report = {"schema": ser.SCHEMA_REPORT, "command": args.command}
    try:
        if not args.config:
            raise ParseError("--config is required")
        raw = Path(args.config).read_text(encoding="utf-8")
        cfg = ser.parse_config(raw)
        if args.budget_window is not None:
            cfg.budget.max_window = args.budget_window
        if args.budget_iters is not None:
            cfg.budget.max_steps = args.budget_iters
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("config", "output", "no_cache", "command")}
        key = cache_key(cfg.canonical(), args.command, params)
        cache = ResultCache(enabled=not args.no_cache)
        hit = cache.get(key)
        if hit is not None:
            return hit["exit"], hit["report"]
        result, code = COMMANDS[args.command](cfg, args)
        report.update({"status": "ok" if code == EXIT_OK else "negative" if code == EXIT_NEGATIVE
                       else "undecided", "result": result})
        cache.put(key, {"exit": code, "report": report})
        return code, report
    except BudgetExhausted as exc:
        report.update({"status": "error", "error": "BudgetExhausted", "message": str(exc),
                       "diagnostic": exc.diagnostic})
        return EXIT_BUDGET, report
    except (ParseError, json.JSONDecodeError, OSError, KeyError) as exc:
        report.update({"status": "error", "error": type(exc).__name__, "message": str(exc)})
        return EXIT_INPUT, report
    except (QShuffleError, ValueError, ArithmeticError) as exc:
        report.update({"status": "error", "error": type(exc).__name__, "message": str(exc)})
        return EXIT_ERROR, report


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, report = execute(args)
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
