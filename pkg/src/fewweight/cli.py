"""Command-line driver: ``python3 -m fewweight {verify,report,sums,scan}``.

Field arguments are given by index in the deterministic subfield order
``[0, 1, g, g^2, ...]`` of the field they live in (0 is zero, 1 is one), so
scripts do not depend on the chosen modulus.  ``--u`` is a plain GF(p)
symbol.

Exit codes: 0 ok, 2 mismatch, 3 invalid parameters, 4 unsupported regime,
5 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import char_sums as cs
from . import code_lab as cl
from .cyclotomic import CycInt
from .errors import BudgetExceeded, FewWeightError, InvalidParameters, UnsupportedRegime
from .field_tower import build_field

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 2, 3, 4, 5

BUDGET_ENV = "FEWWEIGHT_BUDGET"

SUM_NAMES = ("gauss", "weil-s", "weil-s2", "salie", "kloosterman", "L", "M", "N")


# ---------------------------------------------------------------------------
# rendering


def render_text(rep: dict) -> str:
    pr = rep["params"]
    lines = [
        "parameters: p={p} e={e} alpha={alpha} t={t} d={d} regime={regime} a_index={a_index}"
        " a={a_coords}".format(**pr)
    ]
    for flag in rep["flags"]:
        lines.append(f"NOTE: {flag}")
    if rep["constants"]:
        c = rep["constants"]
        lines.append(f"constants: kappa={c['kappa']} epsilon={c['epsilon']} kappa2={c['kappa2']}")
    ln = rep["length"]
    lines.append(f"length: computed={ln['computed']} predicted={ln['predicted']}")
    dim = rep["dimension"]
    lines.append(f"distinct codewords: {dim['distinct_codewords']} (p^e for dimension {dim['claimed']}: {dim['ok']})")
    lines.append("complete weight enumerator:")
    for term in rep["cwe"]:
        lines.append(f"  {term['multiplicity']:>8}  {tuple(term['composition'])}")
    ham = " + ".join(
        str(h["count"]) if h["weight"] == 0 else f"{h['count']}z^{h['weight']}" for h in rep["hamming"]
    )
    lines.append(f"weight enumerator: {ham}")
    if rep["families"]:
        lines.append("families (computed / predicted):")
        for f in rep["families"]:
            lines.append(f"  {f['name']}: {f['computed']} / {f['predicted']}")
    if rep["secret_sharing"]:
        ss = rep["secret_sharing"]
        lines.append(f"w_min/w_max = {ss['ratio']} vs (p-1)/p = {ss['threshold']}: {ss['ok']}")
    if rep["diff"]:
        lines.append("differing terms (composition: computed vs predicted):")
        for dterm in rep["diff"]:
            lines.append(f"  {tuple(dterm['composition'])}: {dterm['computed']} vs {dterm['predicted']}")
    verdict = {True: "MATCH", False: "MISMATCH (" + ", ".join(rep["mismatches"]) + ")", None: "not compared"}
    lines.append(f"result: {verdict[rep['match']]}")
    lines.append(f"time: {rep['timing_ms']} ms")
    return "\n".join(lines) + "\n"


def render_csv(rep: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["weight", "count"])
    for h in rep["hamming"]:
        w.writerow([h["weight"], h["count"]])
    return buf.getvalue()


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return render_csv(rep)
    return render_text(rep)


def report_exit(rep: dict) -> int:
    return EXIT_MISMATCH if rep.get("match") is False else EXIT_OK


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else cl.DEFAULT_BUDGET


def _code_params(args) -> cl.CodeParams:
    sp = cs.SumParams(args.p, args.e, args.alpha, args.t, strict=False)
    bad = sp.violations()
    if bad and not args.allow_nonpaper:
        names = "; ".join(f"{name}: {msg}" for name, msg in bad)
        raise InvalidParameters(f"parameters violate {names}", bad[0][0])
    return cl.CodeParams(args.p, args.e, args.alpha, args.t, args.a, args.allow_nonpaper)


def cmd_verify(args) -> int:
    params = _code_params(args)
    ctx = build_field(params.p, params.e)
    rep = cl.verify(ctx, params, workers=args.workers, budget=_budget(args)).to_dict()
    _emit(render(rep, args.format), args.out)
    return report_exit(rep)


def cmd_report(args) -> int:
    with open(args.file) as fh:
        rep = cl.VerificationReport.from_dict(json.load(fh)).to_dict()
    _emit(render(rep, args.format), args.out)
    return report_exit(rep)


def _cyc_json(v: CycInt) -> dict:
    z = complex(v)
    return {"coeffs": list(v.coeffs), "value": str(v), "approx": [round(z.real, 9), round(z.imag, 9)]}


def _evaluate_sum(args):
    """(brute, closed-or-None, description) for the requested sum."""
    name = args.name
    p = args.p
    if name == "gauss":
        k = args.k or args.e or 1
        ctx = build_field(p, args.e or k)
        return cs.gauss_sum_bruteforce(ctx, k), lambda: cs.gauss_sum_closed(ctx, k), f"G(eta^({k}))"
    if name in ("salie", "kloosterman"):
        t = args.t or 1
        ctx = build_field(p, args.e or t)
        a, b = ctx.subfield_element(t, args.a), ctx.subfield_element(t, args.b)
        if name == "salie":
            return (
                cs.salie_sum_bruteforce(ctx, t, a, b),
                lambda: cs.salie_sum_closed(ctx, t, a, b),
                f"Salie sum over GF({p}^{t})",
            )

        def no_closed():
            raise UnsupportedRegime("the plain Kloosterman sum has no closed form here")

        return cs.kloosterman_bruteforce(ctx, t, a, b), no_closed, f"Kloosterman sum over GF({p}^{t})"
    if args.e is None or args.alpha is None:
        raise InvalidParameters(f"sum {name!r} needs --e and --alpha", "arguments")
    t = args.t or 1
    sp = cs.SumParams(p, args.e, args.alpha, t, strict=False)
    ctx = build_field(p, args.e)
    if name == "weil-s":
        a = ctx.subfield_element(ctx.e, args.a)
        return cs.weil_sum_S_bruteforce(ctx, sp, a), lambda: cs.weil_sum_S_closed(ctx, sp, a), "S_alpha(a)"
    if name == "weil-s2":
        a, b = ctx.subfield_element(ctx.e, args.a), ctx.subfield_element(ctx.e, args.b)
        return (
            cs.weil_sum_S2_bruteforce(ctx, sp, a, b),
            lambda: cs.weil_sum_S2_closed(ctx, sp, a, b),
            "S_alpha(a, b)",
        )
    a = ctx.subfield_element(t, args.a)
    if name == "M":
        return cs.M_sum_bruteforce(ctx, sp, a), lambda: cs.M_sum_closed(ctx, sp, a), "M(a)"
    b = ctx.subfield_element(ctx.e, args.b)
    u = args.u % p
    if name == "L":
        return (
            cs.L_sum_bruteforce(ctx, sp, b, a, u),
            lambda: cs.L_sum_closed(ctx, sp, b, a, u),
            "L_{alpha,b}(a, u)",
        )
    return (
        cs.N_count_bruteforce(ctx, sp, b, a, u),
        lambda: cs.N_count_closed(ctx, sp, b, a, u),
        "N(b, a, u)",
    )


def cmd_sums(args) -> int:
    brute, closed_fn, label = _evaluate_sum(args)
    closed, note = None, None
    try:
        closed = closed_fn()
    except (UnsupportedRegime, InvalidParameters, ValueError) as exc:
        if args.closed:
            raise
        note = str(exc)
    equal = None if closed is None else brute == closed
    as_json = (lambda v: _cyc_json(v) if isinstance(v, CycInt) else {"value": v})
    res = {
        "sum": args.name,
        "label": label,
        "brute": as_json(brute),
        "closed": None if closed is None else as_json(closed),
        "equal": equal,
        "note": note,
    }
    if args.format == "json":
        text = json.dumps(res, indent=2, sort_keys=True) + "\n"
    else:
        def fmt(v):
            if not isinstance(v, CycInt):
                return str(v)
            z = complex(v)
            return f"{v}  coeffs={list(v.coeffs)}  ~ {z.real:.6g}{z.imag:+.6g}i"

        lines = [f"{label}", f"  brute : {fmt(brute)}"]
        if closed is not None:
            lines.append(f"  closed: {fmt(closed)}")
            lines.append("  equal" if equal else "  DIFFER")
        else:
            lines.append(f"  closed: unavailable ({note})")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_MISMATCH if equal is False else EXIT_OK


def _int_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def scan_tuples(ps, es, alphas, ts, q_max):
    """All (p, e, alpha, t) satisfying the hypotheses in range; alpha runs over 1..e."""
    for p in ps:
        for e in es:
            if p**e > q_max:
                continue
            for alpha in alphas or range(1, e + 1):
                if alpha > e:
                    continue
                for t in ts or range(1, e + 1):
                    if e % t:
                        continue
                    if cs.SumParams(p, e, alpha, t, strict=False).hypotheses_hold:
                        yield p, e, alpha, t


def cmd_scan(args) -> int:
    ps = _int_list(args.p) or []
    es = _int_list(args.e) or []
    rows = []
    worst = EXIT_OK
    for p, e, alpha, t in scan_tuples(ps, es, _int_list(args.alpha), _int_list(args.t), args.q_max):
        regime = cs.SumParams(p, e, alpha, t).regime
        indices = _int_list(args.a)
        if indices is None:
            indices = range(p**t) if regime == "odd" else [0]
        ctx = build_field(p, e)
        for ai in indices:
            row = {"p": p, "e": e, "alpha": alpha, "t": t, "a_index": ai, "regime": regime}
            try:
                rep = cl.verify(ctx, cl.CodeParams(p, e, alpha, t, ai), workers=args.workers, budget=_budget(args))
                row.update(
                    n=rep.length["computed"],
                    weights=[h["weight"] for h in rep.hamming if h["weight"]],
                    match=rep.match,
                    distinct=rep.dimension["distinct_codewords"],
                    status="match" if rep.match else "MISMATCH",
                )
                if not rep.match:
                    worst = max(worst, EXIT_MISMATCH) if worst != EXIT_BUDGET else worst
            except UnsupportedRegime:
                row.update(n=None, weights=None, match=None, distinct=None, status="unsupported")
            except BudgetExceeded:
                row.update(n=None, weights=None, match=None, distinct=None, status="budget")
                worst = EXIT_BUDGET if worst == EXIT_OK else worst
            rows.append(row)
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "e", "alpha", "t", "a_index", "regime", "n", "weights", "distinct", "status"])
        for r in rows:
            ws = " ".join(map(str, r["weights"])) if r["weights"] is not None else ""
            w.writerow([r["p"], r["e"], r["alpha"], r["t"], r["a_index"], r["regime"], r["n"], ws, r["distinct"], r["status"]])
        text = buf.getvalue()
    else:
        lines = [f"{'p':>2} {'e':>2} {'alpha':>5} {'t':>2} {'a':>3} {'regime':<6} {'n':>6}  status    weights"]
        for r in rows:
            ws = " ".join(map(str, r["weights"])) if r["weights"] is not None else "-"
            n = "-" if r["n"] is None else r["n"]
            lines.append(
                f"{r['p']:>2} {r['e']:>2} {r['alpha']:>5} {r['t']:>2} {r['a_index']:>3} {r['regime']:<6} {n:>6}  {r['status']:<9} {ws}"
            )
        lines.append(f"{len(rows)} rows, {sum(1 for r in rows if r['match'])} matched")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return worst


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fewweight", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    def run_opts(sp):
        sp.add_argument("--workers", type=_positive, default=1)
        sp.add_argument("--budget", type=_positive, default=None, help=f"max q*n symbol evaluations (env {BUDGET_ENV})")

    v = sub.add_parser("verify", help="enumerate a code and compare with its closed form")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--e", type=int, required=True)
    v.add_argument("--alpha", type=int, required=True)
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--a", type=int, default=0, help="index of a in the GF(p^t) order")
    v.add_argument("--allow-nonpaper", action="store_true", help="brute-force only outside the hypotheses")
    common(v)
    run_opts(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="re-render a saved JSON report")
    r.add_argument("file")
    common(r)
    r.set_defaults(func=cmd_report)

    s = sub.add_parser("sums", help="evaluate one character sum, brute force and closed form")
    s.add_argument("name", choices=SUM_NAMES)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--e", type=int)
    s.add_argument("--alpha", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--k", type=int, help="subfield degree for gauss")
    s.add_argument("--a", type=int, default=1, help="index of a in its field order")
    s.add_argument("--b", type=int, default=1, help="index of b in its field order")
    s.add_argument("--u", type=int, default=0, help="symbol u in GF(p)")
    s.add_argument("--closed", action="store_true", help="fail (exit 4) if no closed form exists")
    common(s, ("text", "json"))
    s.set_defaults(func=cmd_sums)

    sc = sub.add_parser("scan", help="verify every tuple satisfying the hypotheses in a range")
    sc.add_argument("--p", default="3,5", help="primes, e.g. 3,5")
    sc.add_argument("--e", default="1-8", help="degrees, e.g. 4-8")
    sc.add_argument("--alpha", help="restrict alpha (default 1..e)")
    sc.add_argument("--t", help="restrict t")
    sc.add_argument("--a", help="a indices (default all for e/t odd, 0 for e/t even)")
    sc.add_argument("--q-max", type=int, default=5**6)
    common(sc)
    run_opts(sc)
    sc.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParameters as exc:
        print(f"invalid parameters [{exc.constraint}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedRegime as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FewWeightError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
