"""Command-line interface: ``quotdt <command> [flags]``.

Every command prints one JSON object (or CSV with ``--format csv``) and
exits 0 on success; ``verify`` exits 1 if any report fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import dt as dtmod
from .characters import tvir
from .errors import QuotDTError
from .measures import EvalPoint, LinearPoint, random_eval_point, random_linear_point, random_rational, sample_until
from .partitions import colored_from_json, enumerate_colored
from .series import dtcoh_closed, dtell_closed, dtk_closed, dtmot_closed
from .toric import chern_integral_sampled, fixture_path, global_dt, load_toric, verify_gluing

VERIFY_NAMES = ("all", "kth", "framing", "product", "coh", "cy", "lambda", "elliptic", "motivic", "gluing")


def _fraction_list(text):
    from fractions import Fraction

    try:
        return [str(Fraction(x.strip())) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}") from exc


def _add_common(p, *, order=True, p_order=False, b_order=False, seed=True, trials=False):
    if order:
        p.add_argument("--order", "--q-order", dest="order", type=int, default=None, help="q truncation order")
    if p_order:
        p.add_argument("--p-order", type=int, default=dtmod.DEFAULT_P_ORDER, help="p truncation order")
    if b_order:
        p.add_argument("--b-order", type=int, default=dtmod.DEFAULT_B_ORDER, help="b truncation order")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="RNG seed for sampled points")
    if trials:
        p.add_argument("--trials", type=int, default=3, help="number of sampled points per identity")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quotdt", description="Exact higher-rank DT series of affine 3-space.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list r-colored plane partitions of size n")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true", help="print only the number of partitions")
    _add_common(p, order=False, seed=False)

    p = sub.add_parser("tvir", help="virtual tangent character of a colored partition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="JSON file with a colored partition literal")
    src.add_argument("--partition", help="inline colored partition literal, e.g. '[[[0,0,0]],[]]'")
    p.add_argument("--lambda", dest="lam", help="JSON list of r integer exponent triples")
    _add_common(p, order=False, seed=False)

    p = sub.add_parser("dtk", help="K-theoretic series at a point")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--point", help="JSON file with an evaluation point (default: seeded random)")
    p.add_argument("--method", choices=("localization", "closed"), default="localization")
    _add_common(p)

    p = sub.add_parser("dtcoh", help="cohomological series at a point")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=_fraction_list, help="s1,s2,s3 (use --s=-1,2,3 for a leading minus)")
    p.add_argument("--v", type=_fraction_list, help="v1,...,vr")
    p.add_argument("--point", help="JSON file with a linear point")
    p.add_argument("--method", choices=("localization", "closed"), default="localization")
    _add_common(p)

    p = sub.add_parser("dtell", help="elliptic series (coefficients are p-series)")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, help="restrict to (t1 t2 t3)^(1/2) = exp(pi i k / r)")
    p.add_argument("--point", help="JSON file with an evaluation point")
    p.add_argument("--method", choices=("localization", "closed"), default="localization")
    _add_common(p, p_order=True)

    p = sub.add_parser("dtmot", help="motivic series, coefficients in L^(1/2)")
    p.add_argument("--r", type=int, default=1)
    _add_common(p, seed=False)

    p = sub.add_parser("toric", help="global series of a toric 3-fold")
    p.add_argument("--input", required=True, help="toric JSON file, or one of: p3, p3_twisted, p1cubed")
    p.add_argument("--r", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("name", choices=VERIFY_NAMES)
    p.add_argument("--r", type=int, help="restrict to one rank")
    p.add_argument("--k", type=int, help="elliptic restriction parameter (with --r)")
    p.add_argument("--input", help="toric file for 'gluing' (default: bundled p3 and p1cubed)")
    _add_common(p, p_order=True, trials=True)
    return ap


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(out, payload, fmt):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "reports" in payload:
        w.writerow(["identity", "passed", "trials", "seed"])
        for rep in payload["reports"]:
            w.writerow([rep["identity"], rep["passed"], rep["trials"], rep["seed"]])
    elif "items" in payload:
        w.writerow(["index", "value"])
        for i, item in enumerate(payload["items"]):
            w.writerow([i, json.dumps(item)])
    else:
        w.writerow(["degree", "coefficient"])
        for i, c in enumerate(payload.get("coefficients", [])):
            w.writerow([i, c if isinstance(c, str) else json.dumps(c)])
    out.write(buf.getvalue())


def _payload(command, params, coefficients=None, report=None, **extra):
    out = {"command": command, "params": params}
    if coefficients is not None:
        out["coefficients"] = coefficients
    if report is not None:
        out["report"] = report
    out.update(extra)
    return out


def _order(args, default):
    return default if args.order is None else args.order


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_enumerate(args, out):
    parts = list(enumerate_colored(args.r, args.n))
    if args.count_only:
        out.write(f"{len(parts)}\n")
        return 0
    params = {"r": args.r, "n": args.n}
    _emit(out, _payload("enumerate", params, count=len(parts), items=[p.to_json() for p in parts]), args.format)
    return 0


def cmd_tvir(args, out):
    literal = _read_json(args.input) if args.input else json.loads(args.partition)
    P = colored_from_json(literal)
    lam = json.loads(args.lam) if args.lam else None
    T = tvir(P, lam)
    params = {"partition": P.to_json(), "lambda": lam}
    payload = _payload("tvir", params, rank=T.rank, character=T.dump())
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["texp", "wexp", "mult"])
        for e in T.dump():
            w.writerow([" ".join(map(str, e["texp"])), " ".join(map(str, e["wexp"])), e["mult"]])
        out.write(buf.getvalue())
    else:
        _emit(out, payload, "json")
    return 0


def _eval_point(args, order):
    if args.point:
        return EvalPoint.from_json(_read_json(args.point))
    rng = random.Random(args.seed)
    pt, _ = sample_until(lambda: random_eval_point(args.r, rng), lambda p: dtmod.dtk_localization(args.r, order, p))
    return pt


def cmd_dtk(args, out):
    order = _order(args, dtmod.DEFAULT_Q_ORDER)
    pt = _eval_point(args, order)
    if args.method == "closed":
        series = dtk_closed(args.r, pt, order)
    else:
        series = dtmod.dtk_localization(args.r, order, pt)
    params = {"r": args.r, "order": order, "method": args.method, "seed": args.seed, "point": pt.to_json()}
    _emit(out, _payload("dtk", params, dtmod.series_to_strings(series)), args.format)
    return 0


def cmd_dtcoh(args, out):
    order = _order(args, dtmod.DEFAULT_Q_ORDER)
    if args.point:
        pt = LinearPoint.from_json(_read_json(args.point))
    else:
        rng = random.Random(args.seed)
        if args.s is not None:
            if len(args.s) != 3:
                raise QuotDTError("--s needs exactly three values")
            if args.v is not None:
                pt = LinearPoint(tuple(args.s), tuple(args.v))
            else:
                pt, _ = sample_until(
                    lambda: LinearPoint(tuple(args.s), tuple(random_rational(rng) for _ in range(args.r))),
                    lambda p: dtmod.dtcoh_localization(args.r, order, p),
                )
        else:
            pt, _ = sample_until(lambda: random_linear_point(args.r, rng), lambda p: dtmod.dtcoh_localization(args.r, order, p))
    if args.method == "closed":
        series = dtcoh_closed(args.r, pt, order)
    else:
        series = dtmod.dtcoh_localization(args.r, order, pt)
    params = {"r": args.r, "order": order, "method": args.method, "seed": args.seed, "point": pt.to_json()}
    _emit(out, _payload("dtcoh", params, dtmod.series_to_strings(series)), args.format)
    return 0


def cmd_dtell(args, out):
    order = _order(args, dtmod.DEFAULT_ELL_Q_ORDER)
    params = {"r": args.r, "order": order, "p_order": args.p_order, "method": args.method, "seed": args.seed}
    if args.method == "closed":
        if args.k is None:
            raise QuotDTError("the closed form needs --k")
        params["k"] = args.k
        series = dtell_closed(args.r, args.k, order)
        _emit(out, _payload("dtell", params, dtmod.series_to_strings(series)), args.format)
        return 0
    if args.point:
        pt = EvalPoint.from_json(_read_json(args.point))
    else:
        rng = random.Random(args.seed)
        if args.k is not None:
            params["k"] = args.k
            make = lambda: dtmod.restriction_point(args.r, args.k, rng)
        else:
            make = lambda: random_eval_point(args.r, rng)
        pt, _ = sample_until(make, lambda p: dtmod.dtk_localization(args.r, order, p))
    series = dtmod.dtell_localization(args.r, order, args.p_order, pt)
    params["point"] = pt.to_json()
    coeffs = [[str(c) for c in coeff.coeffs] for coeff in series.coeffs]
    _emit(out, _payload("dtell", params, coeffs), args.format)
    return 0


def cmd_dtmot(args, out):
    order = _order(args, dtmod.DEFAULT_Q_ORDER)
    series = dtmot_closed(args.r, order)
    coeffs = [{str(k): str(v) for k, v in sorted(c.terms.items())} for c in series.coeffs]
    params = {"r": args.r, "order": order, "exponent_encoding": "doubled powers of L^(1/2)"}
    _emit(out, _payload("dtmot", params, coeffs), args.format)
    return 0


def _toric_source(name):
    if name in ("p3", "p3_twisted", "p1cubed"):
        return fixture_path(name)
    return name


def cmd_toric(args, out):
    order = _order(args, dtmod.DEFAULT_Q_ORDER)
    data = load_toric(_toric_source(args.input))
    integral = chern_integral_sampled(data, args.seed)
    series = global_dt(data, args.r, order, args.seed)
    params = {"input": str(args.input), "r": args.r, "order": order, "seed": args.seed, "charts": len(data.charts)}
    _emit(out, _payload("toric", params, dtmod.series_to_strings(series), chern_integral=integral), args.format)
    return 0


def _verify_jobs(args):
    order = args.order
    q4 = dtmod.DEFAULT_Q_ORDER if order is None else order
    q3 = dtmod.DEFAULT_ELL_Q_ORDER if order is None else min(order, dtmod.DEFAULT_ELL_Q_ORDER)
    qt = 3 if order is None else min(order, 3)
    tr, sd = args.trials, args.seed
    ranks = (args.r,) if args.r else None
    jobs = []

    def want(name):
        return args.name in ("all", name)

    if want("kth"):
        jobs += [lambda r=r: dtmod.verify_kth_closed(r, q4, tr, sd) for r in ranks or (1, 2, 3)]
    if want("framing"):
        jobs += [lambda r=r: dtmod.verify_framing_independence(r, q4, tr, sd) for r in ranks or (2, 3)]
    if want("product"):
        jobs += [lambda r=r: dtmod.verify_product_formula(r, q4, tr, sd) for r in ranks or (2, 3)]
    if want("coh"):
        jobs += [lambda r=r: dtmod.verify_coh_closed(r, q4, tr, sd) for r in ranks or (1, 2, 3)]
    if want("cy"):
        jobs += [lambda r=r: dtmod.verify_cy_specialization(r, q4, tr, sd) for r in ranks or (1, 2, 3)]
    if want("lambda"):
        jobs += [lambda r=r: dtmod.verify_lambda_independence(r, q4, tr, sd) for r in ranks or (1, 2, 3)]
    if want("elliptic"):
        if args.r and args.k is not None:
            pairs = ((args.r, args.k),)
        else:
            pairs = ((2, 1), (2, 2), (3, 3))
        jobs += [lambda rk=rk: dtmod.verify_elliptic_restriction(rk[0], rk[1], q3, args.p_order, tr, sd) for rk in pairs]
    if want("motivic"):
        jobs += [lambda r=r: dtmod.verify_motivic_factorization(r, q4) for r in ranks or (1, 2, 3)]
    if want("gluing"):
        if args.input:
            sources = [(args.input, _toric_source(args.input))]
        else:
            sources = [("p3", fixture_path("p3")), ("p1cubed", fixture_path("p1cubed"))]
        for label, src in sources:
            data = load_toric(src)
            fr = data.framing_rank
            for r in ranks or ((fr,) if fr else (1, 2)):
                jobs.append(lambda data=data, r=r, label=label: verify_gluing(data, r, qt, tr, sd, label))
    return jobs


def cmd_verify(args, out):
    reports = [job().to_dict() for job in _verify_jobs(args)]
    ok = bool(reports) and all(r["passed"] for r in reports)
    params = {"name": args.name, "order": args.order, "p_order": args.p_order, "trials": args.trials, "seed": args.seed, "r": args.r}
    payload = _payload("verify", params, passed=ok, reports=reports)
    if len(reports) == 1:
        payload["report"] = reports[0]
    _emit(out, payload, args.format)
    return 0 if ok else 1


COMMANDS = {
    "enumerate": cmd_enumerate,
    "tvir": cmd_tvir,
    "dtk": cmd_dtk,
    "dtcoh": cmd_dtcoh,
    "dtell": cmd_dtell,
    "dtmot": cmd_dtmot,
    "toric": cmd_toric,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (QuotDTError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"quotdt {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
