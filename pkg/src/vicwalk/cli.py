"""Command-line front end.

Exit status: 0 when the command ran and any identity it checks holds,
1 when an identity check fails or a statistical tolerance is exceeded,
2 for usage errors and out-of-budget parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import enumeration, operators, series
from .lattice import EMPTY, Configuration, WeylLattice, YoungDiagram, YoungGraph, ground_state
from .rmt import asymptotics, kernels, moments
from .rmt.haar import DEFAULT_SEED

SIGMAS = 4.0

# Upper bounds on user parameters; anything larger is refused with exit 2.
BUDGET = {
    "d": 6,
    "N": 40,
    "q": 300,
    "n": 9,
    "order": 30,
    "samples": 5_000_000,
    "trials": 100_000,
    "workers": 64,
}

# longest walk 2n + dq allowed on the exact side of asymp ratio, by d
ASYMP_STEPS = {1: 650, 2: 300, 3: 120, 4: 72, 5: 48, 6: 40}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.replace(" ", "").split(","))


def _int_list(text: str) -> list[int]:
    return list(_ints(text))


def _matrix(text: str) -> list[list[int]]:
    return [list(_ints(row)) for row in text.split(";")]


def _check_budget(args):
    for key, limit in BUDGET.items():
        value = getattr(args, key, None)
        if value is None:
            continue
        values = value if isinstance(value, list) else [value]
        for v in values:
            if v < 0 or v > limit:
                raise UsageError(f"--{key}={v} outside the allowed range [0, {limit}]")
    if getattr(args, "d", None) == 0:
        raise UsageError("--d must be >= 1")
    for key in ("qs",):
        for v in getattr(args, key, None) or []:
            if v < 1 or v > BUDGET["q"]:
                raise UsageError(f"--{key} entry {v} outside [1, {BUDGET['q']}]")


def _series_table(s: series.RationalSeries) -> list[dict]:
    return [{"k": k, "num": str(c.numerator), "den": str(c.denominator)} for k, c in enumerate(s.coefficients)]


# Each handler returns (result, verdict, table) where verdict is None for
# plain computations and table is the CSV-able rows (or None).


def _exact_z(a):
    if a.mu or a.lam:
        mu = Configuration(_ints(a.mu)) if a.mu else ground_state(a.d)
        lam = Configuration(_ints(a.lam)) if a.lam else ground_state(a.d)
        value = enumeration.z_count(enumeration.WalkCountQuery(a.d, a.N, mu, lam))
    else:
        value = enumeration.z_ground(enumeration.GroundStateQuery(a.d, a.N, a.q))
    return {"value": str(value)}, None, None


def _exact_refined(a):
    word = operators.StepWord.parse(a.word)
    if a.graph == "young":
        graph = YoungGraph(a.d)
        src = YoungDiagram(_ints(a.source)) if a.source else EMPTY
        dst = YoungDiagram(_ints(a.target)) if a.target else EMPTY
    else:
        graph = WeylLattice(a.d)
        src = Configuration(_ints(a.source)) if a.source else ground_state(a.d)
        dst = Configuration(_ints(a.target)) if a.target else ground_state(a.d)
    value = operators.refined_count(word, src, dst, graph)
    return {"value": str(value), "word": str(word)}, None, None


def _exact_udn(a):
    return {"value": str(enumeration.u_count(a.d, a.n))}, None, None


def _exact_syt(a):
    return {"value": str(enumeration.syt_count(YoungDiagram(_ints(a.shape))))}, None, None


def _series_gd(a):
    s = series.gd_from_counts(a.d, a.q, a.order)
    return s.to_json(), None, _series_table(s)


def _series_det(a):
    offsets = _matrix(a.offsets) if a.offsets else series.toeplitz_offsets(a.d, a.q)
    s = series.toeplitz_bessel_det(offsets, a.order)
    return {"offsets": offsets, **s.to_json()}, None, _series_table(s)


def _report(rep):
    return rep.to_json(), rep.holds, rep.rows


def _check_toeplitz(a):
    return _report(series.theorem2_report(a.d, a.q, a.order))


def _check_forrester(a):
    return _report(enumeration.forrester_check(a.d, a.n))


def _check_gessel(a):
    return _report(series.gessel_report(a.d, a.order))


def _check_commute(a):
    return _report(operators.commutation_report(a.d, a.trials, a.reorders, a.seed))


def _check_determinantal(a):
    rep = series.determinantal_report(a.d, Configuration(_ints(a.mu)), Configuration(_ints(a.lam)), a.order)
    return _report(rep)


def _check_rsk(a):
    return _report(enumeration.rsk_chain_check(a.d, a.n, a.q))


def _mc_moments(a):
    rep = moments.moment_check(a.d, a.q, a.n, a.samples, a.seed, a.workers, SIGMAS)
    return _report(rep)[:2] + (None,)


def _mc_weiwettig(a):
    res = moments.weiwettig_check(a.d, a.q, a.x, a.samples, a.seed, a.workers, SIGMAS)
    return res, res["holds"], None


def _mc_hall(a):
    lam, mu = YoungDiagram(_ints(a.lam)), YoungDiagram(_ints(a.mu))
    est = moments.hall_product_mc(lam, mu, a.d, a.samples, a.seed, a.workers)
    expected = 1.0 if lam == mu else 0.0
    ok = abs(est.mean.real - expected) <= SIGMAS * est.stderr and abs(est.mean.imag) <= SIGMAS * est.stderr_imag
    return {"estimate": est.to_json(), "expected": expected}, bool(ok), None


def _mc_gaussian(a):
    res = moments.gaussian_limit_report(a.d, a.n, a.qs, a.samples, a.seed, a.workers)
    table = [
        {"q": r["q"], "mean": r["estimate"]["mean"], "stderr": r["estimate"]["stderr"], "exact": r["exact_float"]}
        for r in res["rows"]
    ]
    return res, res["exact_deviation_shrinks"], table


def _kernel_compare(a):
    res = kernels.kernel_convergence_report(a.d, a.qs)
    return res, bool(res["strictly_decreasing"] and res["origin_exact"]), res["rows"]


def _density_check(a):
    res = kernels.density_check(a.q, a.samples, a.seed)
    return res, res["ks_distance"] < a.ks_tol, None


def _asymp_ratio(a):
    steps = 2 * a.n + a.d * a.q
    limit = ASYMP_STEPS[a.d]
    if steps > limit:
        raise UsageError(f"2n + dq = {steps} exceeds the enumeration budget {limit} for d = {a.d}")
    res = asymptotics.asymptotic_ratio(a.d, a.n, a.q)
    return res, None, None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vicwalk", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group_parser, name, handler, *flags, csv_ok=False):
        p = group_parser.add_parser(name)
        p.set_defaults(handler=handler, csv_ok=csv_ok)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None)
        for flag in flags:
            flag(p)
        return p

    def d(p, default=2):
        p.add_argument("--d", type=int, default=default)

    def q(p, default=0):
        p.add_argument("--q", type=int, default=default)

    def n(p, default=1):
        p.add_argument("--n", type=int, default=default)

    def order(p):
        p.add_argument("--order", type=int, default=10)

    def mc(p, samples=100_000):
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--workers", type=int, default=1)

    def sub(name):
        return groups.add_parser(name).add_subparsers(dest="command", required=True, parser_class=_Parser)

    exact = sub("exact")
    command(exact, "z", _exact_z, d, q, lambda p: p.add_argument("--N", type=int, required=True),
            lambda p: p.add_argument("--mu", default=""), lambda p: p.add_argument("--lam", default=""))
    command(exact, "refined", _exact_refined, d,
            lambda p: p.add_argument("--word", required=True),
            lambda p: p.add_argument("--graph", choices=["weyl", "young"], default="weyl"),
            lambda p: p.add_argument("--source", default=""),
            lambda p: p.add_argument("--target", default=""))
    command(exact, "udn", _exact_udn, d, n)
    command(exact, "syt", _exact_syt, lambda p: p.add_argument("--shape", required=True))

    ser = sub("series")
    command(ser, "gd", _series_gd, d, q, order, csv_ok=True)
    command(ser, "det", _series_det, d, q, order, lambda p: p.add_argument("--offsets", default=""), csv_ok=True)

    chk = sub("check")
    command(chk, "toeplitz", _check_toeplitz, d, q, order, csv_ok=True)
    command(chk, "forrester", _check_forrester, d, n)
    command(chk, "gessel", _check_gessel, d, order, csv_ok=True)
    command(chk, "commute", _check_commute, d,
            lambda p: p.add_argument("--trials", type=int, default=1000),
            lambda p: p.add_argument("--reorders", type=int, default=200),
            lambda p: p.add_argument("--seed", type=int, default=DEFAULT_SEED))
    command(chk, "determinantal", _check_determinantal, d, order,
            lambda p: p.add_argument("--mu", required=True), lambda p: p.add_argument("--lam", required=True))
    command(chk, "rsk-chain", _check_rsk, d, n, q)

    mcg = sub("mc")
    command(mcg, "moments", _mc_moments, d, lambda p: q(p, 1), n, mc)
    command(mcg, "weiwettig", _mc_weiwettig, d, lambda p: q(p, 1), mc,
            lambda p: p.add_argument("--x", type=float, default=0.3))
    command(mcg, "hall", _mc_hall, d, mc,
            lambda p: p.add_argument("--lam", default="1"), lambda p: p.add_argument("--mu", default="1"))
    command(mcg, "gaussian-limit", _mc_gaussian, d, n, mc,
            lambda p: p.add_argument("--qs", type=_int_list, default=[4, 16, 64]), csv_ok=True)

    command(sub("kernel"), "compare", _kernel_compare, d,
            lambda p: p.add_argument("--qs", type=_int_list, default=[16, 64, 256]), csv_ok=True)
    command(sub("density"), "check", _density_check, lambda p: q(p, 1), mc,
            lambda p: p.add_argument("--ks-tol", type=float, default=0.01))
    command(sub("asymp"), "ratio", _asymp_ratio, lambda p: d(p, 1), n, lambda p: q(p, 200))
    return parser


def _to_csv(table: list[dict]) -> str:
    buf = io.StringIO()
    if table:
        writer = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _check_budget(args)
        if args.format == "csv" and not args.csv_ok:
            raise UsageError("csv output is only offered for coefficient tables and q-sweeps")
        config = {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "csv_ok")}
        result, verdict, table = args.handler(args)
    except UsageError as exc:
        print(f"vicwalk: error: {exc}", file=stderr)
        return 2
    except ValueError as exc:
        print(f"vicwalk: error: {exc}", file=stderr)
        return 2

    command = f"{args.group} {args.command}"
    if args.format == "csv":
        text = _to_csv(table or [])
    else:
        doc = {"command": command, "config": config, "result": result}
        if verdict is not None:
            doc["verdict"] = bool(verdict)
        text = json.dumps(doc, indent=2, default=_jsonable) + "\n"

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 1 if verdict is False else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
