"""Command-line interface: ``bohrlab {radius,sweep,certify,sharpness,falsify,report}``.

Exit codes: 0 all checks pass, 1 usage error, 2 computation error,
3 certificate / sharpness / falsification finding or catalog inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import __version__
from .errors import (
    ArgumentError,
    BohrLabError,
    CatalogError,
    CatalogInconsistencyError,
    NotAvailableError,
    ParameterDomainError,
    UsageError,
)
from .figures import certify_all
from .radii import SHARP, Theorem, _USES, cross_check_T32, make_problem, solve_radius, theorem_h_radius
from .witnesses import falsify, phase_sweep, sharpness_probe

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_FINDING = 0, 1, 2, 3
DEFAULT_TOL = 1e-8
CSV_HEADER = ["theorem", "K", "alpha", "mu", "N", "radius", "lo", "hi", "cert"]
DEFAULT_GRIDS = {
    "K": [1, 1.25, 1.5, 2, 3, 5, 10, 100],
    "alpha": [1, 1.25, 1.5, 1.75, 2],
    "mu": [0, 0.5, 1, 2],
    "N": [1],
}

NOTES = {
    Theorem.ThmH: "radius uses the quotient (2^(1/a)-1)/(2^(1/a)+1); the printed product form is not a "
    "radius (see --verbatim)",
    Theorem.T32: "solved with the polynomial assembled from the proof's G2(1,r); see `report` for the "
    "comparison with the statement's quartic",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _g(x) -> str:
    return "" if x is None else format(float(x), ".15g")


def _tol_default() -> float:
    env = os.environ.get("BOHRLAB_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        tol = float(env)
    except ValueError:
        raise UsageError(f"BOHRLAB_TOL={env!r} is not a number") from None
    if not tol > 0:
        raise UsageError(f"BOHRLAB_TOL must be positive, got {env!r}")
    return tol


def _float_list(text: str) -> list:
    items = [s for s in text.split(",") if s.strip()]
    try:
        return [float(s) for s in items]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None


# -- output -----------------------------------------------------------------------


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _require_format(args, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"{args.command} does not support --format {args.format} (choose from {', '.join(allowed)})")


# -- radius -----------------------------------------------------------------------


def _problem_from_args(args, **override):
    params = dict(K=args.K, alpha=args.alpha, mu=args.mu, N=args.N, a0=args.a0, variant=args.variant)
    params.update(override)
    return make_problem(args.theorem, **params)


def certificate_record(problem, root) -> dict:
    """Serialized certificate: theorem, params, poly?, interval, estimate, certificate, residual."""
    rec = {"theorem": problem.theorem.value, "params": problem.params()}
    rec.update(root.to_dict())
    if problem.theorem in NOTES:
        rec["note"] = NOTES[problem.theorem]
    return rec


def _csv_row(problem, root=None, error: Optional[str] = None) -> list:
    p = problem.params() if problem is not None else {}
    row = [
        problem.theorem.value if problem is not None else "",
        _g(p.get("K", 1.0)),
        _g(p.get("alpha")),
        _g(p.get("mu")),
        "" if p.get("N") is None else str(p["N"]),
    ]
    if root is None:
        return row + ["", "", "", f"error:{error}"]
    return row + [_g(root.estimate), _g(root.lo), _g(root.hi), root.certificate.value]


def cmd_radius(args) -> int:
    _require_format(args, ("text", "json", "csv"))
    problem = _problem_from_args(args)
    if args.verbatim and problem.theorem is Theorem.ThmH:
        theorem_h_radius(problem.alpha, verbatim=True)
    root = solve_radius(problem, tol=args.tol)
    if args.format == "json":
        _emit(args, _json(certificate_record(problem, root)))
    elif args.format == "csv":
        _emit(args, _csv([_csv_row(problem, root)], CSV_HEADER))
    else:
        lines = [
            f"{problem.label()}: radius = {root.estimate:.15g}",
            f"  interval    [{float(root.lo):.15g}, {float(root.hi):.15g}]  width {root.width:.3g}",
            f"  certificate {root.certificate.value}" + (f" (count {root.count})" if root.count is not None else ""),
            f"  residual    {root.residual:.3g}",
        ]
        if root.polynomial is not None:
            lines.append(f"  polynomial  {root.polynomial}")
        if problem.theorem in NOTES:
            lines.append(f"  note        {NOTES[problem.theorem]}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- sweep ------------------------------------------------------------------------


def _sweep_point(job):
    theorem, params, tol = job
    try:
        problem = make_problem(theorem, **params)
    except BohrLabError as exc:
        return None, None, type(exc).__name__, params
    try:
        return problem, solve_radius(problem, tol=tol), None, params
    except BohrLabError as exc:
        return problem, None, type(exc).__name__, params


def _grid(args) -> list:
    thm = Theorem.parse(args.theorem)
    uses = _USES[thm]
    axes = {}
    for name, flag in (("K", args.K_grid), ("alpha", args.alpha_grid), ("mu", args.mu_grid), ("N", args.N_grid)):
        if name not in uses:
            continue
        values = DEFAULT_GRIDS[name] if flag is None else _float_list(flag)
        if not values:
            raise UsageError(f"empty grid for {name}")
        if name == "N":
            values = [int(v) if float(v).is_integer() else v for v in values]
        axes[name] = values
    names = list(axes)
    points = [dict(zip(names, combo)) for combo in itertools.product(*(axes[n] for n in names))]
    valid = [p for p in points if _in_domain(p)]
    if not valid:
        raise UsageError("parameter grid has no point inside the theorem's domain")
    return points


def _in_domain(p: dict) -> bool:
    return (
        p.get("K", 1) >= 1
        and 1 <= p.get("alpha", 1) <= 2
        and p.get("mu", 0) >= 0
        and (float(p.get("N", 1)).is_integer() and p.get("N", 1) >= 1)
    )


def _svg(rows: list, axis: str, theorem: str) -> str:
    pts = [(float(p[axis]), root.estimate) for prob, root, err, p in rows if root is not None]
    W, H, L, R, T, B = 640, 400, 70, 20, 30, 50
    xs = [x for x, _ in pts] or [0.0, 1.0]
    ys = [y for _, y in pts] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.05, y1 + 0.05

    def sx(x):
        return L + (x - x0) / (x1 - x0) * (W - L - R)

    def sy(y):
        return H - B - (y - y0) / (y1 - y0) * (H - T - B)

    poly = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
            f'<text x="{W / 2:.0f}" y="18" text-anchor="middle" font-size="14">{theorem}: radius vs {axis}</text>',
            f'<line x1="{L}" y1="{H - B}" x2="{W - R}" y2="{H - B}" stroke="black"/>',
            f'<line x1="{L}" y1="{T}" x2="{L}" y2="{H - B}" stroke="black"/>',
            f'<text x="{L}" y="{H - B + 18}" font-size="11" text-anchor="middle">{_g(x0)}</text>',
            f'<text x="{W - R}" y="{H - B + 18}" font-size="11" text-anchor="middle">{_g(x1)}</text>',
            f'<text x="{L - 6}" y="{H - B}" font-size="11" text-anchor="end">{y0:.6g}</text>',
            f'<text x="{L - 6}" y="{T + 4}" font-size="11" text-anchor="end">{y1:.6g}</text>',
            f'<text x="{(L + W - R) / 2:.0f}" y="{H - 12}" font-size="12" text-anchor="middle">{axis}</text>',
            f'<text x="16" y="{(T + H - B) / 2:.0f}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {(T + H - B) / 2:.0f})">radius</text>',
            f'<polyline fill="none" stroke="steelblue" stroke-width="2" points="{poly}"/>',
            "</svg>",
            "",
        ]
    )


def cmd_sweep(args) -> int:
    points = _grid(args)
    jobs = [(args.theorem, p, args.tol) for p in points]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    failed = [r for r in rows if r[1] is None]

    if args.format == "csv":
        out = []
        for problem, root, err, params in rows:
            if problem is None:
                out.append([Theorem.parse(args.theorem).value, _g(params.get("K", 1.0)), _g(params.get("alpha")),
                            _g(params.get("mu")), params.get("N", ""), "", "", "", f"error:{err}"])
            else:
                out.append(_csv_row(problem, root, err))
        _emit(args, _csv(out, CSV_HEADER))
    elif args.format == "json":
        recs = []
        for problem, root, err, params in rows:
            rec = {"theorem": Theorem.parse(args.theorem).value, "params": params}
            if root is not None:
                rec.update(radius=root.estimate, interval=[str(root.lo), str(root.hi)], width=root.width,
                           certificate=root.certificate.value)
            else:
                rec["error"] = err
            recs.append(rec)
        _emit(args, _json(recs))
    elif args.format == "svg":
        varying = [n for n in ("K", "alpha", "mu", "N") if len({r[3].get(n) for r in rows}) > 1]
        axis = varying[0] if varying else next(iter(rows[0][3]), "K")
        _emit(args, _svg(rows, axis, Theorem.parse(args.theorem).value))
    else:
        lines = []
        for problem, root, err, params in rows:
            label = ", ".join(f"{k}={v}" for k, v in params.items())
            if root is None:
                lines.append(f"{label}: error {err}")
            else:
                lines.append(f"{label}: radius {root.estimate:.15g} (width {root.width:.3g})")
        _emit(args, "\n".join(lines) + "\n")
    if failed:
        inconsistent = any(err == "CatalogInconsistencyError" for _, _, err, _ in failed)
        print(f"{len(failed)} grid point(s) failed", file=sys.stderr)
        return EXIT_FINDING if inconsistent else EXIT_COMPUTE
    return EXIT_OK


# -- certify ----------------------------------------------------------------------


def cmd_certify(args) -> int:
    _require_format(args, ("text", "json", "csv"))
    grid = None
    if args.k_grid is not None:
        grid = _float_list(args.k_grid)
        if not grid or not all(0 <= k < 1 for k in grid):
            raise UsageError("--k-grid needs values in [0, 1)")
    certs = certify_all(grid)
    if args.format == "json":
        _emit(args, _json([c.to_dict() for c in certs]))
    elif args.format == "csv":
        _emit(args, _csv([[c.name, c.claim, "pass" if c.passed else "fail"] for c in certs], ["name", "claim", "result"]))
    else:
        _emit(args, "".join(f"{c.name} {'PASS' if c.passed else 'FAIL'}  {c.claim}\n" for c in certs))
    return EXIT_OK if all(c.passed for c in certs) else EXIT_FINDING


# -- sharpness / falsify ----------------------------------------------------------


def _probe_kwargs(args) -> dict:
    return dict(K=args.K, alpha=args.alpha, mu=args.mu, N=args.N, delta=args.delta, M=args.M, tol=args.tol)


def cmd_sharpness(args) -> int:
    _require_format(args, ("text", "json", "csv"))
    Theorem.parse(args.theorem)
    if args.phase_sweep:
        reports = phase_sweep(args.theorem, args.phase_sweep, **_probe_kwargs(args))
    else:
        reports = [sharpness_probe(args.theorem, **_probe_kwargs(args))]
    if args.format == "json":
        _emit(args, _json([r.to_dict() for r in reports] if args.phase_sweep else reports[0].to_dict()))
    elif args.format == "csv":
        header = ["theorem", "K", "alpha", "mu", "N", "r0", "r_below", "verdict_below", "r_above", "verdict_above",
                  "transition"]
        rows = [
            [r.theorem, _g(r.params.get("K", 1.0)), _g(r.params.get("alpha")), _g(r.params.get("mu")),
             r.params.get("N", ""), _g(r.r0), _g(r.r_below), r.verdict_below, _g(r.r_above), r.verdict_above,
             "" if r.transition is None else str(r.transition).lower()]
            for r in reports
        ]
        _emit(args, _csv(rows, header))
    else:
        lines = []
        for r in reports:
            lines.append(f"{r.theorem} {r.params}: r0 = {r.r0:.15g}")
            lines.append(f"  {r.verdict_below}@{r.r_below:.6g} (value {r.value_below:.10g}, bound {r.bound:.10g})")
            lines.append(f"  {r.verdict_above}@{r.r_above:.6g} (value {r.value_above:.10g})")
            if r.sharp:
                lines.append(f"  transition at r0: {'yes' if r.transition else 'NO'}")
            else:
                lines.append("  no sharpness claim; one-sided result only")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FINDING


def cmd_falsify(args) -> int:
    _require_format(args, ("text", "json", "csv"))
    Theorem.parse(args.theorem)
    rep = falsify(
        args.theorem,
        trials=args.trials,
        r_fraction=args.r_fraction,
        seed=args.seed,
        K=args.K,
        alpha=args.alpha,
        mu=args.mu,
        N=args.N,
        M=args.M if args.M is not None else 200,
        jobs=args.jobs,
        tol=args.tol,
    )
    if args.format == "json":
        _emit(args, rep.to_json() + "\n")
    elif args.format == "csv":
        _emit(args, rep.to_csv())
    else:
        c = rep.counts
        _emit(
            args,
            f"{rep.theorem} {rep.params}: {rep.trials} trials at r = {rep.r:.10g} "
            f"({rep.r_fraction} * r0), seed {rep.seed}, M={rep.M}\n"
            f"  holds={c['holds']} fails={c['fails']} inconclusive={c['inconclusive']}\n",
        )
    if rep.findings:
        print(f"finding: {len(rep.findings)} sampled pair(s) violate {rep.theorem}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


# -- report -----------------------------------------------------------------------

REPORT_CASES = [
    ("ThmA", {"N": 1}), ("ThmA", {"N": 2}), ("ThmB", {"a0": 0}), ("ThmC", {}), ("ThmD", {"K": 1}),
    ("ThmD", {"K": 2}), ("ThmE", {}), ("ThmF", {}), ("ThmG", {}), ("ThmH", {"alpha": 1}),
    ("ThmH", {"alpha": 2}), ("ThmI", {"alpha": 1.5, "N": 2}), ("T31", {"K": 1}), ("T31", {"K": 2}),
    ("T32", {"K": 1}), ("T32", {"K": 3}), ("T41", {"K": 1, "mu": 0}), ("T41", {"K": 1, "mu": 1}),
    ("T41R", {"K": 1, "mu": 1}), ("T42", {"K": 1, "mu": 0}), ("T42", {"K": 1, "mu": 1}), ("T43", {"K": 1}),
    ("T44", {"K": 1}), ("T51", {"K": 1, "alpha": 1}), ("T51", {"K": 1, "alpha": 2}),
    ("T52", {"K": 1, "alpha": 1}),
]


def build_report(tol: float) -> dict:
    radii = []
    for name, params in REPORT_CASES:
        problem = make_problem(name, **params)
        try:
            rec = certificate_record(problem, solve_radius(problem, tol=tol))
        except CatalogInconsistencyError as exc:
            rec = {"theorem": problem.theorem.value, "params": problem.params(), "error": str(exc)}
        rec["sharp"] = problem.theorem in SHARP
        radii.append(rec)
    return {
        "version": __version__,
        "tol": tol,
        "radii": radii,
        "certificates": [c.to_dict() for c in certify_all()],
        "t32_cross_check": [cross_check_T32(K, tol) for K in (1, 3)],
    }


def cmd_report(args) -> int:
    _require_format(args, ("text", "json"))
    rep = build_report(args.tol)
    if args.format == "json":
        _emit(args, _json(rep))
    else:
        lines = ["radii:"]
        for rec in rep["radii"]:
            val = f"{rec['estimate']:.12g}" if "estimate" in rec else f"ERROR {rec['error']}"
            lines.append(f"  {rec['theorem']:5s} {json.dumps(rec['params'], sort_keys=True):40s} {val}")
        lines.append("certificates:")
        lines += [f"  {c['name']} {'PASS' if c['passed'] else 'FAIL'}  {c['claim']}" for c in rep["certificates"]]
        lines.append("T32 variants (no verdict on which is intended):")
        for cc in rep["t32_cross_check"]:
            for v, e in cc["variants"].items():
                root = "none" if e["root"] is None else f"{e['root']:.12g}"
                lines.append(f"  K={cc['K']} {v:9s} degree {e['degree']} count {e['sturm_count']} root {root}")
            for pair, d in cc["pairs"].items():
                gap = "n/a" if d["gap"] is None else f"{d['gap']:.3g}"
                lines.append(f"  K={cc['K']} {pair} gap {gap}")
        _emit(args, "\n".join(lines) + "\n")
    ok = all("error" not in r for r in rep["radii"]) and all(c["passed"] for c in rep["certificates"])
    return EXIT_OK if ok else EXIT_FINDING


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="root tolerance (env BOHRLAB_TOL, default 1e-8)")
    common.add_argument("--format", choices=("text", "json", "csv", "svg"), default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")

    params = _Parser(add_help=False)
    params.add_argument("--theorem", required=True, help="ThmA..ThmI, T31, T32, T41, T41R, T42..T44, T51, T52")
    params.add_argument("--K", type=float, default=1.0, help="quasiconformality constant K >= 1")
    params.add_argument("--alpha", type=float, default=None, help="concavity parameter in [1, 2]")
    params.add_argument("--mu", type=float, default=None, help="area-term weight mu >= 0")
    params.add_argument("--N", type=int, default=None, help="tail start N >= 1")
    params.add_argument("--a0", type=float, default=None, help="|a_0| for the refined radius ThmB")
    params.add_argument("--variant", default=None, help="T32 defining polynomial: proof, statement, printed")

    parser = _Parser(prog="bohrlab", description="Certified Bohr-type radii and their verification.")
    parser.add_argument("--version", action="version", version=f"bohrlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("radius", parents=[common, params], help="certified radius for one theorem")
    p.add_argument("--verbatim", action="store_true", help="request the printed ThmH product form (refused)")

    p = sub.add_parser("sweep", parents=[common], help="radius over a parameter grid")
    p.add_argument("--theorem", required=True)
    p.add_argument("--K-grid", dest="K_grid", help="comma-separated K values")
    p.add_argument("--alpha-grid", dest="alpha_grid", help="comma-separated alpha values")
    p.add_argument("--mu-grid", dest="mu_grid", help="comma-separated mu values")
    p.add_argument("--N-grid", dest="N_grid", help="comma-separated N values")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("certify", parents=[common], help="figure certificates F1-F4")
    p.add_argument("--k-grid", dest="k_grid", help="comma-separated k values in [0,1) (default 0.01..0.99)")

    p = sub.add_parser("sharpness", parents=[common, params], help="witness probe around the radius")
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("--M", type=int, default=400)
    p.add_argument("--phase-sweep", dest="phase_sweep", type=int, default=0,
                   help="repeat the probe for this many unimodular phases of the co-analytic part")

    p = sub.add_parser("falsify", parents=[common, params], help="random admissible pairs below the radius")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--r-fraction", dest="r_fraction", type=float, default=0.99)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--M", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)

    sub.add_parser("report", parents=[common], help="radii catalog, certificates and T32 comparison")
    return parser


COMMANDS = {
    "radius": cmd_radius,
    "sweep": cmd_sweep,
    "certify": cmd_certify,
    "sharpness": cmd_sharpness,
    "falsify": cmd_falsify,
    "report": cmd_report,
}

_USAGE_ERRORS = (UsageError, ParameterDomainError, CatalogError, NotAvailableError, ArgumentError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.tol is None:
            args.tol = _tol_default()
        elif not args.tol > 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        if args.format == "svg" and args.command != "sweep":
            raise UsageError("--format svg is only available for sweep")
        if hasattr(args, "theorem"):
            Theorem.parse(args.theorem)
        return COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"bohrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogInconsistencyError as exc:
        print(f"bohrlab: catalog inconsistency: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (BohrLabError, ArithmeticError) as exc:
        print(f"bohrlab: computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
