"""Command-line interface.

Subcommands: derive, verify, branch, degree, orbit, plot, molien,
conjugate.  Every run writes a machine-readable JSON report and exits
nonzero when any requested check fails, naming the first failing
identity.  All randomness flows through an explicit --seed (default 0),
so identical invocations produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, branch, dynamics, varieties
from .chebyshev import (
    cheb_endo,
    oracle_cheb_numeric,
    real_form,
    verify_equivariance,
    verify_semigroup_endo,
)
from .invariants import (
    conjugate_system,
    head_term_checks,
    induced_morphism,
    molien_series,
    syzygy_normal_form,
    verify_semigroup_induced,
)
from .reporting import Check, Report

MOLIEN_FIXTURES = {
    "D3_on_R2": [1, 0, 1, 1, 1, 1, 2, 1, 2, 2],
    "D4_on_R3": [1, 0, 2, 1, 4, 2, 6, 4, 9, 6],
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) if isinstance(x, float) else str(x) for x in row) + "\n")


def write_svg(path: str, polylines, points=(), viewbox=(-5.0, -35.0, 20.0, 70.0)) -> None:
    """Fixed-viewBox SVG with polylines and optional scatter points."""
    x0, y0, w, h = viewbox
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">'
    ]
    for pts, color in polylines:
        coords = " ".join(f"{_fmt(float(px))},{_fmt(float(-py))}" for px, py in pts)
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="{_fmt(w / 400)}" points="{coords}"/>'
        )
    if len(points):
        radius = _fmt(w / 600)
        for px, py in points:
            lines.append(
                f'<circle cx="{_fmt(float(px))}" cy="{_fmt(float(-py))}" r="{radius}" fill="#1f77b4"/>'
            )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# -- suites ---------------------------------------------------------------------

def suite_chebyshev(max_d: int, seed: int, cap: int = 16) -> list[Check]:
    import random

    checks: list[Check] = []
    for n in (2, 3):
        for d in range(1, max_d + 1):
            checks.extend(verify_equivariance(n, d))
            checks.append(
                Check(
                    f"real form integral n={n} d={d}",
                    all(c.has_integer_coefficients() for c in real_form(n, d).map.components),
                )
            )
        for j in range(1, max_d + 1):
            for k in range(1, max_d + 1):
                if j * k <= min(cap, max_d * 2):
                    checks.append(verify_semigroup_endo(n, j, k, cap=cap))
    rng = random.Random(seed)
    worst = 0.0
    for n in (2, 3):
        for d in range(1, max_d + 1):
            for _ in range(20):
                z = tuple(
                    complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)
                )
                sym = cheb_endo(n, d).map.evaluate(z)
                orc = oracle_cheb_numeric(n, d, z)
                err = max(
                    abs(a - b) / max(1.0, abs(a), abs(b)) for a, b in zip(sym, orc)
                )
                worst = max(worst, err)
    checks.append(Check("oracle agreement (20 pts per n, d)", worst < 1e-6, residual=worst))
    return checks


def suite_invariants(max_d: int, seed: int) -> list[Check]:
    checks: list[Check] = []
    for n in (2, 3):
        for d in range(1, max_d + 1):
            g = induced_morphism(n, d)
            checks.append(
                Check(
                    f"induced morphism integral n={n} d={d}",
                    all(c.has_integer_coefficients() for c in g.map.components),
                )
            )
            if n == 3:
                P, Q, R, S = g.map.components
                checks.append(
                    Check(
                        f"image contract (quadric into quadric) d={d}",
                        syzygy_normal_form(Q * S - R * R).is_zero(),
                    )
                )
        for e in range(2, max_d + 1):
            for d in range(2, max_d + 1):
                if e * d <= min(8, max_d):
                    checks.append(verify_semigroup_induced(n, e, d))
    for d in range(2, min(max_d, 8) + 1):
        checks.extend(head_term_checks(d))
    for group, expect in MOLIEN_FIXTURES.items():
        got = [int(x) for x in molien_series(group, 9)]
        checks.append(Check(f"Molien series {group} first 10", got == expect, detail=str(got)))
    return checks


def suite_varieties(max_d: int, seed: int) -> list[Check]:
    checks: list[Check] = []
    cat = varieties.catalogue()
    for entry in cat.values():
        checks.extend(varieties.verify_membership(entry, samples=50, seed=seed))
    for entry in cat.values():
        if entry.rule:
            for d in range(2, max_d + 1):
                checks.append(varieties.verify_semiconjugacy(entry, d))
            for e in range(2, max_d + 1):
                for d in range(2, max_d + 1):
                    if e * d <= min(8, max_d):
                        checks.append(varieties.verify_semigroup_on_variety(entry, e, d))
    for case in varieties.PREIMAGE_CASES:
        checks.append(varieties.verify_preimage_varieties(case, seed=seed))
    for d in range(2, max_d + 1):
        checks.extend(varieties.verify_fixed_and_preperiodic(d))
        checks.extend(varieties.verify_cone_birationality(d))
    checks.append(varieties.invariant_family(1, 1, 2))
    checks.append(varieties.invariant_family(1, 2, 3))
    checks.append(varieties.invariant_family(2, 3, 2))
    for k in range(1, 6):
        data = varieties.family_slope(k)
        expect = Fraction(5, 2) + Fraction(4, 4 * k * k - 1)
        checks.append(
            Check(f"family slope k={k}", data["slope"] == expect and data["dp"] == 2 * (2 * k) ** 2 - 2)
        )
    checks.extend(varieties.verify_surface_intersection())
    checks.extend(varieties.verify_astroid_singular_locus(seed=seed))
    return checks


def suite_branch(max_d: int, seed: int) -> list[Check]:
    return branch.branch_report_n2() + branch.branch_report_n3(seed=seed)


def suite_dynamics(max_d: int, seed: int) -> list[Check]:
    checks: list[Check] = []
    for (n, d), expect in (((2, 2), 4), ((2, 3), 9), ((3, 2), 8)):
        out = dynamics.count_generic_preimages(n, d, trials=20, seed=seed)
        checks.append(
            Check(
                f"generic preimage count ({n},{d}) = {expect}",
                out["modal"] == expect and out["agreement"] >= 0.9,
                detail=f"modal {out['modal']}, agreement {out['agreement']:.2f}",
            )
        )
    for d in (2, 3):
        out = dynamics.classify_special_points(d)
        checks.append(
            Check(
                f"special point counts d={d}",
                out["counts"] == out["expected"],
                detail=str(out["counts"]),
            )
        )
    rows = dynamics.jordan_curve_data(64)
    ends = {(round(r[2], 9), round(r[3], 9)) for r in rows if r[1] in (0.0,)} | {
        (round(r[2], 9), round(r[3], 9)) for r in rows if abs(r[1] - 3.141592653589793) < 1e-15
    }
    checks.append(Check("jordan arcs share endpoints (1,-1), (9,27)", ends == {(1.0, -1.0), (9.0, 27.0)}))
    jp = dynamics.jacobian_partition_data(21)
    checks.append(Check("parametrization Jacobian factorization", jp["symbolic_ok"]))
    for name, res in (("plane", 24), ("axis_surface", 24), ("astroid_surface", 24), ("quadric", 9)):
        data = dynamics.sample_k_set(name, res)
        ok = data["max_imag"] < 1e-9 and float(data["inequality_residuals"].min()) > -1e-9
        checks.append(Check(f"sampled bounded set {name}: real and inside inequalities", ok))
        shadow = dynamics.shadow_survival(name, res if name != "quadric" else 6)
        checks.append(
            Check(
                f"sampled bounded set {name}: no escape in 64 steps (shadowed)",
                shadow["escaped"] == 0,
                detail=f"{shadow['points']} pts, max norm {shadow['max_norm']:.1f}",
            )
        )
    return checks


SUITES = {
    "chebyshev": suite_chebyshev,
    "invariants": suite_invariants,
    "varieties": suite_varieties,
    "branch": suite_branch,
    "dynamics": suite_dynamics,
}


# -- commands ---------------------------------------------------------------------

def cmd_derive(args) -> Report:
    report = Report("derive", {"n": args.n, "d": args.d})
    endo = cheb_endo(args.n, args.d)
    f = real_form(args.n, args.d)
    g = induced_morphism(args.n, args.d)
    doc = {
        "n": args.n,
        "d": args.d,
        "endomorphism": endo.map.canonical_texts(),
        "real_form": f.map.canonical_texts(),
        "induced": g.map.canonical_texts(),
    }
    report.add("derive completed", True, detail=json.dumps(doc, sort_keys=True))
    text = []
    text.append(f"# endomorphism n={args.n} d={args.d}")
    text.extend(doc["endomorphism"])
    text.append("# real form")
    text.extend(doc["real_form"])
    text.append("# induced morphism on the orbit variety")
    text.extend(doc["induced"])
    payload = json.dumps(doc, indent=2, sort_keys=True) if args.format == "json" else "\n".join(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return report


def cmd_verify(args) -> Report:
    report = Report(
        "verify",
        {"suite": args.suite, "max_d": args.max_d, "cap": args.cap,
         "entry": args.entry, "seed": args.seed},
    )
    if args.dump_catalogue:
        with open(args.dump_catalogue, "w") as fh:
            json.dump(varieties.catalogue_json(), fh, indent=2, sort_keys=True)
        report.add("catalogue document written", True, detail=args.dump_catalogue)
    if args.entry:
        entry = varieties.catalogue().get(args.entry)
        if entry is None:
            report.add(
                f"catalogue entry {args.entry!r}",
                False,
                detail=f"known entries: {', '.join(sorted(varieties.catalogue()))}",
            )
            return report
        report.extend(varieties.verify_membership(entry, seed=args.seed))
        if entry.rule:
            for d in range(2, args.max_d + 1):
                report.checks.append(varieties.verify_semiconjugacy(entry, d))
        return report
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name == "chebyshev":
            report.extend(suite_chebyshev(args.max_d, args.seed, cap=args.cap))
        else:
            report.extend(SUITES[name](args.max_d, args.seed))
    if args.identity:
        report.checks = [c for c in report.checks if args.identity in c.name]
        if not report.checks:
            report.add(f"identity filter {args.identity!r}", False, detail="no matching checks")
    return report


def cmd_branch(args) -> Report:
    report = Report("branch", {"n": args.n})
    if args.n == 2:
        report.extend(branch.branch_report_n2())
    else:
        report.extend(branch.branch_report_n3(seed=args.seed))
    return report


def cmd_degree(args) -> Report:
    report = Report("degree", {"n": args.n, "d": args.d, "trials": args.trials, "seed": args.seed})
    expect = {(2, 2): 4, (2, 3): 9, (3, 2): 8}[(args.n, args.d)]
    out = dynamics.count_generic_preimages(args.n, args.d, trials=args.trials, seed=args.seed)
    report.add(
        f"generic degree count ({args.n},{args.d})",
        out["modal"] == expect and out["agreement"] >= 0.9,
        detail=f"modal {out['modal']} over {len(out['counts'])} trials, agreement {out['agreement']:.2f}",
    )
    if args.n == 2:
        sp = dynamics.classify_special_points(args.d)
        report.add(
            f"special point counts d={args.d}",
            sp["counts"] == sp["expected"],
            detail=str(sp["counts"]),
        )
    return report


def cmd_orbit(args) -> Report:
    start = tuple(complex(part) for part in args.start.split(","))
    report = Report(
        "orbit",
        {"n": args.n, "d": args.d, "start": args.start, "max_iter": args.max_iter},
    )
    record = dynamics.iterate_orbit(
        induced_morphism(args.n, args.d).map,
        start,
        max_iter=args.max_iter,
        escape_radius=args.escape_radius,
    )
    detail = record.status + (f" at step {record.escape_index}" if record.escape_index is not None else "")
    report.add("orbit computed", True, detail=detail)
    if args.output:
        rows = []
        for k, point in enumerate(record.iterates):
            row: list = [k + 1]
            for x in point:
                row.extend([x.real, x.imag])
            rows.append(row)
        header = ["step"]
        for i in range(len(start)):
            header.extend([f"re{i}", f"im{i}"])
        write_csv(args.output, header, rows)
    print(f"status: {record.status}", end="")
    print(f" (escape at {record.escape_index})" if record.escape_index is not None else "")
    return report


def cmd_plot(args) -> Report:
    report = Report("plot", {"figure": args.figure, "samples": args.samples, "grid": args.grid})
    base = args.output or f"cheborbit-{args.figure}"
    if args.figure == "jordan":
        rows = dynamics.jordan_curve_data(args.samples)
        write_csv(f"{base}.csv", ["arc_id", "angle", "p", "q"], rows)
        arc1 = [(r[2], r[3]) for r in rows if r[0] == 1]
        arc2 = [(r[2], r[3]) for r in rows if r[0] == 2]
        write_svg(f"{base}.svg", [(arc1, "#d62728"), (arc2, "#2ca02c")])
        report.add("jordan curve emitted", True, detail=f"{base}.csv, {base}.svg")
    elif args.figure == "kset":
        entry = args.entry or "plane"
        data = dynamics.sample_k_set(entry, args.grid)
        pts = data["points"]
        resid = data["inequality_residuals"]
        header = [f"c{i}" for i in range(pts.shape[1])] + [
            f"ineq{i}" for i in range(resid.shape[1])
        ]
        rows = [list(map(float, list(pts[i]) + list(resid[i]))) for i in range(pts.shape[0])]
        write_csv(f"{base}.csv", header, rows)
        write_svg(f"{base}.svg", [], points=[(p[0], p[1]) for p in pts])
        report.add(
            f"bounded-set cloud for {entry} emitted",
            data["max_imag"] < 1e-9,
            detail=f"{pts.shape[0]} points",
        )
    elif args.figure == "jacobian":
        jp = dynamics.jacobian_partition_data(args.grid)
        rows = []
        axis = jp["axis"]
        for i, u in enumerate(axis):
            for j, v in enumerate(axis):
                rows.append([float(u), float(v), float(jp["det"][i, j]), int(jp["signs"][i, j])])
        write_csv(f"{base}.csv", ["u", "v", "det", "sign"], rows)
        curves = [
            ([(float(a), float(b)) for a, b in jp["zero_curves"]["diagonal"]], "#d62728"),
            ([(float(a), float(b)) for a, b in jp["zero_curves"]["cubic"]], "#2ca02c"),
        ]
        write_svg(f"{base}.svg", curves, viewbox=(-2.2, -2.2, 4.4, 4.4))
        report.add("jacobian partition emitted", jp["symbolic_ok"])
    else:
        report.add(f"unknown figure {args.figure}", False)
    return report


def cmd_molien(args) -> Report:
    report = Report("molien", {"group": args.group, "order": args.order})
    series = molien_series(args.group, args.order)
    text = ", ".join(str(c) for c in series)
    fixture = MOLIEN_FIXTURES.get(args.group)
    ok = True
    if fixture and args.order >= 9:
        ok = [int(c) for c in series[:10]] == fixture
    report.add(f"molien series {args.group}", ok, detail=text)
    print(text)
    return report


def cmd_conjugate(args) -> Report:
    report = Report(
        "conjugate",
        {"matrix": args.matrix, "b": args.b, "c": args.c, "k": args.k, "m": args.m,
         "n_coef": args.n_coef, "d": args.d, "seed": args.seed},
    )
    a11, a12, a21, a22 = (Fraction(x) for x in args.matrix.split(","))
    result = conjugate_system(
        a11, a12, a21, a22, Fraction(args.b), Fraction(args.c),
        Fraction(args.k), Fraction(args.m), Fraction(args.n_coef),
        d=args.d, seed=args.seed,
    )
    report.extend(list(result.checks))
    print("\n".join(result.g_prime.canonical_texts()))
    return report


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheborbit",
        description="Exact Chebyshev endomorphisms on dihedral orbit varieties",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed for all numeric sampling")
        p.add_argument("--report", default="cheborbit-report.json", help="JSON report path")

    p = sub.add_parser("derive", help="emit the degree-d maps in canonical text")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.add_argument("--max-d", type=int, default=6, dest="max_d")
    p.add_argument("--cap", type=int, default=16, help="composed-degree cap for the exact suites")
    p.add_argument("--identity", help="keep only checks whose name contains this")
    p.add_argument("--entry", help="verify a single catalogue entry by name")
    p.add_argument("--dump-catalogue", dest="dump_catalogue",
                   help="write the catalogue JSON document to this path")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("branch", help="branch-locus resultant and discriminant reports")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    common(p)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("degree", help="generic preimage counting")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.add_argument("--d", type=int, choices=(2, 3), required=True)
    p.add_argument("--trials", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("orbit", help="iterate one orbit of the induced morphism")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--start", required=True, help="comma-separated coordinates")
    p.add_argument("--max-iter", type=int, default=64, dest="max_iter")
    p.add_argument("--escape-radius", type=float, default=1e6, dest="escape_radius")
    p.add_argument("--output", help="CSV path for the iterates")
    common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("plot", help="figure data (CSV + SVG)")
    p.add_argument("--figure", choices=("jordan", "kset", "jacobian"), required=True)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--entry")
    p.add_argument("--output", help="basename for .csv/.svg artifacts")
    common(p)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("molien", help="invariant-ring Hilbert series")
    p.add_argument("--group", choices=("D3_on_R2", "D4_on_R3"), required=True)
    p.add_argument("--order", type=int, default=9)
    common(p)
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("conjugate", help="change of fundamental generators")
    p.add_argument("--matrix", default="1,0,0,1", help="a11,a12,a21,a22")
    p.add_argument("--b", default="1")
    p.add_argument("--c", default="1")
    p.add_argument("--k", default="0")
    p.add_argument("--m", default="0")
    p.add_argument("--n-coef", default="0", dest="n_coef")
    p.add_argument("--d", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_conjugate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = args.func(args)
    with open(args.report, "w") as fh:
        fh.write(report.to_json() + "\n")
    failure = report.first_failure()
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"[{status}] {check.name}"
        if check.residual is not None:
            line += f" (residual {check.residual:.3e})"
        if not check.passed and check.detail:
            line += f" :: {check.detail}"
        print(line)
    if failure is not None:
        print(f"FAILED: {failure.name}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
