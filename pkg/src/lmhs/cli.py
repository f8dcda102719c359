"""Command line driver.

Subcommands: check, solve, render, quiver-decompose, base-change, koszul,
report.  Fixtures are JSON files; a bare name is looked up in the shipped
corpus.  Exit codes: 0 all checks pass, 1 at least one check failed,
2 input or usage error.  LMHS_COLOR=always|never|auto controls ANSI marks.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import basechange, degeneration, fixtures, polydisk, quiver, render
from .degeneration import InconsistentFixture, UnderdeterminedSolve
from .fixtures import FixtureError, FixtureFile
from .reports import FAIL, Report

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2


def _use_color() -> bool:
    mode = os.environ.get("LMHS_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return sys.stdout.isatty()


def _print_report(report: Report) -> None:
    color = _use_color()
    for line in report.lines():
        if color:
            if line.startswith("[FAIL]"):
                line = "\x1b[31m" + line + "\x1b[0m"
            elif line.startswith("[pass]"):
                line = "\x1b[32m" + line + "\x1b[0m"
        print(line)


def _load(path: str) -> FixtureFile:
    if os.path.exists(path):
        return fixtures.parse_fixture(path)
    if "/" not in path and "\\" not in path:
        return fixtures.load_builtin(path)
    raise FixtureError(path, "no such file")


def _run_checks(fixture: FixtureFile, which: str = "all"):
    """All checks applicable to the fixture kind; returns (Report, notes)."""
    notes = []
    report = Report()
    wanted = None if which == "all" else set(which.split(","))

    def want(name):
        return wanted is None or name in wanted

    if fixture.kind == "degeneration":
        fx = fixture.payload
        if want("cs"):
            for k in range(0, 2 * fx.n + 2):
                report.extend(degeneration.check_cs(fx, k))
        if want("support"):
            report.extend(degeneration.check_support_range(fx))
        if want("frontier"):
            report.extend(degeneration.check_frontier(fx))
        if want("phantom-hl"):
            report.extend(degeneration.phantom_hard_lefschetz(fx))
    elif fixture.kind == "quiver":
        rep = fixture.payload
        violations = quiver.validate(rep)
        report.add("quiver-valid", "rep", not violations, "; ".join(violations))
        if not violations:
            dec = quiver.decomposes(rep)
            cs = quiver.cs_sequence(rep).exact
            lic = quiver.local_invariant_cycle(rep)
            notes.append(f"decomposes: {dec}")
            notes.append(f"clemens-schmid exact: {cs}")
            notes.append(f"local invariant cycle: {lic}")
            agree = dec == cs == lic
            if quiver.is_self_dual(rep):
                report.add(
                    "theorem-equivalence",
                    "rep",
                    agree,
                    f"decomposes={dec}, cs={cs}, lic={lic}",
                )
            elif agree:
                report.add(
                    "theorem-equivalence",
                    "rep",
                    True,
                    "verdicts agree (self-duality not needed here)",
                )
            else:
                report.skip("theorem-equivalence", "rep", "not self-dual; equivalence not asserted")
            ms = quiver.decompose_indecomposables(rep)
            notes.append(
                "summands: "
                + ", ".join(
                    f"{s.family}({s.size}"
                    + (f", d={s.order}" if s.order > 1 else "")
                    + f") x{k}"
                    for s, k in sorted(ms.items(), key=lambda t: t[0].sort_key())
                )
            )
    elif fixture.kind == "polydisk":
        pf = fixture.payload
        open_stratum = pf.strata.stratum(())
        degrees = [d for d, _ in open_stratum.limit] if open_stratum else []
        expected = dict(pf.invariants)
        for m in degrees:
            try:
                dec = polydisk.ih_decomposition(m, pf.strata, pf.r)
            except polydisk.MissingStratum as exc:
                report.skip("polydisk-cells", f"m={m}", str(exc))
                continue
            report.add("polydisk-filtration-containment", f"m={m}", dec.filtrations_ok(), "")
            if m in expected:
                report.extend(polydisk.polydisk_cs(m, dec, expected[m]))
            h = pf.open_limit(m)
            top = max(pf.r - 1, 0)
            extra = polydisk.ih_local(h, (), top + 1)
            report.add(
                "koszul-vanishing-beyond-top",
                f"m={m}",
                extra.is_zero(),
                "" if extra.is_zero() else str(extra),
            )
    elif fixture.kind == "local_system":
        data = fixture.payload.data
        rank = degeneration.euler_poincare_rank(data)
        report.add("euler-poincare-rank", "H^1", True, f"rank {rank}")
        notes.append(f"euler-poincare rank: {rank}")
        if fixture.payload.shioda is not None:
            blocks = degeneration.shioda_assemble(*fixture.payload.shioda)
            total = blocks["total"]
            report.add("shioda-assembly", "H^total", True, f"total {total}")
            notes.append(
                "shioda blocks: "
                + " + ".join(str(blocks[k]) for k in ("h0_upper", "ih1", "phantom", "h0_lower"))
                + f" = {total}"
            )
    else:  # tail_strata
        tf = fixture.payload
        mu = degeneration.milnor_number(tf.strata)
        notes.append(f"milnor number: {mu}")
        report.extend(degeneration.tail_bound_check(tf.strata, tf.vanishing, tf.strata.n))
        report.add(
            "milnor-matches-vanishing-mass",
            f"n={tf.strata.n}",
            mu == tf.vanishing.mass,
            f"milnor {mu}, vanishing mass {tf.vanishing.mass}",
        )
    return report, notes


def cmd_check(args) -> int:
    fixture = _load(args.fixture)
    report, notes = _run_checks(fixture, args.set)
    print(f"fixture {fixture.name} ({fixture.kind})")
    _print_report(report)
    for note in notes:
        print("note:", note)
    failed = [r for r in report.results if r.verdict == FAIL]
    print(f"{len(report.results)} checks, {len(failed)} failed")
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def cmd_solve(args) -> int:
    fixture = _load(args.fixture)
    if fixture.kind != "degeneration":
        raise FixtureError(args.fixture, "solve needs a degeneration fixture")
    diagram = degeneration.solve_unknown(fixture.payload, args.degree, args.position)
    print(f"solved {args.position} in degree {args.degree}:")
    print(render.render_diagram(diagram))
    print("machine-readable:")
    print(json.dumps({"entries": [[p, q, m] for (p, q), m in diagram.entries]}, sort_keys=True))
    return EXIT_OK


def cmd_render(args) -> int:
    fixture = _load(args.fixture)
    if fixture.kind == "degeneration":
        if args.degree is not None:
            data = fixture.payload.degree(args.degree)
            if data.lmhs is not None and data.lmhs.strings:
                print(render.render_lmhs(data.lmhs))
            else:
                print(render.render_diagram(data.special_fiber))
        else:
            print(render.render_degeneration(fixture.payload))
    elif fixture.kind == "tail_strata":
        print(render.render_diagram(fixture.payload.vanishing))
    else:
        print(fixtures.serialize(fixture), end="")
    return EXIT_OK


def cmd_quiver_decompose(args) -> int:
    fixture = _load(args.fixture)
    if fixture.kind != "quiver":
        raise FixtureError(args.fixture, "quiver-decompose needs a quiver fixture")
    rep = fixture.payload
    violations = quiver.validate(rep)
    if violations:
        for v in violations:
            print("invalid:", v)
        return EXIT_CHECK_FAILED
    ms = quiver.decompose_indecomposables(rep)
    for s, k in sorted(ms.items(), key=lambda t: t[0].sort_key()):
        order = f", order {s.order}" if s.order > 1 else ""
        print(f"{s.family}(size {s.size}{order}) x {k}")
    print(f"decomposes: {quiver.decomposes(rep)}")
    print(f"local invariant cycle: {quiver.local_invariant_cycle(rep)}")
    seq = quiver.cs_sequence(rep)
    print(f"clemens-schmid exact: {seq.exact}")
    for line in seq.lines():
        print(" ", line)
    return EXIT_OK


def cmd_base_change(args) -> int:
    fixture = _load(args.fixture)
    if fixture.kind != "degeneration":
        raise FixtureError(args.fixture, "base-change needs a degeneration fixture")
    fx = fixture.payload
    for k, data in fx.degrees:
        if data.lmhs is None or not data.lmhs.strings:
            continue
        spec = basechange.base_change_lmhs(data.lmhs, args.kappa)
        gap = basechange.invariant_gap(data.lmhs, args.kappa)
        print(f"--- degree {k}, exponent {args.kappa} ---")
        print(render.render_lmhs(spec))
        print(f"invariant gap: {gap}")
    return EXIT_OK


def cmd_koszul(args) -> int:
    fixture = _load(args.fixture)
    if fixture.kind != "polydisk":
        raise FixtureError(args.fixture, "koszul needs a polydisk fixture")
    subset = tuple(int(x) for x in args.subset.split(",")) if args.subset else ()
    h = fixture.payload.open_limit(args.degree) if not subset else None
    if subset:
        stratum = fixture.payload.strata.stratum(subset)
        h = stratum.limit_at(args.degree) if stratum else None
    if h is None:
        raise FixtureError(args.fixture, f"no limit data for subset {subset} in degree {args.degree}")
    complex_ = polydisk.koszul_complex(h, subset)
    print("term dimensions:", " -> ".join(str(d) for d in complex_.term_dims()))
    print("differential ranks:", ", ".join(str(r) for r in complex_.ranks()))
    if args.slot is not None:
        diag = polydisk.ih_local(h, subset, args.slot)
        print(f"local IH^{args.slot}:")
        print(render.render_diagram(diag))
    return EXIT_OK


def cmd_report(args) -> int:
    fixture = _load(args.fixture)
    report, notes = _run_checks(fixture, "all")
    if args.machine_readable:
        print(
            json.dumps(
                {
                    "name": fixture.name,
                    "kind": fixture.kind,
                    "ok": report.ok,
                    "results": report.as_dict(),
                    "notes": notes,
                },
                indent=1,
                sort_keys=True,
            )
        )
    else:
        print(f"fixture {fixture.name} ({fixture.kind})")
        _print_report(report)
        for note in notes:
            print("note:", note)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmhs",
        description="exact workbench for limiting mixed Hodge structures of degenerations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the checks a fixture licenses")
    p.add_argument("fixture", help="fixture file path or shipped fixture name")
    p.add_argument("--set", default="all", help="comma-separated check set (cs,support,frontier,phantom-hl)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve one slot of an exact sequence")
    p.add_argument("fixture")
    p.add_argument("--degree", "-k", type=int, required=True)
    p.add_argument(
        "--position", "-p", required=True, choices=degeneration.SOLVE_POSITIONS
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("render", help="render a fixture as a text grid")
    p.add_argument("fixture")
    p.add_argument("--degree", "-k", type=int, default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("quiver-decompose", help="indecomposable summands of a quiver fixture")
    p.add_argument("fixture")
    p.set_defaults(func=cmd_quiver_decompose)

    p = sub.add_parser("base-change", help="cyclic base change of the limit data")
    p.add_argument("fixture")
    p.add_argument("--kappa", type=int, required=True)
    p.set_defaults(func=cmd_base_change)

    p = sub.add_parser("koszul", help="Koszul complex of a polydisk fixture")
    p.add_argument("fixture")
    p.add_argument("--degree", "-m", type=int, required=True)
    p.add_argument("--subset", default="", help="comma-separated parameter subset I")
    p.add_argument("--slot", type=int, default=None)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("report", help="full report, optionally machine readable")
    p.add_argument("fixture")
    p.add_argument("--machine-readable", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("list", help="list shipped fixtures")
    p.set_defaults(func=lambda args: (print("\n".join(fixtures.builtin_names())), EXIT_OK)[1])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FixtureError, InconsistentFixture, UnderdeterminedSolve, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
