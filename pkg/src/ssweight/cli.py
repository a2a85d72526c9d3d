"""Command-line interface: validate, e2, check, slopes, polygons, report,
scenario.

Exit codes: 0 when every check passes, 1 when some check or validation
fails, 2 on usage or input errors.  Output is deterministic byte for byte
for identical inputs and flags; JSON is emitted with sorted keys and a
``schema_version`` field.  Independent checks may be fanned out over a
thread pool; ``SSWEIGHT_NO_PARALLEL=1`` forces sequential evaluation and
must not change any output (results are merged in task order).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import hodge_lefschetz, polygons, scenarios
from .checks import CheckResult, check_h1_suite, check_log_hl_all, check_wm
from .errors import SsweightError
from .spectral import build_e1, compute_e2
from .strata import StrataComplex

SCHEMA_POINTER = "see docs/strata_schema.json for the input format"


def _run_tasks(thunks):
    """Evaluate pure thunks, in parallel unless SSWEIGHT_NO_PARALLEL=1;
    results always come back in task order."""
    thunks = list(thunks)
    if os.environ.get("SSWEIGHT_NO_PARALLEL") == "1" or len(thunks) <= 1:
        return [t() for t in thunks]
    with ThreadPoolExecutor(max_workers=min(4, len(thunks))) as pool:
        return list(pool.map(lambda t: t(), thunks))


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(args, payload) -> None:
    _emit(args, json.dumps(payload, indent=2, sort_keys=True))


def _load_complex(args) -> StrataComplex:
    have_scenario = getattr(args, "scenario", None) is not None
    have_input = getattr(args, "input", None) is not None
    if have_scenario == have_input:
        raise SsweightError("exactly one of --scenario and --input is required")
    if have_scenario:
        return scenarios.build(scenarios.parse_spec(args.scenario))
    return StrataComplex.loads(Path(args.input).read_text(encoding="utf-8"))


def _validated_complex(args):
    """Load and validate; returns (sc, None) or (sc, failure_exit_code)."""
    sc = _load_complex(args)
    report = sc.validate()
    if not report.ok:
        _emit(args, report.summary())
        return sc, 1
    return sc, None


def _add_io_flags(p: argparse.ArgumentParser, with_format=True):
    p.add_argument("--scenario", help="builtin input, e.g. ngon:3 or tetrahedron")
    p.add_argument("--input", help="path to a strata-complex JSON document")
    if with_format:
        p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", help="write output to this path instead of stdout")


def _checks_exit_code(results: list[CheckResult]) -> int:
    return 0 if all(r.ok for r in results) else 1


def _checks_text(results: list[CheckResult]) -> str:
    lines = [str(r) for r in results]
    bad = sum(1 for r in results if not r.ok)
    lines.append(f"{len(results)} checks, {bad} failed")
    return "\n".join(lines)


def _checks_json(name: str, results: list[CheckResult]) -> dict:
    return {
        "schema_version": 1,
        "input": name,
        "passed": all(r.ok for r in results),
        "checks": [r.to_dict() for r in results],
    }


# -- subcommand handlers -------------------------------------------------------


def _cmd_validate(args) -> int:
    sc = _load_complex(args)
    report = sc.validate()
    if args.format == "json":
        _emit_json(args, {"schema_version": 1, "input": sc.name, **report.to_dict()})
    else:
        _emit(args, report.summary())
    return 0 if report.ok else 1


def _cmd_e2(args) -> int:
    sc, failed = _validated_complex(args)
    if failed is not None:
        return failed
    page = compute_e2(build_e1(sc))
    doc = page.to_json_dict()
    if args.format == "json":
        _emit_json(args, doc)
        return 0
    lines = [f"second page of {sc.name} (dimension {page.n})"]
    lines.append(f"{'a':>4} {'b':>4} {'dim':>5} {'weight':>7} {'slope':>6}")
    for cell in doc["cells"]:
        slope = cell["slope"] if cell["slope"] is not None else "-"
        lines.append(
            f"{cell['a']:>4} {cell['b']:>4} {cell['dim']:>5} {cell['weight']:>7} {slope:>6}"
        )
    lines.append("abutment dimensions:")
    for q in sorted(doc["abutment"], key=int):
        lines.append(f"  H^{q}: {doc['abutment'][q]}")
    _emit(args, "\n".join(lines))
    return 0


def _cmd_check(args) -> int:
    if not (args.hl or args.wm or args.h1 or args.ito or args.all):
        raise SsweightError("select at least one of --hl, --wm, --h1, --ito, --all")
    sc, failed = _validated_complex(args)
    if failed is not None:
        return failed
    tasks = []
    if args.all or args.hl or args.wm:
        e2 = compute_e2(build_e1(sc))
    if args.all or args.hl:
        tasks.append(lambda: check_log_hl_all(e2))
    if args.all or args.wm:
        tasks.append(lambda: check_wm(e2))
    if args.all or args.h1:
        if sc.n >= 1:
            tasks.append(lambda: check_h1_suite(sc))
        else:
            tasks.append(
                lambda: [
                    CheckResult(
                        "h1_suite", {}, "skipped", note="needs dimension >= 1"
                    )
                ]
            )
    if args.all or args.ito:
        if sc.cycle_generated:
            tasks.append(lambda: hodge_lefschetz.hl_suite(sc))
        else:
            tasks.append(
                lambda: [
                    CheckResult(
                        "hl_module_suite",
                        {},
                        "skipped",
                        note="configuration is not cycle-generated",
                    )
                ]
            )
    results = [r for group in _run_tasks(tasks) for r in group]
    if args.format == "json":
        _emit_json(args, _checks_json(sc.name, results))
    else:
        _emit(args, _checks_text(results))
    return _checks_exit_code(results)


def _cmd_slopes(args) -> int:
    sc, failed = _validated_complex(args)
    if failed is not None:
        return failed
    e2 = compute_e2(build_e1(sc))
    qs = [args.q] if args.q is not None else sorted(e2.abutment())
    out = []
    results = []
    for q in qs:
        sl = polygons.slopes_from_e2(e2, q)
        sym = polygons.check_slope_symmetry(sl)
        results.append(sym)
        out.append({"q": q, "slopes": sl.to_json(), "symmetry": sym.status})
    if args.format == "json":
        _emit_json(args, {"schema_version": 1, "input": sc.name, "degrees": out})
    else:
        lines = [
            f"H^{d['q']} slopes: {{{', '.join(d['slopes'])}}} symmetry: {d['symmetry']}"
            for d in out
        ]
        _emit(args, "\n".join(lines))
    return _checks_exit_code(results)


def _parse_rat_list(text: str):
    return [Fraction(x) for x in text.split(",") if x != ""]


def _cmd_polygons(args) -> int:
    if args.slopes is not None or args.jumps is not None:
        if args.slopes is None or args.jumps is None:
            raise SsweightError("calculator mode needs both --slopes and --jumps")
        slopes = polygons.SlopeMultiset.of(args.q or 0, _parse_rat_list(args.slopes))
        jumps = [int(x) for x in _parse_rat_list(args.jumps)]
        module = polygons.PhiNModule(slopes=slopes, filtration_jumps=tuple(jumps))
        newton = polygons.newton_polygon(slopes)
        hodge = polygons.hodge_polygon_from_jumps(jumps)
        adm = polygons.check_admissibility_necessary(module)
        payload = {
            "schema_version": 1,
            "t_N": str(polygons.t_N(module)),
            "t_H": str(polygons.t_H(module)),
            "newton_polygon": newton.to_json(),
            "hodge_polygon": hodge.to_json(),
            "admissibility_necessary": adm.to_dict(),
        }
        if args.format == "json":
            _emit_json(args, payload)
        else:
            _emit(
                args,
                "\n".join(
                    [
                        f"t_N = {payload['t_N']}, t_H = {payload['t_H']}",
                        f"admissibility (necessary): {adm.status}",
                        "newton polygon:",
                        newton.ascii_sketch(),
                        "hodge polygon:",
                        hodge.ascii_sketch(),
                    ]
                ),
            )
        return 0 if adm.ok else 1

    sc, failed = _validated_complex(args)
    if failed is not None:
        return failed
    e2 = compute_e2(build_e1(sc))
    qs = [args.q] if args.q is not None else sorted(e2.abutment())
    degrees = []
    results = []
    for q in qs:
        sl = polygons.slopes_from_e2(e2, q)
        newton = polygons.newton_polygon(sl)
        entry = {"q": q, "slopes": sl.to_json(), "newton_polygon": newton.to_json()}
        try:
            hv = polygons.hodge_from_ordinary(sl)
            module = polygons.PhiNModule(slopes=sl, filtration_jumps=hv.jumps())
            adm = polygons.check_admissibility_necessary(module)
            results.append(adm)
            entry["hodge_polygon"] = polygons.hodge_polygon(hv).to_json()
            entry["admissibility_necessary"] = adm.status
        except polygons.NonIntegralSlopes:
            entry["hodge_polygon"] = None
            entry["admissibility_necessary"] = "skipped"
        degrees.append((entry, newton))
    if args.format == "json":
        _emit_json(
            args,
            {
                "schema_version": 1,
                "input": sc.name,
                "degrees": [e for e, _ in degrees],
            },
        )
    else:
        lines = []
        for entry, newton in degrees:
            lines.append(
                f"H^{entry['q']} slopes {{{', '.join(entry['slopes'])}}}"
                f" admissibility: {entry['admissibility_necessary']}"
            )
            lines.append(newton.ascii_sketch())
        _emit(args, "\n".join(lines))
    return _checks_exit_code(results)


def _cmd_report(args) -> int:
    sc = _load_complex(args)
    (report,) = _run_tasks([lambda: polygons.hodge_symmetry_report(sc)])
    if args.format == "json":
        _emit_json(args, report.to_dict())
    else:
        lines = [report.title, f"overall: {'pass' if report.passed else 'fail'}"]
        for entry in report.data.get("degrees", []):
            hs = entry.get("hodge_symmetry", {})
            slopes = entry.get("slopes")
            slopes_text = "{" + ", ".join(slopes) + "}" if slopes is not None else "n/a"
            lines.append(
                f"  q={entry['q']}: slopes {slopes_text}; hodge symmetry: {hs.get('status')}"
            )
        _emit(args, "\n".join(lines))
    return 0 if report.passed else 1


def _cmd_scenario(args) -> int:
    sc = scenarios.build(scenarios.parse_spec(args.kind))
    _emit(args, sc.dumps())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssweight",
        description=(
            "exact weight-spectral-sequence engine for strictly semistable"
            " degenerations"
        ),
        epilog=SCHEMA_POINTER,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural validation of a configuration")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("e2", help="second page with weights, slopes, abutment")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_e2)

    p = sub.add_parser("check", help="run check suites")
    _add_io_flags(p)
    p.add_argument("--hl", action="store_true", help="hard Lefschetz on the page")
    p.add_argument("--wm", action="store_true", help="weight-monodromy isomorphisms")
    p.add_argument("--h1", action="store_true", help="degree-one lemma chain")
    p.add_argument(
        "--ito",
        action="store_true",
        help="bigraded Hodge-Lefschetz module axioms for V and for ker d/im d",
    )
    p.add_argument("--all", action="store_true", help="every suite")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("slopes", help="Frobenius slope multisets per degree")
    _add_io_flags(p)
    p.add_argument("--q", type=int, help="restrict to one degree")
    p.set_defaults(func=_cmd_slopes)

    p = sub.add_parser("polygons", help="Newton/Hodge polygons and admissibility")
    _add_io_flags(p)
    p.add_argument("--q", type=int, help="degree (scenario mode) or label (calculator)")
    p.add_argument("--slopes", help="calculator mode: comma-separated slopes, e.g. 0,1/2,1")
    p.add_argument("--jumps", help="calculator mode: comma-separated filtration jumps")
    p.set_defaults(func=_cmd_polygons)

    p = sub.add_parser("report", help="end-to-end Hodge symmetry report")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("scenario", help="emit a builtin scenario as JSON")
    p.add_argument("kind", help="e.g. ngon:4, tetrahedron, cellular:1,2,1")
    p.add_argument("-o", "--output", help="write to this path instead of stdout")
    p.set_defaults(func=_cmd_scenario)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SsweightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(SCHEMA_POINTER, file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
