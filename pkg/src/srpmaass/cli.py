"""Command-line harness: ``srpmaass run`` executes suites, ``srpmaass table``
writes exact coefficient tables.

Every ``run`` flag can also be given through an environment variable named
``SRPMAASS_<FLAG>`` (for example ``SRPMAASS_PREC=256``); explicit flags win.
Exit codes: 0 all checks pass, 1 some check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import exact_series as xs
from .checks import SUITE_NAMES, CheckReport, UnknownSuite, run_suite
from .special import HalfPlanePoint, PrecisionContext

ENV_PREFIX = "SRPMAASS_"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
TABLE_KINDS = ("s_k", "g_k", "srp3", "twisted")


class ConfigError(ValueError):
    pass


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def _env_flag(name: str) -> bool:
    return _env(name, "").strip().lower() in ("1", "true", "yes", "on")


def load_points(path: str | Path) -> list[HalfPlanePoint]:
    """Read sample points from JSON (list of "u+vi" strings or [u, v] pairs)
    or plain text with one point per line."""
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"{path}: expected a non-empty list of points")
    pts = []
    for item in raw:
        if isinstance(item, str):
            pts.append(HalfPlanePoint.parse(item))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            pts.append(HalfPlanePoint(*(str(x) for x in item)))
        else:
            raise ConfigError(f"{path}: cannot read point {item!r}")
    return pts


def build_context(args) -> PrecisionContext:
    def pick(flag, cast):
        val = getattr(args, flag)
        if val is None:
            val = _env(flag)
        return None if val is None else cast(val)

    kw = {}
    for flag, cast in (("prec", int), ("order", int), ("cutoff", int), ("step", Fraction)):
        val = pick(flag, cast)
        if val is not None:
            kw[flag] = val
    return PrecisionContext(**kw)


def report_document(suite: str, ctx: PrecisionContext, reports: list[CheckReport]) -> dict:
    summary = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skipped")}
    return {
        "suite": suite,
        "context": {
            "prec": ctx.prec,
            "order": ctx.order,
            "cutoff": ctx.cutoff,
            "step": None if ctx.step is None else str(ctx.step),
        },
        "checks": [r.to_dict() for r in reports],
        "summary": summary,
    }


def render_report(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, default=str) + "\n"
    buf = io.StringIO()
    cols = ["check_id", "status", "max_deviation", "tolerance", "exact", "mismatches", "runtime", "anchor", "points"]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for c in doc["checks"]:
        w.writerow([c["check_id"], c["status"], _num(c["max_deviation"]), _num(c["tolerance"]),
                    c["exact"], c["mismatches"], c["runtime"], c["anchor"], ";".join(c["points"])])
    return buf.getvalue()


def _num(x) -> str:
    return "" if x is None else repr(x)


def table_series(kind: str, param: int | None, order: int) -> xs.PowerSeries:
    if order < 0:
        raise ConfigError("table order must be non-negative")
    if kind == "srp3":
        return xs.srp3_series(order)
    if param is None:
        raise ConfigError(f"table kind {kind!r} needs --param")
    if kind == "s_k":
        if param < 1:
            raise ConfigError("s_k needs k >= 1")
        return xs.moment_series(param, order)
    if kind == "g_k":
        if param < 1:
            raise ConfigError("g_k needs k >= 1")
        return xs.g_series(param, order)
    if kind == "twisted":
        try:
            return xs.twisted_series(param, order)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown table kind {kind!r}")


def emit_table(kind: str, param: int | None, order: int, fmt: str = "csv", out: str | Path | None = None) -> str:
    """Render a bit-exact coefficient table; write it to ``out`` when given."""
    ser = table_series(kind, param, order)
    text = ser.to_csv() if fmt == "csv" else ser.to_json() + "\n"
    if out is not None:
        Path(out).write_text(text)
    return text


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="srpmaass", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("--suite", help=f"one of {', '.join(SUITE_NAMES)} (default: all)")
    run.add_argument("--prec", help="working precision in bits (default 192)")
    run.add_argument("--order", help="fixed q-series order (default: from tail bounds)")
    run.add_argument("--cutoff", help="fixed Fourier cutoff (default: from tail bounds)")
    run.add_argument("--step", help="stencil step relative to v, e.g. 1/65536")
    run.add_argument("--points", help="file of sample points (JSON list or one per line)")
    run.add_argument("--out", help="write the report here instead of stdout")
    run.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    run.add_argument("--slow", action="store_true", default=None, help="include the direct s -> 1 limit")

    tab = sub.add_parser("table", help="write an exact coefficient table")
    tab.add_argument("--kind", required=True, choices=TABLE_KINDS)
    tab.add_argument("--param", type=int, help="k for s_k and g_k, p for twisted")
    tab.add_argument("--order", type=int, required=True, help="highest power of q")
    tab.add_argument("--format", choices=("json", "csv"), default="csv")
    tab.add_argument("--out", help="output file (default stdout)")
    return p


def _cmd_run(args) -> int:
    try:
        ctx = build_context(args)
        suite = args.suite or _env("suite", "all")
        fmt = args.format or _env("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError(f"unknown report format {fmt!r}")
        points_file = args.points or _env("points")
        points = load_points(points_file) if points_file else None
        slow = bool(args.slow) or _env_flag("slow")
        out = args.out or _env("out")
        reports = run_suite(suite, ctx, points, slow=slow)
    except (ConfigError, UnknownSuite, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else exc
        print(f"srpmaass: configuration error: {msg}", file=sys.stderr)
        return EXIT_CONFIG

    text = render_report(report_document(suite, ctx, reports), fmt)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        print(r.line(), file=sys.stderr)
    return EXIT_OK if all(r.status != "fail" for r in reports) else EXIT_FAIL


def _cmd_table(args) -> int:
    try:
        text = emit_table(args.kind, args.param, args.order, args.format, args.out)
    except ConfigError as exc:
        print(f"srpmaass: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"srpmaass: cannot write table: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    return _cmd_run(args) if args.command == "run" else _cmd_table(args)


if __name__ == "__main__":
    sys.exit(main())
