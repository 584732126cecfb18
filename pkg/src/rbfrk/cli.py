"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 numerical blow-up (artifacts are
still written), 3 order-condition failure, 4 reproduction verdict failure
under ``reproduce --strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import check_order_conditions, convergence_study
from .integrator import NonFiniteStateError, integrate
from .methods import MethodId, catalog
from .problem import SingularInputError, builtin
from .reproduce import (figure_summary, reproduce_figure, reproduce_tables, table_csv,
                        table_summary, worker_count)
from .stability import DEFAULT_RES, DEFAULT_WINDOW, rasterize, stability_interval

EXIT_OK, EXIT_VALIDATION, EXIT_BLOWUP, EXIT_CONDITIONS, EXIT_VERDICT = 0, 1, 2, 3, 4


class ValidationError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    methods: list = field(default_factory=list)
    problem: str | None = None
    Ns: list = field(default_factory=list)
    T: float | None = None
    out: str | None = None
    fmt: str = "csv"
    complex_mode: bool = False
    window: tuple = DEFAULT_WINDOW
    res: tuple = DEFAULT_RES
    strict: bool = False
    with_csv: bool = False


# ---------------------------------------------------------------------------
# parsing


def _parse_methods(text: str) -> list:
    try:
        return [MethodId.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def _parse_ints(text: str) -> list:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"bad N list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise ValidationError("N values must be positive integers")
    return vals


def _parse_window(text: str) -> tuple:
    try:
        w = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise ValidationError(f"bad window {text!r}") from None
    if len(w) != 4 or not (w[0] < w[1] and w[2] < w[3]):
        raise ValidationError("window must be re0,re1,im0,im1 with re0<re1 and im0<im1")
    return w


def _parse_res(text: str) -> tuple:
    try:
        nx, ny = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise ValidationError(f"bad resolution {text!r}, expected NXxNY") from None
    if nx < 2 or ny < 2:
        raise ValidationError("resolution must be at least 2x2")
    return nx, ny


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbfrk", description="Standard and RBF Runge-Kutta methods.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("list-methods", help="tableaus and shape data of every method")
    q.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json")
    q.add_argument("--out")

    q = sub.add_parser("solve", help="integrate one problem and write the trajectory CSV")
    q.add_argument("--method", required=True)
    q.add_argument("--problem", required=True)
    q.add_argument("--N", required=True)
    q.add_argument("--T", type=float)
    q.add_argument("--complex", dest="complex_mode", action="store_true")
    q.add_argument("--out")

    q = sub.add_parser("convergence", help="global error and observed order over an N list")
    q.add_argument("--method", required=True, help="comma-separated method ids")
    q.add_argument("--problem", required=True)
    q.add_argument("--N", required=True, help="comma-separated, increasing")
    q.add_argument("--T", type=float)
    q.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    q.add_argument("--complex", dest="complex_mode", action="store_true")
    q.add_argument("--out")

    q = sub.add_parser("stability", help="region raster (CSV, PGM, JSON) and stability interval")
    q.add_argument("--method", required=True, help="comma-separated method ids")
    q.add_argument("--window", default=",".join(str(w) for w in DEFAULT_WINDOW))
    q.add_argument("--res", default=f"{DEFAULT_RES[0]}x{DEFAULT_RES[1]}")
    q.add_argument("--out", default=".")

    q = sub.add_parser("check-conditions", help="order-condition residual audit")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--method")
    g.add_argument("--all", action="store_true")
    q.add_argument("--out")

    q = sub.add_parser("reproduce", help="rerun all reference tables and stability figures")
    q.add_argument("--out", default="reproduction")
    q.add_argument("--strict", action="store_true", help="exit 4 if any verdict fails")
    q.add_argument("--with-csv", action="store_true", help="also write raster CSVs")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, out=getattr(ns, "out", None), fmt=getattr(ns, "fmt", "csv"))
    cmd = ns.command
    if cmd in ("solve", "convergence", "stability"):
        cfg.methods = _parse_methods(ns.method)
        if not cfg.methods:
            raise ValidationError("no method given")
    if cmd == "check-conditions":
        cfg.methods = list(MethodId) if ns.all else _parse_methods(ns.method)
    if cmd in ("solve", "convergence"):
        try:
            builtin(ns.problem)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        cfg.problem, cfg.T, cfg.complex_mode = ns.problem, ns.T, ns.complex_mode
        cfg.Ns = _parse_ints(ns.N)
        if cmd == "solve" and len(cfg.Ns) != 1:
            raise ValidationError("solve takes a single N")
        if cmd == "convergence" and any(b <= a for a, b in zip(cfg.Ns, cfg.Ns[1:])):
            raise ValidationError("N list must be strictly increasing")
        if cmd == "convergence" and builtin(ns.problem).exact is None:
            raise ValidationError(f"problem {ns.problem} has no exact solution")
        if cfg.T is not None and cfg.T == builtin(ns.problem).t0:
            raise ValidationError("T must differ from t0")
    if cmd == "stability":
        cfg.window, cfg.res = _parse_window(ns.window), _parse_res(ns.res)
    if cmd == "reproduce":
        cfg.strict, cfg.with_csv = ns.strict, ns.with_csv
    return cfg


# ---------------------------------------------------------------------------
# commands


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


def _listing(fmt: str) -> str:
    entries = []
    for m in MethodId:
        tab = catalog(m)
        entries.append({
            "id": m.value, "label": m.label, "stages": tab.s, "order": tab.order,
            "a": [[float(x) for x in row] for row in tab.a],
            "b": [float(x) for x in tab.b], "c": [float(x) for x in tab.c],
            "shape_ratio": [float(x) for x in tab.shape_ratio],
            "shape_rule": None if tab.shape_rule is None else tab.shape_rule.value,
            "derivative_order_needed": tab.derivative_order_needed,
        })
    if fmt == "json":
        # repr of a float is its shortest round-trip form (<= 17 significant digits)
        return json.dumps(entries, indent=2) + "\n"
    lines = ["id,label,stages,order,derivative_order_needed,shape_rule,a,b,c,shape_ratio"]
    for e in entries:
        a = ";".join(" ".join(repr(x) for x in row) for row in e["a"])
        fields = [e["id"], e["label"], str(e["stages"]), str(e["order"]),
                  str(e["derivative_order_needed"]), e["shape_rule"] or "",
                  a, " ".join(map(repr, e["b"])), " ".join(map(repr, e["c"])),
                  " ".join(map(repr, e["shape_ratio"]))]
        lines.append(",".join(f'"{f}"' if "," in f else f for f in fields))
    return "\n".join(lines) + "\n"


def _solve(cfg: RunConfig) -> int:
    prob = builtin(cfg.problem)
    try:
        traj = integrate(cfg.methods[0], prob, cfg.Ns[0], cfg.T, complex_mode=cfg.complex_mode)
    except NonFiniteStateError as exc:
        _emit(exc.partial.to_csv(), cfg.out)
        print(f"blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    _emit(traj.to_csv(), cfg.out)
    return EXIT_OK


def _convergence(cfg: RunConfig) -> int:
    prob = builtin(cfg.problem)
    reports = [convergence_study(m, prob, cfg.Ns, cfg.T, complex_mode=cfg.complex_mode)
               for m in cfg.methods]
    if cfg.fmt == "json":
        text = json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=True) + "\n"
    else:
        parts = []
        for r in reports:
            body = r.to_csv()
            if len(reports) > 1:
                body = "\n".join(
                    ("method," + ln) if i == 0 else f"{r.method},{ln}"
                    for i, ln in enumerate(body.splitlines())) + "\n"
                if parts:
                    body = body.split("\n", 1)[1]
            parts.append(body)
        text = "".join(parts)
    _emit(text, cfg.out)
    blew = any(row.blew_up for r in reports for row in r.rows)
    return EXIT_BLOWUP if blew else EXIT_OK


def _stability(cfg: RunConfig) -> int:
    out = Path(cfg.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    intervals = {}
    for m in cfg.methods:
        grid = rasterize(m, cfg.window, *cfg.res)
        (out / f"{m.value}.csv").write_text(grid.to_csv(), encoding="utf-8")
        (out / f"{m.value}.pgm").write_bytes(grid.to_pgm())
        (out / f"{m.value}.json").write_text(grid.metadata_json() + "\n", encoding="utf-8")
        intervals[m.value] = stability_interval(m).as_dict()
    (out / "intervals.json").write_text(json.dumps(intervals, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def _check(cfg: RunConfig) -> int:
    reports = [check_order_conditions(m) for m in cfg.methods]
    _emit(json.dumps([r.as_dict() for r in reports], indent=2) + "\n", cfg.out)
    bad = [r.method for r in reports if not r.passed]
    if bad:
        print("order conditions failed: " + ", ".join(bad), file=sys.stderr)
        return EXIT_CONDITIONS
    return EXIT_OK


def _reproduce(cfg: RunConfig) -> int:
    out = Path(cfg.out or "reproduction")
    out.mkdir(parents=True, exist_ok=True)
    summary = {"tables": {}, "figures": {}}
    all_ok, blew = True, False
    for k, res in reproduce_tables(workers=worker_count()).items():
        (out / f"table{k}.csv").write_text(table_csv(res), encoding="utf-8")
        summary["tables"][str(k)] = table_summary(res)
        all_ok &= res.passed
        blew |= any(row.blew_up for rep in res.reports.values() for row in rep.rows)
        print(f"table {k}: {'PASS' if res.passed else 'FAIL'}")
    for k in (1, 2, 3):
        fig = reproduce_figure(k)
        for m, grid in fig.grids.items():
            (out / f"figure{k}_{m}.pgm").write_bytes(grid.to_pgm())
            if cfg.with_csv:
                (out / f"figure{k}_{m}.csv").write_text(grid.to_csv(), encoding="utf-8")
        info = figure_summary(fig)
        (out / f"figure{k}.json").write_text(json.dumps(info, indent=2) + "\n", encoding="utf-8")
        summary["figures"][str(k)] = info
        all_ok &= fig.passed
        print(f"figure {k}: {'PASS' if fig.passed else 'FAIL'}")
    summary["all_pass"] = all_ok
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    if blew:
        return EXIT_BLOWUP
    if cfg.strict and not all_ok:
        return EXIT_VERDICT
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    if cfg.command == "list-methods":
        _emit(_listing(cfg.fmt), cfg.out)
        return EXIT_OK
    handlers = {"solve": _solve, "convergence": _convergence, "stability": _stability,
                "check-conditions": _check, "reproduce": _reproduce}
    return handlers[cfg.command](cfg)


# flags whose values may start with '-' (e.g. a window of -3,1,-3,3)
_SIGNED_VALUE_FLAGS = ("--window", "--T")


def _join_signed_values(argv: list) -> list:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = parser.parse_args(_join_signed_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SingularInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
