"""Command-line entry point: ``dispersive-lab <command> [options]``.

Commands
--------
check   hypothesis report (JSON)
evolve  u(t, .) as CSV ``x,re_u,im_u,abs_u`` or JSON
parts   I1, I2, I3 at (t, x) and the reconstruction residual (JSON)
bound   lemma constants (JSON) and the audit margin map (CSV)
decay   decay trace (CSV) and power-law fit (JSON)
demo    built-in data with their compliance verdicts (JSON)

With ``--out DIR`` artifacts are written there (all files appear together
or not at all); without it the primary artifact goes to stdout.

Exit status: 0 success, 2 hypotheses fail for a command that needs them,
1 any other error. Errors print one stderr line
``ERROR <code> <module> <message>`` where ``<code>`` is the error class.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import bounds, datum as datum_mod, decay, hypotheses, oscillatory, propagator
from .errors import HypothesisError, LabError, ParseError
from .fourier import DEFAULT_PLAN, TransformPlan
from .propagator import Grid

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2


def _num(v) -> str:
    # shortest repr that round-trips a double
    return repr(float(v))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_field_csv(path, name: str = "field") -> datum_mod.InitialDatum:
    """Load an ``evolve`` CSV back in as a tabulated datum."""
    xs, re, im = [], [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"x", "re_u", "im_u"} <= set(reader.fieldnames):
            raise ParseError(f"{path} is not an evolve CSV (need x,re_u,im_u columns)")
        for row in reader:
            xs.append(float(row["x"]))
            re.append(float(row["re_u"]))
            im.append(float(row["im_u"]))
    spec = datum_mod.parse_spec(
        {"name": name, "family": "tabulated", "samples": {"x": xs, "re": re, "im": im}}
    )
    return datum_mod.load(spec)


def _load_datum(args) -> datum_mod.InitialDatum:
    if args.spec:
        return datum_mod.load_file(args.spec)
    return datum_mod.builtin(args.datum)


def _plan(args, datum=None, t=0.0):
    """Explicit plan from --window/--points, else an adequate one for ``t``."""
    tol = args.tol if args.tol is not None else DEFAULT_PLAN.tolerance
    if args.window is None and args.points is None:
        if datum is None:
            return TransformPlan(tolerance=tol)
        return propagator.adequate_plan(datum, t, tol)
    return TransformPlan(
        args.window if args.window is not None else DEFAULT_PLAN.window_halfwidth,
        args.points if args.points is not None else DEFAULT_PLAN.n_points,
        tol,
    )


def _explicit_plan(args):
    return None if args.window is None and args.points is None else _plan(args)


def _t_grid(args):
    if args.t_steps < 1 or args.t_max < args.t_min:
        raise LabError("time range must be nonempty", module="cli")
    return np.linspace(args.t_min, args.t_max, args.t_steps)


def _x_grid(args):
    if args.x_steps < 1 or args.x_max < args.x_min:
        raise LabError("x range must be nonempty", module="cli")
    return Grid.span(args.x_min, args.x_max, args.x_steps)


def cmd_check(args):
    d = _load_datum(args)
    report = hypotheses.check(d, args.radius, _plan(args))
    return [("check.json", _json(report.to_json()))]


def cmd_evolve(args):
    d = _load_datum(args)
    plan = _plan(args, d, args.t)
    grid = _x_grid(args) if args.x_steps_given else None
    field = propagator.evolve(d, args.t, plan=plan, x_grid=grid)
    x, u = field.samples.grid, field.samples.values
    if args.format == "json":
        body = _json({"t": field.t, "x": x.tolist(), "re_u": u.real.tolist(), "im_u": u.imag.tolist()})
        return [("evolve.json", body)]
    rows = zip(x, u.real, u.imag, np.abs(u))
    return [("evolve.csv", _csv(["x", "re_u", "im_u", "abs_u"], rows))]


def cmd_parts(args):
    d = _load_datum(args)
    plan = _plan(args)
    report = hypotheses.check(d, args.radius, plan)
    p = oscillatory.parts(d, args.t, args.x, plan, report)
    out = {"parts": p.to_json()}
    if args.t != 0:
        rec = oscillatory.combine(p)
        grid = Grid(float(args.x), 1.0, 1)
        ev = complex(propagator.evolve(d, args.t, x_grid=grid).samples.values[0])
        out["reconstruct"] = {"re": rec.real, "im": rec.imag}
        out["evolve"] = {"re": ev.real, "im": ev.imag}
        out["residual"] = abs(rec - ev)
    return [("parts.json", _json(out))]


def cmd_bound(args):
    d = _load_datum(args)
    plan = _plan(args)
    report = hypotheses.check(d, args.radius, plan)
    consts = bounds.theorem_constant(d, args.radius, plan, report)
    audit = decay.audit_bound(d, consts, _t_grid(args), _x_grid(args), _explicit_plan(args), report)
    body = consts.to_json()
    body["audit_max_ratio"] = audit.max_ratio
    margin = _csv(["t", "x", "abs_u", "bound", "ratio"], audit.rows())
    return [("bound.json", _json(body)), ("bound_margin.csv", margin)]


def cmd_decay(args):
    d = _load_datum(args)
    if args.observable == "sup":
        obs = decay.WeightedSup(args.x_min, args.x_max, args.x_steps)
    else:
        obs = decay.AtPoint(args.x)
    tr = decay.trace(d, obs, _t_grid(args), _explicit_plan(args), args.source)
    body = _csv(["t", "magnitude", "observable", "datum"], tr.rows())
    f = decay.fit(tr, args.fit_t_min)
    fit_json = f.to_json()
    fit_json["source"] = tr.source
    return [("decay.csv", body), ("decay_fit.json", _json(fit_json))]


def cmd_demo(args):
    rows = []
    for name in datum_mod.BUILTIN_NAMES:
        report = hypotheses.check(datum_mod.builtin(name), args.radius)
        rows.append({"name": name, "compliant": report.compliant, "divergent": report.divergent()})
    return [("demo.json", _json(rows))]


COMMANDS = {
    "check": cmd_check,
    "evolve": cmd_evolve,
    "parts": cmd_parts,
    "bound": cmd_bound,
    "decay": cmd_decay,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dispersive-lab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=float, default=1.0, help="cutoff radius R of the origin region")
    common.add_argument("--window", type=float, help="physical half-window L")
    common.add_argument("--points", type=int, help="grid points (power of two)")
    common.add_argument("--tol", type=float, help="transform/quadrature tolerance")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output directory")

    with_datum = argparse.ArgumentParser(add_help=False, parents=[common])
    src = with_datum.add_mutually_exclusive_group(required=True)
    src.add_argument("--datum", choices=datum_mod.BUILTIN_NAMES, help="built-in datum")
    src.add_argument("--spec", help="JSON datum spec file")

    def ranges(p, t_min, t_max, t_steps):
        p.add_argument("--t-min", type=float, default=t_min)
        p.add_argument("--t-max", type=float, default=t_max)
        p.add_argument("--t-steps", type=int, default=t_steps)

    def xrange_(p, steps=201):
        p.add_argument("--x-min", type=float, default=-10.0)
        p.add_argument("--x-max", type=float, default=10.0)
        p.add_argument("--x-steps", type=int, default=None if steps is None else steps)

    sub.add_parser("check", parents=[with_datum], help="hypothesis report")

    p = sub.add_parser("evolve", parents=[with_datum], help="u(t, .) samples")
    p.add_argument("--t", type=float, required=True)
    xrange_(p, steps=None)

    p = sub.add_parser("parts", parents=[with_datum], help="I1, I2, I3 and reconstruction")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, default=0.0)

    p = sub.add_parser("bound", parents=[with_datum], help="lemma constants and bound audit")
    ranges(p, 1.0, 100.0, 50)
    xrange_(p)

    p = sub.add_parser("decay", parents=[with_datum], help="decay trace and fit")
    ranges(p, 10.0, 100.0, 25)
    xrange_(p)
    p.add_argument("--x", type=float, default=0.0, help="observation point for --observable point")
    p.add_argument("--observable", choices=("point", "sup"), default="point")
    p.add_argument("--source", choices=("evolve", "exact", "auto"), default="evolve")
    p.add_argument("--fit-t-min", type=float, default=10.0)

    sub.add_parser("demo", parents=[common], help="built-ins and their verdicts")
    return parser


def _write_atomic(outdir: Path, artifacts) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, body in artifacts:
            fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=outdir)
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(body)
            staged.append((tmp, outdir / name))
        for tmp, final in staged:
            os.replace(tmp, final)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)


def _error(exc: Exception, module: str) -> None:
    message = " ".join(str(exc).split())
    print(f"ERROR {type(exc).__name__} {module} {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "evolve":
        args.x_steps_given = args.x_steps is not None
    if getattr(args, "x_steps", 0) is None:
        args.x_steps = 201
    try:
        artifacts = COMMANDS[args.command](args)
    except HypothesisError as exc:
        _error(exc, exc.module)
        return EXIT_HYPOTHESIS
    except LabError as exc:
        _error(exc, exc.module)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        _error(exc, "cli")
        return EXIT_ERROR
    if args.out:
        try:
            _write_atomic(Path(args.out), artifacts)
        except OSError as exc:
            _error(exc, "cli")
            return EXIT_ERROR
    else:
        sys.stdout.write(artifacts[0][1])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
