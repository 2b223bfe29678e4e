"""Command line front end.

Exit codes: 0 success, 2 usage or parse error, 3 group closure bound hit,
4 a family equation check failed, 5 grid oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import report
from ._accel import BACKEND
from .bernstein import (
    CONVENTIONS,
    Cocharacter,
    InertialCase,
    family_sample,
    resolve_parameter,
)
from .errors import ClosureExceedsBound, ExtQuotError, GridNotStable
from .quotient import catalog_grid_census, decompose, grid_oracle, poincare_polynomial

log = logging.getLogger("extquot")

EXIT_USAGE = 2
EXIT_BOUND = 3
EXIT_FAMILY = 4
EXIT_ORACLE = 5


class UsageError(Exception):
    pass


def _error(msg: str, *args) -> None:
    # diagnostics always reach stderr, whatever logging setup the host has
    sys.stderr.write("extquot: " + (msg % args) + "\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_setup(path: str) -> report.SetupDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise report.DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return report.parse_setup(text)


def _case_from_args(args) -> InertialCase:
    if args.case is None:
        raise UsageError("--case is required")
    try:
        if args.case == "gl":
            return InertialCase.gl(args.m, args.r, args.q)
        return InertialCase(args.case, q=args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _t_values(args) -> list[complex]:
    if args.sweep:
        try:
            t0, t1, steps = args.sweep.split(":")
            steps = int(steps)
        except ValueError:
            raise UsageError("--sweep expects t0:t1:steps") from None
        if steps < 1:
            raise UsageError("--sweep needs at least one step")
        a, b = _parse_complex(t0), _parse_complex(t1)
        ts = [a + (b - a) * k / max(steps - 1, 1) for k in range(steps)]
    else:
        ts = [_parse_complex(args.t)]
    if any(t == 0 for t in ts):
        raise UsageError("t must be nonzero")
    return ts


def cmd_decompose(args) -> int:
    doc = _read_setup(args.input)
    setup = doc.build()
    cat = doc.case.catalog if doc.case is not None else decompose(setup)
    log.info("%s: group order %d, %d components", setup.label, setup.group.order, len(cat))
    out = {
        "schema": report.SCHEMA,
        "report": "decompose",
        "setup": report.document_for(setup, doc.case).to_dict(),
        "catalog": report.catalog_block(cat),
        "poincare": report.poincare_block(poincare_polynomial(setup)),
    }
    _emit(report.dumps(out), args.out)
    return 0


def cmd_family(args) -> int:
    case = _case_from_args(args)
    records = []
    for t in _t_values(args):
        log.info("sampling t=%s", t)
        records.append(report.family_record(
            family_sample(case, t, args.samples, args.seed, args.convention)
        ))
    out = {
        "schema": report.SCHEMA,
        "report": "family",
        "case": case.as_dict(),
        "convention": args.convention,
        "samples": args.samples,
        "seed": args.seed,
        "records": records,
    }
    _emit(report.dumps(out), args.out)
    bad = sum(1 for rec in records for p in rec["points"] if not p["flag"])
    if bad:
        _error("%d sampled image(s) failed the equation check", bad)
        return EXIT_FAMILY
    return 0


def cmd_poincare(args) -> int:
    doc = _read_setup(args.input)
    p = poincare_polynomial(doc.build())
    block = report.poincare_block(p)
    lines = [
        f"P(t) = {block['text']}",
        "coefficients: " + " ".join(block["coefficients"]),
        f"even: {block['even']}  odd: {block['odd']}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        Path(args.out).write_text(
            report.dumps({"schema": report.SCHEMA, "report": "poincare", **block}),
            encoding="utf-8",
        )
    return 0


def cmd_oracle(args) -> int:
    doc = _read_setup(args.input)
    setup = doc.build()
    log.info("grid N=%d over %d points, backend %s", args.grid, args.grid ** setup.rank, BACKEND)
    brute = grid_oracle(setup, args.grid)
    derived = catalog_grid_census(decompose(setup), args.grid)
    ok = brute.total == derived.total and brute.per_class == derived.per_class
    lines = [f"grid N={args.grid}  census {brute.total}  (decompose: {derived.total})"]
    for rep, count in brute.per_class.items():
        other = derived.per_class.get(rep, 0)
        lines.append(f"  class {rep}: oracle {count}  decompose {other}")
    lines.append("PASS" if ok else "FAIL")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        Path(args.out).write_text(report.dumps({
            "schema": report.SCHEMA,
            "report": "oracle",
            "oracle": report.census_block(brute),
            "decompose": report.census_block(derived),
            "pass": ok,
        }), encoding="utf-8")
    return 0 if ok else EXIT_ORACLE


def _plot_rows(case: InertialCase, t: complex, samples: int):
    """Raw h_c(t) x for a deterministic sweep of x on each non-ordinary component.

    Orbit canonicalization is skipped so curves stay on one sheet.
    """
    cat = case.catalog
    lams = np.linspace(0.25, 4.0, samples)
    for idx, comp in enumerate(cat):
        if idx == cat.ordinary_component_index:
            continue
        h = Cocharacter(comp.cocharacter)
        if comp.dimension == 0:
            xs = [comp.base_point()]
        else:
            xs = [comp.label_point(comp.component_orbit[0], (lam,) * comp.dimension)
                  for lam in lams]
        for x in xs:
            yield comp.name or str(idx), t, h.act(t, x).coords


def cmd_plotdata(args) -> int:
    case = _case_from_args(args)
    rows = []
    for t in _t_values(args):
        tt, _ = resolve_parameter(t, args.convention)
        rows.extend((name, t, coords) for name, _, coords in _plot_rows(case, tt, args.samples))
    rank = case.setup.rank
    names = ["x"] if rank == 1 else ["x", "y"] if rank == 2 else [f"z{i + 1}" for i in range(rank)]
    is_complex = any(abs(complex(t).imag) > 0 or any(abs(c.imag) > 1e-12 for c in coords)
                     for _, t, coords in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if is_complex:
        header = ["component", "t_re", "t_im"]
        for n in names:
            header += [f"{n}_re", f"{n}_im"]
        w.writerow(header)
        for name, t, coords in rows:
            row = [name, *report.cpx(t)]
            for c in coords:
                row += report.cpx(c)
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    else:
        w.writerow(["component", "t", *names])
        for name, t, coords in rows:
            w.writerow([name, repr(report._f(complex(t).real)),
                        *[repr(report._f(c.real)) for c in coords]])
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extquot", description=__doc__.splitlines()[0])
    p.add_argument("--tolerance", type=float, default=None,
                   help="point comparison tolerance (default 1e-9, env EXTQUOT_TOLERANCE)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="component catalog of X//G")
    d.add_argument("--input", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    def case_flags(sp):
        sp.add_argument("--case", choices=["gl", "sl2", "g2"], required=True)
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--r", type=int, default=2)
        sp.add_argument("--q", type=float, default=9.0)
        sp.add_argument("--t", default="1")
        sp.add_argument("--sweep", help="t0:t1:steps")
        sp.add_argument("--convention", choices=CONVENTIONS, default="t_squared")
        sp.add_argument("--out")

    f = sub.add_parser("family", help="sample the deformed projections pi_t")
    case_flags(f)
    f.add_argument("--samples", type=int, default=4)
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(func=cmd_family)

    pp = sub.add_parser("poincare", help="Poincare polynomial of H*(X//G)")
    pp.add_argument("--input", required=True)
    pp.add_argument("--out")
    pp.set_defaults(func=cmd_poincare)

    o = sub.add_parser("oracle", help="brute-force grid census vs decompose")
    o.add_argument("--input", required=True)
    o.add_argument("--grid", type=int, default=2)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    pl = sub.add_parser("plotdata", help="CSV point clouds of X_t")
    case_flags(pl)
    pl.add_argument("--samples", type=int, default=16)
    pl.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="extquot: %(message)s", stream=sys.stderr)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be at least 1")
    saved = os.environ.get("EXTQUOT_TOLERANCE")
    if args.tolerance is not None:
        if not args.tolerance > 0:
            parser.error("--tolerance must be positive")
        os.environ["EXTQUOT_TOLERANCE"] = repr(args.tolerance)
    try:
        return args.func(args)
    except report.DocumentError as exc:
        _error("parse error: %s", exc)
        return EXIT_USAGE
    except (UsageError, GridNotStable) as exc:
        _error("%s", exc)
        return EXIT_USAGE
    except ClosureExceedsBound as exc:
        _error("closure bound exceeded: %s", exc)
        return EXIT_BOUND
    except ExtQuotError as exc:
        _error("%s: %s", type(exc).__name__, exc)
        return EXIT_USAGE
    finally:
        if args.tolerance is not None:
            if saved is None:
                os.environ.pop("EXTQUOT_TOLERANCE", None)
            else:
                os.environ["EXTQUOT_TOLERANCE"] = saved


if __name__ == "__main__":
    sys.exit(main())
