"""Command-line interface: band edges, oracle verification, eigenfunctions, m scans, tables.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import oracle, qhj
from .potentials import Family, PotentialSpec, fundamental_period, susy_offset

SCHEMA_VERSION = 1
DEFAULT_MODES = 128
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def fmt(x: float) -> str:
    """Ten significant digits; rounding noise around zero prints as 0."""
    x = float(x)
    if abs(x) < 5e-13:
        x = 0.0
    return f"{x:.10g}"


def num(x: float) -> float:
    return float(fmt(x))


def default_modes() -> int:
    raw = os.environ.get("BANDEDGE_MODES")
    if raw is None or raw == "":
        return DEFAULT_MODES
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"BANDEDGE_MODES must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("BANDEDGE_MODES must be positive")
    return value


def make_spec(family: str, j: int, m: float, susy: bool) -> tuple[PotentialSpec, bool]:
    spec = PotentialSpec(family, j, m)
    if not susy:
        return spec, False
    off = susy_offset(spec)
    if not off.published:
        print(f"note: no published offset for {spec.family.value} j={spec.j}; using 0",
              file=sys.stderr)
    return spec.with_offset(off.value), off.published


@contextmanager
def output_stream(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def write_json(obj, path):
    with output_stream(path) as fh:
        fh.write(json.dumps(obj, indent=2, ensure_ascii=False))
        fh.write("\n")


def write_csv(header, rows, path):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    with output_stream(path) as fh:
        fh.write(buf.getvalue())


# ---------------------------------------------------------------------------


def cmd_band_edges(args) -> int:
    spec, published = make_spec(args.family, args.j, args.m, args.susy_shift)
    spectrum = qhj.full_spectrum(spec)
    rows = []
    for i, s in enumerate(spectrum):
        rows.append({
            "index": i,
            "energy": num(s.energy),
            "set_id": s.set_id,
            "alpha": s.alpha,
            "beta": s.beta,
            "n": s.family.n,
            "poly_coeffs": [num(c) for c in s.poly.coeffs],
            "total_zeros": s.total_zeros,
            "real_zeros": s.real_zeros_in_period,
        })
    if args.format == "json":
        write_json({
            "schema_version": SCHEMA_VERSION,
            "family": spec.family.value,
            "j": spec.j,
            "m": spec.m,
            "offset": num(spec.offset),
            "offset_published": published,
            "edges": rows,
        }, args.output)
    else:
        header = ["index", "energy", "set_id", "alpha", "beta", "n", "poly_coeffs",
                  "total_zeros", "real_zeros"]
        write_csv(header, [
            [r["index"], fmt(r["energy"]), r["set_id"], r["alpha"], r["beta"], r["n"],
             " ".join(fmt(c) for c in r["poly_coeffs"]), r["total_zeros"], r["real_zeros"]]
            for r in rows
        ], args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    modes = default_modes() if args.modes is None else args.modes
    if modes < 1:
        raise UsageError("--modes must be positive")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    spec, _ = make_spec(args.family, args.j, args.m, args.susy_shift)
    spectrum = qhj.full_spectrum(spec, census=False)
    report = oracle.verify(spec, spectrum, modes=modes, tol=args.tol)
    payload = {"schema_version": SCHEMA_VERSION, **report.to_dict()}
    payload["expected_phases"] = [oracle.expected_phase(i) for i in range(len(report.edges))]
    write_json(payload, args.output)
    if not report.passed:
        print(f"verification failed: unmatched energies {report.unmatched}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_eigenfunction(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be ≥ 1")
    spec, _ = make_spec(args.family, args.j, args.m, args.susy_shift)
    spectrum = qhj.full_spectrum(spec, census=False)
    if not 0 <= args.index < len(spectrum):
        raise UsageError(f"--index must lie in 0..{len(spectrum) - 1}")
    sol = spectrum[args.index]
    L = fundamental_period(spec)
    x = np.arange(args.samples) * (L / args.samples)
    psi = np.atleast_1d(sol(x))
    if args.format == "json":
        write_json({
            "schema_version": SCHEMA_VERSION,
            "family": spec.family.value,
            "j": spec.j,
            "m": spec.m,
            "index": args.index,
            "energy": num(sol.energy),
            "set_id": sol.set_id,
            "period": L,
            "x": [float(v) for v in x],
            "psi": [float(v) for v in psi],
        }, args.output)
    else:
        write_csv(["x", "psi"], [[repr(float(a)), repr(float(b))] for a, b in zip(x, psi)],
                  args.output)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be ≥ 1")
    ms = np.linspace(args.m_from, args.m_to, args.steps) if args.steps > 1 else np.array([args.m_from])
    rows = []
    for m in ms:
        spec, _ = make_spec(args.family, args.j, float(m), args.susy_shift)
        E = qhj.full_spectrum(spec, census=False).energies
        rows.append((float(m), E))
    ncols = 2 * args.j + 1
    header = ["m"] + [f"E{i}" for i in range(ncols)]
    if args.format == "json":
        write_json({
            "schema_version": SCHEMA_VERSION,
            "family": Family.parse(args.family).value,
            "j": args.j,
            "rows": [{"m": m, "energies": [num(e) for e in E]} for m, E in rows],
        }, args.output)
    else:
        write_csv(header, [[fmt(m)] + [fmt(e) for e in E] for m, E in rows], args.output)
    return EXIT_OK


def _frac(f) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def table_entry(family: Family, j: int) -> dict:
    spec = PotentialSpec(family, j, 0.5)
    N = j // 2 if j % 2 == 0 else (j - 1) // 2
    if family is Family.LAME:
        sets = sorted((f for f in qhj.all_residue_sets(spec) if f.lambda1 == j + 1),
                      key=lambda f: f.set_id)
    else:
        sets = qhj.enumerate_families(spec)
    solved = qhj.full_spectrum(spec, census=False)
    per_set = {f.set_id: 0 for f in sets}
    for s in solved:
        per_set[s.set_id] += 1
    rows = []
    for f in sets:
        rows.append({
            "set_id": f.set_id,
            "b1": _frac(f.b1),
            "d1": _frac(f.d1),
            "lambda1": f.lambda1,
            "n": f.n,
            "form": f.form if f.n >= 0 else None,
            "count": f.expected_count,
            "solved_count": per_set[f.set_id],
            "total_zeros": f.n + f.alpha,
        })
    return {
        "j": j,
        "j_parity": "even" if j % 2 == 0 else "odd",
        "N": N,
        "total": sum(r["count"] for r in rows),
        "sets": rows,
    }


def cmd_tables(args) -> int:
    if args.j_max < 1:
        raise UsageError("--j-max must be ≥ 1")
    payload = {"schema_version": SCHEMA_VERSION}
    for fam in (Family.LAME, Family.ASSOCIATED):
        payload[fam.value] = [table_entry(fam, j) for j in range(1, args.j_max + 1)]
    write_json(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_potential_args(p, with_m=True):
    p.add_argument("family", choices=["lame", "associated"])
    p.add_argument("j", type=int)
    if with_m:
        p.add_argument("m", type=float)
    p.add_argument("--susy-shift", action="store_true",
                   help="add the published constant that puts the lowest edge at 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lameqhj",
        description="Band edges of Lamé and associated Lamé potentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("band-edges", help="all 2j+1 band-edge energies and polynomials")
    _add_potential_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_band_edges)

    p = sub.add_parser("verify", help="check band edges against the plane-wave oracle")
    _add_potential_args(p)
    p.add_argument("--modes", type=int, default=None,
                   help="plane waves run from -N to N (default 128 or $BANDEDGE_MODES)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eigenfunction", help="sample one band-edge wavefunction over a period")
    _add_potential_args(p)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_eigenfunction)

    p = sub.add_parser("scan", help="band edges as a function of m")
    _add_potential_args(p, with_m=False)
    p.add_argument("--m-from", type=float, default=0.05)
    p.add_argument("--m-to", type=float, default=0.95)
    p.add_argument("--steps", type=int, default=19)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("tables", help="structure of the solution tables for j = 1..j-max")
    p.add_argument("--j-max", type=int, default=8)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
