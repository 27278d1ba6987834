"""Command-line interface.

    poncelet-loci caustic --a 2 --b 1
    poncelet-loci orbit   --a 2 --b 1 --t 0.3
    poncelet-loci locus   --a 2 --b 1 --center circumcenter,centroid --n 720 \\
                          --json out.json --csv out.csv --svg out.svg
    poncelet-loci verify  [--json report.json] [--seed 0] [--tol closure=1e-9]
    poncelet-loci cp2 foci|tangents|check-confocal --a 5 --b 3 [--lam 5]

Exit status: 0 ok, 1 domain error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import cp2
from .acceptance import DEFAULT_TOLERANCES, run_all
from .billiards import (
    find_caustic,
    orbit_tangency_defect,
    poncelet_triangle,
    reflection_residual,
)
from .centers import CenterKind
from .conic_core import Ellipse
from .errors import GeometryError
from .locus import LocusReport, locus_report

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
SCHEMA_VERSION = 1
MIN_N = 64


def fmt(x: float) -> str:
    return format(x, ".17g")


@dataclass
class RunConfig:
    a: float = 2.0
    b: float = 1.0
    centers: list[CenterKind] = field(default_factory=lambda: [CenterKind.CIRCUMCENTER])
    n: int = 720
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    json_path: str | None = None
    csv_path: str | None = None
    svg_path: str | None = None
    seed: int = 0

    def validate(self) -> None:
        if not (self.a >= self.b > 0) or not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"need finite a >= b > 0, got a={self.a}, b={self.b}")
        if self.n < MIN_N:
            raise ValueError(f"--n must be at least {MIN_N}, got {self.n}")
        for name, value in self.tolerances.items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be positive, got {value}")


def _parse_tol(items, parser) -> dict[str, float]:
    tols = dict(DEFAULT_TOLERANCES)
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_TOLERANCES:
            parser.error(f"--tol expects NAME=VALUE with NAME in {sorted(DEFAULT_TOLERANCES)}, got {item!r}")
        try:
            tols[name] = float(value)
        except ValueError:
            parser.error(f"--tol {name}: not a number: {value!r}")
    return tols


def _parse_centers(text, parser) -> list[CenterKind]:
    kinds = []
    for part in text.split(","):
        try:
            kinds.append(CenterKind(part.strip()))
        except ValueError:
            parser.error(f"unknown center kind {part!r}; choose from {[k.value for k in CenterKind]}")
    return kinds


def _clean(x):
    """JSON-safe float (NaN/inf become null)."""
    return x if isinstance(x, float) and math.isfinite(x) else (None if isinstance(x, float) else x)


def report_to_json(rep: LocusReport, tolerances: dict) -> dict:
    cls = rep.conic_class
    return {
        "schema": SCHEMA_VERSION,
        "ellipse": {"a": rep.ellipse.a, "b": rep.ellipse.b},
        "center_kind": rep.kind.value,
        "n": rep.n,
        "caustic": {
            "lambda": rep.caustic.lambda_star,
            "a": rep.caustic.caustic.a,
            "b": rep.caustic.caustic.b,
        },
        "fit": None if rep.fit is None else [float(c) for c in rep.fit.as_array()],
        "class": None if cls is None else {
            "kind": cls.kind,
            "center": None if cls.center is None else [cls.center.x, cls.center.y],
            "axis_angle": _clean(cls.axis_angle),
            "semi_major": _clean(cls.semi_major),
            "semi_minor": _clean(cls.semi_minor),
        },
        "max_residual": rep.max_residual,
        "symmetry_defect": rep.symmetry_defect,
        "foci_line_points": None if rep.foci_line_points is None
        else [[p.x, p.y] for p in rep.foci_line_points],
        "collapsed": rep.collapsed,
        "tolerances": dict(tolerances),
    }


def write_samples_csv(rep: LocusReport, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "y"])
        for t, p in rep.samples:
            w.writerow([fmt(t), fmt(p.x), fmt(p.y)])


def read_samples_csv(path: str) -> list[tuple[float, float, float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != ["t", "x", "y"]:
            raise ValueError(f"unexpected CSV header {header}")
        return [(float(t), float(x), float(y)) for t, x, y in r]


def _per_kind_path(path: str | None, kind: CenterKind, many: bool) -> str | None:
    if path is None or not many:
        return path
    stem, dot, ext = path.rpartition(".")
    return f"{stem}.{kind.value}.{ext}" if dot else f"{path}.{kind.value}"


def _write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, allow_nan=False)
        fh.write("\n")


def cmd_caustic(cfg: RunConfig, args) -> int:
    E = Ellipse(cfg.a, cfg.b)
    res = find_caustic(E, cfg.tolerances["caustic"])
    print(f"lambda\t{fmt(res.lambda_star)}")
    print(f"caustic_a\t{fmt(res.caustic.a)}")
    print(f"caustic_b\t{fmt(res.caustic.b)}")
    print(f"residual\t{fmt(res.residual_at_solution)}")
    print(f"bracket\t{fmt(res.bracket[0])}\t{fmt(res.bracket[1])}")
    if cfg.json_path:
        _write_json({"schema": SCHEMA_VERSION, "ellipse": {"a": E.a, "b": E.b},
                     "caustic": {"lambda": res.lambda_star, "a": res.caustic.a, "b": res.caustic.b},
                     "residual": res.residual_at_solution, "bracket": list(res.bracket)}, cfg.json_path)
    return EXIT_OK


def cmd_orbit(cfg: RunConfig, args) -> int:
    E = Ellipse(cfg.a, cfg.b)
    res = find_caustic(E, cfg.tolerances["caustic"])
    o = poncelet_triangle(E, res.caustic, args.t)
    for i, (t, v) in enumerate(zip(o.ts, o.vertices), 1):
        print(f"v{i}\tt={fmt(t)}\tx={fmt(v.x)}\ty={fmt(v.y)}")
    refl = reflection_residual(E, o)
    tang = orbit_tangency_defect(res.caustic, o)
    print(f"closure_residual\t{fmt(o.closure_residual)}")
    print(f"reflection_residual\t{fmt(refl)}")
    print(f"tangency_defect\t{fmt(tang)}")
    if cfg.json_path:
        _write_json({"schema": SCHEMA_VERSION, "ellipse": {"a": E.a, "b": E.b},
                     "t": list(o.ts), "vertices": [[v.x, v.y] for v in o.vertices],
                     "closure_residual": o.closure_residual, "reflection_residual": refl,
                     "tangency_defect": tang}, cfg.json_path)
    return EXIT_OK


def cmd_locus(cfg: RunConfig, args) -> int:
    E = Ellipse(cfg.a, cfg.b)
    caustic = find_caustic(E, cfg.tolerances["caustic"])
    many = len(cfg.centers) > 1
    for kind in cfg.centers:
        rep = locus_report(E, kind, cfg.n, caustic)
        if rep.collapsed:
            print(f"{kind.value}\tcollapsed\tpoint=({fmt(rep.samples[0][1].x)}, {fmt(rep.samples[0][1].y)})")
        else:
            c = rep.conic_class
            print(f"{kind.value}\t{c.kind}\tmax_residual={fmt(rep.max_residual)}"
                  f"\tsymmetry_defect={fmt(rep.symmetry_defect)}"
                  f"\tsemi_axes=({fmt(c.semi_major)}, {fmt(c.semi_minor)})")
        path = _per_kind_path(cfg.json_path, kind, many)
        if path:
            _write_json(report_to_json(rep, cfg.tolerances), path)
        path = _per_kind_path(cfg.csv_path, kind, many)
        if path:
            write_samples_csv(rep, path)
        path = _per_kind_path(cfg.svg_path, kind, many)
        if path:
            from .plotting import save_locus_figure

            save_locus_figure(rep, path)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    results = run_all(cfg.tolerances, seed=cfg.seed)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    if cfg.json_path:
        _write_json({
            "schema": SCHEMA_VERSION,
            "seed": cfg.seed,
            "tolerances": cfg.tolerances,
            "criteria": [{"name": r.name, "passed": r.passed, "details": r.details} for r in results],
            "passed": not failed,
        }, cfg.json_path)
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _conic_from_args(args, parser) -> tuple[Fraction, Fraction]:
    try:
        a2 = Fraction(args.a2) if args.a2 is not None else Fraction(args.a) ** 2
        b2 = Fraction(args.b2) if args.b2 is not None else Fraction(args.b) ** 2
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(f"cp2 needs exact rational axes: {exc}")
    return a2, b2


def _affine_str(p: cp2.HPoint) -> str:
    if not p.is_finite:
        return "[" + " : ".join(str(v) for v in p.canonical()) + "]"
    x, y = p.affine()
    return f"({x}, {y})"


def _line_str(l: cp2.HLine) -> str:
    u, v, w = l.canonical()
    terms = []
    for c, var in ((u, "x"), (v, "y"), (w, "z")):
        if not c.is_zero():
            terms.append(f"({c}){var}")
    return " + ".join(terms) + " = 0"


def cmd_cp2(args, parser) -> int:
    a2, b2 = _conic_from_args(args, parser)
    C = cp2.ConicMat.ellipse(a2, b2)
    if args.query == "tangents":
        for l in cp2.isotropic_tangents(C):
            print(f"{_line_str(l)}\t{' '.join(v.pair() for v in l.canonical())}")
        return EXIT_OK
    if args.query == "foci":
        for p in cp2.foci(C):
            if p.is_finite:
                x, y = p.affine()
                print(f"{_affine_str(p)}\tx={x.pair()}\ty={y.pair()}")
            else:
                print(_affine_str(p))
        return EXIT_OK
    # check-confocal
    if args.lam is None:
        parser.error("check-confocal needs --lam")
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        parser.error(f"--lam must be rational, got {args.lam!r}")
    if not (lam < b2):
        raise GeometryError(f"confocal parameter must be below b^2 = {b2}, got {lam}")
    other = cp2.ConicMat.ellipse(a2 - lam, b2 - lam)
    same = set(cp2.isotropic_tangents(C)) == set(cp2.isotropic_tangents(other))
    print(f"E(a^2={a2}, b^2={b2}) vs E(a^2={a2 - lam}, b^2={b2 - lam}): "
          f"{'same isotropic tangents' if same else 'DIFFERENT isotropic tangents'}")
    return EXIT_OK if same else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=2.0, help="semi-major axis")
    common.add_argument("--b", type=float, default=1.0, help="semi-minor axis")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a named tolerance")
    common.add_argument("--json", dest="json_path", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="poncelet-loci", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("caustic", parents=[common], help="solve for the caustic of 3-periodic orbits")
    p = sub.add_parser("orbit", parents=[common], help="print the orbit starting at P(t)")
    p.add_argument("--t", type=float, required=True)
    p = sub.add_parser("locus", parents=[common], help="sample, fit and classify center loci")
    p.add_argument("--center", default="circumcenter", help="comma-separated center kinds")
    p.add_argument("--n", type=int, default=720)
    p.add_argument("--csv", dest="csv_path", metavar="PATH")
    p.add_argument("--svg", dest="svg_path", metavar="PATH")
    sub.add_parser("verify", parents=[common], help="run the acceptance checks")

    p = sub.add_parser("cp2", help="exact complex projective queries")
    p.add_argument("query", choices=["foci", "tangents", "check-confocal"])
    p.add_argument("--a", type=str, default="5", help="semi-major axis (rational)")
    p.add_argument("--b", type=str, default="3", help="semi-minor axis (rational)")
    p.add_argument("--a2", type=str, help="squared semi-major axis, overrides --a")
    p.add_argument("--b2", type=str, help="squared semi-minor axis, overrides --b")
    p.add_argument("--lam", type=str, help="confocal shift for check-confocal")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cp2":
            return cmd_cp2(args, parser)
        cfg = RunConfig(
            a=args.a,
            b=args.b,
            tolerances=_parse_tol(args.tol, parser),
            json_path=args.json_path,
            seed=args.seed,
        )
        if args.command == "locus":
            cfg.centers = _parse_centers(args.center, parser)
            cfg.n = args.n
            cfg.csv_path = args.csv_path
            cfg.svg_path = args.svg_path
        try:
            cfg.validate()
        except ValueError as exc:
            parser.error(str(exc))
        handler = {"caustic": cmd_caustic, "orbit": cmd_orbit, "locus": cmd_locus, "verify": cmd_verify}
        return handler[args.command](cfg, args)
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
