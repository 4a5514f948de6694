"""Command-line front end.

Exit status is 0 on success, 1 when an input fails validation or a pipeline
step fails, and 2 on usage errors (bad flags, missing files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .analysis import properness_verdict
from .construct import cone_pipeline, unfolded_congruence_defect
from .export import crease_pattern_svg, folded_obj
from .folding import crease_edge_count, fold_loop, validate_folding
from .generators import TorusParams, torus_folding
from .geometry import GeometryError, Tolerance, use_tolerance
from .knotid import certify, certify_diagram


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("ORIKAMI_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ORIKAMI_SEED must be an integer, got {raw!r}")


def _emit(data: dict, out: str | None):
    if out:
        io.write_json(out, data)
    else:
        sys.stdout.write(io.dumps(data))


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    return p


# --------------------------------------------------------------------------


def cmd_validate(args) -> int:
    f = io.read_folding(_existing(args.folding))
    report = validate_folding(f, strict=args.strict)
    out = report.to_dict()
    out["format"] = io.FORMAT
    out["crease_count"] = crease_edge_count(f)
    _emit(out, None)
    return 0 if report.valid else 1


def cmd_fold(args) -> int:
    f = io.read_folding(_existing(args.folding))
    loop = io.read_loop(_existing(args.loop))
    pl = fold_loop(f, loop)
    _emit(io.polyline_to_dict(pl), args.output)
    return 0


def _polyline_from(path: Path):
    if path.is_dir():
        f = io.read_folding(_existing(str(path / "folding.json")))
        loop = io.read_loop(_existing(str(path / "loop.json")))
        return fold_loop(f, loop)
    data = io.read_json(path)
    if "face_maps" in data:
        raise UsageError(f"{path} is a folding; run 'fold' first or pass the output directory")
    return io.polyline_from_dict(data)


def cmd_identify(args) -> int:
    pl = _polyline_from(_existing(args.polyline))
    seed = _default_seed() if args.seed is None else args.seed
    report = certify(pl, seed=seed)
    _emit(report.to_dict(), args.output)
    return 0


def _write_triple(outdir: str, folding, loop, report: dict):
    d = Path(outdir)
    io.write_json(d / "folding.json", io.folding_to_dict(folding))
    io.write_json(d / "loop.json", io.loop_to_dict(loop))
    io.write_json(d / "report.json", report)


def cmd_construct(args) -> int:
    sticks = io.read_sticks(_existing(args.sticks))
    seed = _default_seed() if args.seed is None else args.seed
    r = cone_pipeline(sticks)
    pl = fold_loop(r.folding, r.loop)
    rep = certify(pl, seed=seed)
    ref = certify_diagram(sticks.reference_diagram())
    report = rep.to_dict()
    report.update(
        {
            "crease_count": crease_edge_count(r.folding),
            "apex": r.cone.apex.tolist(),
            "angle_residual": r.cone.residual,
            "congruence_defect": unfolded_congruence_defect(r),
            "scale": r.unfolding.scale,
            "image_injective": bool(pl.injective),
            "reference": ref.to_dict(),
            "matches_reference": rep.same_knot_invariants(ref),
        }
    )
    _write_triple(args.output, r.folding, r.loop, report)
    sys.stdout.write(io.dumps(report))
    return 0 if report["matches_reference"] else 1


def cmd_torus(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    params = TorusParams(n=args.n)
    f, loop = torus_folding(params)
    pl = fold_loop(f, loop)
    rep = certify(pl, seed=seed)
    report = rep.to_dict()
    report.update(
        {
            "crease_count": crease_edge_count(f),
            "n": args.n,
            "expected_determinant": 2 * args.n + 3,
            "image_injective": bool(pl.injective),
        }
    )
    _write_triple(args.output, f, loop, report)
    sys.stdout.write(io.dumps(report))
    return 0


def cmd_analyze(args) -> int:
    f = io.read_folding(_existing(args.folding))
    _emit(properness_verdict(f).to_dict(), args.output)
    return 0


def cmd_export_svg(args) -> int:
    f = io.read_folding(_existing(args.folding))
    loop = io.read_loop(_existing(args.loop)) if args.loop else None
    io.write_text(args.output, crease_pattern_svg(f, loop))
    return 0


def cmd_export_obj(args) -> int:
    f = io.read_folding(_existing(args.folding))
    loop = io.read_loop(_existing(args.loop)) if args.loop else None
    io.write_text(args.output, folded_obj(f, loop))
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orikami", description="Knots in folded paper.")
    ap.add_argument("--tolerance", type=float, default=1.0, metavar="SCALE", help="scale geometric and isometry tolerances")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a folding's face maps and creases")
    p.add_argument("folding")
    p.add_argument("--strict", action="store_true", help="also flag creases across which nothing folds")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fold", help="map a paper loop through a folding")
    p.add_argument("--folding", required=True)
    p.add_argument("--loop", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("identify", help="certify the knot type of a spatial polyline")
    p.add_argument("polyline", help="polyline JSON, or a directory holding folding.json and loop.json")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("construct", help="cone folding realising a stick diagram")
    p.add_argument("--sticks", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("torus", help="two-crease folding carrying the (2, 2n+3) torus knot")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("analyze", help="classify self-intersections and properness")
    p.add_argument("folding")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    for name, func, what in (("export-svg", cmd_export_svg, "crease pattern drawing"), ("export-obj", cmd_export_obj, "folded mesh")):
        p = sub.add_parser(name, help=what)
        p.add_argument("folding")
        p.add_argument("--loop")
        p.add_argument("-o", "--output", required=True)
        p.set_defaults(func=func)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.tolerance <= 0:
            raise UsageError("--tolerance must be positive")
        with use_tolerance(Tolerance().scaled(args.tolerance)):
            return args.func(args)
    except UsageError as exc:
        print(f"orikami: error: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"orikami: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
