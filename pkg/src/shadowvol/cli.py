"""Command-line front end.

Exit codes: 0 success, 2 diagram/parse error, 3 arc colors violate a
crossing relation, 4 no valid region coloring or p, 5 a pipeline check
failed (residuals, cross-ratios, non-degeneracy, invariance).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coloring import (
    ShadowColoring,
    check_lemma1,
    find_p,
    find_region_coloring,
    verify_arc_coloring,
)
from .diagram import LinkDiagram, format_pd, parse_diagram
from .errors import (
    ArcColoringError,
    ColoringSearchError,
    DiagramError,
    PipelineCheckError,
    ShadowVolError,
)
from .potential import build_potential, cut_distance, format_potential, grad_W, numeric_gradient
from .quandle import ParabolicElement, parabolic_from_pair
from .volume import complex_volume, mod_pi2_distance

log = logging.getLogger("shadowvol")

EXIT_OK, EXIT_PARSE, EXIT_ARC, EXIT_COLORING, EXIT_CHECK = 0, 2, 3, 4, 5


@dataclass
class JobInput:
    name: str
    diagram: LinkDiagram
    arc_colors: list
    region_seed: tuple | None  # (region index, ParabolicElement)
    p: ParabolicElement | None
    rng_seed: int = 0
    tolerance: float = 1e-9


def _pair_out(z):
    z = complex(z)
    return [z.real, z.imag]


def _color_out(x: ParabolicElement):
    return [_pair_out(x.alpha), _pair_out(x.beta)]


def _read_diagram_text(spec, base: Path) -> str:
    if isinstance(spec, str):
        return spec
    if isinstance(spec, list) and all(isinstance(x, str) for x in spec):
        return "\n".join(spec)
    if isinstance(spec, dict) and "file" in spec:
        return (base / spec["file"]).read_text()
    raise DiagramError("'diagram' must be PD text, a list of lines or {\"file\": path}")


def load_job(path_or_dict, base: Path | None = None) -> JobInput:
    """Read a job document; raises DiagramError for anything malformed."""
    if isinstance(path_or_dict, dict):
        doc, base = path_or_dict, base or Path.cwd()
    else:
        path = Path(path_or_dict)
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as ex:
            raise DiagramError(f"cannot read job file {path}: {ex}") from None
        base = path.parent
    try:
        text = _read_diagram_text(doc["diagram"], base)
        labels = doc.get("labels", {})
        arc_labels = labels.get("arcs")
        region_labels = labels.get("regions")
        if region_labels is not None:
            region_labels = [(int(c) - 1, str(s)) for c, s in region_labels]
        diagram = parse_diagram(text, arc_labels, region_labels)

        colors = [None] * diagram.n_arcs
        for entry in doc["arc_colors"]:
            if isinstance(entry, dict):
                arc_id, alpha, beta = entry["arc"], entry["alpha"], entry["beta"]
            else:
                arc_id, alpha, beta = entry
            if not 1 <= int(arc_id) <= diagram.n_arcs:
                raise DiagramError(f"arc id {arc_id} out of range 1..{diagram.n_arcs}")
            colors[int(arc_id) - 1] = parabolic_from_pair((alpha, beta))
        missing = [i + 1 for i, c in enumerate(colors) if c is None]
        if missing:
            raise DiagramError(f"arc colors missing for arcs {missing}")

        seed = doc.get("region_seed")
        if seed is not None:
            seed = (int(seed["region"]) - 1, parabolic_from_pair(seed["color"]))
        p = doc.get("p")
        if p is not None:
            p = parabolic_from_pair(p)
        return JobInput(
            name=doc.get("name", "job"),
            diagram=diagram,
            arc_colors=colors,
            region_seed=seed,
            p=p,
            rng_seed=int(doc.get("rng_seed", 0)),
            tolerance=float(doc.get("tolerance", 1e-9)),
        )
    except (KeyError, TypeError, ValueError) as ex:
        raise DiagramError(f"malformed job document: {ex!r}") from None


def build_coloring(job: JobInput, rng_seed=None, use_seeds=True) -> ShadowColoring:
    seed = job.rng_seed if rng_seed is None else rng_seed
    if use_seeds and job.region_seed is not None:
        region = find_region_coloring(
            job.diagram, job.arc_colors, seed_region=job.region_seed[0], seed_color=job.region_seed[1]
        )
    else:
        region = find_region_coloring(job.diagram, job.arc_colors, rng_seed=seed)
    p = find_p(job.arc_colors, region, rng_seed=seed, candidate=job.p if use_seeds else None)
    return ShadowColoring(tuple(job.arc_colors), tuple(region), p)


def run(job: JobInput, verify_gradient=False, random_colorings=0, seed=None, tolerance=None) -> dict:
    """Full pipeline; returns the JSON-ready report or raises ShadowVolError."""
    tol = job.tolerance if tolerance is None else tolerance
    rng_seed = job.rng_seed if seed is None else seed
    diagram = job.diagram
    arc_check = verify_arc_coloring(diagram, job.arc_colors, tol)
    pf = build_potential(diagram)
    report_extra = {}
    if verify_gradient:
        report_extra["gradient_check"] = gradient_check(pf, rng_seed)
        if not report_extra["gradient_check"]["passed"]:
            raise PipelineCheckError("gradient", "analytic gradient disagrees with finite differences")
    coloring = build_coloring(job, rng_seed)
    report = complex_volume(diagram, coloring, pf, tolerance=tol, sign_choices=arc_check.signs)
    out = {
        "name": job.name,
        "diagram": diagram.summary(),
        "arc_colors": [_color_out(a) for a in coloring.arc],
        "region_colors": [_color_out(s) for s in coloring.region],
        "p": _color_out(coloring.p),
        **report.to_dict(),
        **report_extra,
    }
    if random_colorings:
        runs = []
        for i in range(random_colorings):
            col = build_coloring(job, rng_seed + 1 + i, use_seeds=False)
            r = complex_volume(diagram, col, pf, tolerance=tol)
            runs.append({"rng_seed": rng_seed + 1 + i, "vol": r.vol, "cs": r.cs, "max_residual": r.max_residual})
        dv = max(abs(r["vol"] - report.vol) for r in runs)
        dcs = max(mod_pi2_distance(r["cs"], report.cs) for r in runs)
        out["random_colorings"] = {"runs": runs, "max_vol_spread": dv, "max_cs_spread": dcs}
        agree_tol = max(tol, 1e-8)
        if dv > agree_tol or dcs > agree_tol:
            raise PipelineCheckError(
                "invariance", f"complex volume varies across colorings (vol {dv:.2e}, cs {dcs:.2e})"
            )
    return out


def random_regular_point(pf, rng, margin=1e-3):
    """Random complex point whose Li2/log arguments all stay ``margin`` away from their cuts."""
    while True:
        w = rng.normal(size=pf.n_vars) + 1j * rng.normal(size=pf.n_vars)
        if cut_distance(pf, w) > margin:
            return w


def gradient_check(pf, rng_seed=0, n_points=10, rel_tol=1e-6) -> dict:
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(n_points):
        w = random_regular_point(pf, rng)
        g = grad_W(pf, w)
        g_re, g_im = numeric_gradient(pf, w)
        for fd in (g_re, g_im):
            worst = max(worst, float(np.max(np.abs(fd - g) / np.maximum(1.0, np.abs(g)))))
    return {"points": n_points, "max_relative_error": worst, "passed": worst < rel_tol}


def exit_code_for(ex: ShadowVolError) -> int:
    if isinstance(ex, DiagramError):
        return EXIT_PARSE
    if isinstance(ex, ArcColoringError):
        return EXIT_ARC
    if isinstance(ex, ColoringSearchError):
        return EXIT_COLORING
    return EXIT_CHECK


def summary_text(rep: dict) -> str:
    d = rep["diagram"]
    lines = [
        f"job: {rep['name']}",
        f"diagram: {d['crossings']} crossings, {d['regions']} regions, {d['arcs']} arcs",
        "w0 = (" + ", ".join(_fmt_c(complex(*z)) for z in rep["w0"]) + ")",
        f"max residual: {rep['max_residual']:.3e}",
        f"cross-ratio identities: {len(rep['cross_ratio_checks'])} checked, "
        f"max error {rep['max_cross_ratio_error']:.3e}",
        f"non-degeneracy: {'pass' if rep['nondegeneracy']['passed'] else 'FAIL'}",
        f"W0 = {_fmt_c(complex(*rep['W0_raw']))}",
        f"vol = {_fmt_r(rep['vol'])}",
        f"cs  = {_fmt_r(rep['cs'])}  (mod pi^2)",
    ]
    if "random_colorings" in rep:
        rc = rep["random_colorings"]
        lines.append(
            f"random colorings: {len(rc['runs'])} runs, vol spread {rc['max_vol_spread']:.2e}, "
            f"cs spread {rc['max_cs_spread']:.2e}"
        )
    return "\n".join(lines)


def _fmt_r(x: float) -> str:
    return f"{round(x, 12) + 0.0:.12f}"


def _fmt_c(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)


def _write_json(obj, path):
    text = dump_json(obj) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_parse(args) -> int:
    job_or_diagram = _load_diagram_only(args.job)
    summary = job_or_diagram.summary()
    print(f"{summary['crossings']} crossings, {summary['regions']} regions, {summary['arcs']} arcs")
    for j, (s, q) in enumerate(zip(summary["signs"], summary["quadrants"])):
        slots = " ".join(f"{k}=w{v}" for k, v in q.items())
        print(f"  crossing {j + 1}: sign {s:+d}  {slots}")
    if args.json:
        _write_json(summary, args.json)
    return EXIT_OK


def _load_diagram_only(path) -> LinkDiagram:
    path = Path(path)
    if path.suffix == ".json":
        return load_job(path).diagram
    try:
        return parse_diagram(path.read_text())
    except OSError as ex:
        raise DiagramError(f"cannot read {path}: {ex}") from None


def cmd_color(args) -> int:
    job = load_job(args.job)
    seed = job.rng_seed if args.seed is None else args.seed
    verify_arc_coloring(job.diagram, job.arc_colors, args.tolerance or job.tolerance)
    coloring = build_coloring(job, seed, use_seeds=args.seed is None)
    ok = check_lemma1(job.diagram, coloring.arc, coloring.region)
    for k, s in enumerate(coloring.region):
        print(f"s{k + 1} = ({_fmt_c(s.alpha)}, {_fmt_c(s.beta)})")
    print(f"p  = ({_fmt_c(coloring.p.alpha)}, {_fmt_c(coloring.p.beta)})")
    print(f"hopf-distinctness: {'pass' if ok else 'FAIL'}")
    if args.json:
        _write_json(
            {
                "region_colors": [_color_out(s) for s in coloring.region],
                "p": _color_out(coloring.p),
                "hopf_distinct": bool(ok),
            },
            args.json,
        )
    return EXIT_OK if ok else EXIT_COLORING


def cmd_potential(args) -> int:
    diagram = _load_diagram_only(args.job)
    pf = build_potential(diagram)
    print(format_potential(pf))
    if args.verify_gradient:
        chk = gradient_check(pf, args.seed or 0)
        print(f"gradient check: max relative error {chk['max_relative_error']:.2e}")
        if not chk["passed"]:
            return EXIT_CHECK
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.batch:
        return _batch(args)
    job = load_job(args.job)
    if args.print_potential:
        print(format_potential(build_potential(job.diagram)))
    rep = run(
        job,
        verify_gradient=args.verify_gradient,
        random_colorings=args.random_colorings,
        seed=args.seed,
        tolerance=args.tolerance,
    )
    print(summary_text(rep))
    if args.json:
        _write_json(rep, args.json)
    return EXIT_OK


def _batch(args) -> int:
    paths = sorted(Path(args.batch).glob("*.json"))

    def one(path):
        try:
            rep = run(load_job(path), args.verify_gradient, args.random_colorings, args.seed, args.tolerance)
            return path.name, EXIT_OK, rep
        except ShadowVolError as ex:
            return path.name, exit_code_for(ex), {"error": str(ex), "stage": ex.stage}

    with ThreadPoolExecutor() as pool:
        results = list(pool.map(one, paths))
    worst = EXIT_OK
    for name, code, rep in results:
        status = "ok" if code == 0 else f"exit {code}: {rep['error']}"
        vol = f"vol={round(rep['vol'], 10) + 0.0:.10f} cs={round(rep['cs'], 10) + 0.0:.10f}" if code == 0 else ""
        print(f"{name}\t{status}\t{vol}")
        worst = max(worst, code)
    if args.json:
        _write_json({name: rep for name, _, rep in results}, args.json)
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shadowvol",
        description="Complex volume of a boundary-parabolic representation from an arc-colored link diagram.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a diagram and list regions, arcs, signs")
    p.add_argument("job", help="job JSON or PD text file")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("color", help="build a shadow-coloring")
    p.add_argument("job")
    p.add_argument("--seed", type=int, default=None, help="ignore the job's seeds and search with this rng seed")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("potential", help="print the potential function")
    p.add_argument("job")
    p.add_argument("--print-potential", action="store_true", help="accepted for symmetry with solve")
    p.add_argument("--verify-gradient", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_potential)

    for name in ("solve", "run"):
        p = sub.add_parser(name, help="full pipeline: solution, checks, complex volume")
        p.add_argument("job", nargs="?")
        p.add_argument("--verify-gradient", action="store_true")
        p.add_argument("--print-potential", action="store_true")
        p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--random-colorings", type=int, default=0, metavar="K")
        p.add_argument("--batch", metavar="DIR", help="run every *.json job in DIR")
        p.set_defaults(func=cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "job", None) is None and not getattr(args, "batch", None):
        print("error: a job file or --batch DIR is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ShadowVolError as ex:
        print(f"error [{ex.stage}]: {ex}", file=sys.stderr)
        return exit_code_for(ex)


if __name__ == "__main__":
    sys.exit(main())
