"""Command-line interface.

Exit codes: 0 success, 1 finding (a conjecture counterexample or a NONE
from the intermediate-class hunt), 2 input/usage error.  ``--json`` wraps
every report in a versioned envelope validating against the shipped
``report_schema.json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .compression import LabeledScheme, compress_options, reconstruct, verify_scheme
from .core import (
    Concept,
    ConceptClass,
    InputError,
    Sample,
    format_class_text,
    graph_distance,
    parse_class_text,
)
from .cubes import (
    all_cubes,
    cubes_with_dims,
    maximal_cubes,
    expression_to_class,
    parse_cube_expression,
)
from .generators import (
    LineArrangement,
    RefGraph,
    builtin,
    builtin_names,
    fig3_arrangement,
    full_plane_region,
    cells_in_region,
    glued_cube_complement,
    hamming_ball,
    random_class,
    random_extremal_class,
    st_orientation_class,
)
from .shattering import (
    extremality_report,
    shattered_sets,
    strongly_shattered_sets,
    vc_dimension,
)
from .unlabeled import (
    NoCornerError,
    compress_unlabeled,
    corner_peel,
    hunt_cornerless,
    hunt_intermediate,
    reconstruct_unlabeled,
)

SCHEMA_VERSION = 1


class Report:
    """What a verb handler hands back to main()."""

    def __init__(self, lines: list[str], data: dict, code: int = 0):
        self.lines = lines
        self.data = data
        self.code = code


def _braced(names: Sequence[str]) -> str:
    return "{" + ",".join(names) + "}"


def _load_class(args: argparse.Namespace) -> ConceptClass:
    if args.builtin:
        return builtin(args.builtin)
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                return parse_class_text(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
    return expression_to_class(parse_cube_expression(args.expr))


def _load_spec(spec: str) -> ConceptClass:
    """builtin:NAME | file:PATH | expr:CUBES — for flags naming a class."""
    kind, sep, rest = spec.partition(":")
    if not sep or kind not in ("builtin", "file", "expr"):
        raise InputError(
            f"bad class spec {spec!r}; use builtin:NAME, file:PATH, or expr:CUBES"
        )
    if kind == "builtin":
        return builtin(rest)
    if kind == "file":
        try:
            with open(rest, "r", encoding="utf-8") as fh:
                return parse_class_text(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {rest}: {exc}") from exc
    return expression_to_class(parse_cube_expression(rest))


def _parse_names(domain, text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


# --- verb handlers -----------------------------------------------------------


def _cmd_check(args) -> Report:
    cls = _load_class(args)
    rep = extremality_report(cls)
    if rep.is_extremal:
        line = (
            f"extremal: true, |C|={rep.class_size}, "
            f"|s|=|st|={rep.shattered_count}, VCdim={rep.vc_dim}"
        )
        lines = [line]
    else:
        lines = [
            f"extremal: false, |C|={rep.class_size}, "
            f"|s|={rep.shattered_count}, |st|={rep.strongly_shattered_count}, "
            f"VCdim={rep.vc_dim}",
            f"witness: {_braced(rep.witness)}",
        ]
    data = {
        "is_extremal": rep.is_extremal,
        "class_size": rep.class_size,
        "shattered_count": rep.shattered_count,
        "strongly_shattered_count": rep.strongly_shattered_count,
        "vc_dim": rep.vc_dim,
        "condition_flags": list(rep.condition_flags),
        "witness": list(rep.witness) if rep.witness is not None else None,
    }
    return Report(lines, data)


def _cmd_vcdim(args) -> Report:
    d = vc_dimension(_load_class(args))
    return Report([str(d)], {"vc_dim": d})


def _cmd_shatter(args) -> Report:
    cls = _load_class(args)
    fam = strongly_shattered_sets(cls) if args.strong else shattered_sets(cls)
    text = fam.to_text()
    lines = text.split("\n") if fam.masks else []
    return Report(
        lines,
        {"strong": args.strong, "count": len(fam.masks), "sets": fam.to_json_obj()},
    )


def _cmd_cubes(args) -> Report:
    cls = _load_class(args)
    if args.dims is not None:
        dims = _parse_names(cls.domain, args.dims)
        found = cubes_with_dims(cls, dims)
        if args.maximal:
            keep = {c.pattern() for c in maximal_cubes(cls)}
            found = tuple(c for c in found if c.pattern() in keep)
    elif args.maximal:
        found = maximal_cubes(cls)
        dims = None
    else:
        found = all_cubes(cls)
        dims = None
    patterns = [c.pattern() for c in found]
    return Report(
        patterns,
        {
            "maximal": args.maximal,
            "dims": list(dims) if args.dims is not None else None,
            "patterns": patterns,
        },
    )


def _cmd_compress(args) -> Report:
    cls = _load_class(args)
    scheme = LabeledScheme(cls)
    sample = Sample.parse(cls.domain, args.sample)
    options = compress_options(scheme, sample)
    if args.cube_choice == "all":
        lines = [
            f"{_braced(cube.dims)} -> {sub.wire()}" for cube, sub in options
        ]
        data = {
            "sample": sample.wire(),
            "compressed": options[0][1].wire(),
            "options": [
                {"dims": list(cube.dims), "sample": sub.wire()}
                for cube, sub in options
            ],
        }
        return Report(lines, data)
    compressed = options[0][1]
    return Report(
        [compressed.wire()],
        {"sample": sample.wire(), "compressed": compressed.wire()},
    )


def _cmd_decompress(args) -> Report:
    cls = _load_class(args)
    scheme = LabeledScheme(cls)
    compressed = Sample.parse(cls.domain, args.sample)
    concept = reconstruct(scheme, compressed)
    return Report(
        [concept.bitstring()],
        {"sample": compressed.wire(), "concept": concept.bitstring()},
    )


def _cmd_peel(args) -> Report:
    cls = _load_class(args)
    cert, _ = corner_peel(cls)
    domain = cls.domain
    return Report(
        cert.to_text().split("\n"),
        {
            "order": [c.bitstring() for c in cert.order],
            "reps": [list(domain.names_of(m)) for m in cert.rep_masks],
            "cubes": [cube.pattern() for cube in cert.step_cubes],
        },
    )


def _cmd_u_compress(args) -> Report:
    cls = _load_class(args)
    _, rmap = corner_peel(cls)
    sample = Sample.parse(cls.domain, args.sample)
    rep = compress_unlabeled(cls, rmap, sample)
    return Report(
        [_braced(rep)], {"sample": sample.wire(), "rep": list(rep)}
    )


def _cmd_u_decompress(args) -> Report:
    cls = _load_class(args)
    _, rmap = corner_peel(cls)
    names = _parse_names(cls.domain, args.rep)
    concept = reconstruct_unlabeled(rmap, names)
    return Report(
        [concept.bitstring()],
        {"rep": list(names), "concept": concept.bitstring()},
    )


def _cmd_verify(args) -> Report:
    cls = _load_class(args)
    result = verify_scheme(LabeledScheme(cls))
    ok = "true" if result.ok else "false"
    lines = [
        f"ok: {ok}, samples={result.samples_checked}, "
        f"choices={result.choices_checked}, "
        f"max_size={result.max_compressed_size}, VCdim={result.vc_dim}"
    ]
    lines.extend(result.failures)
    data = {
        "ok": result.ok,
        "class_size": result.class_size,
        "vc_dim": result.vc_dim,
        "samples_checked": result.samples_checked,
        "choices_checked": result.choices_checked,
        "max_compressed_size": result.max_compressed_size,
        "failures": list(result.failures),
    }
    return Report(lines, data, 0 if result.ok else 1)


def _parse_lines_arg(text: str) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    out = []
    for part in text.split(";"):
        coeffs = [p.strip() for p in part.split(",")]
        if len(coeffs) != 3:
            raise InputError(f"line {part!r} needs three coefficients a,b,c")
        out.append(tuple(Fraction(c) for c in coeffs))
    return tuple(out)


def _parse_region_arg(text: str) -> tuple[tuple[Fraction, Fraction], ...]:
    out = []
    for part in text.split(";"):
        coords = [p.strip() for p in part.split(",")]
        if len(coords) != 2:
            raise InputError(f"vertex {part!r} needs two coordinates x,y")
        out.append(tuple(Fraction(c) for c in coords))
    return tuple(out)


def _cmd_generate(args) -> Report:
    family = args.family
    if family == "ball":
        cls = hamming_ball(args.n, args.d)
    elif family == "cube-complement":
        cls = glued_cube_complement(args.k)
    elif family == "orientations":
        edges = []
        for token in args.edges.split(","):
            u, sep, v = token.strip().partition("-")
            if not sep or not u or not v:
                raise InputError(f"bad edge {token!r}; use u-v")
            edges.append((u, v))
        graph = RefGraph(tuple(edges), args.source, args.sink)
        cls = st_orientation_class(graph)
    elif family == "cells":
        if args.lines:
            lines = _parse_lines_arg(args.lines)
            if args.full_plane:
                region = full_plane_region(lines)
            elif args.region:
                region = _parse_region_arg(args.region)
            else:
                raise InputError("custom lines need --region or --full-plane")
            arrangement = LineArrangement(lines, region)
        else:
            arrangement = fig3_arrangement()
            if args.full_plane:
                arrangement = LineArrangement(
                    arrangement.lines, full_plane_region(arrangement.lines)
                )
        cls = cells_in_region(arrangement)
    elif family == "random":
        cls = random_class(args.n, args.density, args.seed)
    elif family == "random-extremal":
        cls = random_extremal_class(args.n, args.removals, args.seed)
    else:  # argparse restricts choices; defensive
        raise InputError(f"unknown family {family!r}")
    text = format_class_text(cls)
    return Report(text.split("\n")[:-1], {"family": family, "text": text})


def _cmd_hunt(args) -> Report:
    if args.mode == "cornerless":
        if args.exhaustive and args.n > 4:
            raise InputError("exhaustive sweep is capped at n=4")
        result = hunt_cornerless(args.n, budget=args.budget, seed=args.seed)
        checked = (
            sum(st.extremal_classes for st in result.stages)
            + result.random_classes_checked
        )
        counter_text = (
            format_class_text(result.counterexample)
            if result.counterexample is not None
            else None
        )
        data = {
            "mode": "cornerless",
            "ok": result.ok,
            "extremal_classes_checked": checked,
            "stages": [
                {
                    "n": st.n,
                    "subsets_scanned": st.subsets_scanned,
                    "extremal_classes": st.extremal_classes,
                    "classes_up_to_symmetry": st.classes_up_to_symmetry,
                }
                for st in result.stages
            ],
            "random_classes_checked": result.random_classes_checked,
            "counterexample": counter_text,
        }
        if result.ok:
            return Report(
                [f"no counterexample; {checked} extremal classes checked"],
                data,
            )
        return Report(
            ["counterexample:"] + counter_text.split("\n")[:-1], data, 1
        )
    lower = _load_spec(args.lower)
    upper = _load_spec(args.upper)
    found = hunt_intermediate(lower, upper, max_add=args.max_add)
    if found is None:
        return Report(
            ["NONE"], {"mode": "intermediate", "found": False, "class_text": None}, 1
        )
    text = format_class_text(found)
    return Report(
        text.split("\n")[:-1],
        {"mode": "intermediate", "found": True, "class_text": text},
    )


def _cmd_distance(args) -> Report:
    cls = _load_class(args)
    a = Concept.from_string(cls.domain, args.a)
    b = Concept.from_string(cls.domain, args.b)
    if not (cls.has_word(a.word) and cls.has_word(b.word)):
        raise InputError("both concepts must belong to the class")
    d = graph_distance(cls, a, b)
    return Report(
        [str(d) if d is not None else "UNREACHABLE"],
        {"a": args.a, "b": args.b, "distance": d},
    )


def _cmd_serve(args) -> Report:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return Report([], {})


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument(
        "--seed", type=int, default=0, help="seed for randomized steps"
    )

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--builtin", metavar="NAME", help=f"one of: {', '.join(builtin_names())}"
    )
    group.add_argument("--file", metavar="PATH", help="concept-class text file")
    group.add_argument("--expr", metavar="CUBES", help="cube expression, e.g. 1*0+0*1")

    parser = argparse.ArgumentParser(
        prog="extremal",
        description="Shattering, extremality, cubes, and sample compression "
        "for finite Boolean concept classes.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("check", parents=[common, source], help="extremality report")
    sub.add_parser("vcdim", parents=[common, source], help="VC dimension")

    p = sub.add_parser("shatter", parents=[common, source], help="shattered sets")
    p.add_argument(
        "--strong", action="store_true", help="strongly shattered sets instead"
    )

    p = sub.add_parser("cubes", parents=[common, source], help="cubes of the class")
    p.add_argument("--maximal", action="store_true", help="maximal cubes only")
    p.add_argument(
        "--dims", metavar="NAMES", help="restrict to this dimension set (comma-sep)"
    )

    p = sub.add_parser(
        "compress", parents=[common, source], help="compress a labeled sample"
    )
    p.add_argument("--sample", required=True, metavar="WIRE", help='e.g. "x2=1,x4=1"')
    p.add_argument(
        "--cube-choice",
        choices=("least", "all"),
        default="least",
        help="least: canonical cube only; all: list every admissible option",
    )

    p = sub.add_parser(
        "decompress", parents=[common, source], help="reconstruct from a subsample"
    )
    p.add_argument("--sample", required=True, metavar="WIRE")

    sub.add_parser(
        "peel", parents=[common, source], help="corner-peel a representation map"
    )

    p = sub.add_parser(
        "u-compress", parents=[common, source], help="unlabeled compression"
    )
    p.add_argument("--sample", required=True, metavar="WIRE")

    p = sub.add_parser(
        "u-decompress", parents=[common, source], help="unlabeled reconstruction"
    )
    p.add_argument(
        "--rep", required=True, metavar="NAMES", help="dimension set, comma-sep"
    )

    sub.add_parser(
        "verify",
        parents=[common, source],
        help="exhaustively verify the labeled scheme",
    )

    p = sub.add_parser("generate", parents=[common], help="emit a generated class")
    gen = p.add_subparsers(dest="family", required=True)
    g = gen.add_parser("ball", parents=[common], help="Hamming ball")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g = gen.add_parser(
        "cube-complement", parents=[common], help="complement of a glued cube"
    )
    g.add_argument("--k", type=int, required=True)
    g = gen.add_parser(
        "orientations", parents=[common], help="orientations with an s-t path"
    )
    g.add_argument("--edges", required=True, metavar="LIST", help='e.g. "a-b,b-c,a-c"')
    g.add_argument("--source", required=True)
    g.add_argument("--sink", required=True)
    g = gen.add_parser("cells", parents=[common], help="cells of a line arrangement")
    g.add_argument("--lines", metavar="LINES", help='"a,b,c;a,b,c;…" (default fixture)')
    g.add_argument("--region", metavar="POLY", help='"x,y;x,y;…" convex, CCW')
    g.add_argument(
        "--full-plane", action="store_true", help="region containing all vertices"
    )
    g = gen.add_parser("random", parents=[common], help="iid random class")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, required=True)
    g = gen.add_parser(
        "random-extremal", parents=[common], help="random corner-peeled class"
    )
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--removals", type=int, required=True)

    p = sub.add_parser("hunt", parents=[common], help="search for counterexamples")
    hunt = p.add_subparsers(dest="mode", required=True)
    h = hunt.add_parser(
        "cornerless", parents=[common], help="cornerless extremal classes"
    )
    h.add_argument("--n", type=int, required=True, metavar="N", help="max dimensions")
    h.add_argument(
        "--exhaustive", action="store_true", help="assert the sweep is exhaustive"
    )
    h.add_argument(
        "--budget", type=int, default=2000, help="random classes at n=5"
    )
    h = hunt.add_parser(
        "intermediate", parents=[common], help="extremal class strictly between two"
    )
    h.add_argument(
        "--lower", required=True, metavar="SPEC", help="builtin:NAME|file:PATH|expr:CUBES"
    )
    h.add_argument("--upper", required=True, metavar="SPEC")
    h.add_argument(
        "--max-add", type=int, default=2, help="largest addition size to try"
    )

    p = sub.add_parser(
        "distance", parents=[common, source], help="one-inclusion graph distance"
    )
    p.add_argument("--a", required=True, metavar="BITS")
    p.add_argument("--b", required=True, metavar="BITS")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


_HANDLERS = {
    "check": _cmd_check,
    "vcdim": _cmd_vcdim,
    "shatter": _cmd_shatter,
    "cubes": _cmd_cubes,
    "compress": _cmd_compress,
    "decompress": _cmd_decompress,
    "peel": _cmd_peel,
    "u-compress": _cmd_u_compress,
    "u-decompress": _cmd_u_decompress,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
    "hunt": _cmd_hunt,
    "distance": _cmd_distance,
    "serve": _cmd_serve,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _HANDLERS[args.verb](args)
    except NoCornerError as exc:
        # a cornerless extremal class is a finding, not a crash
        print(str(exc))
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        envelope = {"verb": args.verb, "version": SCHEMA_VERSION, "data": report.data}
        print(json.dumps(envelope, indent=2))
    elif report.lines:
        print("\n".join(report.lines))
    return report.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
