"""FastAPI application exposing the library.

Error mapping: bad input (parse errors, precondition violations) → 400;
a cornerless extremal class surfacing where a corner is required → 409
with the class text in the detail.  Conjecture-hunt outcomes are ordinary
response fields, not errors.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..compression import LabeledScheme, compress_options, reconstruct, verify_scheme
from ..core import Concept, InputError, Sample, format_class_text, graph_distance
from ..cubes import all_cubes, cubes_with_dims, maximal_cubes
from ..generators import (
    LineArrangement,
    RefGraph,
    cells_in_region,
    fig3_arrangement,
    full_plane_region,
    glued_cube_complement,
    hamming_ball,
    random_class,
    random_extremal_class,
    st_orientation_class,
)
from ..shattering import extremality_report, shattered_sets, strongly_shattered_sets
from ..unlabeled import (
    NoCornerError,
    compress_unlabeled,
    corner_peel,
    hunt_cornerless,
    hunt_intermediate,
    reconstruct_unlabeled,
)
from . import schemas as s

app = FastAPI(
    title="extremal",
    version=__version__,
    description="Shattering, extremality, cube structure, and sample "
    "compression for finite Boolean concept classes.",
)


@app.exception_handler(InputError)
async def _input_error(request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(NoCornerError)
async def _no_corner(request, exc: NoCornerError) -> JSONResponse:
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.get("/health", response_model=s.HealthResponse)
def health() -> s.HealthResponse:
    return s.HealthResponse(status="ok", version=__version__)


@app.post("/check", response_model=s.CheckResponse)
def check(req: s.CheckRequest) -> s.CheckResponse:
    rep = extremality_report(req.source.to_class())
    return s.CheckResponse(
        is_extremal=rep.is_extremal,
        class_size=rep.class_size,
        shattered_count=rep.shattered_count,
        strongly_shattered_count=rep.strongly_shattered_count,
        vc_dim=rep.vc_dim,
        condition_flags=list(rep.condition_flags),
        witness=list(rep.witness) if rep.witness is not None else None,
    )


@app.post("/shatter", response_model=s.ShatterResponse)
def shatter(req: s.ShatterRequest) -> s.ShatterResponse:
    cls = req.source.to_class()
    fam = strongly_shattered_sets(cls) if req.strong else shattered_sets(cls)
    return s.ShatterResponse(
        strong=req.strong, count=len(fam.masks), sets=fam.to_json_obj()
    )


@app.post("/cubes", response_model=s.CubesResponse)
def cubes(req: s.CubesRequest) -> s.CubesResponse:
    cls = req.source.to_class()
    if req.dims is not None:
        found = cubes_with_dims(cls, req.dims)
        if req.maximal:
            keep = {c.pattern() for c in maximal_cubes(cls)}
            found = tuple(c for c in found if c.pattern() in keep)
    elif req.maximal:
        found = maximal_cubes(cls)
    else:
        found = all_cubes(cls)
    return s.CubesResponse(
        maximal=req.maximal,
        dims=req.dims,
        patterns=[c.pattern() for c in found],
    )


@app.post("/compress", response_model=s.CompressResponse)
def compress_sample(req: s.CompressRequest) -> s.CompressResponse:
    cls = req.source.to_class()
    scheme = LabeledScheme(cls)
    sample = Sample.parse(cls.domain, req.sample)
    options = compress_options(scheme, sample)
    return s.CompressResponse(
        sample=sample.wire(),
        compressed=options[0][1].wire(),
        options=(
            [
                s.CompressOption(dims=list(cube.dims), sample=sub.wire())
                for cube, sub in options
            ]
            if req.all_options
            else None
        ),
    )


@app.post("/decompress", response_model=s.DecompressResponse)
def decompress_sample(req: s.DecompressRequest) -> s.DecompressResponse:
    cls = req.source.to_class()
    scheme = LabeledScheme(cls)
    compressed = Sample.parse(cls.domain, req.sample)
    concept = reconstruct(scheme, compressed)
    return s.DecompressResponse(
        sample=compressed.wire(), concept=concept.bitstring()
    )


@app.post("/peel", response_model=s.PeelResponse)
def peel(req: s.PeelRequest) -> s.PeelResponse:
    cls = req.source.to_class()
    cert, _ = corner_peel(cls)
    domain = cls.domain
    return s.PeelResponse(
        order=[c.bitstring() for c in cert.order],
        reps=[list(domain.names_of(m)) for m in cert.rep_masks],
        cubes=[cube.pattern() for cube in cert.step_cubes],
    )


@app.post("/unlabeled/compress", response_model=s.UnlabeledCompressResponse)
def unlabeled_compress(
    req: s.UnlabeledCompressRequest,
) -> s.UnlabeledCompressResponse:
    cls = req.source.to_class()
    _, rmap = corner_peel(cls)
    sample = Sample.parse(cls.domain, req.sample)
    rep = compress_unlabeled(cls, rmap, sample)
    return s.UnlabeledCompressResponse(sample=sample.wire(), rep=list(rep))


@app.post("/unlabeled/decompress", response_model=s.UnlabeledDecompressResponse)
def unlabeled_decompress(
    req: s.UnlabeledDecompressRequest,
) -> s.UnlabeledDecompressResponse:
    cls = req.source.to_class()
    _, rmap = corner_peel(cls)
    concept = reconstruct_unlabeled(rmap, req.rep)
    return s.UnlabeledDecompressResponse(
        rep=req.rep, concept=concept.bitstring()
    )


@app.post("/verify", response_model=s.VerifyResponse)
def verify(req: s.VerifyRequest) -> s.VerifyResponse:
    result = verify_scheme(LabeledScheme(req.source.to_class()))
    return s.VerifyResponse(
        ok=result.ok,
        class_size=result.class_size,
        vc_dim=result.vc_dim,
        samples_checked=result.samples_checked,
        choices_checked=result.choices_checked,
        max_compressed_size=result.max_compressed_size,
        failures=list(result.failures),
    )


@app.post("/distance", response_model=s.DistanceResponse)
def distance(req: s.DistanceRequest) -> s.DistanceResponse:
    cls = req.source.to_class()
    a = Concept.from_string(cls.domain, req.a)
    b = Concept.from_string(cls.domain, req.b)
    if not (cls.has_word(a.word) and cls.has_word(b.word)):
        raise InputError("both concepts must belong to the class")
    return s.DistanceResponse(a=req.a, b=req.b, distance=graph_distance(cls, a, b))


@app.post("/generate", response_model=s.GenerateResponse)
def generate(req: s.GenerateRequest) -> s.GenerateResponse:
    if req.family == "ball":
        cls = hamming_ball(req.n, req.d)
    elif req.family == "cube-complement":
        cls = glued_cube_complement(req.k)
    elif req.family == "orientations":
        graph = RefGraph(tuple(req.edges), req.source, req.sink)
        cls = st_orientation_class(graph)
    elif req.family == "cells":
        if req.lines is not None:
            lines = tuple(
                tuple(Fraction(v) for v in line) for line in req.lines
            )
            if req.full_plane:
                region = full_plane_region(lines)
            elif req.region is not None:
                region = tuple(
                    tuple(Fraction(v) for v in pt) for pt in req.region
                )
            else:
                raise InputError("custom lines need region or full_plane")
            arrangement = LineArrangement(lines, region)
        else:
            arrangement = fig3_arrangement()
            if req.full_plane:
                arrangement = LineArrangement(
                    arrangement.lines, full_plane_region(arrangement.lines)
                )
        cls = cells_in_region(arrangement)
    elif req.family == "random":
        cls = random_class(req.n, req.density, req.seed)
    else:
        cls = random_extremal_class(req.n, req.removals, req.seed)
    return s.GenerateResponse(family=req.family, text=format_class_text(cls))


@app.post("/hunt/cornerless", response_model=s.HuntCornerlessResponse)
def hunt_cornerless_endpoint(
    req: s.HuntCornerlessRequest,
) -> s.HuntCornerlessResponse:
    result = hunt_cornerless(req.n, budget=req.budget, seed=req.seed)
    checked = (
        sum(st.extremal_classes for st in result.stages)
        + result.random_classes_checked
    )
    return s.HuntCornerlessResponse(
        ok=result.ok,
        extremal_classes_checked=checked,
        stages=[
            s.HuntStageModel(
                n=st.n,
                subsets_scanned=st.subsets_scanned,
                extremal_classes=st.extremal_classes,
                classes_up_to_symmetry=st.classes_up_to_symmetry,
            )
            for st in result.stages
        ],
        random_classes_checked=result.random_classes_checked,
        counterexample=(
            format_class_text(result.counterexample)
            if result.counterexample is not None
            else None
        ),
    )


@app.post("/hunt/intermediate", response_model=s.HuntIntermediateResponse)
def hunt_intermediate_endpoint(
    req: s.HuntIntermediateRequest,
) -> s.HuntIntermediateResponse:
    found = hunt_intermediate(
        req.lower.to_class(), req.upper.to_class(), max_add=req.max_add
    )
    return s.HuntIntermediateResponse(
        found=found is not None,
        class_text=format_class_text(found) if found is not None else None,
    )
