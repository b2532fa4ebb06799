"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..core import ConceptClass, Domain, InputError, class_from_strings, parse_class_text
from ..cubes import expression_to_class, parse_cube_expression
from ..generators import builtin


class ClassSource(BaseModel):
    """Exactly one way of naming a concept class.

    ``concepts`` is a list of bitstrings; ``domain`` optionally names its
    dimensions (default x1..xn).  The other three are a builtin name, the
    text format, and a cube expression.
    """

    builtin: Optional[str] = None
    text: Optional[str] = None
    expression: Optional[str] = None
    concepts: Optional[list[str]] = None
    domain: Optional[list[str]] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "ClassSource":
        given = [
            f
            for f in ("builtin", "text", "expression", "concepts")
            if getattr(self, f) is not None
        ]
        if len(given) != 1:
            raise ValueError(
                f"give exactly one of builtin/text/expression/concepts, got {given}"
            )
        if self.domain is not None and self.concepts is None:
            raise ValueError("domain only applies to the concepts form")
        return self

    def to_class(self) -> ConceptClass:
        if self.builtin is not None:
            return builtin(self.builtin)
        if self.text is not None:
            return parse_class_text(self.text)
        if self.expression is not None:
            return expression_to_class(parse_cube_expression(self.expression))
        assert self.concepts is not None
        if self.domain is not None:
            domain = Domain(tuple(self.domain))
        else:
            if not self.concepts:
                raise InputError("concepts form needs at least one bitstring")
            domain = Domain.numbered(len(self.concepts[0]))
        return class_from_strings(domain, self.concepts)


class HealthResponse(BaseModel):
    status: str
    version: str


class CheckRequest(BaseModel):
    source: ClassSource


class CheckResponse(BaseModel):
    is_extremal: bool
    class_size: int
    shattered_count: int
    strongly_shattered_count: int
    vc_dim: int
    condition_flags: list[bool]
    witness: Optional[list[str]]


class ShatterRequest(BaseModel):
    source: ClassSource
    strong: bool = False


class ShatterResponse(BaseModel):
    strong: bool
    count: int
    sets: list[list[str]]


class CubesRequest(BaseModel):
    source: ClassSource
    maximal: bool = False
    dims: Optional[list[str]] = None


class CubesResponse(BaseModel):
    maximal: bool
    dims: Optional[list[str]]
    patterns: list[str]


class CompressRequest(BaseModel):
    source: ClassSource
    sample: str
    all_options: bool = False


class CompressOption(BaseModel):
    dims: list[str]
    sample: str


class CompressResponse(BaseModel):
    sample: str
    compressed: str
    options: Optional[list[CompressOption]] = None


class DecompressRequest(BaseModel):
    source: ClassSource
    sample: str


class DecompressResponse(BaseModel):
    sample: str
    concept: str


class PeelRequest(BaseModel):
    source: ClassSource


class PeelResponse(BaseModel):
    order: list[str]
    reps: list[list[str]]
    cubes: list[str]


class UnlabeledCompressRequest(BaseModel):
    source: ClassSource
    sample: str


class UnlabeledCompressResponse(BaseModel):
    sample: str
    rep: list[str]


class UnlabeledDecompressRequest(BaseModel):
    source: ClassSource
    rep: list[str]


class UnlabeledDecompressResponse(BaseModel):
    rep: list[str]
    concept: str


class VerifyRequest(BaseModel):
    source: ClassSource


class VerifyResponse(BaseModel):
    ok: bool
    class_size: int
    vc_dim: int
    samples_checked: int
    choices_checked: int
    max_compressed_size: int
    failures: list[str]


class DistanceRequest(BaseModel):
    source: ClassSource
    a: str
    b: str


class DistanceResponse(BaseModel):
    a: str
    b: str
    distance: Optional[int]


Rational = int | str  # exact values only; JSON floats are rejected


class GenerateRequest(BaseModel):
    family: Literal[
        "ball", "cube-complement", "orientations", "cells", "random",
        "random-extremal",
    ]
    n: Optional[int] = None
    d: Optional[int] = None
    k: Optional[int] = None
    edges: Optional[list[tuple[str, str]]] = None
    source: Optional[str] = None
    sink: Optional[str] = None
    lines: Optional[list[tuple[Rational, Rational, Rational]]] = None
    region: Optional[list[tuple[Rational, Rational]]] = None
    full_plane: bool = False
    density: Optional[float] = None
    removals: Optional[int] = None
    seed: int = 0

    @model_validator(mode="after")
    def _required_params(self) -> "GenerateRequest":
        needed = {
            "ball": ("n", "d"),
            "cube-complement": ("k",),
            "orientations": ("edges", "source", "sink"),
            "cells": (),
            "random": ("n", "density"),
            "random-extremal": ("n", "removals"),
        }[self.family]
        missing = [f for f in needed if getattr(self, f) is None]
        if missing:
            raise ValueError(f"family {self.family!r} needs {missing}")
        return self


class GenerateResponse(BaseModel):
    family: str
    text: str


class HuntStageModel(BaseModel):
    n: int
    subsets_scanned: int
    extremal_classes: int
    classes_up_to_symmetry: int


class HuntCornerlessRequest(BaseModel):
    n: int = Field(ge=1, le=5)
    budget: int = 2000
    seed: int = 0


class HuntCornerlessResponse(BaseModel):
    ok: bool
    extremal_classes_checked: int
    stages: list[HuntStageModel]
    random_classes_checked: int
    counterexample: Optional[str]


class HuntIntermediateRequest(BaseModel):
    lower: ClassSource
    upper: ClassSource
    max_add: int = 2


class HuntIntermediateResponse(BaseModel):
    found: bool
    class_text: Optional[str]
