"""Labeled sample compression for extremal classes.

``compress`` keeps exactly the part of a sample covered by the free
dimensions of a maximal cube of C|dom(s) containing it; ``reconstruct``
returns a member of C lying in a cube whose free set is the compressed
sample's domain.  Compressed size never exceeds the VC dimension, and any
admissible cube choice reconstructs correctly — ``verify_scheme`` sweeps
them all.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import (
    Concept,
    ConceptClass,
    Cube,
    InputError,
    NoCubeError,
    NotExtremalError,
    Sample,
    restrict,
    unpack_word,
)
from .cubes import cubes_with_dims, maximal_cubes, maximal_cubes_containing
from .shattering import is_extremal, vc_dimension

#: Tie-break rules are total orders; one canonical rule each ships.
CUBE_RULES = ("min-dims",)
TAG_RULES = ("min-tag",)


@dataclass(frozen=True)
class LabeledScheme:
    """A labeled compression scheme bound to one extremal class."""

    concept_class: ConceptClass
    cube_rule: str = "min-dims"
    tag_rule: str = "min-tag"

    def __post_init__(self) -> None:
        if self.cube_rule not in CUBE_RULES:
            raise InputError(f"unknown cube tie-break {self.cube_rule!r}")
        if self.tag_rule not in TAG_RULES:
            raise InputError(f"unknown tag tie-break {self.tag_rule!r}")
        if not is_extremal(self.concept_class):
            raise NotExtremalError(
                "labeled compression requires an extremal class"
            )

    @cached_property
    def vc_dim(self) -> int:
        return vc_dimension(self.concept_class)


def compress_options(
    scheme: LabeledScheme, sample: Sample
) -> tuple[tuple[Cube, Sample], ...]:
    """Every admissible (maximal cube, compressed sample) pair for s.

    Cubes live over the restricted domain C|dom(s); compressed samples stay
    on the ambient domain.  Canonical cube order, so the first entry is the
    scheme's own choice under the ``min-dims`` rule.
    """
    cls = scheme.concept_class
    out = []
    for cube in maximal_cubes_containing(cls, sample):
        kept = cls.domain.mask_of(cube.dims)
        out.append((cube, Sample(cls.domain, kept, sample.word & kept)))
    return tuple(out)


def compress(scheme: LabeledScheme, sample: Sample) -> Sample:
    """s|dim(B) for the tie-break maximal cube B of C|dom(s) containing s."""
    return compress_options(scheme, sample)[0][1]


def reconstruct(scheme: LabeledScheme, compressed: Sample) -> Concept:
    """A concept of C in a cube whose free set is dom(s'), agreeing with s'.

    Ties break to the lexicographically least tag; every candidate is a
    correct reconstruction for any sample that compresses to s'.
    """
    cls = scheme.concept_class
    if len(compressed) > scheme.vc_dim:
        raise InputError(
            f"compressed sample has {len(compressed)} labels, "
            f"VC dimension is {scheme.vc_dim}"
        )
    cubes = cubes_with_dims(cls, compressed.names)
    if not cubes:
        raise NoCubeError(
            f"no cube of the class has dimension set "
            f"{{{','.join(compressed.names)}}}"
        )
    words = sorted(
        (c.tag_word | compressed.word for c in cubes), key=cls.domain.lex_key
    )
    return Concept(cls.domain, words[0])


def consistent_set(cls: ConceptClass, sample: Sample) -> ConceptClass:
    """H_s: the members of C consistent with the sample."""
    if sample.domain != cls.domain:
        raise InputError("sample lives on a different domain")
    return ConceptClass.from_words(
        cls.domain,
        (w for w in cls.words if w & sample.dims_mask == sample.word),
    )


def candidate_set(cls: ConceptClass, sample: Sample, cube: Cube) -> ConceptClass:
    """H_B: all reconstruction candidates for s under the cube choice B.

    B must be a maximal cube of C|dom(s) containing s; candidates are the
    members of C lying in a cube with free set dim(B) and agreeing with s
    there.  Always nonempty, always inside H_s.
    """
    options = maximal_cubes_containing(cls, sample)
    if cube not in options:
        raise InputError(
            f"cube {cube.pattern()} is not a maximal cube of the "
            "restriction containing the sample"
        )
    dims = cube.dims
    kept = cls.domain.mask_of(dims)
    return ConceptClass.from_words(
        cls.domain,
        (c.tag_word | (sample.word & kept) for c in cubes_with_dims(cls, dims)),
    )


@dataclass(frozen=True)
class SchemeVerification:
    """Result of sweeping every sample and every admissible cube choice."""

    class_size: int
    vc_dim: int
    samples_checked: int
    choices_checked: int
    max_compressed_size: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_scheme(scheme: LabeledScheme) -> SchemeVerification:
    """Exhaustively check the round trip and the size bound.

    For every S ⊆ dom(C), every sample s realized on S, and every maximal
    cube choice B: each reconstruction candidate restricts back to s on
    dom(s) (so every tag tie-break is covered), the candidate set is
    nonempty and consistent, and |dim(B)| is at most the VC dimension.
    """
    cls = scheme.concept_class
    domain = cls.domain
    vc = scheme.vc_dim
    failures: list[str] = []
    samples = choices = 0
    max_size = 0
    cube_cache: dict[int, tuple[Cube, ...]] = {}

    for sub_mask in range(1 << len(domain)):
        sub = restrict(cls, domain.names_of(sub_mask))
        maxcubes = maximal_cubes(sub)
        for packed in sorted(sub.words):
            sample = Sample(domain, sub_mask, unpack_word(packed, sub_mask))
            samples += 1
            admissible = [c for c in maxcubes if c.contains_word(packed)]
            if not admissible:
                failures.append(f"no maximal cube contains {sample.wire()!r}")
                continue
            for cube in admissible:
                choices += 1
                kept = domain.mask_of(cube.dims)
                size = kept.bit_count()
                max_size = max(max_size, size)
                if size > vc:
                    failures.append(
                        f"compressed {sample.wire()!r} to {size} labels"
                    )
                if kept not in cube_cache:
                    cube_cache[kept] = cubes_with_dims(cls, domain.names_of(kept))
                ambient = cube_cache[kept]
                if not ambient:
                    failures.append(
                        f"no ambient cube for dims {domain.names_of(kept)}"
                    )
                    continue
                compressed_word = sample.word & kept
                for amb in ambient:
                    h = amb.tag_word | compressed_word
                    if h & sub_mask != sample.word:
                        failures.append(
                            f"candidate {domain.string_of_word(h)} breaks "
                            f"sample {sample.wire()!r}"
                        )
    return SchemeVerification(
        class_size=len(cls),
        vc_dim=vc,
        samples_checked=samples,
        choices_checked=choices,
        max_compressed_size=max_size,
        failures=tuple(failures),
    )
