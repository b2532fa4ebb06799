"""Cube structure of a class: cubes by dimension set, maximal cubes,
and the ``+``-joined {0,1,*} cube-expression format.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    ConceptClass,
    Cube,
    Domain,
    InputError,
    NotASampleError,
    ParseError,
    Sample,
    _indices,
    dimset_key,
    is_sample_of,
    pack_word,
    restrict,
)
from .shattering import strongly_shattered_sets


def _cube_sort_key(cube: Cube):
    return (dimset_key(cube.dims_mask), cube.domain.lex_key(cube.tag_word))


def cubes_with_dims(cls: ConceptClass, names: Iterable[str]) -> tuple[Cube, ...]:
    """All cubes of C whose free dimension set is exactly S, by tag order."""
    mask = cls.domain.mask_of(names)
    keep = cls.domain.full_mask & ~mask
    counts: dict[int, int] = {}
    for w in cls.words:
        t = w & keep
        counts[t] = counts.get(t, 0) + 1
    need = 1 << mask.bit_count()
    tags = sorted(
        (t for t, k in counts.items() if k == need), key=cls.domain.lex_key
    )
    return tuple(Cube(cls.domain, mask, t) for t in tags)


def all_cubes(cls: ConceptClass) -> tuple[Cube, ...]:
    """Every cube contained in C, canonically ordered."""
    out: list[Cube] = []
    for names in strongly_shattered_sets(cls):
        out.extend(cubes_with_dims(cls, names))
    out.sort(key=_cube_sort_key)
    return tuple(out)


def maximal_cubes(cls: ConceptClass) -> tuple[Cube, ...]:
    """Cubes of C contained in no strictly larger cube of C.

    A cube (S, t) sits inside a strictly larger cube iff for some dimension
    x outside S the neighboring cube (S, t^x) also lies in C — so maximality
    is a one-step test against the per-dimension-set tag table, with no
    pairwise containment sweeps.
    """
    by_dims: dict[int, set[int]] = {}
    for names in strongly_shattered_sets(cls):
        mask = cls.domain.mask_of(names)
        cubes = cubes_with_dims(cls, names)
        by_dims[mask] = {c.tag_word for c in cubes}
    out = []
    free = cls.domain.full_mask
    for mask, tags in by_dims.items():
        outside = _indices(free & ~mask)
        for t in tags:
            if not any(t ^ (1 << i) in tags for i in outside):
                out.append(Cube(cls.domain, mask, t))
    out.sort(key=_cube_sort_key)
    return tuple(out)


def maximal_cubes_containing(cls: ConceptClass, sample: Sample) -> tuple[Cube, ...]:
    """Maximal cubes of C|dom(s) containing s, over the restricted domain."""
    if not is_sample_of(cls, sample):
        raise NotASampleError(
            f"sample {sample.wire() or '(empty)'} is not realized by the class"
        )
    sub = restrict(cls, sample.names)
    word = pack_word(sample.word, sample.dims_mask)
    return tuple(
        c for c in maximal_cubes(sub) if c.contains_word(word)
    )


@dataclass(frozen=True)
class CubeExpression:
    """A union of cubes over one domain, kept in the order given."""

    cubes: tuple[Cube, ...]

    def __post_init__(self) -> None:
        if not self.cubes:
            raise InputError("a cube expression needs at least one cube")
        domain = self.cubes[0].domain
        if any(c.domain != domain for c in self.cubes):
            raise InputError("all cubes must share one domain")

    @property
    def domain(self) -> Domain:
        return self.cubes[0].domain

    def __iter__(self) -> Iterator[Cube]:
        return iter(self.cubes)

    def __len__(self) -> int:
        return len(self.cubes)

    def __str__(self) -> str:
        return print_cube_expression(self)


def parse_cube_expression(text: str, domain: Domain | None = None) -> CubeExpression:
    """Parse ``**0*00+1***00+...``; names x1..xn unless a domain is given."""
    tokens = [t.strip() for t in text.split("+")]
    if not all(tokens):
        raise ParseError("empty cube pattern in expression")
    if domain is None:
        domain = Domain.numbered(len(tokens[0]))
    return CubeExpression(tuple(Cube.from_pattern(domain, t) for t in tokens))


def print_cube_expression(expr: CubeExpression) -> str:
    return "+".join(c.pattern() for c in expr.cubes)


def expression_to_class(expr: CubeExpression) -> ConceptClass:
    """The union of the expression's cubes; overlaps collapse."""
    words: set[int] = set()
    for cube in expr.cubes:
        words.update(cube.words())
    return ConceptClass.from_words(expr.domain, words)


def class_expression(cls: ConceptClass) -> CubeExpression:
    """C written as the union of its maximal cubes (canonical order)."""
    cubes = maximal_cubes(cls)
    if not cubes:
        raise InputError("the empty class has no cube expression")
    return CubeExpression(cubes)
