"""Unlabeled compression via representation maps and corner peeling.

A full non-clashing bijection r: C -> st(C) compresses any realized sample
to the unique consistent concept whose representative fits inside the
sample domain.  ``corner_peel`` builds such a map by repeatedly deleting a
corner (a concept lying in exactly one maximal cube) and recording that
cube's dimension set.  The hunters probe the two open questions this
machinery hangs on: classes without corners, and extremal classes strictly
between nested extremal classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from . import _bitset
from .core import (
    Concept,
    ConceptClass,
    Cube,
    Domain,
    InputError,
    NotASampleError,
    NotExtremalError,
    Sample,
    UniquenessViolationError,
    _indices,
    format_class_text,
    is_sample_of,
    pack_word,
    restrict,
    unpack_word,
)
from .cubes import maximal_cubes
from .shattering import is_extremal, strongly_shattered_sets


class NoCornerError(Exception):
    """An extremal class with no corner — a conjecture counterexample.

    Carries the offending class; the message embeds its full text form so
    the finding survives in logs.
    """

    def __init__(self, concept_class: ConceptClass, context: str):
        self.concept_class = concept_class
        super().__init__(
            f"{context}: extremal class with no corner "
            f"(this refutes the peeling conjecture!)\n"
            f"{format_class_text(concept_class)}"
        )


def degree_mask(cls: ConceptClass, concept: Concept) -> int:
    if concept not in cls:
        raise InputError(f"{concept.bitstring()} is not in the class")
    mask = 0
    for i in range(len(cls.domain)):
        if concept.word ^ (1 << i) in cls.words:
            mask |= 1 << i
    return mask


def degree_set(cls: ConceptClass, concept: Concept) -> tuple[str, ...]:
    """Dimensions along which the concept has a one-inclusion neighbor."""
    return cls.domain.names_of(degree_mask(cls, concept))


def is_teaching_set(
    cls: ConceptClass, concept: Concept, names: Iterable[str]
) -> bool:
    """True iff the restriction to ``names`` separates c from every other
    member of the class."""
    if concept not in cls:
        raise InputError(f"{concept.bitstring()} is not in the class")
    mask = cls.domain.mask_of(names)
    return all(
        (w ^ concept.word) & mask for w in cls.words if w != concept.word
    )


@dataclass(frozen=True)
class RepresentationMap:
    """An injective assignment of dimension sets to concepts.

    ``full`` asserts (and validates) that the image is exactly st(C), making
    the map a bijection usable for unlabeled compression.
    """

    concept_class: ConceptClass
    pairs: tuple[tuple[int, int], ...]  # (concept word, dimension-set mask)
    full: bool = False

    def __post_init__(self) -> None:
        cls = self.concept_class
        by_word: dict[int, int] = {}
        images: set[int] = set()
        for word, mask in self.pairs:
            if word not in cls.words:
                raise InputError("representation map keys must be members")
            if mask & ~cls.domain.full_mask:
                raise InputError("representative strays off the domain")
            if word in by_word:
                raise InputError("concept represented twice")
            if mask in images:
                raise InputError(
                    "representation map must be injective; "
                    f"{{{','.join(cls.domain.names_of(mask))}}} repeats"
                )
            by_word[word] = mask
            images.add(mask)
        ordered = tuple(
            sorted(by_word.items(), key=lambda kv: cls.domain.lex_key(kv[0]))
        )
        object.__setattr__(self, "pairs", ordered)
        if self.full:
            if len(self.pairs) != len(cls):
                raise InputError("a full map must cover every concept")
            st = set(strongly_shattered_sets(cls).masks)
            if images != st:
                raise InputError(
                    "a full map must biject onto the strongly shattered sets"
                )

    @classmethod
    def from_assignment(
        cls,
        concept_class: ConceptClass,
        assignment: Mapping[Concept, Iterable[str]],
        full: bool = False,
    ) -> "RepresentationMap":
        pairs = tuple(
            (c.word, concept_class.domain.mask_of(names))
            for c, names in assignment.items()
        )
        return cls(concept_class, pairs, full)

    @cached_property
    def _by_word(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def _by_mask(self) -> dict[int, int]:
        return {mask: word for word, mask in self.pairs}

    def mask_for(self, concept: Concept) -> int:
        try:
            return self._by_word[concept.word]
        except KeyError:
            raise InputError(
                f"{concept.bitstring()} has no representative"
            ) from None

    def rep_of(self, concept: Concept) -> tuple[str, ...]:
        return self.concept_class.domain.names_of(self.mask_for(concept))

    def concept_for_mask(self, mask: int) -> Concept:
        try:
            word = self._by_mask[mask]
        except KeyError:
            names = self.concept_class.domain.names_of(mask)
            raise InputError(
                f"{{{','.join(names)}}} is not a representative"
            ) from None
        return Concept(self.concept_class.domain, word)

    def to_text(self) -> str:
        domain = self.concept_class.domain
        return "\n".join(
            f"{domain.string_of_word(w)} -> {{{','.join(domain.names_of(m))}}}"
            for w, m in self.pairs
        )


def disagreement_map(cls: ConceptClass, reference: Concept) -> RepresentationMap:
    """r(c) = the set where c disagrees with a fixed reference concept.

    Always injective and non-clashing; full only in special cases.
    """
    if reference.domain != cls.domain:
        raise InputError("reference lives on a different domain")
    pairs = tuple(
        (c.word, c.word ^ reference.word) for c in cls.concepts
    )
    return RepresentationMap(cls, pairs)


def degree_assignment(cls: ConceptClass) -> dict[Concept, tuple[str, ...]]:
    """c -> its one-inclusion degree set, as a plain assignment.

    Not injective in general (on the full cube every concept gets every
    dimension), so it is not always a representation map — but it is
    non-clashing on any distance-preserving class, the degree set being a
    teaching set there.
    """
    return {c: degree_set(cls, c) for c in cls.concepts}


def degree_map(cls: ConceptClass) -> RepresentationMap:
    """:func:`degree_assignment` packaged as a representation map.

    Raises when two concepts share a degree set (maps must be one-to-one).
    """
    pairs = tuple((c.word, degree_mask(cls, c)) for c in cls.concepts)
    return RepresentationMap(cls, pairs)


Assignment = Mapping[Concept, Iterable[str]]


def _clash_pairs(
    source: RepresentationMap | Assignment,
) -> tuple[ConceptClass, tuple[tuple[int, int], ...]]:
    if isinstance(source, RepresentationMap):
        return source.concept_class, source.pairs
    concepts = tuple(source.keys())
    if not concepts:
        raise InputError("empty assignment")
    domain = concepts[0].domain
    cls = ConceptClass(domain, concepts)
    return cls, tuple(
        (c.word, domain.mask_of(names)) for c, names in source.items()
    )


def clash_witness(
    source: RepresentationMap | Assignment,
) -> tuple[Concept, Concept] | None:
    """A pair agreeing on the union of their representatives, else None.

    Accepts a representation map or any concept→dimension-set assignment
    (the clash property itself does not need injectivity).
    """
    cls, pairs = _clash_pairs(source)
    for i, (w1, m1) in enumerate(pairs):
        for w2, m2 in pairs[i + 1 :]:
            if not (w1 ^ w2) & (m1 | m2):
                return (Concept(cls.domain, w1), Concept(cls.domain, w2))
    return None


def is_non_clashing(source: RepresentationMap | Assignment) -> bool:
    return clash_witness(source) is None


def _maximal_cube_counts(cls: ConceptClass) -> tuple[tuple[Cube, ...], dict[int, int]]:
    cubes = maximal_cubes(cls)
    counts: dict[int, int] = {w: 0 for w in cls.words}
    for cube in cubes:
        for w in cube.words():
            counts[w] += 1
    return cubes, counts


def is_corner(cls: ConceptClass, concept: Concept) -> bool:
    """True iff the concept lies in exactly one maximal cube.

    Runs the second characterization too (the class stays extremal after
    deleting the concept) and insists they agree; the class must be
    extremal and the concept a member.
    """
    if concept not in cls:
        raise InputError(f"{concept.bitstring()} is not in the class")
    if not is_extremal(cls):
        raise NotExtremalError("corners are defined for extremal classes")
    _, counts = _maximal_cube_counts(cls)
    by_cubes = counts[concept.word] == 1
    peeled = ConceptClass.from_words(
        cls.domain, cls.words - {concept.word}
    )
    by_removal = is_extremal(peeled)
    if by_cubes != by_removal:
        raise RuntimeError(
            "corner characterizations disagree on "
            f"{concept.bitstring()}: cube count says {by_cubes}, "
            f"removal says {by_removal}; this is a library bug"
        )
    return by_cubes


@dataclass(frozen=True)
class PeelingCertificate:
    """A corner peeling order with its per-step evidence.

    Step i records the corner removed from the i-th intermediate class and
    the unique maximal cube containing it; the representative is that
    cube's dimension set (equal to the corner's degree set at that step).
    """

    concept_class: ConceptClass
    order: tuple[Concept, ...]
    rep_masks: tuple[int, ...]
    step_cubes: tuple[Cube, ...]

    def representation_map(self) -> RepresentationMap:
        return RepresentationMap(
            self.concept_class,
            tuple((c.word, m) for c, m in zip(self.order, self.rep_masks)),
            full=True,
        )

    def to_text(self) -> str:
        domain = self.concept_class.domain
        return "\n".join(
            f"{c.bitstring()} -> "
            f"{{{','.join(domain.names_of(m))}}} cube={cube.pattern()}"
            for c, m, cube in zip(self.order, self.rep_masks, self.step_cubes)
        )


def corner_peel(
    cls: ConceptClass,
) -> tuple[PeelingCertificate, RepresentationMap]:
    """Peel corners to exhaustion, canonically least bit string first.

    The final concept always receives the empty set.  An intermediate class
    without a corner raises :class:`NoCornerError` — that would be a
    counterexample to the peeling conjecture and deserves the noise.
    """
    if not len(cls):
        raise InputError("cannot peel the empty class")
    if not is_extremal(cls):
        raise NotExtremalError("corner peeling requires an extremal class")
    current = cls
    order: list[Concept] = []
    reps: list[int] = []
    cubes: list[Cube] = []
    step = 0
    while len(current):
        maxcubes, counts = _maximal_cube_counts(current)
        corner = next(
            (c for c in current.concepts if counts[c.word] == 1), None
        )
        if corner is None:
            raise NoCornerError(current, f"peeling stalled at step {step}")
        cube = next(c for c in maxcubes if corner in c)
        if cube.dims_mask != degree_mask(current, corner):
            raise RuntimeError(
                "peeling invariant broken: unique maximal cube of "
                f"{corner.bitstring()} is not its degree set"
            )
        order.append(corner)
        reps.append(cube.dims_mask)
        cubes.append(cube)
        current = ConceptClass.from_words(
            cls.domain, current.words - {corner.word}
        )
        step += 1
    certificate = PeelingCertificate(cls, tuple(order), tuple(reps), tuple(cubes))
    return certificate, certificate.representation_map()


def group_by_restriction(
    cls: ConceptClass, names: Iterable[str]
) -> dict[int, tuple[Concept, ...]]:
    """Members grouped by their restriction to ``names`` (ambient key bits)."""
    mask = cls.domain.mask_of(names)
    groups: dict[int, list[Concept]] = {}
    for c in cls.concepts:
        groups.setdefault(c.word & mask, []).append(c)
    return {k: tuple(v) for k, v in groups.items()}


def representation_matches(
    cls: ConceptClass, rmap: RepresentationMap, sample: Sample
) -> tuple[Concept, ...]:
    """Members consistent with s whose representative fits inside dom(s).

    For a full non-clashing map exactly one match exists for every realized
    sample; anything else flags a broken map.
    """
    if rmap.concept_class != cls:
        raise InputError("representation map belongs to a different class")
    return tuple(
        c
        for c in cls.concepts
        if c.word & sample.dims_mask == sample.word
        and not rmap.mask_for(c) & ~sample.dims_mask
    )


def compress_unlabeled(
    cls: ConceptClass, rmap: RepresentationMap, sample: Sample
) -> tuple[str, ...]:
    """The representative of the unique consistent concept with r(c) ⊆ dom(s)."""
    if not rmap.full:
        raise InputError("unlabeled compression needs a full bijection")
    if not is_sample_of(cls, sample):
        raise NotASampleError(
            f"sample {sample.wire() or '(empty)'} is not realized by the class"
        )
    matches = representation_matches(cls, rmap, sample)
    if len(matches) != 1:
        shown = ",".join(c.bitstring() for c in matches) or "(none)"
        raise UniquenessViolationError(
            f"sample {sample.wire() or '(empty)'} has {len(matches)} "
            f"in-domain consistent concepts [{shown}]; the map is broken "
            "(a valid full non-clashing map always yields exactly one)"
        )
    return rmap.rep_of(matches[0])


def reconstruct_unlabeled(
    rmap: RepresentationMap, names: Iterable[str]
) -> Concept:
    """Invert the bijection on a compressed dimension set."""
    if not rmap.full:
        raise InputError("unlabeled reconstruction needs a full bijection")
    mask = rmap.concept_class.domain.mask_of(names)
    return rmap.concept_for_mask(mask)


def restrict_representation(
    cls: ConceptClass, rmap: RepresentationMap, names: Iterable[str]
) -> RepresentationMap:
    """Push a full non-clashing map down to C|A.

    Each restricted concept is represented by r(c') of its unique in-domain
    preimage; the result is again full and non-clashing.
    """
    if not rmap.full:
        raise InputError("restriction needs a full bijection")
    witness = clash_witness(rmap)
    if witness is not None:
        a, b = witness
        raise InputError(
            f"map clashes on {a.bitstring()} / {b.bitstring()}; "
            "restriction requires a non-clashing map"
        )
    mask = cls.domain.mask_of(names)
    sub = restrict(cls, names)
    pairs = []
    for packed in sorted(sub.words):
        sample = Sample(cls.domain, mask, unpack_word(packed, mask))
        matches = representation_matches(cls, rmap, sample)
        if len(matches) != 1:
            raise UniquenessViolationError(
                f"restriction to {{{','.join(sub.domain.names)}}} found "
                f"{len(matches)} preimages for {sample.wire() or '(empty)'}"
            )
        pairs.append((packed, pack_word(rmap.mask_for(matches[0]), mask)))
    return RepresentationMap(sub, tuple(pairs), full=True)


# --- conjecture hunts ------------------------------------------------------


@dataclass(frozen=True)
class HuntStage:
    """One exhaustive stage of the cornerless hunt."""

    n: int
    subsets_scanned: int
    extremal_classes: int
    classes_up_to_symmetry: int


@dataclass(frozen=True)
class CornerlessHunt:
    stages: tuple[HuntStage, ...]
    random_classes_checked: int
    counterexample: ConceptClass | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _walk_classes(n: int, budget: int, seed: int):
    """Seeded corner-peeling walks down from the full cube.

    Every visited class is extremal; a walk that stalls before reaching a
    singleton exposes a cornerless class.  Yields (V, corners) pairs.
    """
    rng = random.Random(seed)
    full = (1 << (1 << n)) - 1
    produced = 0
    while produced < budget:
        V = full
        while V and produced < budget:
            corners = _bitset.corner_vertices(n, V)
            yield V, corners
            produced += 1
            if not corners:
                return
            V &= ~(1 << rng.choice(corners))


def hunt_cornerless(
    n_max: int = 4, budget: int = 2000, seed: int = 0
) -> CornerlessHunt:
    """Search for a nonempty extremal class without a corner.

    n <= 4 is swept exhaustively (every subset of the cube, deduplicated by
    column flips and permutations); n = 5 is sampled by seeded peeling
    walks, ``budget`` classes total.  Finding anything refutes the peeling
    conjecture, so a hit is returned loudly rather than raised.
    """
    if not 1 <= n_max <= 5:
        raise InputError("n_max must be between 1 and 5")
    stages = []
    for n in range(1, min(n_max, 4) + 1):
        extremal = 0
        canonical: set[int] = set()
        for V in range(1, 1 << (1 << n)):
            if _bitset.is_extremal(n, V):
                extremal += 1
                canonical.add(_bitset.canonical_form(n, V))
        for V in sorted(canonical):
            if not _bitset.has_corner(n, V):
                return CornerlessHunt(
                    tuple(stages), 0, _class_of_bits(n, V)
                )
        stages.append(
            HuntStage(
                n=n,
                subsets_scanned=(1 << (1 << n)) - 1,
                extremal_classes=extremal,
                classes_up_to_symmetry=len(canonical),
            )
        )
    random_checked = 0
    if n_max >= 5:
        for V, corners in _walk_classes(5, budget, seed):
            random_checked += 1
            if not corners and V:
                return CornerlessHunt(
                    tuple(stages), random_checked, _class_of_bits(5, V)
                )
    return CornerlessHunt(tuple(stages), random_checked, None)


def _class_of_bits(n: int, V: int) -> ConceptClass:
    domain = Domain.numbered(n)
    return ConceptClass.from_words(domain, _indices(V))


def hunt_intermediate(
    lower: ConceptClass, upper: ConceptClass, max_add: int = 2
) -> ConceptClass | None:
    """Search for an extremal class strictly between lower and upper.

    Tries additions of up to ``max_add`` concepts from upper \\ lower
    (smallest first, canonical order).  If the in-between conjecture holds
    a single-concept addition always exists, so None — reported as a
    finding, not an error — is the surprising outcome.
    """
    if lower.domain != upper.domain:
        raise InputError("classes must share a domain")
    if not lower.words <= upper.words:
        raise InputError("lower must be a subset of upper")
    diff = sorted(upper.words - lower.words, key=upper.domain.lex_key)
    if len(diff) < 2:
        raise InputError("the gap must contain at least two concepts")
    for c in (lower, upper):
        if not is_extremal(c):
            raise NotExtremalError("both endpoints must be extremal")
    limit = min(max_add, len(diff) - 1)
    for k in range(1, limit + 1):
        for combo in combinations(diff, k):
            candidate = ConceptClass.from_words(
                lower.domain, lower.words | set(combo)
            )
            if is_extremal(candidate):
                return candidate
    return None
