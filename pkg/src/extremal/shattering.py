"""Shattering, strong shattering, and the extremality characterizations.

``shattered_sets`` / ``strongly_shattered_sets`` enumerate by set size with
downward-closure pruning (both families are downward closed), so the cost is
driven by the family sizes rather than 2**n in the common case.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

from .core import (
    ConceptClass,
    Domain,
    InputError,
    _indices,
    complement,
    dimset_key,
)


@dataclass(frozen=True)
class SetFamily:
    """A family of dimension sets in canonical (size, lexicographic) order."""

    domain: Domain
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        full = self.domain.full_mask
        seen = set()
        for m in self.masks:
            if m & ~full:
                raise InputError("family member strays off the domain")
            if m in seen:
                raise InputError("duplicate family member")
            seen.add(m)
        object.__setattr__(self, "masks", tuple(sorted(seen, key=dimset_key)))

    @classmethod
    def of(cls, domain: Domain, sets: Iterable[Iterable[str]]) -> "SetFamily":
        return cls(domain, tuple(domain.mask_of(s) for s in sets))

    @property
    def sets(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.domain.names_of(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.sets)

    def __contains__(self, names: Iterable[str]) -> bool:
        return self.domain.mask_of(names) in set(self.masks)

    def max_size(self) -> int:
        """Largest member size; -1 for the empty family."""
        return max((m.bit_count() for m in self.masks), default=-1)

    def is_downward_closed(self) -> bool:
        members = set(self.masks)
        return all(m & ~(1 << i) in members for m in self.masks for i in _indices(m))

    def to_text(self) -> str:
        """One line per set, members comma-separated (empty line for the
        empty set); the JSON form is the machine-friendly alternative."""
        return "\n".join(",".join(self.domain.names_of(m)) for m in self.masks)

    def to_json_obj(self) -> list[list[str]]:
        return [list(self.domain.names_of(m)) for m in self.masks]


def _level_masks(
    words: frozenset[int], n: int, test, size_bound: int
) -> list[int]:
    """Masks passing ``test``, enumerated by size with facet pruning."""
    if not words:
        return []
    out = [0]
    frontier = [0]
    size = 0
    while frontier and size < size_bound:
        size += 1
        prev = set(frontier)
        candidates: set[int] = set()
        for m in frontier:
            for i in range(n):
                if not m & (1 << i):
                    candidates.add(m | (1 << i))
        frontier = []
        for m in sorted(candidates):
            if size > 1 and any(m ^ (1 << i) not in prev for i in _indices(m)):
                continue
            if test(m, size):
                frontier.append(m)
        out.extend(frontier)
    return out


def shattered_sets(cls: ConceptClass) -> SetFamily:
    """s(C): every S with C|S full; empty family for the empty class."""
    words = cls.words
    n = len(cls.domain)

    def test(mask: int, size: int) -> bool:
        return len({w & mask for w in words}) == 1 << size

    bound = max(len(words), 1).bit_length() - 1  # 2**size <= |C| is necessary
    return SetFamily(cls.domain, tuple(_level_masks(words, n, test, bound)))


def strongly_shattered_sets(cls: ConceptClass) -> SetFamily:
    """st(C): every S heading a cube of C (a full copy of {0,1}^S in C)."""
    words = cls.words
    n = len(cls.domain)
    full = cls.domain.full_mask

    def test(mask: int, size: int) -> bool:
        need = 1 << size
        counts: dict[int, int] = {}
        keep = full & ~mask
        for w in words:
            t = w & keep
            k = counts.get(t, 0) + 1
            if k == need:
                return True
            counts[t] = k
        return False

    bound = max(len(words), 1).bit_length() - 1
    return SetFamily(cls.domain, tuple(_level_masks(words, n, test, bound)))


def vc_dimension(cls: ConceptClass) -> int:
    """Largest shattered-set size; -1 for the empty class."""
    return shattered_sets(cls).max_size()


@dataclass(frozen=True)
class SandwichReport:
    """The chain |st(C)| <= |C| <= |s(C)| with its three counts."""

    strongly_shattered_count: int
    class_size: int
    shattered_count: int

    @property
    def holds(self) -> bool:
        return (
            self.strongly_shattered_count
            <= self.class_size
            <= self.shattered_count
        )


def sandwich_check(cls: ConceptClass) -> SandwichReport:
    return SandwichReport(
        len(strongly_shattered_sets(cls)), len(cls), len(shattered_sets(cls))
    )


def is_extremal(cls: ConceptClass) -> bool:
    """True iff every shattered set is strongly shattered."""
    return shattered_sets(cls).masks == strongly_shattered_sets(cls).masks


@dataclass(frozen=True)
class ExtremalityReport:
    """The five equivalent extremality conditions, evaluated independently.

    Flags in order: s(C)=st(C); |s(C)|=|st(C)|; |st(C)|=|C|; |C|=|s(C)|;
    the complement class is extremal.  They must agree — disagreement is an
    implementation bug, not a property of the input.
    """

    is_extremal: bool
    class_size: int
    shattered_count: int
    strongly_shattered_count: int
    vc_dim: int
    condition_flags: tuple[bool, bool, bool, bool, bool]
    witness: tuple[str, ...] | None


def extremality_report(cls: ConceptClass) -> ExtremalityReport:
    s = shattered_sets(cls)
    st = strongly_shattered_sets(cls)
    flags = (
        s.masks == st.masks,
        len(s) == len(st),
        len(st) == len(cls),
        len(cls) == len(s),
        is_extremal(complement(cls)),
    )
    if len(set(flags)) != 1:
        raise RuntimeError(
            f"extremality characterizations disagree: {flags}; "
            "this is a bug in the library, please report it"
        )
    witness = None
    if not flags[0]:
        st_masks = set(st.masks)
        gap = min((m for m in s.masks if m not in st_masks), key=dimset_key)
        witness = cls.domain.names_of(gap)
    return ExtremalityReport(
        is_extremal=flags[0],
        class_size=len(cls),
        shattered_count=len(s),
        strongly_shattered_count=len(st),
        vc_dim=s.max_size(),
        condition_flags=flags,
        witness=witness,
    )


def down_shift(cls: ConceptClass, name: str) -> ConceptClass:
    """Shift every concept with 1 on ``name`` down when its 0-neighbor is
    absent.  Preserves the class size; never grows s(C); never shrinks st(C).
    """
    bit = 1 << cls.domain.index(name)
    words = cls.words
    return ConceptClass.from_words(
        cls.domain,
        (w ^ bit if w & bit and w ^ bit not in words else w for w in words),
    )


def down_shift_closure(cls: ConceptClass) -> ConceptClass:
    """Down-shift on every dimension, in domain order, until fixpoint.

    One pass suffices in theory; the loop is defensive (total concept weight
    strictly drops on every changed pass, so it terminates).
    """
    cur = cls
    while True:
        nxt = cur
        for name in cls.domain.names:
            nxt = down_shift(nxt, name)
        if nxt.words == cur.words:
            return cur
        cur = nxt


def is_downward_closed(cls: ConceptClass) -> bool:
    words = cls.words
    return all(
        w & ~(1 << i) in words for w in words for i in _indices(w)
    )


def sauer_shelah_bound(n: int, d: int) -> int:
    """sum_{i<=d} C(n, i) — the maximum-size bound at VC dimension d."""
    if d < 0:
        return 0
    return sum(comb(n, i) for i in range(min(d, n) + 1))


def is_maximum(cls: ConceptClass) -> bool:
    """True iff the class meets the Sauer-Shelah bound at its VC dimension."""
    return len(cls) == sauer_shelah_bound(len(cls.domain), vc_dimension(cls))
