"""Concept classes over finite Boolean domains.

A concept is stored as one integer word: bit ``i`` holds its value on
``domain.names[i]``.  Classes, cubes, and samples all share that encoding,
so a concept's word doubles as its vertex index in the ``2**n`` hypercube.
Everything is immutable after construction and every operation is a pure
function with canonically ordered output: repeated calls are bit-identical.

Canonical orders used throughout:

* concepts — lexicographic by bit string (``names[0]`` most significant);
* dimension sets — by (size, lexicographic on positions);
* cubes — by (dimension set, tag bit string).
"""

from __future__ import annotations

from collections import deque
from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

#: Default guard on domain size; subset enumeration is exponential.  Pass an
#: explicit ``cap`` to ``Domain`` to go bigger deliberately.
DOMAIN_CAP = 24

_LABEL_FORBIDDEN = set(' \t\r\n,=#+*>{}"')


class InputError(ValueError):
    """Bad argument or violated precondition."""


class ParseError(InputError):
    """Malformed textual input."""


class NotASampleError(InputError):
    """The sample is inconsistent with every concept of the class."""


class NotExtremalError(InputError):
    """The operation requires an extremal class."""


class NoCubeError(InputError):
    """No cube of the class has the requested dimension set."""


class UniquenessViolationError(InputError):
    """A representation map failed its exactly-one-concept guarantee."""


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def dimset_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key realising the canonical (size, lexicographic) order."""
    return (mask.bit_count(), _indices(mask))


@dataclass(frozen=True)
class Domain:
    """Ordered, uniquely named dimensions; the order fixes bit positions."""

    names: tuple[str, ...]
    cap: InitVar[int | None] = None

    def __post_init__(self, cap: int | None) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        limit = DOMAIN_CAP if cap is None else cap
        if len(names) > limit:
            raise InputError(
                f"domain has {len(names)} dimensions, cap is {limit}; "
                "pass cap= explicitly to enumerate something this large"
            )
        seen = set()
        for name in names:
            # labels must survive the wire formats (whitespace/','/'='/...)
            if not name or _LABEL_FORBIDDEN & set(name):
                raise InputError(f"bad dimension label {name!r}")
            if name in seen:
                raise InputError(f"duplicate dimension label {name!r}")
            seen.add(name)

    @classmethod
    def numbered(cls, n: int, prefix: str = "x") -> "Domain":
        if n < 0:
            raise InputError("domain size must be nonnegative")
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown dimension {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in _indices(mask))

    def subdomain(self, names: Iterable[str]) -> "Domain":
        """Domain of the given dimensions in inherited order."""
        mask = self.mask_of(names)
        return Domain(self.names_of(mask))

    def word_of_bits(self, bits: Sequence[int]) -> int:
        if len(bits) != len(self.names):
            raise InputError(
                f"row has {len(bits)} entries, domain has {len(self.names)}"
            )
        word = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise InputError(f"entries must be 0/1, got {b!r}")
            word |= b << i
        return word

    def word_of_string(self, s: str) -> int:
        return self.word_of_bits([_bit_of_char(c) for c in s])

    def string_of_word(self, word: int) -> str:
        return "".join(str((word >> i) & 1) for i in range(len(self.names)))

    def lex_key(self, word: int) -> int:
        """Integer whose order matches bit-string order of ``word``."""
        key = 0
        n = len(self.names)
        for i in range(n):
            key |= ((word >> i) & 1) << (n - 1 - i)
        return key


def _bit_of_char(c: str) -> int:
    if c == "0":
        return 0
    if c == "1":
        return 1
    raise ParseError(f"expected 0/1, got {c!r}")


def pack_word(word: int, keep_mask: int) -> int:
    """Reindex ``word``'s bits at ``keep_mask`` positions into a dense word."""
    out = 0
    for j, i in enumerate(_indices(keep_mask)):
        out |= ((word >> i) & 1) << j
    return out


def unpack_word(packed: int, keep_mask: int) -> int:
    """Inverse of :func:`pack_word` (zero everywhere off ``keep_mask``)."""
    out = 0
    for j, i in enumerate(_indices(keep_mask)):
        out |= ((packed >> j) & 1) << i
    return out


@dataclass(frozen=True)
class Concept:
    """One 0/1 assignment on a domain, stored as a bit word."""

    domain: Domain
    word: int

    def __post_init__(self) -> None:
        if not 0 <= self.word <= self.domain.full_mask:
            raise InputError(f"word {self.word} out of range for domain")

    @classmethod
    def from_bits(cls, domain: Domain, bits: Sequence[int]) -> "Concept":
        return cls(domain, domain.word_of_bits(bits))

    @classmethod
    def from_string(cls, domain: Domain, s: str) -> "Concept":
        return cls(domain, domain.word_of_string(s))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.word >> i) & 1 for i in range(len(self.domain)))

    def bitstring(self) -> str:
        return self.domain.string_of_word(self.word)

    def value(self, name: str) -> int:
        return (self.word >> self.domain.index(name)) & 1

    def sample(self, names: Iterable[str]) -> "Sample":
        """Restriction of this concept to the given dimensions."""
        mask = self.domain.mask_of(names)
        return Sample(self.domain, mask, self.word & mask)

    def __str__(self) -> str:
        return self.bitstring()


@dataclass(frozen=True)
class Sample:
    """A labeled sample: a 0/1 assignment on a subset of a domain."""

    domain: Domain
    dims_mask: int
    word: int

    def __post_init__(self) -> None:
        if self.dims_mask & ~self.domain.full_mask:
            raise InputError("sample domain is not a subset of the domain")
        if self.word & ~self.dims_mask:
            raise InputError("sample labels stray off the sample domain")

    @classmethod
    def empty(cls, domain: Domain) -> "Sample":
        return cls(domain, 0, 0)

    @classmethod
    def from_items(cls, domain: Domain, items: Iterable[tuple[str, int]]) -> "Sample":
        mask = word = 0
        for name, bit in items:
            b = 1 << domain.index(name)
            if mask & b:
                raise InputError(f"dimension {name!r} labeled twice")
            if bit not in (0, 1):
                raise InputError(f"labels must be 0/1, got {bit!r}")
            mask |= b
            word |= bit << domain.index(name)
        return cls(domain, mask, word)

    @classmethod
    def parse(cls, domain: Domain, text: str) -> "Sample":
        """Parse the ``x2=1,x4=1,x5=0`` wire format ('' = empty sample)."""
        text = text.strip()
        if not text:
            return cls.empty(domain)
        items = []
        for part in text.split(","):
            name, eq, bit = part.strip().partition("=")
            if not eq or bit not in ("0", "1"):
                raise ParseError(f"bad sample item {part!r}")
            items.append((name, int(bit)))
        return cls.from_items(domain, items)

    @property
    def names(self) -> tuple[str, ...]:
        return self.domain.names_of(self.dims_mask)

    def items(self) -> tuple[tuple[str, int], ...]:
        return tuple(
            (self.domain.names[i], (self.word >> i) & 1)
            for i in _indices(self.dims_mask)
        )

    def __len__(self) -> int:
        return self.dims_mask.bit_count()

    def wire(self) -> str:
        return ",".join(f"{name}={bit}" for name, bit in self.items())

    def subsample(self, names: Iterable[str]) -> "Sample":
        mask = self.domain.mask_of(names)
        if mask & ~self.dims_mask:
            raise InputError("not a subset of the sample domain")
        return Sample(self.domain, mask, self.word & mask)

    def __str__(self) -> str:
        return self.wire()


@dataclass(frozen=True)
class Edge:
    """A one-inclusion edge: two concepts differing exactly on ``dim``."""

    lo: Concept
    hi: Concept
    dim: str

    def __post_init__(self) -> None:
        bit = 1 << self.lo.domain.index(self.dim)
        if self.lo.domain != self.hi.domain or self.lo.word ^ self.hi.word != bit:
            raise InputError("edge endpoints must differ exactly on dim")
        if self.lo.word & bit:
            raise InputError("lo endpoint must carry 0 on dim")


@dataclass(frozen=True)
class Cube:
    """A subcube: free dimensions ``dims_mask``, fixed tag elsewhere."""

    domain: Domain
    dims_mask: int
    tag_word: int

    def __post_init__(self) -> None:
        if self.dims_mask & ~self.domain.full_mask:
            raise InputError("cube dimensions stray off the domain")
        if self.tag_word & self.dims_mask or self.tag_word & ~self.domain.full_mask:
            raise InputError("cube tag must live off the free dimensions")

    @classmethod
    def from_pattern(cls, domain: Domain, pattern: str) -> "Cube":
        """Parse a ``{0,1,*}`` pattern like ``**0*00``."""
        if len(pattern) != len(domain):
            raise ParseError(
                f"pattern {pattern!r} has {len(pattern)} places, "
                f"domain has {len(domain)}"
            )
        dims = tag = 0
        for i, c in enumerate(pattern):
            if c == "*":
                dims |= 1 << i
            elif c in "01":
                tag |= int(c) << i
            else:
                raise ParseError(f"bad pattern character {c!r}")
        return cls(domain, dims, tag)

    @property
    def dims(self) -> tuple[str, ...]:
        return self.domain.names_of(self.dims_mask)

    def __len__(self) -> int:
        return self.dims_mask.bit_count()

    def pattern(self) -> str:
        out = []
        for i in range(len(self.domain)):
            if (self.dims_mask >> i) & 1:
                out.append("*")
            else:
                out.append(str((self.tag_word >> i) & 1))
        return "".join(out)

    def words(self) -> Iterator[int]:
        """All member words, ascending by bit-string order of the free part."""
        free = _indices(self.dims_mask)
        for k in range(1 << len(free)):
            w = self.tag_word
            for j, i in enumerate(free):
                w |= ((k >> j) & 1) << i
            yield w

    def concepts(self) -> tuple[Concept, ...]:
        words = sorted(self.words(), key=self.domain.lex_key)
        return tuple(Concept(self.domain, w) for w in words)

    def contains_word(self, word: int) -> bool:
        return word & ~self.dims_mask == self.tag_word

    def __contains__(self, concept: Concept) -> bool:
        return concept.domain == self.domain and self.contains_word(concept.word)

    def tag_concept(self) -> Concept:
        """The tag as a concept over the domain minus the free dimensions."""
        keep = self.domain.full_mask & ~self.dims_mask
        sub = Domain(self.domain.names_of(keep))
        return Concept(sub, pack_word(self.tag_word, keep))

    def __str__(self) -> str:
        return self.pattern()


@dataclass(frozen=True)
class ConceptClass:
    """A finite set of concepts over one domain, canonically ordered."""

    domain: Domain
    concepts: tuple[Concept, ...]

    def __post_init__(self) -> None:
        words = set()
        for c in self.concepts:
            if c.domain != self.domain:
                raise InputError("all concepts must share the class domain")
            words.add(c.word)
        ordered = tuple(
            Concept(self.domain, w)
            for w in sorted(words, key=self.domain.lex_key)
        )
        object.__setattr__(self, "concepts", ordered)

    @classmethod
    def from_words(cls, domain: Domain, words: Iterable[int]) -> "ConceptClass":
        return cls(domain, tuple(Concept(domain, w) for w in set(words)))

    @cached_property
    def words(self) -> frozenset[int]:
        return frozenset(c.word for c in self.concepts)

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self.concepts)

    def __contains__(self, concept: Concept) -> bool:
        return concept.domain == self.domain and concept.word in self.words

    def has_word(self, word: int) -> bool:
        return word in self.words

    def bitstrings(self) -> tuple[str, ...]:
        return tuple(c.bitstring() for c in self.concepts)


def make_class(domain: Domain, rows: Iterable[Sequence[int]]) -> ConceptClass:
    """Build a class from 0/1 rows; duplicates collapse, rows must fit."""
    return ConceptClass.from_words(domain, (domain.word_of_bits(r) for r in rows))


def class_from_strings(domain: Domain, rows: Iterable[str]) -> ConceptClass:
    return ConceptClass.from_words(domain, (domain.word_of_string(r) for r in rows))


def is_sample_of(cls: ConceptClass, sample: Sample) -> bool:
    """True iff some concept of the class is consistent with the sample."""
    if sample.domain != cls.domain:
        raise InputError("sample lives on a different domain")
    mask, word = sample.dims_mask, sample.word
    return any(w & mask == word for w in cls.words)


def restrict(cls: ConceptClass, names: Iterable[str]) -> ConceptClass:
    """C|S: project every concept onto S; duplicates collapse eagerly.

    The restriction of a nonempty class to the empty set is the class
    containing the single empty concept.
    """
    mask = cls.domain.mask_of(names)
    sub = Domain(cls.domain.names_of(mask))
    return ConceptClass.from_words(sub, {pack_word(w, mask) for w in cls.words})


def remove_dims(cls: ConceptClass, names: Iterable[str]) -> ConceptClass:
    """C - S: restriction to the complementary dimension set."""
    drop = cls.domain.mask_of(names)
    return restrict(cls, cls.domain.names_of(cls.domain.full_mask & ~drop))


def reduction(cls: ConceptClass, names: Iterable[str]) -> ConceptClass:
    """C^S: tags of the cubes of C with dimension set S, over dom(C)-S."""
    mask = cls.domain.mask_of(names)
    keep = cls.domain.full_mask & ~mask
    sub = Domain(cls.domain.names_of(keep))
    counts: dict[int, int] = {}
    for w in cls.words:
        t = w & keep
        counts[t] = counts.get(t, 0) + 1
    need = 1 << mask.bit_count()
    return ConceptClass.from_words(
        sub, (pack_word(t, keep) for t, k in counts.items() if k == need)
    )


def complement(cls: ConceptClass) -> ConceptClass:
    """All concepts of the domain not in the class."""
    full = 1 << len(cls.domain)
    return ConceptClass.from_words(
        cls.domain, (w for w in range(full) if w not in cls.words)
    )


def flip_column(cls: ConceptClass, name: str) -> ConceptClass:
    bit = 1 << cls.domain.index(name)
    return ConceptClass.from_words(cls.domain, (w ^ bit for w in cls.words))


def one_inclusion_edges(cls: ConceptClass) -> tuple[Edge, ...]:
    """All pairs of concepts at Hamming distance one, canonically ordered."""
    edges = []
    for lo in cls.concepts:
        for i in range(len(cls.domain)):
            bit = 1 << i
            if not lo.word & bit and (lo.word | bit) in cls.words:
                edges.append((cls.domain.lex_key(lo.word), i, lo.word))
    edges.sort()
    return tuple(
        Edge(
            Concept(cls.domain, w),
            Concept(cls.domain, w | (1 << i)),
            cls.domain.names[i],
        )
        for _, i, w in edges
    )


def graph_distance(cls: ConceptClass, a: Concept, b: Concept) -> int | None:
    """One-inclusion graph distance between two members; None if unreachable."""
    for c in (a, b):
        if c not in cls:
            raise InputError(f"{c.bitstring()} is not in the class")
    if a.word == b.word:
        return 0
    n = len(cls.domain)
    words = cls.words
    seen = {a.word}
    queue = deque([(a.word, 0)])
    while queue:
        w, d = queue.popleft()
        for i in range(n):
            v = w ^ (1 << i)
            if v in words and v not in seen:
                if v == b.word:
                    return d + 1
                seen.add(v)
                queue.append((v, d + 1))
    return None


# --- concept-class text format -------------------------------------------
#
# line 1: whitespace-separated dimension names; each further line: one 0/1
# string per concept.  '#' starts a comment; blank lines are ignored.  The
# degenerate empty-domain class has no text form (its header would be
# indistinguishable from a blank line); it only exists in the object model.


def parse_class_text(text: str) -> ConceptClass:
    lines = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise ParseError("empty input: missing header line")
    header, rows = lines[0], lines[1:]
    domain = Domain(tuple(header.split()))
    return ConceptClass.from_words(
        domain, (domain.word_of_string(r) for r in rows)
    )


def format_class_text(cls: ConceptClass) -> str:
    if not cls.domain.names:
        raise InputError("the empty-domain class has no text form")
    lines = [" ".join(cls.domain.names)]
    lines.extend(c.bitstring() for c in cls.concepts)
    return "\n".join(lines) + "\n"
