"""Generators for the example classes: closures, balls, plane-arrangement
cells, graph-orientation classes, glued-cube complements, exhaustive and
random enumeration, and the named builtin fixtures.

All geometry is exact rational (stdlib fractions); nothing here touches
floating point.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import _bitset
from .core import (
    ConceptClass,
    Domain,
    InputError,
    class_from_strings,
    parse_class_text,
)
from .cubes import expression_to_class, parse_cube_expression
from .shattering import shattered_sets, strongly_shattered_sets

# --- order-theoretic and metric families -----------------------------------


def downward_closure(seeds: ConceptClass) -> ConceptClass:
    """Close the seed concepts downward (drop any subset of their 1s)."""
    words: set[int] = set()
    stack = list(seeds.words)
    while stack:
        w = stack.pop()
        if w in words:
            continue
        words.add(w)
        t = w
        while t:
            low = t & -t
            stack.append(w ^ low)
            t ^= low
    # the closure of nothing is nothing; of anything else it contains 0
    return ConceptClass.from_words(seeds.domain, words)


def hamming_ball(n: int, d: int) -> ConceptClass:
    """All words of weight at most d over x1..xn."""
    if d < 0 or d > n:
        raise InputError("need 0 <= d <= n")
    domain = Domain.numbered(n)
    return ConceptClass.from_words(
        domain, (w for w in range(1 << n) if w.bit_count() <= d)
    )


def full_cube(n: int) -> ConceptClass:
    domain = Domain.numbered(n)
    return ConceptClass.from_words(domain, range(1 << n))


def parity_class(n: int) -> ConceptClass:
    """All words with an even number of ones — the classic non-extremal class."""
    if n < 1:
        raise InputError("parity needs n >= 1")
    domain = Domain.numbered(n)
    return ConceptClass.from_words(
        domain, (w for w in range(1 << n) if w.bit_count() % 2 == 0)
    )


# --- cells of a line arrangement -------------------------------------------

Point = tuple[Fraction, Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise InputError("geometry is exact: pass ints, strings, or Fractions")
    return Fraction(value)


@dataclass(frozen=True)
class LineArrangement:
    """Oriented rational lines plus a convex polygonal region.

    A line (a, b, c) has positive side a*x + b*y > c.  No two lines may
    coincide (up to any nonzero scalar) and no three may share a point; the
    region must be a convex polygon with nonempty interior (vertices are
    normalized to counterclockwise order).
    """

    lines: tuple[tuple[Fraction, Fraction, Fraction], ...]
    region: tuple[Point, ...]

    def __post_init__(self) -> None:
        lines = tuple(
            (_frac(a), _frac(b), _frac(c)) for a, b, c in self.lines
        )
        object.__setattr__(self, "lines", lines)
        if not lines:
            raise InputError("need at least one line")
        for a, b, _ in lines:
            if a == 0 and b == 0:
                raise InputError("degenerate line: a = b = 0")
        for (i, l1), (j, l2) in combinations(enumerate(lines), 2):
            if _proportional(l1, l2):
                raise InputError(f"lines {i + 1} and {j + 1} coincide")
        for (i, l1), (j, l2), (k, l3) in combinations(enumerate(lines), 3):
            p = _intersect(l1, l2)
            if p is not None and _on_line(l3, p):
                raise InputError(
                    f"lines {i + 1}, {j + 1}, {k + 1} are concurrent"
                )
        region = tuple((_frac(x), _frac(y)) for x, y in self.region)
        if len(region) < 3 or len(set(region)) != len(region):
            raise InputError("region needs at least three distinct vertices")
        area2 = sum(
            region[i][0] * region[(i + 1) % len(region)][1]
            - region[(i + 1) % len(region)][0] * region[i][1]
            for i in range(len(region))
        )
        if area2 == 0:
            raise InputError("region has no interior")
        if area2 < 0:
            region = tuple(reversed(region))
        object.__setattr__(self, "region", region)
        m = len(region)
        for i in range(m):
            ax, ay = region[i]
            bx, by = region[(i + 1) % m]
            cx, cy = region[(i + 2) % m]
            turn = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            if turn <= 0:
                raise InputError("region must be strictly convex")

    @property
    def domain(self) -> Domain:
        return Domain(tuple(f"p{i + 1}" for i in range(len(self.lines))))

    def edge_lines(self) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
        """Region edges as lines, positive side facing the interior."""
        out = []
        m = len(self.region)
        for i in range(m):
            (x1, y1), (x2, y2) = self.region[i], self.region[(i + 1) % m]
            # CCW interior lies left of the edge: (x2-x1)(y-y1)-(y2-y1)(x-x1)>0
            a = -(y2 - y1)
            b = x2 - x1
            c = a * x1 + b * y1
            out.append((a, b, c))
        return tuple(out)


def _proportional(l1, l2) -> bool:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    return a1 * b2 == a2 * b1 and a1 * c2 == a2 * c1 and b1 * c2 == b2 * c1


def _intersect(l1, l2) -> Point | None:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def _on_line(line, p: Point) -> bool:
    a, b, c = line
    return a * p[0] + b * p[1] == c


def cells_in_region(arrangement: LineArrangement) -> ConceptClass:
    """Sign vectors of the open cells meeting the open region interior.

    Exact test: the closure of cell ∩ region is spanned by the weakly
    feasible pairwise intersections of the constraint lines, and the open
    intersection is nonempty iff three of those points are affinely
    independent (the closure has interior).  Boundary-touching cells are
    therefore excluded, as they should be.
    """
    lines = arrangement.lines
    constraints = lines + arrangement.edge_lines()
    points: list[Point] = []
    for l1, l2 in combinations(constraints, 2):
        p = _intersect(l1, l2)
        if p is not None:
            points.append(p)

    edge = arrangement.edge_lines()
    words = []
    for v in range(1 << len(lines)):
        feasible = []
        for p in points:
            ok = all(
                a * p[0] + b * p[1] >= c
                if (v >> i) & 1
                else a * p[0] + b * p[1] <= c
                for i, (a, b, c) in enumerate(lines)
            ) and all(a * p[0] + b * p[1] >= c for a, b, c in edge)
            if ok:
                feasible.append(p)
        if _has_interior(feasible):
            words.append(v)
    return ConceptClass.from_words(arrangement.domain, words)


def _has_interior(points: Sequence[Point]) -> bool:
    """Three affinely independent points among ``points``?"""
    base = None
    direction = None
    for p in points:
        if base is None:
            base = p
            continue
        if direction is None:
            if p != base:
                direction = (p[0] - base[0], p[1] - base[1])
            continue
        cross = direction[0] * (p[1] - base[1]) - direction[1] * (p[0] - base[0])
        if cross != 0:
            return True
    return False


def full_plane_region(
    lines: Sequence[tuple], margin: int = 1
) -> tuple[Point, ...]:
    """A rectangle containing every pairwise intersection (plus margin).

    With this region every cell of the arrangement meets the interior, so
    ``cells_in_region`` yields the full cell set.
    """
    lines = tuple((_frac(a), _frac(b), _frac(c)) for a, b, c in lines)
    points: list[Point] = []
    for l1, l2 in combinations(lines, 2):
        p = _intersect(l1, l2)
        if p is not None:
            points.append(p)
    for a, b, c in lines:  # an anchor per line covers vertex-free arrangements
        points.append((c / a, Fraction(0)) if a else (Fraction(0), c / b))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


# --- orientation classes of a reference graph ------------------------------


@dataclass(frozen=True)
class RefGraph:
    """An undirected graph with a reference orientation per edge and two
    marked vertices.  Dimension e is 0 when e keeps its reference direction.
    """

    edges: tuple[tuple[str, str], ...]
    source: str
    sink: str

    def __post_init__(self) -> None:
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) > 20:
            raise InputError("orientation sweep is 2^|E|; |E| capped at 20")
        seen = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InputError(f"duplicate edge {u}-{v}")
            seen.add(key)
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        verts = self.vertices
        for w in (self.source, self.sink):
            if w not in verts:
                raise InputError(f"marked vertex {w!r} not in the graph")

    @property
    def vertices(self) -> tuple[str, ...]:
        out: list[str] = []
        for u, v in self.edges:
            for w in (u, v):
                if w not in out:
                    out.append(w)
        return tuple(out)

    @property
    def domain(self) -> Domain:
        return Domain(tuple(f"{u}-{v}" for u, v in self.edges))


def _reachable(adj: dict[str, list[str]], start: str, goal: str) -> bool:
    stack, seen = [start], {start}
    while stack:
        u = stack.pop()
        if u == goal:
            return True
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def st_orientation_class(graph: RefGraph) -> ConceptClass:
    """Orientations (as flip vectors) admitting a directed source→sink path."""
    words = []
    for w in range(1 << len(graph.edges)):
        adj: dict[str, list[str]] = {}
        for i, (u, v) in enumerate(graph.edges):
            if (w >> i) & 1:
                u, v = v, u
            adj.setdefault(u, []).append(v)
        if _reachable(adj, graph.source, graph.sink):
            words.append(w)
    return ConceptClass.from_words(graph.domain, words)


def count_st_connected_subgraphs(graph: RefGraph) -> int:
    """Edge subsets whose undirected graph connects source to sink."""
    count = 0
    for w in range(1 << len(graph.edges)):
        adj: dict[str, list[str]] = {}
        for i, (u, v) in enumerate(graph.edges):
            if (w >> i) & 1:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        if _reachable(adj, graph.source, graph.sink):
            count += 1
    return count


# --- glued-cube complements -------------------------------------------------


def glued_cube_complement(k: int) -> ConceptClass:
    """Complement of a k-cube with a pendant edge glued to every vertex.

    Dimensions: x1..xk for the cube, then one e<bits> per cube vertex
    (bits read x1 first), so n = k + 2^k.  The complement is a maximal
    extremal class of VC dimension n-2 that is not maximum.
    """
    if not 1 <= k <= 3:
        raise InputError("k must be 1..3 (n = k + 2^k grows fast)")
    labels = sorted(
        "".join(str((q >> i) & 1) for i in range(k)) for q in range(1 << k)
    )
    domain = Domain(
        tuple(f"x{i + 1}" for i in range(k)) + tuple(f"e{b}" for b in labels)
    )
    members: set[int] = set()
    for q in range(1 << k):
        label = "".join(str((q >> i) & 1) for i in range(k))
        members.add(q)  # cube bits match domain bits; pendants all zero
        members.add(q | (1 << (k + labels.index(label))))
    n = k + (1 << k)
    return ConceptClass.from_words(
        domain, (w for w in range(1 << n) if w not in members)
    )


# --- enumeration and sampling ----------------------------------------------


def enumerate_extremal(
    n: int, up_to_symmetry: bool = False
) -> Iterator[ConceptClass]:
    """Every extremal class over x1..xn (n <= 4), the empty class included."""
    if not 0 <= n <= 4:
        raise InputError("exhaustive enumeration is for n <= 4")
    domain = Domain.numbered(n)
    seen: set[int] = set()
    for V in range(1 << (1 << n)):
        if not _bitset.is_extremal(n, V):
            continue
        if up_to_symmetry:
            canon = _bitset.canonical_form(n, V) if n else V
            if canon in seen:
                continue
            seen.add(canon)
            V = canon
        words = []
        t = V
        while t:
            low = t & -t
            words.append(low.bit_length() - 1)
            t ^= low
        yield ConceptClass.from_words(domain, words)


def random_class(n: int, density: float, seed: int) -> ConceptClass:
    """Each of the 2^n concepts joins independently with probability density."""
    if not 0 <= density <= 1:
        raise InputError("density must be in [0, 1]")
    rng = random.Random(seed)
    domain = Domain.numbered(n)
    return ConceptClass.from_words(
        domain, (w for w in range(1 << n) if rng.random() < density)
    )


def random_extremal_class(n: int, removals: int, seed: int) -> ConceptClass:
    """Peel ``removals`` random corners off the full n-cube (n <= 5).

    Every intermediate class is extremal, so this samples the extremal
    landscape cheaply; uniform subset sampling almost never hits it.
    """
    if not 1 <= n <= 5:
        raise InputError("walk sampler is for 1 <= n <= 5")
    if not 0 <= removals < (1 << n):
        raise InputError("removals must leave at least one concept")
    rng = random.Random(seed)
    V = (1 << (1 << n)) - 1
    for _ in range(removals):
        corners = _bitset.corner_vertices(n, V)
        if not corners:  # would refute the peeling conjecture
            from .unlabeled import NoCornerError

            raise NoCornerError(
                ConceptClass.from_words(
                    Domain.numbered(n),
                    [v for v in range(1 << n) if (V >> v) & 1],
                ),
                "random walk stalled",
            )
        V &= ~(1 << rng.choice(corners))
    domain = Domain.numbered(n)
    return ConceptClass.from_words(
        domain, (v for v in range(1 << n) if (V >> v) & 1)
    )


# --- duality ----------------------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    """Outcome of the strong-shatter/shatter complement dichotomy sweep."""

    subsets_checked: int
    exhaustive: bool
    violation: tuple[str, ...] | None

    @property
    def ok(self) -> bool:
        return self.violation is None


def complement_duality_check(
    cls: ConceptClass,
    exhaustive_limit: int = 8,
    samples: int = 2000,
    seed: int = 0,
) -> DualityReport:
    """For every Y: exactly one of [C strongly shatters Y, the complement
    shatters X \\ Y] — exhaustive up to ``exhaustive_limit`` dimensions,
    seeded sampling beyond.
    """
    from .core import complement as _complement

    n = len(cls.domain)
    full = cls.domain.full_mask
    st = set(strongly_shattered_sets(cls).masks)
    s_comp = set(shattered_sets(_complement(cls)).masks)
    exhaustive = n <= exhaustive_limit
    if exhaustive:
        masks: Iterable[int] = range(1 << n)
        total = 1 << n
    else:
        rng = random.Random(seed)
        masks = (rng.randrange(1 << n) for _ in range(samples))
        total = samples
    for m in masks:
        strongly = m in st
        dual = (full & ~m) in s_comp
        if strongly == dual:
            return DualityReport(total, exhaustive, cls.domain.names_of(m))
    return DualityReport(total, exhaustive, None)


# --- named builtin fixtures --------------------------------------------------

#: 18 concepts over x1..x6; extremal, VC dimension 2.
FIG1_TEXT = """\
x1 x2 x3 x4 x5 x6
000000
001000
010000
100000
001010
001100
101000
110000
001011
001110
001101
101100
111000
110100
001111
101101
111100
101111
"""

#: Four maximal cubes over x1..x6; extremal, 14 concepts.
FIG2_EXPRESSION = "**0*00+1***00+1101*0+01010*"

#: Cells of the fig3 arrangement that meet the region. p3 and p4 are the
#: parallel pair, so no cell has p3=0, p4=1.
FIG3_CELLS = (
    "1000",
    "1010",
    "1011",
    "1111",
    "1110",
    "0010",
    "0000",
    "0110",
)


def fig3_arrangement() -> LineArrangement:
    """Four oriented lines (one parallel pair → 10 cells) and a convex
    pentagon standing in for the caption's ellipse; reproduces FIG3_CELLS.
    """
    return LineArrangement(
        lines=(
            (-1, 0, 0),  # p1: x < 0
            (0, -1, 0),  # p2: y < 0
            (-1, -1, -2),  # p3: x + y < 2
            (-1, -1, 2),  # p4: x + y < -2
        ),
        region=(
            (3, Fraction(3, 2)),
            (-1, 4),
            (-5, 1),
            (-4, -1),
            (1, -1),
        ),
    )


_PARITY = re.compile(r"parity(\d+)$")
_FULL = re.compile(r"full(\d+)$")


def builtin(name: str) -> ConceptClass:
    """Named example classes: fig1, fig2, fig3, parityN, fullN."""
    if name == "fig1":
        return parse_class_text(FIG1_TEXT)
    if name == "fig2":
        return expression_to_class(parse_cube_expression(FIG2_EXPRESSION))
    if name == "fig3":
        domain = Domain(("p1", "p2", "p3", "p4"))
        return class_from_strings(domain, FIG3_CELLS)
    if m := _PARITY.match(name):
        return parity_class(int(m.group(1)))
    if m := _FULL.match(name):
        return full_cube(int(m.group(1)))
    raise InputError(
        f"unknown builtin {name!r}; try fig1, fig2, fig3, parityN, fullN"
    )


def builtin_names() -> tuple[str, ...]:
    return ("fig1", "fig2", "fig3", "parityN", "fullN")
