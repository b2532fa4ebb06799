"""Vertex-bitset fast path for small-n exhaustive sweeps.

A class over n dimensions is one integer V with bit v set iff the concept
word v is a member (the word *is* its vertex index).  Strongly shattered
tests are AND-folds ``V & (V >> 2**d)`` over the free dimensions; projections
are the matching OR-folds.  Only the hunters and enumerators use this module;
the public object model recomputes everything independently.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations


@lru_cache(maxsize=None)
def _keep0(n: int) -> tuple[int, ...]:
    """Per dimension d: the bitmap of vertices with bit d clear."""
    out = []
    full = (1 << (1 << n)) - 1
    for d in range(n):
        step = 1 << d
        block = (1 << step) - 1
        pattern = 0
        pos = 0
        while pos < (1 << n):
            pattern |= block << pos
            pos += 2 * step
        out.append(pattern & full)
    return tuple(out)


@lru_cache(maxsize=None)
def _supported(n: int, dims: int) -> int:
    """Bitmap of all vertices whose word is supported on ``dims``."""
    v = 1
    for d in range(n):
        if dims & (1 << d):
            v |= v << (1 << d)
    return v


def cube_tags(n: int, V: int, dims: int) -> int:
    """Bitmap of tags t (vertices with 0 on dims) heading a dims-cube in V."""
    keep = _keep0(n)
    for d in range(n):
        if dims & (1 << d):
            V = (V & (V >> (1 << d))) & keep[d]
    return V


def project(n: int, V: int, dims: int) -> int:
    """Bitmap of the projection of V onto dims (vertices supported there)."""
    keep = _keep0(n)
    for d in range(n):
        if not dims & (1 << d):
            V = (V | (V >> (1 << d))) & keep[d]
    return V


def is_shattered(n: int, V: int, dims: int) -> bool:
    return project(n, V, dims) == _supported(n, dims)


def is_strongly_shattered(n: int, V: int, dims: int) -> bool:
    return cube_tags(n, V, dims) != 0


def is_extremal(n: int, V: int) -> bool:
    """Shattered implies strongly shattered, over every dimension set."""
    if V == 0:
        return True
    for dims in range(1 << n):
        if not cube_tags(n, V, dims) and project(n, V, dims) == _supported(n, dims):
            return False
    return True


def shattered_family(n: int, V: int) -> int:
    """Bitmap over dimension sets S with S shattered."""
    if V == 0:
        return 0
    out = 0
    for dims in range(1 << n):
        if project(n, V, dims) == _supported(n, dims):
            out |= 1 << dims
    return out


def strongly_shattered_family(n: int, V: int) -> int:
    out = 0
    for dims in range(1 << n):
        if cube_tags(n, V, dims):
            out |= 1 << dims
    return out


def maximal_cubes(n: int, V: int) -> list[tuple[int, int]]:
    """(dims, tag) of every maximal cube of V."""
    tags_by_dims: dict[int, int] = {}
    for dims in range(1 << n):
        t = cube_tags(n, V, dims)
        if t:
            tags_by_dims[dims] = t
    out = []
    for dims, tags in tags_by_dims.items():
        t = tags
        while t:
            low = t & -t
            tag = low.bit_length() - 1
            t ^= low
            # (dims, tag) grows in direction d iff its d-neighbor cube exists
            if not any(
                (tags >> (tag ^ (1 << d))) & 1
                for d in range(n)
                if not dims & (1 << d)
            ):
                out.append((dims, tag))
    return out


def corner_vertices(n: int, V: int) -> list[int]:
    """Members lying in exactly one maximal cube (the corners, for extremal V)."""
    counts: dict[int, int] = {}
    for dims, tag in maximal_cubes(n, V):
        free = [d for d in range(n) if dims & (1 << d)]
        for k in range(1 << len(free)):
            v = tag
            for j, d in enumerate(free):
                v |= ((k >> j) & 1) << d
            counts[v] = counts.get(v, 0) + 1
    return sorted(v for v, k in counts.items() if k == 1)


def has_corner(n: int, V: int) -> bool:
    return bool(corner_vertices(n, V))


@lru_cache(maxsize=8)
def _symmetry_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """Byte-lookup tables for every column permutation + flip, for n <= 4.

    One table per group element: ``chunks`` entries of 256-bitmap lookups,
    flattened as table[chunk * 256 + byte] -> remapped bitmap.
    """
    size = 1 << n
    chunks = (size + 7) // 8
    tables = []
    for perm in permutations(range(n)):
        for flip in range(size):
            vmap = []
            for v in range(size):
                w = 0
                for i in range(n):
                    w |= ((v >> i) & 1) << perm[i]
                vmap.append(w ^ flip)
            table = [0] * (chunks * 256)
            for c in range(chunks):
                base = c * 8
                # legal inputs only set bits that are vertices (V < 2^size)
                for byte in range(1 << min(8, size - base)):
                    out = 0
                    b = byte
                    while b:
                        low = b & -b
                        out |= 1 << vmap[base + low.bit_length() - 1]
                        b ^= low
                    table[c * 256 + byte] = out
            tables.append(tuple(table))
    return tuple(tables)


def canonical_form(n: int, V: int) -> int:
    """Least image of V under all column permutations and flips (n <= 4)."""
    if n > 4:
        raise ValueError("symmetry canonicalization is for n <= 4 sweeps")
    size = 1 << n
    chunks = (size + 7) // 8
    best = V
    for table in _symmetry_tables(n):
        out = 0
        for c in range(chunks):
            byte = (V >> (8 * c)) & 255
            if byte:
                out |= table[c * 256 + byte]
        if out < best:
            best = out
    return best
