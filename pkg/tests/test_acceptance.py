"""Acceptance gate: one test (one pass/fail line under ``pytest -v``) per
shipping criterion.  Every number here is pinned exactly; the timed criteria
assert their stated wall-clock budgets.
"""

import random
import time
from functools import lru_cache
from itertools import combinations

from extremal.compression import (
    LabeledScheme,
    candidate_set,
    consistent_set,
    verify_scheme,
)
from extremal.core import (
    ConceptClass,
    Sample,
    class_from_strings,
    graph_distance,
    reduction,
    remove_dims,
    restrict,
)
from extremal.cubes import maximal_cubes, maximal_cubes_containing
from extremal.generators import (
    RefGraph,
    builtin,
    complement_duality_check,
    count_st_connected_subgraphs,
    glued_cube_complement,
    hamming_ball,
    parity_class,
    random_extremal_class,
    st_orientation_class,
)
from extremal.shattering import (
    extremality_report,
    is_extremal,
    shattered_sets,
    strongly_shattered_sets,
    vc_dimension,
)
from extremal.unlabeled import (
    RepresentationMap,
    clash_witness,
    corner_peel,
    group_by_restriction,
    hunt_cornerless,
    representation_matches,
    restrict_representation,
)

from oracles import seeded_classes


@lru_cache(maxsize=1)
def _scheme_pool() -> tuple[ConceptClass, ...]:
    """The shared verification pool: figures, two families, 200 seeded."""
    pool = [
        builtin("fig1"),
        builtin("fig2"),
        builtin("fig3"),
        hamming_ball(5, 2),
        glued_cube_complement(2),
    ]
    for i in range(200):
        n = 3 + i % 3
        removals = 1 + (i * 5) % ((1 << n) - 2)
        pool.append(random_extremal_class(n, removals, seed=1000 + i))
    return tuple(pool)


def _all_samples(cls: ConceptClass):
    for mask in range(1 << len(cls.domain)):
        names = cls.domain.names_of(mask)
        for key in group_by_restriction(cls, names):
            yield Sample(cls.domain, mask, key)


def _unique_everywhere(cls: ConceptClass, rmap: RepresentationMap) -> bool:
    return all(
        len(representation_matches(cls, rmap, s)) == 1 for s in _all_samples(cls)
    )


def test_criterion_01_builtin_fig1_fidelity():
    t0 = time.perf_counter()
    cls = builtin("fig1")
    assert len(cls) == 18
    assert vc_dimension(cls) == 2
    assert is_extremal(cls)

    expected_sets = [
        (),
        ("x1",), ("x2",), ("x3",), ("x4",), ("x5",), ("x6",),
        ("x1", "x2"), ("x1", "x3"), ("x1", "x4"), ("x1", "x5"), ("x1", "x6"),
        ("x2", "x3"), ("x2", "x4"), ("x3", "x4"), ("x4", "x5"), ("x4", "x6"),
        ("x5", "x6"),
    ]
    expected_masks = {cls.domain.mask_of(names) for names in expected_sets}
    assert set(shattered_sets(cls).masks) == expected_masks
    assert set(strongly_shattered_sets(cls).masks) == expected_masks

    red_x2 = reduction(cls, ["x2"])
    assert red_x2 == class_from_strings(
        red_x2.domain, ["00000", "10000", "11000", "11100"]
    )
    assert red_x2.domain.names == ("x1", "x3", "x4", "x5", "x6")

    red_x3x4 = reduction(cls, ["x3", "x4"])
    assert red_x3x4 == class_from_strings(red_x3x4.domain, ["1100"])
    assert red_x3x4.domain.names == ("x1", "x2", "x5", "x6")
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_compression_walkthrough_fidelity():
    cls = builtin("fig2")
    sample = Sample.parse(cls.domain, "x2=1,x4=1,x5=0")

    h_s = consistent_set(cls, sample)
    assert set(h_s.bitstrings()) == {"111100", "110100", "010100", "010101"}

    cubes = maximal_cubes_containing(cls, sample)
    assert {c.dims for c in cubes} == {("x5",), ("x2", "x4")}

    cube = next(c for c in cubes if c.dims == ("x2", "x4"))
    h_b = candidate_set(cls, sample, cube)
    assert set(h_b.bitstrings()) == {"111100", "110100", "010100"}
    assert set(h_b.bitstrings()) < set(h_s.bitstrings())


def test_criterion_03_labeled_scheme_soundness():
    t0 = time.perf_counter()
    pool = _scheme_pool()
    assert len(pool) == 205
    for cls in pool:
        result = verify_scheme(LabeledScheme(cls))
        assert result.ok, result.failures[:3]
        assert result.max_compressed_size <= result.vc_dim
    assert time.perf_counter() - t0 < 60.0


def test_criterion_04_sandwich_and_equivalent_conditions():
    from extremal.core import Domain

    d3 = Domain.numbered(3)
    for bits in range(1 << 8):
        cls = ConceptClass.from_words(d3, [w for w in range(8) if bits & (1 << w)])
        rep = extremality_report(cls)
        assert rep.strongly_shattered_count <= rep.class_size <= rep.shattered_count
        assert len(set(rep.condition_flags)) == 1

    for cls in seeded_classes(5, 10_000, seed=2024):
        rep = extremality_report(cls)
        assert rep.strongly_shattered_count <= rep.class_size <= rep.shattered_count
        assert len(set(rep.condition_flags)) == 1

    parity = parity_class(3)
    rep = extremality_report(parity)
    assert (
        rep.strongly_shattered_count,
        rep.class_size,
        rep.shattered_count,
    ) == (1, 4, 7)


def test_criterion_05_closure_under_projection_reduction_intersection():
    pool = [builtin("fig1")]
    for i in range(50):
        n = 3 + i % 3
        removals = 1 + (i * 3) % ((1 << n) - 2)
        pool.append(random_extremal_class(n, removals, seed=3000 + i))

    rng = random.Random(5)
    for cls in pool:
        n = len(cls.domain)
        for mask in range(1 << n):
            names = cls.domain.names_of(mask)
            assert is_extremal(remove_dims(cls, names))
            assert is_extremal(reduction(cls, names))
        for _ in range(100):
            dims_mask = rng.randrange(1 << n)
            tag = rng.randrange(1 << n) & ~dims_mask
            inter = ConceptClass.from_words(
                cls.domain, [w for w in cls.words if w & ~dims_mask == tag]
            )
            assert is_extremal(inter)


def test_criterion_06_distances_and_maximal_cube_antichain():
    for cls in _scheme_pool():
        concepts = cls.concepts
        for a, b in combinations(concepts, 2):
            hamming = bin(a.word ^ b.word).count("1")
            assert graph_distance(cls, a, b) == hamming

        dim_masks = [c.dims_mask for c in maximal_cubes(cls)]
        assert len(dim_masks) == len(set(dim_masks))
        for m1, m2 in combinations(dim_masks, 2):
            assert m1 & m2 != m1 and m1 & m2 != m2


def test_criterion_07_unlabeled_scheme_round_trip():
    from extremal.unlabeled import compress_unlabeled, reconstruct_unlabeled

    classes = [builtin("fig1"), builtin("fig2"), builtin("fig3"),
               glued_cube_complement(2)]
    for cls in classes:
        cert, rmap = corner_peel(cls)
        vc = vc_dimension(cls)

        st_masks = set(strongly_shattered_sets(cls).masks)
        image = [mask for _, mask in rmap.pairs]
        assert len(image) == len(cls)
        assert set(image) == st_masks  # bijection onto the cube dim sets
        assert clash_witness(rmap) is None

        assert rmap.concept_for_mask(0) == cert.order[-1]

        for sample in _all_samples(cls):
            rep = compress_unlabeled(cls, rmap, sample)
            assert len(rep) <= vc
            restored = reconstruct_unlabeled(rmap, rep)
            assert restored.word & sample.dims_mask == sample.word


def test_criterion_08_uniqueness_clash_equivalence():
    cls = builtin("fig2")
    _, rmap = corner_peel(cls)

    # a valid peeled map: non-clashing, and exactly one consistent
    # in-domain-representative concept for every realized sample
    assert clash_witness(rmap) is None
    assert _unique_everywhere(cls, rmap)

    # corrupting the bijection: a swap either keeps both properties or
    # breaks both — never one without the other
    clashing_swaps = 0
    pairs = list(rmap.pairs)
    for i, j in combinations(range(len(pairs)), 2):
        swapped = list(pairs)
        (wi, mi), (wj, mj) = swapped[i], swapped[j]
        swapped[i], swapped[j] = (wi, mj), (wj, mi)
        smap = RepresentationMap(cls, tuple(swapped), full=True)
        clash = clash_witness(smap)
        unique = _unique_everywhere(cls, smap)
        assert (clash is None) == unique
        if clash is not None:
            clashing_swaps += 1
    assert clashing_swaps > 0


def test_criterion_09_exhaustive_cornerless_hunt():
    t0 = time.perf_counter()
    first = hunt_cornerless(4)
    second = hunt_cornerless(4)
    assert time.perf_counter() - t0 < 600.0

    for result in (first, second):
        assert result.ok
        assert result.counterexample is None
        assert [st.n for st in result.stages] == [1, 2, 3, 4]
        assert result.stages[-1].subsets_scanned == (1 << 16) - 1
    counts = [
        (st.extremal_classes, st.classes_up_to_symmetry) for st in first.stages
    ]
    assert counts == [
        (st.extremal_classes, st.classes_up_to_symmetry) for st in second.stages
    ]
    # canonicalization actually deduplicates
    assert all(canon < total for total, canon in counts[1:])


def test_criterion_10_orientation_subgraph_identity():
    triangle = RefGraph((("a", "b"), ("b", "c"), ("a", "c")), "a", "c")
    assert len(st_orientation_class(triangle)) == 5
    assert count_st_connected_subgraphs(triangle) == 5

    # every labeled graph on 5 vertices with <= 4 edges, every marked pair
    verts = ["v1", "v2", "v3", "v4", "v5"]
    all_edges = list(combinations(verts, 2))
    for k in (1, 2, 3, 4):
        for edges in combinations(all_edges, k):
            used = sorted({v for e in edges for v in e})
            for s in used:
                for t in used:
                    if s == t:
                        continue
                    g = RefGraph(tuple(edges), s, t)
                    assert len(st_orientation_class(g)) == (
                        count_st_connected_subgraphs(g)
                    )

    # the disconnected shapes with more than 5 non-isolated vertices
    extra_shapes = [
        (("a", "b"), ("c", "d"), ("e", "f")),
        (("a", "b"), ("b", "c"), ("c", "d"), ("e", "f")),
        (("a", "b"), ("a", "c"), ("a", "d"), ("e", "f")),
        (("a", "b"), ("b", "c"), ("d", "e"), ("e", "f")),
        (("a", "b"), ("b", "c"), ("d", "e"), ("f", "g")),
        (("a", "b"), ("c", "d"), ("e", "f"), ("g", "h")),
    ]
    for edges in extra_shapes:
        used = sorted({v for e in edges for v in e})
        for s in used:
            for t in used:
                if s == t:
                    continue
                g = RefGraph(tuple(edges), s, t)
                assert len(st_orientation_class(g)) == (
                    count_st_connected_subgraphs(g)
                )


def test_criterion_11_glued_cube_complement_properties():
    cls = glued_cube_complement(2)
    n = len(cls.domain)
    assert n == 6
    assert len(cls) == 56
    assert vc_dimension(cls) == 4
    assert is_extremal(cls)

    absent = [w for w in range(1 << n) if not cls.has_word(w)]
    assert len(absent) == 8
    for w in absent:
        grown = ConceptClass.from_words(cls.domain, set(cls.words) | {w})
        assert vc_dimension(grown) == 5

    report = complement_duality_check(cls)
    assert report.exhaustive
    assert report.ok, report.violation
    assert report.subsets_checked == 1 << n


def test_criterion_12_representation_restricts_to_every_subdomain():
    cls = builtin("fig2")
    _, rmap = corner_peel(cls)
    n = len(cls.domain)
    for mask in range(1 << n):
        names = cls.domain.names_of(mask)
        sub_map = restrict_representation(cls, rmap, names)
        sub = restrict(cls, names)
        assert sub_map.concept_class == sub
        image = {m for _, m in sub_map.pairs}
        assert image == set(strongly_shattered_sets(sub).masks)
        assert len(sub_map.pairs) == len(sub)
        assert clash_witness(sub_map) is None
