"""Labeled compression: candidate sets, tie-breaks, and the exhaustive verifier."""

import pytest

from extremal.compression import (
    LabeledScheme,
    candidate_set,
    compress,
    compress_options,
    consistent_set,
    reconstruct,
    verify_scheme,
)
from extremal.core import (
    ConceptClass,
    Domain,
    InputError,
    NoCubeError,
    NotExtremalError,
    Sample,
    restrict,
)
from extremal.cubes import maximal_cubes_containing
from extremal.generators import builtin, full_cube, parity_class
from extremal.shattering import is_extremal, vc_dimension

from oracles import seeded_classes

FIG2_SAMPLE = "x2=1,x4=1,x5=0"


def test_scheme_requires_extremal():
    with pytest.raises(NotExtremalError):
        LabeledScheme(parity_class(3))
    with pytest.raises(InputError):
        LabeledScheme(builtin("fig1"), cube_rule="noise")


def test_consistent_set_fig2():
    cls = builtin("fig2")
    s = Sample.parse(cls.domain, FIG2_SAMPLE)
    assert set(consistent_set(cls, s).bitstrings()) == {
        "111100",
        "110100",
        "010100",
        "010101",
    }
    assert consistent_set(cls, Sample.empty(cls.domain)) == cls
    bad = Sample.parse(cls.domain, "x3=1,x5=1")
    assert len(consistent_set(cls, bad)) == 0


def test_candidate_set_fig2():
    cls = builtin("fig2")
    s = Sample.parse(cls.domain, FIG2_SAMPLE)
    cubes = maximal_cubes_containing(cls, s)
    by_dims = {c.dims: c for c in cubes}
    hb = candidate_set(cls, s, by_dims[("x2", "x4")])
    hs = consistent_set(cls, s)
    assert set(hb.bitstrings()) == {"111100", "110100", "010100"}
    assert set(hb.words) < set(hs.words)
    hb5 = candidate_set(cls, s, by_dims[("x5",)])
    assert set(hb5.words) <= set(hs.words)
    assert len(hb5) > 0


def test_candidate_set_rejects_non_admissible_cube():
    cls = builtin("fig2")
    s = Sample.parse(cls.domain, FIG2_SAMPLE)
    sub = restrict(cls, s.names)
    from extremal.core import Cube

    not_maximal = Cube.from_pattern(sub.domain, "110")
    with pytest.raises(InputError):
        candidate_set(cls, s, not_maximal)


def test_compress_tie_break_and_options():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    s = Sample.parse(cls.domain, FIG2_SAMPLE)
    options = compress_options(scheme, s)
    assert [cube.dims for cube, _ in options] == [("x5",), ("x2", "x4")]
    assert [sub.wire() for _, sub in options] == ["x5=0", "x2=1,x4=1"]
    # the scheme picks the canonically least dim set: {x5} by size
    assert compress(scheme, s).wire() == "x5=0"


def test_compress_full_domain_sample():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    c = cls.concepts[0]
    s = c.sample(cls.domain.names)
    out = compress(scheme, s)
    assert len(out) <= scheme.vc_dim
    assert reconstruct(scheme, out).word & s.dims_mask == s.word


def test_compress_empty_sample():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    out = compress(scheme, Sample.empty(cls.domain))
    assert len(out) == 0
    # reconstruct of the empty subsample: tie-break-least concept of C
    assert reconstruct(scheme, out) == cls.concepts[0]


def test_reconstruct_tie_break():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    s = Sample.parse(cls.domain, "x2=1,x4=1")
    assert reconstruct(scheme, s).bitstring() == "010100"


def test_reconstruct_errors():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    with pytest.raises(NoCubeError):
        reconstruct(scheme, Sample.parse(cls.domain, "x3=1,x6=1"))
    too_big = Sample.parse(cls.domain, "x1=1,x2=1,x3=0,x4=0")
    with pytest.raises(InputError):
        reconstruct(scheme, too_big)


def test_round_trip_all_samples_fig2():
    cls = builtin("fig2")
    scheme = LabeledScheme(cls)
    n = len(cls.domain)
    names = cls.domain.names
    for mask in range(1 << n):
        kept = [names[i] for i in range(n) if (mask >> i) & 1]
        for c in cls:
            s = c.sample(kept)
            out = compress(scheme, s)
            assert len(out) <= scheme.vc_dim
            h = reconstruct(scheme, out)
            assert h.word & s.dims_mask == s.word
            assert h in cls  # properness


def test_restricted_cubes_lift_and_candidates_stay_consistent():
    # every maximal cube dim set of a restriction is a cube dim set of C,
    # and every candidate restricts back to the sample
    from extremal.cubes import cubes_with_dims

    cls = builtin("fig1")
    n = len(cls.domain)
    names = cls.domain.names
    for mask in range(1 << n):
        kept = [names[i] for i in range(n) if (mask >> i) & 1]
        seen = set()
        for c in cls:
            s = c.sample(kept)
            if s.items() in seen:
                continue
            seen.add(s.items())
            for cube in maximal_cubes_containing(cls, s):
                ambient = cubes_with_dims(cls, cube.dims)
                assert ambient  # the dim set is a cube dim set of the full class
                hb = candidate_set(cls, s, cube)
                assert len(hb) > 0
                for h in hb:
                    assert h.word & s.dims_mask == s.word  # candidates restrict to s


def test_verify_scheme_builtin_values():
    r1 = verify_scheme(LabeledScheme(builtin("fig1")))
    assert r1.ok and r1.max_compressed_size == 2 == r1.vc_dim
    assert r1.class_size == 18
    r2 = verify_scheme(LabeledScheme(builtin("fig2")))
    assert r2.ok and r2.max_compressed_size == 3
    r3 = verify_scheme(LabeledScheme(full_cube(3)))
    assert r3.ok and r3.max_compressed_size == 3
    assert r3.samples_checked == sum(
        len(restrict(full_cube(3), kept))
        for kept in _subsets_of(full_cube(3).domain)
    )


def _subsets_of(domain: Domain):
    n = len(domain)
    for mask in range(1 << n):
        yield [domain.names[i] for i in range(n) if (mask >> i) & 1]


def test_verify_scheme_seeded_extremal_classes():
    passed = 0
    for cls in seeded_classes(4, 120, seed=43):
        if not is_extremal(cls):
            continue
        report = verify_scheme(LabeledScheme(cls))
        assert report.ok, report.failures[:3]
        assert report.max_compressed_size <= vc_dimension(cls)
        passed += 1
    assert passed >= 10  # the sweep must actually exercise extremal classes


def test_verify_singleton_and_tiny():
    d = Domain.numbered(3)
    singleton = ConceptClass.from_words(d, [5])
    report = verify_scheme(LabeledScheme(singleton))
    assert report.ok and report.max_compressed_size == 0
