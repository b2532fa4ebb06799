"""HTTP service: endpoint behavior, validation, and error mapping."""

import pytest
from fastapi.testclient import TestClient

from extremal import __version__
from extremal.core import parse_class_text
from extremal.generators import builtin, hamming_ball
from extremal.service.app import app

client = TestClient(app)

FIG2 = {"builtin": "fig2"}


def post(path, payload, status=200):
    resp = client.post(path, json=payload)
    assert resp.status_code == status, resp.text
    return resp.json()


def test_health():
    body = client.get("/health").json()
    assert body == {"status": "ok", "version": __version__}


def test_check_builtin():
    body = post("/check", {"source": {"builtin": "fig1"}})
    assert body["is_extremal"] is True
    assert body["class_size"] == 18
    assert body["shattered_count"] == 18
    assert body["vc_dim"] == 2
    assert body["condition_flags"] == [True] * 5
    assert body["witness"] is None


def test_check_concepts_form():
    body = post(
        "/check",
        {"source": {"concepts": ["00", "11"]}},
    )
    assert body["is_extremal"] is False
    assert body["witness"] == ["x1"]


def test_check_concepts_custom_domain():
    body = post(
        "/check",
        {"source": {"concepts": ["00", "01", "11"], "domain": ["left", "right"]}},
    )
    assert body["is_extremal"] is True
    assert body["vc_dim"] == 1


def test_source_exactly_one_of():
    post("/check", {"source": {"builtin": "fig1", "expression": "1*"}}, 422)
    post("/check", {"source": {}}, 422)
    post("/check", {"source": {"domain": ["a"], "builtin": "fig1"}}, 422)


def test_unknown_builtin_is_400():
    body = post("/check", {"source": {"builtin": "fig9"}}, 400)
    assert "fig9" in body["detail"]


def test_shatter():
    body = post("/shatter", {"source": {"builtin": "fig1"}, "strong": True})
    assert body["count"] == 18
    assert [] in body["sets"]  # the empty set, serialized as []


def test_cubes_maximal():
    body = post("/cubes", {"source": FIG2, "maximal": True})
    assert body["patterns"] == ["1101*0", "01010*", "**0*00", "1***00"]


def test_cubes_dims_filter():
    body = post("/cubes", {"source": FIG2, "dims": ["x2", "x4"]})
    assert body["patterns"] == ["0*0*00", "1*0*00", "1*1*00"]


def test_compress_and_options():
    body = post("/compress", {"source": FIG2, "sample": "x2=1,x4=1,x5=0"})
    assert body["compressed"] == "x5=0"
    assert body["options"] is None
    body = post(
        "/compress",
        {"source": FIG2, "sample": "x2=1,x4=1,x5=0", "all_options": True},
    )
    assert body["options"] == [
        {"dims": ["x5"], "sample": "x5=0"},
        {"dims": ["x2", "x4"], "sample": "x2=1,x4=1"},
    ]


def test_decompress():
    body = post("/decompress", {"source": FIG2, "sample": "x2=1,x4=1"})
    assert body["concept"] == "010100"


def test_compress_bad_sample_is_400():
    body = post("/compress", {"source": FIG2, "sample": "x2=maybe"}, 400)
    assert "detail" in body


def test_peel():
    body = post("/peel", {"source": FIG2})
    assert len(body["order"]) == 14
    assert body["order"][0] == "000000"
    assert body["reps"][0] == ["x1", "x2", "x4"]
    assert body["cubes"][0] == "**0*00"
    assert body["reps"][-1] == []


def test_peel_non_extremal_is_400():
    post("/peel", {"source": {"concepts": ["00", "11"]}}, 400)


def test_unlabeled_round_trip():
    body = post("/unlabeled/compress", {"source": FIG2, "sample": "x2=1,x4=1,x5=0"})
    assert body["rep"] == []
    body = post("/unlabeled/decompress", {"source": FIG2, "rep": ["x2", "x4"]})
    assert body["concept"] == "101000"


def test_verify():
    body = post("/verify", {"source": FIG2})
    assert body["ok"] is True
    assert body["samples_checked"] == 352
    assert body["choices_checked"] == 449
    assert body["max_compressed_size"] == 3
    assert body["failures"] == []


def test_distance():
    body = post(
        "/distance", {"source": {"builtin": "fig1"}, "a": "000000", "b": "101111"}
    )
    assert body["distance"] == 5


def test_distance_unreachable_is_null():
    body = post(
        "/distance", {"source": {"concepts": ["00", "11"]}, "a": "00", "b": "11"}
    )
    assert body["distance"] is None


def test_distance_non_member_is_400():
    post("/distance", {"source": {"builtin": "fig1"}, "a": "111111", "b": "000000"}, 400)


def test_generate_ball():
    body = post("/generate", {"family": "ball", "n": 3, "d": 1})
    assert parse_class_text(body["text"]) == hamming_ball(3, 1)


def test_generate_missing_params_is_422():
    post("/generate", {"family": "ball", "n": 3}, 422)
    post("/generate", {"family": "orientations", "edges": [["a", "b"]]}, 422)


def test_generate_cells_fixture():
    body = post("/generate", {"family": "cells"})
    assert len(parse_class_text(body["text"])) == 8
    body = post("/generate", {"family": "cells", "full_plane": True})
    assert len(parse_class_text(body["text"])) == 10


def test_generate_cells_rational_strings():
    body = post(
        "/generate",
        {
            "family": "cells",
            "lines": [["1/2", 0, "1/4"]],
            "region": [[0, 0], [1, 0], [1, 1], [0, 1]],
        },
    )
    assert sorted(parse_class_text(body["text"]).bitstrings()) == ["0", "1"]


def test_generate_cells_float_rejected():
    post(
        "/generate",
        {
            "family": "cells",
            "lines": [[0.5, 0, 0.25]],
            "region": [[0, 0], [1, 0], [1, 1], [0, 1]],
        },
        422,
    )


def test_generate_cells_custom_lines_need_region():
    body = post("/generate", {"family": "cells", "lines": [[1, 0, 0]]}, 400)
    assert "region" in body["detail"]


def test_generate_orientations():
    body = post(
        "/generate",
        {
            "family": "orientations",
            "edges": [["a", "b"], ["b", "c"], ["a", "c"]],
            "source": "a",
            "sink": "c",
        },
    )
    assert len(parse_class_text(body["text"])) == 5


def test_generate_random_seeded():
    req = {"family": "random", "n": 5, "density": 0.3, "seed": 7}
    a = post("/generate", req)
    b = post("/generate", req)
    assert a == b
    c = post("/generate", {**req, "seed": 8})
    assert c != a


def test_generate_random_extremal():
    body = post("/generate", {"family": "random-extremal", "n": 4, "removals": 5})
    cls = parse_class_text(body["text"])
    assert len(cls) == 11


def test_hunt_cornerless():
    body = post("/hunt/cornerless", {"n": 3})
    assert body["ok"] is True
    assert [st["extremal_classes"] for st in body["stages"]] == [3, 13, 127]
    assert body["extremal_classes_checked"] == 143
    assert body["counterexample"] is None


def test_hunt_cornerless_bounds():
    post("/hunt/cornerless", {"n": 0}, 422)
    post("/hunt/cornerless", {"n": 6}, 422)


def test_hunt_intermediate_found():
    body = post(
        "/hunt/intermediate",
        {"lower": {"expression": "00"}, "upper": {"expression": "**"}},
    )
    assert body["found"] is True
    middle = parse_class_text(body["class_text"])
    assert 1 < len(middle) < 4


def test_hunt_intermediate_gap_too_small_is_400():
    post(
        "/hunt/intermediate",
        {"lower": {"expression": "00"}, "upper": {"expression": "00+01"}},
        400,
    )


def test_service_matches_cli_numbers():
    # the service and the CLI must agree on the same inputs
    body = post("/check", {"source": FIG2})
    assert body["class_size"] == len(builtin("fig2"))
    assert body["vc_dim"] == 3
