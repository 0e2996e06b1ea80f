import numpy as np
import pytest

import conjugacy as cj
from conjugacy.maps import build_map, parse_map_token, reverse_decl


def test_parse_tokens():
    assert parse_map_token("identity") == {"kind": "identity"}
    assert parse_map_token("pow:2") == {"kind": "pow", "s": 2.0}
    assert parse_map_token("pow:0.5") == {"kind": "pow", "s": 0.5}
    assert parse_map_token("proj:1") == {"kind": "proj", "coord": 1}
    assert parse_map_token("arcsin") == {"kind": "arcsin"}
    assert parse_map_token("paired") == {"kind": "paired"}
    for bad in ("nope", "pow", "weird:3"):
        with pytest.raises(ValueError):
            parse_map_token(bad)


def test_reverse_declarations():
    assert reverse_decl({"kind": "identity"}) == {"kind": "identity"}
    assert reverse_decl({"kind": "pow", "s": 2.0}) == {"kind": "pow", "s": 0.5}
    assert reverse_decl({"kind": "arcsin"}) == {"kind": "sinsq"}
    assert reverse_decl({"kind": "sinsq"}) == {"kind": "arcsin"}
    assert reverse_decl({"kind": "proj", "coord": 2}, a_dim=3) == {
        "kind": "inject", "coord": 2, "dim": 3,
    }
    with pytest.raises(ValueError):
        reverse_decl({"kind": "proj", "coord": 1})
    with pytest.raises(ValueError):
        reverse_decl({"kind": "inject", "coord": 1, "dim": 2})


def test_named_maps_invert_each_other():
    rng = np.random.default_rng(0)
    x = rng.random((50, 1))
    for decl in ({"kind": "pow", "s": 2.0}, {"kind": "arcsin"}):
        fwd = build_map(decl)
        rev = build_map(reverse_decl(decl))
        series = cj.TimeSeries(x)
        back = rev.fn(fwd.fn(series.points))
        assert np.allclose(back, series.points, atol=1e-12)


def test_proj_inject_pair():
    proj = cj.make_map("proj", coord=2)
    inject = cj.make_map("inject", coord=2, dim=3)
    pts = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    low = proj.fn(pts)
    assert low.tolist() == [[2.0], [5.0]]
    assert inject.fn(low).tolist() == [[0.0, 2.0, 0.0], [0.0, 5.0, 0.0]]


def test_make_map_validation():
    with pytest.raises(ValueError):
        cj.make_map("pow", s=0.0)
    with pytest.raises(ValueError):
        cj.make_map("unknown")


def test_pow_map_wraps_input():
    h = cj.make_map("pow", s=2.0)
    assert h.fn(np.array([[1.25]]))[0, 0] == pytest.approx(0.0625)
