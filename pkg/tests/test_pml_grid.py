import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zolopml.errors import DomainError, GridFormatError
from zolopml.interpolant import build_interpolant
from zolopml.pml_grid import (MergedGrid, cumulative_points, format_grid, merge_grid,
                              parse_grid, parse_steps_table, read_grid, write_grid)
from zolopml.sfraction import GridSteps, to_sfraction
from zolopml.zolotarev import IntervalPair

LAYER3 = GridSteps((0.1 - 0.05j, 0.3 - 0.2j, 0.9 - 0.4j), (0.2 - 0.1j, 0.5 - 0.3j, 1.5 - 1j))


def test_merge_structure():
    h = 0.01
    g = merge_grid(h, 2, LAYER3)
    assert g.node_count == 2 + 3 + 1
    # j = -2, -1 interior duals; j = 0 interface
    assert g.hhat_at(-2) == g.hhat_at(-1) == h
    assert g.hhat_at(0) == LAYER3.hhat[0] + h / 2
    assert g.hhat_at(1) == LAYER3.hhat[1] and g.hhat_at(2) == LAYER3.hhat[2]
    assert g.h_at(-2) == g.h_at(-1) == g.h_at(0) == h
    assert [g.h_at(j) for j in (1, 2, 3)] == list(LAYER3.h)
    with pytest.raises(IndexError):
        g.hhat_at(3)
    with pytest.raises(IndexError):
        g.h_at(-3)


def test_merge_without_interior():
    g = merge_grid(0.5, 0, LAYER3)
    assert g.merged_hhat[0] == LAYER3.hhat[0] + 0.25
    assert g.merged_hhat[1:] == LAYER3.hhat[1:]


def test_uniform_layer_gives_three_halves():
    h = 0.2
    g = merge_grid(h, 4, GridSteps((h,) * 5, (h,) * 5))
    assert g.hhat_at(0) == pytest.approx(1.5 * h)
    others = [g.hhat_at(j) for j in range(-4, 5) if j != 0]
    assert all(v == h for v in others)
    assert all(v == h for v in g.merged_h)


def test_merge_validation():
    with pytest.raises(DomainError):
        merge_grid(0, 2, LAYER3)
    with pytest.raises(DomainError):
        merge_grid(0.1, -1, LAYER3)


def test_cumulative_points():
    g = merge_grid(0.1, 2, LAYER3)
    prim, dual = cumulative_points(g)
    assert prim[0] == pytest.approx(-0.2)
    assert prim[2] == pytest.approx(0.0)
    assert prim[3] == pytest.approx(LAYER3.h[0])
    assert dual[0] == pytest.approx(-0.25)
    assert len(prim) == g.node_count and len(dual) == g.node_count


def test_file_round_trip(tmp_path):
    st_ = to_sfraction(build_interpolant(IntervalPair(-1e3, -1, 1, 1e4), 12))
    path = tmp_path / "layer.grid"
    write_grid(path, merge_grid(0.01, 3, st_), {"m": 12})
    g, meta = read_grid(path)
    assert isinstance(g, MergedGrid) and g.ell == 3 and meta["m"] == 12
    hh, h = st_.as_complex()
    gh, gp = g.layer.as_complex()
    assert np.array_equal(hh, gh) and np.array_equal(h, gp)
    path2 = tmp_path / "again.grid"
    write_grid(path2, g, {"m": 12})
    assert path.read_text() == path2.read_text()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(*[st.floats(-1e6, 1e6, allow_nan=False)] * 4), min_size=1, max_size=12))
def test_format_parse_identity(rows):
    steps = GridSteps(tuple(complex(a, b) for a, b, _, _ in rows),
                      tuple(complex(c, d) for _, _, c, d in rows))
    text = format_grid(steps, {"x": 1})
    back, meta = parse_grid(text)
    assert back.hhat == steps.hhat and back.h == steps.h and meta == {"x": 1}
    assert format_grid(back, meta) == text


def test_hand_written_file():
    text = ("# zolopml-grid v1\n# meta: {}\nindex,hhat_re,hhat_im,h_re,h_im\n"
            "0,0.5,-0.25,1,0\n1,2,0,3.5,-1\n")
    steps, _ = parse_grid(text)
    assert steps.hhat == (0.5 - 0.25j, 2 + 0j)
    assert steps.h == (1 + 0j, 3.5 - 1j)


def test_empty_layer_is_an_error():
    text = "# zolopml-grid v1\n# meta: {}\nindex,hhat_re,hhat_im,h_re,h_im\n"
    with pytest.raises(GridFormatError):
        parse_grid(text)


@pytest.mark.parametrize("text,line", [
    ("nope\n", 1),
    ("# zolopml-grid v1\nmeta\n", 2),
    ("# zolopml-grid v1\n# meta: {\n", 2),
    ("# zolopml-grid v1\n# meta: {}\nidx\n", 3),
    ("# zolopml-grid v1\n# meta: {}\nindex,hhat_re,hhat_im,h_re,h_im\n0,1,2,3\n", 4),
    ("# zolopml-grid v1\n# meta: {}\nindex,hhat_re,hhat_im,h_re,h_im\n0,1,0,1,0\n2,1,0,1,0\n", 5),
    ("# zolopml-grid v1\n# meta: {}\nindex,hhat_re,hhat_im,h_re,h_im\n0,x,0,1,0\n", 4),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GridFormatError) as exc:
        parse_grid(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_steps_table_alone():
    s = parse_steps_table("index,hhat_re,hhat_im,h_re,h_im\n0,1,0,2,0\n")
    assert s.n == 1
