import itertools

import pytest
from hypothesis import assume, given, strategies as st

from nestedik.labels import (Coordinate, FMLabel, LabelError, Shape, caseA_map, caseB_map,
                             check_colors, colors_from_fm, count_C, enumerate_labels,
                             fm_from_colors, initial_map, lambda_shift, layer_of)
from strategies import shapes

S4 = Shape(2, (1, 1), (1,), (1,), 2)


def brute_labels(shape):
    """Independent filter over every color tuple."""
    layers = [layer_of(i, shape).layer for i in range(1, shape.T + 1)]
    out = []
    for cols in itertools.product(*[range(1, p + 2) for p in layers]):
        if all(sum(1 for c, p in zip(cols, layers) if p >= j and c <= j) == shape.k[j - 1]
               for j in range(1, shape.M + 1)):
            out.append(cols)
    return out


@pytest.mark.parametrize("kw", [dict(M=0, k=()), dict(M=1, k=(0,), LM=1),
                                dict(M=1, k=(2,), LM=1), dict(M=2, k=(1,), LM=1),
                                dict(M=2, k=(3, 1), LI=(0,), LII=(0,), LM=1),
                                dict(M=2, k=(1, 1), LI=(-1,), LII=(0,), LM=1)])
def test_shape_rejects(kw):
    with pytest.raises(LabelError):
        Shape(**kw)


def test_shape_derived():
    assert S4.T == 4 and S4.P == 3
    assert S4.nvertices() == 1 * 3 + 1 * 2


def test_layer_of_examples():
    assert layer_of(1, S4) == Coordinate(1, 1, "yI", 1)
    assert layer_of(3, S4) == Coordinate(3, 2, "top", 2)
    assert layer_of(4, S4) == Coordinate(4, 1, "yII", 1)
    with pytest.raises(LabelError):
        layer_of(5, S4)


def test_fm_examples():
    assert fm_from_colors((1, 2), Shape(1, (1,), (), (), 2)) == FMLabel(((1,),), ())
    sh = Shape(2, (1, 1), (0,), (0,), 2)
    assert fm_from_colors((1, 3), sh) == FMLabel(((1,), (1,)), ((1,),))
    # squeeze keeps coordinates 1, 2, 4 (colors <= 2); coordinate 2 sits second
    assert fm_from_colors((2, 1, 3, 2), S4) == FMLabel(((2,), (2,)), ((2,),))


def test_colors_from_fm_examples():
    assert colors_from_fm(FMLabel(((2,),), ()), Shape(1, (1,), (), (), 2)) == (2, 1)
    assert colors_from_fm(FMLabel(((1,),), ()), Shape(1, (1,), (), (), 1)) == (1,)
    assert colors_from_fm(FMLabel(((2,), (2,)), None), S4) == (2, 1, 3, 2)


def test_colors_from_fm_rejects():
    with pytest.raises(LabelError):   # nesting: coordinate 3 is layer 2 but missing from I^(2)
        colors_from_fm(FMLabel(((3,), (2,)), None), S4)
    with pytest.raises(LabelError):   # wrong induced set
        colors_from_fm(FMLabel(((2,), (2,)), ((1,),)), S4)
    with pytest.raises(LabelError):
        colors_from_fm(FMLabel(((2, 1), (2,)), None), S4)


def test_enumerate_examples():
    assert enumerate_labels(Shape(1, (1,), (), (), 2)) == [(1, 2), (2, 1)]
    assert enumerate_labels(Shape(1, (2,), (), (), 2)) == [(1, 1)]
    # (2,3) and (3,2) carry no color 1, so |I^(1)| = 0 != k_1
    assert enumerate_labels(Shape(2, (1, 1), (0,), (0,), 2)) == [(1, 3), (3, 1)]


def test_check_colors_rejects():
    with pytest.raises(LabelError):
        check_colors((1, 3, 3, 2), S4)   # no layer-2 coordinate colored <= 2
    with pytest.raises(LabelError):
        check_colors((3, 1, 3, 2), S4)   # layer-1 coordinate colored 3
    with pytest.raises(LabelError):
        check_colors((1, 2), S4)


@given(shapes())
def test_enumeration_matches_brute_force(shape):
    labels = enumerate_labels(shape)
    assert labels == sorted(brute_labels(shape))
    assert len(set(labels)) == len(labels)


@given(shapes(), st.data())
def test_fm_round_trip(shape, data):
    labels = enumerate_labels(shape)
    colors = data.draw(st.sampled_from(labels))
    fm = fm_from_colors(colors, shape)
    assert [len(s) for s in fm.I] == list(shape.k)
    assert colors_from_fm(fm, shape) == colors
    assert colors_from_fm(FMLabel(fm.I, None), shape) == colors
    for p in range(1, shape.M):
        assert all(1 <= i <= shape.ncols(p) for i in fm.Itilde[p - 1])


def test_caseA_examples():
    colors, sh = caseA_map((1, 1), Shape(1, (2,), (), (), 2))
    assert sh == Shape(1, (1,), (), (), 1)
    assert fm_from_colors(colors, sh).I == ((1,),)
    colors, sh = caseA_map((1, 2), Shape(2, (1, 2), (0,), (0,), 2))
    assert sh == Shape(2, (1, 1), (0,), (1,), 1)
    assert fm_from_colors(colors, sh).I == ((1,), (1,))
    with pytest.raises(LabelError):
        caseA_map((1, 3), Shape(2, (1, 1), (0,), (0,), 2))


def test_caseB_examples():
    colors, sh = caseB_map((1, 2), Shape(1, (1,), (), (), 2))
    assert (colors, sh) == ((1,), Shape(1, (1,), (), (), 1))
    colors, sh = caseB_map((1, 2, 3, 2), S4)
    assert sh == Shape(2, (1, 1), (1,), (1,), 1)
    assert fm_from_colors(colors, sh).I == ((1,), (2,))
    with pytest.raises(LabelError):
        caseB_map((2, 1), Shape(1, (1,), (), (), 2))


def test_initial_examples():
    colors, sh = initial_map((1,), Shape(2, (1, 1), (0,), (0,), 1))
    assert (colors, sh) == ((1,), Shape(1, (1,), (), (), 1))
    colors, sh = initial_map((2, 1, 2), Shape(2, (1, 1), (1,), (1,), 1))
    assert sh == Shape(1, (1,), (), (), 3) and colors == (2, 1, 2)
    with pytest.raises(LabelError):
        initial_map((1,), Shape(1, (1,), (), (), 1))


@given(shapes(), st.data())
def test_caseB_reinsertion(shape, data):
    labels = [c for c in enumerate_labels(shape) if c[shape.P - 1] == shape.M + 1]
    assume(labels and shape.LM > shape.k[-1])
    colors = data.draw(st.sampled_from(labels))
    new, sh = caseB_map(colors, shape)
    P = shape.P
    assert new[:P - 1] + (shape.M + 1,) + new[P - 1:] == colors


def test_count_C_examples():
    assert count_C(2, 3, 3, (1, 2, 3, 2), S4) == 1
    assert all(count_C(p, 0, l, (1, 2, 3, 2), S4) == 0 for p in (1, 2) for l in (1, 2, 3))
    assert sum(count_C(1, 4, l, (1, 2, 3, 2), S4) for l in (1, 2, 3)) == 4


@given(shapes(), st.data())
def test_count_C_monotone_additive(shape, data):
    colors = data.draw(st.sampled_from(enumerate_labels(shape)))
    p = data.draw(st.integers(1, shape.M))
    for l in range(1, shape.M + 2):
        vals = [count_C(p, kc, l, colors, shape) for kc in range(shape.T + 1)]
        assert vals == sorted(vals)
    for kc in range(shape.T + 1):
        total = sum(count_C(p, kc, l, colors, shape) for l in range(1, shape.M + 2))
        assert total == sum(1 for j in range(1, kc + 1) if layer_of(j, shape).layer >= p)


def test_lambda_shift_examples():
    lam = (0.1, 0.2, 0.3)
    g = 0.05
    sh = Shape(2, (1, 1), (1,), (0,), 1)
    assert lambda_shift(2, (2, 1), sh, lam, g) == lam
    got = lambda_shift(1, (2, 1), sh, lam, g)
    assert got == (0.1, 0.2 + g, 0.3)
    flat = Shape(2, (1, 1), (0,), (0,), 2)
    assert lambda_shift(1, (1, 3), flat, lam, g) == lam
