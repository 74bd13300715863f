import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grtkv.freealg import NCPoly, parse_word
from grtkv.freelie import (
    LiePoly,
    NotPrimitiveError,
    expand,
    fox_left,
    fox_right,
    lie_bracket,
    lie_from_primitive,
    lie_gens2,
    lyndon_words,
    necklace_count,
    render_bracketing,
    standard_factorization,
    substitute,
)
from grtkv.suites import random_lie

x, y = lie_gens2()


def words(ws):
    return [parse_word(s) for s in ws]


def test_lyndon_examples():
    assert list(lyndon_words(2, 1)) == words(["x", "y"])
    assert list(lyndon_words(2, 3)) == words(["xxy", "xyy"])
    assert len(lyndon_words(2, 5)) == 6


def test_lyndon_counts():
    assert [len(lyndon_words(2, d)) for d in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    for n in (2, 3):
        for d in range(1, 8):
            assert len(lyndon_words(n, d)) == necklace_count(n, d)


def test_standard_factorization():
    assert standard_factorization(parse_word("xxy")) == (parse_word("x"), parse_word("xy"))
    assert render_bracketing(parse_word("xyy")) == "[[x,y],y]"


def test_bracket_examples():
    assert lie_bracket(x, x).is_zero()
    assert lie_bracket(x, y).coords == {(0, 1): 1}
    assert lie_bracket(lie_bracket(x, y), x).coords == {(0, 0, 1): -1}


def test_expand_examples():
    p = lambda s: NCPoly.word(2, parse_word(s))  # noqa: E731
    assert expand(LiePoly.from_coords(2, {"xy": 1})) == p("xy") - p("yx")
    assert expand(LiePoly.from_coords(2, {"xxy": 1})) == p("xxy") - p("xyx").scale(2) + p("yxx")
    assert expand(x.scale(3)) == NCPoly.gen(2, 0).scale(3)


def test_lie_from_primitive():
    p = lambda s: NCPoly.word(2, parse_word(s))  # noqa: E731
    assert lie_from_primitive(p("xy") - p("yx")).coords == {(0, 1): 1}
    assert lie_from_primitive(p("xxy") - p("xyx").scale(2) + p("yxx")).coords == {(0, 0, 1): 1}
    with pytest.raises(NotPrimitiveError):
        lie_from_primitive(p("xy"))


def test_substitute_examples():
    assert substitute(lie_bracket(x, y), [y, x]) == -lie_bracket(x, y)
    assert substitute(x, [-(x + y), y]) == -(x + y)


def test_fox_examples():
    xy = lie_bracket(x, y).poly
    assert fox_left(xy, 0) == -NCPoly.gen(2, 1)
    assert fox_left(xy, 1) == NCPoly.gen(2, 0)
    assert fox_right(xy, 0) == NCPoly.gen(2, 1)
    w = NCPoly.word(2, parse_word("xy"))
    assert fox_left(w, 1) == NCPoly.gen(2, 0)
    assert fox_left(w, 0).is_zero()


def test_rendering():
    assert str(lie_bracket(x, lie_bracket(x, y)) - lie_bracket(y, lie_bracket(y, x))) == "[x,[x,y]] - [[x,y],y]"
    assert LiePoly.from_coords(2, {"xy": 2}).to_json() == {"xy": "2"}


lie_elems = st.builds(lambda seed, d: random_lie(random.Random(seed), 2, d, terms=3),
                      st.integers(0, 10 ** 6), st.integers(1, 5))


@settings(max_examples=40, deadline=None)
@given(lie_elems, lie_elems, lie_elems)
def test_jacobi(a, b, c):
    j = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) + lie_bracket(c, lie_bracket(a, b))
    assert j.is_zero()


@settings(max_examples=40, deadline=None)
@given(lie_elems, lie_elems)
def test_fox_derivation_rule(u, v):
    b = lie_bracket(u, v)
    for i in range(2):
        rhs = u.poly * fox_left(v.poly, i) - v.poly * fox_left(u.poly, i)
        assert fox_left(b.poly, i) == rhs


@settings(max_examples=30, deadline=None)
@given(lie_elems, lie_elems)
def test_substitute_is_homomorphism(u, v):
    ims = [x.scale(3) + y, x.scale(2) - y]
    assert substitute(lie_bracket(u, v), ims) == lie_bracket(substitute(u, ims), substitute(v, ims))


@settings(max_examples=30, deadline=None)
@given(lie_elems)
def test_round_trip(u):
    assert lie_from_primitive(expand(u)) == u
    assert LiePoly.from_coords(2, u.coords) == u


def test_substitute_nonlinear_images():
    ims = [lie_bracket(x, y) + y, x]
    rng = random.Random(5)
    for _ in range(5):
        u, v = random_lie(rng, 2, 2), random_lie(rng, 2, 3)
        assert substitute(lie_bracket(u, v), ims) == lie_bracket(substitute(u, ims), substitute(v, ims))
