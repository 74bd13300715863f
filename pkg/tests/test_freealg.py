import random

import pytest

from grtkv.freealg import (
    AlphabetMismatch,
    NCPoly,
    TracePoly,
    antipode,
    coproduct,
    cyclic_canonical,
    is_primitive,
    nc_mul,
    parse_word,
    tensor_mult,
    trace_project,
)
from grtkv.suites import random_lie, random_nc

X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
ONE = NCPoly.one(2)


def w(s):
    return NCPoly.word(2, parse_word(s))


def test_mul_examples():
    assert nc_mul(w("xy"), Y) == w("xyy")
    assert nc_mul(X - Y, X + Y) == w("xx") + w("xy") - w("yx") - w("yy")
    a = w("xy") + w("yx").scale(3)
    assert nc_mul(ONE, a) == a


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        nc_mul(X, NCPoly.gen(3, 0))


def test_antipode_examples():
    assert antipode(w("xxy")) == -w("yxx")
    assert antipode(X) == -X
    assert antipode(ONE) == ONE


def test_coproduct_examples():
    assert coproduct(X) == {((0,), ()): 1, ((), (0,)): 1}
    assert coproduct(w("xy")) == {((0, 1), ()): 1, ((0,), (1,)): 1, ((1,), (0,)): 1, ((), (0, 1)): 1}
    assert coproduct(ONE) == {((), ()): 1}


def test_primitive_examples():
    assert is_primitive(w("xy") - w("yx"))
    assert not is_primitive(w("xy"))
    assert is_primitive(X)


def test_trace_examples():
    assert trace_project(w("yx")) == TracePoly(2, {(0, 1): 1})
    assert trace_project(w("xy") - w("yx")).is_zero()
    assert cyclic_canonical((0, 1, 0)) == (0, 0, 1)
    assert str(trace_project(w("xyx"))) == "|xxy|"


def test_rendering():
    assert str(w("xy") - w("yx")) == "xy - yx"
    assert str(ONE) == "1"
    assert str(w("xy").scale(-2)) == "-2xy"


def _coassoc_left(a):
    out = {}
    for (p, q), c in coproduct(a).items():
        for (r, s), k in coproduct(NCPoly.word(a.n, p)).items():
            key = (r, s, q)
            out[key] = out.get(key, 0) + c * k
    return {k: v for k, v in out.items() if v}


def _coassoc_right(a):
    out = {}
    for (p, q), c in coproduct(a).items():
        for (r, s), k in coproduct(NCPoly.word(a.n, q)).items():
            key = (p, r, s)
            out[key] = out.get(key, 0) + c * k
    return {k: v for k, v in out.items() if v}


def test_hopf_axioms_random():
    rng = random.Random(1)
    for k in range(30):
        a = random_nc(rng, 2, k % 7, terms=3)
        b = random_nc(rng, 2, 1 + k % 6, terms=3)
        assert _coassoc_left(a) == _coassoc_right(a)
        twisted = {(p[::-1], q): (-c if len(p) % 2 else c) for (p, q), c in coproduct(a).items()}
        assert tensor_mult(twisted, 2) == ONE.scale(a.counit())
        assert antipode(antipode(a)) == a
        assert antipode(nc_mul(a, b)) == nc_mul(antipode(b), antipode(a))
        assert trace_project(nc_mul(a, b)) == trace_project(nc_mul(b, a))


def test_antipode_negates_lie_elements():
    rng = random.Random(2)
    for d in range(1, 9):
        u = random_lie(rng, 2, d)
        assert antipode(u.poly) == -u.poly


def test_counit_side_of_coproduct():
    rng = random.Random(3)
    a = random_nc(rng, 2, 4, terms=5) + ONE.scale(2)
    left = {}
    for (p, q), c in coproduct(a).items():
        if not p:
            left[q] = left.get(q, 0) + c
    assert NCPoly(2, left) == a
