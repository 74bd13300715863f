import random

import pytest

from grtkv.freealg import NCPoly, TracePoly, nc_mul, parse_word, substitute_nc, trace_project
from grtkv.freelie import LiePoly, fox_left, lie_bracket, lie_gens2
from grtkv.gtops import r_map
from grtkv.kv import (
    SDER_MODES,
    NotSpecial,
    TangentialDerivation,
    apply,
    commutes_with_delta,
    d_u,
    div,
    em_witness,
    is_sder,
    krv_class,
    kv_span_trace,
    nu,
    nu_em,
    sder_basis,
    sym_involution,
    tder_bracket,
)
from grtkv.spaces import solve_graded
from grtkv.suites import random_lie, random_nc, random_sder, random_tder, sder_equiv

x, y = lie_gens2()
Z = LiePoly.zero(2)
XY = lie_bracket(x, y)


def T(u, v):
    return TangentialDerivation([u, v])


def w(s):
    return NCPoly.word(2, parse_word(s))


def test_apply_examples():
    u = T(y, x)
    assert apply(u, x) == XY
    assert apply(u, w("xy")) == nc_mul(XY.poly, w("y")) + nc_mul(w("x"), (-XY).poly)
    assert apply(u, NCPoly.one(2)).is_zero()
    with pytest.raises(ValueError):
        apply(u, NCPoly.gen(3, 0))


def test_div_examples():
    assert div(T(y, x)).is_zero()
    assert div(T(Z, XY)) == TracePoly(2, {(0, 1): 1})
    assert div(T(x, Z)) == TracePoly(2, {(0,): 1})


def test_sder_examples():
    for mode in SDER_MODES:
        assert is_sder(T(y, x), mode)
        assert not is_sder(T(XY, Z), mode)
        assert is_sder(T(Z, Z), mode)
    with pytest.raises(ValueError):
        is_sder(T(x, y), "bogus")


def test_sder_modes_agree():
    assert sder_equiv(count=60).passed


def test_nu_examples():
    assert nu(XY) == T(XY, -XY)
    assert nu_em(XY) == T(-XY, XY)
    assert nu_em(Z) == T(Z, Z)
    with pytest.raises(ValueError):
        nu_em(LiePoly.gen(3, 0))


def test_tder_bracket_examples():
    assert tder_bracket(T(y, Z), T(Z, x)) == T(XY, XY)
    u = T(XY, x)
    assert tder_bracket(u, u).is_zero()


def test_tder_bracket_is_operator_commutator():
    rng = random.Random(4)
    for k in range(10):
        u, v = random_tder(rng, 2, 1 + k % 3), random_tder(rng, 2, 1 + (k + 1) % 3)
        a = random_nc(rng, 2, 3, terms=3)
        assert apply(tder_bracket(u, v), a) == apply(u, apply(v, a)) - apply(v, apply(u, a))


def test_sym_involution():
    assert sym_involution(T(y, x)) == T(y, x)
    rng = random.Random(6)
    for d in range(1, 6):
        phi = random_lie(rng, 2, d)
        assert sym_involution(nu_em(phi)) == nu_em(phi)
        u = random_tder(rng, 2, d)
        assert sym_involution(sym_involution(u)) == u
    with pytest.raises(ValueError):
        sym_involution(TangentialDerivation([LiePoly.gen(3, 0)] * 3))


def test_d_u_examples():
    u = T(y, x)
    assert d_u(u, NCPoly.gen(2, 0)).is_zero()
    assert d_u(u, NCPoly.one(2)).is_zero()
    assert d_u(u, w("xx")).is_zero()
    with pytest.raises(NotSpecial):
        d_u(T(XY, Z), w("xy"))


def test_d_u_leibniz():
    rng = random.Random(8)
    for k in range(20):
        d = (1, 3, 5)[k % 3]
        u = random_sder(rng, 2, d)
        a, b = random_nc(rng, 2, 1 + k % 5, terms=2), random_nc(rng, 2, 1 + (k * 3) % 5, terms=2)
        assert d_u(u, nc_mul(a, b)) == nc_mul(d_u(u, a), b) + nc_mul(a, d_u(u, b))


def test_div_cocycle():
    rng = random.Random(10)
    for k in range(12):
        u, v = random_sder(rng, 2, (1, 3)[k % 2]), random_sder(rng, 2, (1, 3, 5)[k % 3])
        lhs = div(tder_bracket(u, v))
        assert lhs == apply(u, div(v)) - apply(v, div(u))


def test_krv_class_examples():
    phi = solve_graded("grt1em", 3).basis[0]
    wit = krv_class(nu_em(phi))
    assert wit.membership == "krv" and wit.coefficient is not None
    assert div(nu_em(phi)) == kv_span_trace(3).scale(wit.coefficient)
    with pytest.raises(ValueError):
        krv_class(T(y, x))
    with pytest.raises(NotSpecial):
        krv_class(T(lie_bracket(x, XY), Z))
    # a generic degree-5 special derivation is outside krv_2
    basis = sder_basis(2, 5)
    assert len(basis) == 3
    generic = basis[0] + basis[1].scale(2) - basis[2].scale(5)
    assert krv_class(generic).membership == "not"


def test_non_krv_breaks_cobracket_commutation():
    basis = sder_basis(2, 5)
    krv = solve_graded("krv2", 5)
    outside = [u for u in basis if not krv.contains(u)]
    assert outside
    words = [parse_word(s) for s in ("xy", "xxy", "xyy", "xxyy", "xyxy")]
    assert not all(commutes_with_delta(outside[0], wd) for wd in words)


def test_vanishing_lemma():
    rng = random.Random(12)
    X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    for d in range(2, 7):
        phi = random_lie(rng, 2, d)
        r = r_map(phi)
        assert substitute_nc(r, [0, Y], target=2).is_zero()
        assert substitute_nc(r, [X, 0], target=2).is_zero()
        assert substitute_nc(fox_left(phi.poly, 1), [0, Y], target=2).is_zero()


def test_emergent_witness_identities():
    X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    for d in range(3, 9):
        for phi in solve_graded("grt1em", d).basis:
            u = nu_em(phi)
            c = em_witness(phi)
            assert r_map(apply(u, y)) == nc_mul(Y, c) - nc_mul(c, Y)
            assert r_map(apply(u, x)) == nc_mul(X, c) - nc_mul(c, X)
            assert krv_class(u).membership in ("krv", "krv0")


def test_divergence_free_remark():
    X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    seen = 0
    for d in range(2, 9):
        for phi in solve_graded("grt1em", d).basis:
            if krv_class(nu_em(phi)).membership != "krv0":
                continue
            seen += 1
            r = r_map(phi)
            swapped = substitute_nc(r, [Y, X])
            assert trace_project(nc_mul(X, swapped) + nc_mul(Y, r)).is_zero()
    assert seen >= 1
