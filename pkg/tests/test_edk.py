import random

import pytest

from grtkv.edk import (
    EdkElement,
    ShapeMismatch,
    coface,
    delta_pole,
    delta_strand,
    differential,
    edk_bracket,
    emergent_defects,
    phi_1,
    theta_last,
)
from grtkv.freealg import NCPoly
from grtkv.freelie import LiePoly, lie_bracket, lie_gens2, substitute
from grtkv.suites import cosimplicial, dd_zero, jacobi_edk, ppss5, random_edk

x, y = lie_gens2()
X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
PSI3 = lie_bracket(x, lie_bracket(x, y)) - lie_bracket(y, lie_bracket(y, x))
PHI3 = substitute(PSI3, [-(x + y), y])


def E(m, n, lie=None, ass=None):
    return EdkElement(m, n, lie, ass)


def test_bracket_examples():
    assert edk_bracket(E(2, 2, {1: x}), E(2, 2, {2: x})) == E(2, 2, ass={(1, 2): X})
    assert edk_bracket(E(2, 2, {2: y}), E(2, 2, ass={(1, 2): X})) == E(2, 2, ass={(1, 2): NCPoly.word(2, (1, 0))})
    assert edk_bracket(E(2, 2, ass={(1, 2): X}), E(2, 2, ass={(1, 2): Y})).is_zero()


def test_left_slot_action():
    got = edk_bracket(E(2, 2, {1: y}), E(2, 2, ass={(1, 2): X}))
    assert got == E(2, 2, ass={(1, 2): -NCPoly.word(2, (0, 1))})
    # Lie parts on other strands act trivially
    assert edk_bracket(E(2, 3, {3: y}), E(2, 3, ass={(1, 2): X})).is_zero()


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        edk_bracket(E(2, 2, {1: x}), E(2, 1, {1: x}))


def test_pole_maps():
    x1 = LiePoly.gen(1, 0)
    got = delta_pole(1, E(1, 1, {1: x1}))
    assert got == E(2, 1, {1: x + y})
    assert delta_pole(0, E(1, 1, {1: x1})) == E(2, 1, {1: y})
    assert delta_pole(1, E(1, 2, ass={(1, 2): NCPoly.gen(1, 0)})) == E(2, 2, ass={(1, 2): X + Y})
    with pytest.raises(ValueError):
        delta_pole(2, E(1, 1, {1: x1}))


def test_strand_maps():
    assert delta_strand(1, E(2, 1, {1: x})) == E(2, 2, {1: x, 2: x})
    u = lie_bracket(x, lie_bracket(x, y))
    assert delta_strand(1, E(2, 1, {1: u})) == E(2, 2, {1: u, 2: u}, {(1, 2): -NCPoly.word(2, (0, 1)) - NCPoly.word(2, (1, 0))})
    one = NCPoly.one(1)
    # coface index m + k = 2 with one pole cables strand 1
    assert delta_strand(1, E(1, 2, ass={(1, 2): one})) == E(1, 3, ass={(1, 3): one, (2, 3): one})
    assert delta_strand(2, E(1, 2, ass={(1, 2): one})) == E(1, 3, ass={(1, 2): one, (1, 3): one})
    with pytest.raises(ValueError):
        delta_strand(0, E(2, 1, {1: x}))


def test_theta_examples():
    assert theta_last(E(2, 1, {1: lie_bracket(x, y)})) == E(1, 2, ass={(1, 2): NCPoly.gen(1, 0)})
    assert theta_last(E(2, 2, ass={(1, 2): Y})).is_zero()
    assert theta_last(E(2, 2, ass={(1, 2): X})) == E(1, 3, ass={(2, 3): NCPoly.gen(1, 0)})
    with pytest.raises(ValueError):
        theta_last(E(0, 2, ass={(1, 2): NCPoly.one(0)}))


def test_differential_examples():
    assert differential(phi_1(x)) == E(2, 2, {2: -x})
    assert differential(phi_1(y)) == E(2, 2, ass={(1, 2): NCPoly.one(2)})
    assert differential(phi_1(PHI3)).is_zero()
    with pytest.raises(ValueError):
        coface(5, phi_1(x))


def test_residue_examples():
    assert emergent_defects(x) == (-x, NCPoly.zero(2), LiePoly.zero(2))
    assert emergent_defects(y) == (LiePoly.zero(2), NCPoly.one(2), LiePoly.zero(2))
    assert all(r.is_zero() for r in emergent_defects(PHI3))


def test_json_rendering():
    a = E(2, 2, {1: lie_bracket(x, y)}, {(1, 2): X.scale(2)})
    assert a.to_json() == {"m": 2, "n": 2, "lie": {"1": {"xy": "1"}}, "ass": {"1,2": {"x": "2"}}}
    assert str(a) == "([x,y])_1 + (2x)_12"


def test_edk_zero_poles():
    one = NCPoly.one(0)
    a = E(0, 3, ass={(1, 2): one})
    assert differential(differential(a)).is_zero()
    assert edk_bracket(a, E(0, 3, ass={(2, 3): one})).is_zero()


def test_suites_small():
    assert dd_zero(count=20).passed
    assert cosimplicial(count=20).passed
    assert jacobi_edk(count=10, max_degree=3).passed
    assert ppss5(count=20).passed


def test_random_elements_are_homogeneous():
    rng = random.Random(1)
    for d in range(1, 6):
        assert random_edk(rng, 2, 2, d).degrees() == {d}
