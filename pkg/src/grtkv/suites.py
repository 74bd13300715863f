"""Seeded property suites shared by the command line and the test-suite.

Each suite returns a :class:`SuiteResult`; inputs are visited in increasing
degree so the first recorded failure is a small counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .dk import DkShape, dk3_to_lie2, dk_t, hexagon_defects, pentagon_defect
from .edk import (
    EdkElement,
    coface,
    delta_pole,
    delta_strand,
    differential,
    edk_bracket,
    edk_gens,
    emergent_defects,
    extend_strand,
    phi_1,
    theta_last,
)
from .freealg import (
    NCPoly,
    antipode,
    coproduct,
    cyclic_words,
    is_primitive,
    nc_mul,
    substitute_nc,
    tensor_mult,
)
from .freelie import LiePoly, fox_left, fox_right, lyndon_words, substitute
from .gtops import mu_f_gr, r_map
from .kv import (
    SDER_MODES,
    TangentialDerivation,
    commutes_with_delta,
    commutes_with_mu,
    is_sder,
    sder_basis,
)

DEFAULT_SEED = 20240613


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def check(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.checks += 1
        if not ok and self.failure is None:
            self.failure = describe()
        return ok

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name} ({self.checks} checks)"
        if self.failure:
            msg += f"\n  counterexample: {self.failure}"
        return msg


# random elements ------------------------------------------------------------------

def _coeff(rng: random.Random) -> int:
    return rng.choice([-3, -2, -1, 1, 2, 3])


def random_lie(rng: random.Random, n: int, d: int, terms: int | None = None) -> LiePoly:
    words = list(lyndon_words(n, d))
    if not words:
        return LiePoly.zero(n)
    k = len(words) if terms is None else min(terms, len(words))
    chosen = rng.sample(words, k)
    return LiePoly.from_coords(n, {w: _coeff(rng) for w in chosen})


def random_nc(rng: random.Random, n: int, d: int, terms: int = 4) -> NCPoly:
    return NCPoly(n, {tuple(rng.randrange(n) for _ in range(d)): _coeff(rng) for _ in range(terms)})


def random_edk(rng: random.Random, m: int, n: int, d: int) -> EdkElement:
    """Random homogeneous element of degree ``d`` touching several slots."""
    lie = {}
    if m > 0:
        for i in range(1, n + 1):
            if rng.random() < 0.7:
                lie[i] = random_lie(rng, m, d, terms=3)
    ass = {}
    if m > 0 or d == 1:
        for j in range(1, n + 1):
            for i in range(1, j):
                if rng.random() < 0.7:
                    ass[(i, j)] = random_nc(rng, m, d - 1, terms=3)
    el = EdkElement(m, n, lie, ass)
    if el.is_zero():
        return random_edk(rng, m, n, d)
    return el


def random_tder(rng: random.Random, n: int, d: int) -> TangentialDerivation:
    return TangentialDerivation([random_lie(rng, n, d, terms=3) for _ in range(n)], n)


def random_sder(rng: random.Random, n: int, d: int) -> TangentialDerivation:
    basis = sder_basis(n, d)
    out = TangentialDerivation.zero(n)
    for b in basis:
        out = out + b.scale(_coeff(rng))
    return out


EDK_SHAPES = ((2, 1), (2, 2), (1, 2))


# suites -----------------------------------------------------------------------------

def r_oracle(max2: int = 10, max3: int = 6) -> SuiteResult:
    res = SuiteResult("r-oracle")
    for n, top in ((2, max2), (3, max3)):
        for d in range(1, top + 1):
            for w in lyndon_words(n, d):
                u = LiePoly.from_coords(n, {w: 1})
                res.check(r_map(u) == mu_f_gr(u.poly), lambda: f"n={n}, basis element {u}")
    return res


def _edk_samples(seed: int, count: int, max_degree: int):
    rng = random.Random(seed)
    samples = []
    for m, n in EDK_SHAPES:
        samples += edk_gens(m, n)
    randoms = [random_edk(rng, *EDK_SHAPES[k % 3], 1 + k % max_degree) for k in range(count)]
    randoms.sort(key=lambda a: max(a.degrees()))
    return samples + randoms


def dd_zero(seed: int = DEFAULT_SEED, count: int = 100, max_degree: int = 5) -> SuiteResult:
    res = SuiteResult("dd-zero")
    for a in _edk_samples(seed, count, max_degree):
        res.check(differential(differential(a)).is_zero(), lambda: f"d(d(A)) != 0 for A = {a!r}")
    return res


def cosimplicial(seed: int = DEFAULT_SEED, count: int = 100, max_degree: int = 5) -> SuiteResult:
    res = SuiteResult("cosimplicial")
    for a in _edk_samples(seed, count, max_degree):
        top = a.m + a.n + 1
        faces = [coface(j, a) for j in range(top + 1)]
        for j in range(top + 1):
            for i in range(j + 1):
                lhs = coface(i, faces[j])
                rhs = coface(j + 1, faces[i])
                res.check(lhs == rhs, lambda: f"d_{i} d_{j} != d_{j + 1} d_{i} on {a!r}")
    return res


def _edk_maps(m: int, n: int):
    maps = [(f"delta_pole({k})", lambda a, k=k: delta_pole(k, a)) for k in range(m + 1)]
    maps += [(f"delta_strand({k})", lambda a, k=k: delta_strand(k, a)) for k in range(1, n + 1)]
    maps.append(("extend_strand", extend_strand))
    if m >= 1:
        maps.append(("theta_last", theta_last))
    return maps


def jacobi_edk(seed: int = DEFAULT_SEED, count: int = 100, max_degree: int = 6) -> SuiteResult:
    """Jacobi and antisymmetry in edk_{2,3}; bracket preservation of the operadic maps."""
    res = SuiteResult("jacobi-edk")
    rng = random.Random(seed)
    triples = []
    for _ in range(count):
        degs = [rng.randint(1, max_degree) for _ in range(3)]
        triples.append([random_edk(rng, 2, 3, d) for d in degs])
    triples.sort(key=lambda t: sum(max(a.degrees()) for a in t))
    for a, b, c in triples:
        ab = edk_bracket(a, b)
        res.check((ab + edk_bracket(b, a)).is_zero(), lambda: f"[A,B] + [B,A] != 0 for {a!r}, {b!r}")
        jac = edk_bracket(ab, c) + edk_bracket(edk_bracket(b, c), a) + edk_bracket(edk_bracket(c, a), b)
        res.check(jac.is_zero(), lambda: f"Jacobi fails on {a!r}, {b!r}, {c!r}")
    pairs = []
    for k in range(count):
        m, n = ((2, 2), (2, 1), (1, 2), (2, 3))[k % 4]
        pairs.append((random_edk(rng, m, n, rng.randint(1, 4)), random_edk(rng, m, n, rng.randint(1, 4))))
    for a, b in pairs:
        ab = edk_bracket(a, b)
        for name, f in _edk_maps(a.m, a.n):
            ok = f(ab) == edk_bracket(f(a), f(b))
            res.check(ok, lambda: f"{name} does not preserve [{a!r}, {b!r}]")
    return res


def _coface_oracles(phi: LiePoly) -> list[EdkElement]:
    """``d_0 .. d_4`` on ``phi_1`` written out by hand."""
    X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    p, dy = phi.poly, fox_left(phi.poly, 1)
    at = lambda a, u, v: substitute_nc(a, [u, v], target=2)  # noqa: E731
    E = lambda lie, ass: EdkElement(2, 2, lie, ass)  # noqa: E731
    return [
        E({2: at(p, Y, 0)}, {(1, 2): at(dy, Y, 0)}),
        E({2: at(p, X + Y, 0)}, {(1, 2): at(dy, X + Y, 0)}),
        E({2: p}, {(1, 2): dy}),
        E({1: p, 2: p}, {(1, 2): r_map(phi)}),
        E({1: p}, {}),
    ]


def ppss5(seed: int = DEFAULT_SEED, count: int = 100, max_degree: int = 6) -> SuiteResult:
    """``d(phi_1) = 0`` iff the first two emergent residues vanish; coface oracles."""
    from .spaces import solve_graded

    res = SuiteResult("ppss5")
    x, y = LiePoly.gens(2)
    res.check(emergent_defects(x) == (-x, NCPoly.zero(2), LiePoly.zero(2)), lambda: "residues of x")
    res.check(emergent_defects(y) == (LiePoly.zero(2), NCPoly.one(2), LiePoly.zero(2)),
              lambda: "residues of y")
    rng = random.Random(seed)
    phis = []
    for k in range(count):
        d = 1 + k % max_degree
        sols = solve_graded("ppss-p1", d).basis
        if k % 2 and sols:
            phi = LiePoly.zero(2)
            for s in sols:
                phi = phi + s.scale(_coeff(rng))
        else:
            phi = random_lie(rng, 2, d, terms=3)
        phis.append(phi)
    phis.sort(key=lambda p: max(p.degrees()))
    for phi in [x, y] + phis:
        r1, r2, _ = emergent_defects(phi)
        closed = differential(phi_1(phi)).is_zero()
        res.check(closed == (r1.is_zero() and r2.is_zero()), lambda: f"equivalence fails for {phi}")
        faces = [coface(k, phi_1(phi)) for k in range(5)]
        for k, (got, want) in enumerate(zip(faces, _coface_oracles(phi))):
            res.check(got == want, lambda: f"d_{k} disagrees with its closed form on {phi}")
    return res


def pentagon(seed: int = DEFAULT_SEED, count: int = 50, max_degree: int = 6) -> SuiteResult:
    """Pentagon in dk_4 versus the emergent differential, and the dk_3 identification."""
    res = SuiteResult("pentagon")
    x, y = LiePoly.gens(2)
    psi3 = x.bracket(x.bracket(y)) - y.bracket(y.bracket(x))
    res.check(pentagon_defect(psi3).is_zero(), lambda: "pentagon defect of psi_3")
    res.check(all(h.is_zero() for h in hexagon_defects(psi3)), lambda: "hexagon defects of psi_3")
    em = substitute(psi3, [-(x + y), y])
    res.check(differential(phi_1(em)).is_zero(), lambda: "d(psi_3(-x-y,y)_1) != 0")
    rng = random.Random(seed)
    s3 = DkShape(0, 3)
    t12, t23 = dk_t(s3, 1, 2), dk_t(s3, 2, 3)
    for k in range(count):
        psi = random_lie(rng, 2, 2 + k % (max_degree - 1), terms=4)
        got = dk3_to_lie2(substitute(psi, [t12, t23]))
        res.check(got == substitute(psi, [-(x + y), y]), lambda: f"dk_3 identification fails for {psi}")
    return res


def sder_equiv(seed: int = DEFAULT_SEED, count: int = 200, max_degree: int = 5) -> SuiteResult:
    res = SuiteResult("sder-equiv")
    rng = random.Random(seed)
    samples = []
    for k in range(count):
        d = 1 + k % max_degree
        u = random_sder(rng, 2, d) if k % 2 else random_tder(rng, 2, d)
        samples.append(u)
    samples.sort(key=lambda u: max(u.degrees() or {0}))
    sder_seen = 0
    for u in samples:
        answers = [is_sder(u, mode) for mode in SDER_MODES]
        sder_seen += answers[0]
        res.check(len(set(answers)) == 1, lambda: f"modes disagree ({answers}) on {u}")
    res.check(0 < sder_seen < len(samples), lambda: "sample set is one-sided")
    return res


def kv_commute(max_degree: int = 6, word_degree: int = 6, zero_extra: tuple = (8,),
               zero_word_degree: int = 5) -> SuiteResult:
    """krv_2 commutes with the framed cobracket; krv_2^0 commutes with mu^f_gr."""
    from .spaces import solve_graded

    res = SuiteResult("kv-commute")
    traces = [()] + [w for d in range(1, word_degree + 1) for w in cyclic_words(2, d)]
    for d in range(1, max_degree + 1):
        for u in solve_graded("krv2", d).basis:
            for w in traces:
                res.check(commutes_with_delta(u, w), lambda: f"{u} vs cobracket on |{w}|")
    from .freealg import all_words

    for d in list(range(1, max_degree + 1)) + list(zero_extra):
        wd = word_degree if d <= max_degree else zero_word_degree
        words = [w for k in range(wd + 1) for w in all_words(2, k)]
        for u in solve_graded("krv2zero", d).basis:
            for w in words:
                res.check(commutes_with_mu(u, w), lambda: f"{u} vs mu^f_gr on {w}")
    return res


def fox(seed: int = DEFAULT_SEED, count: int = 50) -> SuiteResult:
    res = SuiteResult("fox")
    rng = random.Random(seed)
    for k in range(count):
        n = 2 + k % 2
        a = random_nc(rng, n, 1 + k % 5, terms=5) + NCPoly.one(n).scale(k % 3)
        rest = a - NCPoly.one(n).scale(a.counit())
        left = NCPoly.zero(n)
        right = NCPoly.zero(n)
        for i in range(n):
            left = left + nc_mul(fox_left(a, i), NCPoly.gen(n, i))
            right = right + nc_mul(NCPoly.gen(n, i), fox_right(a, i))
        res.check(left == rest and right == rest, lambda: f"Fox expansion fails for {a}")
        u = random_lie(rng, n, 1 + k % 5, terms=3)
        res.check(all(fox_right(u.poly, i) == antipode(fox_left(u.poly, i)) for i in range(n)),
                  lambda: f"right Fox derivative is not the antipode of the left one on {u}")
    return res


def _tensor_product(s: dict, t: dict) -> dict:
    out: dict = {}
    for (a, b), c in s.items():
        for (p, q), e in t.items():
            key = (a + p, b + q)
            out[key] = out.get(key, Fraction(0)) + c * e
    return {k: v for k, v in out.items() if v}


def hopf(seed: int = DEFAULT_SEED, count: int = 50) -> SuiteResult:
    res = SuiteResult("hopf")
    rng = random.Random(seed)
    for k in range(count):
        a = random_nc(rng, 2, k % 4, terms=3)
        b = random_nc(rng, 2, 1 + k % 3, terms=3)
        res.check(coproduct(nc_mul(a, b)) == _tensor_product(coproduct(a), coproduct(b)),
                  lambda: f"coproduct is not multiplicative on {a}, {b}")
        res.check(antipode(nc_mul(a, b)) == nc_mul(antipode(b), antipode(a)),
                  lambda: f"antipode is not an anti-homomorphism on {a}, {b}")
        twisted = {(tuple(reversed(p)), q): (-c if len(p) % 2 else c) for (p, q), c in coproduct(a).items()}
        res.check(tensor_mult(twisted, 2) == NCPoly.one(2).scale(a.counit()),
                  lambda: f"antipode axiom fails on {a}")
        u = random_lie(rng, 2, 1 + k % 6, terms=3)
        res.check(is_primitive(u.poly), lambda: f"Lie element {u} is not primitive")
    return res


SUITES = {
    "dd-zero": dd_zero,
    "cosimplicial": cosimplicial,
    "jacobi-edk": jacobi_edk,
    "r-oracle": r_oracle,
    "sder-equiv": sder_equiv,
    "kv-commute": kv_commute,
    "fox": fox,
    "hopf": hopf,
    "ppss5": ppss5,
    "pentagon": pentagon,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    fn = SUITES[name]
    if name in ("r-oracle", "kv-commute"):
        return fn()
    return fn(seed=seed)
