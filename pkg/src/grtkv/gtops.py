"""Associated graded loop operations on a punctured disk.

``eta_gr`` (intersection form), ``mu_f_gr`` (self-intersection map),
``mu_fr_gr`` and ``delta_f_gr`` (framed cobracket), plus the recursively
defined map ``r_map`` which agrees with ``mu_f_gr`` on Lie elements.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .freealg import (
    AlphabetMismatch,
    NCPoly,
    TracePoly,
    add_terms,
    antipode,
    commutator,
    cyclic_canonical,
    nc_mul,
    trace_project,
    word_coproduct,
)
from .freelie import LiePoly, _lyndon_expansion, fox_left, standard_factorization


class LiftMismatch(ValueError):
    """The supplied lift does not project onto the given trace."""


def eta_gr(a: NCPoly, b: NCPoly) -> NCPoly:
    """Graded homotopy intersection form: on words, ``-a'.z(a_l, b_1).b'``."""
    if a.n != b.n:
        raise AlphabetMismatch("alphabet sizes differ")
    out: dict = defaultdict(Fraction)
    for u, cu in a.terms.items():
        if not u:
            continue
        for v, cv in b.terms.items():
            if v and u[-1] == v[0]:
                out[u + v[1:]] -= cu * cv
    return NCPoly(a.n, {w: c for w, c in out.items() if c}, _trusted=True)


def mu_f_gr(a: NCPoly) -> NCPoly:
    """Graded self-intersection map; merges each equal adjacent pair with sign -1."""
    out: dict = defaultdict(Fraction)
    for w, c in a.terms.items():
        for j in range(len(w) - 1):
            if w[j] == w[j + 1]:
                out[w[:j + 1] + w[j + 2:]] -= c
    return NCPoly(a.n, {w: c for w, c in out.items() if c}, _trusted=True)


def _fox_pair_term(a: NCPoly, b: NCPoly) -> NCPoly:
    """``sum_i (d_i b) x_i iota(d_i a)``."""
    out = NCPoly.zero(a.n)
    for i in range(a.n):
        da, db = fox_left(a, i), fox_left(b, i)
        if da and db:
            out = out + nc_mul(nc_mul(db, NCPoly.gen(a.n, i)), antipode(da))
    return out


class RMap:
    """The map R : lie_n -> ass_n, evaluated through its defining recursion.

    Values on Lyndon basis elements are memoized per instance.
    """

    def __init__(self, n: int):
        self.n = n
        self._memo: dict = {}

    def on_lyndon(self, w: tuple) -> NCPoly:
        r = self._memo.get(w)
        if r is not None:
            return r
        n = self.n
        if len(w) == 1:
            r = NCPoly.zero(n)
        else:
            u, v = standard_factorization(w)
            a = NCPoly(n, dict(_lyndon_expansion(u)), _trusted=True)
            b = NCPoly(n, dict(_lyndon_expansion(v)), _trusted=True)
            ra, rb = self.on_lyndon(u), self.on_lyndon(v)
            r = (commutator(ra, b) + commutator(a, rb)
                 + _fox_pair_term(a, b) - _fox_pair_term(b, a))
        self._memo[w] = r
        return r

    def __call__(self, u: LiePoly) -> NCPoly:
        acc: dict = {}
        for w, c in u.coords.items():
            add_terms(acc, self.on_lyndon(w).terms, c)
        return NCPoly(u.n, acc, _trusted=True)


_R_MAPS: dict = {}


def r_map(u: LiePoly) -> NCPoly:
    rm = _R_MAPS.get(u.n)
    if rm is None:
        rm = _R_MAPS[u.n] = RMap(u.n)
    return rm(u)


@lru_cache(maxsize=1 << 15)
def _mu_word(w: tuple) -> tuple:
    out: dict = defaultdict(int)
    for j in range(len(w) - 1):
        if w[j] == w[j + 1]:
            out[w[:j + 1] + w[j + 2:]] -= 1
    return tuple((r, c) for r, c in out.items() if c)


def mu_fr_gr(a: NCPoly) -> dict:
    """Based-loop cobracket as ``{(cyclic word, word): coeff}`` in tr_n (x) ass_n.

    Pipeline: Delta, id (x) mu, id (x) ((iota (x) id) Delta), then trace of the
    product of the first two factors.  Each stage is aggregated before the next.
    """
    first: dict = defaultdict(Fraction)
    for w, c in a.terms.items():
        for pq, k in word_coproduct(w).items():
            first[pq] += c * k
    second: dict = defaultdict(Fraction)
    for (p, q), c in first.items():
        if c:
            for r, k in _mu_word(q):
                second[(p, r)] += c * k
    out: dict = defaultdict(Fraction)
    for (p, r), c in second.items():
        if not c:
            continue
        for (s, t), k in word_coproduct(r).items():
            # iota(s) = (-1)^{|s|} reversed s
            sign = -k if len(s) % 2 else k
            out[(cyclic_canonical(p + s[::-1]), t)] += c * sign
    return {k: v for k, v in out.items() if v}


def counit_left(t: dict, n: int) -> NCPoly:
    """``(eps (x) id)`` on a tr_n (x) ass_n tensor."""
    acc: dict = defaultdict(Fraction)
    for (p, q), c in t.items():
        if not p:
            acc[q] += c
    return NCPoly(n, {w: c for w, c in acc.items() if c}, _trusted=True)


def delta_f_gr(t: TracePoly, lift: NCPoly) -> dict:
    """Graded framed cobracket of ``t`` as ``{(cyclic, cyclic): coeff}``.

    ``lift`` must project onto ``t``; the value does not depend on the lift.
    """
    if trace_project(lift) != t:
        raise LiftMismatch("lift does not project onto the given trace")
    return delta_f_gr_of(lift)


def delta_f_gr_of(a: NCPoly) -> dict:
    """``Alt . (id (x) | |) . mu_fr_gr`` applied to an associative lift."""
    out: dict = defaultdict(Fraction)
    for (p, q), c in mu_fr_gr(a).items():
        q = cyclic_canonical(q)
        out[(p, q)] += c
        out[(q, p)] -= c
    return {k: v for k, v in out.items() if v}
