"""Tangential and special derivations, divergence, and Kashiwara-Vergne membership."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .freealg import (
    AlphabetMismatch,
    NCPoly,
    TracePoly,
    apply_derivation,
    commutator,
    nc_mul,
    substitute_nc,
    trace_project,
)
from .freelie import LiePoly, fox_left, fox_right, lyndon_words
from .gtops import delta_f_gr_of, eta_gr, mu_f_gr
from .rationalg import kernel_from_rows


class NotSpecial(ValueError):
    """Raised when an operation needs a special derivation."""


class TangentialDerivation:
    """``u = (u_1, ..., u_n)`` acting on generators by ``x_i -> [x_i, u_i]``."""

    __slots__ = ("n", "components")

    def __init__(self, components: Sequence[LiePoly], n: int | None = None):
        comps = tuple(components)
        if n is None:
            if not comps:
                raise ValueError("rank cannot be inferred from no components")
            n = comps[0].n
        if len(comps) != n:
            raise ValueError(f"expected {n} components, got {len(comps)}")
        for u in comps:
            if u.n != n:
                raise AlphabetMismatch("component over the wrong alphabet")
        self.n = n
        self.components = comps

    @classmethod
    def zero(cls, n: int) -> "TangentialDerivation":
        return cls([LiePoly.zero(n)] * n, n)

    @classmethod
    def from_vector(cls, n: int, d: int, vec: Sequence) -> "TangentialDerivation":
        """Inverse of :meth:`coord_vector`: concatenated Lyndon coordinates."""
        size = len(lyndon_words(n, d))
        if len(vec) != n * size:
            raise ValueError("coordinate vector has the wrong length")
        return cls([LiePoly.from_vector(n, d, vec[i * size:(i + 1) * size]) for i in range(n)], n)

    def coord_vector(self, d: int) -> list[Fraction]:
        out: list = []
        for u in self.components:
            out.extend(u.coord_vector(d))
        return out

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def _same(self, other):
        if not isinstance(other, TangentialDerivation):
            raise TypeError("expected TangentialDerivation")
        if other.n != self.n:
            raise AlphabetMismatch(f"ranks differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._same(other)
        return TangentialDerivation([a + b for a, b in zip(self, other)], self.n)

    def __sub__(self, other):
        self._same(other)
        return TangentialDerivation([a - b for a, b in zip(self, other)], self.n)

    def __neg__(self):
        return TangentialDerivation([-a for a in self], self.n)

    def scale(self, c) -> "TangentialDerivation":
        return TangentialDerivation([a.scale(c) for a in self], self.n)

    def bracket(self, other) -> "TangentialDerivation":
        return tder_bracket(self, other)

    def is_zero(self) -> bool:
        return all(u.is_zero() for u in self)

    def __bool__(self):
        return not self.is_zero()

    def degrees(self) -> set[int]:
        ds: set = set()
        for u in self:
            ds |= u.degrees()
        return ds

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("derivation is not homogeneous (or is zero)")
        return next(iter(ds))

    def __eq__(self, other):
        if isinstance(other, TangentialDerivation):
            return self.n == other.n and self.components == other.components
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(str(u) for u in self) + ")"

    def __repr__(self):
        return f"TangentialDerivation{self}"

    def to_json(self) -> list:
        return [u.to_json() for u in self]


def _generator_images(u: TangentialDerivation) -> list[NCPoly]:
    return [commutator(NCPoly.gen(u.n, i), ui.poly) for i, ui in enumerate(u)]


def apply(u: TangentialDerivation, a):
    """``rho(u)`` on an NCPoly, LiePoly or TracePoly."""
    if a.n != u.n:
        raise AlphabetMismatch(f"rank {u.n} derivation on alphabet of size {a.n}")
    ims = _generator_images(u)
    if isinstance(a, LiePoly):
        return LiePoly(a.n, apply_derivation(a.poly, ims))
    if isinstance(a, TracePoly):
        lift = NCPoly(a.n, a.terms, _trusted=True)
        return trace_project(apply_derivation(lift, ims))
    if isinstance(a, NCPoly):
        return apply_derivation(a, ims)
    raise TypeError(f"cannot apply a derivation to {type(a).__name__}")


def tder_bracket(u: TangentialDerivation, v: TangentialDerivation) -> TangentialDerivation:
    """``w_i = [u_i, v_i] + u(v_i) - v(u_i)``."""
    u._same(v)
    return TangentialDerivation(
        [ui.bracket(vi) + apply(u, vi) - apply(v, ui) for ui, vi in zip(u, v)], u.n)


def div(u: TangentialDerivation) -> TracePoly:
    """``sum_i |x_i (d_i u_i)|``; preserves degree."""
    acc = NCPoly.zero(u.n)
    for i, ui in enumerate(u):
        acc = acc + nc_mul(NCPoly.gen(u.n, i), fox_left(ui.poly, i))
    return trace_project(acc)


def _x0(n: int) -> NCPoly:
    out = NCPoly.zero(n)
    for i in range(n):
        out = out + NCPoly.gen(n, i)
    return out


SDER_MODES = ("annihilates-x0", "fox-symmetry", "eta-commutation")


def is_sder(u: TangentialDerivation, mode: str = "annihilates-x0") -> bool:
    """Membership in ``sder_n`` by one of three equivalent tests."""
    n = u.n
    if mode == "annihilates-x0":
        return apply(u, _x0(n)).is_zero()
    if mode == "fox-symmetry":
        return all(fox_left(u[i].poly, j) == fox_right(u[j].poly, i)
                   for i in range(n) for j in range(n))
    if mode == "eta-commutation":
        gens = [NCPoly.gen(n, i) for i in range(n)]
        ims = _generator_images(u)
        for i in range(n):
            for j in range(n):
                lhs = apply(u, eta_gr(gens[i], gens[j]))
                rhs = eta_gr(ims[i], gens[j]) + eta_gr(gens[i], ims[j])
                if lhs != rhs:
                    return False
        return True
    raise ValueError(f"unknown sder mode {mode!r}; expected one of {SDER_MODES}")


# KV membership ----------------------------------------------------------------

@dataclass(frozen=True)
class KvWitness:
    """Membership class of a homogeneous special derivation.

    ``membership`` is one of ``"krv0"``, ``"krv"`` or ``"not"`` (every input is
    already special).  For ``krv`` with ``n = 2`` the coefficient ``c`` gives
    ``div = c |x^k + y^k - (x+y)^k|`` when the divergence has that shape.
    """

    membership: str
    degree: int
    coefficient: Fraction | None
    divergence: TracePoly


def power_trace(n: int, i: int | None, k: int) -> TracePoly:
    """``|x_i^k|``, or ``|x_0^k|`` with ``x_0 = x_1 + ... + x_n`` when ``i`` is None."""
    base = _x0(n) if i is None else NCPoly.gen(n, i)
    p = NCPoly.one(n)
    for _ in range(k):
        p = nc_mul(p, base)
    return trace_project(p)


def kv_span_trace(k: int) -> TracePoly:
    """``|x^k + y^k - (x+y)^k|`` in ``tr_2``."""
    return power_trace(2, 0, k) + power_trace(2, 1, k) - power_trace(2, None, k)


def span_coefficients(target: TracePoly, spanning: Sequence[TracePoly]) -> list[Fraction] | None:
    """Coefficients expressing ``target`` in the span of ``spanning``, or None."""
    keys = sorted(set(target.terms).union(*(s.terms for s in spanning)))
    cols = len(spanning) + 1
    rows = [[s.terms.get(w, Fraction(0)) for s in spanning] + [-target.terms.get(w, Fraction(0))]
            for w in keys]
    for v in kernel_from_rows(rows, cols):
        if v[-1]:
            return [c / v[-1] for c in v[:-1]]
    return None


def krv_class(u: TangentialDerivation) -> KvWitness:
    """Classify a homogeneous special derivation of degree at least two."""
    k = u.degree()
    if k < 2:
        raise ValueError("krv_class handles degrees >= 2 only")
    if not is_sder(u):
        raise NotSpecial("input is not a special derivation")
    d = div(u)
    if d.is_zero():
        return KvWitness("krv0", k, Fraction(0), d)
    n = u.n
    spanning = [power_trace(n, i, k) for i in range(n)] + [power_trace(n, None, k)]
    if span_coefficients(d, spanning) is None:
        return KvWitness("not", k, None, d)
    coeff = None
    if n == 2:
        c = span_coefficients(d, [kv_span_trace(k)])
        coeff = c[0] if c is not None else None
    return KvWitness("krv", k, coeff, d)


# the two-strand maps ------------------------------------------------------------

def _two_letters(phi: LiePoly) -> None:
    if phi.n != 2:
        raise AlphabetMismatch("expected a Lie element in two letters")


def nu(psi: LiePoly) -> TangentialDerivation:
    """``(psi(-x-y, x), psi(-x-y, y))``."""
    _two_letters(psi)
    x, y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    s = -(x + y)
    return TangentialDerivation([LiePoly(2, substitute_nc(psi.poly, [s, x])),
                                 LiePoly(2, substitute_nc(psi.poly, [s, y]))], 2)


def swap(phi: LiePoly) -> LiePoly:
    """``phi(y, x)``."""
    _two_letters(phi)
    return LiePoly(2, substitute_nc(phi.poly, [NCPoly.gen(2, 1), NCPoly.gen(2, 0)]))


def nu_em(phi: LiePoly) -> TangentialDerivation:
    """``(phi(y, x), phi(x, y))``."""
    _two_letters(phi)
    return TangentialDerivation([swap(phi), phi], 2)


def sym_involution(u: TangentialDerivation) -> TangentialDerivation:
    """``(u(x,y), v(x,y)) -> (v(y,x), u(y,x))``."""
    if u.n != 2:
        raise AlphabetMismatch("the involution is defined on rank two only")
    return TangentialDerivation([swap(u[1]), swap(u[0])], 2)


def d_u(u: TangentialDerivation, a: NCPoly) -> NCPoly:
    """``mu^f_gr . u - u . mu^f_gr``, a derivation of ``ass_n`` for special ``u``."""
    if not is_sder(u):
        raise NotSpecial("d_u needs a special derivation")
    return mu_f_gr(apply(u, a)) - apply(u, mu_f_gr(a))


# commutation tests ------------------------------------------------------------------

def _apply_tensor(u: TangentialDerivation, t: dict) -> dict:
    """``(u (x) 1 + 1 (x) u)`` on a ``tr (x) tr`` tensor keyed by cyclic word pairs."""
    ims = _generator_images(u)
    out: dict = {}
    for (p, q), c in t.items():
        for side in (0, 1):
            w = (p, q)[side]
            img = trace_project(apply_derivation(NCPoly(u.n, {w: Fraction(1)}, _trusted=True), ims))
            for v, cv in img.terms.items():
                key = (v, q) if side == 0 else (p, v)
                out[key] = out.get(key, Fraction(0)) + c * cv
    return {k: v for k, v in out.items() if v}


def commutes_with_delta(u: TangentialDerivation, word: tuple) -> bool:
    """``delta^f_gr(u|w|) == (u (x) 1 + 1 (x) u) delta^f_gr(|w|)`` for one cyclic word."""
    lift = NCPoly(u.n, {tuple(word): Fraction(1)}, _trusted=True)
    lhs = delta_f_gr_of(apply(u, lift))
    rhs = _apply_tensor(u, delta_f_gr_of(lift))
    return lhs == rhs


def commutes_with_mu(u: TangentialDerivation, word: tuple) -> bool:
    """``mu^f_gr(u(w)) == u(mu^f_gr(w))`` for one word."""
    a = NCPoly(u.n, {tuple(word): Fraction(1)}, _trusted=True)
    return mu_f_gr(apply(u, a)) == apply(u, mu_f_gr(a))


def em_witness(phi: LiePoly) -> NCPoly:
    """``f(x+y)`` with ``f(s) = -(d_y phi)(s, 0)``."""
    _two_letters(phi)
    x, y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    f_at_s = -substitute_nc(fox_left(phi.poly, 1), [x, 0], target=2)
    return substitute_nc(f_at_s, [x + y, 0], target=2)


__all__ = [
    "TangentialDerivation", "KvWitness", "NotSpecial", "apply", "tder_bracket", "div",
    "is_sder", "SDER_MODES", "krv_class", "kv_span_trace", "power_trace",
    "span_coefficients", "nu", "nu_em", "swap", "sym_involution", "d_u",
    "commutes_with_delta", "commutes_with_mu", "em_witness",
]


def sder_basis(n: int, d: int) -> list[TangentialDerivation]:
    """A basis of the degree-``d`` special derivations of rank ``n`` (exact kernel)."""
    L = len(lyndon_words(n, d))
    x0 = _x0(n)
    columns = []
    for j in range(n * L):
        e = [Fraction(0)] * (n * L)
        e[j] = Fraction(1)
        u = TangentialDerivation.from_vector(n, d, e)
        columns.append(apply(u, x0).terms)
    keys = sorted({w for col in columns for w in col})
    rows = [[col.get(w, Fraction(0)) for col in columns] for w in keys]
    return [TangentialDerivation.from_vector(n, d, v) for v in kernel_from_rows(rows, n * L)]


__all__.append("sder_basis")
