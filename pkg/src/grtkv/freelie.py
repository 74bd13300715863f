"""Free Lie algebras in the Lyndon basis.

A :class:`LiePoly` is stored through its (primitive) expansion in the free
associative algebra, which makes brackets, substitutions and equality cheap.
Lyndon coordinates are extracted on demand by triangular back-substitution:
the expansion of the standard bracketing of a Lyndon word ``w`` is ``w`` plus
lexicographically larger words.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .freealg import (
    AlphabetMismatch,
    NCPoly,
    add_terms,
    antipode,
    commutator,
    parse_word,
    render_word,
    substitute_nc,
)


class NotPrimitiveError(ValueError):
    """Raised when an associative polynomial is not a Lie element."""


# Lyndon words -----------------------------------------------------------------

@lru_cache(maxsize=None)
def lyndon_words(n: int, d: int) -> tuple:
    """All Lyndon words of length ``d`` over ``n`` letters, lexicographically.

    Duval's algorithm enumerates Lyndon words of length <= d in lex order.
    """
    if n < 1 or d < 1:
        return ()
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == d:
            out.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return tuple(out)


def is_lyndon(w) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    """Split a Lyndon word as ``uv`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


@lru_cache(maxsize=None)
def _lyndon_expansion(w: tuple) -> dict:
    if len(w) == 1:
        return {w: Fraction(1)}
    u, v = standard_factorization(w)
    eu, ev = _lyndon_expansion(u), _lyndon_expansion(v)
    out: dict = {}
    for a, ca in eu.items():
        for b, cb in ev.items():
            c = ca * cb
            add_terms(out, {a + b: c})
            add_terms(out, {b + a: -c})
    return out


def lyndon_expansion(w, n: int) -> NCPoly:
    return NCPoly(n, dict(_lyndon_expansion(tuple(w))), _trusted=True)


def render_bracketing(w: tuple) -> str:
    if len(w) == 1:
        return render_word(w)
    u, v = standard_factorization(w)
    return f"[{render_bracketing(u)},{render_bracketing(v)}]"


def necklace_count(n: int, d: int) -> int:
    """Number of Lyndon words of length d: (1/d) sum_{e | d} mobius(e) n^(d/e)."""
    def mobius(k):
        res, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if k > 1 else res

    return sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


# LiePoly -----------------------------------------------------------------------

def _extract_coords(a: NCPoly) -> dict:
    """Lyndon coordinates of a primitive element; raises NotPrimitiveError."""
    rest = dict(a.terms)
    coords: dict = {}
    if () in rest:
        raise NotPrimitiveError("nonzero constant term")
    while rest:
        w = min(rest, key=lambda t: (len(t), t))
        if not is_lyndon(w):
            raise NotPrimitiveError(f"leading word {render_word(w)} is not Lyndon")
        c = rest[w]
        coords[w] = c
        add_terms(rest, _lyndon_expansion(w), -c)
    return coords


class LiePoly:
    """Element of the free Lie algebra on ``n`` generators."""

    __slots__ = ("n", "poly", "_coords")

    def __init__(self, n: int, poly: NCPoly, *, _coords=None):
        if poly.n != n:
            raise AlphabetMismatch("expansion lives over a different alphabet")
        self.n = n
        self.poly = poly
        self._coords = _coords

    @classmethod
    def zero(cls, n: int) -> "LiePoly":
        return cls(n, NCPoly.zero(n), _coords={})

    @classmethod
    def gen(cls, n: int, i: int) -> "LiePoly":
        return cls(n, NCPoly.gen(n, i), _coords={(i,): Fraction(1)})

    @classmethod
    def gens(cls, n: int) -> list["LiePoly"]:
        return [cls.gen(n, i) for i in range(n)]

    @classmethod
    def from_coords(cls, n: int, coords: Mapping) -> "LiePoly":
        acc: dict = {}
        clean = {}
        for w, c in coords.items():
            w = tuple(parse_word(w) if isinstance(w, str) else w)
            if not c:
                continue
            if not is_lyndon(w):
                raise ValueError(f"{render_word(w)} is not a Lyndon word")
            if any(not 0 <= i < n for i in w):
                raise ValueError("letter outside alphabet")
            clean[w] = clean.get(w, 0) + Fraction(c)
            add_terms(acc, _lyndon_expansion(w), Fraction(c))
        clean = {w: c for w, c in clean.items() if c}
        return cls(n, NCPoly(n, acc, _trusted=True), _coords=clean)

    @classmethod
    def basis(cls, n: int, d: int) -> list["LiePoly"]:
        return [cls.from_coords(n, {w: 1}) for w in lyndon_words(n, d)]

    @property
    def coords(self) -> dict:
        if self._coords is None:
            self._coords = _extract_coords(self.poly)
        return self._coords

    def coord_vector(self, d: int) -> list[Fraction]:
        c = self.coords
        return [c.get(w, Fraction(0)) for w in lyndon_words(self.n, d)]

    @classmethod
    def from_vector(cls, n: int, d: int, vec: Sequence) -> "LiePoly":
        return cls.from_coords(n, dict(zip(lyndon_words(n, d), vec)))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def degrees(self) -> set[int]:
        return self.poly.degrees()

    def homogeneous_part(self, d: int) -> "LiePoly":
        return LiePoly(self.n, self.poly.homogeneous_part(d))

    def degree(self) -> int:
        ds = self.poly.degrees()
        if len(ds) != 1:
            raise ValueError("element is not homogeneous (or is zero)")
        return next(iter(ds))

    def _same(self, other: "LiePoly") -> None:
        if not isinstance(other, LiePoly):
            raise TypeError("expected LiePoly")
        if self.n != other.n:
            raise AlphabetMismatch(f"alphabet sizes differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        self._same(other)
        return LiePoly(self.n, self.poly + other.poly)

    def __sub__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        self._same(other)
        return LiePoly(self.n, self.poly - other.poly)

    def __neg__(self):
        return LiePoly(self.n, -self.poly)

    def scale(self, c) -> "LiePoly":
        return LiePoly(self.n, self.poly.scale(c))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def bracket(self, other: "LiePoly") -> "LiePoly":
        return lie_bracket(self, other)

    def __eq__(self, other):
        if isinstance(other, LiePoly):
            return self.n == other.n and self.poly == other.poly
        if other == 0:
            return self.poly.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(("lie", self.poly))

    def __str__(self):
        if not self.coords:
            return "0"
        items = sorted(self.coords.items(), key=lambda t: (len(t[0]), t[0]))
        out = []
        for w, c in items:
            body = render_bracketing(w)
            a = abs(c)
            txt = body if a == 1 else (f"{a}{body}" if a.denominator == 1 else f"{a} {body}")
            if not out:
                out.append(("-" if c < 0 else "") + txt)
            else:
                out.append(f" {'-' if c < 0 else '+'} {txt}")
        return "".join(out)

    def __repr__(self):
        return f"LiePoly({self.n}, {self})"

    def to_json(self) -> dict:
        items = sorted(self.coords.items(), key=lambda t: (len(t[0]), t[0]))
        return {render_word(w): str(c) for w, c in items}


def lie_bracket(u: LiePoly, v: LiePoly) -> LiePoly:
    u._same(v)
    return LiePoly(u.n, commutator(u.poly, v.poly))


def expand(u: LiePoly) -> NCPoly:
    return u.poly


def lie_from_primitive(a: NCPoly) -> LiePoly:
    coords = _extract_coords(a)
    return LiePoly(a.n, a, _coords=coords)


def substitute(u: LiePoly, images: Sequence, memo: dict | None = None):
    """Image of ``u`` under the Lie homomorphism ``x_i -> images[i]``.

    Images may be any bracket carrier (objects with ``+``, ``scale`` and
    ``bracket``).  When every image is a LiePoly the associative expansion is
    substituted directly; otherwise Lyndon standard bracketings are evaluated
    recursively, memoized in ``memo`` (reusable across calls with the same
    images).
    """
    if len(images) != u.n:
        raise ValueError(f"arity mismatch: {u.n} letters, {len(images)} images")
    if images and all(isinstance(im, LiePoly) for im in images):
        return LiePoly(images[0].n, substitute_nc(u.poly, [im.poly for im in images]))
    if not images:
        raise ValueError("no images supplied")
    return substitute_bracketing(u, images, memo)


def substitute_bracketing(u: LiePoly, images: Sequence, memo: dict | None = None):
    """Generic Lyndon-bracketing evaluation of ``u`` on carrier ``images``."""
    if len(images) != u.n:
        raise ValueError(f"arity mismatch: {u.n} letters, {len(images)} images")
    if memo is None:
        memo = {}
    zero = images[0].scale(0)

    def image(w):
        r = memo.get(w)
        if r is None:
            if len(w) == 1:
                r = images[w[0]]
            else:
                a, b = standard_factorization(w)
                r = image(a).bracket(image(b))
            memo[w] = r
        return r

    result = zero
    for w, c in u.coords.items():
        result = result + image(w).scale(c)
    return result


def fox_left(a: NCPoly, i: int) -> NCPoly:
    """``d_i a`` with ``a - eps(a) = sum_i (d_i a) x_i``."""
    return NCPoly(a.n, {w[:-1]: c for w, c in a.terms.items() if w and w[-1] == i}, _trusted=True)


def fox_right(a: NCPoly, i: int) -> NCPoly:
    """``d^i a`` with ``a - eps(a) = sum_i x_i (d^i a)``; equals ``antipode(fox_left(a, i))`` on Lie elements."""
    return NCPoly(a.n, {w[1:]: c for w, c in a.terms.items() if w and w[0] == i}, _trusted=True)


def fox_right_via_antipode(a: NCPoly, i: int) -> NCPoly:
    return antipode(fox_left(a, i))


def lie_gens2() -> tuple[LiePoly, LiePoly]:
    return LiePoly.gen(2, 0), LiePoly.gen(2, 1)
