"""Free associative algebras ``ass_n``, their Hopf structure and trace space.

Words are tuples of 0-based letter indices: for two generators ``x`` is 0 and
``y`` is 1.  Polynomials are finite maps word -> Fraction with no stored zeros.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

Word = tuple

LETTERS = "xyzwuvabcdefghijklmnopqrst"


class AlphabetMismatch(ValueError):
    pass


def _clean(terms: Mapping) -> dict:
    return {w: Fraction(c) for w, c in terms.items() if c}


def _check_word(w: Word, n: int) -> None:
    for letter in w:
        if not 0 <= letter < n:
            raise ValueError(f"letter index {letter} outside alphabet of size {n}")


def render_word(w: Word) -> str:
    return "".join(LETTERS[i] for i in w) if w else "1"


def parse_word(s: str) -> Word:
    if s == "1":
        return ()
    return tuple(LETTERS.index(ch) for ch in s)


def _render_terms(items, render_key) -> str:
    if not items:
        return "0"
    out = []
    for key, c in items:
        body = render_key(key)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if body == "1":
            txt = str(a)
        elif a == 1:
            txt = body
        elif a.denominator == 1:
            txt = f"{a}{body}"
        else:
            txt = f"{a} {body}"
        if not out:
            out.append(("-" if sign == "-" else "") + txt)
        else:
            out.append(f" {sign} {txt}")
    return "".join(out)


def word_key(w: Word):
    return (len(w), w)


class NCPoly:
    """Element of the free associative algebra on ``n`` generators."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, *, _trusted: bool = False):
        self.n = n
        if _trusted:
            self.terms = terms
        else:
            self.terms = _clean(terms or {})
            for w in self.terms:
                _check_word(w, n)

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "NCPoly":
        return cls(n, {}, _trusted=True)

    @classmethod
    def one(cls, n: int) -> "NCPoly":
        return cls(n, {(): Fraction(1)}, _trusted=True)

    @classmethod
    def gen(cls, n: int, i: int) -> "NCPoly":
        if not 0 <= i < n:
            raise ValueError(f"generator {i} outside alphabet of size {n}")
        return cls(n, {(i,): Fraction(1)}, _trusted=True)

    @classmethod
    def word(cls, n: int, w: Iterable[int], coeff=1) -> "NCPoly":
        return cls(n, {tuple(w): Fraction(coeff)})

    @classmethod
    def parse(cls, n: int, spec: Mapping[str, object]) -> "NCPoly":
        """Build from ``{"xxy": 1, "yxx": -1}`` style letter-string keys."""
        return cls(n, {parse_word(k): Fraction(v) for k, v in spec.items()})

    # basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (d is None or d in ds)

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly(self.n, {w: c for w, c in self.terms.items() if len(w) == d}, _trusted=True)

    def counit(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def to_json(self) -> dict:
        return {render_word(w): str(c) for w, c in self.sorted_terms()}

    # arithmetic -----------------------------------------------------------
    def _same(self, other: "NCPoly") -> None:
        if self.n != other.n:
            raise AlphabetMismatch(f"alphabet sizes differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w, 0) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return NCPoly(self.n, t, _trusted=True)

    def __neg__(self):
        return NCPoly(self.n, {w: -c for w, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if not c:
            return NCPoly.zero(self.n)
        return NCPoly(self.n, {w: c * v for w, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NCPoly({self.n}, {self})"

    def __str__(self):
        return _render_terms(self.sorted_terms(), render_word)


def add_terms(acc: dict, terms: Mapping, scale=1) -> None:
    """In-place ``acc += scale * terms`` dropping zeros."""
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    a._same(b)
    out: dict = defaultdict(Fraction)
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            out[wa + wb] += ca * cb
    return NCPoly(a.n, {w: c for w, c in out.items() if c}, _trusted=True)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    a._same(b)
    out: dict = defaultdict(Fraction)
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = ca * cb
            out[wa + wb] += c
            out[wb + wa] -= c
    return NCPoly(a.n, {w: c for w, c in out.items() if c}, _trusted=True)


def antipode(a: NCPoly) -> NCPoly:
    """Anti-automorphism with ``x_i -> -x_i``: reverse and sign by parity of length."""
    return NCPoly(
        a.n,
        {w[::-1]: (-c if len(w) % 2 else c) for w, c in a.terms.items()},
        _trusted=True,
    )


@lru_cache(maxsize=1 << 15)
def _word_coproduct(w: Word) -> dict:
    if not w:
        return {((), ()): 1}
    head = _word_coproduct(w[:-1])
    last = w[-1:]
    out: dict = defaultdict(int)
    for (p, q), k in head.items():
        out[(p + last, q)] += k
        out[(p, q + last)] += k
    return dict(out)


def word_coproduct(w: Word) -> dict:
    """Shuffle coproduct of a single word as ``{(left, right): coeff}``."""
    return _word_coproduct(tuple(w))


def coproduct(a: NCPoly) -> dict:
    """``Delta(a)`` as a map from word pairs to coefficients."""
    out: dict = defaultdict(Fraction)
    for w, c in a.terms.items():
        for pair, k in word_coproduct(w).items():
            out[pair] += c * k
    return {p: c for p, c in out.items() if c}


def is_primitive(a: NCPoly) -> bool:
    """True iff ``Delta(a) = a (x) 1 + 1 (x) a``."""
    if a.counit():
        return False
    expected: dict = defaultdict(Fraction)
    for w, c in a.terms.items():
        expected[(w, ())] += c
        expected[((), w)] += c
    got = coproduct(a)
    keys = set(got) | set(expected)
    return all(got.get(k, 0) == expected.get(k, 0) for k in keys)


def tensor_mult(t: Mapping, n: int) -> NCPoly:
    """Multiplication map on a two-fold tensor ``{(u, v): c}``."""
    out: dict = defaultdict(Fraction)
    for (u, v), c in t.items():
        out[u + v] += c
    return NCPoly(n, out)


def substitute_nc(a: NCPoly, images, target: int | None = None) -> NCPoly:
    """Algebra homomorphism ``x_i -> images[i]`` applied to ``a``.

    ``images`` is a sequence of NCPoly over a common target alphabet; entries
    may also be ``0``, in which case ``target`` may be needed.
    """
    if len(images) != a.n:
        raise ValueError(f"need {a.n} images, got {len(images)}")
    if target is None:
        for im in images:
            if isinstance(im, NCPoly):
                target = im.n
                break
    if target is None:
        raise ValueError("cannot infer the target alphabet from all-zero images")
    ims = [im.terms if isinstance(im, NCPoly) else {} for im in images]
    cache: dict = {(): {(): Fraction(1)}}

    def word_image(w):
        r = cache.get(w)
        if r is not None:
            return r
        head = word_image(w[:-1])
        last = ims[w[-1]]
        out: dict = defaultdict(Fraction)
        if head and last:
            for u, cu in head.items():
                for v, cv in last.items():
                    out[u + v] += cu * cv
        r = {k: c for k, c in out.items() if c}
        cache[w] = r
        return r

    acc: dict = {}
    for w, c in a.terms.items():
        add_terms(acc, word_image(w), c)
    return NCPoly(target, acc, _trusted=True)


def apply_derivation(a: NCPoly, images) -> NCPoly:
    """Algebra derivation ``x_i -> images[i]`` applied to ``a`` (Leibniz rule)."""
    if len(images) != a.n:
        raise ValueError(f"need {a.n} images, got {len(images)}")
    ims = [im.terms if isinstance(im, NCPoly) else {} for im in images]
    out: dict = defaultdict(Fraction)
    for w, c in a.terms.items():
        for pos, letter in enumerate(w):
            img = ims[letter]
            if not img:
                continue
            pre, post = w[:pos], w[pos + 1:]
            for v, cv in img.items():
                out[pre + v + post] += c * cv
    return NCPoly(a.n, {k: v for k, v in out.items() if v}, _trusted=True)


# trace space ----------------------------------------------------------------

def cyclic_canonical(w: Word) -> Word:
    """Lexicographically least rotation of ``w``."""
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class TracePoly:
    """Element of ``tr_n = |ass_n|`` keyed by canonical cyclic words."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, *, _trusted: bool = False):
        self.n = n
        if _trusted:
            self.terms = terms
        else:
            acc: dict = defaultdict(Fraction)
            for w, c in (terms or {}).items():
                _check_word(w, n)
                acc[cyclic_canonical(tuple(w))] += Fraction(c)
            self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def zero(cls, n: int) -> "TracePoly":
        return cls(n, {}, _trusted=True)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if self.n != other.n:
            raise AlphabetMismatch("alphabet sizes differ")
        t = dict(self.terms)
        add_terms(t, other.terms)
        return TracePoly(self.n, t, _trusted=True)

    def __neg__(self):
        return TracePoly(self.n, {w: -c for w, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TracePoly":
        c = Fraction(c)
        return TracePoly(self.n, {w: c * v for w, v in self.terms.items() if c}, _trusted=True)

    def __eq__(self, other):
        if isinstance(other, TracePoly):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __str__(self):
        return _render_terms(self.sorted_terms(), lambda w: f"|{render_word(w)}|")

    def __repr__(self):
        return f"TracePoly({self.n}, {self})"

    def to_json(self) -> dict:
        return {render_word(w): str(c) for w, c in self.sorted_terms()}


def trace_project(a: NCPoly) -> TracePoly:
    return TracePoly(a.n, a.terms)


def cyclic_words(n: int, d: int) -> list[Word]:
    """Canonical representatives of all cyclic words of length ``d``."""
    return sorted({cyclic_canonical(w) for w in product(range(n), repeat=d)})


def all_words(n: int, d: int) -> list[Word]:
    return list(product(range(n), repeat=d))


# two-fold tensors -------------------------------------------------------------

def tensor_clean(t: Mapping) -> dict:
    return {k: Fraction(v) for k, v in t.items() if v}


def render_tensor(t: Mapping, left_render, right_render) -> str:
    if not t:
        return "0"
    items = sorted(t.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))
    return _render_terms(items, lambda k: f"{left_render(k[0])}⊗{right_render(k[1])}")
