"""Emergent Drinfeld-Kohno algebras ``edk_{m,n} = dk_{m,n} / [c, c]``.

Normal form: one Lie element ``u_i`` in ``lie_m`` per strand plus one
associative element ``w_{ij}`` in ``ass_m`` per strand pair ``i < j``.  The
part ``w_{ij}`` stands for ``ad_{w(a_{1j},...,a_{mj})}(c_{ij})``; it has degree
``len(word) + 1`` and the constant word is the class of ``c_{ij}`` itself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .freealg import NCPoly, antipode, commutator, nc_mul, render_word, substitute_nc
from .freelie import LiePoly, fox_left, lie_bracket, substitute
from .gtops import r_map


class ShapeMismatch(ValueError):
    pass


def _nc_zero(m):
    return NCPoly.zero(m)


class EdkElement:
    """Element of ``edk_{m,n}`` in the direct-sum normal form."""

    __slots__ = ("m", "n", "lie", "ass")

    def __init__(self, m: int, n: int, lie: Mapping | None = None, ass: Mapping | None = None):
        self.m, self.n = m, n
        clean_lie = {}
        for i, u in (lie or {}).items():
            if not 1 <= i <= n:
                raise ValueError(f"strand {i} out of range")
            if isinstance(u, NCPoly):
                u = LiePoly(m, u)
            if u.n != m:
                raise ValueError("Lie part over the wrong alphabet")
            if u:
                clean_lie[i] = u
        clean_ass = {}
        for (i, j), w in (ass or {}).items():
            if not 1 <= i < j <= n:
                raise ValueError(f"pair ({i},{j}) out of range")
            if w.n != m:
                raise ValueError("associative part over the wrong alphabet")
            if w:
                clean_ass[(i, j)] = w
        self.lie = clean_lie
        self.ass = clean_ass

    @classmethod
    def zero(cls, m: int, n: int) -> "EdkElement":
        return cls(m, n)

    @classmethod
    def lie_part(cls, m: int, n: int, i: int, u: LiePoly) -> "EdkElement":
        return cls(m, n, lie={i: u})

    @classmethod
    def ass_part(cls, m: int, n: int, i: int, j: int, w: NCPoly) -> "EdkElement":
        return cls(m, n, ass={(i, j): w})

    @property
    def shape(self):
        return (self.m, self.n)

    def _same(self, other):
        if not isinstance(other, EdkElement) or self.shape != other.shape:
            raise ShapeMismatch("edk shapes differ")

    def __add__(self, other):
        self._same(other)
        lie = dict(self.lie)
        for i, u in other.lie.items():
            lie[i] = lie[i] + u if i in lie else u
        ass = dict(self.ass)
        for k, w in other.ass.items():
            ass[k] = ass[k] + w if k in ass else w
        return EdkElement(self.m, self.n, lie, ass)

    def __neg__(self):
        return EdkElement(self.m, self.n, {i: -u for i, u in self.lie.items()},
                          {k: -w for k, w in self.ass.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EdkElement":
        c = Fraction(c)
        return EdkElement(self.m, self.n, {i: u.scale(c) for i, u in self.lie.items()},
                          {k: w.scale(c) for k, w in self.ass.items()})

    def bracket(self, other: "EdkElement") -> "EdkElement":
        return edk_bracket(self, other)

    def is_zero(self) -> bool:
        return not self.lie and not self.ass

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, EdkElement):
            return self.shape == other.shape and self.lie == other.lie and self.ass == other.ass
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, frozenset(self.lie.items()), frozenset(self.ass.items())))

    def degrees(self) -> set[int]:
        ds = set()
        for u in self.lie.values():
            ds |= u.degrees()
        for w in self.ass.values():
            ds |= {d + 1 for d in w.degrees()}
        return ds

    def coordinates(self) -> dict:
        out = {}
        for i, u in self.lie.items():
            for w, c in u.poly.terms.items():
                out[("lie", i, w)] = c
        for (i, j), p in self.ass.items():
            for w, c in p.terms.items():
                out[("ass", i, j, w)] = c
        return out

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "lie": {str(i): u.to_json() for i, u in sorted(self.lie.items())},
            "ass": {f"{i},{j}": w.to_json() for (i, j), w in sorted(self.ass.items())},
        }

    def __str__(self):
        parts = [f"({u})_{i}" for i, u in sorted(self.lie.items())]
        parts += [f"({w})_{i}{j}" for (i, j), w in sorted(self.ass.items())]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"EdkElement({self.m},{self.n}: {self})"


def fox_pairing(u: NCPoly, v: NCPoly) -> NCPoly:
    """``sum_i (d_i v) x_i iota(d_i u)``, the value of ``[u_j, v_k]`` for ``j < k``."""
    out = NCPoly.zero(u.n)
    for i in range(u.n):
        du, dv = fox_left(u, i), fox_left(v, i)
        if du and dv:
            out = out + nc_mul(nc_mul(dv, NCPoly.gen(u.n, i)), antipode(du))
    return out


def edk_bracket(A: EdkElement, B: EdkElement) -> EdkElement:
    A._same(B)
    m, n = A.m, A.n
    lie: dict = {}
    ass: dict = {}

    def add_ass(key, w):
        if w:
            ass[key] = ass[key] + w if key in ass else w

    for i, u in A.lie.items():
        for j, v in B.lie.items():
            if i == j:
                b = LiePoly(m, commutator(u.poly, v.poly))
                lie[i] = lie[i] + b if i in lie else b
            elif i < j:
                add_ass((i, j), fox_pairing(u.poly, v.poly))
            else:
                add_ass((j, i), -fox_pairing(v.poly, u.poly))
    # Lie-on-associative clauses, both orders
    for sign, L, W in ((1, A.lie, B.ass), (-1, B.lie, A.ass)):
        for i, u in L.items():
            for (j, k), w in W.items():
                if i == k:
                    add_ass((j, k), nc_mul(u.poly, w).scale(sign))
                elif i == j:
                    add_ass((j, k), nc_mul(w, u.poly).scale(-sign))
    return EdkElement(m, n, lie, ass)


# operadic maps --------------------------------------------------------------------

def _pole_images(m: int, k: int) -> list:
    t = m + 1
    g = lambda i: NCPoly.gen(t, i)  # noqa: E731
    if k == 0:
        return [g(i + 1) for i in range(m)]
    ims = []
    for i in range(m):  # 0-based letter i is x_{i+1}
        if i + 1 < k:
            ims.append(g(i))
        elif i + 1 == k:
            ims.append(g(i) + g(i + 1))
        else:
            ims.append(g(i + 1))
    return ims


def delta_pole(k: int, A: EdkElement) -> EdkElement:
    """``delta_0`` (new leftmost pole) or pole cabling ``delta_k``: edk_{m,n} -> edk_{m+1,n}."""
    if not 0 <= k <= A.m:
        raise ValueError(f"pole index {k} out of range 0..{A.m}")
    ims = _pole_images(A.m, k)
    t = A.m + 1
    lie = {i: LiePoly(t, substitute_nc(u.poly, ims, target=t)) for i, u in A.lie.items()}
    ass = {key: substitute_nc(w, ims, target=t) for key, w in A.ass.items()}
    return EdkElement(t, A.n, lie, ass)


def _strand_pair_images(k: int, i: int, j: int) -> list:
    """Target pairs of ``w_{ij}`` under strand cabling ``delta_{m+k}``."""
    if j < k:
        return [(i, j)]
    if j == k:
        return [(i, k), (i, k + 1)]
    if i < k < j:
        return [(i, j + 1)]
    if i == k:
        return [(k, j + 1), (k + 1, j + 1)]
    return [(i + 1, j + 1)]


def delta_strand(k: int, A: EdkElement) -> EdkElement:
    """Strand cabling ``delta_{m+k}``: edk_{m,n} -> edk_{m,n+1}, ``1 <= k <= n``."""
    if not 1 <= k <= A.n:
        raise ValueError(f"strand index {k} out of range 1..{A.n}")
    m = A.m
    out = EdkElement.zero(m, A.n + 1)
    for i, u in A.lie.items():
        if i < k:
            out = out + EdkElement(m, A.n + 1, lie={i: u})
        elif i == k:
            out = out + EdkElement(m, A.n + 1, lie={k: u, k + 1: u},
                                   ass={(k, k + 1): r_map(u)})
        else:
            out = out + EdkElement(m, A.n + 1, lie={i + 1: u})
    for (i, j), w in A.ass.items():
        for key in _strand_pair_images(k, i, j):
            out = out + EdkElement(m, A.n + 1, ass={key: w})
    return out


def extend_strand(A: EdkElement) -> EdkElement:
    """``delta_{m+n+1}``: add a strand on the right."""
    return EdkElement(A.m, A.n + 1, A.lie, A.ass)


def theta_last(A: EdkElement) -> EdkElement:
    """``vartheta_m``: the last pole becomes strand 1, edk_{m,n} -> edk_{m-1,n+1}."""
    if A.m < 1:
        raise ValueError("edk_{0,n} has no pole to convert")
    m = A.m
    t = m - 1
    ims = [NCPoly.gen(t, i) for i in range(t)] + [0]
    out = EdkElement.zero(t, A.n + 1)
    for i, u in A.lie.items():
        u0 = LiePoly(t, substitute_nc(u.poly, ims, target=t))
        du0 = substitute_nc(fox_left(u.poly, m - 1), ims, target=t)
        out = out + EdkElement(t, A.n + 1, lie={i + 1: u0}, ass={(1, i + 1): du0})
    for (i, j), w in A.ass.items():
        out = out + EdkElement(t, A.n + 1, ass={(i + 1, j + 1): substitute_nc(w, ims, target=t)})
    return out


def coface(k: int, A: EdkElement) -> EdkElement:
    """``d_k``: ``theta_{m+1} . delta_k`` on poles, strand cabling, or right extension."""
    m, n = A.m, A.n
    if not 0 <= k <= m + n + 1:
        raise ValueError(f"coface index {k} out of range 0..{m + n + 1}")
    if k <= m:
        return theta_last(delta_pole(k, A))
    if k <= m + n:
        return delta_strand(k - m, A)
    return extend_strand(A)


def differential(A: EdkElement) -> EdkElement:
    out = EdkElement.zero(A.m, A.n + 1)
    for k in range(A.m + A.n + 2):
        d = coface(k, A)
        out = out + d if k % 2 == 0 else out - d
    return out


def edk_gens(m: int, n: int) -> list[EdkElement]:
    """Degree-one generators ``a_{ij} = (x_i)_j`` and ``c_{ij} = (1)_{ij}``."""
    gens = [EdkElement(m, n, lie={j: LiePoly.gen(m, i)}) for j in range(1, n + 1) for i in range(m)]
    gens += [EdkElement(m, n, ass={(i, j): NCPoly.one(m)})
             for j in range(1, n + 1) for i in range(1, j)]
    return gens


def phi_1(phi: LiePoly) -> EdkElement:
    """``phi(a_11, a_21)`` in ``edk_{2,1}``."""
    if phi.n != 2:
        raise ValueError("expected a two-letter Lie element")
    return EdkElement(2, 1, lie={1: phi})


# emergent pentagon residues --------------------------------------------------------

def _sub2(a: NCPoly, first, second) -> NCPoly:
    return substitute_nc(a, [first, second], target=2)


def emergent_defects(phi: LiePoly) -> tuple[LiePoly, NCPoly, LiePoly]:
    """Residues of the three defining equations of the emergent GRT space.

    1. ``phi(y,0) - phi(x+y,0)``
    2. ``(d_y phi)(x,y) + (d_y phi)(y,0) - (d_y phi)(x+y,0) - R(phi)``
    3. ``[x, phi(y,x)] + [y, phi(x,y)]``
    """
    if phi.n != 2:
        raise ValueError("expected a two-letter Lie element")
    X, Y = NCPoly.gen(2, 0), NCPoly.gen(2, 1)
    x, y = LiePoly.gens(2)
    p = phi.poly
    first = LiePoly(2, _sub2(p, Y, 0) - _sub2(p, X + Y, 0))
    dy = fox_left(p, 1)
    second = dy + _sub2(dy, Y, 0) - _sub2(dy, X + Y, 0) - r_map(phi)
    third = lie_bracket(x, substitute(phi, [y, x])) + lie_bracket(y, phi)
    return first, second, third


def render_pair(key) -> str:
    i, j = key
    return f"{i}{j}"


__all__ = [
    "EdkElement", "edk_bracket", "delta_pole", "delta_strand", "extend_strand",
    "theta_last", "coface", "differential", "emergent_defects", "edk_gens", "phi_1",
    "fox_pairing", "ShapeMismatch", "render_word",
]
