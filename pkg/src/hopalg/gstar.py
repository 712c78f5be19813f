"""The coefficient algebra G* over Z/p^2 and the free product B* = G* u T(E).

G* is generated by ``[1]`` in bidegree (1,1) and ``[p]_s`` (s >= 1) with
``d[p]_s = p [p]_{s-1}``.  Here ``[p]_s`` sits in degree 0 and dimension
``s``, so ``[1]^r [p]_s`` has degree ``r`` and dimension ``r + s``.  The
relations are ``[p]_s [p]_t = 0`` and ``[p]_s [1] = (-1)^s [1] [p]_s``; with
that sign ``d`` is compatible with commuting ``[1]`` past ``[p]_s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .algebra import (
    AlgebraElement,
    BigradedSet,
    DifferentialSpec,
    PresentationError,
    Rule,
    StructuredAlgebra,
    TruncatedAlgebra,
    Word,
    coproduct,
    free_algebra,
    truncate_algebra,
)
from .bigraded import BiDegree, Ring, split_check
from .coeffs import Prime
from .steenrod import adem_relation_set, steenrod_generators

ONE = "[1]"


def p_label(s: int) -> str:
    return f"[p]_{s}"


def _p_index(label: str) -> int | None:
    if label.startswith("[p]_"):
        return int(label[4:])
    return None


def is_gstar_letter(label: str) -> bool:
    return label == ONE or _p_index(label) is not None


@dataclass(frozen=True, order=True)
class GStarBasisElement:
    """``[1]^r [p]_s``."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 0 or self.s < 0:
            raise ValueError("exponents must be non-negative")

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.r, self.r + self.s)

    @property
    def word(self) -> Word:
        return (ONE,) * self.r + ((p_label(self.s),) if self.s else ())

    @classmethod
    def from_word(cls, w: Word) -> GStarBasisElement:
        r = 0
        while r < len(w) and w[r] == ONE:
            r += 1
        rest = w[r:]
        if not rest:
            return cls(r, 0)
        s = _p_index(rest[0]) if len(rest) == 1 else None
        if not s:
            raise ValueError(f"{w} is not a normal word of G*")
        return cls(r, s)

    def __str__(self) -> str:
        if not self.r and not self.s:
            return "1"
        out = ""
        if self.r:
            out = ONE if self.r == 1 else f"{ONE}^{self.r}"
        if self.s:
            out += p_label(self.s)
        return out


def gstar_basis(b: BiDegree) -> list[GStarBasisElement]:
    if b.degree < 0 or b.dimension < b.degree:
        return []
    return [GStarBasisElement(b.degree, b.dimension - b.degree)]


@lru_cache(maxsize=None)
def gstar_algebra(p: int, max_index: int = 16) -> StructuredAlgebra:
    """G* with generators ``[p]_1 .. [p]_max_index``.

    Only bidegrees of dimension ``<= max_index`` are faithful.
    """
    p = int(Prime(p))
    ring = Ring.G(p)
    q = ring.modulus
    gens = BigradedSet.of((ONE, (1, 1)), *[(p_label(s), (0, s)) for s in range(1, max_index + 1)])
    rules = []
    for s in range(1, max_index + 1):
        swapped = AlgebraElement.word((ONE, p_label(s)), q, -1 if s % 2 else 1)
        rules.append(Rule((p_label(s), ONE), swapped))
        for t in range(1, max_index + 1):
            rules.append(Rule((p_label(s), p_label(t)), AlgebraElement.zero(q)))
    values = {
        p_label(s): AlgebraElement.word(() if s == 1 else (p_label(s - 1),), q, p)
        for s in range(1, max_index + 1)
    }
    spec = DifferentialSpec(gens, values, q)
    return StructuredAlgebra(ring, gens, tuple(rules), spec, ONE, name="G*")


def gstar_truncation(p: int, m: int, max_degree: int = 12) -> TruncatedAlgebra:
    """``tr_{m-1}(G*)`` on degrees ``<= max_degree``."""
    if m < 1:
        raise ValueError("truncation needs m >= 1")
    return truncate_algebra(gstar_algebra(p, m + 1), m, max_degree)


# -- B* ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class BStarSkeleton:
    """Generators of ``T_G(E)`` in dimensions 0 and 1 with ``d`` on ``E_1``.

    ``differential`` maps ``E_1`` labels to combinations of ``E_0`` words with
    coefficients mod ``p^2``.  Every generator has degree > dimension.
    """

    p: int
    e0: BigradedSet
    e1: BigradedSet = field(default_factory=lambda: BigradedSet(()))
    differential: tuple[tuple[str, AlgebraElement], ...] = ()

    def __post_init__(self) -> None:
        Prime(self.p)
        for label, b in self.e0.generators:
            if b.dimension != 0:
                raise PresentationError(f"E_0 generator {label} has dimension {b.dimension}")
        for label, b in self.e1.generators:
            if b.dimension != 1:
                raise PresentationError(f"E_1 generator {label} has dimension {b.dimension}")
        for label, b in self.generators.generators:
            if b.degree <= b.dimension:
                raise PresentationError(f"{label}: degree must exceed dimension, got {b}")
            if is_gstar_letter(label):
                raise PresentationError(f"{label} clashes with a G* generator")
        e0 = set(self.e0.labels)
        q = self.p * self.p
        for label, val in self.differential:
            if label not in self.e1:
                raise PresentationError(f"differential given for non-E_1 label {label!r}")
            if val.modulus != q:
                raise PresentationError(f"d({label}) must have coefficients mod {q}")
            for w, _ in val:
                if any(x not in e0 for x in w):
                    raise PresentationError(f"d({label}) leaves T(E_0)")
        DifferentialSpec(self.generators, dict(self.differential), q)

    @property
    def generators(self) -> BigradedSet:
        return self.e0.union(self.e1)

    def d(self, label: str) -> AlgebraElement:
        return dict(self.differential).get(label) or AlgebraElement.zero(self.p * self.p)


def steenrod_skeleton(max_degree: int, p: int = 2) -> BStarSkeleton:
    """E_0 = Steenrod generators; at p = 2 also E_1 = Adem relations with d lifted mod 4.

    ``d r_{a,b} = Sq^a Sq^b + sum_c binom(b-1-c, a-2c) Sq^{a+b-c} Sq^c`` where
    each binomial is read mod 2 and lifted to 0 or 1.
    """
    e0 = steenrod_generators(p, max_degree)
    if int(p) != 2:
        return BStarSkeleton(int(p), e0)
    e1 = []
    diff = []
    for rel in adem_relation_set(max_degree):
        e1.append((rel.label, (rel.degree, 1)))
        terms = [((f"Sq{rel.a}", f"Sq{rel.b}"), 1)]
        terms += [(tuple(f"Sq{i}" for i in m), 1) for m in rel.rhs.terms]
        diff.append((rel.label, AlgebraElement(terms, 4)))
    return BStarSkeleton(2, e0, BigradedSet.of(*e1), tuple(diff))


@lru_cache(maxsize=None)
def bstar_algebra(skel: BStarSkeleton, max_index: int = 8) -> StructuredAlgebra:
    """``G* u T_G(E)`` truncated to dimensions where the skeleton is complete."""
    free = free_algebra(Ring.G(skel.p), skel.generators, dict(skel.differential), name="T(E)")
    return coproduct(gstar_algebra(skel.p, max_index), free)


@dataclass(frozen=True)
class BStarWord:
    """``a_0 g_1 a_1 ... g_k a_k`` with ``a_i`` words in E and ``g_i`` in G* minus 1."""

    alphas: tuple[Word, ...]
    gs: tuple[GStarBasisElement, ...] = ()

    def __post_init__(self) -> None:
        if len(self.alphas) != len(self.gs) + 1:
            raise ValueError("need exactly one more E-word than G*-factor")
        if any(not a for a in self.alphas[1:-1]):
            raise ValueError("inner E-words must be nonempty")
        if any(g.r == 0 and g.s == 0 for g in self.gs):
            raise ValueError("G*-factors must differ from 1")

    @classmethod
    def from_word(cls, w: Word) -> BStarWord:
        alphas: list[Word] = []
        gs: list[GStarBasisElement] = []
        cur: list[str] = []
        i = 0
        while i < len(w):
            if is_gstar_letter(w[i]):
                j = i
                while j < len(w) and is_gstar_letter(w[j]):
                    j += 1
                alphas.append(tuple(cur))
                cur = []
                gs.append(GStarBasisElement.from_word(w[i:j]))
                i = j
            else:
                cur.append(w[i])
                i += 1
        alphas.append(tuple(cur))
        return cls(tuple(alphas), tuple(gs))

    @property
    def word(self) -> Word:
        out: Word = self.alphas[0]
        for g, a in zip(self.gs, self.alphas[1:]):
            out += g.word + a
        return out

    def bidegree(self, skel: BStarSkeleton) -> BiDegree:
        b = BiDegree(0, 0)
        for a in self.alphas:
            b = b + skel.generators.word_bidegree(a)
        for g in self.gs:
            b = b + g.bidegree
        return b

    def __str__(self) -> str:
        parts = [" ".join(self.alphas[0])] if self.alphas[0] else []
        for g, a in zip(self.gs, self.alphas[1:]):
            parts.append(str(g))
            if a:
                parts.append(" ".join(a))
        return " ".join(parts) if parts else "1"


def bstar_basis(skel: BStarSkeleton, b: BiDegree) -> list[BStarWord]:
    """The free G-module basis of ``B*`` in bidegree ``b``."""
    if b.degree < 0 or b.dimension < 0:
        return []
    alg = bstar_algebra(skel, max(b.dimension, 1))
    return [BStarWord.from_word(w) for w in alg.basis(b)]


def epsilon(x: AlgebraElement) -> AlgebraElement:
    """Augmentation ``B* -> G*``: words containing a letter of E go to 0."""
    return AlgebraElement(
        [(w, c) for w, c in x.terms.items() if all(is_gstar_letter(a) for a in w)], x.modulus
    )


def iota(x: AlgebraElement) -> AlgebraElement:
    """Inclusion ``G* -> B*``; G* normal words stay normal in the free product."""
    if any(not is_gstar_letter(a) for w in x.terms for a in w):
        raise ValueError("iota is defined on G* only")
    return x


__all__ = [
    "BStarSkeleton",
    "BStarWord",
    "GStarBasisElement",
    "ONE",
    "bstar_algebra",
    "bstar_basis",
    "epsilon",
    "gstar_algebra",
    "gstar_basis",
    "gstar_truncation",
    "iota",
    "is_gstar_letter",
    "p_label",
    "split_check",
    "steenrod_skeleton",
]
