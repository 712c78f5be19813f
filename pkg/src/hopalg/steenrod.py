"""The mod 2 Steenrod algebra in the admissible basis.

Products are computed by Adem rewriting.  ``milnor_dimension`` counts the
Milnor basis instead and serves as an independent check on the admissible
enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import AlgebraElement, BigradedSet, Rule, StructuredAlgebra
from .bigraded import BiDegree, Ring
from .coeffs import Prime
from .kernels import rref

Monomial = tuple[int, ...]


class UnsupportedPrime(ValueError):
    pass


def binom2(n: int, k: int) -> int:
    """``binom(n, k) mod 2`` by Lucas: odd iff the bits of k sit inside those of n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if k & ~n == 0 else 0


def is_admissible(seq: Sequence[int]) -> bool:
    return all(seq[i] >= 2 * seq[i + 1] for i in range(len(seq) - 1))


def adem(a: int, b: int) -> frozenset[Monomial]:
    """Right side of the Adem relation for ``Sq^a Sq^b`` with ``0 < a < 2b``."""
    if not (0 < a < 2 * b):
        raise ValueError(f"Adem relation needs 0 < a < 2b, got ({a}, {b})")
    out: set[Monomial] = set()
    for c in range(a // 2 + 1):
        if binom2(b - 1 - c, a - 2 * c):
            out ^= {(a + b - c, c) if c else (a + b,)}
    return frozenset(out)


def _check_word(word: Iterable[int]) -> Monomial:
    w = tuple(word)
    for i in w:
        if not isinstance(i, int) or i < 1:
            raise ValueError(f"Steenrod exponents must be positive integers, got {w}")
    return w


@lru_cache(maxsize=None)
def _normalize(word: Monomial, rightmost: bool) -> frozenset[Monomial]:
    pairs = range(len(word) - 1)
    if rightmost:
        pairs = reversed(pairs)
    for i in pairs:
        if word[i] < 2 * word[i + 1]:
            break
    else:
        return frozenset({word})
    out: set[Monomial] = set()
    for t in adem(word[i], word[i + 1]):
        out ^= _normalize(word[:i] + t + word[i + 2 :], rightmost)
    return frozenset(out)


def adem_normalize(word: Iterable[int], p: int = 2, strategy: str = "leftmost") -> SteenrodElement:
    """Admissible form of ``Sq^{i1} ... Sq^{ik}``."""
    if int(p) != 2:
        raise UnsupportedPrime(f"unsupported prime {int(p)}: only p = 2 has Adem rewriting")
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    w = _check_word(word)
    return SteenrodElement(_normalize(w, strategy == "rightmost"), sum(w))


@lru_cache(maxsize=None)
def multiply_monomials(x: Monomial, y: Monomial) -> frozenset[Monomial]:
    return _normalize(x + y, False)


@lru_cache(maxsize=None)
def _admissible(n: int, cap: int) -> tuple[Monomial, ...]:
    # admissible sequences of total n whose first entry is at most cap
    if n == 0:
        return ((),)
    out = []
    for i in range(min(n, cap), 0, -1):
        out.extend((i,) + rest for rest in _admissible(n - i, i // 2))
    return tuple(out)


def admissible_basis(n: int) -> list[Monomial]:
    """Admissible sequences of degree ``n``, in descending lex order."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return sorted(_admissible(n, n), reverse=True)


def milnor_dimension(n: int) -> int:
    """Number of ``(r1, r2, ...)`` with ``sum r_i (2^i - 1) = n``."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    ways = [1] + [0] * n
    w = 1
    while w <= n:
        for k in range(w, n + 1):
            ways[k] += ways[k - w]
        w = 2 * w + 1
    return ways[n]


def format_monomial(m: Monomial) -> str:
    return " ".join(f"Sq{i}" for i in m) if m else "1"


_TOKEN = re.compile(r"Sq\^?\{?(\d+)\}?$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"Sq2 Sq2"`` (also ``Sq^2``); ``"1"`` and ``""`` give the unit."""
    parts = text.replace("*", " ").split()
    if parts in ([], ["1"]):
        return ()
    out = []
    for tok in parts:
        m = _TOKEN.match(tok)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"cannot parse {tok!r} as Sq<i> with i >= 1")
        out.append(int(m.group(1)))
    return tuple(out)


@dataclass(frozen=True)
class SteenrodElement:
    """A homogeneous sum of admissible monomials over F_2."""

    terms: frozenset[Monomial]
    degree: int

    def __post_init__(self) -> None:
        for t in self.terms:
            if sum(t) != self.degree or not is_admissible(t):
                raise ValueError(f"{t} is not an admissible monomial of degree {self.degree}")

    @classmethod
    def zero(cls, degree: int = 0) -> SteenrodElement:
        return cls(frozenset(), degree)

    @classmethod
    def one(cls) -> SteenrodElement:
        return cls(frozenset({()}), 0)

    @classmethod
    def sq(cls, *exponents: int) -> SteenrodElement:
        return adem_normalize(exponents)

    @classmethod
    def parse(cls, text: str) -> SteenrodElement:
        """Sum of monomials separated by ``+``; ``"0"`` is zero."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        acc: SteenrodElement | None = None
        for part in text.split("+"):
            x = adem_normalize(parse_monomial(part))
            acc = x if acc is None else acc + x
        assert acc is not None
        return acc

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: SteenrodElement) -> SteenrodElement:
        if not self:
            return other
        if not other:
            return self
        if self.degree != other.degree:
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        return SteenrodElement(self.terms ^ other.terms, self.degree)

    def __mul__(self, other: SteenrodElement) -> SteenrodElement:
        return steenrod_multiply(self, other)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(m) for m in self.monomials())


def steenrod_multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    out: set[Monomial] = set()
    for a in x.terms:
        for b in y.terms:
            out ^= multiply_monomials(a, b)
    return SteenrodElement(frozenset(out), x.degree + y.degree)


@dataclass(frozen=True)
class AdemRelationGen:
    a: int
    b: int
    rhs: SteenrodElement

    @property
    def degree(self) -> int:
        return self.a + self.b

    @property
    def label(self) -> str:
        return f"r{self.a},{self.b}"

    def __str__(self) -> str:
        return f"Sq{self.a} Sq{self.b} = {self.rhs}"


def adem_relation_set(max_degree: int) -> list[AdemRelationGen]:
    """All Adem pairs ``0 < a < 2b`` with ``a + b <= max_degree``, by degree then ``b``."""
    out = []
    for n in range(2, max_degree + 1):
        for b in range(1, n):
            a = n - b
            if a < 2 * b:
                out.append(AdemRelationGen(a, b, SteenrodElement(adem(a, b), n)))
    return out


def steenrod_generators(p: int, max_degree: int) -> BigradedSet:
    """The canonical generating set of the Steenrod algebra up to ``max_degree``.

    At p = 2 these are ``Sq^i``.  At odd p: ``b`` (the Bockstein), ``P^i`` and
    ``bP^i``, in degrees 1, ``2i(p-1)`` and ``2i(p-1)+1``.
    """
    p = int(Prime(p))
    gens: list[tuple[str, tuple[int, int]]] = []
    if p == 2:
        gens = [(f"Sq{i}", (i, 0)) for i in range(1, max_degree + 1)]
    else:
        if max_degree >= 1:
            gens.append(("b", (1, 0)))
        i = 1
        while 2 * i * (p - 1) <= max_degree:
            n = 2 * i * (p - 1)
            gens.append((f"P{i}", (n, 0)))
            if n + 1 <= max_degree:
                gens.append((f"bP{i}", (n + 1, 0)))
            i += 1
    return BigradedSet.of(*gens)


def steenrod_algebra(max_degree: int) -> StructuredAlgebra:
    """``T(Sq^1, Sq^2, ...)`` modulo Adem rules, as a rewriting system over F_2.

    Generators are ranked by decreasing exponent so every Adem rule lowers the
    word order.
    """
    gens = BigradedSet.of(*[(f"Sq{i}", (i, 0)) for i in range(max_degree, 0, -1)])
    rules = []
    for rel in adem_relation_set(max_degree):
        rhs = AlgebraElement([(tuple(f"Sq{i}" for i in m), 1) for m in rel.rhs.terms], 2)
        rules.append(Rule((f"Sq{rel.a}", f"Sq{rel.b}"), rhs))
    return StructuredAlgebra(Ring.F(2), gens, tuple(rules), name="A")


def indecomposable_degrees(max_degree: int) -> list[int]:
    """Degrees where products of positive-degree elements fail to span."""
    out = []
    for n in range(1, max_degree + 1):
        rows = []
        for k in range(1, n):
            for a in admissible_basis(k):
                for b in admissible_basis(n - k):
                    rows.append(multiply_monomials(a, b))
        basis = admissible_basis(n)
        index = {m: i for i, m in enumerate(basis)}
        packed = []
        for r in rows:
            v = 0
            for m in r:
                v |= 1 << index[m]
            packed.append(v)
        reduced, _ = rref(packed, len(basis))
        if len(reduced) < len(basis):
            out.append(n)
    return out


__all__ = [
    "AdemRelationGen",
    "Monomial",
    "SteenrodElement",
    "UnsupportedPrime",
    "adem",
    "adem_normalize",
    "adem_relation_set",
    "admissible_basis",
    "binom2",
    "format_monomial",
    "indecomposable_degrees",
    "is_admissible",
    "milnor_dimension",
    "multiply_monomials",
    "parse_monomial",
    "steenrod_algebra",
    "steenrod_generators",
    "steenrod_multiply",
]
