"""Bigraded algebras given by generators, rewrite rules and a differential.

Elements are finite linear combinations of words in the generators.  Rules
are applied leftmost-innermost until no left-hand side occurs; the shipped
rule sets decrease the degree-lexicographic order given by the generator
ranking, which is checked rather than assumed.  The differential is extended
to words by the graded Leibniz rule and always evaluated on normal words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .bigraded import (
    BiDegree,
    BigradedChainComplex,
    HomologyGroup,
    Ring,
    Window,
    chain_map_is_quasi_iso,
    cotruncate,
    truncate,
)
from .coeffs import span_length

Word = tuple[str, ...]


class RewriteBoundExceeded(RuntimeError):
    """Normalization did not finish within the step bound (or looped)."""


class PresentationError(ValueError):
    """Inconsistent generators, rules or differential."""


# -- generator sets ---------------------------------------------------------------


@dataclass(frozen=True)
class BigradedSet:
    """Finite bigraded set of generator labels.

    ``strict`` imposes the extra condition ``degree > dimension`` that the
    generator set of the algebra of higher operations satisfies.
    """

    generators: tuple[tuple[str, BiDegree], ...]
    strict: bool = False

    def __post_init__(self) -> None:
        seen = set()
        for label, b in self.generators:
            if label in seen:
                raise PresentationError(f"duplicate generator {label!r}")
            seen.add(label)
            if b.degree < 0 or b.dimension < 0:
                raise PresentationError(f"{label} has negative bidegree {b}")
            if b == BiDegree(0, 0):
                raise PresentationError(f"{label} sits in bidegree (0,0)")
            if self.strict and b.degree <= b.dimension:
                raise PresentationError(f"{label}: degree must exceed dimension, got {b}")

    @classmethod
    def of(cls, *gens: tuple[str, tuple[int, int]], strict: bool = False) -> BigradedSet:
        return cls(tuple((lab, BiDegree(*bd)) for lab, bd in gens), strict)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, (lab, _) in enumerate(self.generators)}

    @cached_property
    def _bidegree(self) -> dict[str, BiDegree]:
        return dict(self.generators)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.generators)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, label: str) -> int:
        return self._index[label]

    def bidegree(self, label: str) -> BiDegree:
        return self._bidegree[label]

    def word_bidegree(self, word: Word) -> BiDegree:
        n = m = 0
        for letter in word:
            b = self._bidegree[letter]
            n += b.degree
            m += b.dimension
        return BiDegree(n, m)

    def union(self, other: BigradedSet) -> BigradedSet:
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise PresentationError(f"generator labels collide: {sorted(clash)}")
        return BigradedSet(self.generators + other.generators)


def mon_enumerate(gens: BigradedSet, b: BiDegree) -> list[Word]:
    """All words of bidegree ``b`` in the free monoid, length first then lex.

    Lex order follows the order of ``gens``.
    """
    memo: dict[BiDegree, list[Word]] = {}

    def words(target: BiDegree) -> list[Word]:
        if target in memo:
            return memo[target]
        out: list[Word] = [()] if target == BiDegree(0, 0) else []
        for label, gb in gens.generators:
            rest = target - gb
            if rest.degree >= 0 and rest.dimension >= 0:
                out.extend((label,) + w for w in words(rest))
        memo[target] = out
        return out

    idx = gens.index
    return sorted(words(b), key=lambda w: (len(w), [idx(x) for x in w]))


# -- elements ------------------------------------------------------------------------


class AlgebraElement:
    """Linear combination of words with coefficients mod ``modulus``."""

    __slots__ = ("terms", "modulus")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]], modulus: int):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            acc[w] = (acc.get(w, 0) + c) % modulus
        self.terms = {w: c for w, c in acc.items() if c}
        self.modulus = modulus

    @classmethod
    def zero(cls, modulus: int) -> AlgebraElement:
        return cls({}, modulus)

    @classmethod
    def unit(cls, modulus: int) -> AlgebraElement:
        return cls({(): 1}, modulus)

    @classmethod
    def word(cls, w: Sequence[str], modulus: int, coeff: int = 1) -> AlgebraElement:
        return cls({tuple(w): coeff}, modulus)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, int]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.modulus, frozenset(self.terms.items())))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(list(self.terms.items()) + list(other.terms.items()), self.modulus)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement({w: -c for w, c in self.terms.items()}, self.modulus)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __rmul__(self, k: int) -> AlgebraElement:
        return AlgebraElement({w: k * c for w, c in self.terms.items()}, self.modulus)

    def concat(self, other: AlgebraElement) -> AlgebraElement:
        """Product in the free algebra (no rewriting)."""
        return AlgebraElement(
            [(a + b, x * y) for a, x in self.terms.items() for b, y in other.terms.items()],
            self.modulus,
        )

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)})"


def format_word(w: Word) -> str:
    return " ".join(w) if w else "1"


def format_element(x: AlgebraElement) -> str:
    if not x:
        return "0"
    parts = []
    for w, c in x:
        parts.append(format_word(w) if c == 1 else f"{c}*{format_word(w)}")
    return " + ".join(parts)


# -- differentials ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DifferentialSpec:
    """Values of ``d`` on generators; generators not listed are cycles."""

    generators: BigradedSet
    values: Mapping[str, AlgebraElement]
    modulus: int

    def __post_init__(self) -> None:
        for label, val in self.values.items():
            if label not in self.generators:
                raise PresentationError(f"differential given for unknown generator {label!r}")
            want = self.generators.bidegree(label) - BiDegree(0, 1)
            for w, _ in val:
                if any(x not in self.generators for x in w):
                    raise PresentationError(f"d({label}) uses unknown letters: {format_word(w)}")
                if self.generators.word_bidegree(w) != want:
                    raise PresentationError(
                        f"d({label}) has a term {format_word(w)} outside bidegree {want}"
                    )
        for label, val in self.values.items():
            dd = leibniz_extend(self, val)
            if dd:
                raise PresentationError(f"d(d({label})) = {format_element(dd)} is not zero")

    def of(self, label: str) -> AlgebraElement:
        return self.values.get(label) or AlgebraElement.zero(self.modulus)


def leibniz_extend(spec: DifferentialSpec, x: AlgebraElement) -> AlgebraElement:
    """``d`` on arbitrary words in the free algebra.

    ``d(e1...et) = sum_i (-1)^{dim(e1...e_{i-1})} e1..e_{i-1} d(e_i) e_{i+1}..e_t``.
    """
    q = spec.modulus
    gens = spec.generators
    out: list[tuple[Word, int]] = []
    for w, c in x.terms.items():
        parity = 0
        for i, letter in enumerate(w):
            val = spec.values.get(letter)
            if val:
                sign = -1 if parity else 1
                pre, post = w[:i], w[i + 1 :]
                for v, k in val.terms.items():
                    out.append((pre + v + post, sign * c * k))
            parity ^= gens.bidegree(letter).dimension & 1
    return AlgebraElement(out, q)


# -- structured algebras --------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: AlgebraElement


@dataclass(frozen=True, eq=False)
class StructuredAlgebra:
    """``T_R(E)`` modulo rewrite rules, with an optional differential and ``[1]``."""

    ring: Ring
    generators: BigradedSet
    rules: tuple[Rule, ...] = ()
    differential: DifferentialSpec | None = None
    one: str | None = None
    name: str = ""
    step_bound: int = 1_000_000
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.one is not None:
            if self.one not in self.generators:
                raise PresentationError(f"distinguished element {self.one!r} is not a generator")
            if self.generators.bidegree(self.one) != BiDegree(1, 1):
                raise PresentationError(f"{self.one} must have bidegree (1,1)")
        for rule in self.rules:
            want = self.generators.word_bidegree(rule.lhs)
            for w, _ in rule.rhs:
                if self.generators.word_bidegree(w) != want:
                    raise PresentationError(f"rule {format_word(rule.lhs)} is not homogeneous")
        bad = [r for r in self.rules if not self._decreasing(r)]
        if bad:
            raise PresentationError(
                f"rule {format_word(bad[0].lhs)} does not decrease the word order"
            )

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    @cached_property
    def _rule_map(self) -> dict[Word, AlgebraElement]:
        out: dict[Word, AlgebraElement] = {}
        for r in self.rules:
            out.setdefault(r.lhs, r.rhs)
        return out

    @cached_property
    def _lhs_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(r.lhs) for r in self.rules}))

    def _key(self, w: Word) -> tuple:
        idx = self.generators.index
        return (len(w), [idx(x) for x in w])

    def _decreasing(self, rule: Rule) -> bool:
        k = self._key(rule.lhs)
        return all(self._key(w) < k for w, _ in rule.rhs)

    # elements --------------------------------------------------------------

    def gen(self, label: str) -> AlgebraElement:
        if label not in self.generators:
            raise KeyError(label)
        return AlgebraElement.word((label,), self.modulus)

    def unit(self) -> AlgebraElement:
        return AlgebraElement.unit(self.modulus)

    def element(self, terms: Mapping[Word, int]) -> AlgebraElement:
        return self.normalize(AlgebraElement(terms, self.modulus))

    def bidegree(self, x: AlgebraElement | Word) -> BiDegree | None:
        if isinstance(x, tuple):
            return self.generators.word_bidegree(x)
        degs = {self.generators.word_bidegree(w) for w, _ in x}
        if len(degs) > 1:
            raise PresentationError(f"element {format_element(x)} is not homogeneous")
        return degs.pop() if degs else None

    def dim(self, x: AlgebraElement | Word) -> int:
        b = self.bidegree(x)
        return 0 if b is None else b.dimension

    # rewriting -------------------------------------------------------------

    def _redex(self, w: Word) -> tuple[int, Word] | None:
        rules = self._rule_map
        for i in range(len(w)):
            for length in self._lhs_lengths:
                pat = w[i : i + length]
                if len(pat) == length and pat in rules:
                    return i, pat
        return None

    def normal_word(self, w: Word) -> dict[Word, int]:
        """Normal form of a single word as ``{word: coeff}``."""
        cache = self._cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        q = self.modulus
        busy = cache.setdefault("__busy__", set())
        steps = cache.setdefault("__steps__", [0])
        if w in busy:
            raise RewriteBoundExceeded(f"rewriting loops on {format_word(w)}")
        if not busy:
            steps[0] = 0
        redex = self._redex(w)
        if redex is None:
            out = {w: 1}
        else:
            steps[0] += 1
            if steps[0] > self.step_bound:
                raise RewriteBoundExceeded(f"rewrite bound {self.step_bound} exceeded")
            busy.add(w)
            try:
                i, pat = redex
                pre, post = w[:i], w[i + len(pat) :]
                acc: dict[Word, int] = {}
                for v, c in self._rule_map[pat].terms.items():
                    for u, k in self.normal_word(pre + v + post).items():
                        acc[u] = (acc.get(u, 0) + c * k) % q
                out = {u: c for u, c in acc.items() if c}
            finally:
                busy.discard(w)
        cache[w] = out
        return out

    def normalize(self, x: AlgebraElement) -> AlgebraElement:
        if not self.rules:
            return x
        return AlgebraElement(
            [(u, c * k) for w, c in x.terms.items() for u, k in self.normal_word(w).items()],
            self.modulus,
        )

    def is_normal(self, w: Word) -> bool:
        return self._redex(w) is None

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        return self.normalize(x.concat(y))

    def d(self, x: AlgebraElement) -> AlgebraElement:
        """Differential of ``x`` (Leibniz on normal words, then normalized)."""
        if self.differential is None:
            return AlgebraElement.zero(self.modulus)
        return self.normalize(leibniz_extend(self.differential, self.normalize(x)))

    # bases and complexes -----------------------------------------------------

    def basis(self, b: BiDegree) -> list[Word]:
        """Normal words of bidegree ``b``."""
        key = ("__basis__", b)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._normal_words(b)
            self._cache[key] = hit
        return hit

    def _normal_words(self, b: BiDegree) -> list[Word]:
        # normal words are closed under subwords, so prune on the trailing redex
        rules = self._rule_map
        lengths = self._lhs_lengths
        gens = self.generators.generators
        out: list[Word] = []

        def grow(w: Word, n: int, m: int) -> None:
            if n == 0 and m == 0:
                out.append(w)
            for label, gb in gens:
                if gb.degree > n or gb.dimension > m:
                    continue
                v = w + (label,)
                if any(len(v) >= k and v[-k:] in rules for k in lengths):
                    continue
                grow(v, n - gb.degree, m - gb.dimension)

        if b.degree >= 0 and b.dimension >= 0:
            grow((), b.degree, b.dimension)
        return sorted(out, key=self._key)

    def chain_complex(self, window: Window) -> BigradedChainComplex:
        """The underlying complex restricted to ``window`` (which is marked known)."""
        q = self.modulus
        basis: dict[BiDegree, list[str]] = {}
        diff: dict[BiDegree, list[list[int]]] = {}
        for b in window.bidegrees():
            words = self.basis(b)
            if words:
                basis[b] = [format_word(w) for w in words]
        for b in basis:
            below = BiDegree(b.degree, b.dimension - 1)
            if below not in basis:
                continue
            index = {w: i for i, w in enumerate(self.basis(below))}
            src = self.basis(b)
            mat = [[0] * len(src) for _ in index]
            for j, w in enumerate(src):
                for u, c in self.d(AlgebraElement.word(w, q)).terms.items():
                    mat[index[u]][j] = c
            diff[b] = mat
        return BigradedChainComplex.free(self.ring, basis, diff, known=window)

    def left_multiplication(self, x: AlgebraElement, window: Window) -> dict[BiDegree, tuple]:
        """Matrices of ``y -> x*y`` between basis words, keyed by the source bidegree."""
        shift = self.bidegree(x) or BiDegree(0, 0)
        q = self.modulus
        out = {}
        for b in window.bidegrees():
            src = self.basis(b)
            tb = b + shift
            if not src or tb not in window:
                continue
            index = {w: i for i, w in enumerate(self.basis(tb))}
            mat = [[0] * len(src) for _ in index]
            for j, w in enumerate(src):
                for u, c in self.multiply(x, AlgebraElement.word(w, q)).terms.items():
                    mat[index[u]][j] = c
            out[b] = tuple(tuple(r) for r in mat)
        return out

    def relation_defects(self, bound: BiDegree) -> list[tuple[Word, AlgebraElement]]:
        """Rules (up to ``bound``) whose sides have different differentials.

        A nonempty answer means ``d`` is not a derivation of the quotient; it is
        still a well-defined map on normal words.
        """
        out = []
        q = self.modulus
        for r in self.rules:
            b = self.generators.word_bidegree(r.lhs)
            if b.degree > bound.degree or b.dimension > bound.dimension:
                continue
            dl = self.normalize(leibniz_extend(self.differential, AlgebraElement.word(r.lhs, q)))
            dr = self.normalize(leibniz_extend(self.differential, r.rhs))
            if dl != dr:
                out.append((r.lhs, dl - dr))
        return out

    def check_termination(self, bound: BiDegree) -> None:
        """Normalize every word up to ``bound``; raises on a loop or the step bound."""
        for b in Window(bound.degree, bound.dimension).bidegrees():
            for w in mon_enumerate(self.generators, b):
                self.normal_word(w)


def free_algebra(
    ring: Ring,
    gens: BigradedSet,
    differential: Mapping[str, AlgebraElement] | None = None,
    one: str | None = None,
    name: str = "",
) -> StructuredAlgebra:
    spec = DifferentialSpec(gens, dict(differential or {}), ring.modulus)
    return StructuredAlgebra(ring, gens, (), spec, one, name)


def coproduct(a: StructuredAlgebra, b: StructuredAlgebra) -> StructuredAlgebra:
    """Free product: union of generators, rules and differentials."""
    if a.ring != b.ring:
        raise PresentationError(f"rings differ: {a.ring} vs {b.ring}")
    if a.one and b.one:
        raise PresentationError("both factors carry a distinguished [1]")
    gens = a.generators.union(b.generators)
    values: dict[str, AlgebraElement] = {}
    for alg in (a, b):
        if alg.differential is not None:
            values.update(alg.differential.values)
    spec = DifferentialSpec(gens, values, a.modulus)
    name = f"{a.name} * {b.name}" if a.name and b.name else a.name or b.name
    return StructuredAlgebra(a.ring, gens, a.rules + b.rules, spec, a.one or b.one, name)


# -- centrality and Sigma-structures ----------------------------------------------------


def check_central(
    x: AlgebraElement, alg: StructuredAlgebra, bound: BiDegree
) -> tuple[bool, Word | None]:
    """Whether ``x*y = (-1)^{dim x dim y} y*x`` for all basis words ``y`` up to ``bound``.

    When ``x`` is a single word, basis words containing it are skipped: for
    odd ``dim x`` the signed rule would force ``2 x^2 = 0``, and on the other
    words it follows from the check on the remaining letters.
    """
    dx = alg.dim(x)
    q = alg.modulus
    for b in Window(bound.degree, bound.dimension).bidegrees():
        for w in alg.basis(b):
            if _contains(x, w):
                continue
            y = AlgebraElement.word(w, q)
            sign = -1 if (dx * b.dimension) % 2 else 1
            if alg.multiply(x, y) != sign * alg.multiply(y, x):
                return False, w
    return True, None


def _contains(x: AlgebraElement, w: Word) -> bool:
    if len(x.terms) != 1:
        return False
    (u, c), = x.terms.items()
    if c != 1 or not u:
        return False
    return any(w[i : i + len(u)] == u for i in range(len(w) - len(u) + 1))


@dataclass
class SigmaReport:
    bound: BiDegree
    d_one_zero: bool = False
    central: bool = False
    central_counterexample: str | None = None
    quasi_iso: bool = False
    quasi_iso_failure: BiDegree | None = None
    suspension_iso: bool = False
    suspension_failure: BiDegree | None = None
    homology: dict[BiDegree, HomologyGroup] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.d_one_zero and self.central and self.quasi_iso and self.suspension_iso

    def failures(self) -> list[str]:
        out = []
        if not self.d_one_zero:
            out.append("d[1] is not zero")
        if not self.central:
            out.append(f"[1] is not central in homology: fails against {self.central_counterexample}")
        if not self.quasi_iso:
            out.append(f"[1]* : Sigma A -> cotr_1 A is not a homology isomorphism at {self.quasi_iso_failure}")
        if not self.suspension_iso:
            out.append(f"H_m(A) differs from Sigma^m H_0(A) at {self.suspension_failure}")
        return out


def verify_sigma_structure(alg: StructuredAlgebra, bound: BiDegree) -> SigmaReport:
    """Check the Sigma-structure axioms for ``alg`` on bidegrees up to ``bound``.

    (a) ``d[1] = 0``; (b) ``[1]`` commutes (with sign) with every cycle up to a
    boundary; (c) left multiplication by ``[1]`` from ``Sigma^1_1 A`` to
    ``cotr_1 A`` is a homology isomorphism; (d) ``H_m = Sigma^m H_0``.
    """
    report = SigmaReport(bound)
    if alg.one is None:
        report.central_counterexample = "no distinguished [1]"
        return report
    q = alg.modulus
    one = alg.gen(alg.one)
    report.d_one_zero = not alg.d(one)

    big = Window(bound.degree + 1, bound.dimension + 2)
    cx = alg.chain_complex(big)
    inner = Window(bound.degree, bound.dimension)
    report.homology = {b: cx.homology_at(b) for b in inner.bidegrees()}

    # (b) on cycle generators, in homology
    report.central = True
    p, e = alg.ring.p, alg.ring.exponent
    for b in inner.bidegrees():
        words = alg.basis(b)
        if not words:
            continue
        tb = b + BiDegree(1, 1)
        tindex = {w: i for i, w in enumerate(alg.basis(tb))}
        bounds = cx.boundaries(tb)
        sign = -1 if b.dimension % 2 else 1
        for z in cx.cycles(b):
            zel = AlgebraElement([(w, c) for w, c in zip(words, z) if c], q)
            if len(zel.terms) == 1 and _contains(one, next(iter(zel.terms))):
                continue
            comm = alg.multiply(one, zel) - sign * alg.multiply(zel, one)
            if not comm:
                continue
            vec = [0] * len(tindex)
            for u, c in comm.terms.items():
                vec[tindex[u]] = c
            if span_length(bounds + [tuple(vec)], len(tindex), p, e) != span_length(
                bounds, len(tindex), p, e
            ):
                report.central = False
                report.central_counterexample = format_element(zel)
                break
        if not report.central:
            break

    # (c) Sigma^1_1 A -> cotr_1 A
    maps = alg.left_multiplication(one, big)
    target = cotruncate(cx, 1)
    sources = list(inner.bidegrees())
    sources += [BiDegree(-1, m) for m in range(bound.dimension + 1)]
    ok, where = chain_map_is_quasi_iso(cx, target, maps, BiDegree(1, 1), sources)
    report.quasi_iso, report.quasi_iso_failure = ok, where

    # (d) H_m = Sigma^m H_0
    report.suspension_iso = True
    for b, h in report.homology.items():
        base = BiDegree(b.degree - b.dimension, 0)
        h0 = report.homology.get(base) if base.degree >= 0 else HomologyGroup(p)
        if h0 is None:
            continue
        if (h.n_p, h.n_p2) != (h0.n_p, h0.n_p2):
            report.suspension_iso = False
            report.suspension_failure = b
            break
    return report


# -- truncation --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedAlgebra:
    """``tr_{m-1}(A)`` on a window: an (m)-algebra, vanishing in dimensions >= m."""

    source: StructuredAlgebra
    m: int
    complex: BigradedChainComplex
    sigma_ok: bool | None = None
    sigma_failure: BiDegree | None = None

    def homology(self, b: BiDegree) -> HomologyGroup:
        return self.complex.homology_at(b)


def truncate_algebra(alg: StructuredAlgebra, m: int, max_degree: int) -> TruncatedAlgebra:
    """Truncate to an (m)-algebra over degrees ``<= max_degree``.

    For ``m >= 2`` with a distinguished ``[1]`` this also checks that
    ``[1]* : Sigma^1_1 tr_{m-2}(B) -> cotr_1(B)`` is a homology isomorphism.
    """
    if m < 1:
        raise ValueError("an (m)-algebra needs m >= 1")
    window = Window(max_degree + 1, m)
    cx = alg.chain_complex(window)
    trunc = truncate(cx, m - 1)
    if m < 2 or alg.one is None:
        return TruncatedAlgebra(alg, m, trunc)
    maps = alg.left_multiplication(alg.gen(alg.one), window)
    source = truncate(trunc, m - 2)
    target = cotruncate(trunc, 1)
    bidegrees = [BiDegree(n, k) for n in range(-1, max_degree + 1) for k in range(m - 1)]
    ok, where = chain_map_is_quasi_iso(source, target, maps, BiDegree(1, 1), bidegrees)
    return TruncatedAlgebra(alg, m, trunc, ok, where)


__all__ = [
    "AlgebraElement",
    "BigradedSet",
    "DifferentialSpec",
    "PresentationError",
    "RewriteBoundExceeded",
    "Rule",
    "SigmaReport",
    "StructuredAlgebra",
    "TruncatedAlgebra",
    "check_central",
    "coproduct",
    "format_element",
    "format_word",
    "free_algebra",
    "leibniz_extend",
    "mon_enumerate",
    "truncate_algebra",
    "verify_sigma_structure",
]
