"""Bigraded modules and chain complexes.

An element of bidegree ``(n, m)`` has degree ``n`` and dimension ``m``; the
differential keeps the degree and lowers the dimension by one, so a complex
is stored degree by degree.

Chain groups are subquotients ``S / R`` of a free module with a labelled
basis.  Free groups have ``S`` everything and ``R = 0``; truncation over
Z/p^2 produces proper quotients (the cokernel of multiplication by p is not
free), cotruncation proper submodules.  Keeping the ambient basis means the
labels never change under these operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .coeffs import kernel_generators, span_length

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]  # rows: target basis, columns: source basis


class ComplexError(ValueError):
    """Raised when data does not form a chain complex."""


class WindowTooLarge(ValueError):
    """Homology was requested outside the region where the complex is known."""


@dataclass(frozen=True, order=True)
class BiDegree:
    degree: int
    dimension: int

    def __add__(self, other: BiDegree) -> BiDegree:
        return BiDegree(self.degree + other.degree, self.dimension + other.dimension)

    def __sub__(self, other: BiDegree) -> BiDegree:
        return BiDegree(self.degree - other.degree, self.dimension - other.dimension)

    def __iter__(self) -> Iterator[int]:
        yield self.degree
        yield self.dimension

    def __str__(self) -> str:
        return f"({self.degree},{self.dimension})"


@dataclass(frozen=True)
class Ring:
    """Z/p^exponent; exponent 1 is the field F, exponent 2 is G."""

    p: int
    exponent: int

    @classmethod
    def F(cls, p: int) -> Ring:
        return cls(p, 1)

    @classmethod
    def G(cls, p: int) -> Ring:
        return cls(p, 2)

    @property
    def modulus(self) -> int:
        return self.p**self.exponent

    @property
    def is_field(self) -> bool:
        return self.exponent == 1

    def __str__(self) -> str:
        return f"Z/{self.p}" if self.is_field else f"Z/{self.p}^2"


@dataclass(frozen=True)
class Window:
    """Inclusive box of bidegrees."""

    max_degree: int
    max_dimension: int
    min_degree: int = 0
    min_dimension: int = 0

    def __contains__(self, b: BiDegree) -> bool:
        return (
            self.min_degree <= b.degree <= self.max_degree
            and self.min_dimension <= b.dimension <= self.max_dimension
        )

    def bidegrees(self) -> Iterator[BiDegree]:
        for n in range(self.min_degree, self.max_degree + 1):
            for m in range(self.min_dimension, self.max_dimension + 1):
                yield BiDegree(n, m)


@dataclass(frozen=True)
class ChainGroup:
    """The subquotient ``span(sub) / span(rel)`` of the free module on ``labels``.

    ``sub=None`` means the whole free module.
    """

    labels: tuple[str, ...]
    sub: Matrix | None = None
    rel: Matrix = ()

    @property
    def rank(self) -> int:
        return len(self.labels)

    def sub_gens(self) -> list[Vector]:
        if self.sub is None:
            n = self.rank
            return [tuple(int(i == j) for i in range(n)) for j in range(n)]
        return list(self.sub)

    def is_free(self) -> bool:
        return self.sub is None and not self.rel

    def length(self, ring: Ring) -> int:
        """log_p of the order."""
        p, e = ring.p, ring.exponent
        return span_length(self.sub_gens(), self.rank, p, e) - span_length(self.rel, self.rank, p, e)

    def cyclic_type(self, ring: Ring) -> tuple[int, int]:
        """Counts of summands ``(Z/p, Z/p^2)``."""
        return _subquotient_type(self.sub_gens(), list(self.rel), self.rank, ring)

    def quotient_labels(self, ring: Ring) -> tuple[str, ...]:
        """Over a field with ``sub=None``: labels that form a basis of the quotient.

        These are the labels complementary to the pivot columns of the
        relations after elimination.
        """
        if not ring.is_field or self.sub is not None:
            raise ValueError("label basis only for quotients of free modules over F")
        from .coeffs import _rref_mod

        _, pivots = _rref_mod([list(r) for r in self.rel], self.rank, ring.p)
        drop = set(pivots)
        return tuple(lab for j, lab in enumerate(self.labels) if j not in drop)


@dataclass(frozen=True)
class HomologyGroup:
    """A finite Z/p^e-module as counts of cyclic summands."""

    p: int
    n_p: int = 0
    n_p2: int = 0

    @property
    def orders(self) -> tuple[int, ...]:
        return (self.p,) * self.n_p + (self.p**2,) * self.n_p2

    @property
    def length(self) -> int:
        return self.n_p + 2 * self.n_p2

    @property
    def is_zero(self) -> bool:
        return self.n_p == 0 and self.n_p2 == 0

    @property
    def dim(self) -> int:
        """Dimension over F; only meaningful when there are no Z/p^2 summands."""
        if self.n_p2:
            raise ValueError("module has Z/p^2 summands; it is not an F-vector space")
        return self.n_p

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.n_p:
            parts.append(f"(Z/{self.p})^{self.n_p}" if self.n_p > 1 else f"Z/{self.p}")
        if self.n_p2:
            parts.append(f"(Z/{self.p}^2)^{self.n_p2}" if self.n_p2 > 1 else f"Z/{self.p}^2")
        return " + ".join(parts)


GradedHomology = dict  # BiDegree -> HomologyGroup


# -- submodule arithmetic in an ambient free module ---------------------------


def _mat_vec(mat: Matrix, vec: Sequence[int], q: int) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, vec)) % q for row in mat)


def _subquotient_type(
    sub: list[Vector], rel: list[Vector], dim: int, ring: Ring
) -> tuple[int, int]:
    p, e = ring.p, ring.exponent
    s = span_length(sub, dim, p, e)
    total = s - span_length(rel, dim, p, e)
    if ring.is_field:
        return total, 0
    p_sub = [tuple(p * x % ring.modulus for x in v) for v in sub]
    q = s - span_length(list(rel) + p_sub, dim, p, e)
    return 2 * q - total, total - q


def preimage(
    d: Matrix, source: ChainGroup, target_rel: Sequence[Vector], ring: Ring
) -> list[Vector]:
    """Generators of ``{x in span(source.sub) : d x in span(target_rel)}``."""
    sub = source.sub_gens()
    q = ring.modulus
    if not sub:
        return []
    images = [_mat_vec(d, v, q) for v in sub]
    rows = len(d)
    if rows == 0:
        return sub
    cols = images + [tuple(r) for r in target_rel]
    mat = [[c[i] for c in cols] for i in range(rows)]
    out = []
    for gen in kernel_generators(mat, len(cols), ring.p, ring.exponent):
        coeffs = gen[: len(sub)]
        x = tuple(sum(c * v[i] for c, v in zip(coeffs, sub)) % q for i in range(source.rank))
        if any(x):
            out.append(x)
    return out


# -- complexes ------------------------------------------------------------------


@dataclass(frozen=True)
class FreeBigradedModule:
    ring: Ring
    basis: tuple[tuple[str, BiDegree], ...]
    nonnegative: bool = True

    def __post_init__(self) -> None:
        labels = [lab for lab, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")
        if self.nonnegative and any(b.degree < 0 or b.dimension < 0 for _, b in self.basis):
            raise ValueError("non-negatively graded module has a basis element in negative bidegree")

    def labels_at(self, b: BiDegree) -> tuple[str, ...]:
        return tuple(lab for lab, bd in self.basis if bd == b)

    def bidegrees(self) -> list[BiDegree]:
        return sorted({b for _, b in self.basis})


@dataclass(frozen=True)
class BigradedChainComplex:
    """Chain groups and differentials ``d: W_m^n -> W_{m-1}^n``.

    ``groups`` and ``differential`` are keyed by the bidegree of the source.
    Missing groups are zero.  ``known`` is the box where the data is
    complete; ``None`` means everything outside ``groups`` is zero.
    """

    ring: Ring
    groups: Mapping[BiDegree, ChainGroup]
    differential: Mapping[BiDegree, Matrix] = field(default_factory=dict)
    known: Window | None = None

    def __post_init__(self) -> None:
        self._check()

    # construction ------------------------------------------------------

    @classmethod
    def free(
        cls,
        ring: Ring,
        basis: Mapping[BiDegree, Sequence[str]],
        differential: Mapping[BiDegree, Sequence[Sequence[int]]],
        known: Window | None = None,
    ) -> BigradedChainComplex:
        groups = {b: ChainGroup(tuple(labs)) for b, labs in basis.items() if labs}
        q = ring.modulus
        diff = {
            b: tuple(tuple(x % q for x in row) for row in mat)
            for b, mat in differential.items()
        }
        return cls(ring, groups, diff, known)

    @classmethod
    def from_module(
        cls,
        module: FreeBigradedModule,
        differential: Mapping[BiDegree, Sequence[Sequence[int]]],
        known: Window | None = None,
    ) -> BigradedChainComplex:
        basis = {b: module.labels_at(b) for b in module.bidegrees()}
        return cls.free(module.ring, basis, differential, known)

    def group(self, b: BiDegree) -> ChainGroup:
        return self.groups.get(b, ChainGroup(()))

    def d(self, b: BiDegree) -> Matrix:
        """Matrix of the differential leaving bidegree ``b``."""
        src = self.group(b)
        tgt = self.group(BiDegree(b.degree, b.dimension - 1))
        mat = self.differential.get(b)
        if mat is None or not src.rank or not tgt.rank:
            return tuple(tuple(0 for _ in range(src.rank)) for _ in range(tgt.rank))
        return mat

    def degrees(self) -> list[int]:
        return sorted({b.degree for b in self.groups})

    def dimensions(self, n: int) -> list[int]:
        return sorted(b.dimension for b in self.groups if b.degree == n)

    def _check(self) -> None:
        q = self.ring.modulus
        p, e = self.ring.p, self.ring.exponent
        for b, mat in self.differential.items():
            src = self.group(b)
            tgt = self.group(BiDegree(b.degree, b.dimension - 1))
            if len(mat) != tgt.rank or any(len(row) != src.rank for row in mat):
                if src.rank and tgt.rank:
                    raise ComplexError(f"differential at {b} has the wrong shape")
        for b in self.groups:
            src = self.group(b)
            below = BiDegree(b.degree, b.dimension - 1)
            tgt = self.group(below)
            if not tgt.rank:
                continue
            d = self.d(b)
            sub_imgs = [_mat_vec(d, v, q) for v in src.sub_gens()]
            rel_imgs = [_mat_vec(d, v, q) for v in src.rel]
            tsub, trel = tgt.sub_gens(), list(tgt.rel)
            if tgt.sub is not None and span_length(tsub + sub_imgs, tgt.rank, p, e) != span_length(
                tsub, tgt.rank, p, e
            ):
                raise ComplexError(f"differential at {b} leaves the target submodule")
            if rel_imgs and span_length(trel + rel_imgs, tgt.rank, p, e) != span_length(
                trel, tgt.rank, p, e
            ):
                raise ComplexError(f"differential at {b} is not defined on the quotient")
            below2 = BiDegree(b.degree, b.dimension - 2)
            tgt2 = self.group(below2)
            if not tgt2.rank:
                continue
            d2 = self.d(below)
            dd = [_mat_vec(d2, v, q) for v in sub_imgs]
            trel2 = list(tgt2.rel)
            if any(any(v) for v in dd) and span_length(trel2 + dd, tgt2.rank, p, e) != span_length(
                trel2, tgt2.rank, p, e
            ):
                raise ComplexError(f"d o d is not zero at {b}")

    # homology -------------------------------------------------------------

    def _require_known(self, b: BiDegree) -> None:
        if self.known is not None and b not in self.known:
            raise WindowTooLarge(f"complex is not known at {b}; window too large")

    def cycles(self, b: BiDegree) -> list[Vector]:
        """Generators of the cycles ``{x in S_b : d x in R_{b-1}}`` in ambient coordinates."""
        below = BiDegree(b.degree, b.dimension - 1)
        return preimage(self.d(b), self.group(b), self.group(below).rel, self.ring)

    def boundaries(self, b: BiDegree) -> list[Vector]:
        """Generators of ``d(S_{b+1}) + R_b`` in ambient coordinates."""
        above = BiDegree(b.degree, b.dimension + 1)
        d = self.d(above)
        q = self.ring.modulus
        imgs = [_mat_vec(d, v, q) for v in self.group(above).sub_gens()] if self.group(b).rank else []
        return [v for v in imgs if any(v)] + list(self.group(b).rel)

    def homology_at(self, b: BiDegree) -> HomologyGroup:
        if b.degree < 0 or b.dimension < 0:
            return HomologyGroup(self.ring.p)
        for probe in (b, BiDegree(b.degree, b.dimension + 1), BiDegree(b.degree, b.dimension - 1)):
            if probe.dimension >= 0 or probe == b:
                self._require_known(probe)
        grp = self.group(b)
        if not grp.rank:
            return HomologyGroup(self.ring.p)
        n_p, n_p2 = _subquotient_type(self.cycles(b), self.boundaries(b), grp.rank, self.ring)
        return HomologyGroup(self.ring.p, n_p, n_p2)


def homology(c: BigradedChainComplex, window: Window) -> GradedHomology:
    """Homology at every bidegree of ``window``.

    Over F the groups are vector spaces; over Z/p^2 they are reported as
    counts of Z/p and Z/p^2 summands.
    """
    return {b: c.homology_at(b) for b in window.bidegrees()}


# -- operations on complexes -------------------------------------------------------


def suspend(c: BigradedChainComplex, r: int, s: int) -> BigradedChainComplex:
    """Shift bidegrees by ``(r, s)``; the differential picks up the sign (-1)^s."""
    shift = BiDegree(r, s)
    q = c.ring.modulus
    sign = -1 if s % 2 else 1
    groups = {b + shift: g for b, g in c.groups.items()}
    diff = {
        b + shift: tuple(tuple(sign * x % q for x in row) for row in mat)
        for b, mat in c.differential.items()
    }
    known = None
    if c.known is not None:
        k = c.known
        known = Window(
            k.max_degree + r, k.max_dimension + s, k.min_degree + r, k.min_dimension + s
        )
    return BigradedChainComplex(c.ring, groups, diff, known)


def truncate(c: BigradedChainComplex, m: int) -> BigradedChainComplex:
    """``tr_m``: dimension ``m`` becomes ``cok d_{m+1}``, higher dimensions vanish."""
    q = c.ring.modulus
    groups: dict[BiDegree, ChainGroup] = {}
    for b, g in c.groups.items():
        if b.dimension < m:
            groups[b] = g
        elif b.dimension == m:
            c._require_known(BiDegree(b.degree, m + 1))
            above = BiDegree(b.degree, m + 1)
            d = c.d(above)
            imgs = [_mat_vec(d, v, q) for v in c.group(above).sub_gens()]
            rel = tuple(g.rel) + tuple(v for v in imgs if any(v))
            groups[b] = ChainGroup(g.labels, g.sub, rel)
    diff = {b: mat for b, mat in c.differential.items() if b.dimension <= m}
    return BigradedChainComplex(c.ring, groups, diff, c.known)


def cotruncate(c: BigradedChainComplex, m: int) -> BigradedChainComplex:
    """``cotr_m``: dimension ``m`` becomes ``ker d_m``, lower dimensions vanish."""
    groups: dict[BiDegree, ChainGroup] = {}
    for b, g in c.groups.items():
        if b.dimension > m:
            groups[b] = g
        elif b.dimension == m:
            ker = c.cycles(b)
            p, e = c.ring.p, c.ring.exponent
            if span_length(ker, g.rank, p, e) == span_length(g.sub_gens(), g.rank, p, e):
                groups[b] = g
            elif ker:
                groups[b] = ChainGroup(g.labels, tuple(ker), g.rel)
    diff = {b: mat for b, mat in c.differential.items() if b.dimension > m}
    return BigradedChainComplex(c.ring, groups, diff, c.known)


def chain_map_is_quasi_iso(
    source: BigradedChainComplex,
    target: BigradedChainComplex,
    maps: Mapping[BiDegree, Matrix],
    shift: BiDegree,
    bidegrees: Iterable[BiDegree],
) -> tuple[bool, BiDegree | None]:
    """Check that ``maps`` (ambient matrices, source b -> target b+shift) induce
    isomorphisms on homology at each of ``bidegrees``.

    Finite groups: the induced map is bijective iff the groups have equal
    order and the map is onto.  Returns the first failing bidegree.
    """
    ring = target.ring
    q = ring.modulus
    for b in bidegrees:
        tb = b + shift
        hs, ht = source.homology_at(b), target.homology_at(tb)
        if hs.length != ht.length:
            return False, b
        tgrp = target.group(tb)
        if not tgrp.rank:
            continue
        f = maps.get(b, ())
        imgs = [_mat_vec(f, z, q) for z in source.cycles(b)] if f else []
        bounds = target.boundaries(tb)
        cyc = target.cycles(tb)
        p, e = ring.p, ring.exponent
        if span_length(imgs + bounds, tgrp.rank, p, e) != span_length(cyc, tgrp.rank, p, e):
            return False, b
    return True, None


def split_check(c: BigradedChainComplex, n: int, degree: int | None = None) -> bool:
    """Whether ``d_n`` induces a split surjection ``cok(d_{n+1}) -> im(d_n)``.

    Dimension ``n``; all degrees unless ``degree`` is given.  With ``K`` the
    kernel of that surjection (the homology at ``n``), the sequence
    ``0 -> K -> cok -> im -> 0`` splits iff ``cok ~ K + im`` as abstract
    modules (finitely generated modules over a noetherian ring).
    """
    ring = c.ring
    q = ring.modulus
    degrees = [degree] if degree is not None else sorted({b.degree for b in c.groups})
    for deg in degrees:
        b = BiDegree(deg, n)
        grp = c.group(b)
        if not grp.rank:
            continue
        sub = grp.sub_gens()
        cok = _subquotient_type(sub, c.boundaries(b), grp.rank, ring)
        ker = _subquotient_type(c.cycles(b), c.boundaries(b), grp.rank, ring)
        below = c.group(BiDegree(deg, n - 1))
        d = c.d(b)
        imgs = [_mat_vec(d, v, q) for v in sub]
        if below.rank:
            im = _subquotient_type(imgs + list(below.rel), list(below.rel), below.rank, ring)
        else:
            im = (0, 0)
        if cok != (ker[0] + im[0], ker[1] + im[1]):
            return False
    return True
