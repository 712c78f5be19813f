"""Minimal free resolutions over the mod 2 Steenrod algebra and Ext charts.

All linear algebra is over F_2 with vectors packed into Python ints, one bit
per basis element of a module in a fixed internal degree.  Free modules use
the basis (generator, admissible monomial), generators first.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from .steenrod import (
    Monomial,
    SteenrodElement,
    admissible_basis,
    format_monomial,
    multiply_monomials,
)


class ResourceBoundExceeded(RuntimeError):
    def __init__(self, message: str, frontier: tuple[int, int] | None = None):
        super().__init__(message)
        self.frontier = frontier


def _bits(v: int) -> Iterable[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


# -- modules ---------------------------------------------------------------------


@dataclass(frozen=True)
class ModulePresentation:
    """A finitely presented graded left module ``X``.

    ``relations[k]`` lists, per generator, the coefficient of that generator
    (``None`` for zero).  Relations must be homogeneous.  ``complete_through``
    is the largest internal degree for which the relation list generates all
    relations; ``None`` means every degree.
    """

    generators: tuple[int, ...]
    relations: tuple[tuple[SteenrodElement | None, ...], ...] = ()
    labels: tuple[str, ...] = ()
    complete_through: int | None = None

    def __post_init__(self) -> None:
        if any(t < 0 for t in self.generators):
            raise ValueError("generator degrees must be non-negative")
        labels = self.labels or tuple(f"x{i}" for i in range(len(self.generators)))
        if len(labels) != len(self.generators) or len(set(labels)) != len(labels):
            raise ValueError("labels must be unique, one per generator")
        object.__setattr__(self, "labels", labels)
        for rel in self.relations:
            if len(rel) != len(self.generators):
                raise ValueError("each relation needs one entry per generator")
            degs = {a.degree + t for a, t in zip(rel, self.generators) if a}
            if len(degs) > 1:
                raise ValueError(f"inhomogeneous relation in degrees {sorted(degs)}")

    @classmethod
    def field(cls, max_degree: int = 64) -> ModulePresentation:
        """``F_2`` in degree 0: one generator killed by every ``Sq^{2^i}``."""
        rels = []
        k = 1
        while k <= max_degree:
            rels.append((SteenrodElement.sq(k),))
            k *= 2
        return cls((0,), tuple(rels), ("1",), max_degree)

    def relation_degree(self, rel: Sequence[SteenrodElement | None]) -> int | None:
        for a, t in zip(rel, self.generators):
            if a:
                return a.degree + t
        return None


class FreeModule:
    """Free module on generators of given degrees, with a lazily built basis."""

    def __init__(self, degrees: Sequence[int] = (), labels: Sequence[str] = ()):
        self.degrees: list[int] = list(degrees)
        self.labels: list[str] = list(labels) or [f"g{i}" for i in range(len(self.degrees))]
        self._basis: dict[int, list[tuple[int, Monomial]]] = {}
        self._index: dict[int, dict[tuple[int, Monomial], int]] = {}

    def add_generator(self, degree: int, label: str | None = None) -> int:
        if self.degrees and degree < self.degrees[-1]:
            raise ValueError("generators must be added in ascending degree")
        self.degrees.append(degree)
        self.labels.append(label or f"g{len(self.degrees) - 1}")
        for t in [t for t in self._basis if t >= degree]:
            del self._basis[t]
            del self._index[t]
        return len(self.degrees) - 1

    def basis(self, t: int) -> list[tuple[int, Monomial]]:
        hit = self._basis.get(t)
        if hit is None:
            hit = [
                (g, m) for g, d in enumerate(self.degrees) if d <= t for m in admissible_basis(t - d)
            ]
            self._basis[t] = hit
            self._index[t] = {x: i for i, x in enumerate(hit)}
        return hit

    def index(self, t: int) -> dict[tuple[int, Monomial], int]:
        self.basis(t)
        return self._index[t]

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def act(self, mono: Monomial, j: int, t: int) -> int:
        """``Sq^mono`` applied to basis element ``j`` of degree ``t``."""
        g, m = self.basis(t)[j]
        index = self.index(t + sum(mono))
        v = 0
        for k in multiply_monomials(mono, m):
            v ^= 1 << index[(g, k)]
        return v

    def encode(self, t: int, terms: Iterable[tuple[int, Monomial]]) -> int:
        index = self.index(t)
        v = 0
        for x in terms:
            v ^= 1 << index[x]
        return v


class QuotientModule:
    """``X = F / R`` for a presentation, degreewise as ``F_t / R_t``."""

    def __init__(self, pres: ModulePresentation):
        self.pres = pres
        self.free = FreeModule(pres.generators, pres.labels)
        self._cache: dict[int, tuple[list[int], list[int], list[int], dict[int, int]]] = {}

    def _data(self, t: int):
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        limit = self.pres.complete_through
        if limit is not None and t > limit:
            raise ResourceBoundExceeded(f"presentation only complete through degree {limit}")
        rows = []
        index = self.free.index(t)
        for rel in self.pres.relations:
            rd = self.pres.relation_degree(rel)
            if rd is None or rd > t:
                continue
            for mono in admissible_basis(t - rd):
                v = 0
                for g, a in enumerate(rel):
                    if not a:
                        continue
                    for m in a.terms:
                        for k in multiply_monomials(mono, m):
                            v ^= 1 << index[(g, k)]
                rows.append(v)
        red, piv = kernels.rref(rows, self.free.dim(t))
        pivset = set(piv)
        keep = [i for i in range(self.free.dim(t)) if i not in pivset]
        pos = {i: k for k, i in enumerate(keep)}
        hit = (red, piv, keep, pos)
        self._cache[t] = hit
        return hit

    def dim(self, t: int) -> int:
        return len(self._data(t)[2])

    def project(self, t: int, v: int) -> int:
        red, piv, _, pos = self._data(t)
        v = kernels.reduce(v, red, piv)
        out = 0
        for i in _bits(v):
            out |= 1 << pos[i]
        return out

    def act(self, mono: Monomial, j: int, t: int) -> int:
        keep = self._data(t)[2]
        return self.project(t + sum(mono), self.free.act(mono, keep[j], t))

    def basis_labels(self, t: int) -> list[str]:
        basis = self.free.basis(t)
        return [
            f"{format_monomial(basis[i][1])} {self.pres.labels[basis[i][0]]}"
            for i in self._data(t)[2]
        ]


# -- stages ----------------------------------------------------------------------


@dataclass
class ResolutionStage:
    """``F_s`` with ``d_s : F_s -> F_{s-1}`` (or ``-> X`` when ``s = 0``)."""

    s: int
    module: FreeModule
    images: list[int] = field(default_factory=list)

    @property
    def generators(self) -> list[tuple[str, int]]:
        return list(zip(self.module.labels, self.module.degrees))

    def degree_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for t in self.module.degrees:
            out[t] = out.get(t, 0) + 1
        return out


@dataclass
class Resolution:
    module: ModulePresentation
    stages: list[ResolutionStage]
    max_s: int
    max_t: int
    complete: bool = True
    frontier: tuple[int, int] | None = None

    def target(self, s: int):
        return self._target(s)

    def _target(self, s: int):
        if s == 0:
            return self._x
        return self.stages[s - 1].module

    def differential_matrix(self, s: int) -> list[list[SteenrodElement]]:
        """``d_s`` as a matrix over the algebra; row = generator of ``F_s``."""
        if s == 0:
            raise ValueError("d_0 lands in the module, not a free module")
        src = self.stages[s].module
        tgt = self.stages[s - 1].module
        rows = []
        for g, v in enumerate(self.stages[s].images):
            t = src.degrees[g]
            basis = tgt.basis(t)
            acc: list[set[Monomial]] = [set() for _ in tgt.degrees]
            for j in _bits(v):
                h, m = basis[j]
                acc[h] ^= {m}
            rows.append(
                [SteenrodElement(frozenset(a), t - tgt.degrees[h]) for h, a in enumerate(acc)]
            )
        return rows


def _image_row(target, d_g: int, deg: int, mono: Monomial) -> int:
    out = 0
    for j in _bits(d_g):
        out ^= target.act(mono, j, deg)
    return out


def resolve(
    X: ModulePresentation | None = None,
    max_s: int = 5,
    max_t: int = 13,
    threads: int = 1,
    max_basis: int | None = None,
) -> Resolution:
    """Minimal resolution of ``X`` (default ``F_2``) through ``(max_s, max_t)``.

    With ``max_basis`` set, stops as soon as some ``(F_s)_t`` would exceed it
    and returns a partial result whose ``frontier`` is the last completed
    ``(s, t)``.
    """
    if max_s < 0 or max_t < 0:
        raise ValueError("bounds must be non-negative")
    X = X or ModulePresentation.field(max(max_t, 1))
    xmod = QuotientModule(X)
    res = Resolution(X, [], max_s, max_t)
    res._x = xmod  # type: ignore[attr-defined]

    def kernel_basis(rows: list[int], ncols: int) -> list[int]:
        ker = kernels.left_kernel(rows, ncols)
        # express kernel vectors in the source basis, canonically
        red, _ = kernels.rref(ker, len(rows))
        return red

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        # cycles to cover at stage s, per t, in the source basis of stage s-1
        targets: list[list[int]] = []
        for t in range(max_t + 1):
            try:
                n = xmod.dim(t)
            except ResourceBoundExceeded as exc:
                raise ValueError(str(exc)) from None
            targets.append([1 << i for i in range(n)])
        last_done: tuple[int, int] | None = None
        for s in range(max_s + 1):
            target = xmod if s == 0 else res.stages[s - 1].module
            stage = ResolutionStage(s, FreeModule())
            res.stages.append(stage)
            mod = stage.module
            all_rows: list[list[int]] = []
            for t in range(max_t + 1):
                rows = []
                for g, m in mod.basis(t):
                    rows.append(_image_row(target, stage.images[g], mod.degrees[g], m))
                if max_basis is not None and len(rows) + len(targets[t]) > max_basis:
                    res.complete = False
                    res.frontier = last_done
                    return res
                red, piv = kernels.rref(rows, target.dim(t))
                red = list(red)
                piv = list(piv)
                for v in targets[t]:
                    r = kernels.reduce(v, red, piv)
                    if r:
                        mod.add_generator(t, f"g{s}_{len(mod.degrees)}")
                        stage.images.append(v)
                        rows.append(v)
                        red.append(r)
                        piv.append((r & -r).bit_length() - 1)
                all_rows.append(rows)
                last_done = (s, t)
            if s == max_s:
                break
            dims = [mod.dim(t) for t in range(max_t + 1)]
            jobs = [(all_rows[t], target.dim(t)) for t in range(max_t + 1)]
            if pool is not None:
                targets = list(pool.map(lambda a: kernel_basis(*a), jobs))
            else:
                targets = [kernel_basis(*a) for a in jobs]
            for t in range(max_t + 1):
                if len(all_rows[t]) != dims[t]:
                    raise AssertionError("basis bookkeeping out of step")
    finally:
        if pool is not None:
            pool.shutdown()
    return res


# -- checks --------------------------------------------------------------------------


def check_d_squared(res: Resolution) -> list[tuple[int, str]]:
    """Generators ``g`` of ``F_s`` with ``d_{s-1} d_s g != 0``, via matrix products."""
    bad = []
    for s in range(2, len(res.stages)):
        upper = res.differential_matrix(s)
        lower = res.differential_matrix(s - 1)
        for g, row in enumerate(upper):
            for k in range(len(res.stages[s - 2].module.degrees)):
                acc: SteenrodElement | None = None
                for h, a in enumerate(row):
                    if a:
                        term = a * lower[h][k]
                        acc = term if acc is None else acc + term
                if acc:
                    bad.append((s, res.stages[s].module.labels[g]))
                    break
    if len(res.stages) > 1:
        x = res._x  # type: ignore[attr-defined]
        st0, st1 = res.stages[0], res.stages[1]
        for g, v in enumerate(st1.images):
            t = st1.module.degrees[g]
            acc_v = 0
            basis = st0.module.basis(t)
            for j in _bits(v):
                h, m = basis[j]
                acc_v ^= _image_row(x, st0.images[h], st0.module.degrees[h], m)
            if acc_v:
                bad.append((1, st1.module.labels[g]))
    return bad


def is_minimal(res: Resolution) -> bool:
    """No differential entry contains the unit."""
    for s in range(1, len(res.stages)):
        for row in res.differential_matrix(s):
            if any(a and () in a.terms for a in row):
                return False
    return True


def exactness_defects(res: Resolution) -> list[tuple[int, int]]:
    """``(s, t)`` where ``dim (F_s)_t = rank d_s + rank d_{s+1}`` fails.

    For ``s = 0`` the first term is ``dim X_t``, which also checks that
    ``d_0`` is onto.  The top stage is not covered.
    """
    ranks: dict[tuple[int, int], int] = {}
    x = res._x  # type: ignore[attr-defined]
    for s, st in enumerate(res.stages):
        target = x if s == 0 else res.stages[s - 1].module
        mod = st.module
        for t in range(res.max_t + 1):
            rows = [
                _image_row(target, st.images[g], mod.degrees[g], m) for g, m in mod.basis(t)
            ]
            ranks[(s, t)] = len(kernels.rref(rows, target.dim(t))[0])
    bad = []
    for s in range(len(res.stages) - 1):
        for t in range(res.max_t + 1):
            if s == 0 and ranks[(0, t)] != x.dim(t):
                bad.append((0, t))
            elif res.stages[s].module.dim(t) != ranks[(s, t)] + ranks[(s + 1, t)]:
                bad.append((s, t))
    return bad


# -- charts ------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtChart:
    prime: int
    max_s: int
    max_t: int
    classes: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        cls = tuple(sorted(self.classes))
        if len(set(cls)) != len(cls):
            raise ValueError("duplicate class")
        object.__setattr__(self, "classes", cls)

    @classmethod
    def from_dims(cls, prime: int, max_s: int, max_t: int, dims: dict[tuple[int, int], int]):
        classes = [(s, t, i) for (s, t), n in dims.items() for i in range(n)]
        return cls(prime, max_s, max_t, tuple(classes))

    def dims(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for s, t, _ in self.classes:
            out[(s, t)] = out.get((s, t), 0) + 1
        return out

    def dim(self, s: int, t: int) -> int:
        return self.dims().get((s, t), 0)

    def restrict(self, max_s: int, max_t: int) -> ExtChart:
        keep = tuple(c for c in self.classes if c[0] <= max_s and c[1] <= max_t)
        return ExtChart(self.prime, max_s, max_t, keep)


def ext_chart(res: Resolution) -> ExtChart:
    dims: dict[tuple[int, int], int] = {}
    for st in res.stages:
        for t, n in st.degree_counts().items():
            dims[(st.s, t)] = n
    return ExtChart.from_dims(2, res.max_s, res.max_t, dims)


def compare_charts(a: ExtChart, b: ExtChart) -> list[tuple[int, int, int, int]]:
    """``(s, t, dim_a, dim_b)`` on the common window where they differ."""
    ms, mt = min(a.max_s, b.max_s), min(a.max_t, b.max_t)
    da, db = a.dims(), b.dims()
    out = []
    for s in range(ms + 1):
        for t in range(mt + 1):
            x, y = da.get((s, t), 0), db.get((s, t), 0)
            if x != y:
                out.append((s, t, x, y))
    return out


# -- bar complex oracle ------------------------------------------------------------


MilnorElt = tuple[int, ...]

ORACLE_MAX_S = 6
ORACLE_MAX_T = 16


@lru_cache(maxsize=None)
def milnor_basis(n: int) -> tuple[MilnorElt, ...]:
    """``(r_1, .., r_k)`` with ``sum r_i (2^i - 1) = n``, no trailing zeros."""

    def rec(rest: int, i: int) -> list[MilnorElt]:
        w = (1 << i) - 1
        if rest == 0:
            return [()]
        if w > rest:
            return []
        return [(r,) + tail for r in range(rest // w + 1) for tail in rec(rest - r * w, i + 1)]

    return tuple(sorted(rec(n, 1)))


@lru_cache(maxsize=None)
def milnor_product(r: MilnorElt, s: MilnorElt) -> frozenset[MilnorElt]:
    """``Sq(r) Sq(s)`` in the Milnor basis over F_2.

    Sums over matrices ``x_{ij}`` with row sums ``sum_j 2^j x_{ij} = r_i`` and
    column sums ``sum_i x_{ij} = s_j``; the term ``T_n = sum_{i+j=n} x_{ij}``
    carries the multinomial coefficient of the ``n``-th diagonal, which is odd
    iff its entries have pairwise disjoint binary digits.
    """
    rows, cols = len(r), len(s)
    out: set[MilnorElt] = set()
    col_left = list(s)
    x = [[0] * (cols + 1) for _ in range(rows + 1)]

    def fill_row(i: int) -> None:
        if i > rows:
            for j in range(1, cols + 1):
                x[0][j] = col_left[j - 1]
            emit()
            return

        def choose(j: int, budget: int) -> None:
            if j > cols:
                x[i][0] = budget
                fill_row(i + 1)
                return
            w = 1 << j
            for v in range(min(budget // w, col_left[j - 1]) + 1):
                x[i][j] = v
                col_left[j - 1] -= v
                choose(j + 1, budget - v * w)
                col_left[j - 1] += v
            x[i][j] = 0

        choose(1, r[i - 1])

    def emit() -> None:
        t = []
        for n in range(1, rows + cols + 1):
            seen = 0
            total = 0
            for i in range(max(0, n - cols), min(rows, n) + 1):
                e = x[i][n - i]
                if seen & e:
                    return
                seen |= e
                total += e
            t.append(total)
        while t and t[-1] == 0:
            t.pop()
        out.symmetric_difference_update({tuple(t)})

    fill_row(1)
    return frozenset(out)


def _milnor_degree(r: MilnorElt) -> int:
    return sum(v * ((1 << (i + 1)) - 1) for i, v in enumerate(r))


def bar_oracle(max_s: int, max_t: int) -> dict[tuple[int, int], int]:
    """``dim Ext^{s,t}`` from the reduced bar complex of the Steenrod algebra.

    Chains in homological degree ``s`` are spanned by ``[a_1|...|a_s]`` with
    Milnor basis elements of positive degree; ``b`` sums the products of
    adjacent entries.  Only degrees ``t <= ORACLE_MAX_T`` and ``s <=
    ORACLE_MAX_S`` are accepted.
    """
    if max_s > ORACLE_MAX_S or max_t > ORACLE_MAX_T:
        raise ResourceBoundExceeded(
            f"bar oracle limited to s <= {ORACLE_MAX_S}, t <= {ORACLE_MAX_T}"
        )
    if max_s < 0 or max_t < 0:
        raise ValueError("bounds must be non-negative")

    @lru_cache(maxsize=None)
    def chains(s: int, t: int) -> tuple[tuple[MilnorElt, ...], ...]:
        if s == 0:
            return ((),) if t == 0 else ()
        out = []
        for first in range(1, t - s + 2):
            for a in milnor_basis(first):
                for rest in chains(s - 1, t - first):
                    out.append((a,) + rest)
        return tuple(out)

    @lru_cache(maxsize=None)
    def rank(s: int, t: int) -> int:
        # rank of b : B_s -> B_{s-1} in internal degree t
        if s <= 1:
            return 0
        src = chains(s, t)
        tgt = chains(s - 1, t)
        if not src or not tgt:
            return 0
        index = {c: i for i, c in enumerate(tgt)}
        rows = []
        for c in src:
            v = 0
            for i in range(s - 1):
                for prod in milnor_product(c[i], c[i + 1]):
                    if prod:
                        v ^= 1 << index[c[:i] + (prod,) + c[i + 2 :]]
            rows.append(v)
        return len(kernels.rref(rows, len(tgt))[0])

    out = {}
    for s in range(max_s + 1):
        for t in range(max_t + 1):
            n = len(chains(s, t)) - rank(s, t) - rank(s + 1, t)
            if n:
                out[(s, t)] = n
    return out


def oracle_chart(max_s: int, max_t: int) -> ExtChart:
    return ExtChart.from_dims(2, max_s, max_t, bar_oracle(max_s, max_t))


__all__ = [
    "ExtChart",
    "FreeModule",
    "ModulePresentation",
    "ORACLE_MAX_S",
    "ORACLE_MAX_T",
    "QuotientModule",
    "Resolution",
    "ResolutionStage",
    "ResourceBoundExceeded",
    "bar_oracle",
    "check_d_squared",
    "compare_charts",
    "exactness_defects",
    "ext_chart",
    "is_minimal",
    "milnor_basis",
    "milnor_product",
    "oracle_chart",
    "resolve",
]
