"""Arithmetic and linear algebra over G = Z/p^2 and F = Z/p.

Z/p^2 is a local ring with maximal ideal (p), so every matrix over it can be
brought to a diagonal form with entries 1, p, 0 by invertible row and column
operations.  The same routine with exponent 1 does Gaussian elimination over
the field F; the p = 2 field path goes through the bit-packed kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels


class DimensionError(ValueError):
    """Matrix/vector shapes do not fit together."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Prime:
    p: int

    def __post_init__(self) -> None:
        if self.p < 2 or (self.p < 1 << 16 and not is_prime(self.p)):
            raise ValueError(f"{self.p} is not a prime")

    def __int__(self) -> int:
        return self.p


@dataclass(frozen=True)
class GCoeff:
    """Residue class in Z/p^2."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % (self.p * self.p))

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def __add__(self, other: GCoeff) -> GCoeff:
        return GCoeff(self.value + other.value, self.p)

    def __sub__(self, other: GCoeff) -> GCoeff:
        return GCoeff(self.value - other.value, self.p)

    def __mul__(self, other: GCoeff) -> GCoeff:
        return GCoeff(self.value * other.value, self.p)

    def __neg__(self) -> GCoeff:
        return GCoeff(-self.value, self.p)

    def inverse(self) -> GCoeff:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.modulus}")
        return GCoeff(pow(self.value, -1, self.modulus), self.p)

    def reduce(self) -> FCoeff:
        """Image under G -> F."""
        return FCoeff(self.value, self.p)


@dataclass(frozen=True)
class FCoeff:
    """Element of the prime field Z/p."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def __add__(self, other: FCoeff) -> FCoeff:
        return FCoeff(self.value + other.value, self.p)

    def __sub__(self, other: FCoeff) -> FCoeff:
        return FCoeff(self.value - other.value, self.p)

    def __mul__(self, other: FCoeff) -> FCoeff:
        return FCoeff(self.value * other.value, self.p)

    def __neg__(self) -> FCoeff:
        return FCoeff(-self.value, self.p)

    def inverse(self) -> FCoeff:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FCoeff(pow(self.value, -1, self.p), self.p)


@dataclass(frozen=True)
class _ModMatrix:
    p: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    exponent = 1

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        q = self.modulus
        object.__setattr__(self, "entries", tuple(x % q for x in self.entries))

    @property
    def modulus(self) -> int:
        return self.p**self.exponent

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None):
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(p, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, p: int, n: int):
        return cls(p, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int):
        return cls(p, rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self):
        t = [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]
        return type(self).from_rows(self.p, t, self.rows)

    def __matmul__(self, other):
        if type(other) is not type(self) or other.p != self.p:
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.tolist(), other.tolist()
        q = self.modulus
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) % q for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return type(self).from_rows(self.p, out, other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.cols} columns")
        q = self.modulus
        c = self.cols
        e = self.entries
        return tuple(sum(e[i * c + j] * vec[j] for j in range(c)) % q for i in range(self.rows))


class GMatrix(_ModMatrix):
    """Dense matrix over Z/p^2."""

    exponent = 2


class FMatrix(_ModMatrix):
    """Dense matrix over Z/p."""

    exponent = 1

    def packed_rows(self) -> list[int]:
        """Rows as bitsets (p = 2 only); column j is bit j."""
        if self.p != 2:
            raise ValueError("bit packing needs p = 2")
        c = self.cols
        return [
            sum(1 << j for j in range(c) if self.entries[i * c + j]) for i in range(self.rows)
        ]


# -- diagonalization over Z/p^e ---------------------------------------------


def diagonalize(
    rows: list[list[int]], ncols: int, p: int, e: int
) -> tuple[list[int], list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize a matrix over Z/p^e.

    Returns ``(vals, D, U, V)`` with ``U * M * V = D`` and ``vals`` the
    p-adic valuations of the nonzero diagonal entries in order (each pivot is
    exactly ``p**v``).  Units are used as pivots before p-divisible entries;
    ties go to the leftmost column, then the topmost row.
    """
    q = p**e
    m, n = len(rows), ncols
    a = [[x % q for x in r] for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vals: list[int] = []
    k = 0
    for val in range(e):
        scale = p**val
        while k < min(m, n):
            pivot = None
            for j in range(k, n):
                for i in range(k, m):
                    x = a[i][j]
                    if x and x % scale == 0 and (x // scale) % p:
                        pivot = (i, j)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            i, j = pivot
            if i != k:
                a[i], a[k] = a[k], a[i]
                u[i], u[k] = u[k], u[i]
            if j != k:
                for row in a:
                    row[j], row[k] = row[k], row[j]
                for row in v:
                    row[j], row[k] = row[k], row[j]
            inv = pow(a[k][k] // scale, -1, q)
            if inv != 1:
                a[k] = [x * inv % q for x in a[k]]
                u[k] = [x * inv % q for x in u[k]]
            prow, urow = a[k], u[k]
            for i2 in range(m):
                c = a[i2][k] // scale if i2 != k else 0
                if c:
                    a[i2] = [(x - c * y) % q for x, y in zip(a[i2], prow)]
                    u[i2] = [(x - c * y) % q for x, y in zip(u[i2], urow)]
            for j2 in range(n):
                c = prow[j2] // scale if j2 != k else 0
                if c:
                    for row in a:
                        row[j2] = (row[j2] - c * row[k]) % q
                    for row in v:
                        row[j2] = (row[j2] - c * row[k]) % q
            vals.append(val)
            k += 1
    return vals, a, u, v


def g_diagonalize(m: GMatrix) -> tuple[GMatrix, GMatrix, GMatrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` over Z/p^2.

    ``D`` is diagonal with entries 1, then p, then 0.
    """
    _, d, u, v = diagonalize(m.tolist(), m.cols, m.p, 2)
    return (
        GMatrix.from_rows(m.p, d, m.cols),
        GMatrix.from_rows(m.p, u, m.rows),
        GMatrix.from_rows(m.p, v, m.cols),
    )


def invert(m: GMatrix) -> GMatrix:
    """Inverse of a square matrix over Z/p^2 (raises if singular)."""
    n = m.rows
    if m.cols != n:
        raise DimensionError("only square matrices are invertible")
    vals, _, u, v = diagonalize(m.tolist(), n, m.p, 2)
    if len(vals) != n or any(vals):
        raise ZeroDivisionError("matrix is not invertible over Z/p^2")
    # U M V = I  =>  M^-1 = V U
    return GMatrix.from_rows(m.p, v, n) @ GMatrix.from_rows(m.p, u, n)


def span_length(columns: Iterable[Sequence[int]], dim: int, p: int, e: int) -> int:
    """log_p of the order of the Z/p^e-submodule spanned by ``columns`` in (Z/p^e)^dim."""
    cols = [list(c) for c in columns]
    if not cols or dim == 0:
        return 0
    rows = [[c[i] for c in cols] for i in range(dim)]
    vals, *_ = diagonalize(rows, len(cols), p, e)
    return sum(e - v for v in vals)


def kernel_generators(rows: list[list[int]], ncols: int, p: int, e: int) -> list[list[int]]:
    """Generators (as columns) of ``{x : M x = 0}`` over Z/p^e."""
    vals, _, _, v = diagonalize(rows, ncols, p, e)
    gens = []
    for j in range(ncols):
        col = [v[i][j] for i in range(ncols)]
        if j < len(vals):
            mult = p ** (e - vals[j])
            if mult == p**e:
                continue
            col = [x * mult % p**e for x in col]
        gens.append(col)
    return gens


# -- linear algebra over F_p --------------------------------------------------


def _rref_mod(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    work = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(work):
            break
        r = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if r is None:
            continue
        work[rank], work[r] = work[r], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [x * inv % p for x in work[rank]]
        prow = work[rank]
        for i in range(len(work)):
            c = work[i][col]
            if i != rank and c:
                work[i] = [(x - c * y) % p for x, y in zip(work[i], prow)]
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def _rref(m: FMatrix) -> tuple[list[list[int]], list[int]]:
    if m.p == 2:
        rows, pivots = kernels.rref(m.packed_rows(), m.cols)
        return [[row >> j & 1 for j in range(m.cols)] for row in rows], pivots
    return _rref_mod(m.tolist(), m.cols, m.p)


def f_rank_kernel(m: FMatrix) -> tuple[int, list[tuple[int, ...]]]:
    """Rank of ``m`` and a basis of its right kernel.

    One kernel vector per non-pivot column ``j`` of the reduced row echelon
    form, in increasing ``j``: it has a 1 at ``j`` and the negated column
    entries at the pivot positions.
    """
    rref, pivots = _rref(m)
    pivset = set(pivots)
    basis = []
    for j in range(m.cols):
        if j in pivset:
            continue
        vec = [0] * m.cols
        vec[j] = 1
        for row, piv in zip(rref, pivots):
            vec[piv] = -row[j] % m.p
        basis.append(tuple(vec))
    return len(pivots), basis


def f_solve(m: FMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Some ``x`` with ``m x = b``, or ``None`` when there is none.

    Free variables are set to zero, so the answer is the first solution in
    echelon order.
    """
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    aug = [row + [b[i] % m.p] for i, row in enumerate(m.tolist())]
    if m.p == 2:
        packed = [sum(1 << j for j, x in enumerate(r) if x) for r in aug]
        red, pivots = kernels.rref(packed, m.cols + 1)
        rref = [[row >> j & 1 for j in range(m.cols + 1)] for row in red]
    else:
        rref, pivots = _rref_mod(aug, m.cols + 1, m.p)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for row, piv in zip(rref, pivots):
        x[piv] = row[m.cols]
    return tuple(x)
