"""Independent reference computations used by the tests.

Nothing here calls the elimination code under test: homology and splitting
are decided by enumerating group elements, word bases by enumerating token
sequences, and random complexes come with their homology known by
construction.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter

from hopalg.algebra import AlgebraElement, BigradedSet, DifferentialSpec, leibniz_extend
from hopalg.bigraded import BiDegree, BigradedChainComplex, Ring, Window

# -- small modules over Z/q ------------------------------------------------------------


def elements(rank: int, q: int):
    return itertools.product(range(q), repeat=rank)


def apply(mat, vec, q):
    return tuple(sum(r[j] * vec[j] for j in range(len(vec))) % q for r in mat)


def span(gens, rank, q):
    """All elements of the submodule generated by ``gens``."""
    out = {(0,) * rank}
    for g in gens:
        out = {tuple((a + c * b) % q for a, b in zip(x, g)) for x in out for c in range(q)}
    return out


def brute_homology(d_in, d_out, rank, ring: Ring) -> tuple[int, int]:
    """``(#Z/p, #Z/p^2)`` of ``ker d_out / im d_in`` by counting elements.

    ``d_in`` maps into this group (rank x k), ``d_out`` out of it (l x rank);
    ``None`` stands for a zero map.
    """
    q, p = ring.modulus, ring.p
    zero = (0,) * rank
    cycles = [v for v in elements(rank, q) if d_out is None or not any(apply(d_out, v, q))]
    if d_in is None or not d_in or not d_in[0]:
        bounds = {zero}
    else:
        cols = [tuple(row[j] for row in d_in) for j in range(len(d_in[0]))]
        bounds = span(cols, rank, q)
    log_h = round(math.log(len(cycles) // len(bounds), p))
    p_cycles = {tuple(p * a % q for a in v) for v in cycles}
    p_h = {tuple((a + b) % q for a, b in zip(x, y)) for x in p_cycles for y in bounds}
    b = round(math.log(len(p_h) // len(bounds), p))
    return log_h - 2 * b, b


def section_exists(c: BigradedChainComplex, b: BiDegree) -> bool:
    """Exhaustive search for a linear section of ``cok(d_{n+1}) -> im(d_n)``.

    A section is fixed by preimages ``x_j`` of the images ``d e_j`` of the
    basis; it is well defined iff every relation among the ``d e_j`` maps the
    chosen ``x_j`` into the boundaries.
    """
    ring = c.ring
    q = ring.modulus
    rank = c.group(b).rank
    below = c.group(BiDegree(b.degree, b.dimension - 1)).rank
    d = c.d(b) if below else None
    up = BiDegree(b.degree, b.dimension + 1)
    d_up = c.d(up) if c.group(up).rank else None
    bounds = {(0,) * rank}
    if d_up:
        bounds = span([tuple(r[j] for r in d_up) for j in range(len(d_up[0]))], rank, q)
    if d is None:
        return True
    images = [apply(d, tuple(int(i == j) for i in range(rank)), q) for j in range(rank)]
    pre = {y: [x for x in elements(rank, q) if apply(d, x, q) == y] for y in set(images)}
    relations = [
        cvec
        for cvec in elements(rank, q)
        if not any(
            sum(cvec[j] * images[j][i] for j in range(rank)) % q for i in range(below)
        )
    ]
    for choice in itertools.product(*[pre[y] for y in images]):
        ok = True
        for cvec in relations:
            v = tuple(sum(cvec[j] * choice[j][i] for j in range(rank)) % q for i in range(rank))
            if v not in bounds:
                ok = False
                break
        if ok:
            return True
    return False


# -- random complexes with known homology ------------------------------------------------


def random_invertible(n: int, ring: Ring, rng: random.Random):
    """Product of random elementary matrices (always invertible)."""
    q = ring.modulus
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            u = rng.choice([x for x in range(1, q) if x % ring.p])
            m[i] = [a * u % q for a in m[i]]
        else:
            c = rng.randrange(q)
            m[i] = [(a + c * b) % q for a, b in zip(m[i], m[j])]
    return m


def matmul(a, b, q):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % q for j in range(len(b[0]))] for i in range(len(a))]


def inverse(m, ring: Ring):
    """Inverse by brute-force Gauss-Jordan over Z/q with unit pivots."""
    q = ring.modulus
    n = len(m)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] % ring.p)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, q)
        a[col] = [x * inv % q for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def random_complex(ring: Ring, rng: random.Random, max_dim: int = 4, degrees: int = 2, pieces: int = 5):
    """A complex plus its homology ``{BiDegree: (n_p, n_p2)}`` known by construction.

    Each degree is a direct sum of pieces ``R`` (at k), ``R ->1 R`` and, over
    Z/p^2, ``R ->p R`` (from k+1 to k), followed by a random change of basis in
    every dimension.
    """
    q, p = ring.modulus, ring.p
    basis: dict[BiDegree, list[str]] = {}
    diff: dict[BiDegree, list[list[int]]] = {}
    expected: Counter = Counter()
    for n in range(degrees):
        slots: dict[int, int] = {}
        arrows: list[tuple[int, int, int, int]] = []  # (source dim, src idx, tgt idx, coeff)
        kinds = ["point", "iso"] + (["p"] if ring.exponent == 2 else [])
        for _ in range(rng.randrange(pieces + 1)):
            kind = rng.choice(kinds)
            k = rng.randrange(max_dim + 1 if kind == "point" else max_dim)
            if kind == "point":
                slots[k] = slots.get(k, 0) + 1
                key = "f" if ring.is_field else "p2"
                expected[(BiDegree(n, k), key)] += 1
            else:
                s = slots.get(k + 1, 0)
                t = slots.get(k, 0)
                slots[k + 1], slots[k] = s + 1, t + 1
                coeff = 1 if kind == "iso" else p
                arrows.append((k + 1, s, t, coeff))
                if kind == "p":
                    expected[(BiDegree(n, k), "p")] += 1
                    expected[(BiDegree(n, k + 1), "p")] += 1
        changes = {k: random_invertible(r, ring, rng) for k, r in slots.items()}
        for k, r in slots.items():
            basis[BiDegree(n, k)] = [f"e{n}_{k}_{i}" for i in range(r)]
        for k in slots:
            if k - 1 not in slots:
                continue
            raw = [[0] * slots[k] for _ in range(slots[k - 1])]
            for src_dim, s, t, coeff in arrows:
                if src_dim == k:
                    raw[t][s] = coeff
            # d' = A_{k-1} d A_k^{-1}
            conj = matmul(matmul(changes[k - 1], raw, q), inverse(changes[k], ring), q)
            diff[BiDegree(n, k)] = conj
    cx = BigradedChainComplex.free(ring, basis, diff, known=Window(degrees, max_dim + 2))
    homology = {}
    for (b, key), v in expected.items():
        a, c = homology.get(b, (0, 0))
        if key == "p2":
            c += v
        else:
            a += v
        homology[b] = (a, c)
    return cx, homology


# -- word bases -------------------------------------------------------------------------


def interleavings(e: dict[str, tuple[int, int]], b: tuple[int, int]) -> list[tuple]:
    """Token sequences over ``E`` and ``g(s,t) = [1]^s [p]_t`` of bidegree ``b``
    in which no two ``g`` tokens are adjacent.

    ``g(s,t)`` has degree ``s`` and dimension ``s + t``.
    """
    n, m = b
    tokens = [(x, bd) for x, bd in e.items()]
    tokens += [(("g", s, t), (s, s + t)) for s in range(n + 1) for t in range(m + 1) if s + t > 0]
    out = []

    def rec(seq, rn, rm, last_g):
        if rn == 0 and rm == 0:
            out.append(tuple(seq))
        for tok, (dn, dm) in tokens:
            if dn > rn or dm > rm or (dn, dm) == (0, 0):
                continue
            is_g = isinstance(tok, tuple)
            if is_g and last_g:
                continue
            rec(seq + [tok], rn - dn, rm - dm, is_g)

    rec([], n, m, False)
    return out


# -- random differential specs -------------------------------------------------------------


def random_spec(rng: random.Random, ring: Ring, levels: int = 3, per_level: int = 3):
    """Generators layered by dimension; each new one is a cycle or kills ``d w``.

    A generator ``z`` in dimension ``k + 1`` gets ``d z = d(w)`` for a random
    word ``w`` of dimension ``k + 1`` in earlier generators, or a random cycle
    at dimension ``k`` built as ``d`` of such a word.  ``d z`` is then a
    boundary in the free algebra, so ``d d z = 0`` as soon as ``d^2 = 0`` on
    earlier generators.
    """
    q = ring.modulus
    gens: list[tuple[str, tuple[int, int]]] = []
    values: dict[str, AlgebraElement] = {}
    for k in range(per_level):
        gens.append((f"a{k}", (rng.randint(1, 3), rng.randint(0, 1))))
    for lev in range(levels):
        current = BigradedSet.of(*gens)
        spec = DifferentialSpec(current, dict(values), q)
        for k in range(per_level):
            label = f"z{lev}_{k}"
            word = tuple(rng.choice(current.labels) for _ in range(rng.randint(1, 3)))
            bd = current.word_bidegree(word)
            if bd.dimension == 0 or rng.random() < 0.2:
                gens.append((label, (bd.degree + 1, bd.dimension + 1)))
                continue
            val = leibniz_extend(spec, AlgebraElement.word(word, q, rng.randrange(1, q)))
            gens.append((label, (bd.degree, bd.dimension)))
            # z has the bidegree of the word, d z = d(word)
            values[label] = val
    gset = BigradedSet.of(*gens)
    return DifferentialSpec(gset, values, q)


def random_word(rng: random.Random, gens: BigradedSet, max_len: int = 5) -> tuple[str, ...]:
    return tuple(rng.choice(gens.labels) for _ in range(rng.randint(0, max_len)))
