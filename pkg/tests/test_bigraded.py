import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopalg.bigraded import (
    BiDegree,
    BigradedChainComplex,
    ComplexError,
    FreeBigradedModule,
    HomologyGroup,
    Ring,
    Window,
    WindowTooLarge,
    cotruncate,
    homology,
    split_check,
    suspend,
    truncate,
)

from oracles import brute_homology, random_complex, section_exists

B = BiDegree


def gchain(p: int, length: int) -> BigradedChainComplex:
    """G <-p- G <-p- ... in degree 0, dimensions 0..length-1."""
    basis = {B(0, k): [f"e{k}"] for k in range(length)}
    diff = {B(0, k): [[p]] for k in range(1, length)}
    return BigradedChainComplex.free(Ring.G(p), basis, diff, known=Window(0, length + 1))


def test_bidegree_arithmetic():
    assert B(1, 2) + B(3, 4) == B(4, 6)
    assert B(1, 2) - B(3, 4) == B(-2, -2)
    assert tuple(B(5, 6)) == (5, 6)


def test_d_squared_enforced():
    ring = Ring.F(2)
    basis = {B(0, 0): ["a"], B(0, 1): ["b"], B(0, 2): ["c"]}
    with pytest.raises(ComplexError):
        BigradedChainComplex.free(ring, basis, {B(0, 1): [[1]], B(0, 2): [[1]]})
    with pytest.raises(ComplexError):
        BigradedChainComplex.free(ring, basis, {B(0, 1): [[1, 1]]})


def test_nonnegative_module():
    with pytest.raises(ValueError):
        FreeBigradedModule(Ring.F(2), (("x", B(-1, 0)),))
    with pytest.raises(ValueError):
        FreeBigradedModule(Ring.F(2), (("x", B(0, 0)), ("x", B(1, 0))))


def test_gchain_homology():
    c = gchain(2, 6)
    h = homology(c, Window(0, 4))
    assert (h[B(0, 0)].n_p, h[B(0, 0)].n_p2) == (1, 0)
    for k in range(1, 5):
        assert h[B(0, k)].is_zero
    assert str(h[B(0, 0)]) == "Z/2"


def test_window_guard():
    c = gchain(3, 3)
    with pytest.raises(WindowTooLarge):
        c.homology_at(B(0, 7))
    assert c.homology_at(B(-1, 0)).is_zero


def test_suspend_examples():
    c = BigradedChainComplex.free(
        Ring.G(3), {B(0, 0): ["a"], B(0, 1): ["b"]}, {B(0, 1): [[1]]}
    )
    same = suspend(c, 0, 0)
    assert same.groups == c.groups and same.differential == c.differential
    s = suspend(c, 2, 3)
    assert s.d(B(2, 4)) == ((8,),)
    f2 = BigradedChainComplex.free(Ring.F(2), {B(0, 0): ["a"], B(0, 1): ["b"]}, {B(0, 1): [[1]]})
    assert suspend(f2, 0, 1).d(B(0, 2)) == ((1,),)


@given(st.integers(0, 200), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_suspend_composes(seed, r1, s1, r2, s2):
    rng = random.Random(seed)
    c, _ = random_complex(Ring.G(3), rng, max_dim=3)
    a = suspend(suspend(c, r1, s1), r2, s2)
    b = suspend(c, r1 + r2, s1 + s2)
    assert a.groups == b.groups and a.differential == b.differential


def test_truncate_examples():
    c = gchain(2, 6)
    t0 = truncate(c, 0)
    assert set(t0.groups) == {B(0, 0)}
    assert t0.group(B(0, 0)).cyclic_type(c.ring) == (1, 0)
    assert t0.homology_at(B(0, 0)) == HomologyGroup(2, 1, 0)
    # already concentrated in dimensions <= 5
    t5 = truncate(gchain(2, 6), 6)
    assert all(t5.homology_at(B(0, k)) == c.homology_at(B(0, k)) for k in range(6))


def test_cotruncate_examples():
    c = gchain(2, 6)
    assert cotruncate(c, 0).groups == c.groups
    ct = cotruncate(c, 1)
    assert B(0, 0) not in ct.groups
    # ker(p on Z/4) = 2Z/4, of order 2
    assert ct.group(B(0, 1)).length(c.ring) == 1


@pytest.mark.parametrize("seed", range(40))
def test_truncation_laws(seed):
    rng = random.Random(seed)
    ring = [Ring.F(2), Ring.G(2), Ring.G(3)][seed % 3]
    c, known = random_complex(ring, rng)
    for m in range(4):
        tr, co = truncate(c, m), cotruncate(c, m)
        for n in range(2):
            for k in range(6):
                want = known.get(B(n, k), (0, 0))
                if k <= m:
                    h = tr.homology_at(B(n, k))
                    assert (h.n_p, h.n_p2) == want
                else:
                    assert tr.homology_at(B(n, k)).is_zero
                if k >= m + 1:
                    h = co.homology_at(B(n, k))
                    assert (h.n_p, h.n_p2) == want


@pytest.mark.parametrize("seed", range(30))
def test_homology_against_brute_force(seed):
    rng = random.Random(100 + seed)
    ring = Ring.F(2) if seed % 2 else Ring.G(2)
    q = ring.modulus
    ranks = [rng.randint(1, 3) for _ in range(3)]
    d1 = [[rng.randrange(q) for _ in range(ranks[1])] for _ in range(ranks[0])]
    # d2 with columns inside ker d1, found by enumeration
    from oracles import apply, elements

    kernel = [v for v in elements(ranks[1], q) if not any(apply(d1, v, q))]
    cols = [rng.choice(kernel) for _ in range(ranks[2])]
    d2 = [[cols[j][i] for j in range(ranks[2])] for i in range(ranks[1])]
    basis = {B(0, k): [f"e{k}{i}" for i in range(r)] for k, r in enumerate(ranks)}
    c = BigradedChainComplex.free(ring, basis, {B(0, 1): d1, B(0, 2): d2}, Window(0, 4))
    expect = [
        brute_homology(d1, None, ranks[0], ring),
        brute_homology(d2, d1, ranks[1], ring),
        brute_homology(None, d2, ranks[2], ring),
    ]
    for k in range(3):
        h = c.homology_at(B(0, k))
        assert (h.n_p, h.n_p2) == expect[k]


def test_exact_cone_has_no_homology():
    rng = random.Random(5)
    for ring in (Ring.F(2), Ring.G(2), Ring.G(5)):
        n = 3
        q = ring.modulus
        basis = {B(0, 0): ["a0", "a1", "a2"], B(0, 1): ["b0", "b1", "b2"]}
        from oracles import random_invertible

        iso = random_invertible(n, ring, rng)
        c = BigradedChainComplex.free(ring, basis, {B(0, 1): iso}, Window(0, 3))
        assert all(c.homology_at(B(0, k)).is_zero for k in range(3))
        assert q


def test_split_examples():
    ring = Ring.G(2)
    ident = BigradedChainComplex.free(ring, {B(0, 0): ["a"], B(0, 1): ["b"]}, {B(0, 1): [[1]]}, Window(0, 3))
    assert split_check(ident, 1)
    assert split_check(gchain(2, 5), 1) and split_check(gchain(3, 5), 2)
    # G -p-> G with nothing above: 0 -> Z/p -> Z/p^2 -> Z/p -> 0
    lone = BigradedChainComplex.free(ring, {B(0, 0): ["a"], B(0, 1): ["b"]}, {B(0, 1): [[2]]}, Window(0, 3))
    assert not split_check(lone, 1)
    assert not section_exists(lone, B(0, 1))
    # G + G -> G with d = (1, p): the unit kills the obstruction
    mixed = BigradedChainComplex.free(
        ring, {B(0, 0): ["a"], B(0, 1): ["b", "c"]}, {B(0, 1): [[1, 2]]}, Window(0, 3)
    )
    assert split_check(mixed, 1) == section_exists(mixed, B(0, 1)) is True


@pytest.mark.parametrize("seed", range(60))
def test_split_against_section_search(seed):
    rng = random.Random(seed)
    ring = Ring.G(2)
    q = 4
    from oracles import apply, elements

    r0, r1, r2 = rng.randint(1, 2), rng.randint(1, 2), rng.randint(0, 2)
    d1 = [[rng.randrange(q) for _ in range(r1)] for _ in range(r0)]
    kernel = [v for v in elements(r1, q) if not any(apply(d1, v, q))]
    basis = {B(0, 0): ["a0", "a1"][:r0], B(0, 1): ["b0", "b1"][:r1]}
    diff = {B(0, 1): d1}
    if r2:
        cols = [rng.choice(kernel) for _ in range(r2)]
        basis[B(0, 2)] = ["c0", "c1"][:r2]
        diff[B(0, 2)] = [[cols[j][i] for j in range(r2)] for i in range(r1)]
    c = BigradedChainComplex.free(ring, basis, diff, Window(0, 4))
    assert split_check(c, 1) == section_exists(c, B(0, 1))
