"""One test per acceptance criterion; each prints a PASS line with its runtime."""

import random
import time
from contextlib import contextmanager

import pytest

from hopalg.algebra import AlgebraElement, check_central, leibniz_extend, verify_sigma_structure
from hopalg.bigraded import BiDegree, Ring, cotruncate, truncate
from hopalg.cli import main
from hopalg.gstar import bstar_basis, gstar_algebra
from hopalg.resolution import compare_charts, ext_chart, oracle_chart, resolve
from hopalg.steenrod import (
    SteenrodElement,
    adem_normalize,
    admissible_basis,
    is_admissible,
    milnor_dimension,
    steenrod_multiply,
)

from oracles import interleavings, random_complex, random_spec, random_word
from test_gstar import SKEL, TEST_E

B = BiDegree


@contextmanager
def criterion(n, budget):
    t0 = time.perf_counter()
    yield
    dt = time.perf_counter() - t0
    print(f"\ncriterion {n}: PASS in {dt:.2f}s (budget {budget}s)")
    assert dt < budget, f"criterion {n} took {dt:.1f}s"


def test_criterion_1_gstar_structure():
    with criterion(1, 5):
        for p in (2, 3):
            g = gstar_algebra(p, 14)
            rep = verify_sigma_structure(g, B(12, 12))
            assert rep.ok, rep.failures()
            assert check_central(g.gen("[1]"), g, B(12, 12))[0]
            for n in range(13):
                nonzero = {b: h for b, h in rep.homology.items() if b.dimension == n and not h.is_zero}
                assert list(nonzero) == [B(n, n)]
                h = nonzero[B(n, n)]
                assert (h.n_p, h.n_p2) == (1, 0)


def test_criterion_2_steenrod_dimensions():
    with criterion(2, 5):
        for n in range(31):
            assert len(admissible_basis(n)) == milnor_dimension(n)


def test_criterion_3_adem_engine():
    with criterion(3, 30):
        assert not adem_normalize((1, 1))
        assert adem_normalize((2, 2)) == SteenrodElement.sq(3, 1)
        assert adem_normalize((2, 3)) == SteenrodElement.sq(5) + SteenrodElement.sq(4, 1)
        rng = random.Random(2024)

        def word(limit):
            w, left = [], rng.randint(0, limit)
            while left:
                i = rng.randint(1, left)
                w.append(i)
                left -= i
            return w

        for _ in range(1000):
            w = word(20)
            x = adem_normalize(w)
            assert x.degree == sum(w)
            assert all(is_admissible(m) and sum(m) == sum(w) for m in x.monomials())
            again = SteenrodElement.zero(sum(w))
            for m in x.monomials():
                again = again + adem_normalize(m)
            assert again == x
        for _ in range(500):
            a, b, c = (adem_normalize(word(8)) for _ in range(3))
            assert steenrod_multiply(steenrod_multiply(a, b), c) == steenrod_multiply(
                a, steenrod_multiply(b, c)
            )


def test_criterion_4_ext_chart_vs_oracle():
    with criterion(4, 300):
        ch = ext_chart(resolve(None, 8, 13))
        assert compare_charts(ch.restrict(5, 13), oracle_chart(5, 13)) == []
        assert all(ch.dim(s, s) == 1 for s in range(9))
        assert {t for t in range(14) if ch.dim(1, t)} == {1, 2, 4, 8}
        assert all(ch.dim(1, t) <= 1 for t in range(14))


def test_criterion_5_truncation_laws():
    with criterion(5, 30):
        for seed in range(200):
            rng = random.Random(seed)
            ring = Ring.F(2) if seed % 2 else Ring.G(2)
            c, known = random_complex(ring, rng)
            for m in range(4):
                tr, co = truncate(c, m), cotruncate(c, m)
                for n in range(2):
                    for k in range(6):
                        want = known.get(B(n, k), (0, 0))
                        assert (c.homology_at(B(n, k)).n_p, c.homology_at(B(n, k)).n_p2) == want
                        if k <= m:
                            h = tr.homology_at(B(n, k))
                            assert (h.n_p, h.n_p2) == want
                        else:
                            h = co.homology_at(B(n, k))
                            assert (h.n_p, h.n_p2) == want


def test_criterion_6_leibniz_d_squared():
    with criterion(6, 30):
        rings = [Ring.G(2), Ring.G(3), Ring.F(2), Ring.G(5)]
        for seed in range(100):
            rng = random.Random(seed)
            ring = rings[seed % len(rings)]
            spec = random_spec(rng, ring)
            for label in spec.generators.labels:
                x = AlgebraElement.word((label,), ring.modulus)
                assert not leibniz_extend(spec, leibniz_extend(spec, x))
            for _ in range(100):
                w = random_word(rng, spec.generators)
                x = AlgebraElement.word(w, ring.modulus, rng.randrange(1, ring.modulus))
                assert not leibniz_extend(spec, leibniz_extend(spec, x))


def test_criterion_7_bstar_word_basis():
    with criterion(7, 10):
        for n in range(7):
            for m in range(4):
                assert len(bstar_basis(SKEL, B(n, m))) == len(interleavings(TEST_E, (n, m)))


def test_criterion_8_determinism(tmp_path, capsys):
    with criterion(8, 120):
        outputs = []
        for i, threads in enumerate(["1", "1", "1", "4"]):
            path = tmp_path / f"chart{i}.json"
            code = main(["resolve", "--max-s", "5", "--max-t", "13", "--threads", threads, "--out", str(path)])
            assert code == 0
            outputs.append(path.read_bytes())
        capsys.readouterr()
        assert len(set(outputs)) == 1
