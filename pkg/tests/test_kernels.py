import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopalg import _f2_py, kernels


def _span(rows):
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


@given(st.integers(0, 70), st.lists(st.integers(min_value=0), max_size=12))
@settings(max_examples=200, deadline=None)
def test_python_rref_is_reduced_and_spans(ncols, raw):
    rows = [r & ((1 << ncols) - 1) for r in raw]
    red, piv = _f2_py.rref(rows, ncols)
    assert len(red) == len(piv)
    assert piv == sorted(piv)
    for i, (row, pc) in enumerate(zip(red, piv)):
        assert (row & -row).bit_length() - 1 == pc
        for j, other in enumerate(red):
            if j != i:
                assert not other >> pc & 1
    if len(rows) <= 10:
        assert _span(red) == _span(rows)


@given(st.integers(0, 40), st.lists(st.integers(min_value=0), max_size=10))
@settings(max_examples=200, deadline=None)
def test_left_kernel(ncols, raw):
    rows = [r & ((1 << ncols) - 1) for r in raw]
    ker = _f2_py.left_kernel(rows, ncols)
    rank = len(_f2_py.rref(rows, ncols)[0])
    assert len(ker) == len(rows) - rank
    for k in ker:
        acc = 0
        for i in range(len(rows)):
            if k >> i & 1:
                acc ^= rows[i]
        assert acc == 0
    assert len(_f2_py.rref(ker, len(rows))[0]) == len(ker)


@pytest.mark.skipif("compiled" not in kernels.available(), reason="extension not built")
def test_backends_agree():
    from hopalg import _f2

    rng = random.Random(11)
    for _ in range(300):
        ncols = rng.randrange(0, 200)
        rows = [rng.getrandbits(ncols) if ncols else 0 for _ in range(rng.randrange(0, 40))]
        assert _f2.rref(rows, ncols) == _f2_py.rref(rows, ncols)
        assert _f2.left_kernel(rows, ncols) == _f2_py.left_kernel(rows, ncols)


def test_backend_switching():
    before = kernels.backend()
    with kernels.using("python"):
        assert kernels.backend() == "python"
    assert kernels.backend() == before
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_reduce():
    red, piv = kernels.rref([0b110, 0b011], 3)
    assert kernels.reduce(0b101, red, piv) == 0
    assert kernels.reduce(0b100, red, piv) != 0
