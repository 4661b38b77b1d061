from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ribetor.analytic.duality import IntBlockMatrix
from ribetor.analytic.ribet import (
    f_apply,
    find_order_n2_witness,
    lattice_weil_exponent,
    orbit_sample,
    ribet_section_coords,
    ribet_torsion_verify,
    witness_guaranteed,
)
from ribetor.errors import NotAMorphism

F_RANK1 = IntBlockMatrix(((1, 0), (0, 0)))


def test_worked_example():
    x = (Fraction(1, 2), Fraction(0))
    q, col = ribet_section_coords(F_RANK1, None, x, check=False)
    assert q == Fraction(1, 4)
    assert col == (1, 0)
    rep = ribet_torsion_verify(F_RANK1, x, 2)
    assert rep.order == 4 and rep.base_order == 1 and rep.divides_n2
    assert rep.n_times_exponent == Fraction(1, 2)


def test_check_rejects_non_morphism():
    with pytest.raises(NotAMorphism):
        ribet_section_coords(F_RANK1, np.array([[1j]]), (0, 0))
    with pytest.raises(ValueError):
        ribet_section_coords(F_RANK1, None, (0,), check=False)
    with pytest.raises(ValueError):
        ribet_torsion_verify(F_RANK1, (Fraction(1, 3), 0), 2)


@st.composite
def f_and_x(draw):
    d = draw(st.sampled_from([1, 2]))
    f = IntBlockMatrix.from_flat([draw(st.integers(-3, 3)) for _ in range(4 * d * d)], d)
    n = draw(st.integers(1, 9))
    x = tuple(Fraction(draw(st.integers(0, n - 1)), n) for _ in range(2 * d))
    return f, x, n


@given(f_and_x())
def test_order_divides_n_squared(data):
    f, x, n = data
    rep = ribet_torsion_verify(f, x, n)
    assert (n * n) % rep.order == 0
    q = f.quad(list(x))
    assert rep.n_times_exponent == (n * q) % 1
    assert rep.n_times_exponent == lattice_weil_exponent(n, x, f_apply(f, x))
    # the order is the least k with k q and k alpha x^t integral
    k = next(k for k in range(1, n * n + 1)
             if (k * q).denominator == 1 and all((k * c).denominator == 1
                                                 for c in ribet_section_coords(f, None, x, False)[1]))
    assert k == rep.order


@pytest.mark.parametrize("n", [3, 5, 7])
def test_witnesses(n):
    f = IntBlockMatrix(((1, 1), (0, 1)))  # alpha = [[2, 1], [1, 2]], det 3
    assert witness_guaranteed(f, n) == (n != 3)
    w = find_order_n2_witness(f, n)
    assert w is not None
    assert ribet_torsion_verify(f, w, n).order == n * n


def test_no_witness_when_alpha_vanishes():
    f = IntBlockMatrix(((0, 1), (-1, 0)))  # antisymmetric: alpha = 0
    assert find_order_n2_witness(f, 3) is None
    assert not witness_guaranteed(f, 3)


def test_orbit_sample():
    x = (Fraction(1, 5), Fraction(2, 5))
    recs = orbit_sample(F_RANK1, x, 25)
    assert [r["k"] for r in recs] == list(range(1, 26))
    assert recs[-1]["fiber"] == 0 and all(c == 0 for c in recs[-1]["base"])
    assert recs[0]["fiber"] == Fraction(1, 25)
    f = IntBlockMatrix(((1, 1), (-1, 1)))
    recs_c = orbit_sample(f, x, 3, tau=np.array([[1j]]))
    assert "fiber_c" in recs_c[0] and len(recs_c[0]["base_c"]) == 1
    floats = orbit_sample(F_RANK1, (0.2, 0.4), 3)
    assert abs(floats[0]["fiber"] - 0.04) < 1e-12
