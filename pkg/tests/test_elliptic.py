import random

import pytest
from hypothesis import given, strategies as st

from ribetor.elliptic import (
    PRESETS,
    Curve,
    basis_degrees,
    count_points_base,
    group_law,
    naf,
    order_over_extension,
    preset_curve,
    torsion_basis,
    torsion_point,
    trace_power,
)
from ribetor.errors import BadCharacteristic, NotFound, NotOnCurve
from ribetor.finite_field import mult_order
from ribetor.weil_pairing import weil_en_miller

CURVES = [(151, 6, 2), (241, 0, 2), (277, 1, 0), (71, 3, 1), (101, 2, 3)]


def brute_count(p, a4, a6):
    """#E(F_p) from all pairs (x, y)."""
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    return 1 + sum(squares.get((x**3 + a4 * x + a6) % p, 0) for x in range(p))


@pytest.mark.parametrize("coeffs", CURVES)
def test_point_count_against_pairs(coeffs):
    E = Curve(*coeffs)
    assert count_points_base(E) == brute_count(*coeffs)
    assert E.order() == brute_count(*coeffs)


@pytest.mark.parametrize("p,a4,a6,k", [(7, 1, 3, 2), (11, 2, 5, 3), (13, 0, 2, 2), (5, 1, 1, 4)])
def test_extension_order_by_enumeration(p, a4, a6, k):
    E = Curve(p, a4, a6)
    assert order_over_extension(E, k) == len(E.base_change(k).points())


def test_reference_traces():
    assert Curve(151, 6, 2).trace == 9
    assert preset_curve("j0").trace == 17
    assert preset_curve("j1728").trace == 18
    assert trace_power(9, 151, 0) == 2
    assert trace_power(9, 151, 2) == 81 - 2 * 151


def point_strategy(coeffs=st.sampled_from(CURVES)):
    @st.composite
    def strat(draw):
        E = Curve(*draw(coeffs))
        rng = random.Random(draw(st.integers(0, 2**32)))
        return E, E.random_point(rng), E.random_point(rng), E.random_point(rng)

    return strat()


@given(point_strategy())
def test_group_law(data):
    E, P, Q, R = data
    O = E.infinity
    assert E.is_on_curve(P + Q)
    assert P + Q == Q + P
    assert (P + Q) + R == P + (Q + R)
    assert P + O == P
    assert P + (-P) == O
    assert P - P == O
    assert group_law(P, Q) == P + Q
    assert group_law(P, op="neg") == -P
    assert group_law(P, op="scalar_mul", m=5) == P + P + P + P + P


@given(point_strategy(), st.integers(-200, 200), st.integers(-200, 200))
def test_scalar_multiplication(data, a, b):
    E, P, _, _ = data
    assert E.mul(a + b, P) == E.mul(a, P) + E.mul(b, P)
    assert E.mul(a * b, P) == E.mul(a, E.mul(b, P))
    assert E.mul(E.order(), P) == E.infinity


@given(st.integers(0, 10**6))
def test_naf(m):
    digits = naf(m)
    assert sum(d * 2**i for i, d in enumerate(digits)) == m
    assert all(d in (-1, 0, 1) for d in digits)
    assert all(not (digits[i] and digits[i + 1]) for i in range(len(digits) - 1))


def test_extension_points_and_lift():
    E = Curve(151, 6, 2)
    E4 = E.base_change(4)
    P = E.random_point(random.Random(3))
    L = E4.lift(P)
    assert E4.is_on_curve(L)
    assert E4.mul(E.order(), L) == E4.infinity
    with pytest.raises(NotOnCurve):
        E.point(1, 1)
    with pytest.raises(ValueError):
        Curve(7, 0, 0)


@pytest.mark.parametrize("coeffs,n", [((151, 6, 2), 5), ((241, 0, 2), 5), ((277, 1, 0), 7),
                                      ((71, 3, 1), 9)])
def test_torsion_point_exact_order(coeffs, n):
    E = Curve(*coeffs)
    P, F = torsion_point(E, n, seed=1)
    Ek = P.curve
    assert Ek.mul(n, P) == Ek.infinity
    assert all(Ek.mul(n // r, P) != Ek.infinity for r in (3, 5, 7) if n % r == 0)
    assert order_over_extension(E, F.k) % n == 0


@pytest.mark.parametrize("coeffs,n,k", [((151, 6, 2), 3, 4), ((151, 6, 2), 5, 3),
                                        ((241, 0, 2), 5, 1), ((277, 1, 0), 7, 3)])
def test_torsion_basis_is_certified(coeffs, n, k):
    E = Curve(*coeffs)
    assert basis_degrees(E, n)[0] == k
    P, Q, F = torsion_basis(E, n, seed=2)
    assert F.k == k
    assert mult_order(weil_en_miller(n, P, Q)) == n


def test_torsion_errors():
    E = Curve(101, 2, 3)
    with pytest.raises(NotFound):
        torsion_basis(E, 7)
    with pytest.raises(BadCharacteristic):
        torsion_point(Curve(7, 1, 3), 7)
    with pytest.raises(ValueError):
        torsion_basis(E, 15)


def test_presets():
    assert preset_curve("j0").key == (PRESETS["j0"]["p"], 0, 2, 1)
    assert preset_curve("j1728").key == (277, 1, 0, 1)
    assert preset_curve("j0", 241, 5).a6 == 5
    with pytest.raises(ValueError):
        preset_curve("j0", 239)
    with pytest.raises(ValueError):
        preset_curve("j1728", 283)
    with pytest.raises(ValueError):
        preset_curve("j2")
