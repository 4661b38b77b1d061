import pytest
from hypothesis import given, strategies as st

from ribetor.elliptic import Curve, preset_curve, torsion_basis
from ribetor.endomorphism import EndoElement, Generator, endo_eval
from ribetor.errors import ExhaustedRetries
from ribetor.finite_field import mult_order
from ribetor.weil_pairing import check_adjoint, weil_en_divisor, weil_en_miller

J0 = preset_curve("j0")
BASIS5 = torsion_basis(J0, 5, seed=7)


def test_frozen_value():
    # e_5 on y^2 = x^3 + 2 over F_241 at fixed points; both routes agree
    E = J0
    P = E.point(16, 1)
    Q = E.point(78, 5)
    assert E.mul(5, P) == E.infinity and E.mul(5, Q) == E.infinity
    value = weil_en_miller(5, P, Q)
    assert value == weil_en_divisor(5, P, Q)
    assert value.c == (205,)
    assert mult_order(value) == 5


@st.composite
def pairs(draw):
    P, Q, F = BASIS5
    a, b, c, d = (draw(st.integers(0, 4)) for _ in range(4))
    E = P.curve
    return E.mul(a, P) + E.mul(b, Q), E.mul(c, P) + E.mul(d, Q), draw(st.integers(0, 2**32))


@given(pairs())
def test_routes_agree(data):
    X, Y, s = data
    assert weil_en_divisor(5, X, Y, s) == weil_en_miller(5, X, Y, s)


@given(pairs(), st.integers(0, 2**32))
def test_independent_of_ladder(data, s2):
    X, Y, s = data
    assert weil_en_miller(5, X, Y, s) == weil_en_miller(5, X, Y, s2)


@given(pairs(), pairs())
def test_bilinear_and_alternating(d1, d2):
    X, Y, s = d1
    Z, _, _ = d2
    e = lambda A, B: weil_en_miller(5, A, B, s)
    assert e(X + Z, Y) == e(X, Y) * e(Z, Y)
    assert e(X, X).c == (1,)
    assert e(X, Y) * e(Y, X) == X.curve.field.one()


def test_nondegenerate_and_galois():
    P, Q, F = BASIS5
    z = weil_en_miller(5, P, Q)
    assert mult_order(z) == 5
    # over F_241 the 5th roots of unity are fixed by Frobenius
    E = Curve(151, 6, 2)
    P3, Q3, F3 = torsion_basis(E, 5, seed=1)
    gen = Generator.for_curve("pi", E)
    pi = EndoElement(0, 1, gen)
    z3 = weil_en_miller(5, P3, Q3)
    assert weil_en_miller(5, endo_eval(pi, P3), endo_eval(pi, Q3)) == z3**151


@pytest.mark.parametrize("kind", ["pi", "omega"])
def test_adjoint(kind):
    P, Q, _ = BASIS5
    gen = Generator.for_curve(kind, J0)
    for m in range(-2, 3):
        for k in range(-2, 3):
            phi = EndoElement(m, k, gen)
            assert check_adjoint(5, phi, P, Q, seed=m * 7 + k)


def test_trivial_arguments_and_errors():
    P, Q, F = BASIS5
    E = P.curve
    assert weil_en_miller(5, E.infinity, Q) == F.one()
    assert weil_en_divisor(5, P, E.infinity) == F.one()
    with pytest.raises(ValueError):
        weil_en_miller(3, P, Q)
    trace = []
    weil_en_divisor(5, P, Q, seed=3, trace=trace)
    assert trace and 0 <= trace[0] < 64


def test_exhausted_ladder(monkeypatch):
    import ribetor.weil_pairing as wp

    monkeypatch.setattr(wp, "LADDER_STEPS", 0)
    P, Q, _ = BASIS5
    with pytest.raises(ExhaustedRetries):
        wp.weil_en_divisor(5, P, Q)
