import random

import pytest
from hypothesis import given, strategies as st

from ribetor.elliptic import Curve, preset_curve
from ribetor.endomorphism import (
    FROB,
    I,
    OMEGA,
    EndoElement,
    Generator,
    alpha_of,
    direct_shape,
    endo_degree,
    endo_eval,
    endo_preimage,
    parse_endo,
    rosati,
)
from ribetor.errors import ConfigError, IncompatibleGenerator, UnsupportedShape

SETUPS = [
    ((151, 6, 2), FROB, 3),
    ((241, 0, 2), OMEGA, 2),
    ((241, 0, 2), FROB, 2),
    ((277, 1, 0), I, 2),
]


@st.composite
def endo_and_points(draw):
    coeffs, kind, k = draw(st.sampled_from(SETUPS))
    E = Curve(*coeffs)
    gen = Generator.for_curve(kind, E)
    Ek = E.base_change(k)
    rng = random.Random(draw(st.integers(0, 2**32)))
    ints = st.integers(-4, 4)
    phi = EndoElement(draw(ints), draw(ints), gen)
    psi = EndoElement(draw(ints), draw(ints), gen)
    return Ek, gen, phi, psi, Ek.random_point(rng), Ek.random_point(rng)


@given(endo_and_points())
def test_generator_relation(data):
    Ek, gen, _, _, P, _ = data
    gP = gen.apply(P)
    assert Ek.is_on_curve(gP)
    # g^2 = t g - n
    assert gen.apply(gP) == Ek.mul(gen.t, gP) - Ek.mul(gen.n, P)


@given(endo_and_points())
def test_evaluation_is_a_ring_map(data):
    Ek, _, phi, psi, P, Q = data
    assert endo_eval(phi * psi, P) == endo_eval(phi, endo_eval(psi, P))
    assert endo_eval(phi + psi, P) == endo_eval(phi, P) + endo_eval(psi, P)
    assert endo_eval(phi, P + Q) == endo_eval(phi, P) + endo_eval(phi, Q)


@given(endo_and_points())
def test_rosati_conjugate(data):
    Ek, _, phi, _, P, _ = data
    bar = rosati(phi)
    assert endo_eval(bar * phi, P) == Ek.mul(endo_degree(phi), P)
    assert phi + bar == EndoElement(phi.trace, 0, phi.gen)
    assert alpha_of(phi) == phi - bar
    assert rosati(bar) == phi
    assert endo_degree(phi) >= 0


def test_frobenius_fixes_base_points():
    E = Curve(151, 6, 2)
    pi = parse_endo("pi", E)
    rng = random.Random(0)
    for _ in range(10):
        P = E.random_point(rng)
        assert endo_eval(pi, P) == P
    assert endo_degree(pi) == 151
    assert endo_degree(pi - 1) == E.order()


def test_cm_degrees():
    E0 = preset_curve("j0")
    w = parse_endo("omega", E0)
    assert endo_degree(1 - w) == 3
    assert endo_degree(alpha_of(w)) == 3
    assert endo_degree(2 * w - 1) == 7
    E1 = preset_curve("j1728")
    i = parse_endo("i", E1)
    assert endo_degree(alpha_of(i)) == 4
    assert endo_degree(2 * i - 1) == 5


def test_direct_shape():
    E = Curve(151, 6, 2)
    pi = parse_endo("pi", E)
    assert direct_shape(pi) == (EndoElement(1, 0, pi.gen), 1)
    assert direct_shape(-(pi * pi))[1] == 2
    assert direct_shape(pi + 1) is None
    w = parse_endo("omega", preset_curve("j0"))
    assert direct_shape(w) == (w, 0)
    assert direct_shape(w * w)[1] == 0
    assert direct_shape(1 + 2 * w) is None


@pytest.mark.parametrize("text,coeffs,k", [("pi", (151, 6, 2), 3), ("-1*pi", (151, 6, 2), 4),
                                           ("omega", (241, 0, 2), 2), ("0-1*i", (277, 1, 0), 2)])
def test_preimage(text, coeffs, k):
    E = Curve(*coeffs)
    phi = parse_endo(text, E)
    Ek = E.base_change(k)
    rng = random.Random(5)
    for _ in range(5):
        P = Ek.random_point(rng)
        [(Z, mult)] = endo_preimage(phi, P)
        assert endo_eval(phi, Z) == P
        assert mult == endo_degree(phi)
    with pytest.raises(UnsupportedShape):
        endo_preimage(phi + 2, P)


def test_parse_endo():
    E = Curve(151, 6, 2)
    assert parse_endo("pi", E) == EndoElement(0, 1, Generator.for_curve(FROB, E))
    assert parse_endo("2-3*pi", E) == EndoElement(2, -3, Generator.for_curve(FROB, E))
    assert parse_endo(" 1 + pi ", E) == EndoElement(1, 1, Generator.for_curve(FROB, E))
    assert parse_endo("-pi", E).k == -1
    with pytest.raises(ConfigError):
        parse_endo("2", E)
    with pytest.raises(ConfigError):
        parse_endo("pi+pi", E)
    with pytest.raises(IncompatibleGenerator):
        parse_endo("omega", E)
    with pytest.raises(IncompatibleGenerator):
        parse_endo("i", preset_curve("j0"))


def test_generator_roots():
    w = Generator.for_curve(OMEGA, preset_curve("j0"))
    assert (w.root**2 + w.root + 1) % 241 == 0
    i = Generator.for_curve(I, preset_curve("j1728"))
    assert (i.root**2 + 1) % 277 == 0
    with pytest.raises(IncompatibleGenerator):
        w.apply(Curve(151, 6, 2).infinity.curve.random_point(random.Random(0)))
