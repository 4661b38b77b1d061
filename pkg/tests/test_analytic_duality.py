from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ribetor.analytic.duality import (
    IntBlockMatrix,
    dual_blocks,
    f_complex,
    g_alpha_elements,
    heisenberg_element,
    identity,
    is_hodge_morphism,
    lambda_z,
    levi_element,
    mat_mul,
    polarization_maps,
    stabilizer_check,
    transpose,
    unipotent_alpha,
)
from ribetor.analytic.periods import SiegelPoint, TWO_PI_I, symplectic_form
from ribetor.errors import NotAMorphism

TAU_I = np.array([[1j]])
small = st.integers(-2, 2)


def cm_matrix(a, b):
    """[[a, b], [-b, a]] is a morphism at tau = i."""
    return IntBlockMatrix(((a, b), (-b, a)))


def test_validation_and_blocks():
    with pytest.raises(ValueError):
        IntBlockMatrix(((1, 2, 3),))
    f = IntBlockMatrix.from_flat(range(16), 2)
    assert f.d == 2
    A, B, C, D = f.blocks()
    assert A.tolist() == [[0, 1], [4, 5]] and D.tolist() == [[10, 11], [14, 15]]
    al = f.alpha_z
    assert al == transpose(al)
    T = f.tilde_alpha
    assert len(T) == 6 and T[0][5] == -1 and T[5][0] == -1


@given(small, small)
def test_cm_morphisms(a, b):
    f = cm_matrix(a, b)
    ok, res = is_hodge_morphism(f, TAU_I)
    assert ok and res < 1e-12
    # f_C = (b - i a) / (2 pi i)
    assert abs(f_complex(f, TAU_I)[0, 0] - (b - 1j * a) / TWO_PI_I) < 1e-12
    dz, dc = dual_blocks(f, TAU_I)
    assert dz.entries == tuple(tuple(-v for v in col) for col in zip(*f.entries))
    ddz, ddc = dual_blocks(dz, TAU_I)
    assert ddz == f
    assert np.allclose(ddc, f_complex(f, TAU_I))


def test_not_a_morphism():
    f = IntBlockMatrix(((1, 0), (0, 0)))
    assert not is_hodge_morphism(f, TAU_I)[0]
    with pytest.raises(NotAMorphism):
        dual_blocks(f, TAU_I)
    dz, _ = dual_blocks(f, TAU_I, check=False)
    assert dz.entries == ((-1, 0), (0, 0))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_polarization(d):
    pm = polarization_maps(SiegelPoint.random(np.random.default_rng(d), d))
    assert pm.self_dual and pm.antisymmetric
    assert pm.hodge_residual < 1e-10 and pm.inverse_residual < 1e-10
    assert lambda_z(d).neg_transpose() == lambda_z(d)


def test_g_alpha_elements_satisfy_definition():
    for vals in product((-1, 0, 1), repeat=4):
        f = IntBlockMatrix.from_flat(vals, 1)
        J = symplectic_form(1)
        al = np.array(f.alpha_z, dtype=float)
        elems = g_alpha_elements(f)
        assert ([[1, 0], [0, 1]], 1) in elems
        for g, mu in elems:
            G = np.array(g, dtype=float)
            assert np.array_equal(G.T @ J @ G, mu * J)
            assert np.array_equal(G @ al @ G.T, mu * al)


@given(st.lists(small, min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_stabilizer_products(vals, x):
    f = IntBlockMatrix.from_flat(vals, 1)
    u = unipotent_alpha(f, x)
    for g, mu in g_alpha_elements(f):
        ok, _ = stabilizer_check(mat_mul(u, levi_element(g, mu)), f)
        assert ok
    ok, res = stabilizer_check(u, f, tol=1e-12)
    assert ok and res == 0


def test_off_graph_heisenberg_is_not_a_stabilizer():
    f = IntBlockMatrix(((1, 0), (0, 0)))
    x = (1, 1)
    good = heisenberg_element(x, [2, 0], f.quad(x))
    assert stabilizer_check(good, f)[0]
    assert not stabilizer_check(heisenberg_element(x, [2, 0], f.quad(x) + 1), f)[0]
    assert not stabilizer_check(heisenberg_element(x, [1, 0], f.quad(x)), f)[0]
    assert stabilizer_check(identity(4), f)[0]
