"""The Ribet section in lattice coordinates, with exact torsion bookkeeping.

Over a point x of M_{1,2d}(R) (image x-bar in B_tau) the fiber extension is
(C / 2 pi i Z) x (R^{2d} / Z^{2d}) and the section is

    r_f(x-bar) = (2 pi i * x f_Z x^t,  alpha_Z x^t).

Everything here is carried in exact rationals: q = x f_Z x^t is the fiber
exponent (the fiber coordinate is 2 pi i q modulo 2 pi i Z) and alpha_Z x^t
the base column modulo Z^{2d}.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, gcd

import numpy as np

from ..errors import NotAMorphism
from ..numtheory import lcm
from .duality import is_hodge_morphism
from .periods import TWO_PI_I


def _frac_mod1(q):
    return q - floor(q)


def ribet_section_coords(f, tau, x, check=True):
    """(q, column) = (x f_Z x^t, alpha_Z x^t) in exact rationals."""
    x = [Fraction(c) for c in x]
    if len(x) != 2 * f.d:
        raise ValueError("x must have 2d entries")
    if check:
        ok, res = is_hodge_morphism(f, tau)
        if not ok:
            raise NotAMorphism(f"f_Z is not a morphism at tau (residual {res:.3g})")
    q = f.quad(x)
    al = f.alpha_z
    col = tuple(sum(al[i][j] * x[j] for j in range(len(x))) for i in range(len(x)))
    return q, col


@dataclass(frozen=True)
class TorsionReport:
    n: int
    order: int
    base_order: int
    n_times_exponent: Fraction
    divides_n2: bool


def ribet_torsion_verify(f, x, n):
    """Order of r_f(x-bar) in (Q/Z) x (Q^{2d}/Z^{2d}) and the exponent of n r_f."""
    x = [Fraction(c) for c in x]
    if n < 1 or any((n * c).denominator != 1 for c in x):
        raise ValueError("n x must be integral")
    q, col = ribet_section_coords(f, None, x, check=False)
    base_order = lcm(*(_frac_mod1(c).denominator for c in col)) if col else 1
    order = lcm(base_order, _frac_mod1(q).denominator)
    n_exp = _frac_mod1(n * q)
    return TorsionReport(n, order, base_order, n_exp, (n * n) % order == 0)


def lattice_weil_exponent(n, x, y):
    """Exponent of e_n(y, x) = exp(2 pi i n (x . y)) for x in B[n], y in A[n]."""
    return _frac_mod1(n * sum(Fraction(a) * Fraction(b) for a, b in zip(x, y)))


def f_apply(f, x):
    """f x^t: the image in A of the point x of B (exact)."""
    F = f.entries
    return tuple(sum(F[i][j] * Fraction(x[j]) for j in range(len(x))) for i in range(len(F)))


def find_order_n2_witness(f, n):
    """First y in (Z/n)^{2d} (lexicographic) with r_f(y/n) of order n^2, or None."""
    for y in product(range(n), repeat=2 * f.d):
        x = [Fraction(c, n) for c in y]
        if ribet_torsion_verify(f, x, n).order == n * n:
            return tuple(x)
    return None


def witness_guaranteed(f, n):
    """Sufficient condition for a witness: n odd and prime to det(alpha_Z)."""
    al = np.array(f.alpha_z, dtype=float)
    det = int(round(np.linalg.det(al)))
    return n % 2 == 1 and gcd(n, det) == 1


def orbit_sample(f, x, N, tau=None):
    """Reduced coordinates of k * r_f(x-bar) for k = 1..N.

    Entries of ``x`` may be Fractions (exact, periodic output) or floats.
    Each record is (k, fiber exponent in [0, 1), base column in [0, 1)^{2d});
    with ``tau`` the complex fiber coordinate 2 pi i q and the image
    (1_d  -tau) y of the base column in C^d are added.
    """
    exact = all(isinstance(c, (int, Fraction)) for c in x)
    if exact:
        q, col = ribet_section_coords(f, None, x, check=False)
    else:
        xv = np.asarray(x, float)
        F = f.array()
        q = float(xv @ F @ xv)
        col = tuple(np.array(f.alpha_z, dtype=float) @ xv)
    out = []
    d = f.d
    for k in range(1, N + 1):
        fib = _frac_mod1(k * q) if exact else (k * q) % 1.0
        base = tuple(_frac_mod1(k * c) if exact else (k * c) % 1.0 for c in col)
        rec = {"k": k, "fiber": fib, "base": base}
        if tau is not None:
            yv = np.array([float(c) for c in base])
            rec["fiber_c"] = complex(TWO_PI_I * float(fib))
            rec["base_c"] = tuple(complex(c) for c in (yv[:d] - np.asarray(tau) @ yv[d:]))
        out.append(rec)
    return out


__all__ = [
    "ribet_section_coords",
    "TorsionReport",
    "ribet_torsion_verify",
    "lattice_weil_exponent",
    "f_apply",
    "find_order_n2_witness",
    "witness_guaranteed",
    "orbit_sample",
]
