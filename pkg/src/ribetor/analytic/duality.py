"""Integer block matrices f_Z, their duals, Hodge-morphism residuals and
the alpha-tilde tensor with its stabilizer test.

Exact work uses Python ints and Fractions in nested lists; floating work
uses numpy.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import NotAMorphism
from .periods import TWO_PI_I, SiegelPoint, symplectic_form

HODGE_TOL = 1e-10


# -- exact matrix helpers --------------------------------------------------------

def mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def scalar_mul(c, A):
    return [[c * a for a in row] for row in A]


@dataclass(frozen=True)
class IntBlockMatrix:
    """A 2d x 2d integer matrix f_Z = [[A, B], [C, D]] with d x d blocks."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if n % 2 or any(len(r) != n for r in rows):
            raise ValueError("f_Z must be a square matrix of even size")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_flat(cls, values, d):
        values = list(values)
        n = 2 * d
        if len(values) != n * n:
            raise ValueError(f"expected {n * n} entries for d = {d}")
        return cls(tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n)))

    @property
    def d(self):
        return len(self.entries) // 2

    def as_list(self):
        return [list(r) for r in self.entries]

    def array(self):
        return np.array(self.entries, dtype=float)

    def blocks(self):
        d = self.d
        F = self.array()
        return F[:d, :d], F[:d, d:], F[d:, :d], F[d:, d:]

    @property
    def alpha_z(self):
        F = self.as_list()
        return [[F[i][j] + F[j][i] for j in range(len(F))] for i in range(len(F))]

    @property
    def tilde_alpha(self):
        """[[0, 0, -1], [0, alpha_Z, 0], [-1, 0, 0]] of size 2d + 2."""
        n = 2 * self.d
        T = [[0] * (n + 2) for _ in range(n + 2)]
        T[0][n + 1] = -1
        T[n + 1][0] = -1
        al = self.alpha_z
        for i in range(n):
            for j in range(n):
                T[i + 1][j + 1] = al[i][j]
        return T

    def neg_transpose(self):
        return IntBlockMatrix(tuple(tuple(-v for v in col) for col in zip(*self.entries)))

    def is_antisymmetric(self):
        F = self.entries
        return all(F[i][j] == -F[j][i] for i in range(len(F)) for j in range(len(F)))

    def quad(self, x):
        """x f_Z x^t for a row x (exact)."""
        F = self.entries
        return sum(x[i] * F[i][j] * x[j] for i in range(len(F)) for j in range(len(F)))


def f_complex(f, tau):
    """f_C = (B - tau D) / (2 pi i)."""
    _, B, _, D = f.blocks()
    return (B - tau @ D) / TWO_PI_I


def is_hodge_morphism(f, tau, tol=HODGE_TOL):
    """Residual of 2 pi i f_C tau^t = A - tau C; returns (ok, residual)."""
    tau = tau.tau if isinstance(tau, SiegelPoint) else np.asarray(tau, complex)
    A, _, C, _ = f.blocks()
    res = float(np.max(np.abs(TWO_PI_I * f_complex(f, tau) @ tau.T - (A - tau @ C)), initial=0.0))
    return res <= tol, res


def dual_blocks(f, tau, tol=HODGE_TOL, check=True):
    """((f^vee)_Z, (f^vee)_C) = (-f_Z^t, (-C^t + tau D^t) / (2 pi i))."""
    tau = tau.tau if isinstance(tau, SiegelPoint) else np.asarray(tau, complex)
    if check:
        ok, res = is_hodge_morphism(f, tau, tol)
        if not ok:
            raise NotAMorphism(f"f_Z is not a morphism at tau (residual {res:.3g})")
    _, _, C, D = f.blocks()
    return f.neg_transpose(), (-C.T + tau @ D.T) / TWO_PI_I


def lambda_z(d):
    """(lambda_tau)_Z = [[0, 1_d], [-1_d, 0]]."""
    n = 2 * d
    M = [[0] * n for _ in range(n)]
    for i in range(d):
        M[i][d + i] = 1
        M[d + i][i] = -1
    return IntBlockMatrix(tuple(tuple(r) for r in M))


@dataclass(frozen=True)
class PolarizationMaps:
    lambda_c: np.ndarray  # v -> lambda_c @ v, realised as 2 pi i 1_d (transpose implied)
    lambda_z: IntBlockMatrix
    antisymmetric: bool
    self_dual: bool
    hodge_residual: float
    inverse_residual: float


def polarization_maps(tau):
    tau = tau if isinstance(tau, SiegelPoint) else SiegelPoint(tau)
    d = tau.d
    lz = lambda_z(d)
    lam_c = TWO_PI_I * np.eye(d)
    dual_z, _ = dual_blocks(lz, tau.tau, check=False)
    _, res = is_hodge_morphism(lz, tau.tau)
    # lambda_Z read as a map B -> A has complex part 1/(2 pi i): inverse of lambda_C
    inv_res = float(np.max(np.abs(f_complex(lz, tau.tau) @ lam_c - np.eye(d))))
    return PolarizationMaps(lam_c, lz, lz.is_antisymmetric(), dual_z == lz, res, inv_res)


# -- alpha-tilde and its stabilizer ------------------------------------------------

def unipotent_alpha(f, x):
    """[[1, x, x f x^t], [0, 1, alpha_Z x^t], [0, 0, 1]] in the basis 2 pi i e_0, e_1, ..."""
    n = 2 * f.d
    x = list(x)
    al = f.alpha_z
    col = [sum(al[i][j] * x[j] for j in range(n)) for i in range(n)]
    M = identity(n + 2)
    for j in range(n):
        M[0][j + 1] = x[j]
        M[j + 1][n + 1] = col[j]
    M[0][n + 1] = f.quad(x)
    return M


def levi_element(g, mu):
    """diag(mu, g, 1)."""
    n = len(g)
    M = identity(n + 2)
    M[0][0] = mu
    for i in range(n):
        for j in range(n):
            M[i + 1][j + 1] = g[i][j]
    return M


def heisenberg_element(x, y, z):
    """[[1, x, z], [0, 1, y], [0, 0, 1]] in the integral basis."""
    n = len(x)
    M = identity(n + 2)
    for j in range(n):
        M[0][j + 1] = x[j]
        M[j + 1][n + 1] = y[j]
    M[0][n + 1] = z
    return M


def stabilizer_check(p, f, tol=None):
    """p alpha~ p^t == mu(p) alpha~ with mu(p) = p[0][0].

    Exact for integer/Fraction entries; with ``tol`` the comparison is a
    floating residual test.  Returns (ok, residual).
    """
    T = f.tilde_alpha
    if tol is None:
        lhs = mat_mul(mat_mul(p, T), transpose(p))
        rhs = scalar_mul(p[0][0], T)
        return lhs == rhs, 0
    P = np.array(p, dtype=float)
    Ta = np.array(T, dtype=float)
    res = float(np.max(np.abs(P @ Ta @ P.T - P[0, 0] * Ta)))
    return res <= tol, res


def g_alpha_elements(f, bound=2):
    """Integer (g, mu) with g^t J g = mu J and g alpha g^t = mu alpha, |g_ij| <= bound.

    Exhaustive for d = 1; for larger d only signed permutation-type
    candidates together with +-1 are tried.
    """
    d = f.d
    n = 2 * d
    J = [[int(v) for v in row] for row in symplectic_form(d)]
    al = f.alpha_z
    out = []
    if d == 1:
        cands = (
            [[a, b], [c, e]] for a, b, c, e in product(range(-bound, bound + 1), repeat=4)
        )
    else:
        I = identity(n)
        cands = iter([I, scalar_mul(-1, I)] + [_block_diag_sign(d, s) for s in product((1, -1), repeat=d)])
    seen = set()
    for g in cands:
        key = tuple(map(tuple, g))
        if key in seen:
            continue
        seen.add(key)
        gt = transpose(g)
        gJg = mat_mul(mat_mul(gt, J), g)
        for mu in (1, -1):
            if gJg == scalar_mul(mu, J) and mat_mul(mat_mul(g, al), gt) == scalar_mul(mu, al):
                out.append((g, mu))
    return out


def _block_diag_sign(d, signs):
    """diag(s, s) with s = diag(signs): symplectic for every sign choice."""
    n = 2 * d
    M = [[0] * n for _ in range(n)]
    for i, s in enumerate(signs):
        M[i][i] = s
        M[d + i][d + i] = s
    return M


__all__ = [
    "IntBlockMatrix",
    "f_complex",
    "is_hodge_morphism",
    "dual_blocks",
    "lambda_z",
    "PolarizationMaps",
    "polarization_maps",
    "unipotent_alpha",
    "levi_element",
    "heisenberg_element",
    "stabilizer_check",
    "g_alpha_elements",
    "mat_mul",
    "transpose",
    "identity",
]
