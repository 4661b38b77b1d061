"""Mixed-period coordinates (tau, u, v, w) and the group actions on them.

A point of the period domain is the column span of

    [[u, w], [tau, v], [1_d, 0], [0, 1]]      ((2d+2) x (d+1))

inside C^{2d+2} with basis e_0, ..., e_{2d+1}.  Group elements are stored
as (lam, g, x, y, z) and act through the matrix

    [[lam, 2 pi i x, 2 pi i z], [0, g, y], [0, 0, 1]].

The closed-form actions below are checked against the plain matrix action
followed by column normalization (``act_matrix``).
"""

from dataclasses import dataclass, field
from math import floor

import numpy as np

from ..errors import SingularAutomorphy

TWO_PI_I = 2j * np.pi
SYM_TOL = 1e-12
POS_TOL = 1e-10
GSP_TOL = 1e-10


def symplectic_form(d):
    """J = [[0, -1_d], [1_d, 0]], the matrix of the polarization form."""
    J = np.zeros((2 * d, 2 * d))
    J[:d, d:] = -np.eye(d)
    J[d:, :d] = np.eye(d)
    return J


@dataclass(frozen=True)
class SiegelPoint:
    tau: np.ndarray

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=complex)
        if tau.ndim == 0:
            tau = tau.reshape(1, 1)
        object.__setattr__(self, "tau", tau)
        if np.max(np.abs(tau - tau.T)) > SYM_TOL:
            raise ValueError("tau must be symmetric")
        if np.min(np.linalg.eigvalsh(tau.imag)) <= POS_TOL:
            raise ValueError("Im(tau) must be positive definite")

    @property
    def d(self):
        return self.tau.shape[0]

    @classmethod
    def random(cls, rng, d, scale=1.0):
        X = rng.normal(size=(d, d)) * scale
        A = rng.normal(size=(d, d)) * scale
        return cls((X + X.T) / 2 + 1j * (A @ A.T + 0.5 * np.eye(d)))


@dataclass(frozen=True)
class MixedPeriod:
    """(tau, u, v, w): u is 1 x d, v is d x 1, w is a complex scalar."""

    tau: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: complex

    def __post_init__(self):
        tau = self.tau.tau if isinstance(self.tau, SiegelPoint) else np.asarray(self.tau, complex)
        if tau.ndim == 0:
            tau = tau.reshape(1, 1)
        d = tau.shape[0]
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "u", np.asarray(self.u, complex).reshape(1, d))
        object.__setattr__(self, "v", np.asarray(self.v, complex).reshape(d, 1))
        object.__setattr__(self, "w", complex(self.w))

    @property
    def d(self):
        return self.tau.shape[0]

    @classmethod
    def random(cls, rng, d, scale=1.0):
        tau = SiegelPoint.random(rng, d).tau
        cplx = lambda *shape: (rng.normal(size=shape) + 1j * rng.normal(size=shape)) * scale
        return cls(tau, cplx(1, d), cplx(d, 1), complex(cplx(1)[0]))

    def distance(self, other):
        return max(
            np.max(np.abs(self.tau - other.tau)),
            np.max(np.abs(self.u - other.u)),
            np.max(np.abs(self.v - other.v)),
            abs(self.w - other.w),
        )


def param_embed(mp):
    """The (2d+2) x (d+1) matrix whose column span is F^0."""
    d = mp.d
    M = np.zeros((2 * d + 2, d + 1), dtype=complex)
    M[0, :d] = mp.u[0]
    M[0, d] = mp.w
    M[1 : d + 1, :d] = mp.tau
    M[1 : d + 1, d] = mp.v[:, 0]
    M[d + 1 : 2 * d + 1, :d] = np.eye(d)
    M[2 * d + 1, d] = 1
    return M


def from_span(M):
    """Inverse of param_embed: normalize the bottom (d+1) block to the identity."""
    d = M.shape[1] - 1
    B = M[d + 1 :, :]
    if abs(np.linalg.det(B)) < 1e-14:
        raise SingularAutomorphy("span is not in the period domain chart")
    N = M @ np.linalg.inv(B)
    return MixedPeriod(N[1 : d + 1, :d], N[0, :d], N[1 : d + 1, d], N[0, d])


@dataclass(frozen=True)
class GroupElement:
    """(lam, g, x, y, z) in P(R)U(C); x is 1 x 2d, y is 2d x 1."""

    lam: float
    g: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: complex = 0j
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        n = g.shape[0]
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "x", np.asarray(self.x, complex).reshape(1, n))
        object.__setattr__(self, "y", np.asarray(self.y, float).reshape(n, 1))
        object.__setattr__(self, "z", complex(self.z))
        if self.check:
            J = symplectic_form(n // 2)
            if np.max(np.abs(g.T @ J @ g - self.lam * J)) > GSP_TOL * max(1.0, abs(self.lam)):
                raise ValueError("g is not a symplectic similitude with multiplier lam")

    @property
    def d(self):
        return self.g.shape[0] // 2

    @classmethod
    def unipotent(cls, x, y, z=0j):
        x = np.asarray(x, complex).reshape(1, -1)
        n = x.shape[1]
        return cls(1.0, np.eye(n), x, y, z)

    @classmethod
    def gsp(cls, g, lam):
        g = np.asarray(g, float)
        n = g.shape[0]
        return cls(lam, g, np.zeros((1, n)), np.zeros((n, 1)), 0j)

    def matrix(self):
        n = self.g.shape[0]
        M = np.zeros((n + 2, n + 2), dtype=complex)
        M[0, 0] = self.lam
        M[0, 1 : n + 1] = TWO_PI_I * self.x[0]
        M[0, n + 1] = TWO_PI_I * self.z
        M[1 : n + 1, 1 : n + 1] = self.g
        M[1 : n + 1, n + 1] = self.y[:, 0]
        M[n + 1, n + 1] = 1
        return M

    @classmethod
    def from_matrix(cls, M, check=True):
        n = M.shape[0] - 2
        return cls(
            float(M[0, 0].real),
            M[1 : n + 1, 1 : n + 1].real,
            M[0, 1 : n + 1] / TWO_PI_I,
            M[1 : n + 1, n + 1].real,
            M[0, n + 1] / TWO_PI_I,
            check=check,
        )

    def __matmul__(self, other):
        return GroupElement.from_matrix(self.matrix() @ other.matrix(), check=False)

    def is_unipotent(self):
        return self.lam == 1 and np.array_equal(self.g, np.eye(self.g.shape[0]))


def compose_unipotent(p1, p2):
    """Heisenberg product: z = z1 + z2 + x1 . y2."""
    return GroupElement.unipotent(p1.x + p2.x, p1.y + p2.y, p1.z + p2.z + (p1.x @ p2.y)[0, 0])


def act_matrix(p, mp):
    """Generic action: multiply the embedding by p and renormalize."""
    return from_span(p.matrix() @ param_embed(mp))


def act_unipotent(p, mp):
    """Closed-form action of a unipotent element (g = 1, lam = 1)."""
    d = mp.d
    x1, x2 = p.x[:, :d], p.x[:, d:]
    y1, y2 = p.y[:d], p.y[d:]
    u_new = mp.u + TWO_PI_I * (x1 @ mp.tau) + TWO_PI_I * x2
    v_new = mp.v + y1 - mp.tau @ y2
    w_new = mp.w + TWO_PI_I * (x1 @ mp.v)[0, 0] + TWO_PI_I * p.z - (u_new @ y2)[0, 0]
    return MixedPeriod(mp.tau, u_new, v_new, w_new)


def act_gsp(p, mp):
    """Closed-form action of diag(lam, g, 1) with g = [[a, b], [c, d]]."""
    d = mp.d
    g = p.g
    a, b, c, dd = g[:d, :d], g[:d, d:], g[d:, :d], g[d:, d:]
    mu = p.lam
    ctd = c @ mp.tau + dd
    if abs(np.linalg.det(ctd)) <= 1e-10:
        raise SingularAutomorphy("c tau + d is not invertible")
    inv = np.linalg.inv(ctd)
    tau_new = (a @ mp.tau + b) @ inv
    tau_new = (tau_new + tau_new.T) / 2
    u_new = mu * mp.u @ inv
    v_new = a @ mp.v - tau_new @ c @ mp.v
    w_new = mu * mp.w - (mu * mp.u @ inv @ c @ mp.v)[0, 0]
    return MixedPeriod(tau_new, u_new, v_new, w_new)


def act(p, mp):
    """Action of a general element p = unipotent(x g^{-1}, y, z) . diag(lam, g)."""
    if p.is_unipotent():
        return act_unipotent(p, mp)
    levi = GroupElement.gsp(p.g, p.lam)
    unip = GroupElement.unipotent(p.x @ np.linalg.inv(p.g), p.y, p.z)
    return act_unipotent(unip, act_gsp(levi, mp))


# -- integer generators and lattice normal form --------------------------------

def action_m(mp, m1, m2):
    """(m1; m2) in M_{2d,1}(Z): (u, v + m1 - tau m2, w - u m2)."""
    m1 = np.asarray(m1, float).reshape(-1, 1)
    m2 = np.asarray(m2, float).reshape(-1, 1)
    return MixedPeriod(mp.tau, mp.u, mp.v + m1 - mp.tau @ m2, mp.w - (mp.u @ m2)[0, 0])


def action_center(mp, n):
    """2 pi i n in Z(1): (u, v, w + 2 pi i n)."""
    return MixedPeriod(mp.tau, mp.u, mp.v, mp.w + TWO_PI_I * n)


def action_n(mp, n1, n2):
    """2 pi i (n1 n2): (u + 2 pi i n1 tau + 2 pi i n2, v, w + 2 pi i n1 v)."""
    n1 = np.asarray(n1, float).reshape(1, -1)
    n2 = np.asarray(n2, float).reshape(1, -1)
    return MixedPeriod(
        mp.tau,
        mp.u + TWO_PI_I * (n1 @ mp.tau) + TWO_PI_I * n2,
        mp.v,
        mp.w + TWO_PI_I * (n1 @ mp.v)[0, 0],
    )


def generator_center(d, n):
    return GroupElement.unipotent(np.zeros(2 * d), np.zeros(2 * d), n)


def generator_m(d, m1, m2):
    return GroupElement.unipotent(np.zeros(2 * d), np.concatenate([np.ravel(m1), np.ravel(m2)]))


def generator_n(d, n1, n2):
    return GroupElement.unipotent(np.concatenate([np.ravel(n1), np.ravel(n2)]), np.zeros(2 * d))


def lattice_coords(mp):
    """Real coordinates (s, t, a, b) with u = 2 pi i (s tau + t), v = a - tau b."""
    X, Y = mp.tau.real, mp.tau.imag
    Yinv = np.linalg.inv(Y)
    uu = mp.u / TWO_PI_I
    s = uu.imag @ Yinv
    t = uu.real - s @ X
    b = -Yinv @ mp.v.imag
    a = mp.v.real + X @ b
    return s, t, a, b


def normal_form_mod_lattice(mp):
    """Reduce (u, v, w) into the fundamental box of the integer Heisenberg group.

    u is moved so its lattice coordinates lie in [0, 1), then v, then the
    imaginary part of w is taken modulo 2 pi.
    """
    s, t, _, _ = lattice_coords(mp)
    n1, n2 = -np.floor(s + 1e-12), -np.floor(t + 1e-12)
    mp = action_n(mp, n1, n2)
    _, _, a, b = lattice_coords(mp)
    m1, m2 = -np.floor(a + 1e-12), -np.floor(b + 1e-12)
    mp = action_m(mp, m1, m2)
    k = -floor(mp.w.imag / (2 * np.pi) + 1e-12)
    return action_center(mp, k)


def heisenberg_normal_form(x, y, z):
    """Exact normal form of (x, y, z) under left translation by integer elements.

    (n, m, k) (x, y, z) = (x + n, y + m, z + k + n . y); x, y are sequences of
    Fractions or ints, z a Fraction.  The real part of z is reduced mod 1.
    """
    n = [-floor(c) for c in x]
    x = [c + k for c, k in zip(x, n)]
    z = z + sum(k * c for k, c in zip(n, y))
    y = [c - floor(c) for c in y]
    z = z - floor(z)
    return tuple(x), tuple(y), z


def dw_toy(lam, x, a):
    """The weight-filtration toy action a -> lam a + x."""
    if lam == 0:
        raise ValueError("lam must be nonzero")
    return lam * a + x


def coarse_modulus(a):
    """exp(2 pi i a) + exp(-2 pi i a), invariant under a -> a + 1 and a -> -a."""
    e = np.exp(TWO_PI_I * a)
    return complex(e + 1 / e)


__all__ = [
    "TWO_PI_I",
    "SiegelPoint",
    "MixedPeriod",
    "GroupElement",
    "symplectic_form",
    "param_embed",
    "from_span",
    "compose_unipotent",
    "act_matrix",
    "act_unipotent",
    "act_gsp",
    "act",
    "action_m",
    "action_n",
    "action_center",
    "generator_m",
    "generator_n",
    "generator_center",
    "lattice_coords",
    "normal_form_mod_lattice",
    "heisenberg_normal_form",
    "dw_toy",
    "coarse_modulus",
]
