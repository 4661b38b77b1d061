"""Short Weierstrass curves y^2 = x^3 + a4*x + a6 defined over F_p.

A :class:`Curve` is always defined by integer coefficients over the prime
field and lives over a chosen extension F_{p^k}; :meth:`Curve.base_change`
moves to a larger degree and :meth:`Curve.lift` embeds points over F_p.
"""

import random
from functools import cached_property
from math import gcd

from .errors import (
    BadCharacteristic,
    CurveMismatch,
    NotFound,
    NotOnCurve,
    TooLarge,
)
from .finite_field import MAX_Q, build_extension, sqrt_in_fq
from .numtheory import factorint, ladic_valuation

MAX_EXT_DEGREE = 24


class CurvePoint:
    """Affine point ``(x, y)`` or the point at infinity (``x is None``)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x=None, y=None):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.x is None:
            return hash(None)
        return hash((self.x.c, self.y.c))

    def __repr__(self):
        if self.x is None:
            return "O"
        return f"({self.x}, {self.y})"

    def __add__(self, other):
        return self.curve.add(self, other)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.neg(other))

    def __neg__(self):
        return self.curve.neg(self)

    def __rmul__(self, m):
        return self.curve.mul(m, self)

    def sort_key(self):
        if self.x is None:
            return (0,)
        return (1, self.x.c, self.y.c)

    def to_json(self):
        if self.x is None:
            return "O"
        return {"x": self.x.to_json(), "y": self.y.to_json()}


class Curve:
    """y^2 = x^3 + a4 x + a6 with a4, a6 in F_p, viewed over F_{p^k}."""

    def __init__(self, p, a4, a6, k=1):
        self.field = build_extension(p, k)
        self.p = p
        self.k = k
        self.a4 = a4 % p
        self.a6 = a6 % p
        if (4 * self.a4**3 + 27 * self.a6**2) % p == 0:
            raise ValueError("singular curve: discriminant vanishes")
        self._a4 = self.field(self.a4)
        self._a6 = self.field(self.a6)
        self.infinity = CurvePoint(self)

    def __repr__(self):
        return f"Curve(y^2 = x^3 + {self.a4}x + {self.a6} over GF({self.p}^{self.k}))"

    def __eq__(self, other):
        return isinstance(other, Curve) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.p, self.a4, self.a6, self.k)

    def base_change(self, k):
        if k == self.k:
            return self
        return Curve(self.p, self.a4, self.a6, k)

    def lift(self, P):
        """Embed a point from a subfield curve (only F_p is supported)."""
        if P.curve == self:
            return P
        if P.curve.k != 1 or (P.curve.p, P.curve.a4, P.curve.a6) != (self.p, self.a4, self.a6):
            raise CurveMismatch(f"cannot lift {P.curve} into {self}")
        if P.x is None:
            return self.infinity
        return CurvePoint(self, self.field(P.x.c[0]), self.field(P.y.c[0]))

    # -- points ---------------------------------------------------------------

    def rhs(self, x):
        return x * x * x + self._a4 * x + self._a6

    def is_on_curve(self, P):
        if P.x is None:
            return True
        return P.y * P.y == self.rhs(P.x)

    def point(self, x, y):
        P = CurvePoint(self, self.field(x), self.field(y))
        if not self.is_on_curve(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def lift_x(self, x):
        """Point with abscissa ``x`` and the canonical square root, or None."""
        x = self.field(x)
        y = sqrt_in_fq(self.rhs(x))
        if y is None:
            return None
        return CurvePoint(self, x, y)

    def random_point(self, rng):
        while True:
            x = self.field.random(rng)
            y = sqrt_in_fq(self.rhs(x))
            if y is None:
                continue
            if rng.getrandbits(1):
                y = -y
            return CurvePoint(self, x, y)

    def points(self):
        """All points over the current field (small fields only)."""
        if self.field.q > 10**5:
            raise TooLarge("point enumeration limited to q <= 1e5")
        out = [self.infinity]
        for x in self.field.elements():
            y = sqrt_in_fq(self.rhs(x))
            if y is None:
                continue
            out.append(CurvePoint(self, x, y))
            if y:
                out.append(CurvePoint(self, x, -y))
        return out

    # -- group law ------------------------------------------------------------

    def _check(self, P):
        if P.curve is not self and P.curve != self:
            raise CurveMismatch(f"point on {P.curve}, expected {self}")

    def neg(self, P):
        self._check(P)
        if P.x is None:
            return P
        return CurvePoint(self, P.x, -P.y)

    def add(self, P, Q):
        self._check(P)
        self._check(Q)
        if P.x is None:
            return Q
        if Q.x is None:
            return P
        if P.x == Q.x:
            if P.y != Q.y or not P.y:
                return self.infinity
            lam = (3 * P.x * P.x + self._a4) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return CurvePoint(self, x3, y3)

    def mul(self, m, P):
        """Scalar multiplication by signed-binary (NAF) double-and-add."""
        self._check(P)
        if m < 0:
            return self.mul(-m, self.neg(P))
        R = self.infinity
        negP = self.neg(P)
        for digit in reversed(naf(m)):
            R = self.add(R, R)
            if digit == 1:
                R = self.add(R, P)
            elif digit == -1:
                R = self.add(R, negP)
        return R

    def order_of(self, P, multiple=None):
        """Exact order of P given a multiple of it (default: #E over this field)."""
        if multiple is None:
            multiple = self.order()
        if self.mul(multiple, P).x is not None:
            raise ValueError("given multiple does not annihilate the point")
        m = multiple
        for prime, e in factorint(multiple):
            for _ in range(e):
                if self.mul(m // prime, P).x is None:
                    m //= prime
                else:
                    break
        return m

    # -- counting -------------------------------------------------------------

    @cached_property
    def trace(self):
        """Trace of Frobenius a = p + 1 - #E(F_p)."""
        return self.p + 1 - count_points_base(self)

    def order(self, k=None):
        return order_over_extension(self, self.k if k is None else k)


def naf(m):
    """Non-adjacent form digits of m >= 0, least significant first."""
    digits = []
    while m:
        if m & 1:
            d = 2 - (m & 3)
            m -= d
        else:
            d = 0
        digits.append(d)
        m >>= 1
    return digits


def group_law(P, Q=None, op="add", m=None):
    """Functional entry point: ``op`` in {add, neg, scalar_mul}."""
    E = P.curve
    if op == "add":
        return E.add(P, Q)
    if op == "neg":
        return E.neg(P)
    if op == "scalar_mul":
        return E.mul(m, P)
    raise ValueError(f"unknown op {op!r}")


def count_points_base(E):
    """#E(F_p) by an exhaustive scan over x with Euler's criterion."""
    p = E.p
    if p > 10**6:
        raise TooLarge("exhaustive count limited to p <= 1e6")
    half = (p - 1) // 2
    total = 1
    a4, a6 = E.a4, E.a6
    for x in range(p):
        r = (x * x * x + a4 * x + a6) % p
        if r == 0:
            total += 1
        elif pow(r, half, p) == 1:
            total += 2
    a = p + 1 - total
    if a * a > 4 * p:
        raise AssertionError("Hasse bound violated; counting bug")
    return total


def trace_power(a, p, k):
    """t_k with t_0 = 2, t_1 = a, t_k = a t_{k-1} - p t_{k-2}."""
    t0, t1 = 2, a
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, a * t1 - p * t0
    return t1


def order_over_extension(E, k):
    return E.p**k + 1 - trace_power(E.trace, E.p, k)


# -- torsion ------------------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _primary_point(E, ell, N, rng):
    """Random element of the ell-primary part and its exponent j (order ell^j)."""
    v = ladic_valuation(N, ell)
    S = E.mul(N // ell**v, E.random_point(rng))
    j = 0
    T = S
    while T.x is not None:
        T = E.mul(ell, T)
        j += 1
    return S, j


def _exact_order_point(E, n, N, rng, attempts=40):
    # A random element of an ell-primary group of rank <= 2 has maximal
    # order with probability >= 1 - 1/ell, so 40 misses in a row are
    # negligible evidence that no point of order n exists.
    parts = []
    for ell, e in factorint(n):
        for _ in range(attempts):
            S, j = _primary_point(E, ell, N, rng)
            if j >= e:
                parts.append(E.mul(ell ** (j - e), S))
                break
        else:
            return None
    P = E.infinity
    for part in parts:
        P = E.add(P, part)
    return P


def torsion_point(E, n, seed=0, max_degree=MAX_EXT_DEGREE):
    """A point of exact order n over the smallest extension that has one.

    Returns ``(P, ctx)`` where P lives on ``E.base_change(ctx.k)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if gcd(n, E.p) != 1:
        raise BadCharacteristic(f"n = {n} is divisible by p = {E.p}")
    rng = _rng(seed)
    for k in range(1, max_degree + 1):
        if E.p**k > MAX_Q:
            break
        N = order_over_extension(E, k)
        if N % n:
            continue
        Ek = E.base_change(k)
        P = _exact_order_point(Ek, n, N, rng)
        if P is not None:
            return P, Ek.field
    raise NotFound(f"no point of order {n} over degree <= {max_degree}")


def basis_degrees(E, n, max_degree=MAX_EXT_DEGREE):
    """Extension degrees where E[n] can be fully rational (n^2 | #E, n | q - 1)."""
    out = []
    for k in range(1, max_degree + 1):
        q = E.p**k
        if q > MAX_Q:
            break
        if order_over_extension(E, k) % (n * n) == 0 and (q - 1) % n == 0:
            out.append(k)
    return out


def _dlog(T, B, ell, m, E):
    """c with T = c*B, where B has order ell^m and T is in <B>; None if absent."""
    c = 0
    for i in range(m):
        # digit i of c from ell^(m-1-i) * (T - c B)
        R = E.mul(ell ** (m - 1 - i), E.add(T, E.neg(E.mul(c, B))))
        G = E.mul(ell ** (m - 1 - i), E.mul(ell**i, B))
        for digit in range(ell):
            if E.mul(digit, G) == R:
                c += digit * ell**i
                break
        else:
            return None
    return c


def _basis_attempt(E, ell, e, N, rng, pairing):
    n = ell**e
    v = ladic_valuation(N, ell)
    best, a = None, 0
    for _ in range(8):
        S, j = _primary_point(E, ell, N, rng)
        if j > a:
            best, a = S, j
    b = v - a
    if b < e:
        return None
    S1 = best
    P = E.mul(ell ** (a - e), S1)
    S2, _ = _primary_point(E, ell, N, rng)
    if a > b:
        B = E.mul(ell**b, S1)
        T = E.mul(ell**b, S2)
        c = _dlog(T, B, ell, a - b, E)
        if c is None:
            return None
        S2 = E.add(S2, E.neg(E.mul(c, S1)))
    Q = E.mul(ell ** (b - e), S2)
    if P.x is None or Q.x is None:
        return None
    zeta = pairing(n, P, Q)
    if zeta ** (n // ell) == 1:
        return None
    return P, Q


def torsion_basis(E, n, seed=0, degree=None, attempts=64):
    """Basis (P, Q) of E[n] for an odd prime power n, certified by e_n(P, Q).

    Returns ``(P, Q, ctx)``.  With ``degree`` the search is restricted to
    that extension degree.
    """
    from .weil_pairing import weil_en_miller

    factors = factorint(n)
    if len(factors) != 1 or n % 2 == 0:
        raise ValueError("torsion_basis needs an odd prime power")
    if gcd(n, E.p) != 1:
        raise BadCharacteristic(f"n = {n} is divisible by p = {E.p}")
    ell, e = factors[0]
    rng = _rng(seed)
    degrees = basis_degrees(E, n) if degree is None else [degree]

    def pairing(m, P, Q):
        return weil_en_miller(m, P, Q, seed=rng.getrandbits(32))

    for k in degrees:
        Ek = E.base_change(k)
        N = order_over_extension(E, k)
        if N % (n * n) or (Ek.field.q - 1) % n:
            continue
        for _ in range(attempts):
            res = _basis_attempt(Ek, ell, e, N, rng, pairing)
            if res is not None:
                return res[0], res[1], Ek.field
    raise NotFound(f"no rational basis of E[{n}] over the searched degrees")


# -- presets ------------------------------------------------------------------

PRESETS = {
    "j0": {"p": 241, "a4": 0, "a6": 2, "p_mod": (3, 1)},
    "j1728": {"p": 277, "a4": 1, "a6": 0, "p_mod": (4, 1)},
}


def preset_curve(name, p=None, coeff=None):
    """Named families: "j0" is y^2 = x^3 + a6, "j1728" is y^2 = x^3 + a4 x.

    ``p`` and the free coefficient default to the values in PRESETS.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}")
    preset = PRESETS[name]
    p = preset["p"] if p is None else p
    mod, res = preset["p_mod"]
    if p % mod != res:
        raise ValueError(f"preset {name} needs p = {res} mod {mod}")
    if name == "j0":
        return Curve(p, 0, preset["a6"] if coeff is None else coeff)
    return Curve(p, preset["a4"] if coeff is None else coeff, 0)


def hasse_ok(E, k=1):
    t = trace_power(E.trace, E.p, k)
    return t * t <= 4 * E.p**k


__all__ = [
    "Curve",
    "CurvePoint",
    "group_law",
    "count_points_base",
    "order_over_extension",
    "trace_power",
    "torsion_point",
    "torsion_basis",
    "basis_degrees",
    "preset_curve",
    "PRESETS",
    "naf",
]
