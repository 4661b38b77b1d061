"""Rank-2 endomorphism rings Z[g] for g in {Frobenius, omega, i}.

An element m + k*g is stored as two integers plus its generator; the
generator satisfies g^2 = t*g - n with (t, n) = (a, p), (-1, 1), (0, 1).
"""

import re
from dataclasses import dataclass

from .errors import ConfigError, IncompatibleGenerator, UnsupportedShape
from .finite_field import frobenius_auto

FROB, OMEGA, I = "pi", "omega", "i"


def _smallest_root(p, pred):
    for z in range(2, p):
        if pred(z):
            return z
    raise IncompatibleGenerator("no root of unity of the required order in F_p")


@dataclass(frozen=True)
class Generator:
    kind: str
    p: int
    a4: int
    a6: int
    t: int
    n: int
    root: int = 0  # zeta for OMEGA, beta for I

    @classmethod
    def for_curve(cls, kind, E):
        p = E.p
        if kind == FROB:
            return cls(FROB, p, E.a4, E.a6, E.trace, p)
        if kind == OMEGA:
            if E.a4 != 0 or E.a6 == 0 or p % 3 != 1:
                raise IncompatibleGenerator("omega needs y^2 = x^3 + a6 with p = 1 mod 3")
            zeta = _smallest_root(p, lambda z: (z * z + z + 1) % p == 0)
            return cls(OMEGA, p, E.a4, E.a6, -1, 1, zeta)
        if kind == I:
            if E.a4 == 0 or E.a6 != 0 or p % 4 != 1:
                raise IncompatibleGenerator("i needs y^2 = x^3 + a4 x with p = 1 mod 4")
            beta = _smallest_root(p, lambda z: (z * z + 1) % p == 0)
            return cls(I, p, E.a4, E.a6, 0, 1, beta)
        raise ValueError(f"unknown generator {kind!r}")

    def compatible(self, E):
        return (E.p, E.a4, E.a6) == (self.p, self.a4, self.a6)

    def apply(self, P):
        if not self.compatible(P.curve):
            raise IncompatibleGenerator(f"{self.kind} is defined on another curve")
        if P.x is None:
            return P
        E = P.curve
        if self.kind == FROB:
            return type(P)(E, frobenius_auto(P.x, 1), frobenius_auto(P.y, 1))
        if self.kind == OMEGA:
            return type(P)(E, P.x * self.root, P.y)
        return type(P)(E, -P.x, P.y * self.root)


@dataclass(frozen=True)
class EndoElement:
    m: int
    k: int
    gen: Generator

    def __repr__(self):
        return f"{self.m}{self.k:+d}*{self.gen.kind}"

    def label(self):
        return f"{self.m}{self.k:+d}*{self.gen.kind}"

    @property
    def trace(self):
        return 2 * self.m + self.k * self.gen.t

    @property
    def is_integer(self):
        return self.k == 0

    def _same(self, other):
        if isinstance(other, int):
            return EndoElement(other, 0, self.gen)
        if other.gen != self.gen:
            raise IncompatibleGenerator("endomorphisms from different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        return EndoElement(self.m + other.m, self.k + other.k, self.gen)

    __radd__ = __add__

    def __neg__(self):
        return EndoElement(-self.m, -self.k, self.gen)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        t, n = self.gen.t, self.gen.n
        # (m1 + k1 g)(m2 + k2 g) with g^2 = t g - n
        kk = self.k * other.k
        return EndoElement(
            self.m * other.m - n * kk,
            self.m * other.k + self.k * other.m + t * kk,
            self.gen,
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        out = EndoElement(1, 0, self.gen)
        for _ in range(e):
            out = out * self
        return out


def endo_eval(phi, P):
    """phi(P) = m P + k g(P)."""
    E = P.curve
    if not phi.gen.compatible(E):
        raise IncompatibleGenerator(f"{phi.gen.kind} is defined on another curve")
    mP = E.mul(phi.m, P)
    if phi.k == 0:
        return mP
    return E.add(mP, E.mul(phi.k, phi.gen.apply(P)))


def rosati(phi):
    return EndoElement(phi.m + phi.k * phi.gen.t, -phi.k, phi.gen)


def alpha_of(phi):
    """alpha = phi - rosati(phi) = -k t + 2k g."""
    return EndoElement(-phi.k * phi.gen.t, 2 * phi.k, phi.gen)


def endo_degree(phi):
    g = phi.gen
    return phi.m * phi.m + phi.m * phi.k * g.t + phi.k * phi.k * g.n


def direct_shape(phi):
    """Return (u, e) with phi = u * pi^e and u a unit, or None.

    For omega and i only units qualify (e = 0); for Frobenius, +-pi^e.
    """
    deg = endo_degree(phi)
    one = EndoElement(1, 0, phi.gen)
    if deg == 1:
        return phi, 0
    if phi.gen.kind != FROB or deg == 0:
        return None
    p = phi.gen.p
    e, d = 0, deg
    while d % p == 0:
        d //= p
        e += 1
    if d != 1:
        return None
    pi_e = EndoElement(0, 1, phi.gen) ** e
    for u in (one, -one):
        if u * pi_e == phi:
            return u, e
    return None


def endo_preimage(phi, P):
    """The pullback divisor phi^*(P) = p^e (z) for phi = u pi^e.

    Returned as a list of (point, multiplicity) with one entry.
    """
    shape = direct_shape(phi)
    if shape is None:
        raise UnsupportedShape(f"{phi} is not a unit times a Frobenius power")
    u, e = shape
    Z = endo_eval(rosati(u), P)  # inverse of a unit is its conjugate
    if Z.x is not None and e:
        k = Z.curve.k
        for _ in range(e):
            Z = type(Z)(Z.curve, frobenius_auto(Z.x, k - 1), frobenius_auto(Z.y, k - 1))
    return [(Z, phi.gen.p**e)]


_ENDO_RE = re.compile(r"^\s*([+-]?\d+)?\s*(?:([+-])\s*(\d*)\s*\*?\s*(pi|omega|i))?\s*$")


def parse_endo(text, E):
    """Parse "m+k*pi", "m+k*omega", "m+k*i", or a bare generator like "omega"."""
    s = text.replace(" ", "")
    bare = re.fullmatch(r"([+-]?\d*)\*?(pi|omega|i)", s)
    if bare:
        coef = bare.group(1)
        k = int(coef) if coef not in ("", "+", "-") else (-1 if coef == "-" else 1)
        return EndoElement(0, k, Generator.for_curve(bare.group(2), E))
    m_ = _ENDO_RE.match(s)
    if not m_ or m_.group(4) is None:
        raise ConfigError(f"cannot parse endomorphism {text!r}")
    m = int(m_.group(1) or 0)
    k = int(m_.group(3) or 1)
    if m_.group(2) == "-":
        k = -k
    return EndoElement(m, k, Generator.for_curve(m_.group(4), E))


__all__ = [
    "FROB",
    "OMEGA",
    "I",
    "Generator",
    "EndoElement",
    "endo_eval",
    "rosati",
    "alpha_of",
    "endo_degree",
    "direct_shape",
    "endo_preimage",
    "parse_endo",
]
