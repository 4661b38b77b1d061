"""The generalized Jacobian fiber G_x of the nodal curve obtained from E by
gluing the points x and 2x.

The nodal curve is never built.  A class in G_x is a degree-zero divisor on
E avoiding {x, 2x}, modulo divisors of functions h with h(x) = h(2x).  Each
class has a unique normal form ``(Q, c)``:

    D  ~  (Q + R_Q) - (R_Q) + div(h),   c = h(x) / h(2x),

where Q is the point sum of D and R_Q is the first entry of a fixed
auxiliary ladder keeping (Q + R_Q) - (R_Q) away from x and 2x (for Q = O the
base divisor is empty).  The map to E sends the class to -Q, matching the
convention that (x) - (2x) represents the point x.
"""

import random
from itertools import chain
from dataclasses import dataclass, field
from math import gcd

from .divisor_functions import Divisor, EvalPair, divisor_reduce, fn_ratio_eval
from .elliptic import basis_degrees, torsion_basis
from .endomorphism import (
    EndoElement,
    alpha_of,
    direct_shape,
    endo_degree,
    endo_eval,
    endo_preimage,
)
from .errors import (
    BadOrbit,
    CtxMismatch,
    HypothesisViolated,
    MillerDegenerate,
    NotFound,
    NotTorsion,
    SupportHit,
    UnsupportedShape,
)
from .finite_field import mult_order
from .numtheory import factorint, lcm
from .weil_pairing import weil_en_miller

LADDER_LEN = 64


class GenJacCtx:
    """Fiber G_x over a fixed affine point x of E."""

    def __init__(self, x_pt, seed=0):
        if x_pt.x is None:
            raise ValueError("x must be an affine point (x in E - {O})")
        E = x_pt.curve
        self.curve = E
        self.x_pt = x_pt
        self.x2_pt = E.add(x_pt, x_pt)
        if self.x2_pt.x is None or self.x2_pt == x_pt:
            raise BadOrbit("x and 2x must be distinct affine points (x not 2-torsion)")
        self.seed = seed
        self._rng = random.Random(seed)
        self._step = None
        self._ladder = []
        self._shifts = []
        self._aux = {}

    def _ladder_point(self, j):
        """R_j = R_0 + j G, generated on demand from the seeded stream."""
        E = self.curve
        if self._step is None:
            R0 = E.random_point(self._rng)
            avoid = {E.infinity, self.x_pt, E.neg(self.x_pt)}
            G = E.random_point(self._rng)
            while G in avoid:
                G = E.random_point(self._rng)
            self._step = G
            self._ladder.append(R0)
        while len(self._ladder) <= j:
            self._ladder.append(E.add(self._ladder[-1], self._step))
        return self._ladder[j]

    def shifts(self):
        """Generic shift points for reductions, generated on demand."""
        for j in range(LADDER_LEN):
            if j == len(self._shifts):
                self._ladder_point(0)  # keep the stream order fixed
                self._shifts.append(self.curve.random_point(self._rng))
            yield self._shifts[j]

    @property
    def marks(self):
        return (self.x_pt, self.x2_pt)

    def aux(self, Q):
        """First ladder point R with R, Q + R outside {O, x, 2x}."""
        if Q in self._aux:
            return self._aux[Q]
        bad = {self.curve.infinity, self.x_pt, self.x2_pt}
        for j in range(LADDER_LEN):
            R = self._ladder_point(j)
            if R not in bad and self.curve.add(Q, R) not in bad:
                self._aux[Q] = R
                return R
        raise SupportHit("auxiliary ladder exhausted")

    def base_divisor(self, Q):
        if Q.x is None:
            return Divisor()
        R = self.aux(Q)
        return Divisor([(self.curve.add(Q, R), 1), (R, -1)])

    def admissibility(self, phi):
        """Which of the excluded kernels contain x (True means x lies in it)."""
        x = self.x_pt
        one = EndoElement(1, 0, phi.gen)
        return {
            "ker(2(phi-1))": endo_eval(2 * (phi - one), x).x is None,
            "ker(2phi-1)": endo_eval(2 * phi - one, x).x is None,
            "ker(phi-2)": endo_eval(phi - 2 * one, x).x is None,
        }

    def is_admissible(self, phi):
        return not any(self.admissibility(phi).values())

    def zero(self):
        return GenJacElement(self, self.curve.infinity, self.curve.field.one())


@dataclass(frozen=True)
class GenJacElement:
    ctx: GenJacCtx = field(compare=False)
    Q: object
    c: object

    def __repr__(self):
        return f"GenJacElement(Q={self.Q}, c={self.c})"

    def __add__(self, other):
        return gj_add(self, other)

    def __neg__(self):
        return gj_neg(self)

    def __rmul__(self, m):
        return gj_mul(m, self)

    def is_zero(self):
        return self.Q.x is None and self.c == 1


def _kernel_value(ctx, D):
    """c with D = div(h), c = h(x)/h(2x); D must be principal."""
    ep = EvalPair(ctx.x_pt, ctx.x2_pt)
    last = None
    for A in chain([None], ctx.shifts()):
        try:
            S, c = divisor_reduce(D, ep, shift=A)
        except SupportHit as exc:
            last = exc
            continue
        if S.x is not None:
            raise ValueError("divisor is not principal")
        return c
    raise SupportHit(f"no shift avoided the marked points: {last}")


def gj_from_divisor(ctx, D):
    """Normal form of the class of a degree-zero divisor avoiding {x, 2x}."""
    if D.degree != 0:
        raise ValueError("divisor must have degree zero")
    if D[ctx.x_pt] or D[ctx.x2_pt]:
        raise SupportHit("divisor support meets {x, 2x}")
    E = ctx.curve
    Q = D.point_sum(E)
    c = _kernel_value(ctx, D - ctx.base_divisor(Q))
    return GenJacElement(ctx, Q, c)


def _same_ctx(a, b):
    if a.ctx is not b.ctx:
        raise CtxMismatch("elements from different fibers")


def gj_add(a, b):
    _same_ctx(a, b)
    ctx = a.ctx
    if a.Q.x is None:
        return GenJacElement(ctx, b.Q, a.c * b.c)
    if b.Q.x is None:
        return GenJacElement(ctx, a.Q, a.c * b.c)
    res = gj_from_divisor(ctx, ctx.base_divisor(a.Q) + ctx.base_divisor(b.Q))
    return GenJacElement(ctx, res.Q, res.c * a.c * b.c)


def gj_neg(a):
    ctx = a.ctx
    if a.Q.x is None:
        return GenJacElement(ctx, a.Q, a.c.inverse())
    res = gj_from_divisor(ctx, -ctx.base_divisor(a.Q))
    return GenJacElement(ctx, res.Q, res.c / a.c)


def gj_mul(m, a):
    if m < 0:
        return gj_mul(-m, gj_neg(a))
    out = a.ctx.zero()
    for bit in bin(m)[2:]:
        out = gj_add(out, out)
        if bit == "1":
            out = gj_add(out, a)
    return out


def gj_project(a):
    """Image in E: the class of (Q + R) - (R) represents the point -Q."""
    return a.ctx.curve.neg(a.Q)


def gj_order(a, bound=None):
    E = a.ctx.curve
    N = E.order()
    if E.mul(N, a.Q).x is not None:
        raise NotTorsion("projection is not killed by #E")
    m1 = E.order_of(a.Q, N)
    if bound is not None and m1 > bound:
        raise NotTorsion(f"projection order {m1} exceeds {bound}")
    b = gj_mul(m1, a)
    if b.Q.x is not None:
        raise AssertionError("m1 * a must lie in the kernel")
    return m1 * mult_order(b.c)


# -- Ribet points ---------------------------------------------------------------

def ribet_divisor(ctx, phi):
    """(phi x) - (phi 2x) - phi^*(x) + phi^*(2x) for direct-mode phi."""
    x, x2 = ctx.x_pt, ctx.x2_pt
    terms = [(endo_eval(phi, x), 1), (endo_eval(phi, x2), -1)]
    terms += [(P, -m) for P, m in endo_preimage(phi, x)]
    terms += [(P, m) for P, m in endo_preimage(phi, x2)]
    return Divisor(terms)


def ribet_point_direct(ctx, phi):
    """t^J_phi(x) as the class of the explicit fiber divisor."""
    if direct_shape(phi) is None:
        raise UnsupportedShape(f"{phi} is not a unit times a Frobenius power")
    bad = [name for name, hit in ctx.admissibility(phi).items() if hit]
    if bad:
        raise BadOrbit(f"x lies in {', '.join(bad)}")
    return gj_from_divisor(ctx, ribet_divisor(ctx, phi))


def _reduced_ratio(ctx, n, A, B, M1, M2):
    """g(M1)/g(M2) for div(g) = n(A) - n(B), by shifted chord-tangent reduction."""
    D = Divisor([(A, n), (B, -n)])
    ep = EvalPair(M1, M2)
    for shift in chain([None], ctx.shifts()):
        try:
            S, c = divisor_reduce(D, ep, shift=shift)
        except SupportHit:
            continue
        return c
    raise SupportHit("no shift avoided the evaluation points")


def ribet_times_n(ctx, phi, n, trace=None):
    """The kernel scalar of n * t^J_phi(x).

    Equals h(x) f(phi 2x) / (h(2x) f(phi x)) with div(f) = n(x) - n(2x) and
    div(h) = n(phi x) - n(phi 2x).  Miller functions are used first; when
    every Miller chain meets an evaluation point (phi x a multiple of x)
    both ratios come from shifted reductions instead.  ``trace`` (a list)
    receives the route taken.
    """
    E = ctx.curve
    x, x2 = ctx.x_pt, ctx.x2_pt
    if E.mul(n, x).x is not None:
        raise ValueError("x must be n-torsion")
    if phi.k == 0:
        return E.field.one()
    px, px2 = endo_eval(phi, x), endo_eval(phi, x2)
    bad = {E.infinity, x, x2}
    if px in bad or px2 in bad:
        raise BadOrbit("phi(x) or phi(2x) meets {O, x, 2x}")
    try:
        f_ratio = fn_ratio_eval(n, x, px2) / fn_ratio_eval(n, x, px)
        h_ratio = fn_ratio_eval(n, px, x) / fn_ratio_eval(n, px, x2)
        route = "miller"
    except MillerDegenerate:
        f_ratio = _reduced_ratio(ctx, n, x, x2, px2, px)
        h_ratio = _reduced_ratio(ctx, n, px, px2, x, x2)
        route = "reduction"
    if trace is not None:
        trace.append(route)
    return h_ratio * f_ratio


# -- order n^2 search -------------------------------------------------------------

def check_order_hypotheses(phi, n, p):
    """Raise HypothesisViolated naming the first failing condition."""
    one = EndoElement(1, 0, phi.gen)
    checks = [
        ("n odd", n % 2 == 1),
        ("n invertible in k", gcd(n, p) == 1),
        ("prime to deg(α)", gcd(n, endo_degree(alpha_of(phi))) == 1),
        ("n does not divide deg(2(φ−1))", endo_degree(2 * (phi - one)) % n != 0),
        ("n does not divide deg(2φ−1)", endo_degree(2 * phi - one) % n != 0),
        ("n does not divide deg(φ−2)", endo_degree(phi - 2 * one) % n != 0),
    ]
    for name, ok in checks:
        if not ok:
            raise HypothesisViolated(name, f"n = {n}, phi = {phi}")


@dataclass
class OrderSearch:
    x: object
    field: object
    order: int
    kernel_scalar: object
    grid: list


def _grid(m):
    """Coefficient pairs (a, b) mod m, not both divisible by the prime of m."""
    for s in range(1, 2 * m):
        for a in range(0, min(s, m - 1) + 1):
            b = s - a
            if b < m:
                yield a, b


def search_order_n2(E, phi, n, seed=0):
    """Find x of order n whose Ribet point has order exactly n^2."""
    if n < 3:
        raise HypothesisViolated("n odd", f"n = {n}")
    check_order_hypotheses(phi, n, E.p)
    alpha = alpha_of(phi)
    parts = factorint(n)
    degs = []
    for ell, e in parts:
        cand = basis_degrees(E, ell**e)
        if not cand:
            raise NotFound(f"E[{ell**e}] is not rational over small extensions")
        degs.append(cand[0])
    K = lcm(*degs)
    rng = random.Random(seed)
    components = []
    grid_log = []
    for ell, e in parts:
        m = ell**e
        P, Q, F = torsion_basis(E, m, seed=rng.getrandbits(32), degree=K)
        EK = P.curve
        chosen = None
        for a, b in _grid(m):
            if a % ell == 0 and b % ell == 0:
                continue
            y = EK.add(EK.mul(a, P), EK.mul(b, Q))
            zeta = weil_en_miller(m, endo_eval(alpha, y), y, seed=rng.getrandbits(32))
            if zeta ** (m // ell) != 1:
                chosen = (a, b, y)
                break
        if chosen is None:
            raise NotFound(f"no x in E[{m}] with e(alpha x, x) of order {m}")
        grid_log.append({"prime_power": m, "a": chosen[0], "b": chosen[1]})
        components.append((m, chosen[2], P, Q))
    EK = components[0][1].curve
    # sweep multiples of the assembled point until the orbit is admissible
    base = EK.infinity
    for _, y, _, _ in components:
        base = EK.add(base, y)
    for j in range(1, n):
        if gcd(j, n) != 1:
            continue
        x = EK.mul(j, base)
        try:
            ctx = GenJacCtx(x, seed=rng.getrandbits(32))
            if not ctx.is_admissible(phi):
                continue
            scalar = ribet_times_n(ctx, phi, n)
            if direct_shape(phi) is not None:
                order = gj_order(ribet_point_direct(ctx, phi))
            else:
                order = n * mult_order(scalar)
        except (BadOrbit, SupportHit, MillerDegenerate):
            continue
        if order == n * n:
            return OrderSearch(x, EK.field, order, scalar, grid_log)
    raise NotFound(f"no admissible x of order {n} with Ribet point of order n^2")


__all__ = [
    "GenJacCtx",
    "GenJacElement",
    "gj_from_divisor",
    "gj_add",
    "gj_neg",
    "gj_mul",
    "gj_project",
    "gj_order",
    "ribet_divisor",
    "ribet_point_direct",
    "ribet_times_n",
    "check_order_hypotheses",
    "search_order_n2",
    "OrderSearch",
]
