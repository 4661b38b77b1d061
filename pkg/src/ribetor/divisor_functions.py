"""Divisors on E, line functions, Miller's algorithm and chord-tangent reduction.

Every line is normalized to be monic at O with respect to the uniformizer
x/y: non-vertical lines are y - y1 - lam*(x - x1) and verticals are x - x1.
Products of monic functions are monic, so a function given by its divisor
(and this normalization) has a single well-defined value whatever addition
chain produced it.
"""

from collections import Counter
from dataclasses import dataclass

from .errors import MillerDegenerate, OnLine, SupportHit
from .elliptic import naf


class Divisor:
    """Finite formal sum of points with integer multiplicities."""

    __slots__ = ("_m",)

    def __init__(self, terms=None):
        m = Counter()
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for P, c in items:
                m[P] += c
        self._m = {P: c for P, c in m.items() if c}

    @classmethod
    def point(cls, P, mult=1):
        return cls([(P, mult)])

    def items(self):
        return sorted(self._m.items(), key=lambda pc: pc[0].sort_key())

    @property
    def degree(self):
        return sum(self._m.values())

    @property
    def support(self):
        return set(self._m)

    def __getitem__(self, P):
        return self._m.get(P, 0)

    def __add__(self, other):
        return Divisor(list(self._m.items()) + list(other._m.items()))

    def __neg__(self):
        return Divisor([(P, -c) for P, c in self._m.items()])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        return Divisor([(P, n * c) for P, c in self._m.items()])

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __repr__(self):
        return " + ".join(f"{c}*{P}" for P, c in self.items()) or "0"

    def is_zero(self):
        return not self._m

    def point_sum(self, E):
        S = E.infinity
        for P, c in self._m.items():
            S = E.add(S, E.mul(c, P))
        return S


@dataclass(frozen=True)
class EvalPair:
    """Two marked points and the tracked value h(x_pt)/h(x2_pt)."""

    x_pt: object
    x2_pt: object
    value: object = None

    def __post_init__(self):
        if self.x_pt.x is None or self.x2_pt.x is None:
            raise ValueError("marked points must be affine")
        if self.x_pt == self.x2_pt:
            raise ValueError("marked points must be distinct")
        if self.value is None:
            object.__setattr__(self, "value", self.x_pt.curve.field.one())

    def times(self, num_x, num_2x, den_x, den_2x):
        return EvalPair(self.x_pt, self.x2_pt, self.value * num_x * den_2x / (num_2x * den_x))


# -- lines --------------------------------------------------------------------

def _raw_line(P1, P2, Q):
    """Line through P1, P2 evaluated at affine Q, without support checks."""
    E = Q.curve
    if P1.x is None and P2.x is None:
        return E.field.one()
    if P1.x is None:
        return Q.x - P2.x
    if P2.x is None:
        return Q.x - P1.x
    if P1.x == P2.x:
        if P1.y != P2.y or not P1.y:
            return Q.x - P1.x
        lam = (3 * P1.x * P1.x + E._a4) / (2 * P1.y)
    else:
        lam = (P2.y - P1.y) / (P2.x - P1.x)
    return Q.y - P1.y - lam * (Q.x - P1.x)


def line_value(P1, P2, Q):
    """Value at Q of the monic line with divisor (P1)+(P2)+(-(P1+P2)) - 3(O).

    When P2 = -P1 this is the vertical x - x(P1); raises OnLine when Q is
    a zero or the pole of the line.
    """
    if Q.x is None:
        raise OnLine("evaluation at the point at infinity")
    val = _raw_line(P1, P2, Q)
    if not val:
        raise OnLine(f"{Q} lies on the line through {P1} and {P2}")
    return val


def vertical_value(P, Q):
    """Value at Q of x - x(P) (the constant 1 when P is O)."""
    return line_value(P, Q.curve.neg(P), Q)


# -- Miller -------------------------------------------------------------------

def _miller_step(E, T, U, Q):
    """Factor l_{T,U}(Q) / v_{T+U}(Q) and the point T + U."""
    S = E.add(T, U)
    num = _raw_line(T, U, Q)
    den = _raw_line(S, E.neg(S), Q)
    if not num or not den:
        raise MillerDegenerate(f"line vanished at {Q}")
    return S, num / den


def miller_eval(n, P, Q, signed=False):
    """f_{n,P}(Q) with div(f_{n,P}) = n(P) - n(O) when nP = O.

    Uses plain binary double-and-add, or the signed-binary chain when
    ``signed`` is set; both yield the same value because every factor is
    monic at O.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if Q.x is None:
        raise MillerDegenerate("evaluation at infinity")
    E = P.curve
    one = E.field.one()
    if n == 1:
        return one
    if P.x is None:
        return one
    T, f = P, one
    if signed:
        digits = list(reversed(naf(n)))[1:]
        negP = E.neg(P)
        inv_vP = None
        for d in digits:
            T, step = _miller_step(E, T, T, Q)
            f = f * f * step
            if d == 1:
                T, step = _miller_step(E, T, P, Q)
                f = f * step
            elif d == -1:
                # f_{i-1} = f_i * f_{-1} * l_{iP,-P} / v_{(i-1)P} with f_{-1} = 1/v_P
                if inv_vP is None:
                    vP = _raw_line(P, negP, Q)
                    if not vP:
                        raise MillerDegenerate(f"vertical at {P} vanished at {Q}")
                    inv_vP = vP.inverse()
                T, step = _miller_step(E, T, negP, Q)
                f = f * step * inv_vP
    else:
        for bit in bin(n)[3:]:
            T, step = _miller_step(E, T, T, Q)
            f = f * f * step
            if bit == "1":
                T, step = _miller_step(E, T, P, Q)
                f = f * step
    if T.x is not None:
        raise ValueError("n * P is not the point at infinity")
    if not f:
        raise MillerDegenerate("Miller value vanished")
    return f


def miller_eval_robust(n, P, Q):
    """Plain chain, then one retry with the signed chain."""
    try:
        return miller_eval(n, P, Q)
    except MillerDegenerate:
        return miller_eval(n, P, Q, signed=True)


def fn_ratio_eval(n, x_pt, Q, signed=False):
    """f(Q) for f = f_{n,x}/f_{n,2x}, so div(f) = n(x) - n(2x)."""
    E = x_pt.curve
    x2 = E.add(x_pt, x_pt)
    if Q.x is None or Q == x_pt or Q == x2:
        raise SupportHit(f"{Q} is in the support of n(x) - n(2x)")
    if signed:
        return miller_eval(n, x_pt, Q, True) / miller_eval(n, x2, Q, True)
    try:
        return miller_eval(n, x_pt, Q) / miller_eval(n, x2, Q)
    except MillerDegenerate:
        return miller_eval(n, x_pt, Q, True) / miller_eval(n, x2, Q, True)


# -- reduction ----------------------------------------------------------------

CHAIN_MIN = 8  # multiplicities from here on are reduced by double-and-add


def _unit_steps(D):
    for P, c in D.items():
        sign = 1 if c > 0 else -1
        for _ in range(abs(c)):
            yield P, sign


def divisor_reduce(D, ep, shift=None):
    """Reduce a degree-zero divisor to (Q) - (O) + div(h).

    Returns ``(Q, c)`` with ``c = ep.value * h(x_pt)/h(x2_pt)``.  With a
    ``shift`` point A the computation runs on (A) + D - (A), which keeps the
    intermediate points away from the marked points for generic A.
    Raises SupportHit when a line factor vanishes at a marked point.
    """
    if D.degree != 0:
        raise ValueError("divisor_reduce needs a degree-zero divisor")
    E = ep.x_pt.curve
    marks = (ep.x_pt, ep.x2_pt)
    num = [E.field.one(), E.field.one()]
    den = [E.field.one(), E.field.one()]

    def factor(a, b, S):
        # multiply h by l_{a,b} / v_S where S = a + b
        for idx, M in enumerate(marks):
            lv = _raw_line(a, b, M)
            vv = _raw_line(S, E.neg(S), M)
            if not lv or not vv:
                raise SupportHit(f"marked point {M} met a line during reduction")
            num[idx] = num[idx] * lv
            den[idx] = den[idx] * vv

    def unfactor(a, b, S):
        # multiply h by v_S / l_{a,b}
        for idx, M in enumerate(marks):
            lv = _raw_line(a, b, M)
            vv = _raw_line(S, E.neg(S), M)
            if not lv or not vv:
                raise SupportHit(f"marked point {M} met a line during reduction")
            num[idx] = num[idx] * vv
            den[idx] = den[idx] * lv

    def chain(P, m):
        # (m P, num, den) with m(P) - (mP) - (m-1)(O) = div(f), by double-and-add
        cnum = [E.field.one(), E.field.one()]
        cden = [E.field.one(), E.field.one()]

        def step(a, b, S):
            for idx, M in enumerate(marks):
                lv = _raw_line(a, b, M)
                vv = _raw_line(S, E.neg(S), M)
                if not lv or not vv:
                    raise SupportHit(f"marked point {M} met a line during reduction")
                cnum[idx] = cnum[idx] * lv
                cden[idx] = cden[idx] * vv

        T = P
        for bit in bin(m)[3:]:
            cnum[:] = [v * v for v in cnum]
            cden[:] = [v * v for v in cden]
            T2 = E.add(T, T)
            step(T, T, T2)
            T = T2
            if bit == "1":
                T2 = E.add(T, P)
                step(T, P, T2)
                T = T2
        return T, cnum, cden

    steps = []
    for P, c in D.items():
        m = abs(c)
        if m < CHAIN_MIN or P.x is None:
            steps.extend(_unit_steps(Divisor([(P, c)])))
            continue
        try:
            T, cnum, cden = chain(P, m)
        except SupportHit:
            steps.extend(_unit_steps(Divisor([(P, c)])))
            continue
        # c (P) = c' ((mP) + (m-1)(O) + div f) with c' = sign of c
        own, other = (num, den) if c > 0 else (den, num)
        for idx in range(2):
            own[idx] = own[idx] * cnum[idx]
            other[idx] = other[idx] * cden[idx]
        steps.append((T, 1 if c > 0 else -1))
    if shift is not None and shift.x is not None:
        steps = [(shift, 1)] + steps + [(shift, -1)]
    S = E.infinity
    for P, sign in steps:
        if P.x is None:
            continue
        if sign > 0:
            T = E.add(S, P)
            factor(S, P, T)
        else:
            # (S) - (P) = (S - P) - (O) + div(v_S / l_{S-P, P})
            T = E.add(S, E.neg(P))
            unfactor(T, P, S)
        S = T
    if S in marks:
        raise SupportHit("reduced point coincides with a marked point")
    c = ep.value * (num[0] * den[1]) / (den[0] * num[1])
    return S, c


def principal_from_lines(lines, E):
    """Divisor of a product of line functions l_{P1,P2}^e given as (P1, P2, e)."""
    D = Divisor()
    for P1, P2, e in lines:
        S = E.add(P1, P2)
        if S.x is None and P1.x is not None:
            part = Divisor([(P1, 1), (E.neg(P1), 1), (E.infinity, -2)])
        elif P1.x is None and P2.x is None:
            part = Divisor()
        elif P1.x is None or P2.x is None:
            R = P2 if P1.x is None else P1
            part = Divisor([(R, 1), (E.neg(R), 1), (E.infinity, -2)])
        else:
            part = Divisor([(P1, 1), (P2, 1), (E.neg(S), 1), (E.infinity, -3)])
        D = D + e * part
    return D


def eval_lines(lines, Q):
    """Value at Q of the product of line functions l_{P1,P2}^e."""
    val = Q.curve.field.one()
    for P1, P2, e in lines:
        val = val * line_value(P1, P2, Q) ** e
    return val


def eval_on_divisor(func, D):
    """f(D) = prod f(P)^mult."""
    val = None
    for P, c in D.items():
        term = func(P) ** c
        val = term if val is None else val * term
    return val


__all__ = [
    "Divisor",
    "EvalPair",
    "line_value",
    "vertical_value",
    "miller_eval",
    "miller_eval_robust",
    "fn_ratio_eval",
    "divisor_reduce",
    "principal_from_lines",
    "eval_lines",
    "eval_on_divisor",
]
