"""The Weil pairing e_n(P, Q) = f(D_Q) / g(D_P).

D_P = (P + R1) - (R1) and D_Q = (Q + R2) - (R2) are translated divisors
with n D_P = div(f) and n D_Q = div(g).  Two independent evaluations are
provided: one reduces n D_P chord by chord (``weil_en_divisor``) and one
uses translated Miller functions (``weil_en_miller``).  R1, R2 come from a
seeded ladder, so results are reproducible and, by Weil reciprocity,
independent of the ladder.
"""

import random

from .divisor_functions import Divisor, EvalPair, divisor_reduce, miller_eval_robust
from .endomorphism import endo_eval, rosati
from .errors import ExhaustedRetries, MillerDegenerate, SupportHit

LADDER_STEPS = 64


def _check_torsion(n, P, Q):
    E = P.curve
    if E.mul(n, P).x is not None or E.mul(n, Q).x is not None:
        raise ValueError("weil pairing arguments must be n-torsion")


def _ladder(E, seed):
    rng = random.Random(seed)
    for _ in range(LADDER_STEPS):
        yield E.random_point(rng), E.random_point(rng)


def _divisor_value(n, P, R1, A, B):
    """f(A)/f(B) for div(f) = n(P + R1) - n(R1), by chord-tangent reduction."""
    E = P.curve
    D = Divisor([(E.add(P, R1), n), (R1, -n)])
    Q, c = divisor_reduce(D, EvalPair(A, B))
    if Q.x is not None:
        raise AssertionError("n D_P must be principal")
    return c


def weil_en_divisor(n, P, Q, seed=0, trace=None):
    """e_n(P, Q) from the divisor definition, with chord-tangent reductions.

    ``trace`` (a list) receives the ladder index that succeeded.
    """
    E = P.curve
    one = E.field.one()
    if P.x is None or Q.x is None:
        return one
    _check_torsion(n, P, Q)
    for step, (R1, R2) in enumerate(_ladder(E, seed)):
        PR, QR = E.add(P, R1), E.add(Q, R2)
        pts = {R1, PR}
        if {R2, QR} & pts or R1 == PR or R2 == QR or None in (PR.x, QR.x):
            continue
        try:
            f_DQ = _divisor_value(n, P, R1, QR, R2)
            g_DP = _divisor_value(n, Q, R2, PR, R1)
        except SupportHit:
            continue
        if trace is not None:
            trace.append(step)
        return f_DQ / g_DP
    raise ExhaustedRetries(f"no disjoint translate found in {LADDER_STEPS} steps")


def weil_en_miller(n, P, Q, seed=0, trace=None):
    """e_n(P, Q) from translated Miller functions f_{n,P}(X - R1), f_{n,Q}(X - R2)."""
    E = P.curve
    one = E.field.one()
    if P.x is None or Q.x is None:
        return one
    _check_torsion(n, P, Q)
    for step, (R1, R2) in enumerate(_ladder(E, seed)):
        # evaluation points of the translated functions
        a, b = E.add(E.add(Q, R2), E.neg(R1)), E.add(R2, E.neg(R1))
        c, d = E.add(E.add(P, R1), E.neg(R2)), E.add(R1, E.neg(R2))
        if any(T.x is None for T in (a, b, c, d)):
            continue
        try:
            f_DQ = miller_eval_robust(n, P, a) / miller_eval_robust(n, P, b)
            g_DP = miller_eval_robust(n, Q, c) / miller_eval_robust(n, Q, d)
        except MillerDegenerate:
            continue
        if trace is not None:
            trace.append(step)
        return f_DQ / g_DP
    raise ExhaustedRetries(f"no non-degenerate translate found in {LADDER_STEPS} steps")


def check_adjoint(n, phi, P, Q, seed=0):
    """e_n(phi P, Q) == e_n(P, rosati(phi) Q)."""
    lhs = weil_en_miller(n, endo_eval(phi, P), Q, seed)
    rhs = weil_en_miller(n, P, endo_eval(rosati(phi), Q), seed)
    return lhs == rhs


__all__ = ["weil_en_divisor", "weil_en_miller", "check_adjoint", "LADDER_STEPS"]
