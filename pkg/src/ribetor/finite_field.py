"""Exact arithmetic in F_p and F_{p^k}.

Elements of F_{p^k} are coefficient tuples ``(c0, ..., c_{k-1})`` in the
power basis of a fixed monic irreducible modulus.  The modulus is the first
irreducible polynomial in the order obtained by reading ``(c0, ..., c_{k-1})``
as base-``p`` digits of an integer, so every run picks the same field model.
"""

from functools import lru_cache

from .errors import (
    CtxMismatch,
    DegreeZero,
    DivisionByZero,
    FieldTooLarge,
    NotPrime,
    ZeroElement,
)
from .numtheory import factorint, is_prime, order_from_multiple

MAX_Q = 2**62


# -- polynomials over F_p, coefficient lists low -> high ---------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] += ai * bj
    return _poly_rem([c % p for c in res], mod, p)


def _poly_rem(a, mod, p):
    a = _trim(list(a))
    k = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) > k:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - k
        if coef:
            for i, mi in enumerate(mod):
                a[shift + i] = (a[shift + i] - coef * mi) % p
        a.pop()
        _trim(a)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_rem(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(mod, p):
    """Ben-Or test: no factor of degree <= k/2 divides the monic ``mod``."""
    k = len(mod) - 1
    if k <= 1:
        return k == 1
    if mod[0] == 0:
        return False
    xpow = [0, 1]
    for _ in range(k // 2):
        xpow = _poly_powmod(xpow, p, mod, p)
        g = _poly_gcd(mod, _poly_sub(xpow, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def first_irreducible(p, k):
    for idx in range(p**k):
        low = []
        n = idx
        for _ in range(k):
            low.append(n % p)
            n //= p
        mod = low + [1]
        if is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- field context ------------------------------------------------------------

class FieldCtx:
    """The field F_{p^k} with a deterministic modulus."""

    __slots__ = ("p", "k", "q", "modulus", "_zero", "_one", "_nonresidue", "__weakref__")

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._zero = FieldElement(self, (0,) * k)
        self._one = FieldElement(self, (1,) + (0,) * (k - 1))
        self._nonresidue = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return self is other or (
            isinstance(other, FieldCtx) and self.p == other.p and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __reduce__(self):
        return (build_extension, (self.p, self.k))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def __call__(self, value):
        """Coerce an int or coefficient sequence into the field."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise CtxMismatch(f"{value.ctx} vs {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [c % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def from_index(self, idx):
        """Element whose coefficients are the base-p digits of ``idx``."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(idx % self.p)
            idx //= self.p
        return FieldElement(self, tuple(coeffs))

    def random(self, rng):
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def elements(self):
        for idx in range(self.q):
            yield self.from_index(idx)

    @property
    def order_factors(self):
        """Factorisation of q - 1, computed once per modulus."""
        return _cyclotomic_factor(self.p, self.k)

    def nonresidue(self):
        if self._nonresidue is None:
            half = (self.q - 1) // 2
            idx = 2
            while True:
                z = self.from_index(idx)
                if z ** half != self._one:
                    self._nonresidue = z
                    break
                idx += 1
        return self._nonresidue


@lru_cache(maxsize=None)
def _cyclotomic_factor(p, k):
    # p^k - 1 = prod over d | k of Phi_d(p); factor the pieces separately.
    acc = {}
    for d in range(1, k + 1):
        if k % d:
            continue
        for prime, e in factorint(_cyclotomic_value(d, p)):
            acc[prime] = acc.get(prime, 0) + e
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _cyclotomic_value(d, x):
    val = x**d - 1
    for e in range(1, d):
        if d % e == 0:
            val //= _cyclotomic_value(e, x)
    return val


@lru_cache(maxsize=None)
def build_extension(p, k):
    """Return the (cached) context for F_{p^k}."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p in (2, 3):
        raise NotPrime(f"characteristic {p} is not supported")
    if k < 1:
        raise DegreeZero("extension degree must be >= 1")
    if p**k > MAX_Q:
        raise FieldTooLarge(f"q = {p}^{k} exceeds 2^62")
    modulus = (0, 1) if k == 1 else first_irreducible(p, k)
    return FieldCtx(p, k, modulus)


# -- elements -----------------------------------------------------------------

class FieldElement:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
            return other.c
        if isinstance(other, int):
            return (other % self.ctx.p,) + (0,) * (self.ctx.k - 1)
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.c, oc)))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.c, oc)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(-a % p for a in self.c))

    def __mul__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        if k == 1:
            return FieldElement(ctx, (self.c[0] * oc[0] % p,))
        a, b = self.c, oc
        res = [0] * (2 * k - 1)
        for i in range(k):
            ai = a[i]
            if ai:
                for j in range(k):
                    res[i + j] += ai * b[j]
        mod = ctx.modulus
        for top in range(2 * k - 2, k - 1, -1):
            coef = res[top] % p
            if coef:
                base = top - k
                for i in range(k):
                    res[base + i] -= coef * mod[i]
        return FieldElement(ctx, tuple(r % p for r in res[:k]))

    __rmul__ = __mul__

    def inverse(self):
        ctx = self.ctx
        p = ctx.p
        if not any(self.c):
            raise DivisionByZero("inverse of zero")
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.c[0], p - 2, p),))
        # extended Euclid on (modulus, a)
        r0, r1 = list(ctx.modulus), _trim(list(self.c))
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv = pow(r1[-1], p - 2, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            while len(r) >= len(r1) and r:
                coef = r[-1] * inv % p
                shift = len(r) - len(r1)
                q[shift] = coef
                for i, c in enumerate(r1):
                    r[shift + i] = (r[shift + i] - coef * c) % p
                _trim(r)
            qs1 = _poly_mul_plain(q, s1, p)
            s0, s1 = s1, _poly_sub(s0, qs1, p)
            r0, r1 = r1, r
        inv_c = pow(r1[0], p - 2, p)
        coeffs = [c * inv_c % p for c in s1]
        coeffs += [0] * (ctx.k - len(coeffs))
        return FieldElement(ctx, tuple(coeffs[: ctx.k]))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.c[0], e, ctx.p),))
        e %= ctx.q - 1 if any(self.c) else 1 << 200
        result = ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and (self.ctx is other.ctx or self.ctx == other.ctx)
        if isinstance(other, int):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_zero(self):
        return not any(self.c)

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.c[0]}"
        return f"F{self.ctx.p}^{self.ctx.k}{list(self.c)}"

    def to_json(self):
        return {"p": self.ctx.p, "k": self.ctx.k, "coeffs": list(self.c)}

    @property
    def coeffs(self):
        return self.c

    def frobenius(self, e=1):
        return frobenius_auto(self, e)

    def pth_root(self):
        return frobenius_auto(self, self.ctx.k - 1)

    def is_square(self):
        if not any(self.c):
            return True
        return self ** ((self.ctx.q - 1) // 2) == 1


def _poly_mul_plain(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            res[i + j] += ai * bj
    return _trim([c % p for c in res])


# -- named operations ---------------------------------------------------------

def field_arith(a, b, op):
    """Dispatch ``op`` in {add, sub, mul, div} on two elements of one field."""
    if a.ctx != b.ctx:
        raise CtxMismatch(f"{a.ctx} vs {b.ctx}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius_auto(a, e=1):
    """a^(p^e); e = k is the identity and e = k - 1 is the p-th root."""
    ctx = a.ctx
    e %= ctx.k
    if e == 0:
        return a
    return a ** (ctx.p**e)


def mult_order(a):
    if a.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    ctx = a.ctx
    one = ctx.one()
    m = ctx.q - 1
    for prime, e in ctx.order_factors:
        for _ in range(e):
            if a ** (m // prime) == one:
                m //= prime
            else:
                break
    return m


def sqrt_in_fq(a):
    """Square root with the lexicographically smaller coefficient tuple, or None."""
    ctx = a.ctx
    if a.is_zero():
        return a
    q = ctx.q
    if a ** ((q - 1) // 2) != 1:
        return None
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
    else:
        # Tonelli-Shanks
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        z = ctx.nonresidue()
        m, c, tt, r = s, z**t, a**t, a ** ((t + 1) // 2)
        one = ctx.one()
        while tt != one:
            i, t2 = 0, tt
            while t2 != one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            tt, r = tt * c, r * b
    neg = -r
    return r if r.c <= neg.c else neg


__all__ = [
    "FieldCtx",
    "FieldElement",
    "build_extension",
    "field_arith",
    "frobenius_auto",
    "mult_order",
    "sqrt_in_fq",
    "is_irreducible",
    "first_irreducible",
    "order_from_multiple",
]
