"""Jacobian arithmetic in Mumford representation via Cantor's algorithm.

Divisors live on the normalized model y^2 = F(X) of an odd-degree
hyperelliptic curve, generic over the coefficient field (finite, Q,
number field, local).  Over local fields precision is propagated by the
element arithmetic itself; scalar multiplication aborts with
PrecisionError once coefficients drop below half the working precision,
signalling the caller to retry at doubled precision.
"""

from .ff import factorize
from .localfield import LocalElement, PrecisionError
from .poly import Poly


class MumfordDivisor:
    """Pair (u, v), u monic, deg v < deg u <= genus, v^2 = F mod u."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve, u, v, check=True):
        self.curve = curve
        self.u = u
        self.v = v
        if check:
            if u.is_zero() or not _is_monic(u):
                raise ValueError("u must be monic")
            r = (v * v - curve.fnorm) % u
            if not r.is_zero():
                raise ValueError("v^2 - f != 0 mod u")

    def is_identity(self):
        return self.u.degree == 0

    def __eq__(self, other):
        return (self.u - other.u).is_zero() and (self.v - other.v).is_zero()

    def __repr__(self):
        return "Div(u=%r, v=%r)" % (self.u, self.v)


def _is_monic(u):
    lc = u.lc()
    f = u.field
    if isinstance(lc, LocalElement):
        return (lc - 1).valuation_or_none() is None
    return lc == f.one()


def identity_divisor(curve):
    f = curve.field
    return MumfordDivisor(curve, Poly(f, [f.one()]), Poly(f, []), check=False)


def divisor_from_points(curve, points):
    """Mumford form of sum (P_i) - n*infinity, P_i in original coordinates."""
    D = identity_divisor(curve)
    for pt in points:
        if not curve.is_on_curve(pt):
            raise ValueError("point %r is not on the curve" % (pt,))
        X, Y = curve.to_normalized(pt)
        f = curve.field
        u = Poly(f, [-X, f.one()])
        v = Poly(f, [Y])
        D = cantor_add(D, MumfordDivisor(curve, u, v))
    return D


def cantor_add(D1, D2):
    """Group law on the Jacobian (composition then reduction)."""
    curve = D1.curve
    F = curve.fnorm
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    d0, a, b = u1.xgcd(u2)
    if d0.degree == 0:
        # common case: coprime supports
        d = d0
        s1, s2, s3 = a, b, Poly(curve.field, [])
    else:
        d, c1, c2 = d0.xgcd(v1 + v2)
        s1, s2, s3 = c1 * a, c1 * b, c2
    u = (u1 * u2) // (d * d)
    num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + F)
    v = (num // d) % u
    u, v = _cantor_reduce(curve, u, v)
    return MumfordDivisor(curve, u, v, check=False)


def _cantor_reduce(curve, u, v):
    F = curve.fnorm
    g = curve.genus
    while u.degree > g:
        u2 = (F - v * v) // u
        u2 = u2.monic()
        v = (-v) % u2
        u = u2
    u = u.monic()
    return u, v


def negate(D):
    return MumfordDivisor(D.curve, D.u, (-D.v) % D.u if D.u.degree > 0 else -D.v, check=False)


def scalar_mul(n, D, prec_guard=True):
    """n*D by double-and-add; guards local precision when requested."""
    if n < 0:
        return scalar_mul(-n, negate(D), prec_guard)
    result = identity_divisor(D.curve)
    base = D
    while n:
        if n & 1:
            result = cantor_add(result, base)
            _check_precision(result, prec_guard)
        n >>= 1
        if n:
            base = cantor_add(base, base)
            _check_precision(base, prec_guard)
    return result


def _check_precision(D, prec_guard):
    if not prec_guard:
        return
    coeffs = list(D.u.coeffs) + list(D.v.coeffs)
    if not coeffs or not isinstance(coeffs[0], LocalElement):
        return
    field = coeffs[0].field
    floor = min(c.prec_abs() for c in coeffs)
    if floor < field.prec // 2:
        raise PrecisionError("Cantor arithmetic drained precision to %d" % floor)


def element_order(D, M):
    """Exact order of D given a multiple M of the group order."""
    if not scalar_mul(M, D).is_identity():
        raise ArithmeticError("M*D != 0: the supplied group-order multiple is wrong")
    n = M
    for ell in factorize(M):
        while n % ell == 0 and scalar_mul(n // ell, D).is_identity():
            n //= ell
    return n


def reduce_divisor(D, residue_map, target_curve):
    """Coefficient-wise reduction of (u, v) at a good prime."""
    ubar = residue_map.reduce_poly(D.u)
    vbar = residue_map.reduce_poly(D.v)
    return MumfordDivisor(target_curve, ubar, vbar)


def reduce_divisor_mod_p(D, p, target_curve):
    """Reduction of a divisor over Q modulo p."""
    Fp = target_curve.field

    def red_poly(poly):
        out = []
        for c in poly.coeffs:
            if c.denominator % p == 0:
                raise ValueError("divisor is not integral at %d" % p)
            out.append(Fp.from_int_mod(c.numerator) * Fp.from_int_mod(c.denominator).inverse())
        return Poly(Fp, out)

    return MumfordDivisor(target_curve, red_poly(D.u), red_poly(D.v))


def embed_divisor(D, embed, target_curve):
    """Base change of a divisor along a field embedding (e.g. K -> K_P)."""
    u = Poly(target_curve.field, [embed(c) for c in D.u.coeffs])
    v = Poly(target_curve.field, [embed(c) for c in D.v.coeffs])
    return MumfordDivisor(target_curve, u, v, check=False)


# ---------------------------------------------------------------------------
# torsion bounding by reduction


def torsion_gcd(curve, primes, budget=None, reduce_fn=None):
    """gcd of #J over the given good witness primes (rational curve case)."""
    import math
    from .curves import jacobian_order, DEFAULT_BUDGET
    budget = budget or DEFAULT_BUDGET
    g = None
    orders = {}
    for p in primes:
        Cbar, good = curve.reduce_mod_p(p) if reduce_fn is None else reduce_fn(p)
        if not good:
            raise ValueError("bad reduction at witness %r" % (p,))
        n = jacobian_order(Cbar, budget)
        orders[str(p)] = n
        g = n if g is None else math.gcd(g, n)
    return g, orders
