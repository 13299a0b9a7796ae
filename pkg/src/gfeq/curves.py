"""Elliptic and hyperelliptic curve models, invariants, point counting,
L-polynomials and Jacobian orders.

Hyperelliptic models are c * Y^2 = f(X); internally the normalized model
y^2 = c f(X) (y = c Y) is used, but points are reported in the original
coordinates.  All in-scope curves have odd-degree f, hence one point at
infinity.
"""

from fractions import Fraction

from . import kernels
from .ff import FiniteField, factorize
from .poly import Poly, QQ, ff_is_squarefree

DEFAULT_BUDGET = 2 ** 32


class BudgetExceeded(RuntimeError):
    """The enumeration budget refuses this count (never a partial count)."""


# ---------------------------------------------------------------------------
# elliptic curves


class EllipticCurve:
    """Long Weierstrass model over Q (or a prime field)."""

    def __init__(self, a1, a2, a3, a4, a6, label=""):
        self.a = (Fraction(a1), Fraction(a2), Fraction(a3), Fraction(a4), Fraction(a6))
        self.label = label

    @property
    def a1(self):
        return self.a[0]

    @property
    def a2(self):
        return self.a[1]

    @property
    def a3(self):
        return self.a[2]

    @property
    def a4(self):
        return self.a[3]

    @property
    def a6(self):
        return self.a[4]

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def invariants(self):
        """(c4, c6, disc, j); j is None for a singular model."""
        b2, b4, b6, b8 = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        j = c4 ** 3 / disc if disc != 0 else None
        return c4, c6, disc, j

    def discriminant(self):
        return self.invariants()[2]

    def is_singular(self):
        return self.discriminant() == 0

    def __repr__(self):
        return "EllipticCurve%s%s" % (self.label and "[%s]" % self.label, self.a)


def elliptic_invariants(model):
    c4, c6, disc, j = model.invariants()
    assert c4 ** 3 - c6 ** 2 == 1728 * disc
    return c4, c6, disc, j


def ec_trace(model, p, budget=DEFAULT_BUDGET):
    """a_p = p + 1 - #E(F_p); requires odd p of good reduction."""
    if p == 2:
        raise ValueError("p = 2 not supported")
    c4, c6, disc, j = model.invariants()
    num, den = Fraction(disc).numerator, Fraction(disc).denominator
    if den % p == 0 or num % p == 0:
        if den % p == 0:
            raise ValueError("model is not p-integral")
        raise ValueError("singular reduction at %d: %s" % (p, reduction_type(model, p)))
    b2, b4, b6, _ = model.b_invariants()
    if p <= 10 ** 5:
        # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        affine = kernels.ec_count_prime(p, 4 % p, int(b2 % p), int((2 * b4) % p), int(b6 % p))
        ap = p - affine
    else:
        ap = _ec_trace_bsgs(model, p)
    assert ap * ap <= 4 * p, "Hasse bound violated"
    return ap


def reduction_type(model, p):
    """('mult', +-1) for a node (split sign), ('add', 0) for a cusp."""
    b2, b4, b6, _ = model.b_invariants()
    Fp = FiniteField(p)
    f = Poly.from_ints(Fp, [int(b6 % p), int((2 * b4) % p), int(b2 % p), 4 % p])
    g = f.gcd(f.derivative())
    if g.degree == 0:
        raise ValueError("good reduction at %d" % p)
    if g.degree > 1 or f.degree < 3:
        return ("add", 0)
    r = -g.coeffs[0] / g.coeffs[1]
    # y^2 = f''(r)/2 (x-r)^2 + ...: split node iff that is a square
    h = f.derivative().derivative().evaluate(r) / Fp.from_int_mod(2)
    if h.is_zero():
        return ("add", 0)
    from .ff import is_square
    return ("mult", 1 if is_square(h) else -1)


def _ec_point_order(p, A, B, pt, bound):
    """Order of pt on y^2 = x^3 + Ax + B via BSGS in the Hasse interval."""
    import math
    # group operations in affine coordinates over F_p
    def add(P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and (y1 + y2) % p == 0:
            return None
        if P == Q:
            lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)

    def mul(n, P):
        R = None
        while n:
            if n & 1:
                R = add(R, P)
            P = add(P, P)
            n >>= 1
        return R

    lo = p + 1 - bound
    m = int(math.isqrt(4 * bound)) + 1
    baby = {}
    Q = None
    for j in range(m):
        baby.setdefault(Q, j)
        Q = add(Q, pt)
    # giant steps: find n in [lo, hi] with n*pt = O
    mp = mul(m, pt)
    R = mul(lo, pt)
    hits = []
    i = 0
    while lo + i * m <= p + 1 + bound + m:
        if R in baby:
            hits.append(lo + i * m - baby[R])
        R = add(R, mp)
        i += 1
    hits = sorted({n for n in hits if n > 0 and mul(n, pt) is None})
    assert hits, "BSGS found no annihilator"
    n0 = hits[0]
    for n in hits[1:]:
        import math as _m
        n0 = _m.gcd(n0, n)
    # reduce to the exact order
    for ell, e in factorize(n0).items():
        while n0 % ell == 0 and mul(n0 // ell, pt) is None:
            n0 //= ell
    return n0, add, mul


def _ec_trace_bsgs(model, p):
    """Trace via group order: deterministic point sampling, BSGS orders."""
    import math
    b2, b4, b6, _ = model.b_invariants()
    # short model y^2 = x^3 + Ax + B (p > 3)
    c4, c6, _, _ = model.invariants()
    A = int((-27 * c4) % p)
    B = int((-54 * c6) % p)
    bound = 2 * int(math.isqrt(p)) + 1
    lcm = 1
    for x in range(p):
        rhs = (x * x * x + A * x + B) % p
        if rhs == 0:
            continue
        if pow(rhs, (p - 1) // 2, p) != 1:
            continue
        y = _mod_sqrt(rhs, p)
        n, _, mul = _ec_point_order(p, A, B, (x, y), bound)
        lcm = lcm * n // math.gcd(lcm, n)
        # count multiples of lcm in the Hasse interval
        lo = p + 1 - bound
        hi = p + 1 + bound
        first = -(-lo // lcm) * lcm
        if first + lcm > hi:
            return p + 1 - first
    raise AssertionError("group order not pinned down")


def _mod_sqrt(a, p):
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks on integers
    s, m = p - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = 2
    while pow(z, (p - 1) // 2, p) == 1:
        z += 1
    c = pow(z, s, p)
    t = pow(a, s, p)
    r = pow(a, (s + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


# ---------------------------------------------------------------------------
# hyperelliptic curves


class HyperellipticCurve:
    """c * Y^2 = f(X) with odd deg f; normalized to y^2 = F, F = c f."""

    def __init__(self, field, f, y2_scale=None, name=""):
        self.field = field
        self.f_orig = f
        self.c = y2_scale if y2_scale is not None else field.one()
        self.fnorm = f.scale(self.c)
        self.name = name
        if self.fnorm.degree % 2 == 0:
            raise ValueError("even-degree models are out of scope")
        self.genus = (self.fnorm.degree - 1) // 2

    def __repr__(self):
        return self.name or "HypCurve(genus %d)" % self.genus

    def is_on_curve(self, pt):
        """pt in original coordinates, or the string 'inf'."""
        if pt == "inf":
            return True
        X, Y = pt
        return self.field.is_zero(self.c * Y * Y - self.f_orig.evaluate(X))

    def to_normalized(self, pt):
        if pt == "inf":
            return pt
        X, Y = pt
        return (X, self.c * Y)

    def from_normalized(self, pt):
        if pt == "inf":
            return pt
        X, Y = pt
        one = self.field.one()
        return (X, Y * (one / self.c))

    def involution(self, pt):
        if pt == "inf":
            return pt
        X, Y = pt
        return (X, -Y)

    def reduce_at(self, residue_map):
        """Coefficient-wise reduction; returns (curve over F_q, good flag)."""
        fbar = residue_map.reduce_poly(self.fnorm)
        target = residue_map.target
        good = (fbar.degree == self.fnorm.degree) and ff_is_squarefree(fbar)
        return HyperellipticCurve(target, fbar, name=self.name + "~"), good

    def reduce_mod_p(self, p):
        """Reduction of a curve over Q modulo p."""
        target = FiniteField(p)
        den = 1
        for cf in self.fnorm.coeffs:
            den = den * cf.denominator // __import__("math").gcd(den, cf.denominator)
        if den % p == 0:
            raise ValueError("non-integral coefficients at %d" % p)
        fbar = Poly(target, [target.from_int_mod(int(cf * den)) for cf in self.fnorm.coeffs])
        fbar = fbar.scale(target.from_int_mod(den).inverse())
        good = (fbar.degree == self.fnorm.degree) and ff_is_squarefree(fbar)
        return HyperellipticCurve(target, fbar, name=self.name + "~"), good


def hyp_count(curve, k=1, budget=DEFAULT_BUDGET):
    """#C(F_{q^k}) projective for a curve over F_q, via the binomial kernel."""
    field = curve.field
    if not isinstance(field, FiniteField):
        raise TypeError("count requires a curve over a finite field")
    q = field.order
    if q ** k > budget:
        raise BudgetExceeded("|F_q^k| = %d^%d exceeds the budget %d" % (q, k, budget))
    f = curve.fnorm
    sparse = {i: c for i, c in enumerate(f.coeffs) if not field.is_zero(c)}
    if set(sparse) <= {0, f.degree} and 0 in sparse:
        a, b = sparse[f.degree], sparse[0]
        p, m = field.p, field.k
        if (q ** k) <= (1 << 14):
            affine = _hyp_count_direct(curve, k)
        else:
            T = kernels.get_tables(p, m * k)
            root = T.embed_subfield_root([c % p for c in _int_modulus(field)], m)
            a_code = T.embed_code(list(a.coeffs), root)
            b_code = T.embed_code(list(b.coeffs), root)
            affine = kernels.count_affine_axlb(p, m * k, a_code, b_code, f.degree)
    else:
        if q ** k > (1 << 22):
            raise BudgetExceeded("non-binomial model too large for direct enumeration")
        affine = _hyp_count_direct(curve, k)
    n = affine + 1      # one point at infinity (odd degree)
    g = curve.genus
    import math
    assert abs(n - (q ** k + 1)) <= 2 * g * math.isqrt(q ** k) + 2 * g, "Weil bound violated"
    return n


def _int_modulus(field):
    return [c for c in field.modulus]


def _hyp_count_direct(curve, k):
    """Direct x-enumeration over F_{q^k} using OO field arithmetic."""
    from .ff import is_square
    base = curve.field
    if k == 1:
        ext = base
        f = curve.fnorm
    else:
        ext = FiniteField(base.p, base.k * k)
        # embed via a root of the base modulus in the extension
        root = _subfield_root(base, ext)
        f = Poly(ext, [_embed_ff(c, root, ext) for c in curve.fnorm.coeffs])
    count = 0
    for x in ext.elements():
        v = f.evaluate(x)
        if v.is_zero():
            count += 1
        elif is_square(v):
            count += 2
    return count


def _subfield_root(base, ext):
    from .poly import ff_roots
    mod = Poly(ext, [ext.from_int_mod(c) for c in base.modulus])
    roots = sorted(ff_roots(mod), key=lambda r: r.to_int())
    assert roots, "no embedding found"
    return roots[0]


def _embed_ff(c, root, ext):
    acc = ext.zero()
    for d in reversed(c.coeffs):
        acc = acc * root + ext.from_int_mod(d)
    return acc


def hyp_count_brute(curve):
    """Independent oracle: full (x, y) enumeration plus infinity."""
    field = curve.field
    count = 1
    for x in field.elements():
        fx = curve.fnorm.evaluate(x)
        for y in field.elements():
            if (y * y - fx).is_zero():
                count += 1
    return count


def l_polynomial(curve, budget=DEFAULT_BUDGET, check_extra=False):
    """L(T) coefficients [a_0..a_2g] from counts over F_{q^k}, k <= g."""
    field = curve.field
    q = field.order
    g = curve.genus
    for k in range(1, g + 1):
        if q ** k > budget:
            raise BudgetExceeded("count over F_{%d^%d} needed for the L-polynomial "
                                 "exceeds the budget" % (q, k))
    counts = [hyp_count(curve, k, budget) for k in range(1, g + 1)]
    S = [q ** k + 1 - counts[k - 1] for k in range(1, g + 1)]
    e = [1]
    for k in range(1, g + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * S[i - 1]
        assert acc % k == 0, "Newton identity produced a non-integer"
        e.append(acc // k)
    a = [(-1) ** k * e[k] for k in range(g + 1)]
    for k in range(g + 1, 2 * g + 1):
        a.append(q ** (k - g) * a[2 * g - k])
    # functional equation residual must vanish identically
    for k in range(g + 1):
        assert a[2 * g - k] == q ** (g - k) * a[k], "functional equation residual nonzero"
    if check_extra and q ** (g + 1) <= budget:
        predicted = _count_from_lpoly(a, q, g + 1)
        actual = hyp_count(curve, g + 1, budget)
        assert predicted == actual, "overdetermination check failed"
    return a


def _count_from_lpoly(a, q, k):
    """#C(F_{q^k}) recovered from L(T) via Newton power sums."""
    g2 = len(a) - 1
    # power sums of the reciprocal roots from the coefficients
    e = [(-1) ** i * a[i] for i in range(g2 + 1)]
    S = []
    for n in range(1, k + 1):
        acc = (-1) ** (n - 1) * n * e[n] if n <= g2 else 0
        for i in range(1, n):
            if n - i <= g2:
                acc += (-1) ** (n - i - 1) * e[n - i] * S[i - 1]
        S.append(acc)
    return q ** k + 1 - S[k - 1]


def jacobian_order(curve, budget=DEFAULT_BUDGET, check_extra=False):
    """#J(F_q) = L(1), with the Hasse-Weil interval asserted."""
    import math
    a = l_polynomial(curve, budget, check_extra)
    n = sum(a)
    q = curve.field.order
    g = curve.genus
    lo = (math.isqrt(q) - 1) ** (2 * g)
    hi = (math.isqrt(q) + 2) ** (2 * g)
    assert lo <= n <= hi and n > 0, "Jacobian order outside the Weil interval"
    return n
