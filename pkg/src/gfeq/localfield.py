"""Finite-precision local fields Q_p, unramified extensions and tame
Eisenstein extensions, with power series, Hensel lifting and Strassmann
zero counting.

An element is p^(-d) * X where X is integral in the basis pi^i * t^j
(0 <= i < e, 0 <= j < f), stored modulo a power of p consistent with its
absolute pi-adic precision A.  Valuations are pi-adic integers.  An
exact zero is distinguished from "zero to precision A" by A = None
(treated as +infinity); precision is never silently overstated.
"""

import math
from fractions import Fraction

from .ff import FiniteField, sqrt as ff_sqrt


class PrecisionError(ArithmeticError):
    """An operation would return fewer than zero digits of precision."""


def _padic_val_int(n, p, cap):
    if n == 0:
        return cap
    if n % p:
        return 0
    # strip p-power blocks by doubling to avoid long big-int division chains
    v = 0
    block = p
    size = 1
    while True:
        q, r = divmod(n, block)
        if r:
            break
        n = q
        v += size
        if v >= cap:
            return cap
        if size < 32:
            block *= block
            size *= 2
    while size > 1:
        size //= 2
        block = p ** size
        q, r = divmod(n, block)
        if not r:
            n = q
            v += size
            if v >= cap:
                return cap
    return v


class LocalField:
    """Q_p (e = f = 1), an unramified extension (e = 1) or a totally
    tamely ramified extension (f = 1) given by an Eisenstein polynomial."""

    def __init__(self, p, e=1, f=1, unram_poly=None, eis_poly=None, prec=25, label=""):
        self.p = p
        self.e = e
        self.f = f
        self.prec = prec                       # target working precision, pi-adic
        self.cap = prec * 2 + 8 * e            # internal precision ceiling, pi-adic
        self.label = label or "Q_%d" % p if e == 1 and f == 1 else label
        if f > 1:
            self.residue = FiniteField(p, f)
            self.unram_poly = tuple(unram_poly) if unram_poly else self.residue.modulus
        else:
            self.residue = FiniteField(p)
            self.unram_poly = (0, 1)
        if e > 1:
            if f > 1:
                raise ValueError("mixed e > 1, f > 1 towers are out of scope")
            ep = list(eis_poly)
            assert len(ep) == e + 1 and ep[e] == 1
            assert all(c % p == 0 for c in ep[:e]) and ep[0] % (p * p) != 0, "not Eisenstein"
            self.eis_poly = tuple(ep)
        else:
            self.eis_poly = (0, 1)
        self._w = None        # unit w with pi^e = p*w
        self._w_inv = None

    def __repr__(self):
        return self.label or "LocalField(p=%d,e=%d,f=%d)" % (self.p, self.e, self.f)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    # --- construction -----------------------------------------------------

    def _zero_vec(self):
        return [[0] * self.f for _ in range(self.e)]

    def element(self, vec, d=0, prec=None):
        return LocalElement(self, vec, d, self.cap if prec is None else prec)

    def zero(self):
        return LocalElement(self, self._zero_vec(), 0, None)

    def one(self):
        return self.embed_int(1)

    def embed_int(self, n):
        if n == 0:
            return self.zero()
        vec = self._zero_vec()
        vec[0][0] = n
        return LocalElement(self, vec, 0, self.cap)

    def embed_fraction(self, q):
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        dp = _padic_val_int(den, self.p, 10 ** 6)
        den //= self.p ** dp
        x = self.embed_int(num)
        if den != 1:
            x = x.div_int(den)
        x.d += dp
        return x._normalized()

    def is_zero(self, x):
        """Descriptor-protocol zero test: zero to stated precision."""
        return x.is_zero_to_precision()

    def pi(self):
        if self.e == 1:
            return self.embed_int(self.p)
        vec = self._zero_vec()
        vec[1][0] = 1
        return LocalElement(self, vec, 0, self.cap)

    def gen_unram(self):
        vec = self._zero_vec()
        if self.f == 1:
            vec[0][0] = 1
        else:
            vec[0][1] = 1
        return LocalElement(self, vec, 0, self.cap)

    def w_unit(self):
        """The unit w with pi^e = p * w (w = 1 when e = 1)."""
        if self._w is None:
            if self.e == 1:
                self._w = self.one()
            else:
                vec = self._zero_vec()
                for i in range(self.e):
                    vec[i][0] = -(self.eis_poly[i] // self.p)
                self._w = LocalElement(self, vec, 0, self.cap)
            self._w_inv = self._w.inverse()
        return self._w

    def w_unit_inv(self):
        self.w_unit()
        return self._w_inv

    # --- residue field interface -------------------------------------------

    def residue_of(self, x):
        """Image in the residue field; requires v(x) >= 0."""
        x = x._normalized()
        if x.is_exact_zero():
            return self.residue.zero()
        v = x.valuation_or_none()
        if v is not None and v < 0:
            raise ValueError("negative valuation, no residue")
        if x.d > 0:
            vec0 = [a // self.p ** x.d for a in x.vec[0]]
        else:
            vec0 = x.vec[0]
        if x.prec_abs() < 1:
            raise PrecisionError("residue not determined at this precision")
        return self.residue.from_coeffs([a % self.p for a in vec0])

    def lift_residue(self, r):
        """Digit lift of a residue-field element."""
        vec = self._zero_vec()
        for j in range(self.f):
            vec[0][j] = r.coeffs[j] if self.f > 1 else r.coeffs[0]
        return LocalElement(self, vec, 0, self.cap)

    # --- special functions --------------------------------------------------

    def sqrt(self, x):
        """Square root with residue-determined branch; v(x) must be even."""
        v = x.valuation()
        if v % 2 != 0:
            raise ValueError("valuation %d is odd, no square root" % v)
        u = x.shift_pi(-v)
        r0 = self.residue_of(u)
        root0 = ff_sqrt(r0)
        y = self.lift_residue(root0)
        # Newton iteration y <- (y + u/y)/2
        steps = max(1, math.ceil(math.log2(max(2, self.cap)))) + 2
        for _ in range(steps):
            y = (y + u / y).div_int(2)
        assert (y * y - u).valuation_or_none() is None or (y * y - u).valuation_or_none() >= u.prec_abs() - 1
        return y.shift_pi(v // 2)

    def hensel_root(self, coeffs, x0):
        """Unique root of f near x0 when v(f(x0)) > 2 v(f'(x0)); coeffs ascending."""
        def ev(cs, x):
            acc = self.zero()
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        dcoeffs = [coeffs[i].mul_int(i) for i in range(1, len(coeffs))]
        x = x0
        fx = ev(coeffs, x)
        dfx = ev(dcoeffs, x)
        vdf = dfx.valuation()
        vf = fx.valuation_or_none()
        if vf is not None and vf <= 2 * vdf:
            raise ValueError("Hensel criterion fails: v(f)=%s <= 2 v(f')=%s" % (vf, 2 * vdf))
        for _ in range(2 * self.cap):
            fx = ev(coeffs, x)
            if fx.valuation_or_none() is None:
                break
            x = x - fx / ev(dcoeffs, x)
        fx = ev(coeffs, x)
        assert fx.valuation_or_none() is None, "Newton failed to converge"
        return x


class LocalElement:
    """p^(-d) * (integral vector), known modulo pi^prec."""

    __slots__ = ("field", "vec", "d", "prec", "_val")

    def __init__(self, field, vec, d, prec):
        self.field = field
        self.vec = vec
        self.d = d
        self.prec = prec        # absolute pi-adic precision; None = exact
        self._val = False       # lazily cached valuation (False = unset)
        self._reduce_storage()

    # -- representation upkeep

    def _storage_digits(self):
        K = self.field
        a = self.prec if self.prec is not None else K.cap
        return max(0, -(-a // K.e)) + self.d + 2

    def _reduce_storage(self):
        mod = self.field.p ** self._storage_digits()
        self.vec = [[a % mod for a in row] for row in self.vec]

    def _normalized(self):
        K = self.field
        if self.d == 0:
            return self
        x = LocalElement(K, [row[:] for row in self.vec], self.d, self.prec)
        while x.d > 0 and all(a % K.p == 0 for row in x.vec for a in row):
            x.vec = [[a // K.p for a in row] for row in x.vec]
            x.d -= 1
        return x

    def prec_abs(self):
        return self.prec if self.prec is not None else self.field.cap

    def is_exact_zero(self):
        return self.prec is None and all(a == 0 for row in self.vec for a in row)

    def is_zero_to_precision(self):
        return self.valuation_or_none() is None

    def valuation_or_none(self):
        """pi-adic valuation, or None when zero to stated precision."""
        if self._val is not False:
            return self._val
        K = self.field
        lim = self.prec_abs() + K.e * self.d
        best = None
        digit_cap = -(-lim // K.e) + 1
        for i, row in enumerate(self.vec):
            for a in row:
                if a:
                    v = K.e * _padic_val_int(a, K.p, digit_cap) + i
                    if best is None or v < best:
                        best = v
                    if best == i:
                        break
        if best is None or best >= lim:
            self._val = None
        else:
            self._val = best - K.e * self.d
        return self._val

    def valuation(self):
        v = self.valuation_or_none()
        if v is None:
            if self.is_exact_zero():
                raise ZeroDivisionError("valuation of exact zero")
            raise PrecisionError("valuation not determined at precision %s" % self.prec)
        return v

    # -- ring operations

    def _with_common_d(self, other):
        K = self.field
        d = max(self.d, other.d)
        s1 = K.p ** (d - self.d)
        s2 = K.p ** (d - other.d)
        v1 = [[a * s1 for a in row] for row in self.vec]
        v2 = [[a * s2 for a in row] for row in other.vec]
        return d, v1, v2

    def _coerce(self, other):
        if isinstance(other, LocalElement):
            return other
        if isinstance(other, int):
            return self.field.embed_int(other)
        if isinstance(other, Fraction):
            return self.field.embed_fraction(other)
        raise TypeError("cannot coerce %r" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        K = self.field
        d, v1, v2 = self._with_common_d(other)
        vec = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(v1, v2)]
        if self.prec is None and other.prec is None:
            prec = None
        else:
            prec = min(self.prec_abs(), other.prec_abs())
        out = LocalElement(K, vec, d, prec)
        return out._normalized() if d > 0 else out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return LocalElement(self.field, [[-a for a in row] for row in self.vec], self.d, self.prec)

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __rmul__(self, other):
        return self * other

    def __mul__(self, other):
        other = self._coerce(other)
        K = self.field
        e, f, p = K.e, K.f, K.p
        if e == 1 and f == 1:
            return self._mul_qp(other)
        # precision of the product
        if self.prec is None and other.prec is None:
            prec = None
        else:
            v1 = self.valuation_or_none()
            v2 = other.valuation_or_none()
            a1 = self.prec_abs()
            a2 = other.prec_abs()
            lv1 = a1 if v1 is None else v1
            lv2 = a2 if v2 is None else v2
            prec = min(a1 + lv2, a2 + lv1)
            prec = min(prec, K.cap)
        digits = max(0, -(-(prec if prec is not None else K.cap) // e)) + self.d + other.d + 3
        mod = p ** digits
        # multiply as polynomials in pi with unramified-coefficient entries
        prod = [[0] * f for _ in range(2 * e - 1)]
        for i in range(e):
            ri = self.vec[i]
            if all(a == 0 for a in ri):
                continue
            for j in range(e):
                rj = other.vec[j]
                if all(a == 0 for a in rj):
                    continue
                prod[i + j] = _unram_addmul(prod[i + j], ri, rj, K.unram_poly, mod)
        # reduce pi powers >= e via the Eisenstein relation
        for k in range(2 * e - 2, e - 1, -1):
            row = prod[k]
            if any(row):
                for i in range(e):
                    c = K.eis_poly[i]
                    if c:
                        tgt = prod[k - e + i]
                        for j in range(f):
                            tgt[j] = (tgt[j] - c * row[j]) % mod
                prod[k] = [0] * f
        out = LocalElement(K, prod[:e], self.d + other.d, prec)
        return out._normalized() if out.d > 0 else out

    def _mul_qp(self, other):
        K = self.field
        if self.prec is None and other.prec is None:
            prec = None
        else:
            v1 = self.valuation_or_none()
            v2 = other.valuation_or_none()
            a1, a2 = self.prec_abs(), other.prec_abs()
            prec = min(a1 + (a2 if v2 is None else v2), a2 + (a1 if v1 is None else v1), K.cap)
        out = LocalElement(K, [[self.vec[0][0] * other.vec[0][0]]], self.d + other.d, prec)
        return out._normalized() if out.d > 0 else out

    def mul_int(self, n):
        return LocalElement(self.field, [[a * n for a in row] for row in self.vec], self.d, self.prec)

    def div_int(self, n):
        """Division by a rational integer, exact in the p-part."""
        K = self.field
        if n < 0:
            return (-self).div_int(-n)
        k = _padic_val_int(n, K.p, 10 ** 6)
        n //= K.p ** k
        digits = self._storage_digits() + k + 2
        inv = pow(n, -1, K.p ** digits)
        out = LocalElement(K, [[a * inv for a in row] for row in self.vec], self.d + k, self.prec)
        return out._normalized()

    def shift_pi(self, k):
        """Multiplication by pi^k (k may be negative)."""
        K = self.field
        if k == 0:
            return self
        q, r = divmod(k, K.e)
        out = self
        if r:
            vec = K._zero_vec()
            vec[r][0] = 1
            out = out * LocalElement(K, vec, 0, None)
        if q > 0:
            out = out.mul_int(K.p ** q) * K.w_unit() ** q if K.e > 1 else out.mul_int(K.p ** q)
        elif q < 0:
            if K.e > 1:
                out = out * K.w_unit_inv() ** (-q)
            out = LocalElement(K, out.vec, out.d - q, out.prec)._normalized()
        return out

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        K = self.field
        v = self.valuation()   # raises on (exact or apparent) zero
        u = self.shift_pi(-v)
        # u is now a unit: Newton-invert from the residue inverse
        r = K.residue_of(u)
        y = K.lift_residue(r.inverse())
        two = K.embed_int(2)
        steps = max(1, math.ceil(math.log2(max(2, K.cap)))) + 2
        for _ in range(steps):
            y = y * (two - u * y)
        return y.shift_pi(-v)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        """Equality to the shared precision."""
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, LocalElement):
            return NotImplemented
        return (self - other).valuation_or_none() is None

    def with_precision(self, a):
        out = LocalElement(self.field, [row[:] for row in self.vec], self.d,
                           a if self.prec is None else min(a, self.prec))
        return out

    def digits_str(self, n=None):
        """pi-adic digit string of an integral element, least significant first.

        Digits are residue-field representatives encoded as integers in
        [0, q); for Q_p this is the usual p-adic expansion.
        """
        K = self.field
        x = self._normalized()
        if x.d > 0:
            raise ValueError("element is not integral")
        n = n if n is not None else min(self.prec_abs(), K.prec)
        out = []
        for _ in range(n):
            r = K.residue_of(x)
            out.append(str(r.to_int()))
            x = (x - K.lift_residue(r)).shift_pi(-1)
        return ",".join(out)

    def rational_digits(self, modulus):
        """x mod p^k as an ordinary integer (Q_p elements only)."""
        K = self.field
        assert K.e == 1 and K.f == 1
        x = self._normalized()
        if x.d > 0:
            raise ValueError("not integral")
        return x.vec[0][0] % modulus

    def __repr__(self):
        v = self.valuation_or_none()
        if v is None:
            return "O(pi^%s)" % (self.prec if self.prec is not None else "inf")
        return "loc(v=%d, d=%d, prec=%s)" % (v, self.d, self.prec)


def _unram_addmul(acc, a, b, modulus, mod_int):
    """acc + a*b in the unramified coefficient ring, mod (modulus, mod_int)."""
    f = len(modulus) - 1
    if f == 1:
        return [(acc[0] + a[0] * b[0]) % mod_int]
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(2 * f - 2, f - 1, -1):
        c = prod[i]
        if c:
            for j in range(f + 1):
                prod[i - f + j] -= c * modulus[j]
            prod[i] = 0
    return [(acc[j] + prod[j]) % mod_int for j in range(f)]


# ---------------------------------------------------------------------------
# completions of the number fields


def complete_at(K, prime, prec=25):
    """The completion K_P with the embedding K -> K_P.

    Returns (field, embed) where embed maps NFElement (or Fraction) into
    the completion.  Unramified primes Hensel-lift the residue root;
    the two tame totally ramified cases use an Eisenstein shift of the
    minimal polynomial.
    """
    from .numberfield import NumberField

    p = prime.p
    if prime.e == 1:
        L = LocalField(p, 1, prime.f, prec=prec,
                       label="%s_P%d" % (getattr(K, "label", "K"), p))
        root_res = prime.residue_map().root
        start = _lift_vec(L, root_res)
        coeffs = [L.embed_fraction(c) for c in K.min_poly.coeffs]
        theta = L.hensel_root(coeffs, start)
    else:
        # totally ramified, tame: shift so that m(t + c) is Eisenstein
        n = K.degree
        assert prime.f == 1 and prime.e == n
        c_shift = None
        for c in range(p):
            shifted = K.min_poly.shift_var(Fraction(c))
            ints = [x.numerator for x in shifted.coeffs]
            if all(x % p == 0 for x in ints[:n]) and ints[0] % (p * p) != 0:
                c_shift = c
                eis = ints
                break
        if c_shift is None:
            raise ValueError("no Eisenstein shift found; completion unsupported")
        L = LocalField(p, n, 1, eis_poly=eis, prec=prec,
                       label="%s_P%d" % (getattr(K, "label", "K"), p))
        theta = L.pi() + L.embed_int(c_shift)

    def embed(a):
        if isinstance(a, (int, Fraction)):
            return L.embed_fraction(Fraction(a))
        acc = L.zero()
        for c in reversed(a.coords):
            acc = acc * theta + L.embed_fraction(c)
        return acc

    return L, embed


def _lift_vec(L, r):
    vec = L._zero_vec()
    for j, c in enumerate(r.coeffs):
        vec[0][j] = c
    return LocalElement(L, vec, 0, L.cap)


def padic_field(p, prec=25):
    """Plain Q_p with an embedding of Q."""
    L = LocalField(p, 1, 1, prec=prec)
    return L, L.embed_fraction
