"""Finite fields F_p and F_{p^k} with square/l-th-power predicates.

Elements are immutable; a field instance may be shared freely between
workers.  Extension fields use the first irreducible monic polynomial of
the requested degree in the deterministic order described in
``_find_irreducible`` so that runs are reproducible without a shared
table convention.
"""

from functools import lru_cache


def is_probable_prime(n, rounds=20):
    """Miller-Rabin with fixed witness list; deterministic below 3.3e24."""
    if n < 2:
        return False
    small = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small[:rounds]:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n):
    """Trial-division factorization, returns {prime: exponent}."""
    fac = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


class FFElement:
    """Element of F_{p^k}, stored as a coefficient tuple of length k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FFElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FFElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field._mul(self, other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in %s" % self.field)
        return self ** (self.field.order - 2)

    def is_zero(self):
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.coerce(other)
        return isinstance(other, FFElement) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def to_int(self):
        """Encode as an integer in [0, q) by base-p digits."""
        n = 0
        for a in reversed(self.coeffs):
            n = n * self.field.p + a
        return n

    def frobenius(self):
        return self ** self.field.p

    def __repr__(self):
        if self.field.k == 1:
            return "%d" % self.coeffs[0]
        return "FF(%s)" % (list(self.coeffs),)


def _poly_mulmod(a, b, mod, p):
    """Product of coefficient tuples a*b reduced mod (mod, p); mod is monic."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(k + 1):
                prod[i - k + j] -= c * mod[j]
        prod[i] = 0
    return tuple(c % p for c in prod[:k]) if k > 1 else (prod[0] % p,)


def _tuple_gcd(a, b, p):
    """Monic gcd of coefficient tuples over F_p."""
    a = list(a)
    b = list(b)

    def deg(c):
        d = len(c) - 1
        while d >= 0 and c[d] % p == 0:
            d -= 1
        return d

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[deg(b)] % p, p - 2, p)
        while deg(a) >= deg(b):
            shift = deg(a) - deg(b)
            c = a[deg(a)] * inv % p
            for i in range(deg(b) + 1):
                a[i + shift] = (a[i + shift] - c * b[i]) % p
        a, b = b, a
    d = deg(a)
    inv = pow(a[d] % p, p - 2, p)
    return tuple(c * inv % p for c in a[: d + 1])


def _is_irreducible(poly, p):
    """Irreducibility of a monic poly over F_p via x^(p^d) tests."""
    k = len(poly) - 1
    if k == 1:
        return True

    def xq_pow(e):
        # x^(p^e) mod poly by repeated Frobenius
        t = (0, 1) + (0,) * (k - 2) if k > 1 else (0,)
        for _ in range(e):
            t = _poly_powmod(t, p, poly, p)
        return t

    x = (0, 1) + (0,) * (k - 2)
    if xq_pow(k) != x:
        return False
    for ell in factorize(k):
        t = xq_pow(k // ell)
        diff = tuple((ti - xi) % p for ti, xi in zip(t, x))
        if all(c == 0 for c in diff):
            return False
        if len(_tuple_gcd(diff, poly, p)) > 1:
            return False
    return True


def _poly_powmod(base, n, mod, p):
    result = (1,) + (0,) * (len(mod) - 2)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _find_irreducible(p, k):
    """First irreducible monic degree-k poly, ordered by sum(c_i * p^i)."""
    for code in range(p ** k):
        coeffs = []
        n = code
        for _ in range(k):
            coeffs.append(n % p)
            n //= p
        poly = tuple(coeffs) + (1,)
        if poly[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_{p^k}; for k > 1 arithmetic is mod a deterministic irreducible."""

    def __init__(self, p, k=1, modulus=None):
        if not is_probable_prime(p):
            raise ValueError("characteristic %d is not prime" % p)
        if k < 1:
            raise ValueError("degree must be >= 1")
        self.p = p
        self.k = k
        self.order = p ** k
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(modulus) if modulus is not None else _find_irreducible(p, k)
            if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")

    def __repr__(self):
        return "GF(%d)" % self.p if self.k == 1 else "GF(%d^%d)" % (self.p, self.k)

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def coerce(self, x):
        if isinstance(x, FFElement):
            if x.field is self or x.field == self:
                return x
            raise TypeError("element of %s used in %s" % (x.field, self))
        if isinstance(x, int):
            return self.from_int_mod(x)
        raise TypeError("cannot coerce %r" % (x,))

    def from_int_mod(self, n):
        """The image of the rational integer n."""
        return FFElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)[: self.k]
        coeffs += [0] * (self.k - len(coeffs))
        return FFElement(self, tuple(c % self.p for c in coeffs))

    def from_int(self, code):
        """Decode the base-p integer encoding (inverse of to_int)."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(code % self.p)
            code //= self.p
        return FFElement(self, tuple(coeffs))

    def zero(self):
        return FFElement(self, (0,) * self.k)

    def one(self):
        return self.from_int_mod(1)

    # field-descriptor protocol used by poly.Poly
    def embed_int(self, n):
        return self.from_int_mod(n)

    def is_zero(self, x):
        return x.is_zero()

    def gen(self):
        """The class of t (a root of the defining polynomial)."""
        if self.k == 1:
            return self.multiplicative_generator()
        return FFElement(self, (0, 1) + (0,) * (self.k - 2))

    def _mul(self, a, b):
        if self.k == 1:
            return FFElement(self, ((a.coeffs[0] * b.coeffs[0]) % self.p,))
        return FFElement(self, _poly_mulmod(a.coeffs, b.coeffs, self.modulus, self.p))

    def elements(self):
        """Iterate over all field elements (intended for small q)."""
        for code in range(self.order):
            yield self.from_int(code)

    @lru_cache(maxsize=None)
    def multiplicative_generator(self):
        fac = list(factorize(self.order - 1))
        for code in range(1, self.order):
            g = self.from_int(code)
            if g.is_zero():
                continue
            if all((g ** ((self.order - 1) // ell)) != self.one() for ell in fac):
                return g
        raise AssertionError("no generator found")

    def element_order(self, a):
        if a.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.order - 1
        for ell, e in factorize(n).items():
            while n % ell == 0 and a ** (n // ell) == self.one():
                n //= ell
        return n


def is_square(a, with_root=False):
    """Square test in F_q, q odd; optionally returns a square root."""
    field = a.field
    if field.p == 2:
        raise ValueError("characteristic 2 not supported")
    if a.is_zero():
        return (True, a) if with_root else True
    sq = a ** ((field.order - 1) // 2) == field.one()
    if not with_root:
        return sq
    if not sq:
        return False, None
    return True, sqrt(a)


def sqrt(a):
    """A square root in F_q via Tonelli-Shanks; raises if a is not a square."""
    field = a.field
    q = field.order
    if a.is_zero():
        return a
    if a ** ((q - 1) // 2) != field.one():
        raise ValueError("not a square")
    if q % 4 == 3:
        return a ** ((q + 1) // 4)
    # Tonelli-Shanks
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    # find a non-square z
    z = None
    for code in range(1, q):
        cand = field.from_int(code)
        if not cand.is_zero() and cand ** ((q - 1) // 2) != field.one():
            z = cand
            break
    c = z ** s
    t = a ** s
    r = a ** ((s + 1) // 2)
    while t != field.one():
        # find least i with t^(2^i) = 1
        i, t2 = 0, t
        while t2 != field.one():
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    return r


def is_lth_power(a, l):
    """Whether a lies in (F_q^*)^l, via a^((q-1)/gcd(l, q-1)) == 1."""
    if a.is_zero():
        raise ValueError("zero rejected; callers handle it separately")
    field = a.field
    from math import gcd
    g = gcd(l, field.order - 1)
    return a ** ((field.order - 1) // g) == field.one()


def make_finite_field(p, k=1):
    """F_{p^k} with the deterministic defining polynomial."""
    return FiniteField(p, k)
