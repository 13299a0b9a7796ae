"""Generic univariate polynomials over any of the toolkit's fields.

A coefficient field is described by an object with ``zero()``, ``one()``,
``embed_int(n)`` and ``is_zero(x)``; elements must support the usual
arithmetic operators.  ``Rationals`` wraps :class:`fractions.Fraction`
under this protocol.
"""

from fractions import Fraction


class Rationals:
    """Field descriptor for Q backed by fractions.Fraction."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def embed_int(self, n):
        return Fraction(n)

    def is_zero(self, x):
        return x == 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = Rationals()


class Poly:
    """Dense univariate polynomial; the zero polynomial has degree -1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.embed_int(n) for n in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and \
            len(self.coeffs) == len(other.coeffs) and \
            all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            other = self.field.embed_int(other)
        return Poly(self.field, [other])

    def scale(self, c):
        if isinstance(c, int):
            c = self.field.embed_int(c)
        return Poly(self.field, [a * c for a in self.coeffs])

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(self.field, []), self
        quo = [self.field.zero()] * (dq + 1)
        inv_lc = self.field.one() / other.lc()
        for i in range(dq, -1, -1):
            idx = i + other.degree
            if idx >= len(rem) or self.field.is_zero(rem[idx]):
                continue
            c = rem[idx] * inv_lc
            quo[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * b
        return Poly(self.field, quo), Poly(self.field, rem[: other.degree if other.degree > 0 else 0])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        result = Poly(self.field, [self.field.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def powmod(self, n, modulus):
        result = Poly(self.field, [self.field.one()]) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.one() / self.lc())

    def evaluate(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly(self.field, [self.coeffs[i] * self.field.embed_int(i)
                                 for i in range(1, len(self.coeffs))])

    def shift_var(self, c):
        """The polynomial f(x + c)."""
        out = Poly(self.field, [])
        xc = Poly(self.field, [c, self.field.one()])
        for a in reversed(self.coeffs):
            out = out * xc + Poly(self.field, [a])
        return out

    def reverse(self):
        """Coefficient reversal x^deg * f(1/x)."""
        return Poly(self.field, list(reversed(self.coeffs)))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other):
        """Returns (g, s, t) with s*self + t*other = g, g monic."""
        f = self.field
        a, b = self, other
        sa, sb = Poly(f, [f.one()]), Poly(f, [])
        ta, tb = Poly(f, []), Poly(f, [f.one()])
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        if a.is_zero():
            return a, sa, ta
        inv = f.one() / a.lc()
        return a.scale(inv), sa.scale(inv), ta.scale(inv)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                terms.append("(%s)*x^%d" % (c, i))
        return "Poly(%s)" % " + ".join(terms)


def resultant(f, g):
    """res(f, g) = lc(f)^deg(g) * prod g(alpha) over roots alpha of f."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    field = f.field
    acc = field.one()
    sign = field.one()
    while True:
        if g.degree == 0:
            return acc * sign * g.lc() ** f.degree
        if f.degree < g.degree:
            if (f.degree * g.degree) % 2 == 1:
                sign = -sign
            f, g = g, f
            continue
        r = f % g
        if r.is_zero():
            if g.degree > 0:
                return field.zero()
            return acc * sign * g.lc() ** f.degree
        acc = acc * g.lc() ** (f.degree - r.degree)
        if (f.degree * g.degree) % 2 == 1:
            sign = -sign
        f, g = g, r


# ---------------------------------------------------------------------------
# routines specific to polynomials over finite fields


def ff_roots(f):
    """Roots in F_q: exhaustive for q <= 10**6, else via factorization."""
    field = f.field
    if f.is_zero():
        raise ValueError("zero polynomial")
    if field.order <= 10 ** 6:
        return [x for x in field.elements() if f.evaluate(x).is_zero()]
    roots = []
    for fac, _ in ff_factor(f):
        if fac.degree == 1:
            roots.append(-fac.coeffs[0] / fac.coeffs[1])
    return roots


def ff_is_squarefree(f):
    return f.gcd(f.derivative()).degree == 0


def ff_is_irreducible(f):
    """Irreducibility over F_q via x^(q^d) tests with explicit gcds."""
    field = f.field
    q = field.order
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = Poly.x(field)
    h = x.powmod(q ** n, f)
    if h != x % f:
        return False
    from .ff import factorize
    for ell in factorize(n):
        h = x.powmod(q ** (n // ell), f)
        if f.gcd(h - x).degree != 0:
            return False
    return True


def ff_factor(f):
    """Monic irreducible factors of f over F_q as [(factor, multiplicity)].

    The unit lc(f) is discarded; factor the monic part only.
    """
    field = f.field
    factors = {}
    f = f.monic()

    def record(g, mult):
        key = tuple(x.coeffs for x in g.coeffs)
        if key in factors:
            factors[key] = (g, factors[key][1] + mult)
        else:
            factors[key] = (g, mult)

    # squarefree decomposition by repeated gcd (char p aware)
    work = [(f, 1)]
    while work:
        g, mult = work.pop()
        if g.degree == 0:
            continue
        d = g.gcd(g.derivative())
        if d.degree == 0:
            for irr in _ff_factor_squarefree(g):
                record(irr, mult)
            continue
        if d.degree == g.degree:
            # g is a p-th power: g(x) = h(x^p) with h built from p-th roots
            p = field.p
            h = Poly(field, [g[i * p] ** (field.order // p) for i in range(g.degree // p + 1)])
            work.append((h, mult * p))
            continue
        work.append((d, mult))
        work.append((g // d, mult))
    out = [(g, m) for g, m in factors.values()]
    out.sort(key=lambda t: (t[0].degree, [c.to_int() for c in t[0].coeffs]))
    return out


def _ff_factor_squarefree(f):
    """Distinct-degree then equal-degree splitting; f squarefree monic."""
    field = f.field
    q = field.order
    out = []
    x = Poly.x(field)
    h = x
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.powmod(q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.extend(_ff_equal_degree(g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append(rest)
    return out


def _ff_equal_degree(f, d):
    """Cantor-Zassenhaus with a deterministic trial sequence; q odd."""
    field = f.field
    q = field.order
    if f.degree == d:
        return [f]
    exponent = (q ** d - 1) // 2
    pieces = [f]
    done = []
    trial = 0
    while pieces:
        trial += 1
        base = _trial_poly(field, trial, 2 * d)
        new_pieces = []
        for g in pieces:
            if g.degree == d:
                done.append(g)
                continue
            h = base.powmod(exponent, g) - Poly(field, [field.one()])
            u = g.gcd(h)
            if 0 < u.degree < g.degree:
                new_pieces.extend([u, g // u])
            else:
                new_pieces.append(g)
        pieces = new_pieces
        if trial > 40 * (d + 2) * len(pieces) + 100:
            raise AssertionError("equal-degree splitting stalled")
    return done


def _trial_poly(field, counter, degree):
    """Deterministic pseudo-random trial polynomial for splitting."""
    seed = counter * 2654435761 % (2 ** 31)
    coeffs = []
    for i in range(degree):
        seed = (seed * 1103515245 + 12345 + i) % (2 ** 31)
        coeffs.append(field.from_int(seed % field.order))
    coeffs.append(field.one())
    return Poly(field, coeffs)
