"""The four number fields of the toolkit and their arithmetic.

Only Q(zeta_5), Q(zeta_7) and their totally real subfields K = Q(theta),
theta = zeta + 1/zeta, are constructible.  Elements carry exact rational
coordinates in the power basis; prime splitting factors the minimal
polynomial mod p, with the finitely many ramified primes hard-coded.
The index of Z[t]/(m) in the maximal order is 1 for all four fields, so
the Dedekind criterion applies at every prime.
"""

import math
from fractions import Fraction

from .ff import FiniteField, factorize
from .poly import Poly, QQ, resultant, ff_factor


class NFElement:
    """Element of a NumberField, a vector over Q in the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        assert len(self.coords) == field.degree

    def __add__(self, other):
        other = self.field.coerce(other)
        return NFElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self.field.coerce(other)
        return NFElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        other = self.field.coerce(other)
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        return NFElement(self.field, self.field._reduce(prod))

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
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        poly = Poly(QQ, list(self.coords))
        if poly.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly.xgcd(self.field.min_poly)
        if g.degree != 0:
            raise ArithmeticError("minimal polynomial not coprime to element")
        s = s.scale(Fraction(1) / g.coeffs[0])
        return NFElement(self.field, self.field._reduce(list(s.coeffs)))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        return isinstance(other, NFElement) and self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def denominator(self):
        d = 1
        for c in self.coords:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def __repr__(self):
        name = self.field.var_name
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if i == 0 else "%s*%s^%d" % (c, name, i))
        return " + ".join(terms) if terms else "0"


class NumberField:
    """Q[t]/(m(t)) with m monic irreducible over Q."""

    def __init__(self, min_poly, var_name="t", label=""):
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.var_name = var_name
        self.label = label
        self.cyclotomic_order = None
        self.parent_cyclotomic = None   # (L, embedding image of generator)
        self._conjugations = None
        self._ramified = {}

    def __repr__(self):
        return self.label or "NumberField(deg %d)" % self.degree

    def coerce(self, x):
        if isinstance(x, NFElement):
            if x.field is self:
                return x
            raise TypeError("element of %r used in %r" % (x.field, self))
        if isinstance(x, (int, Fraction)):
            return NFElement(self, [Fraction(x)] + [Fraction(0)] * (self.degree - 1))
        raise TypeError("cannot coerce %r" % (x,))

    def _reduce(self, coeff_list):
        poly = Poly(QQ, coeff_list) % self.min_poly
        out = list(poly.coeffs) + [Fraction(0)] * (self.degree - len(poly.coeffs))
        return out[: self.degree]

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    # field-descriptor protocol
    def embed_int(self, n):
        return self.coerce(n)

    def is_zero(self, x):
        return x.is_zero()

    def gen(self):
        coords = [Fraction(0)] * self.degree
        if self.degree == 1:
            coords[0] = Fraction(1)
        else:
            coords[1] = Fraction(1)
        return NFElement(self, coords)

    def element(self, coords):
        coords = list(coords) + [Fraction(0)] * (self.degree - len(coords))
        return NFElement(self, coords)

    def from_poly_in_gen(self, ints):
        """Element given by integer (or Fraction) coefficients in the generator."""
        acc = self.zero()
        g = self.gen()
        for c in reversed(list(ints)):
            acc = acc * g + self.coerce(c)
        return acc

    def absolute_norm(self, a):
        """Product of all conjugates of a, a rational number."""
        a = self.coerce(a)
        return resultant(self.min_poly, Poly(QQ, list(a.coords)))

    def trace(self, a):
        """Trace of the multiplication-by-a matrix."""
        a = self.coerce(a)
        diag = []
        for i in range(self.degree):
            e = [Fraction(0)] * self.degree
            e[i] = Fraction(1)
            diag.append((a * NFElement(self, e)).coords[i])
        return sum(diag, Fraction(0))

    def conjugations(self):
        """Automorphisms as root images of the generator, paper order."""
        if self._conjugations is None:
            raise ValueError("conjugation data only available on the designated abelian fields")
        return self._conjugations

    def conjugates(self, a):
        a = self.coerce(a)
        out = []
        for root in self.conjugations():
            poly = Poly(QQ, list(a.coords))
            out.append(poly.evaluate(root))
        return out

    def apply_conjugation(self, a, j):
        """Image of a under the j-th automorphism (0-based, identity first)."""
        a = self.coerce(a)
        return Poly(QQ, list(a.coords)).evaluate(self.conjugations()[j])

    def primes_above(self, p):
        """Splitting of p, as a list of PrimeIdeal with Sum e*f = degree."""
        if p in self._ramified:
            return [self._ramified[p]]
        if p < 2 or p > 10 ** 6:
            raise ValueError("prime %d out of supported range" % p)
        Fp = FiniteField(p)
        mbar = Poly.from_ints(Fp, [int(c) for c in self._int_min_poly()])
        facs = ff_factor(mbar)
        if any(m > 1 for _, m in facs):
            raise ValueError("prime %d ramifies outside the hard-coded list" % p)
        out = []
        for g, _ in sorted(facs, key=lambda t: (t[0].degree, [c.to_int() for c in t[0].coeffs])):
            out.append(PrimeIdeal(self, p, e=1, f=g.degree, g_poly=g))
        assert sum(pi.e * pi.f for pi in out) == self.degree
        return out

    def _int_min_poly(self):
        assert all(c.denominator == 1 for c in self.min_poly.coeffs)
        return [c.numerator for c in self.min_poly.coeffs]


class PrimeIdeal:
    """A prime of the field above p, as (p, g(t)) with residue data."""

    def __init__(self, field, p, e, f, g_poly, theta_residue=None):
        self.field = field
        self.p = p
        self.e = e
        self.f = f
        self.g_poly = g_poly          # irreducible factor of m mod p (unramified) or residue datum
        self.theta_residue = theta_residue  # used for hard-coded ramified primes
        self._residue_map = None

    def __repr__(self):
        return "Prime(%d; e=%d, f=%d) of %r" % (self.p, self.e, self.f, self.field)

    def residue_field(self):
        return self.residue_map().target

    def residue_map(self):
        if self._residue_map is None:
            target = FiniteField(self.p, self.f)
            if self.theta_residue is not None:
                root = target.from_int_mod(self.theta_residue)
            else:
                gbar = Poly(target, [target.from_int_mod(c.to_int()) for c in self.g_poly.coeffs])
                from .poly import ff_roots
                roots = sorted(ff_roots(gbar), key=lambda r: r.to_int())
                if not roots:
                    raise AssertionError("defining factor has no root in residue field")
                root = roots[0]
            self._residue_map = ResidueMap(self.field, self, target, root)
        return self._residue_map


class ResidueMap:
    """Reduction Z[t]-integral elements -> F_{p^f}, t |-> chosen root."""

    def __init__(self, field, prime, target, root):
        self.field = field
        self.prime = prime
        self.target = target
        self.root = root

    def __call__(self, a):
        a = self.field.coerce(a)
        d = a.denominator()
        if d % self.prime.p == 0:
            raise ValueError("element is not integral at %r" % self.prime)
        dinv = self.target.from_int_mod(d).inverse()
        acc = self.target.zero()
        for c in reversed(a.coords):
            acc = acc * self.root + self.target.from_int_mod(int(c * d))
        return acc * dinv

    def reduce_poly(self, poly):
        """Coefficient-wise reduction of a Poly over the number field."""
        return Poly(self.target, [self(c) for c in poly.coeffs])


def _cyclotomic_poly(m):
    """Phi_m for prime m."""
    assert m in (5, 7)
    return Poly.from_ints(QQ, [1] * m)


def cyclotomic_field(m):
    """Q(zeta_m) for m in {5, 7}."""
    if m not in (5, 7):
        raise ValueError("only m = 5 and m = 7 are in scope")
    L = NumberField(_cyclotomic_poly(m), var_name="z", label="Q(zeta%d)" % m)
    L.cyclotomic_order = m
    # zeta == 1 mod the unique prime above m, which is totally ramified
    L._ramified[m] = PrimeIdeal(L, m, e=m - 1, f=1, g_poly=None, theta_residue=1)
    return L


def _solve_linear(rows, rhs):
    """Solve A^T x = rhs over Q where rows are the columns of A; None if singular."""
    n = len(rhs)
    cols = len(rows)
    aug = [[rows[j][i] for j in range(cols)] + [rhs[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, n):
            if aug[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    x = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][-1]
    # consistency
    for i in range(n):
        s = sum(rows[j][i] * x[j] for j in range(cols))
        if s != rhs[i]:
            return None
    return x


def real_subfield(L):
    """K = Q(theta), theta = zeta + 1/zeta, with the embedding K -> L."""
    m = L.cyclotomic_order
    if m not in (5, 7):
        raise ValueError("not a supported cyclotomic field")
    zeta = L.gen()
    theta = zeta + zeta.inverse()
    n = (m - 1) // 2
    # minimal polynomial of theta: find dependency among 1, theta, ..., theta^n
    powers = [L.one()]
    for _ in range(n):
        powers.append(powers[-1] * theta)
    rows = [list(powers[i].coords) for i in range(n)]
    rhs = list((-powers[n]).coords)
    sol = _solve_linear(rows, rhs)
    assert sol is not None, "theta powers unexpectedly independent"
    min_poly = Poly(QQ, sol + [Fraction(1)])
    K = NumberField(min_poly, var_name="th", label="Q(theta%d)" % m)
    K.parent_cyclotomic = (L, theta)
    # conjugates theta_j = zeta^j + zeta^-j expressed in the theta power basis
    conj = []
    basis_rows = [list(powers[i].coords) for i in range(n)]
    for j in range(1, n + 1):
        zj = zeta ** j
        tj = zj + zj.inverse()
        coords = _solve_linear(basis_rows, list(tj.coords))
        assert coords is not None, "conjugate not in the subfield"
        conj.append(K.element(coords))
    K._conjugations = conj
    if m == 5:
        K._ramified[5] = PrimeIdeal(K, 5, e=2, f=1, g_poly=None, theta_residue=2)
    else:
        K._ramified[7] = PrimeIdeal(K, 7, e=3, f=1, g_poly=None, theta_residue=2)
    return K


def embed_in_cyclotomic(K, a):
    """Image of a in the parent cyclotomic field."""
    L, theta = K.parent_cyclotomic
    a = K.coerce(a)
    acc = L.zero()
    for c in reversed(a.coords):
        acc = acc * theta + L.coerce(c)
    return acc


def subfield_coordinates(K, b):
    """Express an element of L lying in K in K-coordinates; error if outside."""
    L, theta = K.parent_cyclotomic
    n = K.degree
    powers = [L.one()]
    for _ in range(n - 1):
        powers.append(powers[-1] * theta)
    rows = [list(t.coords) for t in powers]
    sol = _solve_linear(rows, list(b.coords))
    if sol is None:
        raise ValueError("element does not lie in the real subfield")
    return K.element(sol)


def relative_norm(K, b):
    """N_{L/K}(b) = b * sigma(b), sigma: zeta -> 1/zeta, as a K-element."""
    L, _ = K.parent_cyclotomic
    b = L.coerce(b)
    m = L.cyclotomic_order
    sigma_b = _apply_power_map(L, b, m - 1)
    return subfield_coordinates(K, b * sigma_b)


def _apply_power_map(L, b, k):
    """The automorphism zeta -> zeta^k applied to b."""
    zk = L.gen() ** k
    acc = L.zero()
    for c in reversed(b.coords):
        acc = acc * zk + L.coerce(c)
    return acc


def cyclotomic_conjugates(L, b):
    """All images of b under zeta -> zeta^k, k coprime to m, ascending k."""
    m = L.cyclotomic_order
    return [_apply_power_map(L, b, k) for k in range(1, m) if k % m]
