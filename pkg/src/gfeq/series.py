"""Truncated power series over the toolkit's fields.

A series holds coefficients a_0 .. a_{M-1} plus the truncation order M,
i.e. it represents sum a_k T^k + O(T^M).  Over local fields a series may
carry a *floor*: a certified lower bound

    v(a_k) >= C + E*k - D*nd(k)      for all k >= 0 (stored or not),

where nd(k) is the number of base-p digits of k (nd(0) = 0).  Floors are
produced by the disk-expansion code from integrality of the inputs and
consumed by evaluation and Strassmann bounds, so tail contributions are
never silently dropped.
"""

from fractions import Fraction

from .localfield import LocalElement, PrecisionError


def _ndigits(k, p):
    n = 0
    while k > 0:
        k //= p
        n += 1
    return n


class PSeries:
    __slots__ = ("field", "coeffs", "trunc", "floor")

    def __init__(self, field, coeffs, trunc=None, floor=None):
        self.field = field
        coeffs = list(coeffs)
        if trunc is None:
            trunc = len(coeffs)
        if len(coeffs) < trunc:
            coeffs += [field.zero()] * (trunc - len(coeffs))
        self.coeffs = coeffs[:trunc]
        self.trunc = trunc
        self.floor = floor            # (C, E, D) or None

    @classmethod
    def constant(cls, field, c, trunc):
        return cls(field, [c], trunc)

    @classmethod
    def variable(cls, field, trunc):
        return cls(field, [field.zero(), field.one()], trunc)

    def __getitem__(self, k):
        if 0 <= k < self.trunc:
            return self.coeffs[k]
        raise IndexError("coefficient beyond truncation")

    def order(self):
        """T-adic order of the stored part (trunc if all stored are zero)."""
        for k, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return k
        return self.trunc

    def _meet(self, other):
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        if not isinstance(other, PSeries):
            other = PSeries.constant(self.field, self._as_elt(other), self.trunc)
        M = self._meet(other)
        floor = None
        if self.floor and other.floor:
            floor = (min(self.floor[0], other.floor[0]),
                     min(self.floor[1], other.floor[1]),
                     max(self.floor[2], other.floor[2]))
        return PSeries(self.field, [self.coeffs[k] + other.coeffs[k] for k in range(M)], M, floor)

    def __sub__(self, other):
        if not isinstance(other, PSeries):
            other = PSeries.constant(self.field, self._as_elt(other), self.trunc)
        return self + (-other)

    def __neg__(self):
        return PSeries(self.field, [-c for c in self.coeffs], self.trunc, self.floor)

    def _as_elt(self, x):
        if isinstance(x, int):
            return self.field.embed_int(x)
        return x

    def __mul__(self, other):
        if not isinstance(other, PSeries):
            return self.scale(self._as_elt(other))
        M = self._meet(other)
        f = self.field
        out = [f.zero() for _ in range(M)]
        for i, a in enumerate(self.coeffs[:M]):
            if f.is_zero(a):
                continue
            for j in range(min(len(other.coeffs), M - i)):
                b = other.coeffs[j]
                if not f.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        floor = None
        if self.floor and other.floor:
            floor = (self.floor[0] + other.floor[0],
                     min(self.floor[1], other.floor[1]),
                     self.floor[2] + other.floor[2])
        return PSeries(f, out, M, floor)

    __rmul__ = __mul__
    __radd__ = __add__

    def scale(self, c, c_val=None):
        floor = None
        if self.floor is not None:
            v = c_val
            if v is None and isinstance(c, LocalElement):
                v = c.valuation_or_none()
            if v is not None:
                floor = (self.floor[0] + v, self.floor[1], self.floor[2])
        return PSeries(self.field, [a * c for a in self.coeffs], self.trunc, floor)

    def shift(self, n):
        """Multiplication by T^n."""
        floor = None
        if self.floor is not None:
            C, E, D = self.floor
            floor = (C - E * n, E, D)
        return PSeries(self.field, [self.field.zero()] * n + self.coeffs, self.trunc + n, floor)

    def truncate(self, M):
        floor = self.floor
        return PSeries(self.field, self.coeffs[:M], min(M, self.trunc), floor)

    def derivative(self):
        f = self.field
        out = [self.coeffs[k] * f.embed_int(k) for k in range(1, self.trunc)]
        return PSeries(f, out, self.trunc - 1)

    def integrate(self):
        """Term-wise antiderivative with zero constant term.

        Over a local field this divides by indices; the floor picks up the
        worst-case loss and any coefficient pushed below zero digits of
        precision raises PrecisionError naming the index.
        """
        f = self.field
        out = [f.zero()]
        local = isinstance(f.zero(), LocalElement)
        for k, a in enumerate(self.coeffs):
            if local:
                try:
                    c = a.div_int(k + 1)
                except ZeroDivisionError:
                    raise PrecisionError("index %d" % (k + 1))
                if c.prec is not None and c.prec <= 0 and c.valuation_or_none() is not None:
                    raise PrecisionError("integration lost all precision at index %d" % (k + 1))
            else:
                c = a / f.embed_int(k + 1)
            out.append(c)
        floor = None
        if self.floor is not None:
            C, E, D = self.floor
            e = f.e
            floor = (C - E + e, E, D + e)
        return PSeries(f, out, self.trunc + 1, floor)

    def compose(self, g):
        """self(g(T)) for g with positive T-adic order."""
        if g.order() < 1:
            raise ValueError("composition needs a positive-valuation argument")
        f = self.field
        M = min(self.trunc, g.trunc)
        acc = PSeries.constant(f, f.zero(), M)
        for a in reversed(self.coeffs[:M]):
            acc = acc * g + PSeries.constant(f, a, M)
        return acc

    def inverse(self):
        """Reciprocal of a unit series (nonzero constant term)."""
        f = self.field
        c0 = self.coeffs[0]
        if f.is_zero(c0):
            raise ZeroDivisionError("series has zero constant term")
        inv0 = f.one() / c0 if not isinstance(c0, LocalElement) else c0.inverse()
        out = [inv0]
        for k in range(1, self.trunc):
            s = f.zero()
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                s = s + self.coeffs[j] * out[k - j]
            out.append(-(s * inv0))
        return PSeries(f, out, self.trunc)

    def sqrt_unit(self, root0=None):
        """Square root of a series whose constant term is a square unit."""
        f = self.field
        c0 = self.coeffs[0]
        if root0 is None:
            if isinstance(c0, LocalElement):
                root0 = c0.field.sqrt(c0)
            else:
                raise ValueError("root of the constant term must be supplied")
        out = [root0]
        inv2r = (f.embed_int(2) * root0)
        inv2r = inv2r.inverse() if isinstance(inv2r, LocalElement) else f.one() / inv2r
        for k in range(1, self.trunc):
            s = f.zero()
            for j in range(1, k):
                s = s + out[j] * out[k - j]
            num = (self.coeffs[k] if k < len(self.coeffs) else f.zero()) - s
            out.append(num * inv2r)
        return PSeries(f, out, self.trunc)

    def evaluate_at(self, t, t_val=None):
        """Value at t, v(t) >= 1, with certified precision from the floor."""
        f = self.field
        if not isinstance(t, LocalElement):
            acc = f.zero()
            for c in reversed(self.coeffs):
                acc = acc * t + c
            return acc
        w = t.valuation() if t_val is None else t_val
        if w < 1:
            raise ValueError("evaluation requires v(t) >= 1")
        acc = t.field.zero()
        tk = t.field.one()
        bound = None
        for k in range(self.trunc):
            term = self.coeffs[k] * tk
            acc = acc + term
            tk = tk * t
        if self.floor is not None:
            tail = tail_min_valuation(self.floor, w, self.trunc, t.field.p)
            bound = tail
        if bound is not None:
            acc = acc.with_precision(min(acc.prec_abs(), bound))
        return acc

    def scale_var(self, s, s_val=None):
        """Substitute T = s * t (coefficients a_k s^k)."""
        f = self.field
        out = []
        sk = f.one()
        for a in self.coeffs:
            out.append(a * sk)
            sk = sk * s
        floor = None
        if self.floor is not None:
            v = s_val
            if v is None and isinstance(s, LocalElement):
                v = s.valuation()
            if v is not None:
                C, E, D = self.floor
                floor = (C, E + v, D)
        return PSeries(f, out, self.trunc, floor)

    def map_coeffs(self, fn, new_field, floor=None):
        return PSeries(new_field, [fn(c) for c in self.coeffs], self.trunc, floor)

    def set_floor(self, C, E=0, D=0):
        return PSeries(self.field, self.coeffs, self.trunc, (Fraction(C), Fraction(E), D))

    def __repr__(self):
        return "PSeries(%s + O(T^%d))" % (self.coeffs[: min(4, self.trunc)], self.trunc)


def tail_min_valuation(floor, w, M, p):
    """min over k >= M of C + (E + w) k - D * nd(k), as a floor integer."""
    C, E, D = floor
    C = Fraction(C)
    slope = Fraction(E) + Fraction(w)
    assert slope > 0, "tail does not converge"

    def t(k):
        return C + slope * k - D * _ndigits(k, p)

    best = t(M)
    # between digit boundaries t is increasing, so minima occur at M or at
    # powers p^m > M; once slope * p^m * (p-1) > D the candidates increase
    pm = 1
    while pm <= M:
        pm *= p
    while True:
        cand = t(pm)
        if cand < best:
            best = cand
        if slope * pm * (p - 1) > D:
            break
        pm *= p
    return math_floor(best)


def math_floor(x):
    return x.numerator // x.denominator if isinstance(x, Fraction) else int(x)


def strassmann_bound(s):
    """Largest index with minimal coefficient valuation (ties: largest).

    Returns (bound, min_valuation).  Raises PrecisionError when trailing
    coefficients (stored-but-unknown or beyond truncation) could still
    attain the minimum, so a guessed bound is never returned.
    """
    vals = []
    min_known = None
    for k, c in enumerate(s.coeffs):
        v = c.valuation_or_none()
        vals.append((v, c.prec_abs()))
        if v is not None and (min_known is None or v < min_known):
            min_known = v
    if min_known is None:
        raise PrecisionError("no coefficient with known valuation")
    bound = None
    for k, (v, prec) in enumerate(vals):
        if v is not None and v == min_known:
            bound = k
        elif v is None and prec <= min_known:
            raise PrecisionError("coefficient %d only known mod pi^%d, could attain the minimum" % (k, prec))
    if s.floor is None:
        raise PrecisionError("series carries no tail bound; Strassmann is indeterminate")
    tail = tail_min_valuation(s.floor, 0, s.trunc, s.field.p)
    if tail <= min_known:
        raise PrecisionError("tail bound %s does not exceed the minimal valuation %s" % (tail, min_known))
    return bound, min_known


def binomial_series(field, alpha, u):
    """(1 + u)^alpha for rational alpha and a series u of positive order."""
    if u.order() < 1:
        raise ValueError("binomial series needs a positive-order argument")
    M = u.trunc
    coeff = field.one()
    acc = PSeries.constant(field, field.one(), M)
    upow = PSeries.constant(field, field.one(), M)
    for k in range(1, M):
        num = alpha - (k - 1)
        coeff = coeff * _embed_fraction(field, Fraction(num) / k)
        upow = upow * u
        acc = acc + upow.scale(coeff)
    return acc


def _embed_fraction(field, q):
    q = Fraction(q)
    num = field.embed_int(q.numerator)
    if q.denominator == 1:
        return num
    den = field.embed_int(q.denominator)
    if isinstance(den, LocalElement):
        return num / den
    return num * (field.one() / den)
