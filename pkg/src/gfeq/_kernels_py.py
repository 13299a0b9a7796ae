"""Fallback counting kernels (numpy-vectorized, no compiled extension).

The API mirrors gfeq._speedups; gfeq.kernels selects whichever is
available.  Fields F_{p^k} are presented through discrete-log tables
over a defining polynomial whose root is primitive, so point counts
reduce to table passes.
"""

import numpy as np

from .ff import factorize


_TABLE_CACHE = {}
_TABLE_LIMIT = 1 << 25      # table-based fields are capped at 2^25 elements


def _find_primitive_modulus(p, k):
    """First-in-lex monic irreducible of degree k whose root is primitive."""
    from .ff import _is_irreducible
    n = p ** k - 1
    fac = list(factorize(n))
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        poly = tuple(coeffs) + (1,)
        if poly[0] == 0 or not _is_irreducible(poly, p):
            continue
        if _t_is_primitive(poly, p, k, n, fac):
            return poly
    raise AssertionError("no primitive modulus found")


def _t_is_primitive(poly, p, k, n, fac):
    from .ff import _poly_powmod
    one = (1,) + (0,) * (k - 1)
    t = (0, 1) + (0,) * (k - 2) if k > 1 else None
    if k == 1:
        g = (-poly[0]) % p
        return all(pow(g, n // ell, p) != 1 for ell in fac)
    for ell in fac:
        if _poly_powmod(t, n // ell, poly, p) == one:
            return False
    return True


class FieldTables:
    """pow/log tables for F_{p^k} with a primitive defining root."""

    def __init__(self, p, k):
        q = p ** k
        if q > _TABLE_LIMIT:
            raise MemoryError("field of size %d exceeds the table limit" % q)
        self.p, self.k, self.q = p, k, q
        self.modulus = _find_primitive_modulus(p, k)
        n = q - 1
        pow_seq = np.empty(n, dtype=np.int64)
        pow_seq[0] = 1
        if k == 1:
            g = (-self.modulus[0]) % p
            for i in range(1, n):
                pow_seq[i] = pow_seq[i - 1] * g % p
        else:
            x = 1
            mod = self.modulus
            pk1 = p ** (k - 1)
            for i in range(1, n):
                top, rest = divmod(x, pk1)
                x = rest * p
                if top:
                    # subtract top * (modulus minus leading term), digitwise
                    acc = x
                    m = 1
                    for j in range(k):
                        if mod[j]:
                            d = (acc // m) % p
                            acc += (((d - top * mod[j]) % p) - d) * m
                        m *= p
                    x = acc
                pow_seq[i] = x
        self.pow = pow_seq
        log = np.full(q, -1, dtype=np.int64)
        log[pow_seq] = np.arange(n, dtype=np.int64)
        self.log = log

    def embed_subfield_root(self, sub_modulus_ints, m):
        """Code of a root of the degree-m subfield modulus, smallest log."""
        assert self.k % m == 0
        if m == 1:
            return 0       # prime subfield embeds as the constant digits
        n = self.q - 1
        step = n // (self.p ** m - 1)
        # subfield elements are exactly the powers of t^step (plus zero)
        best = None
        for j in range(self.p ** m - 1):
            idx = (j * step) % n
            if self._eval_poly_at_log(sub_modulus_ints, idx):
                if best is None or idx < best:
                    best = idx
        if best is None:
            raise AssertionError("subfield modulus has no root")
        return int(self.pow[best])

    def _eval_poly_at_log(self, coeffs, idx):
        """Whether sum coeffs[i] * (t^idx)^i = 0; coeffs are prime-field ints."""
        acc = 0
        x = int(self.pow[idx])
        for c in reversed(coeffs):
            acc = self.mul_codes(acc, x)
            acc = self.add_codes(acc, c % self.p)
        return acc == 0

    def add_codes(self, c1, c2):
        out = 0
        m = 1
        for _ in range(self.k):
            out += ((c1 % self.p + c2 % self.p) % self.p) * m
            c1 //= self.p
            c2 //= self.p
            m *= self.p
        return out

    def mul_codes(self, c1, c2):
        if c1 == 0 or c2 == 0:
            return 0
        return int(self.pow[(int(self.log[c1]) + int(self.log[c2])) % (self.q - 1)])

    def embed_code(self, sub_coeffs, root_code):
        """Element of the subfield given by coefficients at the chosen root."""
        acc = 0
        for c in reversed(sub_coeffs):
            acc = self.mul_codes(acc, root_code)
            acc = self.add_codes(acc, c % self.p)
        return acc


def get_tables(p, k):
    key = (p, k)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = FieldTables(p, k)
    return _TABLE_CACHE[key]


def _digit_add_vec(codes, b_code, p, k):
    """Vectorized digitwise (mod p) addition of a constant code."""
    out = codes.copy()
    m = 1
    b = b_code
    for _ in range(k):
        db = b % p
        if db:
            digit = (out // m) % p
            out += (((digit + db) % p) - digit) * m
        b //= p
        m *= p
    return out


def count_affine_axlb(p, k, a_code, b_code, l, chunk=1 << 20):
    """#{(x, y) in F_{p^k}^2 : y^2 = a x^l + b}, codes in the table field."""
    T = get_tables(p, k)
    n = T.q - 1
    count = 0
    # x = 0 term
    if b_code == 0:
        count += 1
    else:
        count += 2 if int(T.log[b_code]) % 2 == 0 else 0
    if a_code == 0:
        raise ValueError("degenerate curve")
    la = int(T.log[a_code])
    lb = int(T.log[b_code]) if b_code else None
    logs = None
    for start in range(0, n, chunk):
        idx = np.arange(start, min(start + chunk, n), dtype=np.int64)
        vals = T.pow[(la + l * idx) % n]          # a * x^l over nonzero x
        if b_code:
            vals = _digit_add_vec(vals, b_code, p, k)
        lg = T.log[vals]
        zero = int(np.count_nonzero(lg == -1))
        even = int(np.count_nonzero(lg % 2 == 0))   # -1 % 2 == 1, so zeros excluded
        count += 2 * even + zero
    return count


def ec_count_prime(p, c3, c2, c1, c0):
    """#affine points of y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over F_p."""
    xs = np.arange(p, dtype=np.int64)
    vals = (((c3 * xs % p + c2) * xs % p + c1) * xs % p + c0) % p
    sq = np.zeros(p, dtype=np.int64)
    ys = np.arange(p, dtype=np.int64)
    np.add.at(sq, ys * ys % p, 1)
    return int(sq[vals].sum())


def ap_table_55(p):
    """a_p of Y^2 = X^3 - (a^2+b^2) X^2 + (H5(a,b)/5) X per [a:b] class.

    Index t in [0, p) stands for the class [1 : t]; index p for [0 : 1].
    Singular classes (a^5 + b^5 = 0) get the sentinel 2p.
    """
    inv5 = pow(5, -1, p)
    out = np.empty(p + 1, dtype=np.int64)
    for t in range(p + 1):
        a, b = (1, t) if t < p else (0, 1)
        if (a ** 5 + b ** 5) % p == 0:
            out[t] = 2 * p
            continue
        h5 = (a**4 - a**3*b + a**2*b**2 - a*b**3 + b**4) % p
        A2 = -(a * a + b * b) % p
        A1 = h5 * inv5 % p
        out[t] = p + 1 - (ec_count_prime(p, 1, A2, A1, 0) + 1)
    return out


def ap_table_55_untwisted(p):
    """a_p of Y^2 = X^3 - 5(a^2+b^2) X^2 + 5 H5(a,b) X per [a:b] class."""
    out = np.empty(p + 1, dtype=np.int64)
    for t in range(p + 1):
        a, b = (1, t) if t < p else (0, 1)
        if (a ** 5 + b ** 5) % p == 0:
            out[t] = 2 * p
            continue
        h5 = (a**4 - a**3*b + a**2*b**2 - a*b**3 + b**4) % p
        A2 = -5 * (a * a + b * b) % p
        A1 = 5 * h5 % p
        out[t] = p + 1 - (ec_count_prime(p, 1, A2, A1, 0) + 1)
    return out


def ap_table_77(p):
    """a_p of the degree-7 Frey curve per [a:b] class (sentinel 2p if singular)."""
    out = np.empty(p + 1, dtype=np.int64)
    for t in range(p + 1):
        a, b = (1, t) if t < p else (0, 1)
        h7 = (a**6 - a**5*b + a**4*b**2 - a**3*b**3 + a**2*b**4 - a*b**5 + b**6) % p
        if h7 == 0:
            out[t] = 2 * p
            continue
        A2 = -((a - b) ** 2) % p
        A4 = (-2*a**4 + a**3*b - 5*a**2*b**2 + a*b**3 - 2*b**4) % p
        A6 = (a**6 - 6*a**5*b + 8*a**4*b**2 - 13*a**3*b**3 + 8*a**2*b**4 - 6*a*b**5 + b**6) % p
        out[t] = p + 1 - (ec_count_prime(p, 1, A2, A4, A6) + 1)
    return out


BACKEND = "python"
