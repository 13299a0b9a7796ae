"""The modular-method engine: H_p forms, Frey curves, Kraus sieves,
newform-candidate elimination, the image-of-inertia criterion and the
unit-exponent sieve over Z[zeta].

Candidate newforms are ingested (rational ones as Weierstrass models,
irrational ones as minimal-polynomial eigenvalue data); nothing here
computes newforms from scratch.
"""

import math
from fractions import Fraction

from . import kernels
from .curves import EllipticCurve, ec_trace, elliptic_invariants, reduction_type
from .ff import FiniteField, factorize, is_probable_prime


def hp_value(p, x, y):
    """H_p(x, y) = (x^p + y^p)/(x + y) as an integer (x != -y)."""
    if x + y == 0:
        raise ZeroDivisionError("H_p undefined at x = -y")
    return (x ** p + y ** p) // (x + y)


def h5_int(x, y):
    return x**4 - x**3*y + x**2*y**2 - x*y**3 + y**4


def h7_int(x, y):
    return x**6 - x**5*y + x**4*y**2 - x**3*y**3 + x**2*y**4 - x*y**5 + y**6


def gcd_lemma_check(p, x, y):
    """g = gcd(x+y, H_p) is 1 or p; g = p iff p | x+y; p^2 never divides H_p."""
    if math.gcd(x, y) != 1:
        raise ValueError("x, y must be coprime")
    H = hp_value(p, x, y)
    g = math.gcd(abs(x + y), abs(H))
    facts = {
        "g": g,
        "g_in_1_p": g in (1, p),
        "g_p_iff_p_divides_sum": (g == p) == ((x + y) % p == 0),
        "p_squared_divides_H": H % (p * p) == 0,
    }
    if not facts["g_in_1_p"] or not facts["g_p_iff_p_divides_sum"] or facts["p_squared_divides_H"]:
        raise AssertionError("divisibility lemma failed at (%d, %d, %d)" % (p, x, y))
    return facts


# ---------------------------------------------------------------------------
# Frey curves


FAMILY_55_TWISTED = "55-twisted"
FAMILY_55_UNTWISTED = "55-untwisted"
FAMILY_77 = "77"


class FreyCurve:
    def __init__(self, family, x, y, model, singular):
        self.family = family
        self.x = x
        self.y = y
        self.model = model
        self.singular = singular

    def __repr__(self):
        tag = " singular" if self.singular else ""
        return "Frey[%s](%d,%d)%s" % (self.family, self.x, self.y, tag)


def build_frey(family, x, y):
    """The Frey model at (x, y); singular specializations are reported,
    not rejected.  The 55-twisted family requires 5 | H_5."""
    if family == FAMILY_55_TWISTED:
        H = h5_int(x, y)
        if H % 5 != 0:
            raise ValueError("the twisted model needs 5 | H_5(x, y)")
        model = EllipticCurve(0, -(x * x + y * y), 0, Fraction(H, 5), 0)
    elif family == FAMILY_55_UNTWISTED:
        model = EllipticCurve(0, -5 * (x * x + y * y), 0, 5 * h5_int(x, y), 0)
    elif family == FAMILY_77:
        a2 = -((x - y) ** 2)
        a4 = -2*x**4 + x**3*y - 5*x**2*y**2 + x*y**3 - 2*y**4
        a6 = x**6 - 6*x**5*y + 8*x**4*y**2 - 13*x**3*y**3 + 8*x**2*y**4 - 6*x*y**5 + y**6
        model = EllipticCurve(0, a2, 0, a4, a6)
    else:
        raise ValueError("unknown family %r" % family)
    return FreyCurve(family, x, y, model, model.is_singular())


def frey_invariant_formulas(family, x, y):
    """The closed-form (c4, c6, disc) of the family, for identity checks."""
    if family == FAMILY_77:
        H = h7_int(x, y)
        c4 = 2**4 * 7 * (x**4 - x**3*y + 3*x**2*y**2 - x*y**3 + y**4)
        c6 = -2**5 * 7 * (x**6 - 15*x**5*y + 15*x**4*y**2 - 29*x**3*y**3
                          + 15*x**2*y**4 - 15*x*y**5 + y**6)
        disc = 2**4 * 7**2 * H * H
        return Fraction(c4), Fraction(c6), Fraction(disc)
    if family == FAMILY_55_TWISTED:
        H = h5_int(x, y)
        c4 = Fraction(2**4 * (2*x**4 + 3*x**3*y + 7*x**2*y**2 + 3*x*y**3 + 2*y**4), 5)
        c6 = Fraction(2**5 * (x*x + y*y) * (x**4 + 9*x**3*y + 11*x**2*y**2 + 9*x*y**3 + y**4), 5)
        disc = Fraction(2**4 * (x + y)**4 * H * H, 5**3)
        return c4, c6, disc
    if family == FAMILY_55_UNTWISTED:
        H = h5_int(x, y)
        c4 = Fraction(2**4 * 5 * (2*x**4 + 3*x**3*y + 7*x**2*y**2 + 3*x*y**3 + 2*y**4))
        c6 = Fraction(2**5 * 5**2 * (x*x + y*y) * (x**4 + 9*x**3*y + 11*x**2*y**2 + 9*x*y**3 + y**4))
        disc = Fraction(2**4 * 5**3 * (x + y)**4 * H * H)
        return c4, c6, disc
    raise ValueError(family)


# ---------------------------------------------------------------------------
# newform candidates


class NewformCandidate:
    """Rational: backed by an elliptic curve model.  Irrational: a set of
    possible a_p values at tabled primes, each an algebraic integer given
    by (minimal polynomial coefficients, representative)."""

    def __init__(self, label, level, model=None, algebraic_ap=None):
        self.label = label
        self.level = level
        self.model = model
        self.algebraic_ap = algebraic_ap or {}

    @property
    def rational(self):
        return self.model is not None

    def ap(self, p, budget=None):
        if not self.rational:
            raise ValueError("irrational candidate has a_p data only at tabled primes")
        return ec_trace(self.model, p)

    def __repr__(self):
        return "Newform[%s, level %d%s]" % (self.label, self.level,
                                            "" if self.rational else ", irrational")


# ---------------------------------------------------------------------------
# Kraus trace sets


def kraus_sets(signature, p, l=None, budget=None):
    """The trace sets of the signature's Frey family over F_p.

    signature 55: A_p over nonsingular (a, b), T_p = A_p + {+-(1+p)};
    the refined (A'_{p,l}, T'_{p,l}) need p = 1 mod l and are returned
    reduced to symmetric residues mod l.  signature 77: the +-(1+p)
    terms join only when p = 1 mod 7.
    Returns a dict with the computed sets as sorted tuples.
    """
    if signature == "55":
        if p in (2, 5):
            raise ValueError("p must avoid {2, 5}")
        ap = kernels.ap_table_55(p)
    elif signature == "55u":
        if p in (2, 5):
            raise ValueError("p must avoid {2, 5}")
        ap = kernels.ap_table_55_untwisted(p)
    elif signature == "77":
        if p in (2, 7):
            raise ValueError("p must avoid {2, 7}")
        ap = kernels.ap_table_77(p)
    else:
        raise ValueError(signature)
    sentinel = 2 * p
    A = sorted({int(a) for a in ap if a != sentinel})
    out = {"A": tuple(A)}
    if signature in ("55", "55u"):
        out["T"] = tuple(sorted(set(A) | {1 + p, -(1 + p)}))
    else:
        if p % 7 == 1:
            out["T"] = tuple(sorted(set(A) | {1 + p, -(1 + p)}))
        else:
            out["T"] = tuple(A)
    if l is not None:
        if (p - 1) % l != 0:
            raise ValueError("refined sets need p = 1 mod l")
        out["A_refined"] = _refined_55_set(p, l)
        sym = lambda t: (t % l) if (t % l) <= l // 2 else (t % l) - l
        vals = {sym(t) for t in out["A_refined"]}
        vals |= {sym(1 + p), sym(-(1 + p))}
        out["T_refined"] = tuple(sorted(vals))
    return out


def _refined_55_set(p, l):
    """A'_{p,l}: traces over (a, b) with 5(a+b) and H_5(a,b)/5 nonzero
    l-th powers in F_p (the 5 | z branch of the degree-5 family)."""
    ap = kernels.ap_table_55(p)
    powers = _lth_power_table(p, l)
    inv5 = pow(5, -1, p)
    out = set()
    for a in range(p):
        for b in range(p):
            s = 5 * (a + b) % p
            if s == 0 or not powers[s]:
                continue
            h = h5_int(a, b) % p
            h5over5 = h * inv5 % p
            if h5over5 == 0 or not powers[h5over5]:
                continue
            cls = _class_index(a, b, p)
            t = int(ap[cls])
            if t == 2 * p:
                continue
            out.add(t)
    return tuple(sorted(out))


def _lth_power_table(p, l):
    table = bytearray(p)
    e = (p - 1) // math.gcd(l, p - 1)
    for x in range(1, p):
        if pow(x, e, p) == 1:
            table[x] = 1
    return table


def _class_index(a, b, p):
    """Index of [a : b] in the a_p tables: t for [1 : t], p for [0 : 1]."""
    if a % p == 0:
        return p
    return (b * pow(a, -1, p)) % p


# ---------------------------------------------------------------------------
# elimination by trace congruences


def eliminate_newforms(signature, candidates, l_values, survivors_expected,
                       trial_primes, refined_attempts=3, budget=None):
    """Per-(candidate, l) elimination audit.

    For each candidate not in survivors_expected and each prime l, find a
    trial prime p with the trace congruence violated; survivors must pass
    every test.  Returns (survivors, audit) where audit[(label, l)] is
    either ('eliminated', p, kind) or ('survives',).
    """
    audit = {}
    survivors = set()
    sets_cache = {}
    for cand in candidates:
        for l in l_values:
            res = _eliminate_one(signature, cand, l, trial_primes, sets_cache,
                                 refined_attempts)
            audit[(cand.label, l)] = res
            if res[0] == "survives":
                survivors.add(cand.label)
    return survivors, audit


def _eliminate_one(signature, cand, l, trial_primes, sets_cache, refined_attempts):
    bad = {2, 5} if signature in ("55", "55u") else {2, 7}
    for p in trial_primes:
        if p in bad or p == l:
            continue
        key = (signature, p)
        if key not in sets_cache:
            sets_cache[key] = kraus_sets(signature, p)
        T = sets_cache[key]["T"]
        if cand.rational:
            apv = cand.ap(p)
            if all((apv - t) % l != 0 for t in T):
                return ("eliminated", p, "trace")
        else:
            if p not in cand.algebraic_ap:
                continue
            ok_some = False
            for (minpoly, conj_values) in cand.algebraic_ap[p]:
                for t in T:
                    # norm of (a_p - t) = +-minpoly(t)
                    norm = _int_poly_eval(minpoly, t)
                    if norm % l == 0:
                        ok_some = True
            if not ok_some:
                return ("eliminated", p, "norm")
    # refined Kraus at p = 1 mod l (rational candidates only)
    if cand.rational and signature == "55":
        found = 0
        p = 2 * l + 1
        while found < refined_attempts and p < 600 * l:
            if (p - 1) % l == 0 and is_probable_prime(p) and p not in bad:
                found += 1
                sets = kraus_sets("55", p, l)
                apv = cand.ap(p)
                if all((apv - t) % l != 0 for t in sets["T_refined"]):
                    return ("eliminated", p, "kraus-refined")
            p += 2 * l
    return ("survives",)


def _int_poly_eval(coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# image-of-inertia criterion


def inertia_discriminate(ord_p_disc_1, ord_p_j_1, ord_p_disc_2, ord_p_j_2, p):
    """Potentially good curves with different gcd(12, ord_p disc_min) have
    non-isomorphic mod-l representations for all l not in {2, p}."""
    if p < 5:
        raise ValueError("criterion needs p >= 5")
    if ord_p_j_1 < 0 or ord_p_j_2 < 0:
        raise ValueError("potentially multiplicative reduction; criterion inapplicable")
    return math.gcd(12, ord_p_disc_1) != math.gcd(12, ord_p_disc_2)


# ---------------------------------------------------------------------------
# the unit-exponent sieve over Z[zeta_7] / Z[zeta_5]


def exponent_sieve_77(E0, p, l, g, budget=None):
    """B_g(E0, p): pairs (mu, eta) in [0, l)^2 admissible for the unit
    exponents in x + zeta y = (1-zeta)^{ord7 g} (1+zeta)^mu (1+zeta^2)^eta beta^l.

    Requires l | p - 1 to be useful (exact in all cases).  Enumerates the
    trace-constrained pair set A_g(E0, p) and intersects the l-th power
    conditions at every prime of Z[zeta_7] above p.
    """
    if p in (2, 7):
        raise ValueError("p must avoid {2, 7}")
    ap0 = ec_trace(E0.model, p) if isinstance(E0, NewformCandidate) else ec_trace(E0, p)
    ap_frey = kernels.ap_table_77(p)
    powers = _lth_power_table(p, l)
    f7 = _order_mod(p, 7)
    Fq = FiniteField(p, f7) if f7 > 1 else FiniteField(p)
    zetas = _seventh_roots(Fq)
    assert len(zetas) == 6
    m = 6 // f7
    # group the roots into Frobenius orbits: one prime ideal per orbit
    orbits = _frobenius_orbits(zetas, p)
    assert len(orbits) == m
    reps = [orb[0] for orb in orbits]
    # character data per prime: an l-th power test in F_{p^f7}
    q = Fq.order
    if (q - 1) % l != 0:
        # the l-th power condition is vacuous; the sieve is exact but useless
        return set((mu, eta) for mu in range(l) for eta in range(l))
    chi_exp = (q - 1) // l
    mu_l = _mu_l_dlog(Fq, l)

    def chi(x):
        """dlog of x in the order-l quotient, or None for x = 0."""
        if x.is_zero():
            return None
        return mu_l[(x ** chi_exp).to_int()]

    gord = 1 if g == 7 else 0
    out = set()
    consts = []
    for w in reps:
        one = Fq.one()
        u = one + w
        v = one + w * w
        ominus = (one - w) ** gord if gord else one
        consts.append((w, chi(u), chi(v), chi(ominus)))
    for a in range(p):
        for b in range(p):
            if a == 0 and b == 0:
                continue
            h = h7_int(a, b) % p
            s = (a + b) * (7 if g == 7 else 1) % p
            if s != 0 and not powers[s]:
                continue
            hg = h * pow(7, -1, p) % p if g == 7 else h
            if hg != 0 and not powers[hg]:
                continue
            t = int(ap_frey[_class_index(a, b, p)])
            if h != 0:
                if t == 2 * p or (ap0 - t) % l != 0:
                    continue
            else:
                if (ap0 * ap0 - (p + 1) ** 2) % l != 0:
                    continue
            # solve the character conditions: for each prime, a linear
            # condition chi(a + b zeta) - mu chi(1+zeta) - eta chi(1+zeta^2)
            # = chi((1-zeta)^ord7g) in Z/l
            sols = None
            for (w, cu, cv, co) in consts:
                x = Fq.from_int_mod(a) + Fq.from_int_mod(b) * w
                cx = chi(x)
                if cx is None:
                    continue          # 0 is an l-th power: no constraint
                rhs = (cx - (co or 0)) % l
                line = _solve_line(cu, cv, rhs, l)
                sols = line if sols is None else (sols & line)
                if not sols:
                    break
            if sols is None:
                sols = set((mu, eta) for mu in range(l) for eta in range(l))
            out |= sols
            if len(out) == l * l:
                return out
    return out


def _solve_line(cu, cv, rhs, l):
    """{(mu, eta): cu*mu + cv*eta = rhs mod l} (None coefficients mean 0)."""
    cu = cu or 0
    cv = cv or 0
    out = set()
    if cu % l == 0 and cv % l == 0:
        if rhs % l == 0:
            return set((mu, eta) for mu in range(l) for eta in range(l))
        return out
    if cu % l != 0:
        inv = pow(cu, -1, l)
        for eta in range(l):
            out.add(((rhs - cv * eta) * inv % l, eta))
    else:
        inv = pow(cv, -1, l)
        for mu in range(l):
            out.add((mu, (rhs - cu * mu) * inv % l))
    return out


def exponent_sieve_55(E0, p, l, budget=None):
    """The single-exponent analogue over Z[zeta_5] for x^5 + y^5 = z^l,
    5 not dividing z: admissible r in x + zeta y = (1+zeta)^r beta^l.

    Uses the strengthened singular congruence a_p(E0) = eps (1+p) mod l
    with eps the split/non-split sign of the degenerate Frey fibre.
    """
    if p in (2, 5):
        raise ValueError("p must avoid {2, 5}")
    ap0 = ec_trace(E0.model, p) if isinstance(E0, NewformCandidate) else ec_trace(E0, p)
    ap_frey = kernels.ap_table_55_untwisted(p)
    powers = _lth_power_table(p, l)
    f5 = _order_mod(p, 5)
    Fq = FiniteField(p, f5) if f5 > 1 else FiniteField(p)
    zetas = _fifth_roots(Fq)
    orbits = _frobenius_orbits(zetas, p)
    reps = [orb[0] for orb in orbits]
    q = Fq.order
    if (q - 1) % l != 0:
        return set(range(l))
    chi_exp = (q - 1) // l
    mu_l = _mu_l_dlog(Fq, l)

    def chi(x):
        if x.is_zero():
            return None
        return mu_l[(x ** chi_exp).to_int()]

    consts = [(w, chi(Fq.one() + w)) for w in reps]
    out = set()
    sing_cache = {}
    for a in range(p):
        for b in range(p):
            if a == 0 and b == 0:
                continue
            s = (a + b) % p
            if s != 0 and not powers[s]:
                continue
            h = h5_int(a, b) % p
            if h != 0 and not powers[h]:
                continue
            t = int(ap_frey[_class_index(a, b, p)])
            if t != 2 * p:
                if (ap0 - t) % l != 0:
                    continue
            else:
                eps = _split_sign_55u(a, b, p, sing_cache)
                if (ap0 - eps * (1 + p)) % l != 0:
                    continue
            sols = None
            for (w, cu) in consts:
                x = Fq.from_int_mod(a) + Fq.from_int_mod(b) * w
                cx = chi(x)
                if cx is None:
                    continue
                line = _solve_r_line(cu, cx, l)
                sols = line if sols is None else (sols & line)
                if not sols:
                    break
            if sols is None:
                sols = set(range(l))
            out |= sols
            if len(out) == l:
                return out
    return out


def _solve_r_line(cu, rhs, l):
    cu = cu or 0
    if cu % l == 0:
        return set(range(l)) if rhs % l == 0 else set()
    return {rhs * pow(cu, -1, l) % l}


def _split_sign_55u(a, b, p, cache):
    """Split (+1) / non-split (-1) sign of the multiplicative fibre."""
    key = (a, b)
    if key not in cache:
        model = EllipticCurve(0, -5 * (a * a + b * b), 0, 5 * h5_int(a, b), 0)
        kind, eps = reduction_type(model, p)
        assert kind == "mult", "expected a nodal fibre"
        cache[key] = eps
    return cache[key]


def _order_mod(p, n):
    o = 1
    x = p % n
    while x != 1:
        x = x * p % n
        o += 1
    return o


def _seventh_roots(Fq):
    return _nth_roots(Fq, 7)


def _fifth_roots(Fq):
    return _nth_roots(Fq, 5)


def _nth_roots(Fq, n):
    """Primitive n-th roots of unity in F_q (q = 1 mod n on the orbit field)."""
    q = Fq.order
    assert (q - 1) % n == 0
    g = Fq.multiplicative_generator()
    z = g ** ((q - 1) // n)
    out = []
    w = z
    for _ in range(n - 1):
        out.append(w)
        w = w * z
    return out


def _frobenius_orbits(elements, p):
    seen = set()
    orbits = []
    for x in sorted(elements, key=lambda e: e.to_int()):
        if x.to_int() in seen:
            continue
        orb = [x]
        seen.add(x.to_int())
        y = x ** p
        while y.to_int() not in seen:
            orb.append(y)
            seen.add(y.to_int())
            y = y ** p
        orbits.append(orb)
    return orbits


def search_sieve_primes(E0, l, g, signature="77", bound=4000, want=1):
    """First primes p = 1 mod l with the sieve reduced to the trivial
    exponents; returns [(p, set)] of successes (possibly fewer than want)."""
    out = []
    p = 2 * l + 1
    while p < bound and len(out) < want:
        if is_probable_prime(p) and (p - 1) % l == 0:
            if signature == "77" and p not in (2, 7):
                B = exponent_sieve_77(E0, p, l, g)
                if B == {(0, 0)}:
                    out.append((p, B))
            elif signature == "55u" and p not in (2, 5):
                B = exponent_sieve_55(E0, p, l)
                if B == {0}:
                    out.append((p, B))
        p += 2 * l
    return out
