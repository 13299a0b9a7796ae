"""Chabauty-Coleman machinery: residue-disk expansions, tiny integrals,
full integrals by order annihilation, annihilating differentials, and
disk-by-disk completeness certificates.

Integrals against a divisor D use the order m of its reduction: m*D lies
in the kernel of reduction, where its Mumford u-polynomial factors into
residue clusters whose points pair off inside single disks; each cluster
contributes a power-sum evaluation of a formal antiderivative, entirely
over the base completion.  Division by m and all series tails carry
certified precision.
"""

import math
from fractions import Fraction

from .curves import HyperellipticCurve, jacobian_order
from .ff import FiniteField
from .jacobian import (MumfordDivisor, divisor_from_points, element_order,
                       embed_divisor, identity_divisor, reduce_divisor, scalar_mul)
from .localfield import LocalElement, LocalField, PrecisionError, complete_at, padic_field
from .poly import Poly, ff_factor, ff_roots
from .series import PSeries, strassmann_bound, tail_min_valuation


class ChabautyError(RuntimeError):
    pass


def check_chabauty_prime(field, residue_char):
    """The one-point-per-disk conclusion needs e < p - 1."""
    if field.e >= residue_char - 1:
        raise ChabautyError("ramification e=%d violates e < p-1 at p=%d"
                            % (field.e, residue_char))


# ---------------------------------------------------------------------------
# disk expansions


class DiskExpansion:
    """Series data for one residue disk.

    kind is 'finite' (uniformizer X - x0), 'weierstrass' (uniformizer Y)
    or 'inf' (uniformizer X^g/Y); x_series/y_series satisfy the curve
    equation to truncation.  antideriv(i) returns the integral of
    X^i dX/Y as a floored series in the uniformizer.
    """

    def __init__(self, curve_local, kind, center, trunc, branch_y0=None):
        self.curve = curve_local
        self.kind = kind
        self.center = center
        self.trunc = trunc
        self.branch_y0 = branch_y0
        self.L = curve_local.field
        self._build()

    def _build(self):
        L = self.L
        M = self.trunc
        F = self.curve.fnorm
        g = self.curve.genus
        if self.kind == "finite":
            x0 = self.center
            fx = _poly_series(F, x0, M).set_floor(0)
            y0sq = fx.coeffs[0]
            if y0sq.valuation_or_none() != 0:
                raise ChabautyError("center is not in an ordinary finite disk")
            self.y0sq = y0sq
            # branch-free unit series S with Y = y0 * S for either branch
            unit = fx.scale(y0sq.inverse()).set_floor(0)
            self.S = unit.sqrt_unit(root0=L.one()).set_floor(0)
            self.S_inv = self.S.inverse().set_floor(0)
            self.x_series = PSeries(L, [x0, L.one()], M).set_floor(0)
            if self.branch_y0 is not None:
                self.y_series = self.S.scale(self.branch_y0)
                self.y_inv = self.S_inv.scale(self.branch_y0.inverse()).set_floor(0)
            self.dx_dt = PSeries.constant(L, L.one(), M).set_floor(0)
        elif self.kind == "weierstrass":
            x0 = self.center          # exact root of F in L
            # solve Y^2 = F(X), X = x0 + delta(T^2)
            fprime = _poly_eval_local(F.derivative(), x0)
            if fprime.valuation_or_none() != 0:
                raise ChabautyError("Weierstrass center is not simple")
            delta = PSeries(L, [L.zero(), L.zero(), fprime.inverse()], M)
            for _ in range(M.bit_length() + 2):
                fx = _poly_series(F, x0, M, shift_series=delta)
                t2 = PSeries(L, [L.zero(), L.zero(), L.one()], M)
                err = fx - t2
                fpx = _poly_series(F.derivative(), x0, M, shift_series=delta)
                delta = delta - err * fpx.inverse()
            self.x_series = (PSeries.constant(L, x0, M) + delta).set_floor(0)
            self.y_series = PSeries.variable(L, M).set_floor(0)
            dd = delta.derivative()
            self.dx_dt = PSeries(L, dd.coeffs, M).set_floor(0)
        elif self.kind == "inf":
            c = F.lc()
            coeffs = list(F.coeffs)
            # sigma: s = t^2 sigma(s), x = 1/s, solved by fixed-point iteration
            t2 = PSeries(L, [L.zero(), L.zero(), L.one()], M + 4)
            s = t2.scale(c)
            for _ in range(M // 2 + 3):
                phi = PSeries.constant(L, L.zero(), M + 4)
                spow = PSeries.constant(L, L.one(), M + 4)
                for j in range(len(coeffs)):
                    cj = coeffs[len(coeffs) - 1 - j]
                    if not L.is_zero(cj):
                        phi = phi + spow.scale(cj)
                    spow = spow * s
                s = t2 * phi
            sigma = PSeries(L, s.coeffs[2: 2 + M], M).set_floor(0)   # s = t^2 sigma
            self.sigma = sigma
            self.sigma_inv = sigma.inverse().set_floor(0)
            self.x_series = None      # Laurent; handled via sigma
            self.y_series = None
        else:
            raise ValueError(self.kind)
        self._antiderivs = {}

    def omega_scaled(self, i):
        """For finite disks: integral of (x0+T)^i S^{-1}, so that the
        antiderivative of X^i dX/Y is this divided by the branch y0 and
        G_i = antideriv_i / Y = y0sq^{-1} * omega_scaled_int * S^{-1}."""
        assert self.kind == "finite"
        xi = _series_pow(self.x_series, i, self.trunc)
        return (xi * self.S_inv).set_floor(0)

    def g_series(self, i):
        """Branch-free G_i = (integral of X^i dX/Y) / Y as an L-series."""
        assert self.kind == "finite"
        base = self.omega_scaled(i).integrate()
        out = (base * self.S_inv).scale(self.y0sq.inverse())
        return PSeries(self.L, out.coeffs, out.trunc, base.floor)

    def omega_series(self, i):
        """Integrand series of X^i dX/Y in the disk uniformizer."""
        L = self.L
        M = self.trunc
        g = self.curve.genus
        if self.kind == "finite":
            if self.branch_y0 is None:
                raise ChabautyError("finite-disk omega needs a branch")
            xi = _series_pow(self.x_series, i, M)
            return (xi * self.y_inv).set_floor(0)
        if self.kind == "weierstrass":
            # X^i dX/Y = X^i X'(T)/T dT; X' has a simple zero at T = 0
            xi = _series_pow(self.x_series, i, M)
            num = xi * self.dx_dt
            assert num.order() >= 1
            shifted = PSeries(L, num.coeffs[1:], M - 1).set_floor(0)
            return shifted
        # infinity: t^(2(g-1-i)) * sigma^(g-i) * (-2 sigma^{-1} + t (sigma^{-1})')
        sinv = self.sigma_inv
        A = sinv.scale(L.embed_int(-2)) + PSeries(L, [L.zero()] + sinv.derivative().coeffs,
                                                  sinv.trunc).truncate(sinv.trunc)
        pw = _series_pow(self.sigma, g - i, self.sigma.trunc) if g - i >= 0 else \
            _series_pow(self.sigma_inv, i - g, self.sigma_inv.trunc)
        base = (pw * A).set_floor(0)
        return base.shift(2 * (g - 1 - i)).truncate(self.trunc).set_floor(0)

    def antideriv(self, i):
        if i not in self._antiderivs:
            self._antiderivs[i] = self.omega_series(i).integrate()
        return self._antiderivs[i]

    def check_identity(self):
        """Y(T)^2 - F(X(T)) = 0 to truncation (finite/weierstrass kinds)."""
        if self.kind == "inf":
            return True
        F = self.curve.fnorm
        fx = _poly_series_general(F, self.x_series)
        diff = self.y_series * self.y_series - fx
        return all(c.valuation_or_none() is None for c in diff.coeffs)


def _poly_series(F, x0, M, shift_series=None):
    """F(x0 + T) or F(x0 + delta(T)) as a series."""
    L = F.field
    if shift_series is None:
        shift_series = PSeries.variable(L, M)
    base = PSeries.constant(L, x0, shift_series.trunc) + shift_series
    return _poly_series_general(F, base)


def _poly_series_general(F, xs):
    L = F.field
    acc = PSeries.constant(L, L.zero(), xs.trunc)
    for c in reversed(F.coeffs):
        acc = acc * xs + PSeries.constant(L, c, xs.trunc)
    return acc


def _poly_eval_local(F, x0):
    acc = F.field.zero()
    for c in reversed(F.coeffs):
        acc = acc * x0 + c
    return acc


def _series_pow(s, n, M):
    out = PSeries.constant(s.field, s.field.one(), M).set_floor(0)
    base = s
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# power sums and cluster evaluation


def power_sums(u, n):
    """p_0..p_{n-1} for the roots of monic u, by Newton's identities."""
    field = u.field
    m = u.degree
    a = [u[j] for j in range(m)]          # low coefficients, u = X^m + ...
    p = [field.embed_int(m)]
    for k in range(1, n):
        if k <= m:
            acc = a[m - k] * field.embed_int(-k)
        else:
            acc = field.zero()
        for i in range(1, min(k, m) + 1):
            if k - i >= 1:
                acc = acc - a[m - i] * p[k - i]
        p.append(acc)
    return p


def _poly_mod(poly, u):
    return poly % u


def _series_at_poly(series, tpoly, u):
    """series(T) evaluated at T = tpoly modulo u (Horner)."""
    field = u.field
    acc = Poly(field, [])
    for c in reversed(series.coeffs):
        acc = (acc * tpoly) % u
        acc = acc + Poly(field, [c])
    return acc


def _sum_over_roots(hpoly, u):
    """Sum of h(alpha) over roots of u, via power sums."""
    p = power_sums(u, max(u.degree, hpoly.degree + 1))
    field = u.field
    acc = field.zero()
    for j in range(hpoly.degree + 1):
        acc = acc + hpoly[j] * p[j]
    return acc


def hensel_factor_pair(u, gbar, hbar):
    """Lift a coprime residue factorization u = g*h; everything monic.

    Linear lifting with explicit mod-g reduction keeps all degrees fixed,
    which approximate zeros would otherwise let grow.
    """
    L = u.field
    lift = lambda pol: Poly(L, [L.lift_residue(c) for c in pol.coeffs])
    g, h = lift(gbar), lift(hbar)
    d0, sbar, tbar = gbar.xgcd(hbar)
    assert d0.degree == 0
    inv = d0.coeffs[0].inverse()
    tau = lift(tbar.scale(inv))
    max_digits = 2 * max(c.prec_abs() for c in u.coeffs) + 8
    for _ in range(max_digits):
        e = u - g * h
        if all(c.valuation_or_none() is None for c in e.coeffs):
            break
        delta_g = (tau * e) % g
        delta_h, _fuzz = divmod(e - h * delta_g, g)
        g = g + delta_g
        h = h + delta_h
    assert all(c.valuation_or_none() is None for c in (u - g * h).coeffs), \
        "Hensel factor lifting failed"
    return g, h


def _newton_hull(pairs):
    """Lower convex hull of (i, v_i) pairs, returned as vertex list."""
    pts = sorted(pairs)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def split_off_infinity(u, L):
    """Factor u = u_fin * prod(blocks), blocks holding roots of negative
    valuation, one block per (integer) depth.  Returns (u_fin, blocks)
    with blocks = [(depth s, monic factor B)].  Fractional depths raise
    ChabautyError (caller retries with another annihilation multiple).
    """
    blocks = []
    cur = u
    while True:
        d = cur.degree
        if d == 0:
            return cur, blocks
        pairs = []
        for i, c in enumerate(cur.coeffs):
            v = c.valuation_or_none()
            if v is not None:
                pairs.append((i, v))
        hull = _newton_hull(pairs)
        (x1, y1), (x2, y2) = hull[-2], hull[-1]
        assert x2 == d and y2 == 0, "u is not unit-leading"
        num, ell = -y1, x2 - x1
        if num <= 0:
            return cur, blocks
        if num % ell != 0:
            raise ChabautyError("fractional infinity depth %d/%d; "
                                "retry with another multiple" % (num, ell))
        s = num // ell
        # scale: U(X) = pi^(s d) u(X / pi^s) is integral, deepest roots unit
        U = Poly(L, [cur[i].shift_pi(s * (d - i)) for i in range(d + 1)])
        R = L.residue
        Ubar = Poly(R, [L.residue_of(c) for c in U.coeffs])
        wbar = Poly(R, Ubar.coeffs[x1:])
        xbar = Poly(R, [R.zero()] * x1 + [R.one()])
        if x1 == 0:
            A, B = Poly(L, [L.one()]), U
        else:
            A, B = hensel_factor_pair(U, xbar, wbar)
        # unscale the deepest block: roots of B are pi^s * alpha
        B0 = Poly(L, [B[j].shift_pi(s * (j - ell)) for j in range(ell + 1)])
        blocks.append((s, B0))
        cur = Poly(L, [A[j].shift_pi(s * (j - x1)) for j in range(x1 + 1)])


def split_into_clusters(u, L):
    """Factor integral monic u by residue clusters: [(sigma_bar, u_c)]."""
    R = L.residue
    ubar = Poly(R, [L.residue_of(c) for c in u.coeffs])
    assert ubar.degree == u.degree, "u is not unit-leading"
    facs = ff_factor(ubar)
    if len(facs) == 1:
        return [(facs[0][0], u)]
    out = []
    rest = u
    rest_bar_parts = [(s, m) for s, m in facs]
    for idx, (sigma, mult) in enumerate(facs[:-1]):
        gbar = sigma ** mult
        hbar = Poly(R, [R.one()])
        for s2, m2 in facs[idx + 1:]:
            hbar = hbar * s2 ** m2
        g, h = hensel_factor_pair(rest, gbar, hbar)
        out.append((sigma, g))
        rest = h
    out.append((facs[-1][0], rest))
    return out


# ---------------------------------------------------------------------------
# full integrals by order annihilation


class ColemanIntegralVector:
    def __init__(self, curve, divisor_desc, prime_desc, values, basis="X"):
        self.curve = curve
        self.divisor_desc = divisor_desc
        self.prime_desc = prime_desc
        self.values = values          # list of LocalElement
        self.basis = basis

    def valuations(self):
        return [v.valuation_or_none() for v in self.values]


def full_integrals(curve, points, K, prime, prec=25, basis_indices=None,
                   budget=None, multiplier=1, target_abs=5):
    """Integrals of X^i dX/Y (i < g) against D = sum [P - inf].

    curve is over K (a NumberField) or over Q (K is None); points are in
    original coordinates.  Returns (ColemanIntegralVector, context) where
    the context carries the completion and reduction data for reuse.
    """
    from .curves import DEFAULT_BUDGET
    budget = budget or DEFAULT_BUDGET
    # Cantor chains over the completion lose precision at near-degenerate
    # steps roughly in proportion to genus * chain length, and digits are
    # cheap; start high enough that one attempt normally suffices.
    g = curve.genus
    qsize = prime if K is None else prime.p ** prime.f
    attempt_prec = max(prec, 25 + 16 * g * g * max(2, qsize.bit_length()))
    last_err = None
    for _ in range(4):
        # the Mumford form of m*D occasionally meets a residue cluster of
        # degree > 1; another annihilation multiple moves it
        for k in (multiplier, 2 * multiplier, 3 * multiplier, 5 * multiplier, 7 * multiplier):
            try:
                vec, ctx = _full_integrals_once(curve, points, K, prime, attempt_prec,
                                                basis_indices, budget, k, target_abs)
                if min(v.prec_abs() for v in vec.values) < target_abs:
                    raise PrecisionError("results below the target precision %d" % target_abs)
                return vec, ctx
            except ChabautyError as err:
                if "retry with another" not in str(err):
                    raise
                last_err = err
            except PrecisionError as err:
                last_err = err
                break
        attempt_prec *= 4
    raise ChabautyError("all annihilation multiples failed: %s" % last_err)


def _full_integrals_once(curve, points, K, prime, prec, basis_indices, budget, multiplier,
                         target_abs=5):
    g = curve.genus
    if basis_indices is None:
        basis_indices = list(range(g))
    # completion and reduction
    if K is None:
        p = prime
        L, embed = padic_field(p, prec)
        Cbar, good = curve.reduce_mod_p(p)
        red_point = lambda pt: _reduce_point_q(curve, pt, Cbar)
        divred = lambda D, Ct: _reduce_divisor_q(D, p, Ct)
    else:
        p = prime.p
        L, embed = complete_at(K, prime, prec)
        rm = prime.residue_map()
        Cbar, good = curve.reduce_at(rm)
        red_point = lambda pt: _reduce_point_nf(curve, pt, rm, Cbar)
        divred = lambda D, Ct: reduce_divisor(D, rm, Ct)
    if not good:
        raise ChabautyError("bad reduction at the chosen prime")
    check_chabauty_prime(L, L.p)

    D = divisor_from_points(curve, points)
    Dbar = divred(D, Cbar)
    NJ = jacobian_order(Cbar, budget)
    m = element_order(Dbar, NJ) * multiplier

    curve_L = HyperellipticCurve(L, Poly(L, [embed(c) for c in curve.fnorm.coeffs]),
                                 name=curve.name + "@loc")
    D_L = embed_divisor(D, embed, curve_L)
    W = scalar_mul(m, D_L)
    # m*D must lie in the kernel of reduction
    if not scalar_mul(m, Dbar).is_identity():
        raise ArithmeticError("m * reduced divisor is not the identity")

    m_loss = 0
    mm = m
    while mm % L.p == 0:
        mm //= L.p
        m_loss += L.e
    vals = _integrate_kernel_element(curve_L, W, basis_indices, target_abs + m_loss + 2)
    out = []
    for v in vals:
        out.append(v.div_int(m))
    ctx = {
        "local_field": L, "embed": embed, "curve_local": curve_L,
        "reduced_curve": Cbar, "jacobian_order": NJ, "reduction_order": m // multiplier,
        "divisor": D, "reduced_divisor": Dbar, "multiplier": multiplier,
        "red_point": red_point,
    }
    vec = ColemanIntegralVector(curve, points, str(prime), out)
    return vec, ctx


def _reduce_point_q(curve, pt, Cbar):
    if pt == "inf":
        return "inf"
    X, Y = curve.to_normalized(pt)
    p = Cbar.field.p
    Fp = Cbar.field
    em = lambda c: Fp.from_int_mod(c.numerator) * Fp.from_int_mod(c.denominator).inverse()
    return (em(X), em(Y))


def _reduce_point_nf(curve, pt, rm, Cbar):
    if pt == "inf":
        return "inf"
    X, Y = curve.to_normalized(pt)
    return (rm(X), rm(Y))


def _reduce_divisor_q(D, p, Ct):
    from .jacobian import reduce_divisor_mod_p
    return reduce_divisor_mod_p(D, p, Ct)


def _integrate_kernel_element(curve_L, W, basis_indices, target_abs=5):
    """Integrals of the basis differentials against a kernel-of-reduction
    element W, by residue-cluster power sums.  Series truncation depends
    only on the target output precision, not the Cantor working precision."""
    L = curve_L.field
    u, v = W.u, W.v
    if u.degree == 0:
        return [L.zero() for _ in basis_indices]
    trunc = max(4 * target_abs + 28, 44)
    # series work only needs the target precision; cap the kernel element
    # and the curve so all subsequent arithmetic uses small representatives
    vmin = 0
    for c in list(u.coeffs) + list(v.coeffs):
        cv = c.valuation_or_none()
        if cv is not None and cv < vmin:
            vmin = cv
    cap = L.e * (target_abs + 24) + 8 * (-vmin)
    capel = lambda c: c.with_precision(min(c.prec_abs(), cap))
    u = Poly(L, [capel(c) for c in u.coeffs])
    v = Poly(L, [capel(c) for c in v.coeffs])
    curve_L = HyperellipticCurve(L, Poly(L, [capel(c) for c in curve_L.fnorm.coeffs]),
                                 name=curve_L.name)
    F = curve_L.fnorm
    R = L.residue
    Fbar = Poly(R, [L.residue_of(c) for c in F.coeffs])
    u_fin, inf_blocks = split_off_infinity(u, L)
    totals = [L.zero() for _ in basis_indices]
    if inf_blocks:
        disk = DiskExpansion(curve_L, "inf", None, trunc)
        for s, B in inf_blocks:
            vB = v % B
            g0, w, _ = vB.xgcd(B)
            if g0.degree != 0:
                raise PrecisionError("v-inverse on an infinity block lost significance")
            w = w.scale(g0.coeffs[0].inverse())     # w = v^{-1} mod B
            tpoly = (Poly(L, [L.zero()] * curve_L.genus + [L.one()]) * w) % B
            for idx, i in enumerate(basis_indices):
                Fi = disk.antideriv(i)
                h = _series_at_poly(Fi, tpoly, B)
                val = _sum_over_roots(h, B)
                tail = tail_min_valuation(Fi.floor, Fraction(s, 2), Fi.trunc, L.p)
                totals[idx] = totals[idx] + val.with_precision(min(val.prec_abs(), tail))
    clusters = split_into_clusters(u_fin, L) if u_fin.degree > 0 else []
    for sigma, u_c in clusters:
        if sigma.degree > 1:
            raise ChabautyError("cluster with residue degree %d needs an unramified "
                                "base change; retry with another multiple" % sigma.degree)
        x_res = -sigma.coeffs[0] / sigma.coeffs[1]
        v_c = v % u_c
        weier = Fbar.evaluate(x_res).is_zero()
        if weier:
            x0 = _weierstrass_center(curve_L, x_res)
            disk = DiskExpansion(curve_L, "weierstrass", x0, trunc)
            for idx, i in enumerate(basis_indices):
                Fw = disk.antideriv(i)
                h = _series_at_poly(Fw, v_c, u_c)
                val = _sum_over_roots(h, u_c)
                tail = tail_min_valuation(Fw.floor, Fraction(1, 2), Fw.trunc, L.p)
                totals[idx] = totals[idx] + val.with_precision(min(val.prec_abs(), tail))
        else:
            x0 = L.lift_residue(x_res)
            disk = DiskExpansion(curve_L, "finite", x0, trunc)
            for idx, i in enumerate(basis_indices):
                G = disk.g_series(i)
                tpoly = Poly(L, [-x0, L.one()]) % u_c
                gser = _series_at_poly(G, tpoly, u_c)
                h = (Poly(L, v_c.coeffs) * gser) % u_c
                val = _sum_over_roots(h, u_c)
                tail = tail_min_valuation(G.floor, 1, G.trunc, L.p)
                totals[idx] = totals[idx] + val.with_precision(min(val.prec_abs(), tail))
    return totals


def _weierstrass_center(curve_L, x_res):
    L = curve_L.field
    F = curve_L.fnorm
    coeffs = list(F.coeffs)
    start = L.lift_residue(x_res)
    return L.hensel_root(coeffs, start)


# ---------------------------------------------------------------------------
# tiny integrals


def tiny_integral_weierstrass(curve_L, basis_indices, P_from, P_to, trunc=None):
    """Integrals of X^i dX/Y between two points of one Weierstrass disk.

    Points are normalized-model points over the completion.  Returns the
    list of values, exploiting that the antiderivative in the Y-uniformizer
    is an odd series around the Weierstrass center.
    """
    L = curve_L.field
    trunc = trunc or 2 * L.prec + 10
    x_res = L.residue_of(P_to[0])
    x0 = _weierstrass_center(curve_L, x_res)
    disk = DiskExpansion(curve_L, "weierstrass", x0, trunc)
    out = []
    for i in basis_indices:
        Fw = disk.antideriv(i)
        vals = []
        for P in (P_to, P_from):
            t = P[1]
            tv = t.valuation()
            tail = tail_min_valuation(Fw.floor, tv, Fw.trunc, L.p)
            vals.append(Fw.evaluate_at(t).with_precision(tail))
        out.append(vals[0] - vals[1])
    return out, disk


# ---------------------------------------------------------------------------
# annihilating differentials


class AnnihilatorDifferential:
    """omega = sum coeff_i * (basis_i dX/Y), pairing to zero with the
    integral vector; reduction data recorded for the disk arguments."""

    def __init__(self, coeffs, pivot, support):
        self.coeffs = coeffs          # dict index -> LocalElement (or exact 1)
        self.pivot = pivot
        self.support = support

    def pairing(self, c_values):
        acc = None
        for i, a in self.coeffs.items():
            term = c_values[i] if isinstance(a, int) else a * c_values[i]
            acc = term if acc is None else acc + term
        return acc


def annihilator_combination(c_values, allowed, free_index=None):
    """Deterministic one-relation annihilator within the allowed indices.

    Pivot = the highest index of minimal valuation among allowed; the
    returned differential is e_j - (c_j/c_pivot) e_pivot for the smallest
    allowed j != pivot (or the requested free_index).
    """
    vals = {}
    for i in allowed:
        v = c_values[i].valuation_or_none()
        if v is None:
            raise PrecisionError("integral %d is zero to precision; cannot pivot" % i)
        vals[i] = v
    vmin = min(vals.values())
    pivot = max(i for i in allowed if vals[i] == vmin)
    if free_index is None:
        free_index = min(i for i in allowed if i != pivot)
    ratio = c_values[free_index] / c_values[pivot]
    coeffs = {free_index: 1, pivot: -ratio}
    return AnnihilatorDifferential(coeffs, pivot, sorted(allowed))
