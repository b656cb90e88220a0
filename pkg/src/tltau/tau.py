"""Tau functions of the determinant kernel and their bilinear identities.

A tau function here is a ratio tau(v) = det F_i(v_j) / Delta(v) built from one
of the two generating families F of the chain module.  This module gives:

  * the Miwa map from point sets to times, and the [x]-shift on both times
    and polynomials;
  * two independent constructions of tau (Vandermonde quotient and a
    partial-fraction residue determinant) that must agree identically;
  * the Pluecker exchange residual on point sets, zero for any family;
  * Hirota bilinear operators D^alpha applied to pairs of Miwa polynomials,
    the low-order odd operators that annihilate (tau, tau) outright, and the
    weight-4 operator whose residual vanishes through cutoff - 4;
  * Baker-Akhiezer quotients of the Schur-reconstructed tau sums;
  * the symmetrized multiple-sum identity for determinants of moment
    matrices (an exchange-symmetrization cross-check used on random data).
"""

from fractions import Fraction
from itertools import product

from .algebra import MiwaPolynomial, det, vandermonde
from .chain import family_matrix
from . import schur as _schur


# -- Miwa map ----------------------------------------------------------------


class MiwaTimes:
    """A finite vector of times t_1 .. t_K."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx, values):
        self.ctx = ctx
        self.values = tuple(values)

    @classmethod
    def from_points(cls, ctx, points, K):
        return cls(ctx, _times_of_points(ctx, points, K))

    @property
    def K(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, MiwaTimes) and self.values == other.values

    def shift(self, x, sign):
        """t_p -> t_p + sign * x**p / p."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        ctx = self.ctx
        out = []
        for p in range(1, len(self.values) + 1):
            out.append(self.values[p - 1] + ctx.embed(Fraction(sign, p)) * x ** p)
        return MiwaTimes(ctx, out)

    def __repr__(self):
        return "MiwaTimes(%s)" % (", ".join(self.ctx.to_string(v) for v in self.values),)


def _times_of_points(ctx, points, K):
    pts = list(points)
    out = []
    for m in range(1, K + 1):
        acc = ctx.zero()
        for x in pts:
            acc = acc + x ** m
        out.append(acc * ctx.embed(Fraction(1, m)))
    return out


def miwa_map(points, K, ctx):
    """Times of a point set: t_m = (1/m) sum_i x_i^m."""
    return MiwaTimes.from_points(ctx, points, K)


def miwa_shift(obj, x, sign):
    """Shift by the one-point Miwa vector [x]: t_p -> t_p + sign x^p / p.

    Acts on either a MiwaTimes vector or a MiwaPolynomial (where it
    substitutes into the argument, never raising weighted degree).
    """
    if isinstance(obj, MiwaTimes):
        return obj.shift(x, sign)
    if isinstance(obj, MiwaPolynomial):
        return obj.shift_times(x, sign)
    raise TypeError("miwa_shift acts on MiwaTimes or MiwaPolynomial")


# -- tau functions -------------------------------------------------------------


def det_family(p, u, family, points):
    """det F_i(v_j) over the given points, columns in the given order."""
    return det(family_matrix(p, u, family, points), p.ctx)


def tau_det(p, u, family, points):
    """tau(v) = det F_i(v_j) / Delta(v)."""
    pts = list(points)
    if len(pts) != p.M:
        raise ValueError("need exactly M points")
    ctx = p.ctx
    vdm = vandermonde(pts, ctx) if len(pts) > 1 else ctx.one()
    if ctx.is_zero(vdm):
        raise ValueError("repeated evaluation points")
    return det_family(p, u, family, pts) / vdm


def tau_residue(p, u, family, points):
    """The same tau as a residue determinant.

    Row i of the matrix is sum_k v_k^(M-i) F_j(v_k) / prod_{m != k}(v_k - v_m);
    the determinant times (-1)^(M(M-1)/2) reproduces det F / Delta identically.
    """
    pts = list(points)
    M = p.M
    if len(pts) != M:
        raise ValueError("need exactly M points")
    ctx = p.ctx
    denoms = []
    for k in range(M):
        acc = ctx.one()
        for m in range(M):
            if m != k:
                acc = acc * (pts[k] - pts[m])
        if ctx.is_zero(acc):
            raise ValueError("repeated evaluation points")
        denoms.append(acc)
    fmat = family_matrix(p, u, family, pts)
    rows = []
    for i in range(M):
        row = []
        for j in range(M):
            acc = ctx.zero()
            for k in range(M):
                acc = acc + pts[k] ** (M - 1 - i) * fmat[j][k] / denoms[k]
            row.append(acc)
        rows.append(row)
    sign = -1 if (M * (M - 1) // 2) % 2 else 1
    return det(rows, ctx) * ctx.embed(sign)


def pluecker_residual(p, u, family, bigset, smallset):
    """Exchange relation on point sets: with |X| = M + 1 and |Y| = M - 1,

        sum_i (-1)^i det F(X without x_i) det F(Y, x_i)

    vanishes for every generating family.  x_i is appended as the last
    column of the Y determinant; X keeps its order with x_i deleted.
    """
    X = list(bigset)
    Y = list(smallset)
    M = p.M
    if len(X) != M + 1 or len(Y) != M - 1:
        raise ValueError("need |X| = M + 1 and |Y| = M - 1")
    ctx = p.ctx
    acc = ctx.zero()
    sign = -1
    for i in range(M + 1):
        left = det_family(p, u, family, X[:i] + X[i + 1:])
        right = det_family(p, u, family, Y + [X[i]])
        acc = acc + ctx.embed(sign) * left * right
        sign = -sign
    return acc


# -- Hirota bilinear operators -------------------------------------------------


class BilinearOperator:
    """A polynomial in the Hirota symbols D_1 .. D_K with scalar coefficients,
    stored as {exponent tuple: coefficient}."""

    __slots__ = ("ctx", "K", "terms")

    def __init__(self, ctx, K, terms):
        self.ctx = ctx
        self.K = K
        store = {}
        for alpha, c in terms.items():
            alpha = tuple(alpha)
            if len(alpha) > K:
                raise ValueError("operator key longer than K")
            alpha = alpha + (0,) * (K - len(alpha))
            if not ctx.is_zero(c):
                store[alpha] = c
        self.terms = store

    def __repr__(self):
        bits = []
        for alpha in sorted(self.terms):
            mono = "*".join(
                "D%d%s" % (m + 1, "" if e == 1 else "^%d" % e)
                for m, e in enumerate(alpha)
                if e
            )
            bits.append("%s %s" % (self.ctx.to_string(self.terms[alpha]), mono or "1"))
        return "BilinearOperator(%s)" % (" + ".join(bits) or "0")


def op_d(ctx, K, m, power=1):
    """The single symbol D_m ** power."""
    key = [0] * K
    key[m - 1] = power
    return BilinearOperator(ctx, K, {tuple(key): ctx.one()})


def op_d1_cubed_minus_4d3(ctx, K):
    if K < 3:
        raise ValueError("need K >= 3")
    return BilinearOperator(ctx, K, {(3,): ctx.one(), (0, 0, 1): ctx.embed(-4)})


def kp_operator(ctx, K):
    """D_1^4 + 3 D_2^2 - 4 D_1 D_3."""
    if K < 3:
        raise ValueError("need K >= 3")
    return BilinearOperator(
        ctx, K, {(4,): ctx.one(), (0, 2): ctx.embed(3), (1, 0, 1): ctx.embed(-4)}
    )


def _iter_deriv(poly, beta, cache):
    got = cache.get(beta)
    if got is not None:
        return got
    out = poly
    for m, k in enumerate(beta):
        for _ in range(k):
            out = out.deriv(m + 1)
    cache[beta] = out
    return out


def hirota_apply(op, f, g):
    """D^alpha acting on the pair (f, g):

        D^alpha [f, g] = sum_{beta <= alpha} (-1)^|beta|
                         prod_k C(alpha_k, beta_k) (d^beta f) (d^(alpha-beta) g)

    summed over the operator's terms with their coefficients.
    """
    if f.K != op.K or g.K != op.K or f.cutoff != g.cutoff:
        raise ValueError("operator and operands must share K and cutoff")
    ctx = f.ctx
    out = MiwaPolynomial(ctx, f.K, f.cutoff)
    cf, cg = {}, {}
    for alpha, c in op.terms.items():
        for beta in product(*(range(a + 1) for a in alpha)):
            coeff = 1
            for a, b in zip(alpha, beta):
                coeff *= _binom(a, b)
            if sum(beta) % 2:
                coeff = -coeff
            df = _iter_deriv(f, beta, cf)
            dg = _iter_deriv(g, tuple(a - b for a, b in zip(alpha, beta)), cg)
            term = (df * dg).scale(c * ctx.embed(coeff))
            out = out + term
    return out


def _binom(n, k):
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out


def hirota_kp_check(tau):
    """Residual of the weight-4 bilinear operator on (tau, tau), restricted to
    the weighted degrees the truncation determines (cutoff - 4)."""
    op = kp_operator(tau.ctx, tau.K)
    return hirota_apply(op, tau, tau).restrict(tau.cutoff - 4)


# -- Baker-Akhiezer quotients ---------------------------------------------------


def baker_akhiezer(p, u, a, b, times, z=None, cutoff=8):
    """psi_ab(t, z) = tau_a(t - [1/z]) / tau_b(t) on the Schur-reconstructed
    tau sums, with z=None meaning the point at infinity (no shift)."""
    if not isinstance(times, MiwaTimes):
        raise TypeError("times must be a MiwaTimes")
    ctx = p.ctx
    K = times.K
    num = _schur.tau_schur_poly(p, u, a, cutoff, K)
    den = _schur.tau_schur_poly(p, u, b, cutoff, K)
    if z is not None:
        num = num.shift_times(ctx.one() / z, -1)
    dval = den.evaluate(times.values)
    if ctx.is_zero(dval):
        raise ZeroDivisionError("denominator tau vanishes at these times")
    return num.evaluate(times.values) / dval


# -- moment-determinant symmetrization ------------------------------------------


def andreev_residual(ctx, points, weights, fvals, gvals):
    """Difference between det of the moment matrix S_ij = sum_k mu_k f_i(z_k)
    g_j(z_k) and its exchange-symmetrized multiple sum

        (1/M!) sum_{k in [n]^M} (prod_a mu_{k_a}) det f_i(z_{k_j}) det g_i(z_{k_j}),

    which vanishes identically.  fvals and gvals are value tables indexed
    [function][point]."""
    n = len(list(points))
    M = len(fvals)
    if len(gvals) != M:
        raise ValueError("need equally many f and g rows")
    if any(len(row) != n for row in fvals) or any(len(row) != n for row in gvals):
        raise ValueError("value tables must cover every point")
    if len(weights) != n:
        raise ValueError("need one weight per point")
    smat = []
    for i in range(M):
        row = []
        for j in range(M):
            acc = ctx.zero()
            for k in range(n):
                acc = acc + weights[k] * fvals[i][k] * gvals[j][k]
            row.append(acc)
        smat.append(row)
    lhs = det(smat, ctx)
    acc = ctx.zero()
    for ks in product(range(n), repeat=M):
        mu = ctx.one()
        for k in ks:
            mu = mu * weights[k]
        fminor = [[fvals[i][k] for k in ks] for i in range(M)]
        gminor = [[gvals[i][k] for k in ks] for i in range(M)]
        acc = acc + mu * det(fminor, ctx) * det(gminor, ctx)
    fact = 1
    for j in range(2, M + 1):
        fact *= j
    rhs = acc * ctx.embed(Fraction(1, fact))
    return lhs - rhs
