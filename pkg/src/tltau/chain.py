"""Open-chain transfer-matrix eigenvalue and the two determinant families.

The building block is w(x) = x - 1/x.  The boundary data (spin s, boundary
parameter Q) fixes the bulk parameter q through

    sum_{k=-s}^{s} Q^{2k} = -(q + 1/q),

and the eigenvalue Lambda(v, u) of the transfer matrix on 2N sites with M
Bethe roots u_1..u_M is

    Lambda = -1/w(q v^2) * [ w(q^2 v^2) w(q v)^{2N} prod_j a_j(v)
                             + w(v^2) w(v)^{2N} prod_j b_j(v) ],
    a_j = w(v/(q u_j)) w(v u_j) / (w(v/u_j) w(q v u_j)),
    b_j = w(q v/u_j) w(q^2 v u_j) / (w(v/u_j) w(q v u_j)).

Family 1 is F^(1)_i(v) = d Lambda / d u_i, family 2 is
F^(2)_i(v) = 1/(w(v/u_i) w(q v u_i)).  The inner product of an on-shell state
with a free one factorizes as a prefactor G(u, v) times the determinant ratio
det F^(1)_i(v_j) / det F^(2)_i(v_j), and that ratio is the quotient of the
two tau functions built downstream.

Lambda is an even function of v, so everything evaluated at squared points
y = v^2 is rational in y; the *_y evaluators below use the exact pairing
w(v a) w(v b) = y ab - a/b - b/a + 1/(y ab) and never touch square roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath as mp

from .algebra import FieldContext, LaurentSeries, QuadraticNumber, det, squarefree_kernel


class PoleError(ZeroDivisionError):
    """A factor in the w-algebra vanished where it must not.

    The ``factor`` attribute names the vanishing factor.
    """

    def __init__(self, factor, detail=""):
        self.factor = factor
        msg = "vanishing factor %s" % factor
        if detail:
            msg += " (%s)" % detail
        super().__init__(msg)


def w_eval(x):
    """w(x) = x - 1/x.  Errors on x = 0."""
    if isinstance(x, int):
        x = Fraction(x)
    if not x:
        raise PoleError("w(0)", "argument is zero")
    return x - 1 / x


def boundary_sum(Q, spin_twice):
    """sum of Q^{2k} for k = -s..s, with 2s = spin_twice."""
    acc = None
    for t in range(-spin_twice, spin_twice + 1, 2):
        term = Q**t
        acc = term if acc is None else acc + term
    return acc


class ChainParams:
    """Chain sizes and couplings: 2N sites, M Bethe roots, spin s = spin_twice/2.

    q and Q are scalars of the held FieldContext and must satisfy the
    boundary constraint; q = 0, +1, -1 are rejected since w(q) and w(1/q)
    appear in denominators throughout.  M = 0 is allowed (free eigenvalue
    with no Bethe roots); the inner-product operations demand M >= 1.
    """

    __slots__ = ("N", "M", "spin_twice", "q", "Q", "ctx")

    def __init__(self, N, M, spin_twice, q, Q, ctx):
        if N < 1:
            raise ValueError("N must be at least 1")
        if M < 0:
            raise ValueError("M must be nonnegative")
        if spin_twice < 1:
            raise ValueError("spin_twice must be at least 1")
        self.N = int(N)
        self.M = int(M)
        self.spin_twice = int(spin_twice)
        self.ctx = ctx
        self.q = q
        self.Q = Q
        if ctx.is_zero(q):
            raise ValueError("q must be nonzero")
        if ctx.is_zero(q * q - ctx.one()):
            raise ValueError("q must not be +1 or -1")
        if ctx.is_zero(Q):
            raise ValueError("Q must be nonzero")
        lhs = boundary_sum(Q, self.spin_twice)
        rhs = -(q + ctx.one() / q)
        if not ctx.residual_ok(lhs - rhs, scale=rhs):
            raise ValueError("boundary constraint violated: sum Q^{2k} != -(q + 1/q)")

    @classmethod
    def from_boundary(cls, N, M, spin_twice, Q, mode="rational", prec=192, tol="1e-20"):
        """Derive q from the boundary constraint and build the matching context.

        Q is given as a rational number.  With c = sum Q^{2k}, q solves
        q^2 + c q + 1 = 0 and the root q = (-c + sqrt(c^2 - 4))/2 is taken.
        Rational mode requires c^2 - 4 to be a rational square; quadratic
        mode adjoins sqrt of its squarefree kernel; float mode just evaluates
        (complex if |c| < 2).
        """
        Qf = Fraction(Q)
        if Qf == 0:
            raise ValueError("Q must be nonzero")
        c = boundary_sum(Qf, int(spin_twice))
        e = c * c - 4
        if mode == "rational":
            if e < 0:
                raise ValueError("c^2 - 4 = %s is negative; use quadratic or float mode" % e)
            sn, sd = isqrt(e.numerator), isqrt(e.denominator)
            if sn * sn != e.numerator or sd * sd != e.denominator:
                raise ValueError(
                    "c^2 - 4 = %s is not a rational square; use quadratic or float mode" % e
                )
            ctx = FieldContext("rational")
            q = (-c + Fraction(sn, sd)) / 2
        elif mode == "quadratic":
            m = e.numerator * e.denominator
            if m == 0:
                raise ValueError("c^2 - 4 vanishes; q would be degenerate")
            sgn = -1 if m < 0 else 1
            s, d0 = squarefree_kernel(abs(m))
            d = sgn * d0
            if d == 1:
                raise ValueError("c^2 - 4 is a rational square; use rational mode")
            ctx = FieldContext("quadratic", d=d)
            q = QuadraticNumber(-c / 2, Fraction(s, 2 * e.denominator), d)
        elif mode == "float":
            ctx = FieldContext("float", prec=prec, tol=tol)
            cf = ctx.embed(c)
            q = (-cf + mp.sqrt(cf * cf - 4)) / 2
        else:
            raise ValueError("unknown mode %r" % (mode,))
        return cls(N, M, spin_twice, q, ctx.embed(Qf), ctx)


class ParameterVector:
    """Tuple of spectral parameters with a role tag ('bethe' or 'free').

    The constructor enforces what it can see without q: entries nonzero and
    pairwise distinct.  The q-dependent excluded sets are checked by
    validate_uv at the operations that depend on them.
    """

    __slots__ = ("values", "role")

    def __init__(self, values, role):
        if role not in ("bethe", "free"):
            raise ValueError("role must be 'bethe' or 'free'")
        vals = tuple(values)
        for x in vals:
            if not x:
                raise ValueError("parameter entries must be nonzero")
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if vals[i] == vals[j]:
                    raise ValueError("parameter entries must be pairwise distinct")
        self.values = vals
        self.role = role

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "ParameterVector(%r, %r)" % (self.values, self.role)


def _vals(u):
    if isinstance(u, ParameterVector):
        return u.values
    return tuple(u)


def validate_uv(p, u=None, v=None):
    """Check the q-dependent admissibility sets, naming the factor that fails.

    For i != j: u_i u_j must avoid {+-1, +-1/q}; every v_i must avoid
    {+-u_j, +-1/(q u_j)} and the eigenvalue poles w(q v^2) = 0.
    """
    one = p.ctx.one()
    q = p.q
    uu = _vals(u) if u is not None else ()
    vv = _vals(v) if v is not None else ()
    for i in range(len(uu)):
        for j in range(i + 1, len(uu)):
            prod = uu[i] * uu[j]
            if prod == one or prod == -one:
                raise PoleError("w(u_i*u_j)", "i=%d j=%d" % (i, j))
            if prod * q == one or prod * q == -one:
                raise PoleError("w(q*u_i*u_j)", "i=%d j=%d" % (i, j))
    for i, x in enumerate(vv):
        xq2 = x * x * q
        if xq2 == one or xq2 == -one:
            raise PoleError("w(q*v^2)", "i=%d" % i)
        for j, y in enumerate(uu):
            if x == y or x == -y:
                raise PoleError("w(v_i/u_j)", "i=%d j=%d" % (i, j))
            if x * y * q == one or x * y * q == -one:
                raise PoleError("w(q*v_i*u_j)", "i=%d j=%d" % (i, j))


def _ab_factors(p, v, uj):
    """Numerators and denominators of the j-th dressing factors at point v."""
    q = p.q
    n1 = w_eval(v / (q * uj))
    n2 = w_eval(v * uj)
    m1 = w_eval(v * q / uj)
    m2 = w_eval(v * q * q * uj)
    d1 = v / uj - uj / v
    if not d1:
        raise PoleError("w(v/u_j)")
    d2 = v * q * uj
    d2 = d2 - 1 / d2 if d2 else d2
    if not d2:
        raise PoleError("w(q*v*u_j)")
    return n1, n2, m1, m2, d1, d2


def lambda_eval(p, v, u):
    """Transfer-matrix eigenvalue Lambda(v, u); u may be empty.

    Poles w(q v^2), w(v/u_j), w(q v u_j) raise PoleError by name.
    """
    ctx = p.ctx
    q = p.q
    uu = _vals(u)
    if not v:
        raise PoleError("w(v)", "v is zero")
    wqv2 = w_eval(v * v * q)
    if ctx.is_zero(wqv2):
        raise PoleError("w(q*v^2)")
    termA = w_eval(v * v * q * q) * w_eval(v * q) ** (2 * p.N)
    wv2 = v * v - 1 / (v * v)
    termB = wv2 * w_eval(v) ** (2 * p.N) if not ctx.is_zero(wv2) else ctx.zero()
    prodA = ctx.one()
    prodB = ctx.one()
    for uj in uu:
        n1, n2, m1, m2, d1, d2 = _ab_factors(p, v, uj)
        den = d1 * d2
        prodA = prodA * n1 * n2 / den
        prodB = prodB * m1 * m2 / den
    if ctx.is_zero(termB):
        total = termA * prodA
    else:
        total = termA * prodA + termB * prodB
    return -total / wqv2


def lambda_du(p, i, v, u):
    """d Lambda / d u_i at (v, u), by the analytic product rule.

    Only the i-th dressing factor depends on u_i, so the derivative is the
    same two-term sum with that factor differentiated in place.
    """
    ctx = p.ctx
    q = p.q
    uu = _vals(u)
    if not 0 <= i < len(uu):
        raise ValueError("index i=%d outside the %d Bethe roots" % (i, len(uu)))
    if not v:
        raise PoleError("w(v)", "v is zero")
    wqv2 = w_eval(v * v * q)
    if ctx.is_zero(wqv2):
        raise PoleError("w(q*v^2)")
    A = w_eval(v * v * q * q) * w_eval(v * q) ** (2 * p.N)
    wv2 = v * v - 1 / (v * v)
    B = wv2 * w_eval(v) ** (2 * p.N)
    prodA = ctx.one()
    prodB = ctx.one()
    for j, uj in enumerate(uu):
        if j == i:
            continue
        n1, n2, m1, m2, d1, d2 = _ab_factors(p, v, uj)
        den = d1 * d2
        prodA = prodA * n1 * n2 / den
        prodB = prodB * m1 * m2 / den
    ui = uu[i]
    n1, n2, m1, m2, d1, d2 = _ab_factors(p, v, ui)
    u2 = ui * ui
    dn1 = -v / (q * u2) - q / v
    dn2 = v + 1 / (v * u2)
    dm1 = -v * q / u2 - 1 / (v * q)
    dm2 = v * q * q + 1 / (v * q * q * u2)
    dd1 = -v / u2 - 1 / v
    dd2 = v * q + 1 / (v * q * u2)
    den = d1 * d2
    dden = dd1 * d2 + d1 * dd2
    da = (dn1 * n2 + n1 * dn2) / den - n1 * n2 * dden / (den * den)
    db = (dm1 * m2 + m1 * dm2) / den - m1 * m2 * dden / (den * den)
    return -(A * prodA * da + B * prodB * db) / wqv2


def f2_eval(p, i, v, u):
    """Family-2 value 1/(w(v/u_i) w(q v u_i))."""
    uu = _vals(u)
    if not 0 <= i < len(uu):
        raise ValueError("index i=%d outside the %d Bethe roots" % (i, len(uu)))
    ui = uu[i]
    if not v:
        raise PoleError("w(v)", "v is zero")
    d1 = v / ui - ui / v
    if not d1:
        raise PoleError("w(v/u_j)")
    d2v = v * p.q * ui
    d2 = d2v - 1 / d2v
    if not d2:
        raise PoleError("w(q*v*u_j)")
    return p.ctx.one() / (d1 * d2)


def f_eval(p, family, i, v, u):
    """Pointwise value of F^(family)_i at v."""
    if family == 1:
        return lambda_du(p, i, v, u)
    if family == 2:
        return f2_eval(p, i, v, u)
    raise ValueError("family must be 1 or 2")


def g_prefactor(p, u, v):
    """Scalar prefactor G(u, v) of the factorized inner product.

    G = 2^{-M} Q^{-2Ms} prod_j [ u_j w(u_j)^{2N} w(u_j^2) /
        (w(u_j^2) w(q^2 v_j^2)) ] * prod_{i>j} w(q^2 u_i u_j) / w(u_i u_j).

    The w(u_j^2)/w(u_j^2) pair is kept verbatim rather than cancelled, so
    u_j = +-1 is an error, as is any other vanishing listed factor.
    """
    ctx = p.ctx
    q = p.q
    uu = _vals(u)
    vv = _vals(v)
    M = len(uu)
    if M < 1 or len(vv) != M:
        raise ValueError("g_prefactor needs len(u) = len(v) >= 1")
    out = ctx.embed(Fraction(1, 2**M)) * p.Q ** (-M * p.spin_twice)
    for j in range(M):
        wu = w_eval(uu[j])
        if ctx.is_zero(wu):
            raise PoleError("w(u_j)", "j=%d" % j)
        wu2 = w_eval(uu[j] * uu[j])
        if ctx.is_zero(wu2):
            raise PoleError("w(u_j^2)", "j=%d" % j)
        wv2 = w_eval(vv[j] * vv[j] * q * q)
        if ctx.is_zero(wv2):
            raise PoleError("w(q^2*v_j^2)", "j=%d" % j)
        out = out * uu[j] * wu ** (2 * p.N) * wu2 / (wu2 * wv2)
    for i in range(M):
        for j in range(i):
            num = w_eval(uu[i] * uu[j] * q * q)
            if ctx.is_zero(num):
                raise PoleError("w(q^2*u_i*u_j)", "i=%d j=%d" % (i, j))
            den = w_eval(uu[i] * uu[j])
            if ctx.is_zero(den):
                raise PoleError("w(u_i*u_j)", "i=%d j=%d" % (i, j))
            out = out * num / den
    return out


def family_matrix(p, u, family, points):
    """Matrix F^(family)_i(x_j) with rows indexed by the Bethe roots."""
    uu = _vals(u)
    pts = _vals(points)
    return [[f_eval(p, family, i, x, uu) for x in pts] for i in range(len(uu))]


def kernel(p, u, v):
    """Determinant-ratio kernel det F^(1)_i(v_j) / det F^(2)_i(v_j)."""
    uu = _vals(u)
    vv = _vals(v)
    if len(uu) < 1 or len(vv) != len(uu):
        raise ValueError("kernel needs len(u) = len(v) >= 1")
    validate_uv(p, uu, vv)
    num = det(family_matrix(p, uu, 1, vv), p.ctx)
    den = det(family_matrix(p, uu, 2, vv), p.ctx)
    if p.ctx.is_zero(den):
        raise PoleError("det(F2)", "singular denominator family")
    return num / den


def slavnov(p, u, v):
    """Inner product of the on-shell state at u with the free state at v:
    g_prefactor(u, v) times the determinant-ratio kernel."""
    return g_prefactor(p, u, v) * kernel(p, u, v)


# -- Laurent series about v = 0 ------------------------------------------


def _w_series(ctx, c, trunc):
    return LaurentSeries(ctx, {1: c, -1: -(ctx.one() / c)}, trunc)


def _w2_series(ctx, c, trunc):
    return LaurentSeries(ctx, {2: c, -2: -(ctx.one() / c)}, trunc)


def _series_parts(p, u, trunc):
    ctx = p.ctx
    q = p.q
    pref = -(_w2_series(ctx, q, trunc).invert())
    A = _w2_series(ctx, q * q, trunc) * (_w_series(ctx, q, trunc) ** (2 * p.N))
    B = _w2_series(ctx, ctx.one(), trunc) * (_w_series(ctx, ctx.one(), trunc) ** (2 * p.N))
    parts = []
    for uj in u:
        n1 = _w_series(ctx, ctx.one() / (q * uj), trunc)
        n2 = _w_series(ctx, uj, trunc)
        m1 = _w_series(ctx, q / uj, trunc)
        m2 = _w_series(ctx, q * q * uj, trunc)
        d1 = _w_series(ctx, ctx.one() / uj, trunc)
        d2 = _w_series(ctx, q * uj, trunc)
        i1 = d1.invert()
        i2 = d2.invert()
        parts.append((n1, n2, m1, m2, d1, d2, i1, i2))
    return pref, A, B, parts


def lambda_series(p, u, order=None):
    """Laurent expansion of Lambda about v = 0, known through z**order.

    The series is even and starts at z**(-2N) with coefficient
    -(1 + q^{2(N-2M+1)}) / q^{2(N-M)+1}, independent of u.
    """
    uu = _vals(u)
    if order is None:
        order = 2 * p.N + 10
    pad = 2 * p.N + 2 * len(uu) + 8
    while True:
        pref, A, B, parts = _series_parts(p, uu, order + pad)
        prodA = A
        prodB = B
        for (n1, n2, m1, m2, _d1, _d2, i1, i2) in parts:
            prodA = prodA * n1 * n2 * i1 * i2
            prodB = prodB * m1 * m2 * i1 * i2
        out = pref * (prodA + prodB)
        if out.trunc >= order:
            return out.truncate(order)
        pad *= 2


def f_series(p, u, family, i, order):
    """Laurent expansion of F^(family)_i about v = 0 through z**order.

    Family 1 starts at z**(2-2N) (the u-independent leading term of Lambda
    is annihilated by d/du_i); family 2 starts at z**2 with leading
    coefficient q.  Both series are even.
    """
    uu = _vals(u)
    if not 0 <= i < len(uu):
        raise ValueError("index i=%d outside the %d Bethe roots" % (i, len(uu)))
    ctx = p.ctx
    q = p.q
    start = (2 - 2 * p.N) if family == 1 else 2
    if family not in (1, 2):
        raise ValueError("family must be 1 or 2")
    if order < start:
        raise ValueError("order %d is below the family's starting exponent %d" % (order, start))
    if family == 2:
        pad = 8
        while True:
            trunc = order + pad
            d1 = _w_series(ctx, ctx.one() / uu[i], trunc)
            d2 = _w_series(ctx, q * uu[i], trunc)
            out = (d1 * d2).invert()
            if out.trunc >= order:
                return out.truncate(order)
            pad *= 2
    pad = 2 * p.N + 2 * len(uu) + 10
    while True:
        trunc = order + pad
        pref, A, B, parts = _series_parts(p, uu, trunc)
        prodA = A
        prodB = B
        for j, (n1, n2, m1, m2, _d1, _d2, i1, i2) in enumerate(parts):
            if j == i:
                continue
            prodA = prodA * n1 * n2 * i1 * i2
            prodB = prodB * m1 * m2 * i1 * i2
        n1, n2, m1, m2, d1, d2, i1, i2 = parts[i]
        ui = uu[i]
        u2 = ui * ui
        dn1 = LaurentSeries(ctx, {1: -(ctx.one() / (q * u2)), -1: -q}, trunc)
        dn2 = LaurentSeries(ctx, {1: ctx.one(), -1: ctx.one() / u2}, trunc)
        dm1 = LaurentSeries(ctx, {1: -(q / u2), -1: -(ctx.one() / q)}, trunc)
        dm2 = LaurentSeries(ctx, {1: q * q, -1: ctx.one() / (q * q * u2)}, trunc)
        dd1 = LaurentSeries(ctx, {1: -(ctx.one() / u2), -1: -ctx.one()}, trunc)
        dd2 = LaurentSeries(ctx, {1: q, -1: ctx.one() / (q * u2)}, trunc)
        ii = i1 * i2
        dden = dd1 * d2 + d1 * dd2
        da = (dn1 * n2 + n1 * dn2) * ii - n1 * n2 * dden * ii * ii
        db = (dm1 * m2 + m1 * dm2) * ii - m1 * m2 * dden * ii * ii
        out = pref * (prodA * da + prodB * db)
        if out.trunc >= order:
            return out.truncate(order)
        pad *= 2


# -- evaluation at squared points y = v^2 ---------------------------------


def _pair_w(y, a, b):
    """w(v a) w(v b) as a rational function of y = v^2."""
    ab = a * b
    return y * ab - a / b - b / a + 1 / (y * ab)


def _y_factors(p, y, uj):
    q = p.q
    u2 = uj * uj
    sig = q * u2 + 1 / (q * u2)
    n1 = y / q + q / y - sig
    n2 = y * q**3 + 1 / (y * q**3) - sig
    d = y * q + 1 / (y * q) - sig
    if not d:
        raise PoleError("w(v/u_j)*w(q*v*u_j)", "y-form denominator")
    return n1, n2, d


def _lambda_y_shell(p, y):
    ctx = p.ctx
    q = p.q
    if not y:
        raise PoleError("w(v)", "y is zero")
    wqy = y * q - 1 / (y * q)
    if ctx.is_zero(wqy):
        raise PoleError("w(q*v^2)")
    A = (y * q * q - 1 / (y * q * q)) * _pair_w(y, q, q) ** p.N
    B = (y - 1 / y) * _pair_w(y, ctx.one(), ctx.one()) ** p.N
    return wqy, A, B


def lambda_y(p, y, u):
    """Lambda evaluated at v = sqrt(y), rational in y by evenness."""
    wqy, A, B = _lambda_y_shell(p, y)
    prodA = p.ctx.one()
    prodB = p.ctx.one()
    for uj in _vals(u):
        n1, n2, d = _y_factors(p, y, uj)
        prodA = prodA * n1 / d
        prodB = prodB * n2 / d
    return -(A * prodA + B * prodB) / wqy


def lambda_du_y(p, i, y, u):
    """d Lambda / d u_i at v = sqrt(y), rational in y.

    All three pairings for root j depend on u_j only through
    sigma_j = q u_j^2 + 1/(q u_j^2), so each derivative is the common
    d sigma/d u times a quotient-rule shell.
    """
    ctx = p.ctx
    q = p.q
    uu = _vals(u)
    if not 0 <= i < len(uu):
        raise ValueError("index i=%d outside the %d Bethe roots" % (i, len(uu)))
    wqy, A, B = _lambda_y_shell(p, y)
    prodA = ctx.one()
    prodB = ctx.one()
    for j, uj in enumerate(uu):
        if j == i:
            continue
        n1, n2, d = _y_factors(p, y, uj)
        prodA = prodA * n1 / d
        prodB = prodB * n2 / d
    ui = uu[i]
    n1, n2, d = _y_factors(p, y, ui)
    u2 = ui * ui
    dsig = 2 * q * ui - 2 / (q * u2 * ui)
    da = dsig * (n1 - d) / (d * d)
    db = dsig * (n2 - d) / (d * d)
    return -(A * prodA * da + B * prodB * db) / wqy


def f2_eval_y(p, i, y, u):
    """Family-2 value at v = sqrt(y): 1/(w(v/u_i) w(q v u_i)) in y-form."""
    uu = _vals(u)
    if not 0 <= i < len(uu):
        raise ValueError("index i=%d outside the %d Bethe roots" % (i, len(uu)))
    if not y:
        raise PoleError("w(v)", "y is zero")
    _n1, _n2, d = _y_factors(p, y, uu[i])
    return p.ctx.one() / d


def f_eval_y(p, family, i, y, u):
    if family == 1:
        return lambda_du_y(p, i, y, u)
    if family == 2:
        return f2_eval_y(p, i, y, u)
    raise ValueError("family must be 1 or 2")


def family_matrix_y(p, u, family, ypoints):
    uu = _vals(u)
    return [[f_eval_y(p, family, i, y, uu) for y in ypoints] for i in range(len(uu))]


def kernel_y(p, u, ypoints):
    """Determinant-ratio kernel evaluated at squared points y_j = v_j^2."""
    uu = _vals(u)
    ys = list(ypoints)
    if len(uu) < 1 or len(ys) != len(uu):
        raise ValueError("kernel_y needs len(u) = len(y) >= 1")
    num = det(family_matrix_y(p, uu, 1, ys), p.ctx)
    den = det(family_matrix_y(p, uu, 2, ys), p.ctx)
    if p.ctx.is_zero(den):
        raise PoleError("det(F2)", "singular denominator family")
    return num / den


def pole_radius_y(p, u):
    """Distance from y = 0 to the nearest pole of the y-form families:
    min over |u_j^2|, |1/(q u_j)^2| and |1/q|.  Float magnitude, used only
    to place sample points safely inside convergence disks."""
    ctx = p.ctx
    cands = [ctx.magnitude(ctx.one() / p.q)]
    for uj in _vals(u):
        cands.append(ctx.magnitude(uj * uj))
        inv = ctx.one() / (p.q * uj)
        cands.append(ctx.magnitude(inv * inv))
    return min(cands)
