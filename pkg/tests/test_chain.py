"""Eigenvalue, generating families, prefactor, and their Laurent data.

The main oracle is an independent sympy expression tree for Lambda, its
u-derivatives, the second family, and the prefactor, evaluated exactly at
random rational points.  Series data is cross-checked against exact rational
finite differences and against direct evaluation inside the convergence
radius.
"""

import random
from fractions import Fraction as F

import pytest
import sympy

from tltau.algebra import FieldContext, QuadraticNumber
from tltau.chain import (
    ChainParams,
    ParameterVector,
    PoleError,
    boundary_sum,
    f2_eval,
    f2_eval_y,
    f_eval,
    f_eval_y,
    f_series,
    family_matrix,
    family_matrix_y,
    g_prefactor,
    kernel,
    kernel_y,
    lambda_du,
    lambda_du_y,
    lambda_eval,
    lambda_series,
    lambda_y,
    pole_radius_y,
    slavnov,
    validate_uv,
    w_eval,
)

RAT = FieldContext("rational")


def params(N, M, q=F(2), Q=F(-2)):
    return ChainParams(N, M, 1, q, Q, RAT)


def roots(*vals):
    return ParameterVector([F(x) if not isinstance(x, F) else x for x in vals], "bethe")


# -- sympy oracle --------------------------------------------------------------


def _sw(x):
    return x - 1 / x


def sym_lambda(N, q, v, us):
    a = sympy.Integer(1)
    b = sympy.Integer(1)
    for u in us:
        den = _sw(v / u) * _sw(q * v * u)
        a *= _sw(v / (q * u)) * _sw(v * u) / den
        b *= _sw(q * v / u) * _sw(q * q * v * u) / den
    total = _sw(v ** 2 * q ** 2) * _sw(v * q) ** (2 * N) * a + _sw(v ** 2) * _sw(v) ** (2 * N) * b
    return -total / _sw(v ** 2 * q)


def sym_g(N, M, spin_twice, q, Q, us, vs):
    g = sympy.Rational(1, 2) ** M * Q ** (-M * spin_twice)
    for j in range(M):
        u, v = us[j], vs[j]
        g *= u * _sw(u) ** (2 * N) * _sw(u * u) / (_sw(u * u) * _sw(q * q * v * v))
    for i in range(M):
        for j in range(i):
            g *= _sw(q * q * us[i] * us[j]) / _sw(us[i] * us[j])
    return g


def _to_sympy(x):
    return sympy.Rational(x.numerator, x.denominator)


class TestEigenvalueOracle:
    def test_lambda_matches_sympy(self):
        rng = random.Random(3)
        vq, vv = sympy.symbols("q v")
        vu = sympy.symbols("u0:3")
        for N, M in ((1, 1), (2, 2), (3, 3)):
            expr = sym_lambda(N, vq, vv, vu[:M])
            p = params(N, M)
            for _ in range(3):
                uvals = [F(rng.randint(2, 9), rng.randint(1, 3)) for _ in range(M)]
                while len(set(uvals)) != M:
                    uvals = [F(rng.randint(2, 9), rng.randint(1, 3)) for _ in range(M)]
                v = F(rng.randint(10, 20), 7)
                subs = {vq: 2, vv: _to_sympy(v)}
                subs.update({vu[i]: _to_sympy(uvals[i]) for i in range(M)})
                want = expr.subs(subs)
                got = lambda_eval(p, v, roots(*uvals))
                assert _to_sympy(got) == want

    def test_lambda_du_matches_sympy_derivative(self):
        vq, vv = sympy.symbols("q v")
        vu = sympy.symbols("u0:2")
        N, M = 2, 2
        expr = sym_lambda(N, vq, vv, vu)
        p = params(N, M)
        uvals = [F(2), F(3)]
        v = F(5, 2)
        for i in range(M):
            dexpr = sympy.diff(expr, vu[i])
            subs = {vq: 2, vv: _to_sympy(v), vu[0]: 2, vu[1]: 3}
            want = dexpr.subs(subs)
            got = lambda_du(p, i, v, roots(*uvals))
            assert _to_sympy(got) == want

    def test_slavnov_matches_monolithic_sympy(self):
        # the fully assembled inner product against sympy, entries substituted
        # to rationals before the determinants are taken
        vq, vQ = sympy.symbols("q Q")
        vu = sympy.symbols("u0:2")
        vv = sympy.symbols("v0:2")
        N, M = 2, 2
        subs = {vq: 2, vQ: -2, vu[0]: 2, vu[1]: 3,
                vv[0]: sympy.Rational(5, 1), vv[1]: sympy.Rational(7, 2)}
        f1 = sympy.Matrix(
            [[sympy.diff(sym_lambda(N, vq, x, vu), vu[i]).subs(subs) for x in vv]
             for i in range(M)]
        )
        f2 = sympy.Matrix(
            [[(1 / (_sw(x / vu[i]) * _sw(vq * x * vu[i]))).subs(subs) for x in vv]
             for i in range(M)]
        )
        want = sym_g(N, M, 1, vq, vQ, vu, vv).subs(subs) * f1.det() / f2.det()
        p = params(2, 2)
        got = slavnov(p, roots(2, 3), ParameterVector([F(5), F(7, 2)], "free"))
        assert _to_sympy(got) == want

    def test_lambda_pinned_value(self):
        # N=1, no roots: Lambda(1) = -w(q^2) w(q)^2 / w(q) at q=2
        p = params(1, 0)
        assert lambda_eval(p, F(1), ()) == F(-45, 8)

    def test_evenness(self):
        p = params(2, 2)
        u = roots(2, 3)
        rng = random.Random(8)
        for _ in range(12):
            v = F(rng.randint(1, 40), rng.randint(1, 23))
            try:
                validate_uv(p, u, [v])
            except PoleError:
                continue
            assert lambda_eval(p, v, u) == lambda_eval(p, -v, u)


class TestBoundary:
    def test_q_from_rational_discriminants(self):
        p = ChainParams.from_boundary(2, 1, 1, F(-2))
        assert p.q == F(2)
        p = ChainParams.from_boundary(2, 1, 1, F(-3, 2))
        assert p.q == F(3, 2)

    def test_boundary_sum(self):
        assert boundary_sum(F(-2), 1) == F(-5, 2)
        assert boundary_sum(F(2), 2) == F(21, 4)

    def test_quadratic_branch(self):
        p = ChainParams.from_boundary(2, 1, 2, F(2), mode="quadratic")
        assert isinstance(p.q, QuadraticNumber)
        assert p.q.d == 377
        # boundary constraint holds exactly in Q(sqrt(377))
        lhs = boundary_sum(p.ctx.embed(2), 2)
        assert lhs == -(p.q + p.ctx.one() / p.q)
        # the + branch of the square root
        assert p.q.b > 0

    def test_irrational_rational_mode_rejected(self):
        with pytest.raises(ValueError):
            ChainParams.from_boundary(2, 1, 2, F(2), mode="rational")

    def test_float_branch(self):
        p = ChainParams.from_boundary(2, 1, 1, F(-2), mode="float")
        assert p.ctx.residual_ok(p.q - p.ctx.embed(2), 1)

    def test_constructor_rejects_bad_q(self):
        with pytest.raises(ValueError):
            ChainParams(2, 1, 1, F(1), F(-2), RAT)
        with pytest.raises(ValueError):
            ChainParams(2, 1, 1, F(2), F(-3), RAT)


class TestPoles:
    def test_w_zero(self):
        with pytest.raises(PoleError):
            w_eval(F(0))
        assert w_eval(F(2)) == F(3, 2)
        assert w_eval(F(1)) == 0

    def test_named_exclusions(self):
        p = params(2, 2)
        with pytest.raises(PoleError) as e:
            validate_uv(p, roots(2, F(1, 2)), [])
        assert e.value.factor == "w(u_i*u_j)"
        with pytest.raises(PoleError) as e:
            validate_uv(p, roots(2, F(1, 4)), [])
        assert e.value.factor == "w(q*u_i*u_j)"
        with pytest.raises(PoleError) as e:
            validate_uv(p, roots(2, 3), [F(2), F(5)])
        assert e.value.factor == "w(v_i/u_j)"
        with pytest.raises(PoleError) as e:
            validate_uv(p, roots(2, 3), [F(1, 4), F(5)])
        assert e.value.factor == "w(q*v_i*u_j)"

    def test_eigenvalue_pole_in_quadratic_field(self):
        ctx = FieldContext("quadratic", d=2)
        p = ChainParams(2, 1, 1, ctx.embed(2), ctx.embed(-2), ctx)
        v = QuadraticNumber(0, F(1, 2), 2)  # v^2 = 1/2, so w(q v^2) = w(1) = 0
        with pytest.raises(PoleError) as e:
            lambda_eval(p, v, [ctx.embed(3)])
        assert e.value.factor == "w(q*v^2)"

    def test_prefactor_rejects_unit_root(self):
        p = params(2, 1)
        with pytest.raises(PoleError) as e:
            g_prefactor(p, roots(1), ParameterVector([F(3)], "free"))
        assert e.value.factor == "w(u_j)"
        with pytest.raises(PoleError) as e:
            g_prefactor(p, roots(-1), ParameterVector([F(3)], "free"))
        assert e.value.factor == "w(u_j)"

    def test_parameter_vector(self):
        pv = ParameterVector([F(1)], "bethe")
        assert len(pv) == 1
        with pytest.raises(ValueError):
            ParameterVector([F(2), F(2)], "free")
        with pytest.raises(ValueError):
            ParameterVector([F(0)], "free")
        with pytest.raises(ValueError):
            ParameterVector([F(1)], "other")


class TestFamilies:
    def test_f2_pinned(self):
        p = params(2, 1)
        # 1 / (w(3/2) w(12)) = 72 / 715
        assert f2_eval(p, 0, F(3), roots(2)) == F(72, 715)

    def test_f2_y_agrees_with_squared_argument(self):
        p = params(2, 1)
        assert f2_eval_y(p, 0, F(9), roots(2)) == f2_eval(p, 0, F(3), roots(2))

    def test_families_dispatch(self):
        p = params(2, 2)
        u = roots(2, 3)
        v = F(5)
        assert f_eval(p, 1, 0, v, u) == lambda_du(p, 0, v, u)
        assert f_eval(p, 2, 1, v, u) == f2_eval(p, 1, v, u)

    def test_y_route_matches_v_route(self):
        p = params(2, 2)
        u = roots(2, 3)
        for v in (F(5), F(7, 2), F(9, 4)):
            y = v * v
            assert lambda_y(p, y, u) == lambda_eval(p, v, u)
            for i in range(2):
                assert lambda_du_y(p, i, y, u) == lambda_du(p, i, v, u)
                assert f_eval_y(p, 1, i, y, u) == f_eval(p, 1, i, v, u)
                assert f_eval_y(p, 2, i, y, u) == f_eval(p, 2, i, v, u)

    def test_matrices_consistent(self):
        p = params(2, 2)
        u = roots(2, 3)
        vs = [F(5), F(7, 2)]
        ys = [x * x for x in vs]
        assert family_matrix_y(p, u, 1, ys) == family_matrix(p, u, 1, vs)
        k1 = kernel(p, u, ParameterVector(vs, "free"))
        assert kernel_y(p, u, ys) == k1

    def test_quadratic_instance(self):
        # full kernel evaluation in Q(sqrt(377)) at spin 1
        p = ChainParams.from_boundary(2, 1, 2, F(2), mode="quadratic")
        ctx = p.ctx
        u = ParameterVector([ctx.embed(2)], "bethe")
        v = ParameterVector([ctx.embed(3)], "free")
        k = kernel(p, u, v)
        n = f_eval(p, 1, 0, ctx.embed(3), u)
        d = f_eval(p, 2, 0, ctx.embed(3), u)
        assert k == n / d
        # cross-check against an independent sympy tree with the exact radical,
        # compared at 60 digits (simplify on nested radicals is too slow)
        vq, vv, vu = sympy.symbols("q v u")
        expr = sympy.diff(sym_lambda(2, vq, vv, (vu,)), vu) * _sw(vv / vu) * _sw(vq * vv * vu)
        qs = (-sympy.Rational(21, 4) + sympy.sqrt(377) / 4) / 2
        want = expr.subs({vq: qs, vv: 3, vu: 2}).evalf(60)
        got = (
            sympy.Rational(k.a.numerator, k.a.denominator)
            + sympy.Rational(k.b.numerator, k.b.denominator) * sympy.sqrt(377)
        ).evalf(60)
        assert abs(got - want) < sympy.Float("1e-40") * max(1, abs(want))


class TestLaurentData:
    def test_leading_coefficient_formula_and_u_independence(self):
        rng = random.Random(4)
        for N, M in ((2, 1), (3, 2), (2, 2)):
            p = params(N, M)
            q = F(2)
            want = -(1 + q ** (2 * (N - 2 * M + 1))) / q ** (2 * (N - M) + 1)
            for _ in range(5):
                uvals = []
                while len(uvals) < M:
                    x = F(rng.randint(2, 19), rng.randint(1, 7))
                    if x not in uvals and all(
                        x * y not in (1, -1, F(1, 2), F(-1, 2)) for y in uvals
                    ):
                        uvals.append(x)
                s = lambda_series(p, roots(*uvals), order=2 - 2 * N)
                assert s.min_exp() == -2 * N
                assert s.coeff(-2 * N) == want

    def test_series_is_even_with_odd_terms_absent(self):
        p = params(2, 2)
        s = lambda_series(p, roots(2, 3), order=2)
        assert s.is_even()

    def test_series_value_convergence(self):
        p = params(2, 2)
        u = roots(2, 3)
        v = F(1, 40)
        exact = lambda_eval(p, v, u)
        errs = []
        for order in (8, 14, 20):
            s = lambda_series(p, u, order=order)
            errs.append(RAT.magnitude(s.evaluate(v) - exact))
        assert errs[2] < errs[1] < errs[0]

    def test_family2_series_pinned_coefficients(self):
        p = params(2, 1)
        s = f_series(p, roots(2), 2, 0, 6)
        assert s.min_exp() == 2
        assert s.coeff(2) == F(2)
        assert s.coeff(4) == F(65, 2)
        assert s.coeff(3) == 0

    def test_family1_series_matches_rational_finite_difference(self):
        # central difference of the eigenvalue series in exact arithmetic
        p = params(2, 1)
        u0 = F(2)
        h = F(1, 10**8)
        order = 4
        analytic = f_series(p, roots(u0), 1, 0, order)
        up = lambda_series(p, roots(u0 + h), order=order)
        dn = lambda_series(p, roots(u0 - h), order=order)
        for e in range(analytic.min_exp(), order + 1):
            fd = (up.coeff(e) - dn.coeff(e)) / (2 * h)
            diff = abs(fd - analytic.coeff(e))
            scale = max(abs(analytic.coeff(e)), F(1))
            assert diff / scale < F(1, 10**12)

    def test_family1_start_bound_and_special_cases(self):
        # generic start is 2 - 2N; specific (N, M) push leading terms to zero
        for (N, M, uvals, start) in (
            (2, 1, (F(2),), -2),
            (2, 2, (F(2), F(3)), 0),
            (3, 2, (F(2), F(3)), -4),
            (4, 3, (F(2), F(3), F(5)), -4),
        ):
            p = params(N, M)
            s = f_series(p, roots(*uvals), 1, 0, 2)
            assert s.min_exp() >= 2 - 2 * N
            assert s.min_exp() == start

    def test_series_matches_value_both_families(self):
        p = params(2, 2)
        u = roots(2, 3)
        v = F(1, 50)
        for fam in (1, 2):
            s = f_series(p, u, fam, 0, 26)
            exact = f_eval(p, fam, 0, v, u)
            err = RAT.magnitude(s.evaluate(v) - exact)
            assert err < 1e-18 * max(1.0, RAT.magnitude(exact))

    def test_pole_radius(self):
        p = params(2, 2)
        r = pole_radius_y(p, roots(2, 3))
        assert r == pytest.approx(1 / 36)


class TestPrefactor:
    def test_g_matches_sympy(self):
        vq, vQ = sympy.symbols("q Q")
        vu = sympy.symbols("u0:2")
        vv = sympy.symbols("v0:2")
        expr = sym_g(2, 2, 1, vq, vQ, vu, vv)
        p = params(2, 2)
        got = g_prefactor(p, roots(2, 3), ParameterVector([F(5), F(7, 2)], "free"))
        want = expr.subs({vq: 2, vQ: -2, vu[0]: 2, vu[1]: 3,
                          vv[0]: 5, vv[1]: sympy.Rational(7, 2)})
        assert _to_sympy(got) == want

    def test_slavnov_is_g_times_kernel(self):
        p = params(2, 2)
        u = roots(2, 3)
        v = ParameterVector([F(5), F(7, 2)], "free")
        assert slavnov(p, u, v) == g_prefactor(p, u, v) * kernel(p, u, v)
