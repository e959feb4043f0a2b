"""External products and the rank/exponent comparison for sums of germs."""

from fractions import Fraction as F

import pytest

from brieskorn.engine import ct_basis, problem_from_strings
from brieskorn.forms import DifferentialForm
from brieskorn.poly import Polynomial
from brieskorn.thom_sebastiani import (
    VanishingCertificate,
    combined_problem,
    eigenvalue_additivity_check,
    external_product,
    t_compatibility_check,
    ts_compare,
    vanish_g_k_dg,
)


def germ(text, vs, ws=None):
    return problem_from_strings(vs, ws or ["1"] * len(vs), text)


def unit_class(problem):
    return ct_basis(problem, reduced=True)[0].cls


X2 = germ("x^2", ["x"])
Y2 = germ("y^2", ["y"])
Y3 = germ("y^3", ["y"])
Z2 = germ("z^2", ["z"])
X3Y3 = germ("x^3+y^3", ["x", "y"])


class TestCombinedProblem:
    def test_weights_normalized(self):
        h = combined_problem(X2, Y3)
        assert h.degree == 1
        assert h.weights == (F(1, 2), F(1, 3))

    def test_variable_collision(self):
        with pytest.raises(ValueError):
            combined_problem(X2, germ("x^3", ["x"]))


class TestExternalProduct:
    def test_dx_times_dy(self):
        prod = external_product(unit_class(X2), unit_class(Y3))
        assert prod.representative == DifferentialForm(
            2, 2, {(0, 1): Polynomial.constant(2, 1)}
        )
        assert prod.tdt_eigenvalue() == F(-1, 6)

    def test_eigenvalue_zero_case(self):
        prod = external_product(unit_class(X2), unit_class(Y2))
        assert prod.tdt_eigenvalue() == 0

    def test_additivity_on_engine_classes(self):
        for pf, pg in [(X2, Y2), (X2, Y3), (X3Y3, Z2)]:
            for bf in ct_basis(pf, reduced=True):
                for bg in ct_basis(pg, reduced=True):
                    assert eigenvalue_additivity_check(bf.cls, bg.cls)

    def test_t_compatibility(self):
        for pf, pg in [(X2, Y3), (X3Y3, Z2)]:
            for bf in ct_basis(pf, reduced=True):
                for bg in ct_basis(pg, reduced=True):
                    assert t_compatibility_check(bf.cls, bg.cls)


class TestComparison:
    def test_a1_a1(self):
        rep = ts_compare(X2, Y2)
        assert rep.passed
        assert rep.left_exponents == [F(0)] and rep.right_exponents == [F(0)]

    def test_a1_cusp(self):
        rep = ts_compare(X2, Y3)
        assert rep.passed
        assert rep.left_exponents == [F(-1, 6), F(1, 6)]

    def test_x3y3_z2(self):
        rep = ts_compare(X3Y3, Z2)
        assert rep.passed
        assert rep.right_exponents == [F(1, 6), F(1, 2), F(1, 2), F(5, 6)]

    def test_mu_multiplicative(self):
        for pf, pg in [(X2, Y3), (X3Y3, Z2), (germ("x^4", ["x"]), Y3)]:
            rep = ts_compare(pf, pg)
            assert rep.passed
            assert rep.right_rank == pf.milnor_number() * pg.milnor_number()


class TestVanishing:
    def test_hand_example(self):
        # dx wedge 2y dy = d(2x(x dx + y dy)), and the witness is df-killed
        from brieskorn.poly import parse_polynomial

        cert = vanish_g_k_dg(unit_class(X2), Y2, 0)
        assert isinstance(cert, VanishingCertificate)
        h = combined_problem(X2, Y2)
        assert cert.verify(h)
        P = lambda s: parse_polynomial(s, ["x", "y"])
        assert cert.eta == DifferentialForm(2, 1, {(0,): P("2*x^2"), (1,): P("2*x*y")})

    def test_k_up_to_three(self):
        for k in range(4):
            cert = vanish_g_k_dg(unit_class(X2), Y2, k)
            assert isinstance(cert, VanishingCertificate)
            assert cert.verify(combined_problem(X2, Y2))

    def test_smooth_g(self):
        sm = germ("y", ["y"])
        cert = vanish_g_k_dg(unit_class(X2), sm, 0)
        assert isinstance(cert, VanishingCertificate)

    def test_other_operands(self):
        z3 = germ("z^3", ["z"])
        cert = vanish_g_k_dg(unit_class(X3Y3), z3, 1)
        assert isinstance(cert, VanishingCertificate)
        assert cert.verify(combined_problem(X3Y3, z3))
