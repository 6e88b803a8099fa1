import random

import pytest

from ipsforge import gf
from ipsforge.errors import ArityMismatch, ParseError, ZeroPolynomial
from ipsforge.mvpoly import (
    Poly,
    cube_interpolate,
    default_names,
    divide_by_axioms,
    format_poly,
    inddeg_p,
    leading_monomial,
    ml,
    ml_partial,
    parse_poly,
)

from conftest import rand_poly


class TestRingOps:
    def test_char2_square_kills_cross_terms(self, f2):
        f = Poly.var(2, f2, 0) + Poly.var(2, f2, 1)
        assert f * f == Poly.var(2, f2, 0, 2) + Poly.var(2, f2, 1, 2)

    def test_eval_direct_substitution(self, f3):
        g = Poly.monomial(2, f3, (1, 1), f3.one()) + Poly.one(2, f3)
        assert g.eval([f3.one(), f3.one()]) == f3.from_int(2)

    def test_mul_by_zero(self, f3):
        g = rand_poly(3, f3, random.Random(0))
        assert (g * Poly.zero(3, f3)).is_zero()

    def test_arity_mismatch(self, f2, f3):
        with pytest.raises(ArityMismatch):
            Poly.one(2, f2) + Poly.one(3, f2)
        with pytest.raises(ArityMismatch):
            Poly.one(2, f2) * Poly.one(2, f3)

    def test_distributivity_random(self, f9, rng):
        for _ in range(30):
            a, b, c = (rand_poly(3, f9, rng, 4, 2) for _ in range(3))
            assert a * (b + c) == a * b + a * c


class TestSubstitute:
    def test_simple(self, f4):
        h = Poly.var(3, f4, 0) + Poly.var(3, f4, 1)
        s = h.substitute({0: Poly.monomial(3, f4, (1, 1, 0), f4.one()),
                          1: Poly.var(3, f4, 2)})
        assert s == Poly.monomial(3, f4, (1, 1, 0), f4.one()) + Poly.var(3, f4, 2)

    def test_empty_is_identity(self, f4, rng):
        h = rand_poly(3, f4, rng)
        assert h.substitute({}) == h

    def test_lifted_instance_partition_restriction(self, f9):
        # n=2 any-order instance with unit coefficients: substituting the
        # balanced-partition assignment collapses it to u1 v1 + u2 v2 - beta
        from ipsforge.lowerbounds import lifted_instance

        tower = gf.field_tower(3, 2)
        rng = random.Random(4)
        inst = lifted_instance("any-order", 2, tower, rng)
        fld = tower.ext
        u, v = (0, 1), (2, 3)
        restricted = inst.restricted(u, v)
        expect = Poly.const(inst.n_vars, fld, -inst.beta)
        for a, b in zip(u, v):
            e = [0] * inst.n_vars
            e[a] = e[b] = 1
            expect = expect + Poly.monomial(inst.n_vars, fld, tuple(e),
                                            inst.alphas[tuple(sorted((a, b)))])
        assert restricted == expect
        # equality as cube functions as well
        for mask in range(1 << 4):
            full = mask  # x-variables only; z's already substituted
            assert restricted.eval_cube_point(full) == expect.eval_cube_point(full)


class TestMultilinearization:
    def test_partial_worked_example(self, f3):
        # x1^2 x2^3 + x2 x3^2, multilinearized in {x1, x2}
        f = Poly.monomial(3, f3, (2, 3, 0), f3.one()) \
            + Poly.monomial(3, f3, (0, 1, 2), f3.one())
        got = ml_partial(f, {0, 1})
        assert got == Poly.monomial(3, f3, (1, 1, 0), f3.one()) \
            + Poly.monomial(3, f3, (0, 1, 2), f3.one())
        # the single-variable flavors from the same example
        assert ml_partial(f, {0}) == Poly.monomial(3, f3, (1, 3, 0), f3.one()) \
            + Poly.monomial(3, f3, (0, 1, 2), f3.one())
        assert ml_partial(f, {1}) == Poly.monomial(3, f3, (2, 1, 0), f3.one()) \
            + Poly.monomial(3, f3, (0, 1, 2), f3.one())

    def test_ml_x_squared(self, f3):
        assert ml(Poly.var(1, f3, 0, 2)) == Poly.var(1, f3, 0)

    def test_idempotent_and_product_rule(self, f3, rng):
        for _ in range(100):
            f = rand_poly(5, f3, rng, 5, 3)
            g = rand_poly(5, f3, rng, 5, 3)
            assert ml(ml(f)) == ml(f)
            assert ml(f * g) == ml(ml(f) * ml(g))

    def test_agrees_on_cube(self, f9, rng):
        for _ in range(20):
            f = rand_poly(4, f9, rng, 6, 3)
            m = ml(f)
            for mask in range(16):
                assert f.eval_cube_point(mask) == m.eval_cube_point(mask)

    def test_agrees_on_cube_exhaustive_n10(self, f3, rng):
        f = rand_poly(10, f3, rng, 8, 3)
        m = ml(f)
        for mask in range(1 << 10):
            assert f.eval_cube_point(mask) == m.eval_cube_point(mask)


class TestInddegP:
    def test_y4_reduces_to_y2_char3(self, f3):
        red, quots = inddeg_p(Poly.var(1, f3, 0, 4))
        assert red == Poly.var(1, f3, 0, 2)

    def test_low_degree_fixed(self, f3, rng):
        f = ml(rand_poly(3, f3, rng, 5, 1)) + rand_poly(3, f3, rng, 3, 2)
        if f.individual_degree() < 3:
            red, quots = inddeg_p(f)
            assert red == f
            assert all(q.is_zero() for q in quots)

    def test_char2_matches_ml(self, f2, rng):
        for _ in range(20):
            f = rand_poly(3, f2, rng, 5, 4)
            red, quots = inddeg_p(f)
            assert red == ml(f)
            assert quots == divide_by_axioms(f, "boolean").quotients

    def test_quotient_identity(self, f3, rng):
        for _ in range(20):
            f = rand_poly(3, f3, rng, 6, 6)
            red, quots = inddeg_p(f)
            assert red.individual_degree() <= 2
            recon = red
            for j, g in enumerate(quots):
                axiom = Poly.var(3, f3, j, 3) - Poly.var(3, f3, j)
                recon = recon + g * axiom
            assert recon == f

    def test_quotient_sparsity_bound(self, f3, rng):
        # sparsity(G_j) <= sparsity(f) * D / (p - 1)
        for _ in range(10):
            f = rand_poly(3, f3, rng, 6, 6)
            d = f.individual_degree()
            _, quots = inddeg_p(f)
            cap = f.sparsity() * max(d, 1) / (3 - 1)
            assert all(g.sparsity() <= cap for g in quots)


class TestDivideByAxioms:
    def test_x1_squared(self, f3):
        dec = divide_by_axioms(Poly.var(2, f3, 0, 2))
        assert dec.remainder == Poly.var(2, f3, 0)
        assert dec.quotients[0] == Poly.one(2, f3)
        assert dec.quotients[1].is_zero()

    def test_multilinear_untouched(self, f3, rng):
        f = ml(rand_poly(3, f3, rng, 5, 1))
        dec = divide_by_axioms(f)
        assert dec.remainder == f
        assert all(q.is_zero() for q in dec.quotients)

    def test_reconstruction_exact(self, f9, rng):
        for _ in range(30):
            f = rand_poly(4, f9, rng, 8, 6)
            dec = divide_by_axioms(f)
            assert dec.recompose() == f
            assert dec.remainder.is_multilinear()
            assert all(q.degree() <= f.degree() for q in dec.quotients
                       if not q.is_zero())


class TestCubeInterpolate:
    def test_constant(self, f3):
        c = f3.from_int(2)
        assert cube_interpolate([c] * 8, 3, f3) == Poly.const(3, f3, c)

    def test_and_truth_table(self, f2):
        vals = [f2.one() if mask == 0b1111 else f2.zero() for mask in range(16)]
        assert cube_interpolate(vals, 4, f2) == Poly.monomial(4, f2, (1,) * 4, f2.one())

    def test_roundtrip_on_multilinear(self, f9, rng):
        for _ in range(20):
            f = ml(rand_poly(3, f9, rng, 6, 1))
            vals = [f.eval_cube_point(m) for m in range(8)]
            assert cube_interpolate(vals, 3, f9) == f

    def test_roundtrip_n8(self, f4, rng):
        f = ml(rand_poly(8, f4, rng, 12, 1))
        vals = [f.eval_cube_point(m) for m in range(1 << 8)]
        assert cube_interpolate(vals, 8, f4) == f

    def test_top_coefficient_alternating_sum(self, f9, rng):
        from ipsforge.lowerbounds import alternating_cube_sum

        for _ in range(10):
            vals = [f9.sample(rng) for _ in range(8)]
            poly = cube_interpolate(vals, 3, f9)
            assert poly.coeff((1, 1, 1)) == alternating_cube_sum(poly)


class TestLeadingMonomial:
    def test_degree_dominates(self, f3):
        f = Poly.monomial(3, f3, (1, 1, 0), f3.one()) + Poly.var(3, f3, 2)
        assert leading_monomial(f) == (1, 1, 0)

    def test_single_monomial(self, f3):
        assert leading_monomial(Poly.monomial(2, f3, (0, 3), f3.one())) == (0, 3)

    def test_zero_poly_raises(self, f3):
        with pytest.raises(ZeroPolynomial):
            leading_monomial(Poly.zero(2, f3))

    def test_span_dim_equals_lm_count_for_triangular_families(self, f9, rng):
        # distinct leading monomials => dimension equals family size
        from ipsforge import exactla

        for _ in range(10):
            polys = []
            lms = set()
            while len(polys) < 4:
                f = rand_poly(3, f9, rng, 4, 2)
                if f.is_zero():
                    continue
                lm = leading_monomial(f)
                if lm not in lms:
                    lms.add(lm)
                    polys.append(f)
            monos = sorted({e for f in polys for e in f.terms})
            idx = {e: i for i, e in enumerate(monos)}
            zero = (0,) * f9.k
            matrix = [[zero] * len(monos) for _ in polys]
            for r, f in enumerate(polys):
                for e, c in f.terms.items():
                    matrix[r][idx[e]] = c.coeffs
            assert exactla.rank(matrix, f9) == len(polys)


class TestPolynomialIdentityLemma:
    def test_zero_rate_bounded(self):
        spec = gf.field_spec(2, 7)  # |S| = 128
        rng = random.Random(77)
        trials = 400
        for _ in range(5):
            f = rand_poly(3, spec, rng, 5, 2)
            if f.is_zero():
                continue
            d = f.degree()
            zeros = 0
            for _ in range(trials):
                point = [spec.sample(rng) for _ in range(3)]
                zeros += f.eval(point).is_zero()
            bound = d / spec.order
            sigma = (bound * (1 - bound) / trials) ** 0.5
            assert zeros / trials <= bound + 3 * sigma + 1e-12


class TestTextGrammar:
    def test_roundtrip_random(self, f4, rng):
        for _ in range(30):
            f = rand_poly(3, f4, rng, 5, 3)
            assert parse_poly(format_poly(f), 3, f4) == f

    def test_roundtrip_prime_field(self, f3, rng):
        for _ in range(20):
            f = rand_poly(2, f3, rng, 4, 2)
            assert parse_poly(format_poly(f), 2, f3) == f

    def test_canonical_is_grlex_descending(self, f3):
        f = parse_poly("1 + x2 + x1*x2", 2, f3)
        assert format_poly(f) == "1*x1^1*x2^1 + 1*x2^1 + 1"

    def test_lenient_input(self, f3):
        assert parse_poly("x1 - x2", 2, f3) == \
            Poly.var(2, f3, 0) - Poly.var(2, f3, 1)
        assert parse_poly("2*x1^2", 2, f3) == Poly.var(2, f3, 0, 2).scale(f3.from_int(2))

    def test_custom_names(self, f3):
        f = parse_poly("y1*z2 + 3", 2, f3, names=("y1", "z2"))
        assert f.coeff((1, 1)) == f3.one()

    def test_parse_errors(self, f3, f4):
        with pytest.raises(ParseError):
            parse_poly("x1 + @", 2, f3)
        with pytest.raises(ParseError):
            parse_poly("x9", 2, f3)
        with pytest.raises(ParseError):
            parse_poly("[1,0,0]*x1", 2, f4)  # wrong component count

    def test_zero_formats_as_zero(self, f3):
        assert format_poly(Poly.zero(2, f3)) == "0"
        assert parse_poly("0", 2, f3).is_zero()

    def test_default_names(self):
        assert default_names(3) == ("x1", "x2", "x3")
        assert default_names(2, "z") == ("z1", "z2")
