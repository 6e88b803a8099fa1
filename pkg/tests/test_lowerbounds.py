import math
import random

import pytest

from ipsforge import gf
from ipsforge.errors import BudgetExceeded, ZeroDenominator
from ipsforge.lowerbounds import (
    alternating_cube_sum,
    coefficient_matrix,
    degree_trial,
    eval_dimension,
    lifted_instance,
    ml_inverse,
    numerator_monomial_check,
    restricted_degree_scan,
    roabp_width,
    sparsity_probe,
    top_coeff,
    _batch_inverse,
)
from ipsforge.mvpoly import Poly, cube_interpolate, ml

from conftest import rand_poly


class TestMlInverse:
    def test_product_is_one_mod_cube(self):
        tower = gf.field_tower(2, 3)
        rng = random.Random(1)
        for n in (1, 3, 5):
            alphas = [tower.base.sample(rng) for _ in range(n)]
            beta = tower.sample_beta(rng)
            f = ml_inverse(alphas, beta, tower)
            assert f.is_multilinear()
            terms = {tuple(1 if v == i else 0 for v in range(n)): tower.embed(a)
                     for i, a in enumerate(alphas) if not a.is_zero()}
            L = Poly(n, tower.ext, terms) + Poly.const(n, tower.ext, -beta)
            assert ml(f * L) == Poly.one(n, tower.ext)

    def test_n0_constant(self):
        tower = gf.field_tower(2, 1)
        t = tower.ext.gen()
        f = ml_inverse([], t)
        assert f == Poly.const(0, tower.ext, (-t).inv())

    def test_two_point_interpolation_f4(self):
        tower = gf.field_tower(2, 1)
        ext = tower.ext
        t = ext.gen()
        f = ml_inverse([tower.base.one()], t, tower)
        # values 1/(0 - t) and 1/(1 - t)
        assert f.eval_cube_point(0) == (-t).inv()
        assert f.eval_cube_point(1) == (ext.one() - t).inv()
        L = Poly.var(1, ext, 0) + Poly.const(1, ext, -t)
        assert ml(f * L) == Poly.one(1, ext)

    def test_zero_denominator(self, f9):
        # beta reachable: alphas in the same field with beta = alpha sum
        alphas = [f9.one(), f9.one()]
        with pytest.raises(ZeroDenominator):
            ml_inverse(alphas, f9.from_int(2))

    def test_degree_bound_when_beta_in_base(self, f9):
        # coefficients all in one field: deg <= k(p-1)
        from ipsforge import generators

        rng = random.Random(2)
        for n in (3, 5):
            inst = generators.linear_base(f9, n, rng)
            from ipsforge.certificates import _linear_parts

            alphas, beta = _linear_parts(inst.axioms[0])
            f = ml_inverse(alphas, beta)
            assert f.degree() <= 2 * (3 - 1)


class TestTopCoeff:
    def test_three_way_agreement(self):
        rng = random.Random(3)
        for tower in (gf.field_tower(2, 5), gf.field_tower(3, 3)):
            for n in range(1, 7):
                alphas = [tower.base.sample(rng) for _ in range(n)]
                beta = tower.sample_beta(rng)
                rep = top_coeff(alphas, beta, tower)
                assert rep.agree

    def test_n1_direct_fractions(self):
        tower = gf.field_tower(3, 2)
        rng = random.Random(4)
        alpha = tower.base.sample(rng)
        beta = tower.sample_beta(rng)
        rep = top_coeff([alpha], beta, tower)
        a, b = tower.embed(alpha), beta
        assert rep.rational_sum == (a - b).inv() - (-b).inv()

    def test_generic_nonzero(self):
        tower = gf.field_tower(2, 10)
        rng = random.Random(5)
        for n in (2, 4, 6, 8):
            alphas = [tower.base.sample(rng) for _ in range(n)]
            beta = tower.sample_beta(rng)
            assert not top_coeff(alphas, beta, tower).interpolated.is_zero()

    def test_alternating_sum_utility_x1x2(self, f3):
        g = Poly.monomial(2, f3, (1, 1), f3.one())
        assert alternating_cube_sum(g) == f3.one()


class TestNumeratorClaim:
    def test_n1_trivial(self, f3):
        assert numerator_monomial_check(1, f3) == f3.one()

    def test_n2_three_factor_product(self, f9):
        assert numerator_monomial_check(2, f9) == f9.one()

    def test_n3_char2_survives(self, f2):
        assert numerator_monomial_check(3, f2) == f2.one()

    def test_independent_of_beta(self, f3):
        for enc in range(3):
            assert numerator_monomial_check(3, f3, beta=f3.from_encoding(enc)) == f3.one()

    def test_budget(self, f2):
        with pytest.raises(BudgetExceeded):
            numerator_monomial_check(6, f2)

    def test_brute_force_cross_check(self, f9):
        # expand the product symbolically and compare the coefficient
        n = 3
        beta = f9.gen()
        nvars = n
        prod = Poly.one(nvars, f9)
        for tmask in range(1, 1 << n):
            terms = {}
            for i in range(n):
                if (tmask >> i) & 1:
                    terms[tuple(1 if v == i else 0 for v in range(nvars))] = f9.one()
            factor = Poly(nvars, f9, terms) + Poly.const(nvars, f9, -beta)
            prod = prod * factor
        target = tuple(1 << i for i in range(n))
        assert prod.coeff(target) == numerator_monomial_check(n, f9, beta=beta)


class TestDegreeTrials:
    def test_report_against_bound(self):
        tower = gf.field_tower(2, 12)
        report = degree_trial(4, tower, 100, seed=1)
        assert report.passes()
        assert not report.vacuous
        assert report.parameters["seed"] == 1

    def test_scan_all_mode(self):
        tower = gf.field_tower(2, 12)
        report = degree_trial(3, tower, 20, seed=2, scan_all=True)
        assert report.bound_exact_union is not None
        assert report.bound_exact_union >= report.bound
        assert report.passes()

    def test_vacuous_bound_flagged(self):
        tower = gf.field_tower(2, 2)  # |S| = 4 <= 2^n - 1 for n = 3
        report = degree_trial(3, tower, 5, seed=3)
        assert report.vacuous
        assert report.passes()

    def test_deterministic_under_seed(self):
        tower = gf.field_tower(2, 8)
        r1 = degree_trial(3, tower, 30, seed=5)
        r2 = degree_trial(3, tower, 30, seed=5)
        assert r1.to_dict() == r2.to_dict()

    def test_scan_reports_crafted_failure(self):
        tower = gf.field_tower(2, 6)
        rng = random.Random(6)
        alphas = [tower.base.sample(rng) for _ in range(4)]
        alphas[2] = tower.base.zero()
        beta = tower.sample_beta(rng)
        scan = restricted_degree_scan(alphas, beta, tower)
        assert not scan.all_full
        assert (2,) in scan.failing
        assert scan.worst is not None and 2 in scan.worst


class TestSparsityProbe:
    def test_n4_generic(self):
        tower = gf.field_tower(2, 8)
        rng = random.Random(7)
        alphas = [tower.base.sample(rng) for _ in range(4)]
        beta = tower.sample_beta(rng)
        sparsity, bound = sparsity_probe(alphas, beta, tower)
        assert bound == 1.0
        assert sparsity >= 1

    def test_n8_over_probes(self):
        tower = gf.field_tower(2, 12)
        rng = random.Random(8)
        for _ in range(5):
            alphas = [tower.base.sample(rng) for _ in range(8)]
            beta = tower.sample_beta(rng)
            sparsity, bound = sparsity_probe(alphas, beta, tower)
            assert sparsity >= bound == 2.0

    def test_n0(self):
        tower = gf.field_tower(2, 1)
        sparsity, bound = sparsity_probe([], tower.ext.gen(), tower)
        assert sparsity == 1


class TestCoefficientMatrix:
    def test_diagonal_rank(self, f9):
        f = Poly.monomial(4, f9, (1, 0, 1, 0), f9.one()) \
            + Poly.monomial(4, f9, (0, 1, 0, 1), f9.one())
        assert coefficient_matrix(f, ((0, 1), (2, 3))).rank() == 2

    def test_transpose_invariance(self, f9, rng):
        for _ in range(10):
            f = rand_poly(4, f9, rng, 6, 1)
            r1 = coefficient_matrix(f, ((0, 1), (2, 3))).rank()
            r2 = coefficient_matrix(f, ((2, 3), (0, 1))).rank()
            assert r1 == r2

    def test_rank_one_iff_product(self, f9, rng):
        for _ in range(10):
            g = rand_poly(2, f9, rng, 3, 1)
            h = rand_poly(2, f9, rng, 3, 1)
            if g.is_zero() or h.is_zero():
                continue
            # f(x1,x2,y1,y2) = g(x) * h(y)
            terms = {}
            for (e1, c1) in g.terms.items():
                for (e2, c2) in h.terms.items():
                    terms[e1 + e2] = c1 * c2
            f = Poly(4, f9, terms)
            assert coefficient_matrix(f, ((0, 1), (2, 3))).rank() == 1

    def test_csv_export(self, f9):
        f = Poly.monomial(2, f9, (1, 1), f9.one())
        csv = coefficient_matrix(f, ((0,), (1,))).to_csv()
        assert csv.count("\n") == 2

    def test_bad_partition(self, f9):
        with pytest.raises(ValueError):
            coefficient_matrix(Poly.one(3, f9), ((0, 1), (1, 2)))


class TestEvalDimension:
    def test_independent_of_right_side(self, f9):
        f = Poly.var(4, f9, 0) + Poly.var(4, f9, 1)
        assert eval_dimension(f, ((0, 1), (2, 3))) == 1

    def test_bounded_by_rank(self, f9, rng):
        for _ in range(10):
            f = rand_poly(4, f9, rng, 6, 1)
            ed = eval_dimension(f, ((0, 1), (2, 3)))
            assert ed <= coefficient_matrix(f, ((0, 1), (2, 3))).rank()

    def test_equality_when_domain_exceeds_degree(self, f9, rng):
        points = [f9.from_encoding(m) for m in range(3)]
        for _ in range(10):
            f = rand_poly(4, f9, rng, 5, 1)
            ed = eval_dimension(f, ((0, 1), (2, 3)), domain=points)
            assert ed == coefficient_matrix(f, ((0, 1), (2, 3))).rank()

    def test_lifted_inverse_full_dimension(self):
        tower = gf.field_tower(2, 8)
        inst = lifted_instance("fixed-order", 3, tower, random.Random(9))
        values = [inst.poly.eval_cube_point(m) for m in range(1 << 6)]
        g = cube_interpolate(_batch_inverse(values), 6, tower.ext)
        assert eval_dimension(g, (inst.x_vars(), inst.y_vars())) == 8


class TestRoabpWidth:
    def test_full_product_width_one(self, f9):
        f = Poly.monomial(4, f9, (1, 1, 1, 1), f9.one())
        for order in ([0, 1, 2, 3], [2, 0, 3, 1]):
            assert roabp_width(f, order) == 1

    def test_width_is_order_sensitive(self, f9):
        # path x1x2 + x2x3 + x3x4: width 3 in the natural order, 2 after
        # swapping the middle variables
        terms = {}
        for i in range(3):
            e = [0] * 4
            e[i] = e[i + 1] = 1
            terms[tuple(e)] = f9.one()
        f = Poly(4, f9, terms)
        assert roabp_width(f, [0, 1, 2, 3]) == 3
        assert roabp_width(f, [0, 2, 1, 3]) == 2

    def test_width_at_least_every_cut(self, f9, rng):
        f = rand_poly(4, f9, rng, 6, 1)
        order = [0, 1, 2, 3]
        w = roabp_width(f, order)
        for i in range(1, 5):
            assert w >= coefficient_matrix(f, (order[:i], order[i:])).rank()

    def test_bad_order(self, f9):
        with pytest.raises(ValueError):
            roabp_width(Poly.one(2, f9), [0, 0])


class TestLiftedInstances:
    def test_fixed_order_layout(self):
        tower = gf.field_tower(2, 4)
        inst = lifted_instance("fixed-order", 3, tower, random.Random(10))
        assert inst.n_vars == 6
        assert inst.var_names[:3] == ("x1", "x2", "x3")
        assert inst.var_names[3:] == ("y1", "y2", "y3")
        assert not tower.is_in_subfield(inst.beta)

    def test_any_order_assignments_are_boolean_with_n_ones(self):
        tower = gf.field_tower(2, 4)
        inst = lifted_instance("any-order", 3, tower, random.Random(11))
        for u, v in inst.balanced_partitions():
            assignment = inst.restriction_assignment(u, v)
            ones = sum(1 for val in assignment.values() if not val.is_zero())
            assert ones == 3
            assert all(val.coeffs[0] in (0, 1) and not any(val.coeffs[1:])
                       for val in assignment.values())

    def test_partition_count(self):
        tower = gf.field_tower(2, 4)
        inst = lifted_instance("any-order", 3, tower, random.Random(12))
        assert sum(1 for _ in inst.balanced_partitions()) == math.comb(6, 3) // 2

    def test_specialized_eval_dim_across_partitions(self):
        # n=2 keeps the sweep fast: every balanced partition reaches 2^n
        tower = gf.field_tower(2, 8)
        rng = random.Random(13)
        inst = lifted_instance("any-order", 2, tower, rng)
        full = 0
        total = 0
        for u, v in inst.balanced_partitions():
            restricted = inst.restricted(u, v)
            x_only = restricted  # z variables are gone after substitution
            values = [x_only.eval_cube_point(m) for m in range(1 << 4)]
            if any(val.is_zero() for val in values):
                continue
            g = cube_interpolate(_batch_inverse(values), 4, tower.ext)
            g4 = Poly(4, tower.ext, {e[:4]: c for e, c in g.terms.items()})
            total += 1
            full += eval_dimension(g4, (list(u), list(v))) == 4
        assert total > 0 and full == total

    def test_unknown_kind(self):
        tower = gf.field_tower(2, 2)
        with pytest.raises(ValueError):
            lifted_instance("sideways", 2, tower, random.Random(0))
