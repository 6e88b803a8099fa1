import math
import random

import pytest

from ipsforge import gf
from ipsforge.errors import FieldTooSmall, NotSymmetric, OutOfRange
from ipsforge.mvpoly import Poly, ml, parse_poly
from ipsforge.symfun import (
    BenOrForm,
    ElemSymExpansion,
    ben_or_coeffs,
    binom_elem,
    compress_char_p,
    elem_sym,
    lucas_binom,
    ml_pair_expansion,
    ml_prod_elem,
    num_compressed_vars,
    qt_poly,
    sym_to_elem_basis,
)


class TestElemSym:
    def test_extremes(self, f3):
        assert elem_sym(4, 0, f3) == Poly.one(4, f3)
        assert elem_sym(3, 3, f3) == Poly.monomial(3, f3, (1, 1, 1), f3.one())

    def test_n3_d2(self, f3):
        assert elem_sym(3, 2, f3) == parse_poly("x1*x2 + x1*x3 + x2*x3", 3, f3)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_sparsity_is_binomial(self, n, f2):
        for d in range(n + 1):
            assert elem_sym(n, d, f2).sparsity() == math.comb(n, d)

    def test_out_of_range(self, f3):
        with pytest.raises(OutOfRange):
            elem_sym(3, 4, f3)

    def test_recursive_identity(self, f9):
        # e_d(x1..xn) = x1 e_{d-1}(x2..xn) + e_d(x2..xn)
        n, d = 5, 3
        tail_ed = elem_sym(n - 1, d, f9)
        tail_ed1 = elem_sym(n - 1, d - 1, f9)

        def shift(f):
            terms = {(0,) + e: c for e, c in f.terms.items()}
            return Poly(n, f9, terms)

        rhs = Poly.var(n, f9, 0) * shift(tail_ed1) + shift(tail_ed)
        assert elem_sym(n, d, f9) == rhs

    def test_weight_evaluation_exhaustive_small(self, f3):
        for n in range(1, 8):
            for d in range(n + 1):
                ed = elem_sym(n, d, f3)
                for mask in range(1 << n):
                    w = bin(mask).count("1")
                    assert ed.eval_cube_point(mask) == binom_elem(w, d, f3)

    def test_weight_evaluation_n10_per_class(self, f2):
        # symmetric, so one representative per weight plus sampled permutations
        n = 10
        rng = random.Random(2)
        for d in range(n + 1):
            ed = elem_sym(n, d, f2)
            for w in range(n + 1):
                mask = (1 << w) - 1
                assert ed.eval_cube_point(mask) == binom_elem(w, d, f2)
            for _ in range(5):
                mask = rng.randrange(1 << n)
                w = bin(mask).count("1")
                assert ed.eval_cube_point(mask) == binom_elem(w, d, f2)


class TestLucas:
    def test_c52_mod2(self):
        assert lucas_binom(5, 2, 2) == 0

    def test_choose_zero(self):
        for p in (2, 3, 7):
            for a in range(20):
                assert lucas_binom(a, 0, p) == 1

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_against_exact_binomial(self, p):
        for a in range(201):
            for b in range(201):
                assert lucas_binom(a, b, p) == math.comb(a, b) % p


class TestBenOr:
    @pytest.mark.parametrize("n,spec_args", [(1, (5, 1)), (3, (2, 3)), (4, (5, 1)),
                                             (6, (7, 1)), (6, (2, 3))])
    def test_identity_polynomial_level(self, n, spec_args):
        spec = gf.field_spec(*spec_args)
        form = ben_or_coeffs(n, spec)
        for k in range(n + 1):
            assert form.expand_row(k) == elem_sym(n, k, spec)

    def test_row_zero_is_constant_one(self):
        spec = gf.field_spec(5, 1)
        form = ben_or_coeffs(3, spec)
        assert form.expand_row(0) == Poly.one(3, spec)

    def test_n1_over_f5(self):
        spec = gf.field_spec(5, 1)
        form = ben_or_coeffs(1, spec)
        assert form.nodes == (spec.from_int(0), spec.from_int(1))
        assert form.expand_row(1) == Poly.var(1, spec, 0)

    def test_field_too_small(self, f2):
        with pytest.raises(FieldTooSmall):
            ben_or_coeffs(2, f2)


class TestElemBasis:
    def test_worked_example(self, f3):
        f = parse_poly("x1*x2 + x1 + x2", 2, f3)
        lams = sym_to_elem_basis(f).lambdas
        assert [l.coeffs[0] for l in lams] == [0, 1, 1]

    def test_constant_one(self, f3):
        lams = sym_to_elem_basis(Poly.one(3, f3)).lambdas
        assert [l.coeffs[0] for l in lams] == [1, 0, 0, 0]

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_roundtrip(self, n, f3, rng):
        lams = tuple(f3.sample(rng) for _ in range(n + 1))
        f = ElemSymExpansion(n, f3, lams).to_poly()
        assert sym_to_elem_basis(f).lambdas == lams

    def test_not_symmetric(self, f3):
        with pytest.raises(NotSymmetric):
            sym_to_elem_basis(parse_poly("x1", 2, f3))
        with pytest.raises(NotSymmetric):
            sym_to_elem_basis(parse_poly("x1*x2 + x1 + 2*x2", 2, f3))


class TestCompression:
    def test_e1_any_p(self, f3):
        comp = compress_char_p(elem_sym(4, 1, f3))
        assert comp.poly == Poly.var(comp.r, f3, 0)

    def test_char2_digit_products(self, f2):
        # e_3 with 3 = (11)_2 compresses to y1*y2
        comp = compress_char_p(elem_sym(5, 3, f2))
        assert comp.r == 3
        assert comp.poly == parse_poly("y1*y2", 3, f2, names=("y1", "y2", "y3"))

    def test_e2_n5_p3_weight_table(self, f3):
        f = elem_sym(5, 2, f3)
        comp = compress_char_p(f)
        for mask in range(32):
            w = bin(mask).count("1")
            assert comp.eval_at_weight(w) == f.eval_cube_point(mask)

    def test_full_cube_agreement_through_ehat(self, f3, rng):
        n, p = 6, 3
        lams = tuple(f3.sample(rng) for _ in range(n + 1))
        f = ElemSymExpansion(n, f3, lams).to_poly()
        comp = compress_char_p(f)
        ehat = [elem_sym(n, p ** i, f3) for i in range(comp.r)]
        for mask in range(1 << n):
            point = [e.eval_cube_point(mask) for e in ehat]
            assert comp.poly.eval(point) == f.eval_cube_point(mask)

    def test_individual_degree_below_p(self, f2, f3, rng):
        for fld in (f2, f3):
            lams = tuple(fld.sample(rng) for _ in range(9))
            comp = compress_char_p(ElemSymExpansion(8, fld, lams).to_poly())
            assert comp.poly.individual_degree() <= fld.p - 1

    def test_cube_maps_into_prime_field(self, f9):
        # every e-hat coordinate value on the cube lies in the prime subfield
        n = 4
        ehat = [elem_sym(n, 3 ** i, f9) for i in range(num_compressed_vars(n, 3))]
        prime_elems = {f9.from_int(c) for c in range(3)}
        for mask in range(1 << n):
            for e in ehat:
                assert e.eval_cube_point(mask) in prime_elems


class TestQt:
    def test_q3_is_y1y2(self, f2):
        assert qt_poly(3, 2, 2, f2) == parse_poly("y1*y2", 2, f2, names=("y1", "y2"))

    @pytest.mark.parametrize("p", [2, 3])
    def test_digit_dominance_values(self, p):
        fld = gf.field_spec(p, 1)
        r = 2
        for t in range(1, p ** r):
            q = qt_poly(t, r, p, fld)
            td = (t % p, t // p % p)
            assert q.eval([fld.from_int(td[0]), fld.from_int(td[1])]) == fld.one()
            for b0 in range(p):
                for b1 in range(p):
                    got = q.eval([fld.from_int(b0), fld.from_int(b1)])
                    want = lucas_binom(b0, td[0], p) * lucas_binom(b1, td[1], p) % p
                    assert got == fld.from_int(want)
                    if b0 < td[0] or b1 < td[1]:
                        assert got.is_zero()

    def test_out_of_range(self, f3):
        with pytest.raises(OutOfRange):
            qt_poly(9, 2, 3, f3)
        with pytest.raises(OutOfRange):
            qt_poly(0, 2, 3, f3)


class TestMlProdElem:
    def test_single_factor_is_base_case(self, f3):
        expansion, quots = ml_prod_elem([2], 4, f3)
        assert expansion.to_poly() == elem_sym(4, 2, f3)
        assert all(q.is_zero() for q in quots)

    def test_pair_e1_e1_n2(self, f3):
        expansion, _ = ml_prod_elem([1, 1], 2, f3)
        assert [l.coeffs[0] for l in expansion.lambdas] == [0, 1, 2]
        direct = ml_pair_expansion(1, 1, 2, f3)
        assert direct.lambdas == expansion.lambdas

    @pytest.mark.parametrize("n,alphas,p", [
        (4, [1, 3, 3], 3),
        (3, [2, 2], 2),
        (5, [1, 2, 4], 2),
        (6, [1, 3, 3, 1], 3),
    ])
    def test_certificate_reexpands_exactly(self, n, alphas, p):
        fld = gf.field_spec(p, 1)
        expansion, quots = ml_prod_elem(alphas, n, fld)
        prod = Poly.one(n, fld)
        for a in alphas:
            prod = prod * elem_sym(n, a, fld)
        recon = expansion.to_poly()
        for j, r in enumerate(quots):
            axiom = Poly.var(n, fld, j, 2) - Poly.var(n, fld, j)
            recon = recon + r * axiom
        assert recon == prod
        assert expansion.to_poly() == ml(prod)

    def test_expansion_matches_weight_values(self, f3):
        expansion, _ = ml_prod_elem([1, 2, 2], 5, f3)
        prod_vals = [
            binom_elem(w, 1, f3) * binom_elem(w, 2, f3) * binom_elem(w, 2, f3)
            for w in range(6)
        ]
        for w in range(6):
            assert expansion.eval_at_weight(w) == prod_vals[w]

    def test_out_of_range(self, f3):
        with pytest.raises(OutOfRange):
            ml_prod_elem([7], 4, f3)


def test_ben_or_serialization_shape(f9):
    form = ben_or_coeffs(2, f9)
    assert isinstance(form, BenOrForm)
    assert len(form.nodes) == 3
    assert len(form.coeffs) == 3 and all(len(row) == 3 for row in form.coeffs)


def test_expansion_serializes_to_lambda_vector(f3):
    lams = (f3.one(), f3.zero(), f3.from_int(2))
    exp = ElemSymExpansion(2, f3, lams)
    assert exp.serialize() == [[1], [0], [2]]
