"""Elementary symmetric polynomial machinery.

Everything a symmetric refutation needs: e_d construction, Hamming-weight
evaluation through Lucas, Ben-Or interpolation forms, compression of symmetric
functions to O(log_p n) coordinates in characteristic p, and multilinearization
certificates for products of elementary symmetric polynomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ipsforge import exactla
from ipsforge.errors import FieldTooSmall, NotSymmetric, OutOfRange
from ipsforge.gf import FieldElem, FieldSpec
from ipsforge.mvpoly import Poly, divide_by_axioms, ml


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p by digitwise products of p-ary digits."""
    if a < 0 or b < 0:
        raise OutOfRange("binomial arguments must be non-negative")
    result = 1
    while b:
        ad, bd = a % p, b % p
        if bd > ad:
            return 0
        num = den = 1
        for i in range(bd):
            num = num * (ad - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, -1, p) % p
        a //= p
        b //= p
    return result


def binom_elem(w: int, d: int, field: FieldSpec) -> FieldElem:
    """C(w, d) as a prime-subfield constant."""
    return field.from_int(lucas_binom(w, d, field.p))


def elem_sym(n: int, d: int, field: FieldSpec) -> Poly:
    """The degree-d elementary symmetric polynomial, C(n,d) monomials."""
    if not 0 <= d <= n:
        raise OutOfRange(f"need 0 <= d <= n, got d={d}, n={n}")
    one = field.one()
    terms = {}
    for subset in itertools.combinations(range(n), d):
        exp = [0] * n
        for i in subset:
            exp[i] = 1
        terms[tuple(exp)] = one
    return Poly(n, field, terms)


# ---------------------------------------------------------------------------
# the e-basis for multilinear symmetric polynomials

@dataclass(frozen=True)
class ElemSymExpansion:
    """A multilinear symmetric polynomial as sum_d lambdas[d] * e_d (e_0 = 1)."""

    n: int
    field: FieldSpec
    lambdas: tuple[FieldElem, ...]  # length n + 1

    def to_poly(self) -> Poly:
        acc = Poly.zero(self.n, self.field)
        for d, lam in enumerate(self.lambdas):
            if not lam.is_zero():
                acc = acc + elem_sym(self.n, d, self.field).scale(lam)
        return acc

    def eval_at_weight(self, w: int) -> FieldElem:
        acc = self.field.zero()
        for d, lam in enumerate(self.lambdas):
            if not lam.is_zero():
                acc = acc + lam * binom_elem(w, d, self.field)
        return acc

    def serialize(self) -> list[list[int]]:
        return [list(lam.coeffs) for lam in self.lambdas]


def _solve_weight_triangular(values: list[FieldElem], n: int,
                             field: FieldSpec) -> tuple[FieldElem, ...]:
    """lambdas from weight values via the triangular system
    values[w] = sum_d lambdas[d] C(w, d); diagonal C(w, w) = 1."""
    lambdas: list[FieldElem] = []
    for w in range(n + 1):
        acc = values[w]
        for d in range(w):
            acc = acc - lambdas[d] * binom_elem(w, d, field)
        lambdas.append(acc)
    return tuple(lambdas)


def sym_to_elem_basis(f: Poly) -> ElemSymExpansion:
    """Expand a multilinear symmetric polynomial in the e_d basis.

    Symmetry is verified by weight-class consistency of the coefficients;
    lambdas come from a triangular solve against the weight values.
    """
    if not f.is_multilinear():
        raise NotSymmetric("input must be multilinear")
    n, field = f.n, f.field
    by_degree: dict[int, FieldElem] = {}
    counts: dict[int, int] = {}
    for exp, c in f.terms.items():
        d = sum(exp)
        if d in by_degree and by_degree[d] != c:
            raise NotSymmetric(f"degree-{d} monomials carry unequal coefficients")
        by_degree[d] = c
        counts[d] = counts.get(d, 0) + 1
    from math import comb
    for d, cnt in counts.items():
        if d > 0 and cnt != comb(n, d):
            raise NotSymmetric(f"degree-{d} class is incomplete ({cnt} of {comb(n, d)})")
    weight_values = [
        f.eval_cube_point((1 << w) - 1) for w in range(n + 1)
    ]
    return ElemSymExpansion(n, field, _solve_weight_triangular(weight_values, n, field))


def ml_pair_expansion(a: int, b: int, n: int, field: FieldSpec) -> ElemSymExpansion:
    """ml[e_a * e_b] in the e-basis, from weight evaluation C(w,a)C(w,b)."""
    if not (0 <= a <= n and 0 <= b <= n):
        raise OutOfRange("elementary symmetric degrees out of range")
    values = [binom_elem(w, a, field) * binom_elem(w, b, field) for w in range(n + 1)]
    return ElemSymExpansion(n, field, _solve_weight_triangular(values, n, field))


def expansion_times_elem(expansion: ElemSymExpansion, b: int) -> ElemSymExpansion:
    """ml[(sum lambdas[d] e_d) * e_b] in the e-basis."""
    n, field = expansion.n, expansion.field
    values = [
        expansion.eval_at_weight(w) * binom_elem(w, b, field) for w in range(n + 1)
    ]
    return ElemSymExpansion(n, field, _solve_weight_triangular(values, n, field))


# ---------------------------------------------------------------------------
# Ben-Or forms

@dataclass(frozen=True)
class BenOrForm:
    """e_k = sum_i coeffs[k][i] * prod_j (1 + nodes[i] x_j) for 0 <= k <= n."""

    n: int
    field: FieldSpec
    nodes: tuple[FieldElem, ...]
    coeffs: tuple[tuple[FieldElem, ...], ...]

    def product_factor(self, i: int) -> Poly:
        """prod_j (1 + nodes[i] x_j), expanded: sum_S nodes[i]^{|S|} x_S."""
        gamma = self.nodes[i]
        powers = [self.field.one()]
        for _ in range(self.n):
            powers.append(powers[-1] * gamma)
        terms = {}
        for mask in range(1 << self.n):
            exp = tuple((mask >> j) & 1 for j in range(self.n))
            c = powers[sum(exp)]
            if not c.is_zero():
                terms[exp] = c
        return Poly(self.n, self.field, terms)

    def expand_row(self, k: int) -> Poly:
        acc = Poly.zero(self.n, self.field)
        for i, c in enumerate(self.coeffs[k]):
            if not c.is_zero():
                acc = acc + self.product_factor(i).scale(c)
        return acc


def ben_or_coeffs(n: int, field: FieldSpec) -> BenOrForm:
    """Solve the transposed Vandermonde system at the n+1 smallest field
    elements (by encoding), so each e_k identity holds as a polynomial."""
    if field.order <= n:
        raise FieldTooSmall(
            f"need {n + 1} distinct nodes, field has {field.order} elements"
        )
    nodes = [field.from_encoding(m) for m in range(n + 1)]
    vm = []
    row = [field.one() for _ in nodes]
    for _ in range(n + 1):
        vm.append([x.coeffs for x in row])
        row = [x * g for x, g in zip(row, nodes)]
    inv = exactla.invert(vm, field)
    assert inv is not None  # Vandermonde at distinct nodes
    coeffs = tuple(
        tuple(FieldElem(field, inv[i][k]) for i in range(n + 1))
        for k in range(n + 1)
    )
    return BenOrForm(n, field, tuple(nodes), coeffs)


# ---------------------------------------------------------------------------
# characteristic-p compression

def _digits(t: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        out.append(t % p)
        t //= p
    if t:
        raise OutOfRange(f"value needs more than {r} base-{p} digits")
    return out


def _falling_factorial_poly(r: int, var: int, d: int, field: FieldSpec) -> Poly:
    """(1/d!) prod_{j<d} (y_var - j); evaluates to C(w, d) mod p at w."""
    p = field.p
    acc = Poly.one(r, field)
    for j in range(d):
        acc = acc * (Poly.var(r, field, var) - Poly.const(r, field, field.from_int(j)))
    fact = 1
    for i in range(2, d + 1):
        fact = fact * i % p
    return acc.scale(field.from_int(pow(fact, -1, p) if fact > 1 else 1))


@dataclass(frozen=True)
class CompressedSymmetric:
    """F(y_1..y_r) with individual degree <= p-1 such that
    F(e_1, e_p, ..., e_{p^{r-1}}) matches the source on the whole cube."""

    n: int
    r: int
    field: FieldSpec
    poly: Poly  # in r variables

    def eval_at_weight(self, w: int) -> FieldElem:
        point = [
            binom_elem(w, self.field.p ** i, self.field) for i in range(self.r)
        ]
        return self.poly.eval(point)


def num_compressed_vars(n: int, p: int) -> int:
    r = 1
    while p ** r <= n:
        r += 1
    return r


def compress_char_p(f: Poly) -> CompressedSymmetric:
    """Compress a multilinear symmetric polynomial to r = floor(log_p n) + 1
    coordinates via the digit polynomials S_{d,i}."""
    n, field = f.n, f.field
    p = field.p
    r = num_compressed_vars(n, p)
    expansion = sym_to_elem_basis(f)
    acc = Poly.zero(r, field)
    for d, lam in enumerate(expansion.lambdas):
        if lam.is_zero():
            continue
        factor = Poly.const(r, field, lam)
        for i, di in enumerate(_digits(d, p, r)):
            if di:
                factor = factor * _falling_factorial_poly(r, i, di, field)
        acc = acc + factor
    return CompressedSymmetric(n, r, field, acc)


def qt_poly(t: int, r: int, p: int, field: FieldSpec) -> Poly:
    """Q_t(y) = prod_i S_{t_i}(y_i); vanishes at digit vectors b unless b
    dominates the digits of t, where it is prod_i C(b_i, t_i)."""
    if field.p != p:
        raise OutOfRange("field characteristic must match p")
    if not 1 <= t <= p ** r - 1:
        raise OutOfRange(f"need 1 <= t <= p^r - 1 = {p ** r - 1}, got {t}")
    acc = Poly.one(r, field)
    for i, ti in enumerate(_digits(t, p, r)):
        if ti:
            acc = acc * _falling_factorial_poly(r, i, ti, field)
    return acc


# ---------------------------------------------------------------------------
# multilinearization certificates for products of elementary symmetrics

def ml_prod_elem(alphas, n: int, field: FieldSpec) -> tuple[ElemSymExpansion, list[Poly]]:
    """Certificate for prod e_alpha = ml[prod e_alpha] + sum_j R_j (x_j^2 - x_j).

    Returns the e-basis expansion of the multilinear part and the quotients
    R_1..R_n, built by a deterministic left-to-right fold over the sorted
    degree multiset; each pairwise step uses weight evaluation for the
    expansion and exact division for the quotients.
    """
    degrees = sorted(alphas)
    if not degrees:
        unit = [field.zero()] * (n + 1)
        unit[0] = field.one()
        return ElemSymExpansion(n, field, tuple(unit)), [Poly.zero(n, field)] * n
    for a in degrees:
        if not 0 <= a <= n:
            raise OutOfRange(f"degree {a} out of range for n={n}")

    def unit_expansion(d: int) -> ElemSymExpansion:
        lams = [field.zero()] * (n + 1)
        lams[d] = field.one()
        return ElemSymExpansion(n, field, tuple(lams))

    expansion = unit_expansion(degrees[0])
    quotients = [Poly.zero(n, field) for _ in range(n)]
    pair_cache: dict[int, list[Poly]] = {}
    for beta in degrees[1:]:
        e_beta = elem_sym(n, beta, field)
        new_quotients = [q * e_beta for q in quotients]
        for i, lam in enumerate(expansion.lambdas):
            if lam.is_zero():
                continue
            if i not in pair_cache:
                prod = elem_sym(n, i, field) * e_beta
                dec = divide_by_axioms(prod, "boolean")
                pair_cache[i] = dec.quotients
            for j, d_ij in enumerate(pair_cache[i]):
                if not d_ij.is_zero():
                    new_quotients[j] = new_quotients[j] + d_ij.scale(lam)
        expansion = expansion_times_elem(expansion, beta)
        quotients = new_quotients
        pair_cache.clear()  # cache keyed to the previous beta
    return expansion, quotients
