"""Construction and exact verification of IPS_LIN refutations.

A certificate is the tuple (A_1..A_m, B_1..B_n) with
sum_i A_i f_i + sum_j B_j (x_j^2 - x_j) = 1 as a polynomial identity;
verify() expands the whole combination, so a passing certificate is exact,
never sampled. Constructors: the Frobenius-iteration refutation for shifted
linear instances, sparse lifting through monomial axioms, the low-degree
refutation for base-field linear instances, a symmetric-system pipeline, and
a generic bounded-degree linear-algebra solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ipsforge import exactla
from ipsforge.errors import (
    ArityMismatch,
    BetaInSubfield,
    FieldMismatch,
    NotLinear,
    SatisfiableInstance,
    SatisfiableSystem,
)
from ipsforge.gf import FieldElem, FieldSpec, FieldTower, field_spec, parse_field_spec
from ipsforge.mvpoly import (
    Poly,
    default_names,
    divide_by_axioms,
    format_poly,
    inddeg_p,
    ml,
    parse_poly,
)
from ipsforge.symfun import (
    ElemSymExpansion,
    _solve_weight_triangular,
    binom_elem,
    num_compressed_vars,
    qt_poly,
)
from ipsforge.symfun import compress_char_p as _compress

MODELED_DEPTH = {
    "linear_frobenius": 3,
    "sparse_lift": 5,
    "linear_lowdegree": 2,
    "nullstellensatz": 2,
    "symmetric_pipeline": 8,
}


# ---------------------------------------------------------------------------
# instances and certificates

@dataclass
class Instance:
    """Axioms f_1..f_m over a declared field, plus the tower when the family
    uses a shifted constant from the extension."""

    n: int
    field: FieldSpec
    axioms: list[Poly]
    meta: str = "generic"
    tower: FieldTower | None = None
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.var_names:
            self.var_names = default_names(self.n)
        for f in self.axioms:
            if f.n != self.n or f.field != self.field:
                raise ArityMismatch("axiom arity or field differs from instance")


@dataclass
class CertStats:
    max_degree: int
    total_sparsity: int
    modeled_depth: int

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "total_sparsity": self.total_sparsity,
            "modeled_depth": self.modeled_depth,
        }


@dataclass
class Certificate:
    A: list[Poly]
    B: list[Poly]
    provenance: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.B[0].n if self.B else (self.A[0].n if self.A else 0)


@dataclass
class NoCertificateAtDegree:
    """Value returned when the bounded solver proves no certificate exists at
    the requested degree."""

    degree_bound: int
    detail: str = ""


@dataclass
class VerificationReport:
    ok: bool
    residual: Poly
    stats: CertStats

    def __bool__(self):
        return self.ok


def cert_stats(cert: Certificate) -> CertStats:
    polys = list(cert.A) + list(cert.B)
    max_degree = max((f.degree() for f in polys if not f.is_zero()), default=0)
    total_sparsity = sum(f.sparsity() for f in polys)
    depth = MODELED_DEPTH.get(cert.provenance.get("constructor", ""), 0)
    return CertStats(max_degree, total_sparsity, depth)


def boolean_axiom(n: int, field: FieldSpec, j: int) -> Poly:
    return Poly.var(n, field, j, 2) - Poly.var(n, field, j)


def verify(instance: Instance, cert: Certificate) -> VerificationReport:
    """Expand sum A_i f_i + sum B_j (x_j^2 - x_j) and compare with 1.

    A wrong certificate yields ok=False with the nonzero residual; shape
    mismatches raise ArityMismatch.
    """
    if len(cert.A) != len(instance.axioms):
        raise ArityMismatch(
            f"certificate has {len(cert.A)} A-multipliers for {len(instance.axioms)} axioms"
        )
    if len(cert.B) != instance.n:
        raise ArityMismatch(
            f"certificate has {len(cert.B)} B-multipliers for n={instance.n}"
        )
    n, fld = instance.n, instance.field
    acc = Poly.zero(n, fld)
    for a, f in zip(cert.A, instance.axioms):
        if a.n != n or a.field != fld:
            raise ArityMismatch("A-multiplier arity or field differs from instance")
        acc = acc + a * f
    for j, b in enumerate(cert.B):
        if b.n != n or b.field != fld:
            raise ArityMismatch("B-multiplier arity or field differs from instance")
        if not b.is_zero():
            acc = acc + b * boolean_axiom(n, fld, j)
    residual = acc - Poly.one(n, fld)
    return VerificationReport(residual.is_zero(), residual, cert_stats(cert))


# ---------------------------------------------------------------------------
# linear instances: satisfiability and coefficient extraction

def _linear_parts(L: Poly) -> tuple[list[FieldElem], FieldElem]:
    """(alphas, beta) with L = sum alpha_i x_i - beta; NotLinear if deg > 1."""
    if L.degree() > 1:
        raise NotLinear(f"degree {L.degree()} instance where degree <= 1 required")
    fld = L.field
    alphas = [fld.zero()] * L.n
    beta = fld.zero()
    for exp, c in L.terms.items():
        if sum(exp) == 0:
            beta = -c
        else:
            alphas[exp.index(1)] = c
    return alphas, beta


def reachable_sums(alphas: Sequence[FieldElem], fld: FieldSpec) -> set[FieldElem]:
    sums = {fld.zero()}
    full = fld.order
    for a in alphas:
        if a.is_zero():
            continue
        sums |= {s + a for s in sums}
        if len(sums) == full:
            break
    return sums


def is_unsat_on_cube(L: Poly) -> bool:
    """True iff the subset-sum value beta is unreachable: dynamic programming
    over the set of attainable sums."""
    alphas, beta = _linear_parts(L)
    return beta not in reachable_sums(alphas, L.field)


# ---------------------------------------------------------------------------
# Frobenius-iteration refutation (shifted linear instances)

def _check_shifted(L: Poly, tower: FieldTower) -> tuple[list[FieldElem], FieldElem]:
    if L.field != tower.ext:
        raise ArityMismatch("shifted instance must live at the extension level")
    alphas, beta = _linear_parts(L)
    for a in alphas:
        if not tower.is_in_subfield(a):
            raise BetaInSubfield(
                "coefficient outside the base field; the Frobenius chain needs "
                "alpha_i in F_{p^k}"
            )
    if tower.is_in_subfield(beta):
        raise BetaInSubfield("beta lies in the base field")
    return alphas, beta


def frobenius_chain(L: Poly, tower: FieldTower):
    """Yield (j, L_j, A_j, B_j-list) satisfying
    L_j = A_j * L_0 + sum_i B_{j,i} (x_i^p - x_i) for j = 1..k."""
    alphas, beta = _check_shifted(L, tower)
    n, fld = L.n, L.field
    p, k = tower.p, tower.k

    def linear_of(coeffs, const):
        terms = {}
        for i, c in enumerate(coeffs):
            if not c.is_zero():
                e = tuple(1 if v == i else 0 for v in range(n))
                terms[e] = c
        poly = Poly(n, fld, terms)
        return poly + Poly.const(n, fld, const)

    cur_alphas = list(alphas)
    cur_beta = beta
    L_prev = linear_of(cur_alphas, -cur_beta)
    A = None
    B = [Poly.zero(n, fld) for _ in range(n)]
    for j in range(1, k + 1):
        step = L_prev ** (p - 1)
        A = step if A is None else A * step
        cur_alphas = [a ** p for a in cur_alphas]
        cur_beta = cur_beta ** p
        B = [b * step for b in B]
        for i, a in enumerate(cur_alphas):
            if not a.is_zero():
                B[i] = B[i] - Poly.const(n, fld, a)
        L_prev = linear_of(cur_alphas, -cur_beta)
        yield j, L_prev, A, list(B)


def refute_linear_frobenius(L: Poly, tower: FieldTower) -> Certificate:
    """Refutation of L = sum alpha_i x_i - beta (alpha in the base field,
    beta outside it) by iterating Frobenius powers of L; the final division by
    beta - beta^{p^k} turns the chain into an exact certificate, and each
    Fermat axiom is converted to the Boolean one through the geometric factor
    x^{p-2} + ... + 1.

    The chain recursion unrolls to A_k = prod_j L_j^{p-1} and
    B_{k,i} = -sum_l alpha_i^{p^l} C_l with C_l the suffix products of the
    L_j^{p-1}, so the B side needs no polynomial products of its own.
    """
    alphas, beta = _check_shifted(L, tower)
    n, fld = L.n, L.field
    p, k = tower.p, tower.k
    alpha_pows = [list(alphas)]
    beta_pows = [beta]
    for _ in range(k):
        alpha_pows.append([a ** p for a in alpha_pows[-1]])
        beta_pows.append(beta_pows[-1] ** p)

    def linear_of(j: int) -> Poly:
        terms = {}
        for i, a in enumerate(alpha_pows[j]):
            if not a.is_zero():
                terms[tuple(1 if v == i else 0 for v in range(n))] = a
        return Poly(n, fld, terms) + Poly.const(n, fld, -beta_pows[j])

    powers = [linear_of(j) ** (p - 1) for j in range(k)]
    suffix = [Poly.one(n, fld)] * (k + 1)
    for l in range(k - 1, 0, -1):
        suffix[l] = powers[l] * suffix[l + 1]
    A_k = powers[0] * suffix[1]
    denom = beta - beta_pows[k]
    if denom.is_zero():
        raise BetaInSubfield("beta^{p^k} = beta")
    scale = denom.inv()
    A = (A_k - Poly.one(n, fld)).scale(scale)
    B = []
    for i in range(n):
        acc = Poly.zero(n, fld)
        for l in range(1, k + 1):
            a = alpha_pows[l][i]
            if not a.is_zero():
                acc = acc + suffix[l].scale(a)
        bi = (-acc).scale(scale)
        if p > 2 and not bi.is_zero():
            bi = bi * _geom_quotient(n, fld, i, p)
        B.append(bi)
    return Certificate(
        [A], B,
        {"constructor": "linear_frobenius", "p": p, "k": k, "n": n},
    )


# ---------------------------------------------------------------------------
# sparse lifting through monomial axioms

def _geom_quotient(n: int, fld: FieldSpec, j: int, m: int) -> Poly:
    """(x_j^m - x_j) / (x_j^2 - x_j) = x_j^{m-2} + ... + x_j + 1 (zero for m <= 1)."""
    acc = Poly.zero(n, fld)
    for d in range(m - 1):
        acc = acc + (Poly.var(n, fld, j, d) if d else Poly.one(n, fld))
    return acc


def expand_monomial_axiom(mu: tuple[int, ...], n: int, fld: FieldSpec) -> list[Poly]:
    """E_1..E_n with (x^mu)^2 - x^mu = sum_j E_j (x_j^2 - x_j), peeling the
    largest-index variable first."""
    E = [Poly.zero(n, fld) for _ in range(n)]
    mu = list(mu)
    prefix = Poly.one(n, fld)
    while True:
        support = [j for j in range(n) if mu[j] > 0]
        if not support:
            return E
        t = support[-1]
        nu = list(mu)
        nu[t] = 0
        x_nu = Poly.monomial(n, fld, tuple(nu), fld.one())
        x_nu2 = Poly.monomial(n, fld, tuple(2 * v for v in nu), fld.one())
        e_t = _geom_quotient(n, fld, t, 2 * mu[t]) * x_nu2 \
            - _geom_quotient(n, fld, t, mu[t]) * x_nu
        E[t] = E[t] + prefix * e_t
        prefix = prefix * Poly.var(n, fld, t)
        mu = nu


def _substitute_monomials(poly_y: Poly, monomials: list[tuple[int, ...]],
                          n: int, fld: FieldSpec) -> Poly:
    """Plug x^{mu_i} in for y_i; exponents add linearly so no expansion blowup."""
    from ipsforge import _kernel as kn
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for e, c in poly_y.terms.items():
        new = [0] * n
        for idx, d in enumerate(e):
            if d:
                mu = monomials[idx]
                for v in range(n):
                    new[v] += d * mu[v]
        key = tuple(new)
        cur = out.get(key)
        out[key] = c.coeffs if cur is None else kn.vadd(cur, c.coeffs, fld.p)
    return Poly(n, fld, {e: FieldElem(fld, c) for e, c in out.items() if any(c)})


def refute_sparse(f: Poly, tower: FieldTower) -> Certificate:
    """Refutation of a sparse shifted instance f = sum alpha_mu x^mu - beta:
    flatten each support monomial to a fresh variable, refute the resulting
    linear instance by the Frobenius chain, substitute the monomials back, and
    expand every lifted Boolean axiom through the monomial-axiom identity."""
    n, fld = f.n, f.field
    support = sorted((e for e in f.terms if sum(e) > 0), key=lambda e: (sum(e), e))
    beta = -f.coeff((0,) * n)
    for e in support:
        if not tower.is_in_subfield(f.terms[e]):
            raise BetaInSubfield("monomial coefficient outside the base field")
    if tower.is_in_subfield(beta):
        raise BetaInSubfield("beta lies in the base field")
    s = len(support)
    flat_terms = {}
    for idx, e in enumerate(support):
        y_exp = tuple(1 if v == idx else 0 for v in range(s))
        flat_terms[y_exp] = f.terms[e]
    F = Poly(s, fld, flat_terms) + Poly.const(s, fld, -beta)
    flat_cert = refute_linear_frobenius(F, tower)
    A = _substitute_monomials(flat_cert.A[0], support, n, fld)
    B = [Poly.zero(n, fld) for _ in range(n)]
    for idx, mu in enumerate(support):
        b_mu = _substitute_monomials(flat_cert.B[idx], support, n, fld)
        if b_mu.is_zero():
            continue
        for j, e_j in enumerate(expand_monomial_axiom(mu, n, fld)):
            if not e_j.is_zero():
                B[j] = B[j] + b_mu * e_j
    return Certificate(
        [A], B,
        {"constructor": "sparse_lift", "p": tower.p, "k": tower.k, "n": n,
         "sparsity": s},
    )


# ---------------------------------------------------------------------------
# low-degree refutation for base-field linear instances

def ml_power_q_minus_2(L: Poly) -> Poly:
    """ml[L^{q-2}] without materializing the dense power: p-ary digits of q-2
    with multilinearization interleaved after every factor."""
    fld = L.field
    p = fld.p
    q = fld.order
    alphas, beta = _linear_parts(L)
    digits = []
    e = q - 2
    for _ in range(fld.k):
        digits.append(e % p)
        e //= p
    acc = Poly.one(L.n, fld)
    cur_alphas = list(alphas)
    cur_beta = beta
    for j, m_j in enumerate(digits):
        if j > 0:
            cur_alphas = [a ** p for a in cur_alphas]
            cur_beta = cur_beta ** p
        if m_j == 0:
            continue
        terms = {}
        for i, a in enumerate(cur_alphas):
            if not a.is_zero():
                terms[tuple(1 if v == i else 0 for v in range(L.n))] = a
        L_j = Poly(L.n, fld, terms) + Poly.const(L.n, fld, -cur_beta)
        for _ in range(m_j):
            acc = ml(acc * L_j)
    return acc


def refute_linear_lowdegree(L: Poly) -> Certificate:
    """Refutation of an unsatisfiable base-field linear instance with
    A = ml[L^{q-2}] of degree <= k(p-1); B_j come from sequential division of
    A*L by the Boolean axioms."""
    if not is_unsat_on_cube(L):
        raise SatisfiableInstance("instance has a Boolean zero")
    fld = L.field
    A = ml_power_q_minus_2(L)
    dec = divide_by_axioms(A * L, "boolean")
    if dec.remainder != Poly.one(L.n, fld):
        raise AssertionError("division remainder is not 1; A*L != 1 mod cube")
    B = [-q for q in dec.quotients]
    return Certificate(
        [A], B,
        {"constructor": "linear_lowdegree", "p": fld.p, "k": fld.k, "n": L.n},
    )


# ---------------------------------------------------------------------------
# generic bounded-degree Nullstellensatz solver

def _monomial_basis(n: int, max_deg: int, individual_cap: int | None):
    ranges = [range(min(max_deg, individual_cap) + 1 if individual_cap is not None
                    else max_deg + 1) for _ in range(n)]
    out = [e for e in itertools.product(*ranges) if sum(e) <= max_deg]
    out.sort(key=lambda e: (sum(e), e))
    return out


def solve_nullstellensatz(axioms: list[Poly], degree_bound: int, *,
                          include_boolean: bool = False,
                          individual_cap: int | None = None
                          ) -> Certificate | NoCertificateAtDegree:
    """Search for multipliers A_i of degree <= degree_bound with
    sum A_i f_i = 1, by exact linear algebra over the monomial basis.

    With include_boolean=True the Boolean axioms are appended internally and
    their multipliers returned as the certificate's B side. Returns
    NoCertificateAtDegree when the system is infeasible at this bound
    (monotone: feasible bounds are upward closed).
    """
    if degree_bound < 0:
        return NoCertificateAtDegree(degree_bound, "negative bound")
    n, fld = axioms[0].n, axioms[0].field
    all_axioms = list(axioms)
    if include_boolean:
        all_axioms += [boolean_axiom(n, fld, j) for j in range(n)]
    basis = _monomial_basis(n, degree_bound, individual_cap)
    columns = []
    row_index: dict[tuple[int, ...], int] = {}
    col_entries = []  # per column: list of (row, coeff tuple)
    for ax in all_axioms:
        for mono in basis:
            entries = []
            for e, c in ax.terms.items():
                key = tuple(a + b for a, b in zip(e, mono))
                row = row_index.setdefault(key, len(row_index))
                entries.append((row, c.coeffs))
            col_entries.append(entries)
            columns.append((ax, mono))
    nrows = len(row_index)
    zero = (0,) * fld.k
    matrix = [[zero] * len(columns) for _ in range(nrows)]
    from ipsforge import _kernel as kn
    for cidx, entries in enumerate(col_entries):
        for row, coeffs in entries:
            matrix[row][cidx] = kn.vadd(matrix[row][cidx], coeffs, fld.p) \
                if matrix[row][cidx] != zero else coeffs
    one_exp = (0,) * n
    rhs = [zero] * nrows
    if one_exp in row_index:
        rhs[row_index[one_exp]] = (1,) + (0,) * (fld.k - 1)
    else:
        return NoCertificateAtDegree(degree_bound, "constant row missing")
    solution = exactla.solve(matrix, rhs, fld)
    if solution is None:
        return NoCertificateAtDegree(degree_bound)
    multipliers = [Poly.zero(n, fld) for _ in all_axioms]
    per_axiom = len(basis)
    for cidx, coeffs in enumerate(solution):
        if any(coeffs):
            ax_idx = cidx // per_axiom
            mono = basis[cidx % per_axiom]
            multipliers[ax_idx] = multipliers[ax_idx] + Poly.monomial(
                n, fld, mono, FieldElem(fld, coeffs))
    if include_boolean:
        A, B = multipliers[:len(axioms)], multipliers[len(axioms):]
    else:
        A, B = multipliers, [Poly.zero(n, fld) for _ in range(n)]
    return Certificate(
        A, B,
        {"constructor": "nullstellensatz", "degree_bound": degree_bound,
         "include_boolean": include_boolean, "n": n},
    )


def minimum_certificate_degree(axioms: list[Poly], max_bound: int, *,
                               include_boolean: bool = True) -> tuple[int, Certificate] | None:
    """Smallest A-side degree at which a certificate exists, by an ascending
    bound sweep."""
    for bound in range(max_bound + 1):
        result = solve_nullstellensatz(axioms, bound, include_boolean=include_boolean)
        if isinstance(result, Certificate):
            return bound, result
    return None


# ---------------------------------------------------------------------------
# symmetric systems

def weight_values(f: Poly) -> list[FieldElem]:
    """f at the points 1^w 0^{n-w}; a symmetric polynomial is determined by these."""
    return [f.eval_cube_point((1 << w) - 1) for w in range(f.n + 1)]


def _solve_low_variate(axioms_y: list[Poly], r: int, fld: FieldSpec):
    """Multipliers with individual degree <= p-1 making sum M_i g_i = 1 hold
    modulo the Fermat ideal (y^p - y); exact linear algebra over the reduced
    monomial basis."""
    p = fld.p
    basis = list(itertools.product(range(p), repeat=r))
    basis.sort(key=lambda e: (sum(e), e))
    index = {e: i for i, e in enumerate(basis)}
    zero = (0,) * fld.k
    ncols = len(axioms_y) * len(basis)
    matrix = [[zero] * ncols for _ in range(len(basis))]
    from ipsforge import _kernel as kn
    for aidx, ax in enumerate(axioms_y):
        for midx, mono in enumerate(basis):
            shifted = Poly.monomial(r, fld, mono, fld.one()) * ax
            reduced, _ = inddeg_p(shifted)
            col = aidx * len(basis) + midx
            for e, c in reduced.terms.items():
                row = index[e]
                matrix[row][col] = kn.vadd(matrix[row][col], c.coeffs, fld.p)
    rhs = [zero] * len(basis)
    rhs[index[(0,) * r]] = (1,) + (0,) * (fld.k - 1)
    solution = exactla.solve(matrix, rhs, fld)
    if solution is None:
        return None
    multipliers = [Poly.zero(r, fld) for _ in axioms_y]
    for cidx, coeffs in enumerate(solution):
        if any(coeffs):
            aidx, midx = divmod(cidx, len(basis))
            multipliers[aidx] = multipliers[aidx] + Poly.monomial(
                r, fld, basis[midx], FieldElem(fld, coeffs))
    return multipliers


def refute_symmetric_system(system: list[Poly]) -> Certificate | NoCertificateAtDegree:
    """Refutation of a system of multilinear symmetric polynomials with no
    common Boolean zero.

    Pipeline: compress each axiom to r = floor(log_p n)+1 coordinates, adjoin
    the digit-dominance polynomials Q_t (n < t <= p^r - 1), solve the
    low-variate certificate modulo the Fermat ideal with individual degree
    <= p-1, lift A_i = ml[A~_i(e-hat)] back through weight-space arithmetic,
    and extract the Boolean quotients by exact division.
    """
    if not system:
        raise ArityMismatch("empty system")
    n, fld = system[0].n, system[0].field
    p = fld.p
    for f in system:
        if f.n != n or f.field != fld:
            raise ArityMismatch("system members disagree on arity or field")
    tables = [weight_values(f) for f in system]
    for w in range(n + 1):
        if all(t[w].is_zero() for t in tables):
            raise SatisfiableSystem(f"common zero at Hamming weight {w}")
    r = num_compressed_vars(n, p)
    compressed = [_compress(f) for f in system]
    m = len(system)
    q_polys = [qt_poly(t, r, p, fld) for t in range(n + 1, p ** r)]
    axioms_y = [c.poly for c in compressed] + q_polys
    multipliers = _solve_low_variate(axioms_y, r, fld)
    if multipliers is None:
        return NoCertificateAtDegree(p - 1, "low-variate solve failed at individual degree p-1")
    # Fermat-side quotients certify the exact low-variate identity.
    H = Poly.zero(r, fld)
    for mult, ax in zip(multipliers, axioms_y):
        H = H + mult * ax
    reduced, fermat_quotients = inddeg_p(H - Poly.one(r, fld))
    if not reduced.is_zero():
        raise AssertionError("low-variate certificate failed to reduce to 1")
    # Lift: A_i is the multilinear symmetric polynomial whose weight values
    # are A~_i evaluated at e-hat's weight values.
    ehat_values = [
        [binom_elem(w, p ** i, fld) for i in range(r)] for w in range(n + 1)
    ]
    A = []
    for mult in multipliers[:m]:
        values = [mult.eval(ehat_values[w]) for w in range(n + 1)]
        lambdas = _solve_weight_triangular(values, n, fld)
        A.append(ElemSymExpansion(n, fld, lambdas).to_poly())
    target = Poly.one(n, fld)
    for a, f in zip(A, system):
        target = target - a * f
    dec = divide_by_axioms(target, "boolean")
    if not dec.remainder.is_zero():
        raise AssertionError("lifted combination does not reduce to 1 on the cube")
    B = dec.quotients
    low_variate = {
        "A": [format_poly(mu, default_names(r, "y")) for mu in multipliers[:m]],
        "S": [format_poly(mu, default_names(r, "y")) for mu in multipliers[m:]],
        "B_fermat": [format_poly(g, default_names(r, "y")) for g in fermat_quotients],
    }
    return Certificate(
        A, B,
        {"constructor": "symmetric_pipeline", "p": p, "n": n, "r": r, "m": m,
         "low_variate": low_variate},
    )


# ---------------------------------------------------------------------------
# serialization

def certificate_to_dict(instance: Instance, cert: Certificate) -> dict:
    names = instance.var_names
    stats = cert_stats(cert)
    out = {
        "field": instance.field.text(),
        "n": instance.n,
        "var_names": list(names),
        "meta": instance.meta,
        "instance": [format_poly(f, names) for f in instance.axioms],
        "A": [format_poly(a, names) for a in cert.A],
        "B": [format_poly(b, names) for b in cert.B],
        "provenance": cert.provenance,
        "stats": stats.to_dict(),
    }
    if instance.tower is not None:
        out["tower"] = {
            "base": instance.tower.base.text(),
            "ext": instance.tower.ext.text(),
            "embed_table": [list(row) for row in instance.tower.embed_table],
        }
    return out


def certificate_from_dict(data: dict) -> tuple[Instance, Certificate]:
    fld = parse_field_spec(data["field"])
    n = data["n"]
    names = tuple(data["var_names"])
    tower = None
    if "tower" in data:
        tower = FieldTower(
            parse_field_spec(data["tower"]["base"]),
            parse_field_spec(data["tower"]["ext"]),
            tuple(tuple(row) for row in data["tower"]["embed_table"]),
        )
        if tower.ext != fld:
            raise FieldMismatch("tower extension differs from certificate field")
    axioms = [parse_poly(t, n, fld, names) for t in data["instance"]]
    instance = Instance(n, fld, axioms, data.get("meta", "generic"), tower, names)
    cert = Certificate(
        [parse_poly(t, n, fld, names) for t in data["A"]],
        [parse_poly(t, n, fld, names) for t in data["B"]],
        data.get("provenance", {}),
    )
    return instance, cert
