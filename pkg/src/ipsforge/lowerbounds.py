"""Brute-force oracles for the degree / coefficient-dimension lower bounds.

Everything here is desk scale and exact: multilinear inverses of subset-sum
instances by cube interpolation, top-coefficient cross-checks, seeded degree
trials against the stated probability bounds, sparsity probes, Nisan
coefficient matrices with exact rank, evaluation dimension, and roABP width.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from ipsforge import _kernel as kn
from ipsforge import exactla
from ipsforge.errors import BudgetExceeded, ZeroDenominator
from ipsforge.gf import FieldElem, FieldSpec, FieldTower
from ipsforge.mvpoly import Poly, cube_interpolate, default_names


def budget_n(default: int = 12) -> int:
    """Cube-enumeration cap; override with IPSFORGE_BUDGET_N."""
    value = os.environ.get("IPSFORGE_BUDGET_N")
    return int(value) if value else default


def _check_budget(n: int, cap: int | None = None, what: str = "cube enumeration"):
    cap = budget_n() if cap is None else cap
    if n > cap:
        raise BudgetExceeded(f"{what} needs n <= {cap}, got n = {n}")


# ---------------------------------------------------------------------------
# subset-sum denominators and the multilinear inverse

@dataclass
class CubeTable:
    """Complete table of 2^n field values indexed by cube masks."""

    n: int
    values: list[FieldElem]


def _normalize_alphas(alphas: Sequence[FieldElem], beta: FieldElem,
                      tower: FieldTower | None) -> list[FieldElem]:
    out = []
    for a in alphas:
        if a.spec == beta.spec:
            out.append(a)
        elif tower is not None and a.spec == tower.base and beta.spec == tower.ext:
            out.append(tower.embed(a))
        else:
            raise ZeroDenominator(
                "alphas and beta live in different fields and no tower was given"
            )
    return out


def subset_sum_table(alphas: Sequence[FieldElem], beta: FieldElem,
                     tower: FieldTower | None = None) -> CubeTable:
    """denominators sum_{i in mask} alpha_i - beta for every mask."""
    alphas = _normalize_alphas(alphas, beta, tower)
    n = len(alphas)
    _check_budget(n)
    fld = beta.spec
    p = fld.p
    vals = [kn.vneg(beta.coeffs, p)] * (1 << n)
    for i, a in enumerate(alphas):
        bit = 1 << i
        ac = a.coeffs
        for mask in range(bit, 1 << n):
            if mask & bit:
                vals[mask] = kn.vadd(vals[mask ^ bit], ac, p)
    return CubeTable(n, [FieldElem(fld, v) for v in vals])


def _batch_inverse(values: list[FieldElem]) -> list[FieldElem]:
    """Montgomery trick: one field inversion for the whole batch."""
    fld = values[0].spec
    prefix = [fld.one()]
    for v in values:
        prefix.append(prefix[-1] * v)
    inv_all = prefix[-1].inv()
    out = [fld.zero()] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * inv_all
        inv_all = inv_all * values[i]
    return out


def ml_inverse(alphas: Sequence[FieldElem], beta: FieldElem,
               tower: FieldTower | None = None) -> Poly:
    """The unique multilinear polynomial agreeing with
    1 / (sum alpha_i x_i - beta) on the cube."""
    table = subset_sum_table(alphas, beta, tower)
    for mask, v in enumerate(table.values):
        if v.is_zero():
            raise ZeroDenominator(f"denominator vanishes at mask {mask:b}")
    invs = _batch_inverse(table.values)
    return cube_interpolate(invs, table.n, beta.spec)


def alternating_cube_sum(f: Poly) -> FieldElem:
    """sum_a (-1)^{n-|a|} f(a): the x_[n] coefficient of the multilinear
    extension, signed so the identity is exact in every characteristic."""
    fld = f.field
    acc = fld.zero()
    for mask in range(1 << f.n):
        v = f.eval_cube_point(mask)
        acc = acc + (-v if (f.n - bin(mask).count("1")) % 2 else v)
    return acc


@dataclass
class TopCoeffReport:
    alternating_sum: FieldElem
    rational_sum: FieldElem
    interpolated: FieldElem

    @property
    def agree(self) -> bool:
        return self.alternating_sum == self.rational_sum == self.interpolated


def top_coeff(alphas: Sequence[FieldElem], beta: FieldElem,
              tower: FieldTower | None = None) -> TopCoeffReport:
    """The x_[n] coefficient three ways: alternating sum of polynomial
    evaluations, the closed-form rational sum over subsets
    sum_V (-1)^{n-|V|}/(sum_V - beta), and the interpolated coefficient."""
    table = subset_sum_table(alphas, beta, tower)
    n, fld = table.n, beta.spec
    for v in table.values:
        if v.is_zero():
            raise ZeroDenominator("denominator vanishes on the cube")
    poly = cube_interpolate(_batch_inverse(table.values), n, fld)
    rational = fld.zero()
    for mask, v in enumerate(table.values):
        term = v.inv()
        rational = rational + (-term if (n - bin(mask).count("1")) % 2 else term)
    return TopCoeffReport(alternating_cube_sum(poly), rational, poly.coeff((1,) * n))


# ---------------------------------------------------------------------------
# the numerator monomial claim

def numerator_monomial_check(n: int, fld: FieldSpec,
                             beta: FieldElem | None = None,
                             cap: int = 5) -> FieldElem:
    """Coefficient of prod_i z_i^{2^{i-1}} in prod_{T != empty} (L_T(z) - beta),
    extracted by dynamic programming over partial exponent vectors (the beta
    branch can never complete the full-degree monomial, so the value is
    independent of beta)."""
    _check_budget(n, cap, "symbolic numerator expansion")
    beta = beta if beta is not None else fld.one()
    target = tuple(1 << i for i in range(n))
    p = fld.p
    zero = (0,) * fld.k
    one = (1,) + (0,) * (fld.k - 1)
    neg_beta = kn.vneg(beta.coeffs, p)
    states: dict[tuple[int, ...], tuple[int, ...]] = {(0,) * n: one}
    factors = [
        [i for i in range(n) if (tmask >> i) & 1] for tmask in range(1, 1 << n)
    ]
    for remaining, members in enumerate(factors):
        budget_left = len(factors) - remaining  # factors still to consume
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}

        def put(key, val):
            cur = nxt.get(key)
            nxt[key] = val if cur is None else kn.vadd(cur, val, p)

        for state, coeff in states.items():
            deficit = sum(t - s for t, s in zip(target, state))
            if deficit > budget_left:
                continue
            for i in members:
                if state[i] < target[i]:
                    put(state[:i] + (state[i] + 1,) + state[i + 1:], coeff)
            if deficit < budget_left and any(neg_beta):
                put(state, kn.vmul(coeff, neg_beta, p, fld.modulus))
        states = nxt
    return FieldElem(fld, states.get(target, zero))


# ---------------------------------------------------------------------------
# seeded degree trials

@dataclass
class TrialReport:
    trials: int
    successes: int
    parameters: dict
    bound: float
    bound_exact_union: float | None = None
    failures: list = dc_field(default_factory=list)

    @property
    def empirical_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    @property
    def vacuous(self) -> bool:
        return self.bound <= 0.0

    def sigma(self) -> float:
        b = min(max(self.bound, 0.0), 1.0)
        return math.sqrt(b * (1.0 - b) / self.trials) if self.trials else 0.0

    def passes(self, n_sigma: float = 3.0) -> bool:
        return self.vacuous or self.empirical_rate >= self.bound - n_sigma * self.sigma()

    def to_dict(self) -> dict:
        out = {
            "trials": self.trials,
            "successes": self.successes,
            "empirical_rate": self.empirical_rate,
            "bound": self.bound,
            "vacuous": self.vacuous,
            "parameters": self.parameters,
        }
        if self.bound_exact_union is not None:
            out["bound_exact_union"] = self.bound_exact_union
        return out


def degree_trial(n: int, tower: FieldTower, trials: int, seed: int,
                 scan_all: bool = False) -> TrialReport:
    """Empirical rate of deg(ml_inverse) = n for uniform base-field alphas
    and beta outside the base field, against the stated probability bound.

    With scan_all=True the success event is deg = |U| for every nonempty
    restriction U simultaneously (the union-bound lemma); the report then
    carries both the exact union sum and the 2^{2n} bound.
    """
    import random

    rng = random.Random(seed)
    size = tower.base.order
    successes = 0
    for _ in range(trials):
        alphas = [tower.base.sample(rng) for _ in range(n)]
        beta = tower.sample_beta(rng)
        if scan_all:
            report = restricted_degree_scan(alphas, beta, tower)
            successes += report.all_full
        else:
            successes += ml_inverse(alphas, beta, tower).degree() == n
    if scan_all:
        bound = 1.0 - (2.0 ** (2 * n)) / size
        exact = 1.0 - sum(
            (2.0 ** len(u) - 1.0) / size
            for r in range(1, n + 1) for u in itertools.combinations(range(n), r)
        )
    else:
        bound = 1.0 - (2.0 ** n - 1.0) / size
        exact = None
    return TrialReport(
        trials, successes,
        {"n": n, "p": tower.p, "k": tower.k, "seed": seed, "scan_all": scan_all},
        bound, exact,
    )


@dataclass
class ScanReport:
    all_full: bool
    checked: int
    failing: list[tuple[int, ...]]

    @property
    def worst(self) -> tuple[int, ...] | None:
        """A failing restriction of maximal size, if any."""
        return max(self.failing, key=len, default=None)


def restricted_degree_scan(alphas: Sequence[FieldElem], beta: FieldElem,
                           tower: FieldTower | None = None) -> ScanReport:
    """Check deg(ml_inverse of the restriction to U) = |U| for every nonempty
    U, reporting the degenerate restrictions."""
    alphas = _normalize_alphas(alphas, beta, tower)
    n = len(alphas)
    _check_budget(n)
    failing = []
    count = 0
    for r in range(1, n + 1):
        for u in itertools.combinations(range(n), r):
            count += 1
            sub = [alphas[i] for i in u]
            if ml_inverse(sub, beta).degree() != r:
                failing.append(u)
    return ScanReport(not failing, count, failing)


def sparsity_probe(alphas: Sequence[FieldElem], beta: FieldElem,
                   tower: FieldTower | None = None) -> tuple[int, float]:
    """(sparsity of ml_inverse, the 2^{n/4 - 1} bound)."""
    alphas = _normalize_alphas(alphas, beta, tower)
    n = len(alphas)
    poly = ml_inverse(alphas, beta)
    return poly.sparsity(), 2.0 ** (n / 4.0 - 1.0)


# ---------------------------------------------------------------------------
# coefficient matrices, evaluation dimension, roABP width

@dataclass
class CoefficientMatrix:
    """Nisan matrix under a variable partition: entry(m, m') is the
    coefficient of m * m' in the source polynomial."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    row_index: list[tuple[int, ...]]   # exponents over left variables
    col_index: list[tuple[int, ...]]   # exponents over right variables
    entries: list[list[FieldElem]]
    field: FieldSpec

    def rank(self) -> int:
        if not self.row_index or not self.col_index:
            return 0
        return exactla.rank([[c.coeffs for c in row] for row in self.entries],
                            self.field)

    def to_csv(self) -> str:
        from ipsforge.mvpoly import format_elem
        lines = []
        for row in self.entries:
            lines.append(",".join(format_elem(c) for c in row))
        return "\n".join(lines) + "\n"


def coefficient_matrix(f: Poly, partition: tuple[Sequence[int], Sequence[int]]
                       ) -> CoefficientMatrix:
    """Build the full coefficient matrix of f under (left, right); index
    ranges extend past 0/1 when f has higher individual degrees."""
    left, right = tuple(partition[0]), tuple(partition[1])
    if set(left) | set(right) != set(range(f.n)) or set(left) & set(right):
        raise ValueError("partition must split the variable set")
    max_deg = [0] * f.n
    for e in f.terms:
        for i, d in enumerate(e):
            max_deg[i] = max(max_deg[i], d)
    row_index = sorted(itertools.product(*(range(max_deg[i] + 1) for i in left)))
    col_index = sorted(itertools.product(*(range(max_deg[i] + 1) for i in right)))
    if len(row_index) > 1 << budget_n() or len(col_index) > 1 << budget_n():
        raise BudgetExceeded("coefficient matrix side exceeds the cube budget")
    rows = {e: i for i, e in enumerate(row_index)}
    cols = {e: i for i, e in enumerate(col_index)}
    zero = f.field.zero()
    entries = [[zero] * len(col_index) for _ in row_index]
    for e, c in f.terms.items():
        re = tuple(e[i] for i in left)
        ce = tuple(e[i] for i in right)
        entries[rows[re]][cols[ce]] = c
    return CoefficientMatrix(left, right, row_index, col_index, entries, f.field)


def eval_dimension(f: Poly, partition: tuple[Sequence[int], Sequence[int]],
                   domain: Iterable[FieldElem] | None = None) -> int:
    """Dimension of the span of {f(left, b)} over right-side assignments b
    from the domain (default {0,1}); never exceeds the coefficient rank."""
    left, right = tuple(partition[0]), tuple(partition[1])
    fld = f.field
    points = list(domain) if domain is not None else [fld.zero(), fld.one()]
    _check_budget(len(right) * max(1, len(points) // 2), what="restriction enumeration")
    mono_index: dict[tuple[int, ...], int] = {}
    vectors = []
    for assignment in itertools.product(points, repeat=len(right)):
        g = f.restrict(dict(zip(right, assignment)))
        vec: dict[int, tuple] = {}
        for e, c in g.terms.items():
            key = tuple(e[i] for i in left)
            idx = mono_index.setdefault(key, len(mono_index))
            vec[idx] = c.coeffs
        vectors.append(vec)
    if not mono_index:
        return 1 if any(vec for vec in vectors) else 0
    zero = (0,) * fld.k
    matrix = [[vec.get(i, zero) for i in range(len(mono_index))] for vec in vectors]
    return exactla.rank(matrix, fld)


def roabp_width(f: Poly, order: Sequence[int]) -> int:
    """Exact optimal roABP width in the given variable order: the maximum of
    the coefficient-matrix rank over every prefix cut."""
    order = list(order)
    if sorted(order) != list(range(f.n)):
        raise ValueError("order must be a permutation of the variables")
    width = 0
    for i in range(1, f.n + 1):
        cut = coefficient_matrix(f, (order[:i], order[i:]))
        width = max(width, cut.rank())
    return width


# ---------------------------------------------------------------------------
# lifted hard instances

@dataclass
class LiftedInstance:
    """A lifted subset-sum instance plus its restriction helpers."""

    kind: str                      # "fixed-order" | "any-order"
    nx: int                        # the lemma's n
    n_vars: int
    poly: Poly
    alphas: dict
    beta: FieldElem
    var_names: tuple[str, ...]
    tower: FieldTower | None = None

    # fixed-order helpers ----------------------------------------------------

    def x_vars(self) -> list[int]:
        return list(range(self.nx if self.kind == "fixed-order" else 2 * self.nx))

    def y_vars(self) -> list[int]:
        if self.kind != "fixed-order":
            raise ValueError("y_vars applies to fixed-order instances")
        return list(range(self.nx, 2 * self.nx))

    # any-order helpers ------------------------------------------------------

    def z_pairs(self) -> list[tuple[int, int]]:
        if self.kind != "any-order":
            raise ValueError("z_pairs applies to any-order instances")
        m = 2 * self.nx
        return [(i, j) for i in range(m) for j in range(i + 1, m)]

    def balanced_partitions(self):
        """All balanced splits (u, v) of the x variables, u ascending and
        containing x_1 (complement symmetry removed), each v ascending."""
        m = 2 * self.nx
        for rest in itertools.combinations(range(1, m), self.nx - 1):
            u = (0,) + rest
            v = tuple(i for i in range(m) if i not in u)
            yield u, v

    def restriction_assignment(self, u: Sequence[int], v: Sequence[int]) -> dict[int, FieldElem]:
        """The 0/1 z-assignment b_{u,v} pairing u_k with v_k (both ascending);
        exactly nx ones."""
        fld = self.poly.field
        pairs = {tuple(sorted((a, b))) for a, b in zip(u, v)}
        out = {}
        m = 2 * self.nx
        for idx, (i, j) in enumerate(self.z_pairs()):
            out[m + idx] = fld.one() if (i, j) in pairs else fld.zero()
        return out

    def restricted(self, u: Sequence[int], v: Sequence[int]) -> Poly:
        """Substitute b_{u,v}: the instance collapses to
        sum_k alpha_{u_k v_k} x_{u_k} x_{v_k} - beta."""
        return self.poly.restrict(self.restriction_assignment(u, v))


def lifted_instance(kind: str, n: int, tower: FieldTower, rng) -> LiftedInstance:
    """Seeded hard instance: fixed-order sum alpha_i x_i y_i - beta, or the
    any-order variant sum alpha_ij z_ij x_i x_j - beta over 2n x-variables."""
    ext = tower.ext
    beta = tower.sample_beta(rng)
    if kind == "fixed-order":
        n_vars = 2 * n
        alphas = {}
        terms = {}
        for i in range(n):
            a = tower.embed(tower.base.sample(rng))
            alphas[i] = a
            if a.is_zero():
                continue
            e = [0] * n_vars
            e[i] = 1
            e[n + i] = 1
            terms[tuple(e)] = a
        poly = Poly(n_vars, ext, terms) + Poly.const(n_vars, ext, -beta)
        names = default_names(n) + default_names(n, "y")
        return LiftedInstance(kind, n, n_vars, poly, alphas, beta, names, tower)
    if kind == "any-order":
        m = 2 * n
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        n_vars = m + len(pairs)
        alphas = {}
        terms = {}
        for idx, (i, j) in enumerate(pairs):
            a = tower.embed(tower.base.sample(rng))
            alphas[(i, j)] = a
            if a.is_zero():
                continue
            e = [0] * n_vars
            e[i] = 1
            e[j] = 1
            e[m + idx] = 1
            terms[tuple(e)] = a
        poly = Poly(n_vars, ext, terms) + Poly.const(n_vars, ext, -beta)
        names = default_names(m) + default_names(len(pairs), "z")
        return LiftedInstance(kind, n, n_vars, poly, alphas, beta, names, tower)
    raise ValueError(f"unknown lifted instance kind {kind!r}")
