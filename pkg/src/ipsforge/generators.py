"""Seeded instance generators for the hard families.

All generators are deterministic functions of the supplied rng, so identical
run configurations reproduce identical instances byte for byte.
"""

from __future__ import annotations

from ipsforge.certificates import Instance, reachable_sums
from ipsforge.errors import SatisfiableInstance
from ipsforge.gf import FieldSpec, FieldTower
from ipsforge.mvpoly import Poly, default_names
from ipsforge.symfun import ElemSymExpansion


def _unit_exp(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if v == i else 0 for v in range(n))


def linear_shifted(tower: FieldTower, n: int, rng) -> Instance:
    """sum alpha_i x_i - beta with alpha in the base field, beta outside it;
    unsatisfiable over the cube by construction."""
    ext = tower.ext
    terms = {}
    for i in range(n):
        a = tower.embed(tower.base.sample(rng))
        if not a.is_zero():
            terms[_unit_exp(n, i)] = a
    beta = tower.sample_beta(rng)
    poly = Poly(n, ext, terms) + Poly.const(n, ext, -beta)
    return Instance(n, ext, [poly], "linear", tower)


def linear_base(fld: FieldSpec, n: int, rng, max_tries: int = 20) -> Instance:
    """Unsatisfiable sum alpha_i x_i - beta with every coefficient in the one
    field: random draws first, then a restricted draw whose subset sums cannot
    cover the field (alphas from the prime subfield, or a single unit)."""
    for attempt in range(max_tries + 1):
        if attempt < max_tries:
            alphas = [fld.sample(rng) for _ in range(n)]
        elif fld.k > 1:
            alphas = [fld.from_int(rng.randrange(fld.p)) for _ in range(n)]
        else:
            if fld.p == 2:
                raise SatisfiableInstance(
                    "every linear instance over F_2 has a Boolean zero"
                )
            alphas = [fld.zero()] * n
            alphas[rng.randrange(n)] = fld.one()
        sums = reachable_sums(alphas, fld)
        if len(sums) < fld.order:
            complement = sorted(
                (x for x in fld.elements() if x not in sums),
                key=lambda e: e.encoding(),
            )
            beta = complement[rng.randrange(len(complement))]
            terms = {_unit_exp(n, i): a for i, a in enumerate(alphas) if not a.is_zero()}
            poly = Poly(n, fld, terms) + Poly.const(n, fld, -beta)
            return Instance(n, fld, [poly], "linear")
    raise SatisfiableInstance("could not sample an unsatisfiable instance")


def sparse_quadratic(tower: FieldTower, nx: int, rng) -> Instance:
    """The lifted hard instance sum_{i<j} alpha_ij z_ij x_i x_j - beta, laid
    out as x_1..x_nx then z_1..z_{C(nx,2)} (pairs in lexicographic order)."""
    ext = tower.ext
    pairs = [(i, j) for i in range(nx) for j in range(i + 1, nx)]
    n = nx + len(pairs)
    terms = {}
    for idx, (i, j) in enumerate(pairs):
        a = tower.embed(tower.base.sample(rng))
        if a.is_zero():
            continue
        e = [0] * n
        e[i] = 1
        e[j] = 1
        e[nx + idx] = 1
        terms[tuple(e)] = a
    beta = tower.sample_beta(rng)
    poly = Poly(n, ext, terms) + Poly.const(n, ext, -beta)
    names = default_names(nx) + default_names(len(pairs), "z")
    return Instance(n, ext, [poly], "lifted-subset-sum", tower, names)


def symmetric_system(fld: FieldSpec, n: int, m: int, rng) -> Instance:
    """m random multilinear symmetric polynomials with no common cube zero.

    Weight-value tables determine such polynomials bijectively (triangular
    unit-diagonal map to the e-basis), so sampling each weight column
    uniformly conditioned on "not all m values zero" draws uniformly from the
    unsatisfiable systems and never needs a global resample.
    """
    from ipsforge.symfun import _solve_weight_triangular

    tables = [[None] * (n + 1) for _ in range(m)]
    for w in range(n + 1):
        while True:
            column = [fld.sample(rng) for _ in range(m)]
            if any(not v.is_zero() for v in column):
                break
        for i in range(m):
            tables[i][w] = column[i]
    system = []
    for i in range(m):
        lams = _solve_weight_triangular(tables[i], n, fld)
        system.append(ElemSymExpansion(n, fld, lams).to_poly())
    return Instance(n, fld, system, "symmetric-system")
