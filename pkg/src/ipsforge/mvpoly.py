"""Sparse multivariate polynomials over a FieldSpec field.

Terms map exponent vectors (tuples of non-negative ints) to nonzero field
elements, so equality is map equality and serialization is canonical. The
module carries the multilinearization operators, division by Boolean/Fermat
axioms with quotient tracking, cube interpolation, and the text grammar used
by every file format in the workbench.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ipsforge import _kernel as kn
from ipsforge.errors import ArityMismatch, ParseError, ZeroPolynomial
from ipsforge.gf import FieldElem, FieldSpec


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial in n variables over a fixed field."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, field: FieldSpec, terms: Mapping[tuple[int, ...], FieldElem]):
        self.n = n
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> "Poly":
        return cls(n, field, {})

    @classmethod
    def const(cls, n: int, field: FieldSpec, c: FieldElem) -> "Poly":
        return cls(n, field, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, field: FieldSpec) -> "Poly":
        return cls.const(n, field, field.one())

    @classmethod
    def var(cls, n: int, field: FieldSpec, i: int, exp: int = 1) -> "Poly":
        """The monomial x_{i+1}^exp (i is 0-based)."""
        if not 0 <= i < n:
            raise ArityMismatch(f"variable index {i} out of range for n={n}")
        e = tuple(exp if j == i else 0 for j in range(n))
        return cls(n, field, {e: field.one()})

    @classmethod
    def monomial(cls, n: int, field: FieldSpec, exp: tuple[int, ...], c: FieldElem) -> "Poly":
        return cls(n, field, {tuple(exp): c})

    # -- inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sparsity(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def individual_degree(self) -> int:
        return max((max(e) for e in self.terms), default=0) if self.n else 0

    def coeff(self, exp: tuple[int, ...]) -> FieldElem:
        return self.terms.get(tuple(exp), self.field.zero())

    def is_multilinear(self) -> bool:
        return all(all(x <= 1 for x in e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.n == other.n
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def _check(self, other: "Poly") -> None:
        if self.n != other.n or self.field != other.field:
            raise ArityMismatch(
                f"cannot combine polys over n={self.n},{self.field.text()} "
                f"and n={other.n},{other.field.text()}"
            )

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        p = self.field.p
        out = {e: c.coeffs for e, c in self.terms.items()}
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = c.coeffs if cur is None else kn.vadd(cur, c.coeffs, p)
        return self._from_raw(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        p = self.field.p
        return Poly(self.n, self.field,
                    {e: FieldElem(self.field, kn.vneg(c.coeffs, p))
                     for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        p, mod = self.field.p, self.field.modulus
        vmul, vadd = kn.vmul, kn.vadd
        out: dict[tuple[int, ...], tuple[int, ...]] = {}
        small, big = (self.terms, other.terms)
        if len(small) > len(big):
            small, big = big, small
        for e1, c1 in small.items():
            cc1 = c1.coeffs
            for e2, c2 in big.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod = vmul(cc1, c2.coeffs, p, mod)
                cur = out.get(key)
                out[key] = prod if cur is None else vadd(cur, prod, p)
        return self._from_raw(out)

    def scale(self, c: FieldElem) -> "Poly":
        if c.is_zero():
            return Poly.zero(self.n, self.field)
        p, mod = self.field.p, self.field.modulus
        return Poly(self.n, self.field,
                    {e: FieldElem(self.field, kn.vmul(x.coeffs, c.coeffs, p, mod))
                     for e, x in self.terms.items()})

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        result = Poly.one(self.n, self.field)
        acc = self
        while e:
            if e & 1:
                result = result * acc
            e >>= 1
            if e:
                acc = acc * acc
        return result

    def _from_raw(self, raw: Mapping[tuple[int, ...], tuple[int, ...]]) -> "Poly":
        field = self.field
        return Poly(self.n, field,
                    {e: FieldElem(field, c) for e, c in raw.items() if any(c)})

    # -- evaluation and substitution ----------------------------------------------

    def eval(self, point: Sequence[FieldElem]) -> FieldElem:
        """Direct monomial evaluation at a full point."""
        if len(point) != self.n:
            raise ArityMismatch(f"point has {len(point)} coordinates, expected {self.n}")
        field = self.field
        p, mod = field.p, field.modulus
        maxes = [0] * self.n
        for e in self.terms:
            for i, d in enumerate(e):
                if d > maxes[i]:
                    maxes[i] = d
        one = (1,) + (0,) * (field.k - 1)
        powers = []
        for i in range(self.n):
            row = [one]
            base = point[i].coeffs
            for _ in range(maxes[i]):
                row.append(kn.vmul(row[-1], base, p, mod))
            powers.append(row)
        acc = (0,) * field.k
        for e, c in self.terms.items():
            val = c.coeffs
            for i, d in enumerate(e):
                if d:
                    val = kn.vmul(val, powers[i][d], p, mod)
            acc = kn.vadd(acc, val, p)
        return FieldElem(field, acc)

    def eval_cube_point(self, mask: int) -> FieldElem:
        """Evaluation at the 0/1 point with bit i of mask giving x_{i+1}."""
        acc = (0,) * self.field.k
        p = self.field.p
        for e, c in self.terms.items():
            if all((mask >> i) & 1 or d == 0 for i, d in enumerate(e)):
                acc = kn.vadd(acc, c.coeffs, p)
        return FieldElem(self.field, acc)

    def substitute(self, assignments: Mapping[int, "Poly"]) -> "Poly":
        """Simultaneous substitution of polynomials for 0-based variables."""
        for i, g in assignments.items():
            if not 0 <= i < self.n:
                raise ArityMismatch(f"variable index {i} out of range")
            if g.n != self.n or g.field != self.field:
                raise ArityMismatch("substituted polynomial has different arity or field")
        out = Poly.zero(self.n, self.field)
        pow_cache: dict[tuple[int, int], Poly] = {}

        def cached_pow(i: int, d: int) -> Poly:
            key = (i, d)
            if key not in pow_cache:
                pow_cache[key] = assignments[i] ** d
            return pow_cache[key]

        for e, c in self.terms.items():
            residual = tuple(0 if i in assignments else d for i, d in enumerate(e))
            term = Poly.monomial(self.n, self.field, residual, c)
            for i, d in enumerate(e):
                if d and i in assignments:
                    term = term * cached_pow(i, d)
            out = out + term
        return out

    def restrict(self, values: Mapping[int, FieldElem]) -> "Poly":
        """Substitute constants for some variables (cheaper than substitute)."""
        field = self.field
        p, mod = field.p, field.modulus
        out: dict[tuple[int, ...], tuple[int, ...]] = {}
        for e, c in self.terms.items():
            val = c.coeffs
            key = list(e)
            dead = False
            for i, v in values.items():
                d = e[i]
                if d:
                    if v.is_zero():
                        dead = True
                        break
                    val = kn.vmul(val, kn.vpow(v.coeffs, d, p, mod), p, mod)
                key[i] = 0
            if dead:
                continue
            kt = tuple(key)
            cur = out.get(kt)
            out[kt] = val if cur is None else kn.vadd(cur, val, p)
        return self._from_raw(out)


# ---------------------------------------------------------------------------
# multilinearization

def ml(f: Poly) -> Poly:
    """Clamp every positive exponent to 1; agrees with f on the cube."""
    return ml_partial(f, range(f.n))


def ml_partial(f: Poly, variables: Iterable[int]) -> Poly:
    vs = set(variables)
    p = f.field.p
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for e, c in f.terms.items():
        key = tuple(min(d, 1) if i in vs else d for i, d in enumerate(e))
        cur = out.get(key)
        out[key] = c.coeffs if cur is None else kn.vadd(cur, c.coeffs, p)
    return f._from_raw(out)


@dataclass
class QuotientDecomposition:
    """f = remainder + sum_j quotients[j] * (x_j^e - x_j), term-exact."""

    remainder: Poly
    quotients: list[Poly]
    axiom_kind: str  # "boolean" (e = 2) or "fermat" (e = p)

    def recompose(self) -> Poly:
        n, field = self.remainder.n, self.remainder.field
        e = 2 if self.axiom_kind == "boolean" else field.p
        acc = self.remainder
        for j, q in enumerate(self.quotients):
            if q.is_zero():
                continue
            axiom = Poly.var(n, field, j, e) - Poly.var(n, field, j)
            acc = acc + q * axiom
        return acc


def divide_by_axioms(f: Poly, axiom_kind: str = "boolean") -> QuotientDecomposition:
    """Sequential division by x_j^e - x_j, j ascending (e = 2 or p).

    Remainder has individual degree < e and the reconstruction identity is
    term-exact.
    """
    if axiom_kind == "boolean":
        e = 2
    elif axiom_kind == "fermat":
        e = f.field.p
    else:
        raise ValueError(f"unknown axiom kind {axiom_kind!r}")
    field = f.field
    p = field.p
    rem = {exp: c.coeffs for exp, c in f.terms.items()}
    quotients = []
    for j in range(f.n):
        qj: dict[tuple[int, ...], tuple[int, ...]] = {}
        new_rem: dict[tuple[int, ...], tuple[int, ...]] = {}

        def put(table, key, val):
            cur = table.get(key)
            table[key] = val if cur is None else kn.vadd(cur, val, p)

        for exp, c in rem.items():
            d = exp[j]
            while d >= e:
                put(qj, exp[:j] + (d - e,) + exp[j + 1:], c)
                d -= e - 1
            put(new_rem, exp[:j] + (d,) + exp[j + 1:], c)
        rem = {k: v for k, v in new_rem.items() if any(v)}
        quotients.append(Poly(f.n, field,
                              {k: FieldElem(field, v) for k, v in qj.items() if any(v)}))
    remainder = Poly(f.n, field, {k: FieldElem(field, v) for k, v in rem.items()})
    return QuotientDecomposition(remainder, quotients, axiom_kind)


def inddeg_p(f: Poly) -> tuple[Poly, list[Poly]]:
    """Reduce every exponent below the characteristic via y^p -> y, returning
    the reduction and the Fermat quotients G_j with
    f = reduced + sum G_j (y_j^p - y_j)."""
    dec = divide_by_axioms(f, "fermat")
    return dec.remainder, dec.quotients


# ---------------------------------------------------------------------------
# cube interpolation and leading monomials

def cube_interpolate(values: Sequence[FieldElem], n: int, field: FieldSpec) -> Poly:
    """Unique multilinear polynomial matching a full 2^n table.

    values[mask] is the value at the 0/1 point with bit i of mask = x_{i+1};
    coefficients come from Moebius inversion over the subset lattice.
    """
    if len(values) != 1 << n:
        raise ArityMismatch(f"table has {len(values)} entries, expected {1 << n}")
    p = field.p
    c = [v.coeffs for v in values]
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                c[mask] = kn.vsub(c[mask], c[mask ^ bit], p)
    terms = {}
    for mask in range(1 << n):
        if any(c[mask]):
            exp = tuple((mask >> i) & 1 for i in range(n))
            terms[exp] = FieldElem(field, c[mask])
    return Poly(n, field, terms)


def leading_monomial(f: Poly) -> tuple[int, ...]:
    """Maximal exponent vector under graded lexicographic order (total degree
    first, ties broken left-to-right on variable index)."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial has no leading monomial")
    return max(f.terms, key=_grlex_key)


# ---------------------------------------------------------------------------
# text grammar
#
#   poly  := term (("+" | "-") term)*
#   term  := factor ("*" factor)*
#   factor:= coeff | var ("^" exp)?
#   coeff := decimal | "[" c0 "," c1 "," ... "]"
#   var   := (x|y|z)<idx>   (1-based into the declared name list)
#
# Canonical output is grlex-descending with explicit coefficients and
# exponents, so equal polynomials serialize to identical bytes.

def default_names(n: int, letter: str = "x") -> tuple[str, ...]:
    return tuple(f"{letter}{i + 1}" for i in range(n))


def format_elem(c: FieldElem) -> str:
    if c.spec.k == 1:
        return str(c.coeffs[0])
    return "[" + ",".join(map(str, c.coeffs)) + "]"


def format_poly(f: Poly, names: Sequence[str] | None = None) -> str:
    if f.is_zero():
        return "0"
    names = names or default_names(f.n)
    parts = []
    for exp in sorted(f.terms, key=_grlex_key, reverse=True):
        c = f.terms[exp]
        factors = [format_elem(c)]
        for i, d in enumerate(exp):
            if d:
                factors.append(f"{names[i]}^{d}")
        parts.append("*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(\[[-\d,\s]*\]|\d+|[A-Za-z]\w*|\^|\*|\+|-)")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos)
        out.append((m.group(1), pos))
        pos = m.end()
    return out


def parse_poly(text: str, n: int, field: FieldSpec,
               names: Sequence[str] | None = None) -> Poly:
    """Parse the term grammar; lenient about omitted coefficients/exponents."""
    names = list(names or default_names(n))
    if len(names) != n:
        raise ArityMismatch(f"{len(names)} names declared for {n} variables")
    index = {nm: i for i, nm in enumerate(names)}
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    result = Poly.zero(n, field)
    i = 0
    sign = 1
    first = True
    while i < len(toks):
        tok, pos = toks[i]
        if tok in "+-":
            if not first and i + 1 >= len(toks):
                raise ParseError("dangling sign", column=pos)
            sign = 1 if tok == "+" else -1
            i += 1
            continue
        coeff = field.one()
        exp = [0] * n
        expect_factor = True
        while i < len(toks):
            tok, pos = toks[i]
            if tok in "+-" and not expect_factor:
                break
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if tok.startswith("["):
                vals = [int(v) for v in tok[1:-1].split(",") if v.strip()]
                if len(vals) != field.k:
                    raise ParseError(
                        f"coefficient has {len(vals)} components, field degree is {field.k}",
                        column=pos)
                coeff = coeff * field.from_coeffs(vals)
                i += 1
            elif tok.isdigit():
                coeff = coeff * field.from_int(int(tok))
                i += 1
            elif tok in index:
                v = index[tok]
                d = 1
                i += 1
                if i < len(toks) and toks[i][0] == "^":
                    if i + 1 >= len(toks) or not toks[i + 1][0].isdigit():
                        raise ParseError("expected exponent after ^", column=toks[i][1])
                    d = int(toks[i + 1][0])
                    i += 2
                exp[v] += d
            else:
                raise ParseError(f"unknown token {tok!r}", column=pos)
            expect_factor = False
        if sign < 0:
            coeff = -coeff
        result = result + Poly.monomial(n, field, tuple(exp), coeff)
        sign = 1
        first = False
    return result
