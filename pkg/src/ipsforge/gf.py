"""Exact arithmetic in F_p, F_{p^k} and F_{p^{2k}}, arranged as a two-level tower.

Elements are dense coefficient vectors over F_p reduced modulo a monic
irreducible, so every operation is exact. Moduli are found by a deterministic
search (ascending integer encoding sum(c_i p^i), first irreducible wins) and
recorded in the FieldSpec, which makes every serialized artifact portable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from ipsforge import _kernel as kn
from ipsforge.errors import (
    DegenerateTower,
    LevelMismatch,
    ParseError,
    ZeroInverse,
)

BASE = "base"
EXT = "ext"


# ---------------------------------------------------------------------------
# primality and prime-field univariate helpers (modulus search)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """a*b mod f over F_p[X]; f monic."""
    if not a or not b:
        return []
    conv = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] = (conv[i + j] + ai * bj) % p
    df = len(f) - 1
    for i in range(len(conv) - 1, df - 1, -1):
        c = conv[i]
        if c:
            base = i - df
            for j in range(df):
                conv[base + j] = (conv[base + j] - c * f[j]) % p
            conv[i] = 0
    return _fp_trim(conv[:df])


def _fp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    acc = list(a)
    while e:
        if e & 1:
            result = _fp_mulmod(result, acc, f, p)
        e >>= 1
        if e:
            acc = _fp_mulmod(acc, acc, f, p)
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        inv_lead = pow(b[-1], -1, p)
        db = len(b) - 1
        r = list(a)
        while len(r) - 1 >= db and r:
            c = (r[-1] * inv_lead) % p
            shift = len(r) - 1 - db
            if c:
                for j in range(db + 1):
                    r[shift + j] = (r[shift + j] - c * b[j]) % p
            r = _fp_trim(r)
            if not r:
                break
        a, b = b, r
    return a


def _is_irreducible(modulus: tuple[int, ...], p: int, k: int) -> bool:
    """f of degree k is irreducible over F_p iff it has no factor of degree
    <= k/2, detected by gcd(X^{p^i} - X, f) for 1 <= i <= k/2."""
    if k == 1:
        return True
    f = list(modulus)
    if f[0] == 0:
        return False
    h = [0, 1]  # X
    for _ in range(k // 2):
        h = _fp_powmod(h, p, f, p)
        g = list(h)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if _fp_trim(g) and len(_fp_gcd(f, g, p)) > 1:
            return False
        if not _fp_trim(list(g)):
            # X^{p^i} = X: every element of F_{p^i} is a root; reducible
            # unless i = k, which cannot happen with i <= k/2 < k.
            return False
    return True


# ---------------------------------------------------------------------------
# field specs

@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_{p^k} presented as F_p[t]/(modulus)."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree exactly k")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must be reduced mod p")
        if not _is_irreducible(self.modulus, self.p, self.k):
            raise ValueError("modulus is reducible")

    @property
    def order(self) -> int:
        return self.p ** self.k

    # -- element constructors ------------------------------------------------

    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.k)

    def one(self) -> "FieldElem":
        return FieldElem(self, (1,) + (0,) * (self.k - 1))

    def gen(self) -> "FieldElem":
        """The residue class of t (equals 0 when k = 1)."""
        if self.k == 1:
            return self.zero()
        return FieldElem(self, (0, 1) + (0,) * (self.k - 2))

    def from_int(self, n: int) -> "FieldElem":
        """Prime-subfield constant n mod p."""
        return FieldElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_coeffs(self, coeffs) -> "FieldElem":
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(c)}")
        return FieldElem(self, c)

    def from_encoding(self, m: int) -> "FieldElem":
        """Element with coefficient vector = base-p digits of m (c0 first)."""
        if not 0 <= m < self.order:
            raise ValueError("encoding out of range")
        c = []
        for _ in range(self.k):
            c.append(m % self.p)
            m //= self.p
        return FieldElem(self, tuple(c))

    def elements(self) -> Iterator["FieldElem"]:
        """All field elements in ascending encoding order."""
        for m in range(self.order):
            yield self.from_encoding(m)

    def sample(self, rng) -> "FieldElem":
        return FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def text(self) -> str:
        return f"GF({self.p}^{self.k}){{modulus={','.join(map(str, self.modulus))}}}"


@lru_cache(maxsize=None)
def field_spec(p: int, k: int) -> FieldSpec:
    """F_{p^k} with the first irreducible modulus in encoding order."""
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for tail in _encoding_tails(p, k):
        modulus = tail + (1,)
        if tail[0] != 0 and _is_irreducible(modulus, p, k):
            return FieldSpec(p, k, modulus)
    raise AssertionError("no irreducible found")  # unreachable: they exist


def _encoding_tails(p: int, k: int) -> Iterator[tuple[int, ...]]:
    for m in itertools.count():
        if m >= p ** k:
            return
        digits = []
        mm = m
        for _ in range(k):
            digits.append(mm % p)
            mm //= p
        yield tuple(digits)


def parse_field_spec(text: str) -> FieldSpec:
    """Inverse of FieldSpec.text()."""
    try:
        head, mod_part = text.split("{modulus=")
        assert head.startswith("GF(") and mod_part.endswith("}")
        pk = head[3:].rstrip(")")
        p_s, k_s = pk.split("^") if "^" in pk else (pk, "1")
        coeffs = tuple(int(c) for c in mod_part[:-1].split(","))
        return FieldSpec(int(p_s), int(k_s), coeffs)
    except (ValueError, AssertionError) as exc:
        raise ParseError(f"bad field spec {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# field elements

class FieldElem:
    """Immutable element of a FieldSpec field; a thin wrapper over the
    coefficient tuple so arithmetic stays kernel-backed."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    # -- helpers --------------------------------------------------------------

    def _check(self, other: "FieldElem") -> None:
        if self.spec is not other.spec and self.spec != other.spec:
            raise LevelMismatch(
                f"cannot combine {self.spec.text()} with {other.spec.text()}"
            )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def encoding(self) -> int:
        m = 0
        for c in reversed(self.coeffs):
            m = m * self.spec.p + c
        return m

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.spec, kn.vadd(self.coeffs, other.coeffs, self.spec.p))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.spec, kn.vsub(self.coeffs, other.coeffs, self.spec.p))

    def __neg__(self):
        return FieldElem(self.spec, kn.vneg(self.coeffs, self.spec.p))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(
            self.spec, kn.vmul(self.coeffs, other.coeffs, self.spec.p, self.spec.modulus)
        )

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElem(self.spec, kn.vpow(self.coeffs, e, self.spec.p, self.spec.modulus))

    def __truediv__(self, other):
        return self * other.inv()

    def inv(self) -> "FieldElem":
        try:
            return FieldElem(
                self.spec, kn.vinv(self.coeffs, self.spec.p, self.spec.modulus)
            )
        except ZeroDivisionError:
            raise ZeroInverse("inverse of 0") from None

    def frobenius(self, j: int) -> "FieldElem":
        """a^(p^j); the identity when j is a multiple of the field degree."""
        if j < 0:
            raise ValueError("iteration count must be >= 0")
        j %= self.spec.k
        if j == 0:
            return self
        return self ** (self.spec.p ** j)

    # -- dunder plumbing --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.coeffs))

    def __repr__(self):
        return f"FieldElem(GF({self.spec.p}^{self.spec.k}), {list(self.coeffs)})"

    def __bool__(self):
        return not self.is_zero()


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    return a.inv()


def frobenius(a: FieldElem, j: int) -> FieldElem:
    return a.frobenius(j)


# ---------------------------------------------------------------------------
# univariate polynomials over a FieldSpec (root finding for the embedding)

def _u_trim(c):
    while c and not any(c[-1]):
        c.pop()
    return c


def _u_monic(c, spec):
    lead_inv = kn.vinv(c[-1], spec.p, spec.modulus)
    return [kn.vmul(x, lead_inv, spec.p, spec.modulus) for x in c]


def _u_mul(a, b, spec):
    zero = (0,) * spec.k
    conv = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if any(ai):
            for j, bj in enumerate(b):
                conv[i + j] = kn.vadd(
                    conv[i + j], kn.vmul(ai, bj, spec.p, spec.modulus), spec.p
                )
    return _u_trim(conv)


def _u_mod(a, f, spec):
    r = list(a)
    df = len(f) - 1
    while len(r) - 1 >= df and r:
        c = r[-1]
        if any(c):
            shift = len(r) - 1 - df
            for j in range(df + 1):
                r[shift + j] = kn.vsub(
                    r[shift + j], kn.vmul(c, f[j], spec.p, spec.modulus), spec.p
                )
        r.pop()
        _u_trim(r)
    return r


def _u_mulmod(a, b, f, spec):
    return _u_mod(_u_mul(a, b, spec), f, spec)


def _u_powmod(a, e: int, f, spec):
    one = (1,) + (0,) * (spec.k - 1)
    result = [one]
    acc = list(a)
    while e:
        if e & 1:
            result = _u_mulmod(result, acc, f, spec)
        e >>= 1
        if e:
            acc = _u_mulmod(acc, acc, f, spec)
    return result


def _u_gcd(a, b, spec):
    a, b = _u_trim(list(a)), _u_trim(list(b))
    while b:
        b = _u_monic(b, spec)
        a = _u_mod(a, b, spec)
        a, b = b, a
    return a


def _u_quo(a, f, spec):
    """Exact quotient a / f (remainder known to be zero)."""
    r = list(a)
    df = len(f) - 1
    lead_inv = kn.vinv(f[-1], spec.p, spec.modulus)
    quo = [(0,) * spec.k] * (len(r) - df)
    for i in range(len(r) - 1, df - 1, -1):
        c = kn.vmul(r[i], lead_inv, spec.p, spec.modulus)
        if any(c):
            quo[i - df] = c
            for j in range(df + 1):
                r[i - df + j] = kn.vsub(
                    r[i - df + j], kn.vmul(c, f[j], spec.p, spec.modulus), spec.p
                )
    return quo


def roots_in_field(coeffs: list[tuple[int, ...]], spec: FieldSpec) -> list[FieldElem]:
    """All roots in the field of a univariate polynomial that splits
    completely into distinct linear factors there (the embedding case).

    Splitting is by deterministic sweeps: quadratic-character gcds for odd p,
    trace gcds over the power basis for p = 2.
    """
    f = _u_monic(_u_trim(list(coeffs)), spec)
    out: list[FieldElem] = []
    _split_roots(f, spec, out)
    out.sort(key=lambda e: e.encoding())
    return out


def _split_roots(f, spec, out):
    deg = len(f) - 1
    if deg == 0:
        return
    if deg == 1:
        out.append(FieldElem(spec, kn.vneg(f[0], spec.p)))
        return
    p, k = spec.p, spec.k
    x = [(0,) * k, (1,) + (0,) * (k - 1)]
    if p == 2:
        for b in range(k):
            delta = tuple(1 if i == b else 0 for i in range(k))
            term = _u_mod([(0,) * k, delta], f, spec)
            trace = list(term)
            for _ in range(k - 1):
                term = _u_mulmod(term, term, f, spec)
                trace = _u_add(trace, term, spec)
            g = _u_gcd(f, trace, spec)
            if 0 < len(g) - 1 < deg:
                g = _u_monic(g, spec)
                _split_roots(g, spec, out)
                _split_roots(_u_quo(f, g, spec), spec, out)
                return
        raise AssertionError("trace sweep failed to split")  # unreachable
    half = (spec.order - 1) // 2
    one = (1,) + (0,) * (k - 1)
    for m in range(spec.order):
        delta = spec.from_encoding(m).coeffs
        shifted = [delta, one]  # X + delta
        h = _u_powmod(shifted, half, f, spec)
        h = _u_add(h, [kn.vneg(one, p)], spec)
        g = _u_gcd(f, h, spec)
        if 0 < len(g) - 1 < deg:
            g = _u_monic(g, spec)
            _split_roots(g, spec, out)
            _split_roots(_u_quo(f, g, spec), spec, out)
            return
    raise AssertionError("character sweep failed to split")  # unreachable


def _u_add(a, b, spec):
    zero = (0,) * spec.k
    n = max(len(a), len(b))
    return _u_trim(
        [
            kn.vadd(a[i] if i < len(a) else zero, b[i] if i < len(b) else zero, spec.p)
            for i in range(n)
        ]
    )


# ---------------------------------------------------------------------------
# the tower

@dataclass(frozen=True)
class FieldTower:
    """F_{p^k} inside F_{p^{2k}}, with the embedding fixed by the
    lexicographically-least root of the base modulus in the extension."""

    base: FieldSpec
    ext: FieldSpec
    embed_table: tuple[tuple[int, ...], ...]  # images of 1, t, t^2, ..., t^{k-1}

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def k(self) -> int:
        return self.base.k

    def embed(self, a: FieldElem) -> FieldElem:
        if a.spec != self.base:
            raise LevelMismatch("embed expects a base-level element")
        acc = (0,) * self.ext.k
        for c, img in zip(a.coeffs, self.embed_table):
            if c:
                acc = kn.vadd(acc, kn.vsmul(img, c, self.p), self.p)
        return FieldElem(self.ext, acc)

    def is_in_subfield(self, a: FieldElem) -> bool:
        if a.spec != self.ext:
            raise LevelMismatch("is_in_subfield expects an ext-level element")
        return a.frobenius(self.k) == a

    def sample_beta(self, rng) -> FieldElem:
        """Uniform over the extension minus the embedded base field."""
        if self.ext.k == self.base.k:
            raise DegenerateTower("extension equals base")
        while True:
            a = self.ext.sample(rng)
            if not self.is_in_subfield(a):
                return a


@lru_cache(maxsize=None)
def field_tower(p: int, k: int) -> FieldTower:
    if k < 1:
        raise DegenerateTower("k may not be 0")
    base = field_spec(p, k)
    ext = field_spec(p, 2 * k)
    ext_zero = (0,) * ext.k
    if k == 1:
        theta = FieldElem(ext, (1,) + (0,) * (ext.k - 1))
    else:
        base_mod_in_ext = [
            (c,) + (0,) * (ext.k - 1) for c in base.modulus
        ]
        theta = roots_in_field(base_mod_in_ext, ext)[0]
    table = []
    power = FieldElem(ext, (1,) + (0,) * (ext.k - 1))
    for _ in range(k):
        table.append(power.coeffs)
        power = power * theta
    return FieldTower(base, ext, tuple(table))
